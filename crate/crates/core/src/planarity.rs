//! Planarity testing with embedding witnesses.
//!
//! The decision procedure is a face-extension (Demoucron-style) algorithm
//! run per biconnected block; parallel edges are handled by subdividing
//! duplicates first and smoothing the subdivision vertices out of the
//! witness afterwards. A separate brute-force oracle enumerates rotation
//! systems outright and is used to cross-check the main algorithm.

use std::collections::{HashMap, HashSet, VecDeque};
use thiserror::Error;

use crate::editor::PlaneEditor;
use crate::embedding::{edge_of, twin, Dart, PlaneEmbedding, VertexLabel};
use crate::graph::Multigraph;

#[derive(Debug, Error)]
pub enum PlanarityError {
    #[error("instance too large for exhaustive rotation enumeration")]
    TooLarge,
    #[error("rim vertex {0} out of range")]
    RimOutOfRange(usize),
}

#[derive(Debug, Clone)]
pub struct PlanarityVerdict {
    pub planar: bool,
    pub embedding: Option<PlaneEmbedding>,
}

impl PlanarityVerdict {
    fn no() -> Self {
        PlanarityVerdict {
            planar: false,
            embedding: None,
        }
    }

    fn yes(emb: PlaneEmbedding) -> Self {
        PlanarityVerdict {
            planar: true,
            embedding: Some(emb),
        }
    }
}

pub fn is_planar(g: &Multigraph) -> PlanarityVerdict {
    is_planar_labeled(g, &vec![VertexLabel::Plain; g.vertex_count()])
}

pub fn is_planar_labeled(g: &Multigraph, labels: &[VertexLabel]) -> PlanarityVerdict {
    assert_eq!(labels.len(), g.vertex_count());
    let n = g.vertex_count();
    let e = g.edge_count();
    // edge-count screens (simple graphs only; parallel edges break them)
    if g.is_simple() && n >= 3 {
        if e > 3 * n - 6 {
            return PlanarityVerdict::no();
        }
        if g.bipartite_coloring().is_some() && e > 2 * n - 4 {
            return PlanarityVerdict::no();
        }
    }
    // subdivide duplicate edges so every block is simple
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    let mut aux_edges: Vec<(usize, usize)> = Vec::new();
    let mut aux_n = n;
    let mut split_vertices: Vec<usize> = Vec::new();
    // aux edge index -> original edge id (two aux edges may share one)
    let mut orig_of_aux: Vec<usize> = Vec::new();
    for (id, &(a, b)) in g.edges().iter().enumerate() {
        let key = (a.min(b), a.max(b));
        if seen.insert(key) {
            aux_edges.push((a, b));
            orig_of_aux.push(id);
        } else {
            let z = aux_n;
            aux_n += 1;
            split_vertices.push(z);
            aux_edges.push((a, z));
            orig_of_aux.push(id);
            aux_edges.push((z, b));
            orig_of_aux.push(id);
        }
    }
    let rot = match embed_simple(aux_n, &aux_edges) {
        Some(rot) => rot,
        None => return PlanarityVerdict::no(),
    };
    let mut aux_labels = labels.to_vec();
    aux_labels.resize(aux_n, VertexLabel::Plain);
    let aux_emb = PlaneEmbedding::from_rotations(aux_n, aux_edges, rot, aux_labels)
        .expect("face-extension produced an invalid rotation system");
    let mut ed = PlaneEditor::from_embedding(&aux_emb);
    let mut slot_orig: HashMap<usize, usize> = orig_of_aux.iter().copied().enumerate().collect();
    for &z in &split_vertices {
        let o = slot_orig[&edge_of(ed.rotation(z)[0])];
        let s = ed.unsubdivide(z).expect("subdivision vertex smoothable");
        slot_orig.insert(s, o);
    }
    let snap = ed.snapshot().expect("consistent after smoothing");
    // re-align with the input's vertex and edge ids
    let emb = realign(&snap.embedding, g, labels, &snap.edge_map, &slot_orig);
    PlanarityVerdict::yes(emb)
}

/// Rebuilds an embedding over the input graph's exact edge list. The
/// snapshot's vertices already match (subdivision vertices were appended
/// last and are gone), but edge slots were renumbered by the editing.
fn realign(
    emb: &PlaneEmbedding,
    g: &Multigraph,
    labels: &[VertexLabel],
    edge_map: &[Option<usize>],
    slot_orig: &HashMap<usize, usize>,
) -> PlaneEmbedding {
    // snapshot edge id -> original edge id
    let mut orig_of_new: Vec<usize> = vec![usize::MAX; emb.edge_count()];
    for (slot, &new) in edge_map.iter().enumerate() {
        if let Some(new) = new {
            orig_of_new[new] = slot_orig[&slot];
        }
    }
    // dart translation, honoring endpoint orientation
    let mut dmap: Vec<Dart> = vec![0; 2 * emb.edge_count()];
    for (new, &(a, b)) in emb.edges().iter().enumerate() {
        let orig = orig_of_new[new];
        let (x, _) = g.edges()[orig];
        if x == a {
            dmap[2 * new] = 2 * orig;
            dmap[2 * new + 1] = 2 * orig + 1;
        } else {
            debug_assert_eq!((g.edges()[orig].1, g.edges()[orig].0), (a, b));
            dmap[2 * new] = 2 * orig + 1;
            dmap[2 * new + 1] = 2 * orig;
        }
    }
    let rot: Vec<Vec<Dart>> = emb
        .rotations()
        .iter()
        .map(|r| r.iter().map(|&d| dmap[d]).collect())
        .collect();
    PlaneEmbedding::new(
        g.vertex_count(),
        g.edges().to_vec(),
        rot,
        labels.to_vec(),
        emb.placement().to_vec(),
    )
    .expect("realignment preserves validity")
}

/// Planar rotation system for a simple graph, or None.
fn embed_simple(n: usize, edges: &[(usize, usize)]) -> Option<Vec<Vec<Dart>>> {
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n]; // (neighbor, edge id)
    for (id, &(a, b)) in edges.iter().enumerate() {
        adj[a].push((b, id));
        adj[b].push((a, id));
    }
    let mut rot: Vec<Vec<Dart>> = vec![Vec::new(); n];
    for block in biconnected_blocks(n, edges, &adj) {
        let block_rot = embed_block(edges, &block)?;
        for (v, mut darts) in block_rot {
            rot[v].append(&mut darts);
        }
    }
    Some(rot)
}

/// Edge ids of each biconnected block (bridges are singleton blocks).
fn biconnected_blocks(
    n: usize,
    edges: &[(usize, usize)],
    adj: &[Vec<(usize, usize)>],
) -> Vec<Vec<usize>> {
    let mut blocks = Vec::new();
    let mut disc = vec![0usize; n];
    let mut low = vec![0usize; n];
    let mut visited = vec![false; n];
    let mut timer = 1;
    let mut stack: Vec<usize> = Vec::new(); // edge ids
    // iterative DFS
    #[derive(Clone)]
    struct Frame {
        v: usize,
        parent_edge: Option<usize>,
        next: usize,
    }
    for start in 0..n {
        if visited[start] {
            continue;
        }
        visited[start] = true;
        disc[start] = timer;
        low[start] = timer;
        timer += 1;
        let mut frames = vec![Frame {
            v: start,
            parent_edge: None,
            next: 0,
        }];
        while let Some(f) = frames.last().cloned() {
            if f.next < adj[f.v].len() {
                frames.last_mut().unwrap().next += 1;
                let (u, id) = adj[f.v][f.next];
                if Some(id) == f.parent_edge {
                    continue;
                }
                if !visited[u] {
                    stack.push(id);
                    visited[u] = true;
                    disc[u] = timer;
                    low[u] = timer;
                    timer += 1;
                    frames.push(Frame {
                        v: u,
                        parent_edge: Some(id),
                        next: 0,
                    });
                } else if disc[u] < disc[f.v] {
                    stack.push(id);
                    low[f.v] = low[f.v].min(disc[u]);
                }
            } else {
                frames.pop();
                if let Some(pf) = frames.last() {
                    let w = pf.v;
                    low[w] = low[w].min(low[f.v]);
                    if low[f.v] >= disc[w] {
                        // w is a cut vertex (or root): pop one block
                        let pe = f.parent_edge.unwrap();
                        let mut block = Vec::new();
                        while let Some(&top) = stack.last() {
                            stack.pop();
                            block.push(top);
                            if top == pe {
                                break;
                            }
                        }
                        blocks.push(block);
                    }
                }
            }
        }
        debug_assert!(stack.is_empty());
        let _ = edges;
    }
    blocks
}

/// Face-extension embedding of one biconnected block. Returns per-vertex
/// rotations in global dart ids, or None if the block is nonplanar.
fn embed_block(
    edges: &[(usize, usize)],
    block: &[usize],
) -> Option<HashMap<usize, Vec<Dart>>> {
    if block.len() == 1 {
        let (a, b) = edges[block[0]];
        let d = 2 * block[0];
        let mut rot = HashMap::new();
        rot.insert(a, vec![d]);
        rot.insert(b, vec![twin(d)]);
        return Some(rot);
    }
    let mut badj: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
    for &id in block {
        let (a, b) = edges[id];
        badj.entry(a).or_default().push((b, id));
        badj.entry(b).or_default().push((a, id));
    }
    // initial cycle via DFS back edge
    let cycle = find_cycle(&badj).expect("biconnected block with >1 edge has a cycle");
    let k = cycle.len();
    // cycle embedding over editor ids 0..k
    let mut cyc_edges = Vec::with_capacity(k);
    let mut cyc_rot: Vec<Vec<Dart>> = vec![Vec::new(); k];
    for i in 0..k {
        cyc_edges.push((i, (i + 1) % k));
    }
    for i in 0..k {
        cyc_rot[i] = vec![2 * i, 2 * ((i + k - 1) % k) + 1];
    }
    let cyc_emb =
        PlaneEmbedding::from_rotations(k, cyc_edges, cyc_rot, vec![VertexLabel::Plain; k])
            .expect("cycle embedding is valid");
    let mut ed = PlaneEditor::from_embedding(&cyc_emb);
    let mut ed_of_g: HashMap<usize, usize> = HashMap::new();
    let mut g_of_ed: Vec<usize> = Vec::new();
    for (i, &(v, _)) in cycle.iter().enumerate() {
        ed_of_g.insert(v, i);
        g_of_ed.push(v);
    }
    let mut slot_gid: HashMap<usize, usize> = HashMap::new();
    let mut embedded_edge: HashSet<usize> = HashSet::new();
    for (i, &(_, gid)) in cycle.iter().enumerate() {
        // cycle[i] = (vertex, edge to next vertex)
        slot_gid.insert(i, gid);
        embedded_edge.insert(gid);
    }
    let embedded_vertex: HashSet<usize> = ed_of_g.keys().copied().collect();
    let mut embedded_vertex = embedded_vertex;

    loop {
        let fragments = find_fragments(&badj, &embedded_vertex, &embedded_edge);
        if fragments.is_empty() {
            break;
        }
        // faces of the partial embedding as graph-vertex sets
        let walks = ed.walks();
        let faces: Vec<(usize, HashSet<usize>)> = walks
            .iter()
            .map(|w| {
                let token = ed.region_of_dart(w[0]);
                let verts = w
                    .iter()
                    .map(|&d| g_of_ed[ed.dart_tail(d)])
                    .collect::<HashSet<usize>>();
                (token, verts)
            })
            .collect();
        let admissible: Vec<Vec<usize>> = fragments
            .iter()
            .map(|fr| {
                faces
                    .iter()
                    .filter(|(_, verts)| fr.attachments.iter().all(|a| verts.contains(a)))
                    .map(|&(t, _)| t)
                    .collect()
            })
            .collect();
        if admissible.iter().any(|a| a.is_empty()) {
            return None;
        }
        let pick = admissible
            .iter()
            .position(|a| a.len() == 1)
            .unwrap_or(0);
        let face = admissible[pick][0];
        let path = alpha_path(&badj, &fragments[pick], &embedded_vertex);
        // corners bordering the chosen face at both endpoints
        let (u, v) = (path.verts[0], *path.verts.last().unwrap());
        let (eu, ev) = (ed_of_g[&u], ed_of_g[&v]);
        let ci = corner_on(&ed, eu, face);
        let cj = corner_on(&ed, ev, face);
        let mut cur = ed
            .insert_edge(eu, ci, ev, cj)
            .expect("admissible face insertion");
        for q in 0..path.verts.len() - 2 {
            let w = path.verts[q + 1];
            let (z, s1, s2) = ed
                .subdivide(cur, VertexLabel::Plain)
                .expect("fresh edge splits");
            slot_gid.insert(s1, path.gids[q]);
            ed_of_g.insert(w, z);
            debug_assert_eq!(g_of_ed.len(), z);
            g_of_ed.push(w);
            embedded_vertex.insert(w);
            cur = s2;
        }
        slot_gid.insert(cur, *path.gids.last().unwrap());
        for &gid in &path.gids {
            embedded_edge.insert(gid);
        }
    }
    // translate editor rotations into global darts
    let mut out: HashMap<usize, Vec<Dart>> = HashMap::new();
    for (gv, &ev) in &ed_of_g {
        let darts = ed
            .rotation(ev)
            .iter()
            .map(|&d| {
                let gid = slot_gid[&edge_of(d)];
                let tail = g_of_ed[ed.dart_tail(d)];
                if edges[gid].0 == tail {
                    2 * gid
                } else {
                    2 * gid + 1
                }
            })
            .collect();
        out.insert(*gv, darts);
    }
    Some(out)
}

fn corner_on(ed: &PlaneEditor, v: usize, face: usize) -> usize {
    for i in 0..ed.degree(v) {
        if ed.corner_region(v, i).unwrap() == face {
            return i;
        }
    }
    unreachable!("vertex not on the admissible face");
}

/// Cycle as (vertex, edge-to-next) pairs.
fn find_cycle(badj: &HashMap<usize, Vec<(usize, usize)>>) -> Option<Vec<(usize, usize)>> {
    let start = *badj.keys().min()?;
    let mut parent: HashMap<usize, (usize, usize)> = HashMap::new(); // v -> (parent, edge)
    let mut stack = vec![start];
    let mut order: HashMap<usize, usize> = HashMap::new();
    order.insert(start, 0);
    while let Some(v) = stack.pop() {
        for &(u, id) in &badj[&v] {
            if !order.contains_key(&u) {
                order.insert(u, order.len());
                parent.insert(u, (v, id));
                stack.push(u);
            } else if parent.get(&v).map(|&(p, _)| p) != Some(u) {
                // back/cross edge: walk both vertices up to their meeting
                let mut pa = vec![v];
                let mut cur = v;
                while let Some(&(p, _)) = parent.get(&cur) {
                    pa.push(p);
                    cur = p;
                }
                let on_pa: HashMap<usize, usize> =
                    pa.iter().enumerate().map(|(i, &x)| (x, i)).collect();
                let mut cur = u;
                let mut ub = vec![u];
                while !on_pa.contains_key(&cur) {
                    let (p, _) = parent[&cur];
                    ub.push(p);
                    cur = p;
                }
                let meet = on_pa[&cur];
                // cycle: v .. meet (via parents), then down to u, then edge u-v
                let mut verts: Vec<usize> = pa[..=meet].to_vec();
                ub.pop(); // drop the meeting vertex
                verts.extend(ub.iter().rev());
                // collect edges along consecutive pairs
                let mut cyc = Vec::new();
                for i in 0..verts.len() {
                    let a = verts[i];
                    let b = verts[(i + 1) % verts.len()];
                    let id = if (a, b) == (v, u) || (a, b) == (u, v) {
                        id
                    } else {
                        badj[&a]
                            .iter()
                            .find(|&&(x, eid)| {
                                x == b
                                    && (parent.get(&a).map(|&(p, pe)| (p, pe)) == Some((b, eid))
                                        || parent.get(&b).map(|&(p, pe)| (p, pe))
                                            == Some((a, eid)))
                            })
                            .map(|&(_, eid)| eid)
                            .unwrap()
                    };
                    cyc.push((a, id));
                }
                return Some(cyc);
            }
        }
    }
    None
}

struct Fragment {
    attachments: Vec<usize>,
    /// interior (unembedded) vertices; empty for a single-edge fragment
    interior: HashSet<usize>,
    /// unembedded edges of the fragment
    gids: Vec<usize>,
}

struct AlphaPath {
    verts: Vec<usize>,
    gids: Vec<usize>,
}

fn find_fragments(
    badj: &HashMap<usize, Vec<(usize, usize)>>,
    embedded_vertex: &HashSet<usize>,
    embedded_edge: &HashSet<usize>,
) -> Vec<Fragment> {
    let mut fragments = Vec::new();
    let mut claimed: HashSet<usize> = HashSet::new();
    // components of unembedded vertices
    for (&s, _) in badj.iter() {
        if embedded_vertex.contains(&s) || claimed.contains(&s) {
            continue;
        }
        let mut interior = HashSet::new();
        let mut gids = HashSet::new();
        let mut attach = HashSet::new();
        let mut stack = vec![s];
        claimed.insert(s);
        interior.insert(s);
        while let Some(v) = stack.pop() {
            for &(u, id) in &badj[&v] {
                gids.insert(id);
                if embedded_vertex.contains(&u) {
                    attach.insert(u);
                } else if claimed.insert(u) {
                    interior.insert(u);
                    stack.push(u);
                }
            }
        }
        let mut attachments: Vec<usize> = attach.into_iter().collect();
        attachments.sort_unstable();
        let mut gids: Vec<usize> = gids.into_iter().collect();
        gids.sort_unstable();
        fragments.push(Fragment {
            attachments,
            interior,
            gids,
        });
    }
    // single unembedded edges between embedded vertices
    let mut singles: Vec<usize> = Vec::new();
    for (&v, nbrs) in badj.iter() {
        for &(u, id) in nbrs {
            if v < u
                && !embedded_edge.contains(&id)
                && embedded_vertex.contains(&v)
                && embedded_vertex.contains(&u)
            {
                singles.push(id);
            }
        }
    }
    singles.sort_unstable();
    singles.dedup();
    for id in singles {
        let mut att: Vec<usize> = Vec::new();
        for (&v, nbrs) in badj.iter() {
            if nbrs.iter().any(|&(_, e)| e == id) {
                att.push(v);
            }
        }
        att.sort_unstable();
        fragments.push(Fragment {
            attachments: att,
            interior: HashSet::new(),
            gids: vec![id],
        });
    }
    // deterministic order
    fragments.sort_by(|a, b| a.gids.cmp(&b.gids));
    fragments
}

/// Path through the fragment between two distinct attachments.
fn alpha_path(
    badj: &HashMap<usize, Vec<(usize, usize)>>,
    fr: &Fragment,
    embedded_vertex: &HashSet<usize>,
) -> AlphaPath {
    let a1 = fr.attachments[0];
    let a2 = fr.attachments[1];
    if fr.interior.is_empty() {
        return AlphaPath {
            verts: vec![a1, a2],
            gids: fr.gids.clone(),
        };
    }
    // BFS from a1 into the interior, stopping at a2
    let allowed: HashSet<usize> = fr.gids.iter().copied().collect();
    let mut prev: HashMap<usize, (usize, usize)> = HashMap::new();
    let mut q = VecDeque::new();
    q.push_back(a1);
    let mut seen: HashSet<usize> = HashSet::new();
    seen.insert(a1);
    'bfs: while let Some(v) = q.pop_front() {
        for &(u, id) in &badj[&v] {
            if !allowed.contains(&id) || seen.contains(&u) {
                continue;
            }
            if embedded_vertex.contains(&u) && u != a2 {
                continue;
            }
            prev.insert(u, (v, id));
            if u == a2 {
                break 'bfs;
            }
            seen.insert(u);
            q.push_back(u);
        }
    }
    let mut verts = vec![a2];
    let mut gids = Vec::new();
    let mut cur = a2;
    while cur != a1 {
        let (p, id) = prev[&cur];
        gids.push(id);
        verts.push(p);
        cur = p;
    }
    verts.reverse();
    gids.reverse();
    AlphaPath { verts, gids }
}

/// Planarity under the constraint that all `rim` vertices lie on a common
/// face, which the witness designates as unbounded. Realized by testing
/// the graph plus an apex joined to every rim vertex, deleting the apex,
/// and re-rooting at the face it vacated.
pub fn embed_with_outer_vertices(g: &Multigraph, rim: &[usize]) -> Result<PlanarityVerdict, PlanarityError> {
    embed_with_outer_vertices_labeled(g, &vec![VertexLabel::Plain; g.vertex_count()], rim)
}

pub fn embed_with_outer_vertices_labeled(
    g: &Multigraph,
    labels: &[VertexLabel],
    rim: &[usize],
) -> Result<PlanarityVerdict, PlanarityError> {
    let n = g.vertex_count();
    for &v in rim {
        if v >= n {
            return Err(PlanarityError::RimOutOfRange(v));
        }
    }
    let mut rim: Vec<usize> = rim.to_vec();
    rim.sort_unstable();
    rim.dedup();
    if rim.is_empty() {
        return Ok(is_planar_labeled(g, labels));
    }
    let apex = n;
    let mut aux_edges = g.edges().to_vec();
    for &v in &rim {
        aux_edges.push((v, apex));
    }
    let aux = Multigraph::new(n + 1, aux_edges).expect("apex edges are loop-free");
    let mut aux_labels = labels.to_vec();
    aux_labels.push(VertexLabel::Plain);
    let verdict = is_planar_labeled(&aux, &aux_labels);
    let emb = match verdict.embedding {
        Some(e) => e,
        None => return Ok(PlanarityVerdict::no()),
    };
    let mut ed = PlaneEditor::from_embedding(&emb);
    ed.delete_vertex(apex).expect("apex is present");
    let snap = ed.snapshot().expect("consistent after apex removal");
    let mut out = snap.embedding.clone();
    out.re_root(snap.residue_faces[&apex]);
    // slot ids: apex edges were appended last, so surviving slots are the
    // original edge ids in order
    debug_assert_eq!(out.edge_count(), g.edge_count());
    let slot_orig: HashMap<usize, usize> = (0..g.edge_count()).map(|i| (i, i)).collect();
    let out = realign(&out, g, labels, &snap.edge_map, &slot_orig);
    Ok(PlanarityVerdict::yes(out))
}

/// Exhaustive rotation-system oracle. Independent of the main algorithm;
/// used for cross-checking. Refuses instances whose enumeration would be
/// astronomically large.
pub fn brute_force_planar(g: &Multigraph) -> Result<bool, PlanarityError> {
    let n = g.vertex_count();
    let e = g.edge_count();
    if e == 0 {
        return Ok(true);
    }
    // elementary necessary condition (keeps dense instances cheap)
    if g.is_simple() && n >= 3 && e > 3 * n - 6 {
        return Ok(false);
    }
    let mut star: Vec<Vec<Dart>> = vec![Vec::new(); n];
    for (id, &(a, b)) in g.edges().iter().enumerate() {
        star[a].push(2 * id);
        star[b].push(2 * id + 1);
    }
    let mut work: f64 = 1.0;
    for s in &star {
        for k in 1..s.len() {
            work *= k as f64;
        }
        if work > 2.0e8 {
            return Err(PlanarityError::TooLarge);
        }
    }
    let target = genus0_face_target(n, g.edges());
    // per-vertex rotation candidates: first dart fixed, rest permuted
    let mut perms: Vec<Vec<Vec<Dart>>> = Vec::with_capacity(n);
    for s in &star {
        if s.len() <= 2 {
            perms.push(vec![s.clone()]);
            continue;
        }
        let first = s[0];
        let rest: Vec<Dart> = s[1..].to_vec();
        let mut all = Vec::new();
        permute(&rest, &mut Vec::new(), &mut |p| {
            let mut r = Vec::with_capacity(s.len());
            r.push(first);
            r.extend_from_slice(p);
            all.push(r);
        });
        perms.push(all);
    }
    Ok(spherical_rotation_exists(e, target, &perms))
}

/// Expected traced-face total for a genus-0 rotation system, summed per
/// component; components without edges trace no faces.
pub(crate) fn genus0_face_target(n: usize, edges: &[(usize, usize)]) -> isize {
    let mut comp = vec![usize::MAX; n];
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut ncomp = 0;
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = ncomp;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &u in &adj[v] {
                if comp[u] == usize::MAX {
                    comp[u] = ncomp;
                    stack.push(u);
                }
            }
        }
        ncomp += 1;
    }
    let mut target: isize = 0;
    let mut vc = vec![0isize; ncomp];
    let mut ec = vec![0isize; ncomp];
    for v in 0..n {
        vc[comp[v]] += 1;
    }
    for &(a, _) in edges {
        ec[comp[a]] += 1;
    }
    for c in 0..ncomp {
        if ec[c] > 0 {
            target += 2 - vc[c] + ec[c];
        }
    }
    target
}

/// Odometer over per-vertex rotation candidates; true iff some choice
/// yields the genus-0 face count `target`.
pub(crate) fn spherical_rotation_exists(
    e: usize,
    target: isize,
    perms: &[Vec<Vec<Dart>>],
) -> bool {
    let n = perms.len();
    let nd = 2 * e;
    let mut succ = vec![0usize; nd];
    let mut idx = vec![0usize; n];
    let set_succ = |succ: &mut [usize], r: &[Dart]| {
        for (i, &d) in r.iter().enumerate() {
            succ[d] = r[(i + 1) % r.len()];
        }
    };
    for v in 0..n {
        set_succ(&mut succ, &perms[v][0]);
    }
    loop {
        // count faces of dart permutation d -> succ[twin(d)]
        let mut faces = 0isize;
        if nd <= 64 {
            let mut unseen: u64 = if nd == 64 { !0 } else { (1u64 << nd) - 1 };
            while unseen != 0 {
                let start = unseen.trailing_zeros() as usize;
                let mut d = start;
                loop {
                    unseen &= !(1u64 << d);
                    d = succ[twin(d)];
                    if d == start {
                        break;
                    }
                }
                faces += 1;
            }
        } else {
            let mut seen = vec![false; nd];
            for start in 0..nd {
                if seen[start] {
                    continue;
                }
                let mut d = start;
                loop {
                    seen[d] = true;
                    d = succ[twin(d)];
                    if d == start {
                        break;
                    }
                }
                faces += 1;
            }
        }
        if faces == target {
            return true;
        }
        // odometer
        let mut v = 0;
        loop {
            if v == n {
                return false;
            }
            idx[v] += 1;
            if idx[v] < perms[v].len() {
                set_succ(&mut succ, &perms[v][idx[v]]);
                break;
            }
            idx[v] = 0;
            set_succ(&mut succ, &perms[v][0]);
            v += 1;
        }
    }
}

pub(crate) fn permute(rest: &[Dart], acc: &mut Vec<Dart>, out: &mut impl FnMut(&[Dart])) {
    if acc.len() == rest.len() {
        out(acc);
        return;
    }
    for &d in rest {
        if acc.contains(&d) {
            continue;
        }
        acc.push(d);
        permute(rest, acc, out);
        acc.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_bipartite, SimpleGraph};

    fn complete(n: usize) -> Multigraph {
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                edges.push((a, b));
            }
        }
        Multigraph::new(n, edges).unwrap()
    }

    #[test]
    fn small_complete_graphs() {
        assert!(is_planar(&complete(4)).planar);
        assert!(!is_planar(&complete(5)).planar);
        let k4 = is_planar(&complete(4)).embedding.unwrap();
        assert!(k4.euler_check());
        assert_eq!(k4.edge_count(), 6);
    }

    #[test]
    fn k33_nonplanar_k23_planar() {
        let (k33, _) = complete_bipartite(3, 3).unwrap();
        assert!(!is_planar(&k33.to_multigraph()).planar);
        let (k23, _) = complete_bipartite(2, 3).unwrap();
        let v = is_planar(&k23.to_multigraph());
        assert!(v.planar);
        assert!(v.embedding.unwrap().euler_check());
    }

    #[test]
    fn petersen_nonplanar() {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, 5 + (i + 2) % 5));
        }
        let g = Multigraph::new(10, edges).unwrap();
        assert!(!is_planar(&g).planar);
    }

    #[test]
    fn parallel_edges_and_bridges() {
        // theta graph with a doubled edge and a pendant bridge
        let g = Multigraph::new(4, vec![(0, 1), (0, 1), (0, 1), (1, 2), (0, 3)]).unwrap();
        let v = is_planar(&g);
        assert!(v.planar);
        let emb = v.embedding.unwrap();
        assert!(emb.euler_check());
        assert_eq!(emb.edges(), g.edges());
    }

    #[test]
    fn disconnected_with_isolated() {
        let g = Multigraph::new(7, vec![(0, 1), (1, 2), (0, 2), (3, 4)]).unwrap();
        let v = is_planar(&g);
        assert!(v.planar);
        assert!(v.embedding.unwrap().euler_check());
    }

    #[test]
    fn brute_force_small_cases() {
        assert!(brute_force_planar(&complete(4)).unwrap());
        assert!(!brute_force_planar(&complete(5)).unwrap());
        let (k33, _) = complete_bipartite(3, 3).unwrap();
        assert!(!brute_force_planar(&k33.to_multigraph()).unwrap());
        let c4 = Multigraph::new(4, vec![(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert!(brute_force_planar(&c4).unwrap());
    }

    #[test]
    fn oracle_agreement_spot_checks() {
        // a handful of fixed graphs with ≤ 6 vertices
        let cases: Vec<Multigraph> = vec![
            Multigraph::new(6, vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5), (0, 3)])
                .unwrap(),
            Multigraph::new(5, vec![(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4)])
                .unwrap(),
            Multigraph::new(6, vec![(0, 1), (0, 1), (2, 3), (2, 3), (4, 5)]).unwrap(),
        ];
        for g in &cases {
            assert_eq!(is_planar(g).planar, brute_force_planar(g).unwrap());
        }
    }

    #[test]
    fn k5_minus_edge_planar() {
        let mut edges = Vec::new();
        for a in 0..5 {
            for b in a + 1..5 {
                if (a, b) != (3, 4) {
                    edges.push((a, b));
                }
            }
        }
        let g = Multigraph::new(5, edges).unwrap();
        assert!(is_planar(&g).planar);
        assert!(brute_force_planar(&g).unwrap());
    }

    #[test]
    fn rim_constraints() {
        // path 0-1-2 with both endpoints on the outer face
        let p3 = Multigraph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        assert!(embed_with_outer_vertices(&p3, &[0, 2]).unwrap().planar);
        // K4 has no face containing all four vertices
        let v = embed_with_outer_vertices(&complete(4), &[0, 1, 2, 3]).unwrap();
        assert!(!v.planar);
        // K_{2,3} with the 2-part on the outer face
        let (k23, bip) = complete_bipartite(2, 3).unwrap();
        let rim = bip.x_vertices();
        let v = embed_with_outer_vertices(&k23.to_multigraph(), &rim).unwrap();
        assert!(v.planar);
        let emb = v.embedding.unwrap();
        // rim vertices appear on the unbounded face boundary
        let faces = emb.plane_faces();
        let outer = &faces.records[faces.outer_index()];
        let on_outer: std::collections::HashSet<usize> = outer
            .walks
            .iter()
            .flatten()
            .map(|&d| emb.dart_tail(d))
            .collect();
        for r in rim {
            assert!(on_outer.contains(&r));
        }
    }

    #[test]
    fn exhaustive_agreement_on_five_vertices() {
        // all 2^10 labeled graphs on 5 vertices against the oracle
        let mut pairs = Vec::new();
        for a in 0..5 {
            for b in a + 1..5 {
                pairs.push((a, b));
            }
        }
        for mask in 0u32..1 << 10 {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|&(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let g = Multigraph::new(5, edges).unwrap();
            assert_eq!(
                is_planar(&g).planar,
                brute_force_planar(&g).unwrap(),
                "disagreement on mask {mask}"
            );
        }
    }

    #[test]
    fn witness_matches_input_graph() {
        let g = SimpleGraph::new(6, vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)])
            .unwrap()
            .to_multigraph();
        let v = is_planar(&g);
        let emb = v.embedding.unwrap();
        assert_eq!(emb.edges(), g.edges());
        assert_eq!(emb.vertex_count(), g.vertex_count());
    }
}
