//! Seeded random generators for property tests: plane embeddings,
//! multigraphs, and 1-planar drawings. Plane embeddings are built
//! incrementally through the editor, so they are planar by
//! construction and carry an explicit witness.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::drawing::{planarize_from, OnePlanarDrawing};
use crate::editor::PlaneEditor;
use crate::embedding::{PlaneEmbedding, VertexLabel};
use crate::graph::{complete_bipartite, Bipartition, Multigraph, SimpleGraph};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random connected plane embedding: a random spanning tree plus
/// extra edges inserted into faces that see both endpoints.
/// `bipartite` restricts extra edges to opposite tree-2-coloring
/// classes; `simple` skips parallel edges.
pub fn random_plane_embedding(
    rng: &mut ChaCha8Rng,
    n: usize,
    extra_edges: usize,
    simple: bool,
    bipartite: bool,
) -> PlaneEmbedding {
    assert!(n >= 1);
    // random tree: attach vertex v to a random earlier vertex
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut color = vec![false; n];
    for v in 1..n {
        let u = rng.gen_range(0..v);
        color[v] = !color[u];
        edges.push((u, v));
    }
    let mut rot: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, &(a, b)) in edges.iter().enumerate() {
        rot[a].push(2 * i);
        rot[b].push(2 * i + 1);
    }
    // any rotation of a tree is plane
    for r in &mut rot {
        r.shuffle(rng);
    }
    let emb =
        PlaneEmbedding::from_rotations(n, edges, rot, vec![VertexLabel::Plain; n]).unwrap();
    let mut ed = PlaneEditor::from_embedding(&emb);
    let mut added = 0;
    let mut stall = 0;
    while added < extra_edges && stall < 50 * (extra_edges + 1) {
        stall += 1;
        let snap = ed.snapshot().unwrap();
        let cur = snap.embedding;
        let faces = cur.plane_faces();
        let f = rng.gen_range(0..faces.records.len());
        let rec = &faces.records[f];
        if !rec.cellular || rec.walks[0].len() < 2 {
            continue;
        }
        let walk = &rec.walks[0];
        // pick two corners of the face walk; a corner is a dart whose
        // insertion point is after that dart in its tail's rotation
        let i = rng.gen_range(0..walk.len());
        let j = rng.gen_range(0..walk.len());
        if i == j {
            continue;
        }
        let (du, dv) = (walk[i], walk[j]);
        let u = cur.dart_tail(du);
        let v = cur.dart_tail(dv);
        if u == v {
            continue;
        }
        if bipartite && color[u] == color[v] {
            continue;
        }
        if simple && cur.neighbors(u).contains(&v) {
            continue;
        }
        // the face's corner at tail(d) sits just before d in the rotation
        let pu = cur.rotations()[u].iter().position(|&d| d == du).unwrap();
        let pv = cur.rotations()[v].iter().position(|&d| d == dv).unwrap();
        ed.insert_edge(u, pu, v, pv).unwrap();
        added += 1;
    }
    let mut out = ed.snapshot().unwrap().embedding;
    if bipartite {
        let labels = (0..n)
            .map(|v| {
                if color[v] {
                    VertexLabel::White
                } else {
                    VertexLabel::Black
                }
            })
            .collect();
        out = PlaneEmbedding::new(
            n,
            out.edges().to_vec(),
            out.rotations().to_vec(),
            labels,
            out.placement().to_vec(),
        )
        .unwrap();
    }
    out
}

/// Random loop-free multigraph with up to `max_edges` edges; parallel
/// edges allowed, isolated vertices possible.
pub fn random_multigraph(rng: &mut ChaCha8Rng, max_vertices: usize, max_edges: usize) -> Multigraph {
    let n = rng.gen_range(2..=max_vertices.max(2));
    let m = rng.gen_range(0..=max_edges);
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let a = rng.gen_range(0..n);
        let mut b = rng.gen_range(0..n);
        while b == a {
            b = rng.gen_range(0..n);
        }
        edges.push((a, b));
    }
    Multigraph::new(n, edges).unwrap()
}

/// Random bipartite graph with parts of the given sizes and edge
/// probability `p`, skipping isolated-free normalization.
pub fn random_bipartite(
    rng: &mut ChaCha8Rng,
    x: usize,
    y: usize,
    p: f64,
) -> (SimpleGraph, Bipartition) {
    let (full, bip) = complete_bipartite(x, y).unwrap();
    let edges: Vec<(usize, usize)> = full
        .edges()
        .iter()
        .copied()
        .filter(|_| rng.gen_bool(p))
        .collect();
    (SimpleGraph::new(x + y, edges).unwrap(), bip)
}

/// A random valid drawing: a random bipartite graph drawn with a
/// random feasible set of crossing pairs (retrying until the pairing
/// embeds in the plane). Falls back to smaller pairings on rejection,
/// so it always terminates with some valid drawing.
pub fn random_drawing(rng: &mut ChaCha8Rng, x: usize, y: usize, p: f64) -> OnePlanarDrawing {
    loop {
        let (g, bip) = random_bipartite(rng, x, y, p);
        let edges = g.edges();
        // a random matching of vertex-disjoint edge pairs
        let mut ids: Vec<usize> = (0..edges.len()).collect();
        ids.shuffle(rng);
        let want = rng.gen_range(0..=edges.len() / 2);
        let mut pairs: Vec<(usize, usize, usize, usize)> = Vec::new();
        let mut used: Vec<usize> = Vec::new();
        'outer: for &i in &ids {
            if pairs.len() == want {
                break;
            }
            let (a, b) = edges[i];
            if used.contains(&a) || used.contains(&b) {
                continue;
            }
            for &j in &ids {
                if j <= i {
                    continue;
                }
                let (c, d) = edges[j];
                if [a, b, c, d].iter().collect::<std::collections::HashSet<_>>().len() == 4
                    && !used.contains(&c)
                    && !used.contains(&d)
                {
                    used.extend([a, b, c, d]);
                    pairs.push((a, b, c, d));
                    continue 'outer;
                }
            }
        }
        // shrink the pairing until the plane accepts it
        loop {
            if let Some(d) = planarize_from(&g, Some(&bip), &pairs, None).unwrap() {
                return d;
            }
            if pairs.is_empty() {
                break; // graph not even planar: resample
            }
            pairs.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drawing::validate_drawing;
    use crate::graph::Part;

    #[test]
    fn plane_embeddings_are_plane_and_sized() {
        let mut r = rng(7);
        for _ in 0..50 {
            let n = r.gen_range(3..=12);
            let extra = r.gen_range(0..=8);
            let emb = random_plane_embedding(&mut r, n, extra, true, false);
            assert!(emb.euler_check());
            assert_eq!(emb.vertex_count(), n);
            assert!(emb.edge_count() >= n - 1);
        }
    }

    #[test]
    fn bipartite_variant_is_bipartite() {
        let mut r = rng(11);
        for _ in 0..30 {
            let emb = random_plane_embedding(&mut r, 8, 5, true, true);
            let mg = Multigraph::new(emb.vertex_count(), emb.edges().to_vec()).unwrap();
            assert!(mg.bipartite_coloring().is_some());
            assert!(mg.is_simple());
        }
    }

    #[test]
    fn random_drawings_validate() {
        let mut r = rng(3);
        for _ in 0..20 {
            let d = random_drawing(&mut r, 3, 3, 0.7);
            assert!(validate_drawing(&d).is_valid());
            assert_eq!(
                d.bipartition.as_ref().unwrap().part_of(0),
                Part::X
            );
        }
    }

    #[test]
    fn seeded_runs_are_reproducible() {
        let a = random_plane_embedding(&mut rng(42), 10, 6, true, false);
        let b = random_plane_embedding(&mut rng(42), 10, 6, true, false);
        assert_eq!(a, b);
    }
}
