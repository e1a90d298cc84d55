//! The extension construction: for each crossing vertex w with black
//! neighbors x₁, x₂, add a black edge e_w drawn tight against the path
//! x₁–w–x₂, then derive the auxiliary graphs
//!
//!   F  = sub-embedding on black ∪ red vertices,
//!   H  = black multigraph of the e_w edges,
//!   A  = one edge from each parallel class of H,
//!   H′ = H − A (simple),
//!
//! all produced by one editing chain so that every deleted white and red
//! vertex carries a residue: the face of the later graphs it sits in.
//! On top of these sit executable checkers for the structural facts a
//! crossing-minimal drawing must satisfy.

use std::collections::{BTreeMap, HashMap, HashSet};
use thiserror::Error;

use crate::drawing::{validate_drawing, CrossingRegistry, OnePlanarDrawing};
use crate::editor::{EditError, PlaneEditor, Snapshot};
use crate::embedding::{twin, PlaneEmbedding, PlaneFaceRef, VertexLabel};
use crate::graph::{Bipartition, SimpleGraph};

#[derive(Debug, Error)]
pub enum ExtendError {
    #[error("drawing is not valid: {0}")]
    InvalidDrawing(String),
    #[error("drawing has no bipartition")]
    NotBipartite,
    #[error(transparent)]
    Edit(#[from] EditError),
}

#[derive(Debug, Clone)]
pub struct ExtensionBundle {
    pub graph: SimpleGraph,
    pub bipartition: Bipartition,
    pub registry: CrossingRegistry,
    /// labels of the planarization's vertex universe (graph + red ids).
    pub labels: Vec<VertexLabel>,
    /// the extended drawing D×_W (planarization + e_w edges).
    pub dxw: Snapshot,
    /// sub-embedding on black ∪ red vertices.
    pub f: Snapshot,
    /// black multigraph of e_w edges.
    pub h: Snapshot,
    /// H minus the parallel-representative set A.
    pub h_prime: Snapshot,
    /// red vertex → editing slot of its e_w (stable across snapshots).
    pub ew_slot: BTreeMap<usize, usize>,
    /// slots of H-edges placed in A.
    pub a_slots: Vec<usize>,
}

impl ExtensionBundle {
    pub fn reds(&self) -> Vec<usize> {
        self.ew_slot.keys().copied().collect()
    }

    pub fn h_edge_count(&self) -> usize {
        self.h.embedding.edge_count()
    }

    pub fn a_count(&self) -> usize {
        self.a_slots.len()
    }

    pub fn h_prime_edge_count(&self) -> usize {
        self.h_prime.embedding.edge_count()
    }

    /// H-embedding edge id of a red vertex's e_w.
    pub fn h_edge_of_red(&self, w: usize) -> usize {
        self.h.edge_map[self.ew_slot[&w]].expect("e_w survives into H")
    }

    /// red vertex of an H-embedding edge id.
    pub fn red_of_h_edge(&self, id: usize) -> usize {
        *self
            .ew_slot
            .iter()
            .find(|(_, &s)| self.h.edge_map[s] == Some(id))
            .expect("H edge belongs to some red")
            .0
    }

    /// parallel classes of H as lists of H-embedding edge ids.
    pub fn parallel_classes(&self) -> Vec<Vec<usize>> {
        let mut by_pair: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (id, &(a, b)) in self.h.embedding.edges().iter().enumerate() {
            by_pair.entry((a.min(b), a.max(b))).or_default().push(id);
        }
        by_pair.into_values().collect()
    }

    fn is_black(&self, original: usize) -> bool {
        self.labels[original] == VertexLabel::Black
    }

    fn is_red(&self, original: usize) -> bool {
        self.labels[original] == VertexLabel::Red
    }

    fn is_white(&self, original: usize) -> bool {
        self.labels[original] == VertexLabel::White
    }
}

/// Builds the bundle from a valid bipartite drawing. The side convention
/// for e_w is fixed: with the rotation at w read clockwise, x₁ is the
/// black neighbor whose dart immediately follows the dart to x₂, and e_w
/// is inserted after x₁→w and before x₂→w, closing the triangle
/// (e_w, x₁w, wx₂) into a face.
pub fn extend(d: &OnePlanarDrawing) -> Result<ExtensionBundle, ExtendError> {
    let rep = validate_drawing(d);
    if !rep.is_valid() {
        return Err(ExtendError::InvalidDrawing(rep.violations.join("; ")));
    }
    let bip = d.bipartition.clone().ok_or(ExtendError::NotBipartite)?;
    let plan = &d.planarization;
    let mut ed = PlaneEditor::from_embedding(plan);
    let mut ew_slot = BTreeMap::new();
    for &w in &d.red_vertices() {
        let rot_w: Vec<usize> = plan.rotations()[w].clone();
        // locate the adjacent pair of black out-darts (x₂ then x₁)
        let mut pair = None;
        for p in 0..4 {
            let d2 = rot_w[p];
            let d1 = rot_w[(p + 1) % 4];
            let h2 = plan.dart_head(d2);
            let h1 = plan.dart_head(d1);
            if plan.label(h2) == VertexLabel::Black && plan.label(h1) == VertexLabel::Black {
                pair = Some((h1, d1, h2, d2));
                break;
            }
        }
        let (x1, d_wx1, x2, d_wx2) =
            pair.expect("a red vertex of a bipartite drawing has adjacent black darts");
        // corner after x₁→w and corner before x₂→w
        let p1 = ed.rotation(x1).iter().position(|&x| x == twin(d_wx1)).unwrap();
        let i = p1 + 1;
        let p2 = ed.rotation(x2).iter().position(|&x| x == twin(d_wx2)).unwrap();
        let j = p2;
        let slot = ed.insert_edge(x1, i, x2, j)?;
        ew_slot.insert(w, slot);
    }
    let dxw = ed.snapshot()?;
    let n_total = plan.vertex_count();
    for v in 0..n_total {
        if plan.label(v) == VertexLabel::White {
            ed.delete_vertex(v)?;
        }
    }
    let f = ed.snapshot()?;
    for v in 0..n_total {
        if plan.label(v) == VertexLabel::Red {
            ed.delete_vertex(v)?;
        }
    }
    let h = ed.snapshot()?;
    // A: in each parallel class keep the edge of the smallest red id
    let mut by_pair: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
    for (&w, &slot) in &ew_slot {
        let (a, b) = ed.edge_slot(slot).expect("e_w alive in H");
        by_pair.entry((a.min(b), a.max(b))).or_default().push((w, slot));
    }
    let mut a_slots = Vec::new();
    for (_, mut class) in by_pair {
        class.sort_unstable();
        for &(_, slot) in &class[1..] {
            a_slots.push(slot);
        }
    }
    a_slots.sort_unstable();
    for &slot in &a_slots {
        ed.delete_edge(slot)?;
    }
    let h_prime = ed.snapshot()?;
    Ok(ExtensionBundle {
        graph: d.graph.clone(),
        bipartition: bip,
        registry: d.registry.clone(),
        labels: plan.labels().to_vec(),
        dxw,
        f,
        h,
        h_prime,
        ew_slot,
        a_slots,
    })
}

/// The triangle (e_w, x₁w, wx₂) bounds a face of D×_W on the hugged side:
/// no black or red vertex and no F-edge inside. True by construction for
/// bundles produced by `extend`.
pub fn check_empty_triangle(bundle: &ExtensionBundle, w: usize) -> bool {
    let emb = &bundle.dxw.embedding;
    // D×_W ids equal planarization ids for vertices; e_w edge id via map
    let ew_id = match bundle.dxw.edge_map[bundle.ew_slot[&w]] {
        Some(id) => id,
        None => return false,
    };
    // the hugged side is the face clockwise-after edge (w, x₁) at w, i.e.
    // the face whose walk contains the dart w→x₁
    let rot_w = &emb.rotations()[w];
    let mut checked = false;
    for p in 0..rot_w.len() {
        let d2 = rot_w[p];
        let d1 = rot_w[(p + 1) % rot_w.len()];
        if emb.label(emb.dart_head(d2)) == VertexLabel::Black
            && emb.label(emb.dart_head(d1)) == VertexLabel::Black
        {
            // d1 = w→x₁
            let faces = emb.plane_faces();
            let fref = emb.plane_face_of_dart(d1);
            let rec = &faces.records[faces.index_of(fref).unwrap()];
            let edge_set: HashSet<usize> = rec
                .walks
                .iter()
                .flatten()
                .map(|&d| crate::embedding::edge_of(d))
                .collect();
            checked = rec.cellular
                && rec.size == 3
                && edge_set.contains(&ew_id)
                && edge_set.len() == 3;
            break;
        }
    }
    checked
}

/// Plain pass/fail record for one structural check.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub name: String,
    pub skipped: Option<String>,
    pub violations: Vec<String>,
}

impl CheckReport {
    fn new(name: &str) -> Self {
        CheckReport {
            name: name.to_string(),
            skipped: None,
            violations: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.skipped.is_none() && self.violations.is_empty()
    }

    pub fn lines(&self) -> Vec<String> {
        if let Some(why) = &self.skipped {
            return vec![format!("SKIP {} {}", self.name, why)];
        }
        if self.violations.is_empty() {
            vec![format!("PASS {}", self.name)]
        } else {
            self.violations
                .iter()
                .map(|v| format!("FAIL {} {}", self.name, v))
                .collect()
        }
    }
}

/// Side assignment of every black and red vertex relative to a cycle of
/// H-edges: `None` for vertices on the cycle, `Some(side)` otherwise.
fn h_cycle_sides(
    bundle: &ExtensionBundle,
    cycle_edges: &[usize],
) -> Option<(HashMap<usize, bool>, HashMap<usize, bool>)> {
    let emb = &bundle.h.embedding;
    let (faces, side) = emb.cycle_sides(cycle_edges)?;
    let on_cycle: HashSet<usize> = cycle_edges
        .iter()
        .flat_map(|&e| {
            let (a, b) = emb.edges()[e];
            [a, b]
        })
        .collect();
    let mut black_side = HashMap::new();
    for v in 0..emb.vertex_count() {
        if on_cycle.contains(&v) {
            continue;
        }
        let fref = if emb.degree(v) == 0 {
            emb.hosting_face_of_isolated(v).unwrap()
        } else {
            emb.plane_face_of_dart(emb.rotations()[v][0])
        };
        black_side.insert(v, side[faces.index_of(fref).unwrap()]);
    }
    let mut red_side = HashMap::new();
    for (&orig, &fref) in &bundle.h.residue_faces {
        if bundle.is_red(orig) {
            red_side.insert(orig, side[faces.index_of(fref).unwrap()]);
        }
    }
    Some((black_side, red_side))
}

/// Parallel pairs of H with a black vertex strictly on each side.
/// Returned as pairs of H-embedding edge ids.
pub fn find_separating_2cycles(bundle: &ExtensionBundle) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for class in bundle.parallel_classes() {
        for i in 0..class.len() {
            for j in i + 1..class.len() {
                let c = [class[i], class[j]];
                if let Some((black_side, _)) = h_cycle_sides(bundle, &c) {
                    let inside = black_side.values().any(|&s| s);
                    let outside = black_side.values().any(|&s| !s);
                    if inside && outside {
                        out.push((class[i], class[j]));
                    }
                }
            }
        }
    }
    out
}

/// At least one side of every parallel pair of H contains neither black
/// nor red vertices. Assumes no separating 2-cycles (checked first).
pub fn check_proposition_2(bundle: &ExtensionBundle) -> CheckReport {
    let mut rep = CheckReport::new("prop2-2cycle-empty-side");
    if !find_separating_2cycles(bundle).is_empty() {
        rep.skipped = Some("separating 2-cycle present".into());
        return rep;
    }
    for class in bundle.parallel_classes() {
        for i in 0..class.len() {
            for j in i + 1..class.len() {
                let c = [class[i], class[j]];
                let Some((black_side, red_side)) = h_cycle_sides(bundle, &c) else {
                    continue;
                };
                let occupied = |s: bool| {
                    black_side.values().any(|&x| x == s)
                        || red_side.values().any(|&x| x == s)
                };
                if occupied(true) && occupied(false) {
                    rep.violations.push(format!(
                        "parallel pair ({}, {}) has vertices on both sides",
                        c[0], c[1]
                    ));
                }
            }
        }
    }
    rep
}

/// Every parallel class of H has at most two edges.
pub fn check_proposition_3(bundle: &ExtensionBundle) -> CheckReport {
    let mut rep = CheckReport::new("prop3-multiplicity");
    if !find_separating_2cycles(bundle).is_empty() {
        rep.skipped = Some("separating 2-cycle present".into());
        return rep;
    }
    for class in bundle.parallel_classes() {
        if class.len() > 2 {
            let (a, b) = bundle.h.embedding.edges()[class[0]];
            rep.violations.push(format!(
                "parallel class {{{a}, {b}}} has multiplicity {}",
                class.len()
            ));
        }
    }
    rep
}

/// All 3-cycles of H as triples of H-embedding edge ids.
fn h_triangles(bundle: &ExtensionBundle) -> Vec<[usize; 3]> {
    let emb = &bundle.h.embedding;
    let m = emb.edge_count();
    let mut out = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                let mut verts: Vec<usize> = Vec::new();
                for &e in &[i, j, k] {
                    let (a, b) = emb.edges()[e];
                    verts.push(a);
                    verts.push(b);
                }
                verts.sort_unstable();
                verts.dedup();
                if verts.len() != 3 {
                    continue;
                }
                // each vertex must appear in exactly two of the edges
                let mut deg: HashMap<usize, usize> = HashMap::new();
                for &e in &[i, j, k] {
                    let (a, b) = emb.edges()[e];
                    if a == b {
                        continue;
                    }
                    *deg.entry(a).or_default() += 1;
                    *deg.entry(b).or_default() += 1;
                }
                if deg.values().all(|&d| d == 2) {
                    out.push([i, j, k]);
                }
            }
        }
    }
    out
}

fn class_size(bundle: &ExtensionBundle, edge: usize) -> usize {
    let (a, b) = bundle.h.embedding.edges()[edge];
    bundle
        .h
        .embedding
        .edges()
        .iter()
        .filter(|&&(x, y)| (x.min(y), x.max(y)) == (a.min(b), a.max(b)))
        .count()
}

/// For every 3-cycle C of H with an edge e parallel to a partner e′ off
/// C, the corresponding 2-paths of F lie on opposite sides of C (tested
/// through the residues of their red vertices).
pub fn check_proposition_4(bundle: &ExtensionBundle) -> CheckReport {
    let mut rep = CheckReport::new("prop4-partner-paths-split");
    if !find_separating_2cycles(bundle).is_empty() {
        rep.skipped = Some("separating 2-cycle present".into());
        return rep;
    }
    let emb = &bundle.h.embedding;
    for tri in h_triangles(bundle) {
        let Some((_, red_side)) = h_cycle_sides(bundle, &tri) else {
            continue;
        };
        for &e in &tri {
            let (a, b) = emb.edges()[e];
            for (e2, &(x, y)) in emb.edges().iter().enumerate() {
                if e2 == e || tri.contains(&e2) {
                    continue;
                }
                if (x.min(y), x.max(y)) != (a.min(b), a.max(b)) {
                    continue;
                }
                let w = bundle.red_of_h_edge(e);
                let w2 = bundle.red_of_h_edge(e2);
                match (red_side.get(&w), red_side.get(&w2)) {
                    (Some(s1), Some(s2)) if s1 == s2 => {
                        rep.violations.push(format!(
                            "partnered edges {e} and {e2} on 3-cycle {tri:?} hug the same side"
                        ));
                    }
                    _ => {}
                }
            }
        }
    }
    rep
}

/// Every 3-cycle of H with r red vertices inside has at least 3−r simple
/// (unpartnered) edges; r ≤ 2 is part of the claim.
pub fn check_proposition_5(bundle: &ExtensionBundle) -> CheckReport {
    let mut rep = CheckReport::new("prop5-simple-edges");
    if !find_separating_2cycles(bundle).is_empty() {
        rep.skipped = Some("separating 2-cycle present".into());
        return rep;
    }
    for tri in h_triangles(bundle) {
        let Some((_, red_side)) = h_cycle_sides(bundle, &tri) else {
            continue;
        };
        let r = red_side.values().filter(|&&s| s).count();
        if r > 2 {
            rep.violations
                .push(format!("3-cycle {tri:?} encloses {r} crossings (> 2)"));
            continue;
        }
        let simple = tri
            .iter()
            .filter(|&&e| class_size(bundle, e) == 1)
            .count();
        if simple < 3 - r {
            rep.violations.push(format!(
                "3-cycle {tri:?} has {simple} simple edges, needs {}",
                3 - r
            ));
        }
    }
    rep
}

/// One cellular 3-face of H′ with its interior population.
#[derive(Debug, Clone)]
pub struct TriangleRecord {
    pub face: PlaneFaceRef,
    /// corner vertices in original (planarization) ids.
    pub corners: [usize; 3],
    /// interior white vertices, original ids.
    pub whites: Vec<usize>,
    /// interior red vertices, original ids.
    pub reds: Vec<usize>,
    /// graph edges drawn inside (each is incident to an interior white).
    pub interior_edges: usize,
}

#[derive(Debug, Clone, Default)]
pub struct TriangleCounts {
    pub t: usize,
    pub t0: usize,
    pub t1: usize,
    pub t3: usize,
    /// faces whose interior crossing count is outside {0, 1, 3}.
    pub anomalies: Vec<String>,
}

/// Enumerates the cellular 3-faces of H′ and counts interior whites,
/// reds, and graph edges per face.
pub fn classify_cellular_3faces(
    bundle: &ExtensionBundle,
) -> (Vec<TriangleRecord>, TriangleCounts) {
    let emb = &bundle.h_prime.embedding;
    let faces = emb.plane_faces();
    // invert vertex compaction: H′ id → original id
    let mut orig_of: HashMap<usize, usize> = HashMap::new();
    for (orig, new) in bundle.h_prime.vertex_map.iter().enumerate() {
        if let Some(new) = new {
            orig_of.insert(*new, orig);
        }
    }
    let mut whites_of: HashMap<PlaneFaceRef, Vec<usize>> = HashMap::new();
    let mut reds_of: HashMap<PlaneFaceRef, Vec<usize>> = HashMap::new();
    for (&orig, &fref) in &bundle.h_prime.residue_faces {
        if bundle.is_white(orig) {
            whites_of.entry(fref).or_default().push(orig);
        } else if bundle.is_red(orig) {
            reds_of.entry(fref).or_default().push(orig);
        }
    }
    let mut records = Vec::new();
    let mut counts = TriangleCounts::default();
    for (idx, rec) in faces.records.iter().enumerate() {
        let fref = faces.refs[idx];
        if !rec.cellular || rec.size != 3 {
            continue;
        }
        let corners_new: Vec<usize> = rec.walks[0].iter().map(|&d| emb.dart_tail(d)).collect();
        let mut corners = [0usize; 3];
        for (i, &c) in corners_new.iter().enumerate() {
            corners[i] = orig_of[&c];
        }
        debug_assert!(corners.iter().all(|&c| bundle.is_black(c)));
        let mut whites = whites_of.get(&fref).cloned().unwrap_or_default();
        let mut reds = reds_of.get(&fref).cloned().unwrap_or_default();
        whites.sort_unstable();
        reds.sort_unstable();
        let interior_edges: usize = whites.iter().map(|&w| bundle.graph.degree(w)).sum();
        counts.t += 1;
        match reds.len() {
            0 => counts.t0 += 1,
            1 => counts.t1 += 1,
            3 => counts.t3 += 1,
            j => counts.anomalies.push(format!(
                "face {fref:?} encloses {j} crossings (expected 0, 1 or 3)"
            )),
        }
        records.push(TriangleRecord {
            face: fref,
            corners,
            whites,
            reds,
            interior_edges,
        });
    }
    (records, counts)
}

/// ⌈√k⌉ for the per-triangle edge bound.
pub fn isqrt_ceil(k: usize) -> usize {
    let mut r = 0;
    while r * r < k {
        r += 1;
    }
    r
}

/// Residue bookkeeping sanity: every white and red vertex is assigned to
/// exactly one face of H′.
pub fn residues_consistent(bundle: &ExtensionBundle) -> bool {
    let expected: usize = bundle
        .labels
        .iter()
        .filter(|&&l| l == VertexLabel::White || l == VertexLabel::Red)
        .count();
    let assigned = bundle
        .h_prime
        .residue_faces
        .iter()
        .filter(|(&v, _)| bundle.is_white(v) || bundle.is_red(v))
        .count();
    expected == assigned
}

pub fn dxw_embedding(bundle: &ExtensionBundle) -> &PlaneEmbedding {
    &bundle.dxw.embedding
}

pub fn bipartition_of(bundle: &ExtensionBundle) -> &Bipartition {
    &bundle.bipartition
}
