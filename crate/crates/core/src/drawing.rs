//! Drawings with at most one crossing per edge, modeled combinatorially:
//! a plane embedding of the planarization (crossings replaced by degree-4
//! red vertices) plus a registry pairing the two original edges through
//! each red vertex.

use std::collections::{BTreeMap, HashSet};
use thiserror::Error;

use crate::editor::PlaneEditor;
use crate::embedding::{PlaneEmbedding, VertexLabel};
use crate::graph::{Bipartition, GraphError, Multigraph, Part, SimpleGraph};
use crate::planarity::{embed_with_outer_vertices_labeled, is_planar_labeled, PlanarityError};

/// Which two original edges cross at a red vertex; `e1` is the edge a
/// downstream consumer deletes when it has to break the crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossingEntry {
    pub e1: (usize, usize),
    pub e2: (usize, usize),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CrossingRegistry {
    /// red vertex id in the planarization → crossing edges
    pub entries: BTreeMap<usize, CrossingEntry>,
}

#[derive(Debug, Clone)]
pub struct OnePlanarDrawing {
    pub graph: SimpleGraph,
    pub bipartition: Option<Bipartition>,
    /// vertices 0..|V(G)| are the graph's, the rest are red.
    pub planarization: PlaneEmbedding,
    pub registry: CrossingRegistry,
}

#[derive(Debug, Error)]
pub enum DrawingError {
    #[error("crossing pair shares an endpoint: ({0}, {1})")]
    SharedEndpoint(usize, usize),
    #[error("edge ({0}, {1}) used in more than one crossing pair")]
    EdgeReused(usize, usize),
    #[error("edge ({0}, {1}) is not in the graph")]
    UnknownEdge(usize, usize),
    #[error("drawing fails validation: {0}")]
    Invalid(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Planarity(#[from] PlanarityError),
}

#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl OnePlanarDrawing {
    pub fn crossing_count(&self) -> usize {
        self.registry.entries.len()
    }

    pub fn red_vertices(&self) -> Vec<usize> {
        self.registry.entries.keys().copied().collect()
    }
}

/// Checks every structural invariant and reports all violations; an empty
/// report means the drawing is valid.
pub fn validate_drawing(d: &OnePlanarDrawing) -> ValidationReport {
    let mut r = ValidationReport::default();
    let n = d.graph.vertex_count();
    let k = d.registry.entries.len();
    let p = &d.planarization;
    if p.vertex_count() != n + k {
        r.violations.push(format!(
            "planarization has {} vertices, expected |V(G)|+|W| = {}",
            p.vertex_count(),
            n + k
        ));
        return r;
    }
    for (&w, _) in &d.registry.entries {
        if w < n || w >= n + k {
            r.violations
                .push(format!("registry key {w} is not a crossing-vertex id"));
            return r;
        }
    }
    if !p.euler_check() {
        r.violations
            .push("planarization fails the genus-0 check".into());
    }
    let mut used: HashSet<(usize, usize)> = HashSet::new();
    let mut recovered: Vec<(usize, usize)> = Vec::new();
    for (&w, ce) in &d.registry.entries {
        for e in [ce.e1, ce.e2] {
            let key = (e.0.min(e.1), e.0.max(e.1));
            if !d.graph.has_edge(e.0, e.1) {
                r.violations
                    .push(format!("registry edge ({}, {}) not in G", e.0, e.1));
            }
            if !used.insert(key) {
                r.violations.push(format!(
                    "edge ({}, {}) crossed more than once",
                    e.0, e.1
                ));
            }
            recovered.push(key);
        }
        let (a, b) = ce.e1;
        let (c, dd) = ce.e2;
        let ends = [a, b, c, dd];
        if ends.iter().collect::<HashSet<_>>().len() != 4 {
            r.violations
                .push(format!("crossing at {w} joins edges sharing an endpoint"));
        }
        if p.degree(w) != 4 {
            r.violations
                .push(format!("red vertex {w} has degree {}", p.degree(w)));
            continue;
        }
        let nbrs = p.neighbors(w);
        let mut multiset = nbrs.clone();
        multiset.sort_unstable();
        let mut want = ends.to_vec();
        want.sort_unstable();
        if multiset != want {
            r.violations.push(format!(
                "red vertex {w} joins {multiset:?}, expected {want:?}"
            ));
            continue;
        }
        // rotation alternates the two crossing edges
        let side = |v: usize| v == a || v == b;
        let pattern: Vec<bool> = nbrs.iter().map(|&v| side(v)).collect();
        if pattern[0] == pattern[1] || pattern[1] == pattern[2] {
            r.violations.push(format!(
                "rotation at red vertex {w} does not alternate its crossing edges"
            ));
        }
        if let Some(bip) = &d.bipartition {
            let blacks: Vec<usize> = nbrs
                .iter()
                .copied()
                .filter(|&v| bip.part_of(v) == Part::X)
                .collect();
            if blacks.len() != 2 || blacks[0] == blacks[1] {
                r.violations.push(format!(
                    "red vertex {w} does not have two distinct black neighbors"
                ));
            }
        }
    }
    // every planarization edge is either a graph edge or a crossing piece
    let red = |v: usize| v >= n;
    for &(x, y) in p.edges() {
        match (red(x), red(y)) {
            (false, false) => {
                let key = (x.min(y), x.max(y));
                if !d.graph.has_edge(x, y) {
                    r.violations
                        .push(format!("planarization edge ({x}, {y}) not in G"));
                } else if used.contains(&key) {
                    r.violations.push(format!(
                        "edge ({x}, {y}) appears both crossed and uncrossed"
                    ));
                } else {
                    recovered.push(key);
                }
            }
            (true, true) => {
                r.violations
                    .push(format!("two crossing vertices {x}, {y} are adjacent"));
            }
            _ => {} // piece of a crossed edge; covered by the registry check
        }
    }
    recovered.sort_unstable();
    recovered.dedup();
    let mut expect: Vec<(usize, usize)> = d.graph.edges().to_vec();
    expect.sort_unstable();
    if recovered != expect {
        r.violations.push(format!(
            "recovered edge set has {} edges, G has {}",
            recovered.len(),
            expect.len()
        ));
    }
    // label discipline
    for v in 0..p.vertex_count() {
        let want = if v >= n {
            VertexLabel::Red
        } else {
            match &d.bipartition {
                Some(b) if b.part_of(v) == Part::X => VertexLabel::Black,
                Some(_) => VertexLabel::White,
                None => VertexLabel::Plain,
            }
        };
        if p.label(v) != want {
            r.violations
                .push(format!("vertex {v} labeled {:?}, expected {want:?}", p.label(v)));
        }
    }
    if let Some(bip) = &d.bipartition {
        if bip.validate(&d.graph).is_err() {
            r.violations.push("bipartition invalid for G".into());
        }
    }
    r
}

/// Reads the abstract graph back out of a valid drawing.
pub fn recover_graph(d: &OnePlanarDrawing) -> Result<SimpleGraph, DrawingError> {
    let rep = validate_drawing(d);
    if !rep.is_valid() {
        return Err(DrawingError::Invalid(rep.violations.join("; ")));
    }
    let n = d.graph.vertex_count();
    let mut edges: Vec<(usize, usize)> = d
        .planarization
        .edges()
        .iter()
        .copied()
        .filter(|&(x, y)| x < n && y < n)
        .collect();
    for ce in d.registry.entries.values() {
        edges.push(ce.e1);
        edges.push(ce.e2);
    }
    Ok(SimpleGraph::new(n, edges)?)
}

/// Attempts to draw `g` with exactly the given crossing pairs. Returns
/// `Ok(None)` when no plane embedding realizes the pairing ("pairing
/// rejected"). With `rim`, additionally requires all rim vertices on the
/// unbounded face (disc-style constraint).
///
/// Alternation at each crossing vertex is forced by a gadget: the four
/// half-edges at the crossing are subdivided and the subdivision vertices
/// joined by a 4-cycle interleaving the two edges; the resulting wheel is
/// 3-connected, so any plane embedding alternates. The gadget is removed
/// from the witness.
pub fn planarize_from(
    g: &SimpleGraph,
    bipartition: Option<&Bipartition>,
    pairs: &[(usize, usize, usize, usize)],
    rim: Option<&[usize]>,
) -> Result<Option<OnePlanarDrawing>, DrawingError> {
    let n = g.vertex_count();
    let k = pairs.len();
    let mut used: HashSet<(usize, usize)> = HashSet::new();
    for &(a, b, c, d) in pairs {
        for (x, y) in [(a, b), (c, d)] {
            if !g.has_edge(x, y) {
                return Err(DrawingError::UnknownEdge(x, y));
            }
            if !used.insert((x.min(y), x.max(y))) {
                return Err(DrawingError::EdgeReused(x, y));
            }
        }
        if [a, b, c, d].iter().collect::<HashSet<_>>().len() != 4 {
            return Err(DrawingError::SharedEndpoint(a, c));
        }
    }
    // gadgeted graph: G vertices, reds n..n+k, subdivision vertices after
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .copied()
        .filter(|&(x, y)| !used.contains(&(x.min(y), x.max(y))))
        .collect();
    let mut labels: Vec<VertexLabel> = (0..n)
        .map(|v| match bipartition {
            Some(b) if b.part_of(v) == Part::X => VertexLabel::Black,
            Some(_) => VertexLabel::White,
            None => VertexLabel::Plain,
        })
        .collect();
    labels.extend(std::iter::repeat(VertexLabel::Red).take(k));
    let mut nv = n + k;
    let mut sub_vertices: Vec<[usize; 4]> = Vec::new();
    let mut rim_edge_ids: Vec<usize> = Vec::new();
    for (i, &(a, b, c, d)) in pairs.iter().enumerate() {
        let w = n + i;
        let s: [usize; 4] = [nv, nv + 1, nv + 2, nv + 3]; // for a, b, c, d
        nv += 4;
        labels.extend([VertexLabel::Plain; 4]);
        for (end, sv) in [a, b, c, d].into_iter().zip(s) {
            edges.push((end, sv));
            edges.push((sv, w));
        }
        sub_vertices.push(s);
        // rim 4-cycle interleaving edge 1 (a,b) and edge 2 (c,d):
        // s_a - s_c - s_b - s_d - s_a
        for (x, y) in [(s[0], s[2]), (s[2], s[1]), (s[1], s[3]), (s[3], s[0])] {
            rim_edge_ids.push(edges.len());
            edges.push((x, y));
        }
    }
    let gadget = Multigraph::new(nv, edges).expect("gadget graph is loop-free");
    let verdict = match rim {
        Some(rs) => embed_with_outer_vertices_labeled(&gadget, &labels, rs)?,
        None => is_planar_labeled(&gadget, &labels),
    };
    let emb = match verdict.embedding {
        Some(e) => e,
        None => return Ok(None),
    };
    // strip the gadget: drop rim edges, smooth subdivision vertices
    let mut ed = PlaneEditor::from_embedding(&emb);
    for &s in &rim_edge_ids {
        ed.delete_edge(s).expect("rim edge present");
    }
    for svs in &sub_vertices {
        for &sv in svs {
            ed.unsubdivide(sv).expect("gadget vertex smoothable");
        }
    }
    let snap = ed.snapshot().expect("consistent after gadget removal");
    // the rim constraint survives gadget removal: rim edges bound inner
    // gadget faces, so the unbounded face persists through the edits
    let plan = snap.embedding;
    let mut registry = CrossingRegistry::default();
    for (i, &(a, b, c, d)) in pairs.iter().enumerate() {
        registry.entries.insert(
            n + i,
            CrossingEntry {
                e1: (a, b),
                e2: (c, d),
            },
        );
    }
    // sanity: alternation must have been forced by the gadget
    for (&w, ce) in &registry.entries {
        let nbrs = plan.neighbors(w);
        let side = |v: usize| v == ce.e1.0 || v == ce.e1.1;
        let pat: Vec<bool> = nbrs.iter().map(|&v| side(v)).collect();
        if pat[0] == pat[1] || pat[1] == pat[2] {
            return Err(DrawingError::Invalid(format!(
                "gadget failed to force alternation at {w}"
            )));
        }
    }
    // labels survived vertex compaction (gadget vertices were last)
    let drawing = OnePlanarDrawing {
        graph: g.clone(),
        bipartition: bipartition.cloned(),
        planarization: plan,
        registry,
    };
    let rep = validate_drawing(&drawing);
    if !rep.is_valid() {
        return Err(DrawingError::Invalid(rep.violations.join("; ")));
    }
    Ok(Some(drawing))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::complete_bipartite;

    #[test]
    fn planar_graph_zero_crossings() {
        let (g, bip) = complete_bipartite(2, 3).unwrap();
        let d = planarize_from(&g, Some(&bip), &[], None).unwrap().unwrap();
        assert_eq!(d.crossing_count(), 0);
        assert!(validate_drawing(&d).is_valid());
        let rec = recover_graph(&d).unwrap();
        assert_eq!(rec.edges(), g.edges());
    }

    #[test]
    fn k33_needs_a_crossing() {
        let (g, bip) = complete_bipartite(3, 3).unwrap();
        assert!(planarize_from(&g, Some(&bip), &[], None).unwrap().is_none());
        // cross edges (0,3) and (1,4): vertex-disjoint
        let d = planarize_from(&g, Some(&bip), &[(0, 3, 1, 4)], None)
            .unwrap()
            .expect("K3,3 is drawable with one crossing");
        assert_eq!(d.crossing_count(), 1);
        assert!(validate_drawing(&d).is_valid());
        assert_eq!(recover_graph(&d).unwrap().edges(), g.edges());
    }

    #[test]
    fn bad_pairs_rejected() {
        let (g, bip) = complete_bipartite(3, 3).unwrap();
        // shared endpoint
        assert!(matches!(
            planarize_from(&g, Some(&bip), &[(0, 3, 0, 4)], None),
            Err(DrawingError::SharedEndpoint(_, _))
        ));
        // edge reuse across pairs
        assert!(matches!(
            planarize_from(&g, Some(&bip), &[(0, 3, 1, 4), (0, 3, 2, 5)], None),
            Err(DrawingError::EdgeReused(_, _))
        ));
        // non-edge
        assert!(matches!(
            planarize_from(&g, Some(&bip), &[(0, 1, 3, 4)], None),
            Err(DrawingError::UnknownEdge(_, _))
        ));
    }

    #[test]
    fn registry_violation_detected() {
        let (g, bip) = complete_bipartite(3, 3).unwrap();
        let mut d = planarize_from(&g, Some(&bip), &[(0, 3, 1, 4)], None)
            .unwrap()
            .unwrap();
        // corrupt the registry: claim edges sharing an endpoint
        d.registry.entries.insert(
            6,
            CrossingEntry {
                e1: (0, 3),
                e2: (0, 4),
            },
        );
        let rep = validate_drawing(&d);
        assert!(!rep.is_valid());
        assert!(rep
            .violations
            .iter()
            .any(|v| v.contains("sharing an endpoint")));
    }
}
