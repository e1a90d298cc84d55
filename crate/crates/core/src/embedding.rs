//! Plane multigraph embeddings as rotation systems.
//!
//! Every edge contributes two mutually twinned darts: edge `e` owns darts
//! `2e` (at its first endpoint) and `2e + 1` (at its second). The rotation
//! at a vertex lists the darts leaving it in clockwise order. Faces are
//! traced with `next = rotation-successor of twin`. Disconnected drawings
//! carry a nesting forest that records which face of which component each
//! non-root component is drawn inside, so noncellular faces are computable.

use std::collections::{BTreeMap, HashMap, HashSet};
use thiserror::Error;

pub type Dart = usize;

#[inline]
pub fn edge_of(d: Dart) -> usize {
    d / 2
}

#[inline]
pub fn twin(d: Dart) -> Dart {
    d ^ 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexLabel {
    Black,
    White,
    Red,
    Plain,
}

/// Where a connected component is drawn: in the unbounded region (root,
/// `host = None`) or inside face `face` of component `component`.
/// `outer_face` is the face of the component's own (spherical) embedding
/// that borders its surroundings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Placement {
    pub host: Option<(usize, usize)>,
    pub outer_face: usize,
}

/// Reference to a face of one component's spherical embedding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceRef {
    pub component: usize,
    pub face: usize,
}

/// A face of the plane drawing (after merging nested components).
/// `Outer` is the unbounded face; `Inner(r)` is the non-outer face `r`
/// of some component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PlaneFaceRef {
    Outer,
    Inner(FaceRef),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EmbeddingError {
    #[error("vertex id {0} out of range")]
    VertexOutOfRange(usize),
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("dart {0} missing from the rotation of vertex {1}")]
    DartMissing(Dart, usize),
    #[error("dart {0} appears more than once or at the wrong vertex")]
    DartMisplaced(Dart),
    #[error("placement list length {0} does not match component count {1}")]
    PlacementCount(usize, usize),
    #[error("invalid face index {face} for component {component}")]
    BadFaceIndex { component: usize, face: usize },
    #[error("component {0} is nested in the outer face of its host")]
    NestedInOuterFace(usize),
    #[error("nesting forest contains a cycle through component {0}")]
    NestingCycle(usize),
    #[error("embedding fails the genus-0 check on component {0}")]
    NotSpherical(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneEmbedding {
    edges: Vec<(usize, usize)>,
    rot: Vec<Vec<Dart>>,
    labels: Vec<VertexLabel>,
    placement: Vec<Placement>,
}

/// One face of the plane drawing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceRecord {
    /// Closed dart walks bounding the face; noncellular faces have several.
    pub walks: Vec<Vec<Dart>>,
    /// Total edge count with each repeated edge counted twice.
    pub size: usize,
    pub cellular: bool,
}

/// Result of enumerating the faces of the plane drawing.
#[derive(Debug, Clone)]
pub struct PlaneFaces {
    pub records: Vec<FaceRecord>,
    pub refs: Vec<PlaneFaceRef>,
    index: HashMap<PlaneFaceRef, usize>,
}

impl PlaneFaces {
    pub fn index_of(&self, r: PlaneFaceRef) -> Option<usize> {
        self.index.get(&r).copied()
    }

    pub fn outer_index(&self) -> usize {
        self.index[&PlaneFaceRef::Outer]
    }
}

impl PlaneEmbedding {
    pub fn new(
        n: usize,
        edges: Vec<(usize, usize)>,
        rot: Vec<Vec<Dart>>,
        labels: Vec<VertexLabel>,
        placement: Vec<Placement>,
    ) -> Result<Self, EmbeddingError> {
        for &(a, b) in &edges {
            if a >= n || b >= n {
                return Err(EmbeddingError::VertexOutOfRange(a.max(b)));
            }
            if a == b {
                return Err(EmbeddingError::LoopEdge(a));
            }
        }
        if rot.len() != n || labels.len() != n {
            return Err(EmbeddingError::VertexOutOfRange(n));
        }
        // every dart exactly once, at its own vertex
        let mut seen = vec![false; 2 * edges.len()];
        for (v, r) in rot.iter().enumerate() {
            for &d in r {
                if edge_of(d) >= edges.len() || seen[d] {
                    return Err(EmbeddingError::DartMisplaced(d));
                }
                let (a, b) = edges[edge_of(d)];
                let tail = if d % 2 == 0 { a } else { b };
                if tail != v {
                    return Err(EmbeddingError::DartMisplaced(d));
                }
                seen[d] = true;
            }
        }
        if let Some(d) = seen.iter().position(|&s| !s) {
            let (a, b) = edges[edge_of(d)];
            let tail = if d % 2 == 0 { a } else { b };
            return Err(EmbeddingError::DartMissing(d, tail));
        }
        let emb = PlaneEmbedding {
            edges,
            rot,
            labels,
            placement,
        };
        emb.validate_placement()?;
        for (c, comp) in emb.components().iter().enumerate() {
            if !emb.component_euler_ok(comp) {
                return Err(EmbeddingError::NotSpherical(c));
            }
        }
        Ok(emb)
    }

    /// Builds an embedding where every component is a root with outer face 0.
    pub fn from_rotations(
        n: usize,
        edges: Vec<(usize, usize)>,
        rot: Vec<Vec<Dart>>,
        labels: Vec<VertexLabel>,
    ) -> Result<Self, EmbeddingError> {
        let probe = PlaneEmbedding {
            edges: edges.clone(),
            rot: rot.clone(),
            labels: labels.clone(),
            placement: Vec::new(),
        };
        let ncomp = probe.components().len();
        let placement = vec![
            Placement {
                host: None,
                outer_face: 0,
            };
            ncomp
        ];
        PlaneEmbedding::new(n, edges, rot, labels, placement)
    }

    fn validate_placement(&self) -> Result<(), EmbeddingError> {
        let comps = self.components();
        if self.placement.len() != comps.len() {
            return Err(EmbeddingError::PlacementCount(
                self.placement.len(),
                comps.len(),
            ));
        }
        let faces = self.faces_per_component();
        for (c, p) in self.placement.iter().enumerate() {
            if p.outer_face >= faces[c].len() {
                return Err(EmbeddingError::BadFaceIndex {
                    component: c,
                    face: p.outer_face,
                });
            }
            if let Some((hc, hf)) = p.host {
                if hc >= comps.len() || hc == c {
                    return Err(EmbeddingError::NestingCycle(c));
                }
                if hf >= faces[hc].len() {
                    return Err(EmbeddingError::BadFaceIndex {
                        component: hc,
                        face: hf,
                    });
                }
                if hf == self.placement[hc].outer_face {
                    return Err(EmbeddingError::NestedInOuterFace(c));
                }
            }
        }
        // acyclicity
        for start in 0..comps.len() {
            let mut c = start;
            let mut steps = 0;
            while let Some((hc, _)) = self.placement[c].host {
                c = hc;
                steps += 1;
                if steps > comps.len() {
                    return Err(EmbeddingError::NestingCycle(start));
                }
            }
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.rot.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn rotations(&self) -> &[Vec<Dart>] {
        &self.rot
    }

    pub fn labels(&self) -> &[VertexLabel] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> VertexLabel {
        self.labels[v]
    }

    pub fn placement(&self) -> &[Placement] {
        &self.placement
    }

    pub fn dart_tail(&self, d: Dart) -> usize {
        let (a, b) = self.edges[edge_of(d)];
        if d % 2 == 0 {
            a
        } else {
            b
        }
    }

    pub fn dart_head(&self, d: Dart) -> usize {
        self.dart_tail(twin(d))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rot[v].len()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.rot[v].iter().map(|&d| self.dart_head(d)).collect()
    }

    /// Clockwise successor of a dart in the rotation at its tail.
    pub fn rotation_successor(&self, d: Dart) -> Dart {
        let v = self.dart_tail(d);
        let pos = self.rot[v].iter().position(|&x| x == d).unwrap();
        self.rot[v][(pos + 1) % self.rot[v].len()]
    }

    /// Connected components, ordered by smallest contained vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.rot.len();
        let mut comp_of = vec![usize::MAX; n];
        let mut comps: Vec<Vec<usize>> = Vec::new();
        for s in 0..n {
            if comp_of[s] != usize::MAX {
                continue;
            }
            let id = comps.len();
            let mut stack = vec![s];
            let mut verts = Vec::new();
            comp_of[s] = id;
            while let Some(v) = stack.pop() {
                verts.push(v);
                for &d in &self.rot[v] {
                    let u = self.dart_head(d);
                    if comp_of[u] == usize::MAX {
                        comp_of[u] = id;
                        stack.push(u);
                    }
                }
            }
            verts.sort_unstable();
            comps.push(verts);
        }
        comps
    }

    pub fn component_of(&self) -> Vec<usize> {
        let comps = self.components();
        let mut out = vec![usize::MAX; self.rot.len()];
        for (i, c) in comps.iter().enumerate() {
            for &v in c {
                out[v] = i;
            }
        }
        out
    }

    /// Faces of one component's spherical embedding, ordered by smallest
    /// contained dart. An isolated vertex yields one empty-walk face.
    pub fn component_faces(&self, comp: &[usize]) -> Vec<Vec<Dart>> {
        let mut darts: Vec<Dart> = comp
            .iter()
            .flat_map(|&v| self.rot[v].iter().copied())
            .collect();
        darts.sort_unstable();
        if darts.is_empty() {
            return vec![Vec::new()];
        }
        let mut visited: HashSet<Dart> = HashSet::new();
        let mut faces = Vec::new();
        for &start in &darts {
            if visited.contains(&start) {
                continue;
            }
            let mut walk = Vec::new();
            let mut d = start;
            loop {
                walk.push(d);
                visited.insert(d);
                d = self.rotation_successor(twin(d));
                if d == start {
                    break;
                }
            }
            faces.push(walk);
        }
        faces
    }

    pub fn faces_per_component(&self) -> Vec<Vec<Vec<Dart>>> {
        self.components()
            .iter()
            .map(|c| self.component_faces(c))
            .collect()
    }

    fn component_euler_ok(&self, comp: &[usize]) -> bool {
        let v = comp.len();
        let comp_set: HashSet<usize> = comp.iter().copied().collect();
        let e = self
            .edges
            .iter()
            .filter(|&&(a, _)| comp_set.contains(&a))
            .count();
        let f = self.component_faces(comp).len();
        v + f == e + 2
    }

    /// Per-component genus-0 check: v - e + f = 2 on every component.
    pub fn euler_check(&self) -> bool {
        self.components()
            .iter()
            .all(|c| self.component_euler_ok(c))
    }

    /// Faces of the plane drawing, with nested components merged into
    /// their host faces. The unbounded face is always present.
    pub fn plane_faces(&self) -> PlaneFaces {
        let comps = self.components();
        let faces = self.faces_per_component();
        let mut nested_in: BTreeMap<PlaneFaceRef, Vec<usize>> = BTreeMap::new();
        for (c, p) in self.placement.iter().enumerate() {
            let key = match p.host {
                None => PlaneFaceRef::Outer,
                Some((hc, hf)) => PlaneFaceRef::Inner(FaceRef {
                    component: hc,
                    face: hf,
                }),
            };
            nested_in.entry(key).or_default().push(c);
        }
        let mut records = Vec::new();
        let mut refs = Vec::new();
        let mut index = HashMap::new();
        let mut push = |r: PlaneFaceRef, own: Vec<Vec<Dart>>, guests: &[usize]| {
            let mut walks = own;
            for &g in guests {
                walks.push(faces[g][self.placement[g].outer_face].clone());
            }
            let size = walks.iter().map(|w| w.len()).sum();
            let cellular = walks.len() == 1;
            index.insert(r, records.len());
            refs.push(r);
            records.push(FaceRecord {
                walks,
                size,
                cellular,
            });
        };
        let outer_guests = nested_in
            .get(&PlaneFaceRef::Outer)
            .cloned()
            .unwrap_or_default();
        push(PlaneFaceRef::Outer, Vec::new(), &outer_guests);
        for c in 0..comps.len() {
            for f in 0..faces[c].len() {
                if f == self.placement[c].outer_face {
                    continue;
                }
                let r = PlaneFaceRef::Inner(FaceRef {
                    component: c,
                    face: f,
                });
                let guests = nested_in.get(&r).cloned().unwrap_or_default();
                push(r, vec![faces[c][f].clone()], &guests);
            }
        }
        PlaneFaces {
            records,
            refs,
            index,
        }
    }

    /// Plane face on the side of dart `d` (the face whose walk contains `d`).
    pub fn plane_face_of_dart(&self, d: Dart) -> PlaneFaceRef {
        let comps = self.components();
        let c = self.component_of()[self.dart_tail(d)];
        let faces = self.component_faces(&comps[c]);
        let f = faces
            .iter()
            .position(|w| w.contains(&d))
            .expect("dart not on any face");
        if f == self.placement[c].outer_face {
            match self.placement[c].host {
                None => PlaneFaceRef::Outer,
                Some((hc, hf)) => PlaneFaceRef::Inner(FaceRef {
                    component: hc,
                    face: hf,
                }),
            }
        } else {
            PlaneFaceRef::Inner(FaceRef {
                component: c,
                face: f,
            })
        }
    }

    /// Plane face that hosts vertex `v`'s component when `v` is isolated;
    /// `None` when `v` has incident edges.
    pub fn hosting_face_of_isolated(&self, v: usize) -> Option<PlaneFaceRef> {
        if !self.rot[v].is_empty() {
            return None;
        }
        let c = self.component_of()[v];
        Some(match self.placement[c].host {
            None => PlaneFaceRef::Outer,
            Some((hc, hf)) => PlaneFaceRef::Inner(FaceRef {
                component: hc,
                face: hf,
            }),
        })
    }

    /// Re-arranges the nesting forest so that the given plane face becomes
    /// the unbounded face. The rotation system is untouched.
    pub fn re_root(&mut self, target: PlaneFaceRef) {
        let fr = match target {
            PlaneFaceRef::Outer => return,
            PlaneFaceRef::Inner(fr) => fr,
        };
        // chain from the target's component up to its root
        let mut chain = vec![fr.component];
        while let Some((hc, _)) = self.placement[*chain.last().unwrap()].host {
            chain.push(hc);
        }
        // components nested inside the target face become roots
        let old_placement = self.placement.clone();
        for (c, p) in old_placement.iter().enumerate() {
            if p.host == Some((fr.component, fr.face)) {
                self.placement[c].host = None;
            }
        }
        // old roots other than the chain root hang off the chain root's
        // old outer face
        let chain_root = *chain.last().unwrap();
        for (c, p) in old_placement.iter().enumerate() {
            if p.host.is_none() && c != chain_root {
                self.placement[c].host = Some((chain_root, old_placement[chain_root].outer_face));
            }
        }
        // flip the chain: each component's new outer face is the face that
        // held the next component towards the target
        self.placement[fr.component].outer_face = fr.face;
        self.placement[fr.component].host = None;
        for i in (0..chain.len() - 1).rev() {
            // chain[i] was nested in (chain[i+1], f); now chain[i+1] nests
            // inside chain[i]'s old outer face
            let (_, host_face) = old_placement[chain[i]].host.unwrap();
            debug_assert_eq!(old_placement[chain[i]].host.unwrap().0, chain[i + 1]);
            self.placement[chain[i + 1]].host = Some((chain[i], old_placement[chain[i]].outer_face));
            if chain[i] != fr.component {
                self.placement[chain[i]].outer_face = host_face;
            } else {
                // target component: outer face already set to the target face
                let _ = host_face;
            }
        }
        debug_assert!(self.validate_placement().is_ok());
    }

    /// Splits the plane faces into the two sides of the cycle given by
    /// `cycle_edges` (edge ids forming a closed curve in the drawing).
    /// Returns `side[i] = false/true` per plane face, with the unbounded
    /// face always on side `false`, or `None` if the edges do not separate
    /// the faces into exactly two groups.
    pub fn cycle_sides(&self, cycle_edges: &[usize]) -> Option<(PlaneFaces, Vec<bool>)> {
        let faces = self.plane_faces();
        let on_cycle: HashSet<usize> = cycle_edges.iter().copied().collect();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); faces.records.len()];
        for e in 0..self.edges.len() {
            if on_cycle.contains(&e) {
                continue;
            }
            let fa = faces.index_of(self.plane_face_of_dart(2 * e)).unwrap();
            let fb = faces.index_of(self.plane_face_of_dart(2 * e + 1)).unwrap();
            if fa != fb {
                adj[fa].push(fb);
                adj[fb].push(fa);
            }
        }
        let mut group = vec![usize::MAX; faces.records.len()];
        let mut ngroups = 0;
        for s in 0..faces.records.len() {
            if group[s] != usize::MAX {
                continue;
            }
            let id = ngroups;
            ngroups += 1;
            let mut stack = vec![s];
            group[s] = id;
            while let Some(f) = stack.pop() {
                for &g in &adj[f] {
                    if group[g] == usize::MAX {
                        group[g] = id;
                        stack.push(g);
                    }
                }
            }
        }
        if ngroups != 2 {
            return None;
        }
        let outer_group = group[faces.outer_index()];
        let side = group.iter().map(|&g| g != outer_group).collect();
        Some((faces, side))
    }
}

/// Spec operation: faces of the plane drawing.
pub fn trace_faces(embedding: &PlaneEmbedding) -> Vec<FaceRecord> {
    embedding.plane_faces().records
}

/// Spec operation: per-component Euler check.
pub fn euler_check(embedding: &PlaneEmbedding) -> bool {
    embedding.euler_check()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> PlaneEmbedding {
        // edges 0:(0,1) 1:(1,2) 2:(0,2)
        let edges = vec![(0, 1), (1, 2), (0, 2)];
        let rot = vec![vec![0, 4], vec![1, 2], vec![3, 5]];
        PlaneEmbedding::from_rotations(3, edges, rot, vec![VertexLabel::Plain; 3]).unwrap()
    }

    #[test]
    fn triangle_two_cellular_faces() {
        let emb = triangle();
        assert!(euler_check(&emb));
        let faces = trace_faces(&emb);
        assert_eq!(faces.len(), 2);
        for f in &faces {
            assert_eq!(f.size, 3);
            assert!(f.cellular);
        }
    }

    #[test]
    fn single_edge_one_face() {
        let emb = PlaneEmbedding::from_rotations(
            2,
            vec![(0, 1)],
            vec![vec![0], vec![1]],
            vec![VertexLabel::Plain; 2],
        )
        .unwrap();
        assert!(euler_check(&emb));
        let faces = trace_faces(&emb);
        assert_eq!(faces.len(), 1);
        assert_eq!(faces[0].size, 2);
    }

    #[test]
    fn isolated_vertex() {
        let emb = PlaneEmbedding::from_rotations(1, vec![], vec![vec![]], vec![VertexLabel::Plain])
            .unwrap();
        assert!(euler_check(&emb));
        assert_eq!(trace_faces(&emb).len(), 1);
    }

    #[test]
    fn nested_triangles() {
        // two disjoint triangles, second nested inside face 1 of the first
        let edges = vec![(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)];
        let rot = vec![
            vec![0, 4],
            vec![1, 2],
            vec![3, 5],
            vec![6, 10],
            vec![7, 8],
            vec![9, 11],
        ];
        let placement = vec![
            Placement {
                host: None,
                outer_face: 0,
            },
            Placement {
                host: Some((0, 1)),
                outer_face: 0,
            },
        ];
        let emb = PlaneEmbedding::new(6, edges, rot, vec![VertexLabel::Plain; 6], placement)
            .unwrap();
        assert!(euler_check(&emb));
        let faces = trace_faces(&emb);
        // unbounded + host (noncellular) + inner face of nested triangle
        assert_eq!(faces.len(), 3);
        let host = faces.iter().find(|f| !f.cellular).unwrap();
        assert_eq!(host.walks.len(), 2);
        assert_eq!(host.size, 6);
    }

    #[test]
    fn nesting_in_outer_face_rejected() {
        let edges = vec![(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)];
        let rot = vec![
            vec![0, 4],
            vec![1, 2],
            vec![3, 5],
            vec![6, 10],
            vec![7, 8],
            vec![9, 11],
        ];
        let placement = vec![
            Placement {
                host: None,
                outer_face: 0,
            },
            Placement {
                host: Some((0, 0)),
                outer_face: 0,
            },
        ];
        assert_eq!(
            PlaneEmbedding::new(6, edges, rot, vec![VertexLabel::Plain; 6], placement)
                .unwrap_err(),
            EmbeddingError::NestedInOuterFace(1)
        );
    }

    #[test]
    fn face_sizes_sum_to_twice_edges() {
        let emb = triangle();
        let total: usize = trace_faces(&emb).iter().map(|f| f.size).sum();
        assert_eq!(total, 2 * emb.edge_count());
    }

    #[test]
    fn re_root_inner_face() {
        let mut emb = triangle();
        let faces = emb.plane_faces();
        let inner = faces
            .refs
            .iter()
            .find(|r| matches!(r, PlaneFaceRef::Inner(_)))
            .copied()
            .unwrap();
        emb.re_root(inner);
        assert!(emb.euler_check());
        // the previously inner face is now the component's outer face
        if let PlaneFaceRef::Inner(fr) = inner {
            assert_eq!(emb.placement()[fr.component].outer_face, fr.face);
        }
    }

    #[test]
    fn cycle_sides_of_triangle_in_k4() {
        // K4 planar embedding: vertex 3 inside triangle 0-1-2
        // edges 0:(0,1) 1:(1,2) 2:(0,2) 3:(0,3) 4:(1,3) 5:(2,3)
        let edges = vec![(0, 1), (1, 2), (0, 2), (0, 3), (1, 3), (2, 3)];
        let rot = vec![
            vec![4, 6, 0],
            vec![1, 8, 2],
            vec![5, 3, 10],
            vec![7, 11, 9],
        ];
        // outer face is the walk around triangle 0-1-2 (face index 1)
        let placement = vec![Placement {
            host: None,
            outer_face: 1,
        }];
        let emb =
            PlaneEmbedding::new(4, edges, rot, vec![VertexLabel::Plain; 4], placement).unwrap();
        assert!(emb.euler_check());
        let (faces, side) = emb.cycle_sides(&[0, 1, 2]).unwrap();
        // outer face on side false; the three faces around vertex 3 inside
        assert!(!side[faces.outer_index()]);
        let inside = side.iter().filter(|&&s| s).count();
        assert_eq!(inside, 3);
    }
}
