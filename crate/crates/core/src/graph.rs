//! Abstract graphs: simple graphs, multigraphs and bipartitions.

use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex id {0} out of range (vertex count {1})")]
    VertexOutOfRange(usize, usize),
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("edge {0}-{1} joins two vertices of the same part")]
    NotBipartite(usize, usize),
    #[error("part size must be positive")]
    EmptyPart,
    #[error("bipartition covers {0} vertices but graph has {1}")]
    PartitionSizeMismatch(usize, usize),
}

/// Undirected simple graph on vertices `0..vertex_count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl SimpleGraph {
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a >= n {
                return Err(GraphError::VertexOutOfRange(a, n));
            }
            if b >= n {
                return Err(GraphError::VertexOutOfRange(b, n));
            }
            if a == b {
                return Err(GraphError::LoopEdge(a));
            }
            let e = (a.min(b), a.max(b));
            if !set.insert(e) {
                return Err(GraphError::DuplicateEdge(e.0, e.1));
            }
        }
        Ok(SimpleGraph {
            n,
            edges: set.into_iter().collect(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in sorted order, each as `(a, b)` with `a < b`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        let e = (a.min(b), a.max(b));
        self.edges.binary_search(&e).is_ok()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for &(a, b) in &self.edges {
            if a == v {
                out.push(b);
            } else if b == v {
                out.push(a);
            }
        }
        out
    }

    pub fn to_multigraph(&self) -> Multigraph {
        Multigraph {
            n: self.n,
            edges: self.edges.clone(),
        }
    }
}

/// Undirected multigraph: parallel edges allowed, loops rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Multigraph {
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut list = Vec::new();
        for (a, b) in edges {
            if a >= n {
                return Err(GraphError::VertexOutOfRange(a, n));
            }
            if b >= n {
                return Err(GraphError::VertexOutOfRange(b, n));
            }
            if a == b {
                return Err(GraphError::LoopEdge(a));
            }
            list.push((a, b));
        }
        Ok(Multigraph { n, edges: list })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn is_simple(&self) -> bool {
        let mut set = BTreeSet::new();
        self.edges
            .iter()
            .all(|&(a, b)| set.insert((a.min(b), a.max(b))))
    }

    /// Greedy 2-coloring; `None` when an odd cycle exists.
    pub fn bipartite_coloring(&self) -> Option<Vec<bool>> {
        let mut color = vec![None; self.n];
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for s in 0..self.n {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            let mut queue = vec![s];
            while let Some(v) = queue.pop() {
                let cv = color[v].unwrap();
                for &u in &adj[v] {
                    match color[u] {
                        None => {
                            color[u] = Some(!cv);
                            queue.push(u);
                        }
                        Some(cu) if cu == cv => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(|c| c.unwrap()).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Part {
    X,
    Y,
}

/// Assignment of every vertex to one of the two partite sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    part: Vec<Part>,
}

impl Bipartition {
    pub fn new(part: Vec<Part>) -> Self {
        Bipartition { part }
    }

    /// Checks that every edge of `g` joins an X-vertex to a Y-vertex.
    pub fn validate(&self, g: &SimpleGraph) -> Result<(), GraphError> {
        if self.part.len() != g.vertex_count() {
            return Err(GraphError::PartitionSizeMismatch(
                self.part.len(),
                g.vertex_count(),
            ));
        }
        for &(a, b) in g.edges() {
            if self.part[a] == self.part[b] {
                return Err(GraphError::NotBipartite(a, b));
            }
        }
        Ok(())
    }

    pub fn part_of(&self, v: usize) -> Part {
        self.part[v]
    }

    pub fn len(&self) -> usize {
        self.part.len()
    }

    pub fn is_empty(&self) -> bool {
        self.part.is_empty()
    }

    pub fn x_size(&self) -> usize {
        self.part.iter().filter(|&&p| p == Part::X).count()
    }

    pub fn y_size(&self) -> usize {
        self.part.iter().filter(|&&p| p == Part::Y).count()
    }

    pub fn x_vertices(&self) -> Vec<usize> {
        (0..self.part.len())
            .filter(|&v| self.part[v] == Part::X)
            .collect()
    }

    pub fn y_vertices(&self) -> Vec<usize> {
        (0..self.part.len())
            .filter(|&v| self.part[v] == Part::Y)
            .collect()
    }
}

/// The complete bipartite graph K_{x,y}: X = 0..x, Y = x..x+y.
pub fn complete_bipartite(x: usize, y: usize) -> Result<(SimpleGraph, Bipartition), GraphError> {
    if x == 0 || y == 0 {
        return Err(GraphError::EmptyPart);
    }
    let mut edges = Vec::with_capacity(x * y);
    for a in 0..x {
        for b in 0..y {
            edges.push((a, x + b));
        }
    }
    let g = SimpleGraph::new(x + y, edges)?;
    let mut part = vec![Part::X; x];
    part.extend(std::iter::repeat(Part::Y).take(y));
    Ok((g, Bipartition::new(part)))
}

/// Subgraph induced by `keep`; vertex ids are re-indexed.
/// Returns the subgraph and the map from new ids to old ids.
pub fn induced_subgraph(
    g: &SimpleGraph,
    keep: &[usize],
) -> Result<(SimpleGraph, Vec<usize>), GraphError> {
    let mut sorted: Vec<usize> = keep.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if let Some(&v) = sorted.iter().find(|&&v| v >= g.vertex_count()) {
        return Err(GraphError::VertexOutOfRange(v, g.vertex_count()));
    }
    let mut new_of = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in sorted.iter().enumerate() {
        new_of[v] = i;
    }
    let edges = g
        .edges()
        .iter()
        .filter(|&&(a, b)| new_of[a] != usize::MAX && new_of[b] != usize::MAX)
        .map(|&(a, b)| (new_of[a], new_of[b]));
    let sub = SimpleGraph::new(sorted.len(), edges)?;
    Ok((sub, sorted))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_bipartite_sizes() {
        for (x, y, m) in [(2, 3, 6), (3, 6, 18), (3, 7, 21)] {
            let (g, bip) = complete_bipartite(x, y).unwrap();
            assert_eq!(g.edge_count(), m);
            bip.validate(&g).unwrap();
            assert_eq!(bip.x_size(), x);
            assert_eq!(bip.y_size(), y);
        }
        assert!(complete_bipartite(0, 3).is_err());
    }

    #[test]
    fn induced_subgraph_cases() {
        // K4, keep 3 vertices -> K3.
        let k4 = SimpleGraph::new(4, (0..4).flat_map(|a| (a + 1..4).map(move |b| (a, b))))
            .unwrap();
        let (k3, map) = induced_subgraph(&k4, &[0, 1, 3]).unwrap();
        assert_eq!(k3.edge_count(), 3);
        assert_eq!(map, vec![0, 1, 3]);

        // identity case
        let (same, _) = induced_subgraph(&k4, &[0, 1, 2, 3]).unwrap();
        assert_eq!(same, k4);

        // K_{3,3}, keep one part -> edgeless
        let (k33, bip) = complete_bipartite(3, 3).unwrap();
        let (part, _) = induced_subgraph(&k33, &bip.x_vertices()).unwrap();
        assert_eq!(part.edge_count(), 0);
        assert_eq!(part.vertex_count(), 3);

        assert!(induced_subgraph(&k4, &[9]).is_err());
    }

    #[test]
    fn rejects_loops_and_duplicates() {
        assert_eq!(
            SimpleGraph::new(2, vec![(0, 0)]).unwrap_err(),
            GraphError::LoopEdge(0)
        );
        assert_eq!(
            SimpleGraph::new(2, vec![(0, 1), (1, 0)]).unwrap_err(),
            GraphError::DuplicateEdge(0, 1)
        );
        // multigraph accepts parallels but not loops
        assert!(Multigraph::new(2, vec![(0, 1), (1, 0)]).is_ok());
        assert!(Multigraph::new(2, vec![(1, 1)]).is_err());
    }

    #[test]
    fn bipartite_coloring() {
        let (k33, _) = complete_bipartite(3, 3).unwrap();
        assert!(k33.to_multigraph().bipartite_coloring().is_some());
        let k3 = SimpleGraph::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(k3.to_multigraph().bipartite_coloring().is_none());
    }
}
