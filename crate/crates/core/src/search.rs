//! Exhaustive decision procedures: 1-planarity, minimum crossing
//! counts, disc-constrained drawings, and small extremal maximization.
//!
//! All searches enumerate sets of vertex-disjoint crossing pairs in
//! increasing cardinality; with symmetry pruning on, only the
//! lexicographically smallest pairing of each automorphism orbit is
//! expanded (orderly generation: the prefix of a lex-minimal set is
//! lex-minimal, so pruned nodes have no minimal descendants).

use std::collections::{BTreeSet, HashMap};
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};
use thiserror::Error;

use crate::bounds::{karpov_bound, main_bound};
use crate::drawing::{planarize_from, DrawingError, OnePlanarDrawing};
use crate::graph::{Bipartition, Part, SimpleGraph};
use crate::planarity::{genus0_face_target, permute, spherical_rotation_exists};

#[derive(Debug, Clone)]
pub struct SearchBudget {
    pub max_crossings: usize,
    pub max_nodes: u64,
    pub time_limit: Duration,
    pub use_symmetry: bool,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_crossings: 8,
            max_nodes: 200_000_000,
            time_limit: Duration::from_secs(3600),
            use_symmetry: true,
        }
    }
}

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("budget limits must be positive")]
    BadBudget,
    #[error(transparent)]
    Drawing(#[from] DrawingError),
}

/// Outcome of a crossing search. `exhausted` means the verdict is
/// definitive; otherwise the budget ran out first.
#[derive(Debug, Clone)]
pub struct Decision {
    pub drawing: Option<OnePlanarDrawing>,
    pub crossings: Option<usize>,
    pub exhausted: bool,
    pub provenance: Vec<String>,
    pub nodes: u64,
}

struct Meter<'a> {
    nodes: u64,
    max_nodes: u64,
    deadline: Instant,
    tripped: bool,
    stop: Option<&'a AtomicBool>,
}

impl<'a> Meter<'a> {
    fn new(budget: &SearchBudget, stop: Option<&'a AtomicBool>) -> Self {
        Meter {
            nodes: 0,
            max_nodes: budget.max_nodes,
            deadline: Instant::now() + budget.time_limit,
            tripped: false,
            stop,
        }
    }

    /// counts a node; true when the search must stop.
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            self.tripped = true;
        }
        if self.nodes % 1024 == 0 {
            if Instant::now() > self.deadline {
                self.tripped = true;
            }
            if let Some(s) = self.stop {
                if s.load(Ordering::Relaxed) {
                    return true;
                }
            }
        }
        self.tripped
    }
}

/// All automorphisms of g (part-preserving when a bipartition is
/// given), as vertex permutations; truncated at `cap` (using a subset
/// only weakens pruning, never correctness).
pub fn graph_automorphisms(
    g: &SimpleGraph,
    bip: Option<&Bipartition>,
    cap: usize,
) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut adj: Vec<u64> = vec![0; n];
    if n > 64 {
        return vec![(0..n).collect()];
    }
    for &(a, b) in g.edges() {
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
    }
    let deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut out = Vec::new();
    let mut img = vec![usize::MAX; n];
    let mut used: u64 = 0;
    fn rec(
        v: usize,
        n: usize,
        adj: &[u64],
        deg: &[usize],
        bip: Option<&Bipartition>,
        img: &mut Vec<usize>,
        used: &mut u64,
        out: &mut Vec<Vec<usize>>,
        cap: usize,
    ) {
        if out.len() >= cap {
            return;
        }
        if v == n {
            out.push(img.clone());
            return;
        }
        for w in 0..n {
            if *used >> w & 1 == 1 || deg[w] != deg[v] {
                continue;
            }
            if let Some(b) = bip {
                if b.part_of(v) != b.part_of(w) {
                    continue;
                }
            }
            // adjacency to already-mapped vertices must be preserved
            let mut ok = true;
            for u in 0..v {
                if (adj[v] >> u & 1) != (adj[w] >> img[u] & 1) {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            img[v] = w;
            *used |= 1 << w;
            rec(v + 1, n, adj, deg, bip, img, used, out, cap);
            *used &= !(1 << w);
        }
        img[v] = usize::MAX;
    }
    rec(0, n, &adj, &deg, bip, &mut img, &mut used, &mut out, cap);
    out
}

/// Candidate crossing pairs: unordered pairs of edges sharing no
/// endpoint, sorted by (smaller, larger) edge id.
fn disjoint_edge_pairs(g: &SimpleGraph) -> Vec<(usize, usize)> {
    let edges = g.edges();
    let mut out = Vec::new();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let (a, b) = edges[i];
            let (c, d) = edges[j];
            if a != c && a != d && b != c && b != d {
                out.push((i, j));
            }
        }
    }
    out
}

/// Action of each automorphism on pair indices, for orbit pruning.
fn pair_permutations(
    g: &SimpleGraph,
    auts: &[Vec<usize>],
    pairs: &[(usize, usize)],
) -> Vec<Vec<u32>> {
    let edges = g.edges();
    let mut edge_idx: HashMap<(usize, usize), usize> = HashMap::new();
    for (i, &(a, b)) in edges.iter().enumerate() {
        edge_idx.insert((a, b), i);
    }
    let mut pair_idx: HashMap<(usize, usize), usize> = HashMap::new();
    for (i, &p) in pairs.iter().enumerate() {
        pair_idx.insert(p, i);
    }
    let mut out = Vec::with_capacity(auts.len());
    for perm in auts {
        let edge_perm: Vec<usize> = edges
            .iter()
            .map(|&(a, b)| {
                let (p, q) = (perm[a], perm[b]);
                edge_idx[&(p.min(q), p.max(q))]
            })
            .collect();
        let mapped: Vec<u32> = pairs
            .iter()
            .map(|&(i, j)| {
                let (p, q) = (edge_perm[i], edge_perm[j]);
                pair_idx[&(p.min(q), p.max(q))] as u32
            })
            .collect();
        // skip the identity action
        if mapped.iter().enumerate().all(|(i, &m)| m as usize == i) {
            continue;
        }
        out.push(mapped);
    }
    out
}

/// true iff no automorphism maps the chosen pair set to a
/// lexicographically smaller sorted set.
fn pairing_is_minimal(chosen: &[u32], pair_perms: &[Vec<u32>]) -> bool {
    let k = chosen.len();
    let mut buf = [0u32; 32];
    'perm: for pp in pair_perms {
        for (i, &c) in chosen.iter().enumerate() {
            buf[i] = pp[c as usize];
        }
        let img = &mut buf[..k];
        img.sort_unstable();
        for i in 0..k {
            if img[i] < chosen[i] {
                return false;
            }
            if img[i] > chosen[i] {
                continue 'perm;
            }
        }
    }
    true
}

struct PairSearch<'a> {
    g: &'a SimpleGraph,
    bip: Option<&'a Bipartition>,
    rim: Option<&'a [usize]>,
    pairs: Vec<(usize, usize)>,
    pair_edge_mask: Vec<u64>,
    pair_perms: Vec<Vec<u32>>,
    /// (worker count, residue) filter over the first chosen pair
    shard: Option<(usize, usize)>,
}

impl<'a> PairSearch<'a> {
    fn attempt(&self, chosen: &[u32]) -> Result<Option<OnePlanarDrawing>, SearchError> {
        let tuples: Vec<(usize, usize, usize, usize)> = chosen
            .iter()
            .map(|&c| {
                let (i, j) = self.pairs[c as usize];
                let (a, b) = self.g.edges()[i];
                let (cc, dd) = self.g.edges()[j];
                (a, b, cc, dd)
            })
            .collect();
        Ok(planarize_from(self.g, self.bip, &tuples, self.rim)?)
    }

    fn dfs(
        &self,
        chosen: &mut Vec<u32>,
        used: u64,
        start: usize,
        k: usize,
        meter: &mut Meter,
    ) -> Result<Option<OnePlanarDrawing>, SearchError> {
        if chosen.len() == k {
            return self.attempt(chosen);
        }
        for c in start..self.pairs.len() {
            if let Some((jobs, residue)) = self.shard {
                if chosen.is_empty() && c % jobs != residue {
                    continue;
                }
            }
            if used & self.pair_edge_mask[c] != 0 {
                continue;
            }
            if meter.tick() {
                return Ok(None);
            }
            chosen.push(c as u32);
            let ok = self.pair_perms.is_empty() || pairing_is_minimal(chosen, &self.pair_perms);
            if ok {
                if let Some(found) =
                    self.dfs(chosen, used | self.pair_edge_mask[c], c + 1, k, meter)?
                {
                    return Ok(Some(found));
                }
            }
            chosen.pop();
            if meter.tripped {
                return Ok(None);
            }
        }
        Ok(None)
    }
}

fn bipartite_sizes(g: &SimpleGraph, bip: Option<&Bipartition>) -> Option<(usize, usize)> {
    let b = bip?;
    if b.validate(g).is_err() {
        return None;
    }
    let (x, y) = (b.x_size(), b.y_size());
    Some((x.min(y), x.max(y)))
}

fn engine(
    g: &SimpleGraph,
    bip: Option<&Bipartition>,
    rim: Option<&[usize]>,
    budget: &SearchBudget,
    shard: Option<(usize, usize)>,
    stop: Option<&AtomicBool>,
) -> Result<Decision, SearchError> {
    if budget.max_crossings == 0 && budget.max_nodes == 0 {
        return Err(SearchError::BadBudget);
    }
    let n = g.vertex_count();
    let m = g.edge_count();
    if m > 64 {
        return Err(SearchError::TooLarge(format!("{m} edges")));
    }
    let mut provenance = Vec::new();
    if let Some((x, _)) = bipartite_sizes(g, bip) {
        if x >= 2 && n >= 2 * x {
            let bound = main_bound(n, x).expect("preconditions checked");
            if m > bound {
                provenance.push(format!("screen: {m} > 2n+4x-12 = {bound}"));
                return Ok(Decision {
                    drawing: None,
                    crossings: None,
                    exhausted: true,
                    provenance,
                    nodes: 0,
                });
            }
        }
    }
    if n >= 4 {
        let bound = karpov_bound(n).expect("n >= 4");
        if m > bound {
            provenance.push(format!("screen: {m} > 1-planar bound {bound}"));
            return Ok(Decision {
                drawing: None,
                crossings: None,
                exhausted: true,
                provenance,
                nodes: 0,
            });
        }
    }
    // deleting one edge per crossing leaves a planar subgraph
    let k_min = if bipartite_sizes(g, bip).is_some() && n >= 3 {
        m.saturating_sub(2 * n - 4)
    } else if n >= 3 {
        m.saturating_sub(3 * n - 6)
    } else {
        0
    };
    if k_min > 0 {
        provenance.push(format!("screen: at least {k_min} crossings required"));
    }
    let k_ceiling = m / 2;
    let k_cap = budget.max_crossings.min(k_ceiling);

    let pairs = disjoint_edge_pairs(g);
    let pair_edge_mask: Vec<u64> = pairs.iter().map(|&(i, j)| (1 << i) | (1 << j)).collect();
    let pair_perms = if budget.use_symmetry {
        let auts = graph_automorphisms(g, bip, 100_000);
        provenance.push(format!("symmetry: {} automorphisms", auts.len()));
        pair_permutations(g, &auts, &pairs)
    } else {
        Vec::new()
    };
    let search = PairSearch {
        g,
        bip,
        rim,
        pairs,
        pair_edge_mask,
        pair_perms,
        shard,
    };
    let mut meter = Meter::new(budget, stop);
    for k in k_min..=k_cap {
        if k == 0 {
            let run_k0 = shard.map(|(_, r)| r == 0).unwrap_or(true);
            if run_k0 {
                if let Some(d) = search.attempt(&[])? {
                    return Ok(Decision {
                        drawing: Some(d),
                        crossings: Some(0),
                        exhausted: true,
                        provenance,
                        nodes: meter.nodes,
                    });
                }
            }
            continue;
        }
        let mut chosen = Vec::with_capacity(k);
        if let Some(d) = search.dfs(&mut chosen, 0, 0, k, &mut meter)? {
            return Ok(Decision {
                drawing: Some(d),
                crossings: Some(k),
                exhausted: true,
                provenance,
                nodes: meter.nodes,
            });
        }
        if meter.tripped {
            provenance.push(format!("budget exhausted at {k} crossings"));
            return Ok(Decision {
                drawing: None,
                crossings: None,
                exhausted: false,
                provenance,
                nodes: meter.nodes,
            });
        }
    }
    // definitive only if the whole pairing space was covered
    let covered_all = k_cap == k_ceiling || k_min > k_ceiling;
    if !covered_all {
        provenance.push(format!("stopped at crossing cap {k_cap}"));
    }
    Ok(Decision {
        drawing: None,
        crossings: None,
        exhausted: covered_all,
        provenance,
        nodes: meter.nodes,
    })
}

/// Is g 1-planar? Returns a drawing when one exists within budget.
pub fn decide_one_planar(
    g: &SimpleGraph,
    bip: Option<&Bipartition>,
    budget: &SearchBudget,
) -> Result<Decision, SearchError> {
    engine(g, bip, None, budget, None, None)
}

/// Smallest crossing count over 1-planar drawings of g; the returned
/// drawing is crossing-minimal.
pub fn min_crossings_one_planar(
    g: &SimpleGraph,
    bip: Option<&Bipartition>,
    budget: &SearchBudget,
) -> Result<Decision, SearchError> {
    engine(g, bip, None, budget, None, None)
}

/// Minimum crossings over 1-planar drawings with all X-vertices on the
/// outer boundary.
pub fn disc_min_crossings(
    g: &SimpleGraph,
    bip: &Bipartition,
    budget: &SearchBudget,
) -> Result<Decision, SearchError> {
    let rim = bip.x_vertices();
    engine(g, Some(bip), Some(&rim), budget, None, None)
}

/// Parallel variant: workers split the top-level branch (first chosen
/// pair) round-robin. Witness choice is nondeterministic across runs.
pub fn min_crossings_parallel(
    g: &SimpleGraph,
    bip: Option<&Bipartition>,
    budget: &SearchBudget,
    jobs: usize,
) -> Result<Decision, SearchError> {
    if jobs <= 1 {
        return engine(g, bip, None, budget, None, None);
    }
    let stop = AtomicBool::new(false);
    let results: Vec<Result<Decision, SearchError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs)
            .map(|r| {
                let stop = &stop;
                scope.spawn(move || {
                    let d = engine(g, bip, None, budget, Some((jobs, r)), Some(stop));
                    if let Ok(dec) = &d {
                        if dec.drawing.is_some() {
                            stop.store(true, Ordering::Relaxed);
                        }
                    }
                    d
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut best: Option<Decision> = None;
    let mut exhausted = true;
    let mut nodes = 0;
    for r in results {
        let d = r?;
        nodes += d.nodes;
        exhausted &= d.exhausted || d.drawing.is_some();
        if d.drawing.is_some()
            && best
                .as_ref()
                .map(|b| b.crossings.is_none() || d.crossings < b.crossings)
                .unwrap_or(true)
        {
            best = Some(d);
        }
    }
    Ok(match best {
        Some(mut d) => {
            d.nodes = nodes;
            d
        }
        None => Decision {
            drawing: None,
            crossings: None,
            exhausted,
            provenance: vec![format!("parallel search, {jobs} workers")],
            nodes,
        },
    })
}

// ---------------------------------------------------------------------------
// enumeration of bipartite graphs up to part-preserving isomorphism

/// true iff some row/column relabeling maps the cell set to a strictly
/// smaller sorted code sequence (codes r·stride + c). Branch-and-bound;
/// gives up (answering "no") past the node cap, which only admits
/// duplicates, never loses a class.
fn grid_smaller_image_exists(cells: &[(usize, usize)], stride: usize, cap: &mut i64) -> bool {
    let nrows = cells.iter().map(|&(r, _)| r + 1).max().unwrap_or(0);
    // target cells grouped by row (already sorted row-major)
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); nrows];
    for &(r, c) in cells {
        rows[r].push(c);
    }
    // original rows' column lists
    let orig = rows.clone();

    struct St<'s> {
        orig: &'s [Vec<usize>],
        target: &'s [Vec<usize>],
    }

    fn rec(
        st: &St,
        t: usize,
        rows_used: u64,
        col_img: &mut Vec<Option<usize>>,
        next_col: usize,
        cap: &mut i64,
    ) -> bool {
        *cap -= 1;
        if *cap < 0 {
            return false;
        }
        if t == st.target.len() {
            return false; // full equality: an automorphism, not smaller
        }
        let tgt = &st.target[t];
        for rho in 0..st.orig.len() {
            if rows_used >> rho & 1 == 1 {
                continue;
            }
            // this row's image: assigned columns keep their labels,
            // unassigned ones take the next fresh labels
            let mut assigned: Vec<usize> = Vec::new();
            let mut fresh_cols: Vec<usize> = Vec::new();
            for &c in &st.orig[rho] {
                match col_img[c] {
                    Some(i) => assigned.push(i),
                    None => fresh_cols.push(c),
                }
            }
            let mut block = assigned.clone();
            for u in 0..fresh_cols.len() {
                block.push(next_col + u);
            }
            block.sort_unstable();
            // compare to the target row, shorter-block-in-same-row wins
            let cmp = {
                let mut i = 0;
                loop {
                    match (block.get(i), tgt.get(i)) {
                        (Some(a), Some(b)) if a == b => i += 1,
                        (Some(a), Some(b)) => break a.cmp(b),
                        (Some(_), None) => break std::cmp::Ordering::Less,
                        (None, Some(_)) => break std::cmp::Ordering::Greater,
                        (None, None) => break std::cmp::Ordering::Equal,
                    }
                }
            };
            match cmp {
                std::cmp::Ordering::Less => return true,
                std::cmp::Ordering::Greater => continue,
                std::cmp::Ordering::Equal => {}
            }
            // branch over which fresh column takes which new label
            let fc = fresh_cols.len();
            let mut order: Vec<usize> = (0..fc).collect();
            let found = branch_fresh(
                st,
                t,
                rho,
                rows_used,
                col_img,
                next_col,
                &fresh_cols,
                &mut order,
                0,
                cap,
            );
            if found {
                return true;
            }
            if *cap < 0 {
                return false;
            }
        }
        false
    }

    #[allow(clippy::too_many_arguments)]
    fn branch_fresh(
        st: &St,
        t: usize,
        rho: usize,
        rows_used: u64,
        col_img: &mut Vec<Option<usize>>,
        next_col: usize,
        fresh_cols: &[usize],
        order: &mut [usize],
        pos: usize,
        cap: &mut i64,
    ) -> bool {
        if pos == fresh_cols.len() {
            for (i, &oi) in order.iter().enumerate() {
                col_img[fresh_cols[oi]] = Some(next_col + i);
            }
            let found = rec(
                st,
                t + 1,
                rows_used | 1 << rho,
                col_img,
                next_col + fresh_cols.len(),
                cap,
            );
            for &c in fresh_cols {
                col_img[c] = None;
            }
            return found;
        }
        for i in pos..order.len() {
            order.swap(pos, i);
            if branch_fresh(
                st, t, rho, rows_used, col_img, next_col, fresh_cols, order, pos + 1, cap,
            ) {
                return true;
            }
            order.swap(pos, i);
            if *cap < 0 {
                return false;
            }
        }
        false
    }

    let st = St {
        orig: &orig,
        target: &rows,
    };
    let mut col_img: Vec<Option<usize>> = vec![None; stride];
    rec(&st, 0, 0, &mut col_img, 0, cap)
}

/// Orderly generation of cell subsets of a rows×cols grid up to
/// row/column permutation. Calls `sink` with every canonical set of
/// size in 1..=max_size; rows and columns appear in first-use order.
fn enumerate_grid_subsets(
    rows: usize,
    cols: usize,
    max_size: usize,
    sink: &mut impl FnMut(&[(usize, usize)]),
) {
    fn rec(
        rows: usize,
        cols: usize,
        max_size: usize,
        cells: &mut Vec<(usize, usize)>,
        sink: &mut impl FnMut(&[(usize, usize)]),
    ) {
        sink(cells);
        if cells.len() == max_size {
            return;
        }
        let last_code = cells
            .last()
            .map(|&(r, c)| r * cols + c + 1)
            .unwrap_or(0);
        let max_r = cells.iter().map(|&(r, _)| r).max();
        let max_c = cells.iter().map(|&(_, c)| c).max();
        for code in last_code..rows * cols {
            let (r, c) = (code / cols, code % cols);
            if r > max_r.map(|x| x + 1).unwrap_or(0) || c > max_c.map(|x| x + 1).unwrap_or(0) {
                continue;
            }
            cells.push((r, c));
            let mut cap = 400_000i64;
            if !grid_smaller_image_exists(cells, cols, &mut cap) {
                rec(rows, cols, max_size, cells, sink);
            }
            cells.pop();
        }
    }
    let mut cells = Vec::new();
    rec(rows, cols, max_size, &mut cells, sink);
}

/// Canonical nonempty cell subsets of a rows×cols grid, one per
/// row/column-permutation orbit; rows and columns appear packed in
/// first-use order, so a set using r rows and c cols stands for the
/// bipartite graphs with parts (r, c) plus any isolated padding.
pub fn enumerate_grid_graphs(rows: usize, cols: usize) -> Vec<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    enumerate_grid_subsets(rows, cols, rows * cols, &mut |cells| {
        if !cells.is_empty() {
            out.push(cells.to_vec());
        }
    });
    out
}

/// Bipartite graphs with at most `max_edges` edges and no isolated
/// vertices, one representative per part-preserving isomorphism class
/// (transposed orientations both appear). X is the row part.
pub fn enumerate_bipartite_graphs(max_edges: usize) -> Vec<(SimpleGraph, Bipartition)> {
    let mut out = Vec::new();
    enumerate_grid_subsets(max_edges, max_edges, max_edges, &mut |cells| {
        if cells.is_empty() {
            return;
        }
        let a = cells.iter().map(|&(r, _)| r + 1).max().unwrap();
        let b = cells.iter().map(|&(_, c)| c + 1).max().unwrap();
        // first-use order guarantees no empty row/column below the max
        let n = a + b;
        let edges: Vec<(usize, usize)> = cells.iter().map(|&(r, c)| (r, a + c)).collect();
        let g = SimpleGraph::new(n, edges).expect("grid cells are simple");
        let part = (0..n)
            .map(|v| if v < a { Part::X } else { Part::Y })
            .collect();
        let bip = Bipartition::new(part);
        out.push((g, bip));
    });
    out
}

/// Maximum edge count over bipartite 1-planar graphs with parts of
/// sizes exactly (x, y).
#[derive(Debug, Clone)]
pub struct ExtremalResult {
    pub x: usize,
    pub y: usize,
    pub max_edges: usize,
    pub witness: Option<OnePlanarDrawing>,
    pub exhausted: bool,
}

/// Descends from the complete graph K_{x,y}: for each edge count m,
/// tries every m-edge subset up to part-preserving isomorphism until a
/// 1-planar one is found.
pub fn extremal_search(
    x: usize,
    y: usize,
    budget: &SearchBudget,
) -> Result<ExtremalResult, SearchError> {
    if x < 2 || y < x {
        return Err(SearchError::TooLarge(format!(
            "need 2 <= x <= y, got ({x}, {y})"
        )));
    }
    if x * y > 64 {
        return Err(SearchError::TooLarge(format!("{} cells", x * y)));
    }
    let deadline = Instant::now() + budget.time_limit;
    let n = x + y;
    let mut exhausted = true;
    for m in (0..=x * y).rev() {
        if let Ok(bound) = main_bound(n, x) {
            if m > bound {
                continue; // definitively infeasible edge count
            }
        }
        // enumerate complements when m is large: orbits correspond
        let c = x * y - m;
        let use_complement = c <= m;
        let size = if use_complement { c } else { m };
        let mut reps: Vec<Vec<(usize, usize)>> = Vec::new();
        enumerate_grid_subsets(x, y, size, &mut |cells| {
            if cells.len() == size {
                reps.push(cells.to_vec());
            }
        });
        if size == 0 {
            reps.push(Vec::new());
        }
        for rep in reps {
            if Instant::now() > deadline {
                return Ok(ExtremalResult {
                    x,
                    y,
                    max_edges: 0,
                    witness: None,
                    exhausted: false,
                });
            }
            let cellset: BTreeSet<(usize, usize)> = rep.iter().copied().collect();
            let edges: Vec<(usize, usize)> = if use_complement {
                (0..x)
                    .flat_map(|r| (0..y).map(move |cc| (r, cc)))
                    .filter(|cell| !cellset.contains(cell))
                    .map(|(r, cc)| (r, x + cc))
                    .collect()
            } else {
                rep.iter().map(|&(r, cc)| (r, x + cc)).collect()
            };
            let g = SimpleGraph::new(n, edges).expect("subset of a complete bipartite graph");
            let part = (0..n)
                .map(|v| if v < x { Part::X } else { Part::Y })
                .collect();
            let bip = Bipartition::new(part);
            let mut sub = budget.clone();
            sub.time_limit = deadline.saturating_duration_since(Instant::now());
            let dec = engine(&g, Some(&bip), None, &sub, None, None)?;
            if let Some(d) = dec.drawing {
                return Ok(ExtremalResult {
                    x,
                    y,
                    max_edges: m,
                    witness: Some(d),
                    exhausted,
                });
            }
            if !dec.exhausted {
                exhausted = false;
            }
        }
    }
    Ok(ExtremalResult {
        x,
        y,
        max_edges: 0,
        witness: None,
        exhausted,
    })
}

// ---------------------------------------------------------------------------
// gadget-free oracle

/// Minimum crossings by direct rotation-system enumeration: for every
/// pairing, build the crossing-vertex graph and test whether some
/// rotation system alternating at every crossing vertex is spherical.
/// Independent of the gadget construction; testing only.
pub fn oracle_min_crossings(g: &SimpleGraph, max_k: usize) -> Result<Option<usize>, SearchError> {
    let m = g.edge_count();
    if m > 16 {
        return Err(SearchError::TooLarge(format!("{m} edges")));
    }
    let pairs = disjoint_edge_pairs(g);
    let masks: Vec<u64> = pairs.iter().map(|&(i, j)| (1 << i) | (1 << j)).collect();
    for k in 0..=max_k.min(m / 2) {
        let mut chosen: Vec<usize> = Vec::new();
        if pairing_rotations_feasible(g, &pairs, &masks, &mut chosen, 0, 0, k)? {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

fn pairing_rotations_feasible(
    g: &SimpleGraph,
    pairs: &[(usize, usize)],
    masks: &[u64],
    chosen: &mut Vec<usize>,
    start: usize,
    used: u64,
    k: usize,
) -> Result<bool, SearchError> {
    if chosen.len() == k {
        return alternating_rotation_exists(g, &chosen.iter().map(|&c| pairs[c]).collect::<Vec<_>>());
    }
    for c in start..pairs.len() {
        if used & masks[c] != 0 {
            continue;
        }
        chosen.push(c);
        if pairing_rotations_feasible(g, pairs, masks, chosen, c + 1, used | masks[c], k)? {
            return Ok(true);
        }
        chosen.pop();
    }
    Ok(false)
}

fn alternating_rotation_exists(
    g: &SimpleGraph,
    pairing: &[(usize, usize)],
) -> Result<bool, SearchError> {
    let n = g.vertex_count();
    let k = pairing.len();
    let crossed: BTreeSet<usize> = pairing.iter().flat_map(|&(i, j)| [i, j]).collect();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (i, &(a, b)) in g.edges().iter().enumerate() {
        if !crossed.contains(&i) {
            edges.push((a, b));
        }
    }
    // crossing vertex per pair, its four half-edges appended in order
    let mut red_edge_groups: Vec<[usize; 4]> = Vec::new();
    for (r, &(i, j)) in pairing.iter().enumerate() {
        let w = n + r;
        let (a, b) = g.edges()[i];
        let (c, d) = g.edges()[j];
        let base = edges.len();
        edges.push((a, w));
        edges.push((w, b));
        edges.push((c, w));
        edges.push((w, d));
        red_edge_groups.push([base, base + 1, base + 2, base + 3]);
    }
    let total = n + k;
    let mut star: Vec<Vec<usize>> = vec![Vec::new(); total];
    for (id, &(a, b)) in edges.iter().enumerate() {
        star[a].push(2 * id);
        star[b].push(2 * id + 1);
    }
    let mut work: f64 = 1.0;
    for (v, s) in star.iter().enumerate() {
        if v >= n {
            continue;
        }
        for t in 1..s.len() {
            work *= t as f64;
        }
    }
    work *= 2f64.powi(k as i32);
    if work > 2.0e8 {
        return Err(SearchError::TooLarge("rotation space".into()));
    }
    let mut perms: Vec<Vec<Vec<usize>>> = Vec::with_capacity(total);
    for (v, s) in star.iter().enumerate() {
        if v >= n {
            // alternate the two crossing edges: with darts (a, b, c, d)
            // at the crossing vertex, only a-c-b-d and a-d-b-c work
            let gids = red_edge_groups[v - n];
            let da = 2 * gids[0] + 1;
            let db = 2 * gids[1];
            let dc = 2 * gids[2] + 1;
            let dd = 2 * gids[3];
            perms.push(vec![vec![da, dc, db, dd], vec![da, dd, db, dc]]);
            continue;
        }
        if s.len() <= 2 {
            perms.push(vec![s.clone()]);
            continue;
        }
        let first = s[0];
        let rest: Vec<usize> = s[1..].to_vec();
        let mut all = Vec::new();
        permute(&rest, &mut Vec::new(), &mut |p| {
            let mut r = Vec::with_capacity(s.len());
            r.push(first);
            r.extend_from_slice(p);
            all.push(r);
        });
        perms.push(all);
    }
    let target = genus0_face_target(total, &edges);
    Ok(spherical_rotation_exists(edges.len(), target, &perms))
}

/// Empirical probe of the conjectured disc bound |E| ≤ 2|Y| + 5|X|/3 − 2
/// on instances with a feasible disc drawing. One line per sample.
pub fn probe_problem5(
    samples: &[(SimpleGraph, Bipartition)],
    budget: &SearchBudget,
) -> Vec<String> {
    let mut out = Vec::new();
    for (g, bip) in samples {
        let x = bip.x_size();
        let y = bip.y_size();
        let m = g.edge_count();
        match disc_min_crossings(g, bip, budget) {
            Ok(dec) => match dec.crossings {
                Some(k) => {
                    // 3m <= 6y + 5x - 6 in integers
                    let holds = 3 * m as i64 <= 6 * y as i64 + 5 * x as i64 - 6;
                    out.push(format!(
                        "x={x} y={y} m={m} k={k} {}",
                        if holds { "HOLDS" } else { "VIOLATED" }
                    ));
                }
                None => out.push(format!(
                    "x={x} y={y} m={m} {}",
                    if dec.exhausted { "infeasible" } else { "undecided" }
                )),
            },
            Err(e) => out.push(format!("x={x} y={y} m={m} error: {e}")),
        }
    }
    out
}
