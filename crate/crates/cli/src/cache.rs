//! Append-only result cache. One record per line, tab-separated:
//! canonical graph key, question, verdict, witness path, budget,
//! timestamp. A re-query with the same key, question, and budget
//! replays the recorded verdict without searching.

use std::io::Write;
use std::path::Path;

use onepw_core::graph::{Bipartition, SimpleGraph};
use onepw_core::search::SearchBudget;

/// Canonical, isomorphism-invariant key: the minimum edge-code list
/// over all vertex permutations (part-preserving when a bipartition is
/// given). Falls back to the labeled form on graphs too large to
/// canonicalize exactly.
pub fn graph_key(g: &SimpleGraph, bip: Option<&Bipartition>) -> String {
    let n = g.vertex_count();
    // normalize so X vertices occupy 0..x; perms must respect the split
    let (order, x) = match bip {
        Some(b) => {
            let mut o = b.x_vertices();
            o.extend(b.y_vertices());
            let x = b.x_size();
            (o, x)
        }
        None => ((0..n).collect(), 0),
    };
    let mut norm = vec![0usize; n];
    for (new, &old) in order.iter().enumerate() {
        norm[old] = new;
    }
    let codes = |perm: &[usize]| -> Vec<usize> {
        let mut cs: Vec<usize> = g
            .edges()
            .iter()
            .map(|&(a, b)| {
                let (p, q) = (perm[norm[a]].min(perm[norm[b]]), perm[norm[a]].max(perm[norm[b]]));
                p * n + q
            })
            .collect();
        cs.sort_unstable();
        cs
    };
    let mut best: Option<Vec<usize>> = None;
    if n <= 9 {
        let mut perm: Vec<usize> = (0..n).collect();
        permute_with(&mut perm, 0, &mut |p| {
            if bip.is_some() && (0..n).any(|v| (p[v] < x) != (v < x)) {
                return;
            }
            let c = codes(p);
            if best.as_ref().map(|b| c < *b).unwrap_or(true) {
                best = Some(c);
            }
        });
    }
    let c = best.unwrap_or_else(|| codes(&(0..n).collect::<Vec<_>>()));
    let parts = match bip {
        Some(b) => format!(";x{}y{}", b.x_size(), b.y_size()),
        None => String::new(),
    };
    format!(
        "n{n}{parts};{}",
        c.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
    )
}

fn permute_with(perm: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == perm.len() {
        f(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute_with(perm, k + 1, f);
        perm.swap(k, i);
    }
}

pub fn budget_key(b: &SearchBudget, jobs: usize) -> String {
    format!(
        "k{},n{},t{}s,sym{},j{}",
        b.max_crossings,
        b.max_nodes,
        b.time_limit.as_secs(),
        if b.use_symmetry { 1 } else { 0 },
        jobs
    )
}

/// Recorded verdict line for (key, question, budget), if any.
pub fn lookup(path: &Path, key: &str, question: &str, budget: &str) -> Option<String> {
    let text = std::fs::read_to_string(path).ok()?;
    for line in text.lines() {
        let f: Vec<&str> = line.split('\t').collect();
        if f.len() == 6 && f[0] == key && f[1] == question && f[4] == budget {
            return Some(f[2].to_string());
        }
    }
    None
}

pub fn append(
    path: &Path,
    key: &str,
    question: &str,
    verdict: &str,
    witness: &str,
    budget: &str,
) -> std::io::Result<()> {
    let ts = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let mut file = std::fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)?;
    writeln!(file, "{key}\t{question}\t{verdict}\t{witness}\t{budget}\t{ts}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use onepw_core::graph::{complete_bipartite, Part};

    #[test]
    fn key_is_isomorphism_invariant() {
        let (g, bip) = complete_bipartite(2, 3).unwrap();
        // same graph with parts laid out differently: Y first
        let edges = vec![(3, 0), (3, 1), (3, 2), (4, 0), (4, 1), (4, 2)];
        let g2 = SimpleGraph::new(5, edges).unwrap();
        let part = (0..5)
            .map(|v| if v >= 3 { Part::X } else { Part::Y })
            .collect();
        let bip2 = Bipartition::new(part);
        assert_eq!(graph_key(&g, Some(&bip)), graph_key(&g2, Some(&bip2)));
    }

    #[test]
    fn round_trip_through_file() {
        let dir = std::env::temp_dir().join(format!("onepw-cache-test-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("cache.txt");
        append(&path, "key", "1planar", "YES crossings=1", "w.drawing", "b").unwrap();
        assert_eq!(
            lookup(&path, "key", "1planar", "b").as_deref(),
            Some("YES crossings=1")
        );
        assert!(lookup(&path, "key", "mincross", "b").is_none());
        assert!(lookup(&path, "key", "1planar", "other").is_none());
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
