//! Closed-form edge bounds for bipartite 1-planar graphs, checkers for
//! the two plane-graph counting lemmas, and the certificate chain that
//! replays the whole edge-bound derivation on a concrete drawing.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use num::rational::Ratio;
use thiserror::Error;

use crate::drawing::{validate_drawing, OnePlanarDrawing};
use crate::editor::{sub_embedding_with_residue, EditError, PlaneEditor};
use crate::embedding::{PlaneEmbedding, VertexLabel};
use crate::extension::{
    classify_cellular_3faces, extend, find_separating_2cycles, isqrt_ceil, ExtendError,
};
use crate::graph::Multigraph;

type Q = Ratio<i64>;

#[derive(Debug, Error)]
pub enum BoundsError {
    #[error("argument out of range: {0}")]
    Argument(String),
    #[error("graph is not simple")]
    NotSimple,
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("invalid drawing: {0}")]
    InvalidDrawing(String),
    #[error(transparent)]
    Extend(#[from] ExtendError),
    #[error(transparent)]
    Edit(#[from] EditError),
}

/// Edge bound for any 1-planar graph on n vertices: 3n−8 for even n
/// other than 6, else 3n−9.
pub fn karpov_bound(n: usize) -> Result<usize, BoundsError> {
    if n < 4 {
        return Err(BoundsError::Argument(format!("n = {n} < 4")));
    }
    if n % 2 == 0 && n != 6 {
        Ok(3 * n - 8)
    } else {
        Ok(3 * n - 9)
    }
}

/// Edge bound 2n + 6x − 16 for bipartite 1-planar graphs with smaller
/// part size x.
pub fn czap_bound(n: usize, x: usize) -> Result<usize, BoundsError> {
    if x < 2 || n < 2 * x {
        return Err(BoundsError::Argument(format!(
            "need 2 <= x and n >= 2x, got n = {n}, x = {x}"
        )));
    }
    Ok(2 * n + 6 * x - 16)
}

/// Edge bound 2n + 4x − 12 for bipartite 1-planar graphs with smaller
/// part size x.
pub fn main_bound(n: usize, x: usize) -> Result<usize, BoundsError> {
    if x < 2 || x > n - x {
        return Err(BoundsError::Argument(format!(
            "need 2 <= x <= n - x, got n = {n}, x = {x}"
        )));
    }
    Ok(2 * n + 4 * x - 12)
}

/// At least (x−2)(y−6) edges must be removed from K_{x,y} to make it
/// 1-planar.
pub fn removal_lower_bound(x: usize, y: usize) -> Result<usize, BoundsError> {
    if x < 2 || y < x {
        return Err(BoundsError::Argument(format!(
            "need 2 <= x <= y, got x = {x}, y = {y}"
        )));
    }
    let v = (x as i64 - 2) * (y as i64 - 6);
    Ok(v.max(0) as usize)
}

#[derive(Debug, Clone)]
pub struct LemmaVerdict {
    pub holds: bool,
    pub edges: usize,
    pub bound: Q,
    pub components: usize,
    pub tagged_faces: usize,
    /// vertex count used (non-isolated only when the variant is on).
    pub vertices_counted: usize,
}

fn strip_isolated(emb: &PlaneEmbedding) -> Result<PlaneEmbedding, BoundsError> {
    let keep: HashSet<usize> = (0..emb.vertex_count())
        .filter(|&v| emb.degree(v) > 0)
        .collect();
    if keep.len() == emb.vertex_count() {
        return Ok(emb.clone());
    }
    let snap = sub_embedding_with_residue(emb, &keep)?;
    Ok(snap.embedding)
}

fn simple_check(emb: &PlaneEmbedding) -> Result<(), BoundsError> {
    let mut seen = HashSet::new();
    for &(a, b) in emb.edges() {
        if a == b || !seen.insert((a.min(b), a.max(b))) {
            return Err(BoundsError::NotSimple);
        }
    }
    Ok(())
}

/// |E| ≤ 2|V| − 3 − c + t/2 for a simple plane graph with c components
/// and t cellular 3-faces. With `nonisolated_variant`, isolated
/// vertices are dropped before counting.
pub fn lemma7_check(
    emb: &PlaneEmbedding,
    nonisolated_variant: bool,
) -> Result<LemmaVerdict, BoundsError> {
    let emb = if nonisolated_variant {
        strip_isolated(emb)?
    } else {
        emb.clone()
    };
    simple_check(&emb)?;
    let v = emb.vertex_count();
    if v < 3 {
        return Err(BoundsError::Argument(format!("|V| = {v} < 3")));
    }
    let c = emb.components().len();
    let faces = emb.plane_faces();
    let t = faces
        .records
        .iter()
        .filter(|r| r.cellular && r.size == 3)
        .count();
    let bound = Q::new(2 * v as i64 - 3 - c as i64, 1) + Q::new(t as i64, 2);
    Ok(LemmaVerdict {
        holds: Q::from_integer(emb.edge_count() as i64) <= bound,
        edges: emb.edge_count(),
        bound,
        components: c,
        tagged_faces: t,
        vertices_counted: v,
    })
}

/// |E| ≤ 2|V| − 3 − c − t for a simple bipartite plane graph with t
/// cellular faces of size at least 6.
pub fn lemma8_check(
    emb: &PlaneEmbedding,
    nonisolated_variant: bool,
) -> Result<LemmaVerdict, BoundsError> {
    let emb = if nonisolated_variant {
        strip_isolated(emb)?
    } else {
        emb.clone()
    };
    simple_check(&emb)?;
    let g = Multigraph::new(emb.vertex_count(), emb.edges().to_vec())
        .map_err(|_| BoundsError::NotSimple)?;
    if g.bipartite_coloring().is_none() {
        return Err(BoundsError::NotBipartite);
    }
    let v = emb.vertex_count();
    if v < 3 {
        return Err(BoundsError::Argument(format!("|V| = {v} < 3")));
    }
    let c = emb.components().len();
    let faces = emb.plane_faces();
    let t = faces
        .records
        .iter()
        .filter(|r| r.cellular && r.size >= 6)
        .count();
    let bound = Q::from_integer(2 * v as i64 - 3 - c as i64 - t as i64);
    Ok(LemmaVerdict {
        holds: Q::from_integer(emb.edge_count() as i64) <= bound,
        edges: emb.edge_count(),
        bound,
        components: c,
        tagged_faces: t,
        vertices_counted: v,
    })
}

#[derive(Debug, Clone)]
pub struct CertCheck {
    pub name: String,
    pub lhs: Q,
    pub rhs: Q,
    /// "=" or "<="
    pub relation: &'static str,
    pub ok: bool,
}

impl CertCheck {
    fn le(name: impl Into<String>, lhs: Q, rhs: Q) -> Self {
        CertCheck {
            name: name.into(),
            lhs,
            rhs,
            relation: "<=",
            ok: lhs <= rhs,
        }
    }

    fn eq(name: impl Into<String>, lhs: Q, rhs: Q) -> Self {
        CertCheck {
            name: name.into(),
            lhs,
            rhs,
            relation: "=",
            ok: lhs == rhs,
        }
    }
}

/// The replayed quantity chain of the main edge bound: every number is
/// recomputed from the drawing, every inequality evaluated exactly.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub quantities: Vec<(String, String)>,
    pub checks: Vec<CertCheck>,
    pub failed_hypothesis: Option<String>,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.failed_hypothesis.is_none() && self.checks.iter().all(|c| c.ok)
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.quantities {
            out.push_str(&format!("{k}={v}\n"));
        }
        if let Some(h) = &self.failed_hypothesis {
            out.push_str(&format!("hypothesis-failed={h}\n"));
            return out;
        }
        for c in &self.checks {
            out.push_str(&format!(
                "{}: {}{}{} {}\n",
                c.name,
                c.lhs,
                c.relation,
                c.rhs,
                if c.ok { "PASS" } else { "FAIL" }
            ));
        }
        out
    }
}

fn q(v: usize) -> Q {
    Q::from_integer(v as i64)
}

/// Replays the certificate chain on a valid bipartite drawing.
/// Hypotheses (checked in order): no separating 2-cycle among the added
/// black edges; every cellular 3-face interior holds 0, 1 or 3
/// crossings. On hypothesis failure the certificate names it and skips
/// the downstream checks.
pub fn certify(d: &OnePlanarDrawing) -> Result<Certificate, BoundsError> {
    let rep = validate_drawing(d);
    if !rep.is_valid() {
        return Err(BoundsError::InvalidDrawing(rep.violations.join("; ")));
    }
    let bundle = extend(d)?;
    let bip = &bundle.bipartition;
    let n = d.graph.vertex_count();
    let m_g = d.graph.edge_count();
    let x = bip.x_size();
    let y = bip.y_size();
    let k = d.crossing_count();
    let eh = bundle.h_edge_count();
    let ehp = bundle.h_prime_edge_count();
    let a = bundle.a_count();

    let mut quantities: Vec<(String, String)> = vec![
        ("V".into(), n.to_string()),
        ("E".into(), m_g.to_string()),
        ("x".into(), x.to_string()),
        ("y".into(), y.to_string()),
        ("W".into(), k.to_string()),
        ("EH".into(), eh.to_string()),
        ("EHp".into(), ehp.to_string()),
        ("A".into(), a.to_string()),
    ];

    if !find_separating_2cycles(&bundle).is_empty() {
        return Ok(Certificate {
            quantities,
            checks: Vec::new(),
            failed_hypothesis: Some("separating-2-cycle".into()),
        });
    }

    let (tris, counts) = classify_cellular_3faces(&bundle);
    quantities.push(("t".into(), counts.t.to_string()));
    quantities.push(("t0".into(), counts.t0.to_string()));
    quantities.push(("t1".into(), counts.t1.to_string()));
    quantities.push(("t3".into(), counts.t3.to_string()));
    if !counts.anomalies.is_empty() {
        return Ok(Certificate {
            quantities,
            checks: Vec::new(),
            failed_hypothesis: Some("triangle-interior-crossings".into()),
        });
    }

    let (t, t0, t1, t3) = (counts.t, counts.t0, counts.t1, counts.t3);
    let sum_e: usize = tris.iter().map(|r| r.interior_edges).sum();
    let sum_y: usize = tris.iter().map(|r| r.whites.len()).sum();
    for (i, r) in tris.iter().enumerate() {
        quantities.push((
            format!("tri{i}"),
            format!("j={} y={} e={}", r.reds.len(), r.whites.len(), r.interior_edges),
        ));
    }

    // the added black edges of H' that bound a cellular 3-face
    let dxw_id_of_slot = |slot: usize| bundle.dxw.edge_map[slot].expect("alive in dxw");
    let mut hp_slot_of_id: BTreeMap<usize, usize> = BTreeMap::new();
    for &slot in bundle.ew_slot.values() {
        if let Some(id) = bundle.h_prime.edge_map[slot] {
            hp_slot_of_id.insert(id, slot);
        }
    }
    let hp_faces = bundle.h_prime.embedding.plane_faces();
    let mut boundary_slots: BTreeSet<usize> = BTreeSet::new();
    for r in &tris {
        let idx = hp_faces.index_of(r.face).expect("triangle face exists");
        for walk in &hp_faces.records[idx].walks {
            for &dart in walk {
                let id = crate::embedding::edge_of(dart);
                boundary_slots.insert(hp_slot_of_id[&id]);
            }
        }
    }
    let m = boundary_slots.len();
    quantities.push(("m".into(), m.to_string()));

    // materialize the reduced graph: drop triangle interiors, then for
    // every remaining crossing delete the registry's first edge and
    // smooth the crossing vertex, recovering the second edge
    let emb = &bundle.dxw.embedding;
    let mut interior: BTreeSet<usize> = BTreeSet::new();
    let mut interior_reds: BTreeSet<usize> = BTreeSet::new();
    for r in &tris {
        interior.extend(r.whites.iter().copied());
        interior.extend(r.reds.iter().copied());
        interior_reds.extend(r.reds.iter().copied());
    }
    let surviving_reds: Vec<usize> = bundle
        .reds()
        .into_iter()
        .filter(|w| !interior_reds.contains(w))
        .collect();

    let reduce = |keep_boundary: bool| -> Result<PlaneEditor, BoundsError> {
        let mut ed = PlaneEditor::from_embedding(emb);
        for &slot in bundle.ew_slot.values() {
            let id = dxw_id_of_slot(slot);
            if !(keep_boundary && boundary_slots.contains(&slot)) {
                ed.delete_edge(id)?;
            }
        }
        for &v in &interior {
            ed.delete_vertex(v)?;
        }
        for &w in &surviving_reds {
            let entry = &d.registry.entries[&w];
            let (ea, eb) = entry.e1;
            for end in [ea, eb] {
                let slot = (0..ed.edge_slot_count())
                    .find(|&s| {
                        ed.edge_slot(s)
                            .map(|(p, q)| (p.min(q), p.max(q)) == (end.min(w), end.max(w)))
                            .unwrap_or(false)
                    })
                    .expect("crossing half-edge present");
                ed.delete_edge(slot)?;
            }
            ed.unsubdivide(w)?;
        }
        Ok(ed)
    };

    let gstar = reduce(false)?.snapshot()?;
    let mut ed2 = reduce(true)?;
    let kept: Vec<usize> = boundary_slots.iter().map(|&s| dxw_id_of_slot(s)).collect();
    for id in kept {
        ed2.subdivide(id, VertexLabel::White)?;
    }
    let gss = ed2.snapshot()?;

    let vs = gstar.embedding.vertex_count();
    let es = gstar.embedding.edge_count();
    let vss = gss.embedding.vertex_count();
    let ess = gss.embedding.edge_count();
    quantities.push(("Vstar".into(), vs.to_string()));
    quantities.push(("Estar".into(), es.to_string()));
    quantities.push(("Vstarstar".into(), vss.to_string()));
    quantities.push(("Estarstar".into(), ess.to_string()));

    let mut checks = Vec::new();
    checks.push(CertCheck::eq("EH=EHp+A", q(eh), q(ehp) + q(a)));
    for (i, r) in tris.iter().enumerate() {
        checks.push(CertCheck::le(
            format!("tri{i}: e<=2y+1+ceil(sqrt(j))"),
            q(r.interior_edges),
            q(2 * r.whites.len() + 1 + isqrt_ceil(r.reds.len())),
        ));
    }
    checks.push(CertCheck::le(
        "sum(e)<=2sum(y)+t0+2t1+3t3",
        q(sum_e),
        q(2 * sum_y + t0 + 2 * t1 + 3 * t3),
    ));
    if x >= 3 {
        checks.push(CertCheck::le(
            "EH<=4x-8+t-(3t0+2t1)/2",
            q(eh),
            q(4 * x) - q(8) + q(t) - (q(3 * t0) + q(2 * t1)) / q(2),
        ));
    }
    checks.push(CertCheck::eq(
        "Vstar=V-sum(y)",
        q(vs),
        q(n) - q(sum_y),
    ));
    checks.push(CertCheck::eq(
        "Estar=E-sum(e)-EH+t1+3t3",
        q(es),
        q(m_g) - q(sum_e) - q(eh) + q(t1) + q(3 * t3),
    ));
    // the reduced graph must be a simple bipartite plane graph
    let star_simple = {
        let mut seen = HashSet::new();
        gstar.embedding.edges().iter().all(|&(p, r2)| {
            p != r2
                && seen.insert((p.min(r2), p.max(r2)))
                && gstar.embedding.label(p) != gstar.embedding.label(r2)
        })
    };
    checks.push(CertCheck::eq(
        "reduced-simple-bipartite",
        q(star_simple as usize),
        q(1),
    ));
    checks.push(CertCheck::eq(
        "reduced-euler",
        q(gstar.embedding.euler_check() as usize),
        q(1),
    ));
    checks.push(CertCheck::le(
        "Estar<=2Vstar-4-t",
        q(es),
        q(2 * vs) - q(4) - q(t),
    ));
    checks.push(CertCheck::eq("Vstarstar=Vstar+m", q(vss), q(vs) + q(m)));
    checks.push(CertCheck::eq(
        "Estarstar=Estar+2m",
        q(ess),
        q(es) + q(2 * m),
    ));
    let hex = gss
        .embedding
        .plane_faces()
        .records
        .iter()
        .filter(|r| r.cellular && r.size >= 6)
        .count();
    quantities.push(("hexfaces".into(), hex.to_string()));
    checks.push(CertCheck::le("t<=hexfaces", q(t), q(hex)));
    checks.push(CertCheck::le(
        "Estarstar<=2Vstarstar-4-t",
        q(ess),
        q(2 * vss) - q(4) - q(t),
    ));
    checks.push(CertCheck::le(
        "E<=2V+4x-12-t0/2",
        q(m_g),
        q(2 * n) + q(4 * x) - q(12) - q(t0) / q(2),
    ));

    Ok(Certificate {
        quantities,
        checks,
        failed_hypothesis: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drawing::planarize_from;
    use crate::embedding::{Placement, PlaneEmbedding};
    use crate::graph::complete_bipartite;

    #[test]
    fn bound_formulas() {
        assert_eq!(karpov_bound(8).unwrap(), 16);
        assert_eq!(karpov_bound(6).unwrap(), 9);
        assert_eq!(karpov_bound(7).unwrap(), 12);
        assert!(karpov_bound(3).is_err());
        assert_eq!(czap_bound(9, 3).unwrap(), 20);
        assert_eq!(czap_bound(4, 2).unwrap(), 4);
        assert_eq!(czap_bound(16, 4).unwrap(), 40);
        assert!(czap_bound(5, 3).is_err());
        assert_eq!(main_bound(9, 3).unwrap(), 18);
        assert_eq!(main_bound(10, 3).unwrap(), 20);
        assert_eq!(main_bound(2 + 7, 2).unwrap(), 14);
        assert!(main_bound(5, 3).is_err());
        assert_eq!(removal_lower_bound(3, 7).unwrap(), 1);
        assert_eq!(removal_lower_bound(2, 10).unwrap(), 0);
        assert_eq!(removal_lower_bound(4, 10).unwrap(), 8);
        assert_eq!(removal_lower_bound(3, 5).unwrap(), 0);
    }

    #[test]
    fn bound_comparisons() {
        for x in 2..=50usize {
            for n in (2 * x).max(4)..=120 {
                assert!(main_bound(n, x).unwrap() <= czap_bound(n, x).unwrap());
            }
        }
        // the tighter regime against the general 1-planar bound
        for x in 2..=20usize {
            for y in x..=100 {
                if 3 * x <= y + 4 {
                    assert!(
                        main_bound(x + y, x).unwrap() <= karpov_bound(x + y).unwrap(),
                        "x={x} y={y}"
                    );
                }
            }
        }
    }

    fn triangle_embedding() -> PlaneEmbedding {
        PlaneEmbedding::from_rotations(
            3,
            vec![(0, 1), (1, 2), (0, 2)],
            vec![vec![0, 4], vec![1, 2], vec![3, 5]],
            vec![VertexLabel::Plain; 3],
        )
        .unwrap()
    }

    #[test]
    fn lemma7_on_small_graphs() {
        let tri = triangle_embedding();
        let v = lemma7_check(&tri, false).unwrap();
        assert!(v.holds);
        assert_eq!(v.tagged_faces, 2);
        assert_eq!(v.bound, Q::from_integer(3)); // 2*3-3-1+2/2, tight
    }

    #[test]
    fn lemma7_nonisolated_variant() {
        // triangle plus an isolated vertex hosted in a face
        let emb = PlaneEmbedding::new(
            4,
            vec![(0, 1), (1, 2), (0, 2)],
            vec![vec![0, 4], vec![1, 2], vec![3, 5], vec![]],
            vec![VertexLabel::Plain; 4],
            vec![
                Placement { host: None, outer_face: 0 },
                Placement { host: Some((0, 1)), outer_face: 0 },
            ],
        )
        .unwrap();
        // plain form: extra component weakens the bound below |E|
        let plain = lemma7_check(&emb, false).unwrap();
        assert!(!plain.holds || plain.bound >= Q::from_integer(3));
        let variant = lemma7_check(&emb, true).unwrap();
        assert!(variant.holds);
        assert_eq!(variant.vertices_counted, 3);
        assert_eq!(variant.tagged_faces, 2);
    }

    #[test]
    fn lemma8_on_small_graphs() {
        // C6: two cellular 6-faces, tight
        let edges: Vec<(usize, usize)> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        let mut rot = vec![Vec::new(); 6];
        for (id, &(a, b)) in edges.iter().enumerate() {
            rot[a].push(2 * id);
            rot[b].push(2 * id + 1);
        }
        let emb = PlaneEmbedding::from_rotations(6, edges, rot, vec![VertexLabel::Plain; 6]).unwrap();
        let v = lemma8_check(&emb, false).unwrap();
        assert!(v.holds);
        assert_eq!(v.tagged_faces, 2);
        assert_eq!(v.bound, Q::from_integer(6));
        // C4: no large faces, still tight
        let edges: Vec<(usize, usize)> = (0..4).map(|i| (i, (i + 1) % 4)).collect();
        let mut rot = vec![Vec::new(); 4];
        for (id, &(a, b)) in edges.iter().enumerate() {
            rot[a].push(2 * id);
            rot[b].push(2 * id + 1);
        }
        let emb = PlaneEmbedding::from_rotations(4, edges, rot, vec![VertexLabel::Plain; 4]).unwrap();
        let v = lemma8_check(&emb, false).unwrap();
        assert!(v.holds);
        assert_eq!(v.tagged_faces, 0);
        assert_eq!(v.bound, Q::from_integer(4));
        let tri = triangle_embedding();
        assert!(matches!(
            lemma8_check(&tri, false),
            Err(BoundsError::NotBipartite)
        ));
    }

    #[test]
    fn certify_zero_crossing_drawing() {
        let (g, bip) = complete_bipartite(2, 3).unwrap();
        let d = planarize_from(&g, Some(&bip), &[], None).unwrap().unwrap();
        let cert = certify(&d).unwrap();
        assert!(cert.passed(), "{}", cert.serialize());
        let text = cert.serialize();
        assert!(text.contains("EH=EHp+A: 0=0 PASS"));
    }

    #[test]
    fn certify_k33_one_crossing() {
        let (g, bip) = complete_bipartite(3, 3).unwrap();
        let d = planarize_from(&g, Some(&bip), &[(0, 3, 1, 4)], None)
            .unwrap()
            .unwrap();
        let cert = certify(&d).unwrap();
        assert!(cert.passed(), "{}", cert.serialize());
        let text = cert.serialize();
        assert!(text.contains("EH=1"));
        assert!(text.contains("E<=2V+4x-12-t0/2: 9<=12 PASS"));
    }
}
