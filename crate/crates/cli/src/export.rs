//! Schematic DOT and SVG views of embeddings and drawings: circular
//! layout per component (not geometric), crossing vertices marked red,
//! added hug edges dashed when exporting an extension bundle.

use std::collections::HashMap;

use onepw_core::embedding::{PlaneEmbedding, VertexLabel};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Style {
    Solid,
    Dashed,
}

pub struct Diagram {
    pub vertex_count: usize,
    pub labels: Vec<VertexLabel>,
    pub edges: Vec<(usize, usize, Style)>,
    pub components: Vec<Vec<usize>>,
}

impl Diagram {
    pub fn from_embedding(emb: &PlaneEmbedding, dashed: &[usize]) -> Self {
        let edges = emb
            .edges()
            .iter()
            .enumerate()
            .map(|(i, &(a, b))| {
                let style = if dashed.contains(&i) {
                    Style::Dashed
                } else {
                    Style::Solid
                };
                (a, b, style)
            })
            .collect();
        Diagram {
            vertex_count: emb.vertex_count(),
            labels: emb.labels().to_vec(),
            edges,
            components: emb.components(),
        }
    }
}

fn fill(label: VertexLabel) -> (&'static str, &'static str) {
    // (fill color, shape hint)
    match label {
        VertexLabel::Black => ("black", "circle"),
        VertexLabel::White => ("white", "circle"),
        VertexLabel::Red => ("red", "diamond"),
        VertexLabel::Plain => ("lightgray", "circle"),
    }
}

pub fn to_dot(d: &Diagram) -> String {
    let mut s = String::from("graph drawing {\n  node [style=filled];\n");
    for v in 0..d.vertex_count {
        let (color, shape) = fill(d.labels[v]);
        let font = if d.labels[v] == VertexLabel::Black {
            " fontcolor=white"
        } else {
            ""
        };
        s.push_str(&format!(
            "  {v} [fillcolor={color} shape={shape}{font}];\n"
        ));
    }
    for &(a, b, style) in &d.edges {
        let attr = match style {
            Style::Solid => "",
            Style::Dashed => " [style=dashed]",
        };
        s.push_str(&format!("  {a} -- {b}{attr};\n"));
    }
    s.push_str("}\n");
    s
}

pub fn to_svg(d: &Diagram) -> String {
    // components on a row of circles
    let r_big = 90.0_f64;
    let r_node = 9.0_f64;
    let pitch = 2.0 * r_big + 60.0;
    let mut pos: HashMap<usize, (f64, f64)> = HashMap::new();
    for (c, comp) in d.components.iter().enumerate() {
        let cx = 40.0 + r_big + c as f64 * pitch;
        let cy = 40.0 + r_big;
        let k = comp.len().max(1) as f64;
        for (i, &v) in comp.iter().enumerate() {
            let th = std::f64::consts::TAU * i as f64 / k;
            pos.insert(v, (cx + r_big * th.cos(), cy + r_big * th.sin()));
        }
    }
    let w = 80.0 + d.components.len().max(1) as f64 * pitch;
    let h = 2.0 * (40.0 + r_big) + 20.0;
    let mut s = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.0}\" height=\"{h:.0}\" \
         viewBox=\"0 0 {w:.0} {h:.0}\">\n"
    );
    for &(a, b, style) in &d.edges {
        let (x1, y1) = pos[&a];
        let (x2, y2) = pos[&b];
        let dash = match style {
            Style::Solid => "",
            Style::Dashed => " stroke-dasharray=\"6 4\"",
        };
        s.push_str(&format!(
            "  <line x1=\"{x1:.1}\" y1=\"{y1:.1}\" x2=\"{x2:.1}\" y2=\"{y2:.1}\" \
             stroke=\"#444\"{dash}/>\n"
        ));
    }
    for v in 0..d.vertex_count {
        let Some(&(x, y)) = pos.get(&v) else { continue };
        let (color, _) = fill(d.labels[v]);
        let text_fill = if d.labels[v] == VertexLabel::Black {
            "white"
        } else {
            "black"
        };
        s.push_str(&format!(
            "  <circle cx=\"{x:.1}\" cy=\"{y:.1}\" r=\"{r_node}\" fill=\"{color}\" \
             stroke=\"black\"/>\n  <text x=\"{x:.1}\" y=\"{:.1}\" font-size=\"9\" \
             text-anchor=\"middle\" fill=\"{text_fill}\">{v}</text>\n",
            y + 3.0
        ));
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use onepw_core::drawing::planarize_from;
    use onepw_core::graph::complete_bipartite;

    #[test]
    fn dot_and_svg_cover_all_vertices() {
        let (g, bip) = complete_bipartite(3, 3).unwrap();
        let d = planarize_from(&g, Some(&bip), &[(0, 3, 1, 4)], None)
            .unwrap()
            .unwrap();
        let diag = Diagram::from_embedding(&d.planarization, &[]);
        let dot = to_dot(&diag);
        assert!(dot.contains("fillcolor=red"));
        assert!(dot.contains("0 -- "));
        let svg = to_svg(&diag);
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<circle").count(), 7);
    }
}
