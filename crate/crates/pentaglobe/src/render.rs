//! Deterministic SVG and DOT output.
//!
//! Edge lengths follow the line conventions of the source drawings:
//! `a` thin solid, `b` thick solid, `c` dashed. Layouts use fixed
//! per-template coordinates, not force-directed placement, so repeated runs
//! are byte identical.

use crate::earthmap::{ArrowKind, FamilyGraph};
use crate::mesh::{build_neighborhood_fragment, build_timezone_template, Fragment};
use crate::patterns::EdgeLabel;
use std::collections::BTreeMap;
use std::fmt::Write;

fn stroke(label: Option<EdgeLabel>) -> &'static str {
    match label {
        Some(EdgeLabel::A) => "stroke=\"black\" stroke-width=\"1\"",
        Some(EdgeLabel::B) => "stroke=\"black\" stroke-width=\"3.5\"",
        Some(EdgeLabel::C) => "stroke=\"black\" stroke-width=\"1\" stroke-dasharray=\"6,4\"",
        None => "stroke=\"gray\" stroke-width=\"0.5\"",
    }
}

fn svg_document(
    coords: &[(f64, f64)],
    fragment: &Fragment,
    labels: &[Option<EdgeLabel>],
    note: Option<&str>,
) -> String {
    let scale = 80.0;
    let xs: Vec<f64> = coords.iter().map(|c| c.0 * scale).collect();
    let ys: Vec<f64> = coords.iter().map(|c| -c.1 * scale).collect();
    let min_x = xs.iter().cloned().fold(f64::MAX, f64::min) - 20.0;
    let min_y = ys.iter().cloned().fold(f64::MAX, f64::min) - 20.0;
    let max_x = xs.iter().cloned().fold(f64::MIN, f64::max) + 20.0;
    let max_y = ys.iter().cloned().fold(f64::MIN, f64::max) + 20.0;
    let mut out = String::new();
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{:.1} {:.1} {:.1} {:.1}\">",
        min_x,
        min_y,
        max_x - min_x,
        max_y - min_y
    )
    .unwrap();
    for (e, &[u, v]) in fragment.edges().iter().enumerate() {
        writeln!(
            out,
            "  <line x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" {}/>",
            xs[u as usize],
            ys[u as usize],
            xs[v as usize],
            ys[v as usize],
            stroke(labels[e])
        )
        .unwrap();
    }
    if let Some(text) = note {
        writeln!(
            out,
            "  <text x=\"{:.1}\" y=\"{:.1}\" font-size=\"14\">{}</text>",
            min_x + 10.0,
            min_y + 16.0,
            text
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}

/// The neighborhood fragment with a labeling (or bare if labels are absent).
pub fn svg_neighborhood(labels: &[Option<EdgeLabel>]) -> String {
    let frame = build_neighborhood_fragment();
    let mut coords = Vec::new();
    for ring in 0..3 {
        for i in 0..5 {
            let (angle, radius) = match ring {
                0 => (18.0 + 72.0 * i as f64, 0.6),
                1 => (18.0 + 72.0 * i as f64, 1.2),
                _ => (54.0 + 72.0 * i as f64, 1.6),
            };
            let rad = angle.to_radians();
            coords.push((radius * rad.cos(), radius * rad.sin()));
        }
    }
    svg_document(&coords, &frame.fragment, labels, None)
}

fn template_coords(distance: u8) -> Vec<(f64, f64)> {
    match distance {
        5 => vec![
            (0.0, 0.3),
            (0.0, -0.3),
            (-0.3, 0.7),
            (-0.6, 0.3),
            (-0.6, -0.3),
            (-0.9, -0.7),
            (0.9, 0.7),
            (0.6, 0.3),
            (0.6, -0.3),
            (0.3, -0.7),
            (0.0, 1.3),
            (0.0, -1.3),
        ],
        4 => vec![
            (0.0, 0.8),
            (0.0, -0.8),
            (0.4, 0.5),
            (-0.4, 0.5),
            (0.3, 0.0),
            (-0.3, 0.0),
            (0.4, -0.5),
            (-0.4, -0.5),
            (0.9, 0.4),
            (0.9, -0.4),
            (-0.9, 0.4),
            (-0.9, -0.4),
            (-1.2, 0.7),
            (-1.4, 0.0),
            (-1.2, -0.7),
            (-1.9, 0.7),
            (-1.7, 0.0),
            (-1.9, -0.7),
            (1.2, 0.7),
            (1.4, 0.0),
            (1.2, -0.7),
            (0.0, 1.4),
            (0.0, -1.4),
        ],
        3 => vec![
            (0.16, 0.16),
            (0.48, -0.16),
            (-0.48, 0.16),
            (-0.16, -0.16),
            (0.16, 0.6),
            (0.48, -0.6),
            (-0.48, 0.6),
            (-0.16, -0.6),
            (0.64, 0.7),
            (0.96, -0.7),
            (-0.96, 0.7),
            (-0.64, -0.7),
            (0.8, 0.16),
            (1.12, -0.16),
            (-1.12, 0.16),
            (-0.8, -0.16),
            (-1.76, 0.16),
            (-1.44, -0.16),
            (1.44, 0.16),
            (1.76, -0.16),
            (0.0, 1.4),
            (0.0, -1.4),
        ],
        2 => vec![
            (0.0, 0.2),
            (0.0, -0.2),
            (-0.4, 0.4),
            (-0.4, -0.4),
            (0.4, 0.4),
            (0.4, -0.4),
            (-0.1, 0.8),
            (-0.1, -0.8),
            (0.4, 0.7),
            (0.4, -0.7),
            (0.6, 0.0),
            (0.9, 0.0),
            (1.0, 0.5),
            (1.0, -0.5),
            (1.3, 0.6),
            (1.3, -0.6),
            (-0.6, 0.0),
            (-0.9, 0.0),
            (1.8, 0.0),
            (0.2, 1.3),
            (0.2, -1.3),
        ],
        _ => vec![
            (0.0, 0.2),
            (0.0, -0.2),
            (0.4, 0.4),
            (0.4, -0.4),
            (-0.4, 0.4),
            (-0.4, -0.4),
            (0.4, 0.7),
            (0.4, -0.7),
            (-0.4, 0.7),
            (-0.4, -0.7),
            (0.6, 0.0),
            (-0.6, 0.0),
            (0.9, 0.0),
            (-0.9, 0.0),
            (1.0, 0.8),
            (1.0, -0.8),
            (-1.0, 0.8),
            (-1.0, -0.8),
            (0.0, 1.3),
            (0.0, -1.3),
        ],
    }
}

/// A timezone template (bare or labeled).
pub fn svg_timezone(distance: u8, labels: &[Option<EdgeLabel>], note: Option<&str>) -> String {
    let template = build_timezone_template(distance).expect("distance checked by caller");
    svg_document(&template_coords(distance), &template.fragment, labels, note)
}

/// Aggregates the arrows of a family graph per (from, to, kind), the way the
/// published graphs annotate one drawn arrow with the tally of tilings it
/// stands for. Returns (from, to, smallest arrow id, raw count, kind).
fn reduced_arrows(graph: &FamilyGraph) -> Vec<(String, String, usize, usize, ArrowKind)> {
    let mut groups: BTreeMap<(String, String, ArrowKind), (usize, usize)> = BTreeMap::new();
    for (i, a) in graph.arrows.iter().enumerate() {
        let entry = groups
            .entry((a.from.clone(), a.to.clone(), a.kind))
            .or_insert((i, 0));
        entry.0 = entry.0.min(i);
        entry.1 += 1;
    }
    let mut out: Vec<_> = groups
        .into_iter()
        .map(|((from, to, kind), (i, mult))| (from, to, i, mult, kind))
        .collect();
    out.sort();
    out
}

/// DOT output of a family graph: node label is the signature, edge label is
/// `t<id> x<mult> [kind]` (kind shown at distance 4 only).
pub fn dot_family_graph(graph: &FamilyGraph) -> String {
    let mut out = String::new();
    writeln!(out, "digraph families {{").unwrap();
    writeln!(out, "  rankdir=LR;").unwrap();
    for node in &graph.nodes {
        writeln!(out, "  \"{node}\" [shape=box];").unwrap();
    }
    for (from, to, id, mult, kind) in reduced_arrows(graph) {
        let kind_note = match kind {
            ArrowKind::Timezone => String::new(),
            other => format!(" [{}]", other.name()),
        };
        let style = if kind == ArrowKind::MeridianPart {
            ", style=dashed"
        } else {
            ""
        };
        writeln!(
            out,
            "  \"{from}\" -> \"{to}\" [label=\"t{id} x{mult}{kind_note}\"{style}];"
        )
        .unwrap();
    }
    if graph.arrows.is_empty() {
        writeln!(out, "  empty [label=\"no tilings\", shape=plaintext];").unwrap();
    }
    writeln!(out, "}}").unwrap();
    out
}

/// SVG of a family graph: nodes on a circle, deterministic order.
pub fn svg_family_graph(graph: &FamilyGraph) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-220 -220 440 440\">"
    )
    .unwrap();
    if graph.nodes.is_empty() {
        writeln!(out, "  <text x=\"-60\" y=\"0\" font-size=\"16\">no tilings</text>").unwrap();
        out.push_str("</svg>\n");
        return out;
    }
    let n = graph.nodes.len();
    let pos = |i: usize| {
        let angle = std::f64::consts::TAU * i as f64 / n as f64;
        (160.0 * angle.cos(), 160.0 * angle.sin())
    };
    let index: BTreeMap<&str, usize> = graph
        .nodes
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_str(), i))
        .collect();
    for (from, to, id, mult, kind) in reduced_arrows(graph) {
        let (x1, y1) = pos(index[from.as_str()]);
        let (x2, y2) = pos(index[to.as_str()]);
        let dash = if kind == ArrowKind::MeridianPart {
            " stroke-dasharray=\"6,4\""
        } else {
            ""
        };
        if from == to {
            writeln!(
                out,
                "  <circle cx=\"{:.1}\" cy=\"{:.1}\" r=\"18\" fill=\"none\" stroke=\"black\"{} />",
                x1 * 1.18,
                y1 * 1.18,
                dash
            )
            .unwrap();
        } else {
            writeln!(
                out,
                "  <line x1=\"{x1:.1}\" y1=\"{y1:.1}\" x2=\"{x2:.1}\" y2=\"{y2:.1}\" stroke=\"black\"{dash}/>"
            )
            .unwrap();
        }
        let (mx, my) = ((x1 + x2) / 2.0, (y1 + y2) / 2.0);
        writeln!(
            out,
            "  <text x=\"{:.1}\" y=\"{:.1}\" font-size=\"9\">t{} x{}</text>",
            mx + 4.0,
            my - 4.0,
            id,
            mult
        )
        .unwrap();
    }
    for (i, node) in graph.nodes.iter().enumerate() {
        let (x, y) = pos(i);
        writeln!(
            out,
            "  <rect x=\"{:.1}\" y=\"{:.1}\" width=\"58\" height=\"20\" fill=\"white\" stroke=\"black\"/>",
            x - 29.0,
            y - 10.0
        )
        .unwrap();
        writeln!(
            out,
            "  <text x=\"{:.1}\" y=\"{:.1}\" font-size=\"11\" text-anchor=\"middle\">{node}</text>",
            x,
            y + 4.0
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::earthmap::build_family_graph;
    use crate::patterns::EdgePattern;

    #[test]
    fn neighborhood_svg_has_all_twenty_edges() {
        let labels = vec![Some(EdgeLabel::A); 20];
        let svg = svg_neighborhood(&labels);
        assert_eq!(svg.matches("<line").count(), 20);
    }

    #[test]
    fn empty_graph_renders_no_tilings_note() {
        let graph = build_family_graph(2, EdgePattern::A3BC).unwrap();
        assert!(dot_family_graph(&graph).contains("no tilings"));
        assert!(svg_family_graph(&graph).contains("no tilings"));
    }

    #[test]
    fn d2_a4b_graph_has_the_75_loop() {
        let graph = build_family_graph(2, EdgePattern::A4B).unwrap();
        let dot = dot_family_graph(&graph);
        // One aggregated loop at aa carrying all 75 raw tilings.
        assert!(dot.contains("\"aa\" -> \"aa\" [label=\"t0 x75\"]"));
    }

    #[test]
    fn rendering_is_deterministic() {
        let graph = build_family_graph(3, EdgePattern::A4B).unwrap();
        assert_eq!(dot_family_graph(&graph), dot_family_graph(&graph));
        let labels = vec![Some(EdgeLabel::B); 33];
        assert_eq!(
            svg_timezone(3, &labels, None),
            svg_timezone(3, &labels, None)
        );
    }
}
