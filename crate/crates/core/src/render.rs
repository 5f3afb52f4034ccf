//! Text and SVG diagrams of bidegree grids and zigzag decompositions.
//!
//! Rendering is deterministic: identical inputs produce byte-identical
//! output. Grids put `p` on the horizontal axis and `q` growing upwards,
//! matching the usual Hodge-diamond pictures.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::complex::{Bidegree, DoubleComplex};
use crate::multiplicity::MultiplicityVector;
use crate::shape::Shape;

/// Dimension table of a multiplicity vector (what its realization would
/// have per bidegree).
fn dims_of_mults(m: &MultiplicityVector) -> BTreeMap<Bidegree, usize> {
    let mut dims = BTreeMap::new();
    for (s, c) in m.iter() {
        for pt in s.point_set() {
            *dims.entry(pt).or_insert(0) += c;
        }
    }
    dims
}

fn shapes_sorted(m: &MultiplicityVector) -> Vec<(Shape, usize)> {
    let mut shapes: Vec<(Shape, usize)> = m.iter().map(|(s, c)| (*s, c)).collect();
    shapes.sort_by_key(|(s, _)| s.render_key());
    shapes
}

/// Fixed-width grid of total dimensions, plus one line per shape when a
/// multiplicity vector is supplied.
pub fn render_ascii(
    dims: &BTreeMap<Bidegree, usize>,
    mults: Option<&MultiplicityVector>,
) -> String {
    let mut out = String::new();
    if dims.is_empty() {
        out.push_str("(empty complex)\n");
    } else {
        let min_p = dims.keys().map(|&(p, _)| p).min().unwrap();
        let max_p = dims.keys().map(|&(p, _)| p).max().unwrap();
        let min_q = dims.keys().map(|&(_, q)| q).min().unwrap();
        let max_q = dims.keys().map(|&(_, q)| q).max().unwrap();
        let cell = dims
            .values()
            .map(|d| d.to_string().len())
            .chain((min_p..=max_p).map(|p| p.to_string().len()))
            .max()
            .unwrap()
            .max(1);
        let qwidth = (min_q..=max_q).map(|q| q.to_string().len()).max().unwrap();
        for q in (min_q..=max_q).rev() {
            let _ = write!(out, "{q:>qwidth$} |");
            for p in min_p..=max_p {
                match dims.get(&(p, q)).copied().unwrap_or(0) {
                    0 => {
                        let _ = write!(out, " {:>cell$}", ".");
                    }
                    d => {
                        let _ = write!(out, " {d:>cell$}");
                    }
                }
            }
            out.push('\n');
        }
        let _ = write!(out, "{:>qwidth$} +", "");
        for _ in min_p..=max_p {
            let _ = write!(out, "-{}", "-".repeat(cell));
        }
        out.push('\n');
        let _ = write!(out, "{:>qwidth$}  ", "");
        for p in min_p..=max_p {
            let _ = write!(out, " {p:>cell$}");
        }
        out.push_str("   (p right, q up)\n");
    }
    if let Some(m) = mults {
        out.push('\n');
        if m.is_empty() {
            out.push_str("no summands\n");
        }
        for (s, c) in shapes_sorted(m) {
            let pts: Vec<String> = s
                .points()
                .iter()
                .map(|(p, q)| format!("({p},{q})"))
                .collect();
            let _ = writeln!(out, "{s}  x{c}  [{}]", pts.join(", "));
        }
    }
    out
}

pub fn ascii_of_complex(a: &DoubleComplex, m: Option<&MultiplicityVector>) -> String {
    let dims = a.support().collect();
    render_ascii(&dims, m)
}

pub fn ascii_of_mults(m: &MultiplicityVector) -> String {
    render_ascii(&dims_of_mults(m), Some(m))
}

const CELL: i32 = 72;
const MARGIN: i32 = 48;
const NODE_R: i32 = 5;

/// Standalone SVG of a zigzag decomposition: one node per shape point, one
/// arrow per drawn differential (right for `∂₁`, up for `∂₂`), shapes
/// jittered inside their cells so overlapping summands stay readable.
pub fn render_svg(m: &MultiplicityVector) -> String {
    let dims = dims_of_mults(m);
    let mut it = dims.keys();
    let Some(&(p0, q0)) = it.next() else {
        return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"200\" height=\"40\">\
                <text x=\"10\" y=\"25\" font-family=\"monospace\">(empty)</text></svg>"
            .to_string();
    };
    let mut bb = (p0, p0, q0, q0);
    for &(p, q) in it {
        bb.0 = bb.0.min(p);
        bb.1 = bb.1.max(p);
        bb.2 = bb.2.min(q);
        bb.3 = bb.3.max(q);
    }
    let (min_p, max_p, min_q, max_q) = bb;
    let cols = max_p - min_p + 1;
    let rows = max_q - min_q + 1;
    let width = 2 * MARGIN + cols * CELL;
    let height = 2 * MARGIN + rows * CELL;
    let cx = |p: i32, dx: i32| MARGIN + (p - min_p) * CELL + CELL / 2 + dx;
    let cy = |q: i32, dy: i32| height - (MARGIN + (q - min_q) * CELL + CELL / 2 + dy);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\">"
    );
    svg.push_str(
        "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" \
         markerWidth=\"7\" markerHeight=\"7\" orient=\"auto-start-reverse\">\
         <path d=\"M 0 0 L 10 5 L 0 10 z\" fill=\"#444\"/></marker></defs>\n",
    );
    // Grid.
    for i in 0..=cols {
        let x = MARGIN + i * CELL;
        let _ = writeln!(
            svg,
            "<line x1=\"{x}\" y1=\"{MARGIN}\" x2=\"{x}\" y2=\"{}\" stroke=\"#ddd\"/>",
            height - MARGIN
        );
    }
    for i in 0..=rows {
        let y = MARGIN + i * CELL;
        let _ = writeln!(
            svg,
            "<line x1=\"{MARGIN}\" y1=\"{y}\" x2=\"{}\" y2=\"{y}\" stroke=\"#ddd\"/>",
            width - MARGIN
        );
    }
    for p in min_p..=max_p {
        let _ = writeln!(
            svg,
            "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-family=\"monospace\" \
             font-size=\"13\">{p}</text>",
            cx(p, 0),
            height - MARGIN / 3
        );
    }
    for q in min_q..=max_q {
        let _ = writeln!(
            svg,
            "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-family=\"monospace\" \
             font-size=\"13\">{q}</text>",
            MARGIN / 3,
            cy(q, -4)
        );
    }

    let palette = [
        "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
    ];
    for (idx, (s, c)) in shapes_sorted(m).into_iter().enumerate() {
        let color = palette[idx % palette.len()];
        let jitter = idx as i32 % 3 * 14 - 14;
        let pts = s.points();
        let arrows: Vec<(Bidegree, Bidegree)> = match s {
            Shape::Square { .. } => {
                // points() order: BL, TL, BR, TR
                vec![
                    (pts[0], pts[1]),
                    (pts[0], pts[2]),
                    (pts[1], pts[3]),
                    (pts[2], pts[3]),
                ]
            }
            _ => pts
                .windows(2)
                .map(|w| {
                    if w[0].0 + w[0].1 < w[1].0 + w[1].1 {
                        (w[0], w[1])
                    } else {
                        (w[1], w[0])
                    }
                })
                .collect(),
        };
        let _ = writeln!(svg, "<g stroke=\"{color}\" fill=\"{color}\">");
        for ((p1, q1), (p2, q2)) in arrows {
            let _ = writeln!(
                svg,
                "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke-width=\"2\" \
                 marker-end=\"url(#arrow)\"/>",
                cx(p1, jitter),
                cy(q1, jitter),
                cx(p2, jitter),
                cy(q2, jitter)
            );
        }
        for (p, q) in &pts {
            let _ = writeln!(
                svg,
                "<circle cx=\"{}\" cy=\"{}\" r=\"{NODE_R}\"/>",
                cx(*p, jitter),
                cy(*q, jitter)
            );
        }
        let (p0, q0) = pts[0];
        let label = if c == 1 {
            s.to_string()
        } else {
            format!("{s} x{c}")
        };
        let _ = writeln!(
            svg,
            "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"11\" \
             stroke=\"none\">{label}</text>",
            cx(p0, jitter) + 8,
            cy(q0, jitter) - 8
        );
        svg.push_str("</g>\n");
    }
    svg.push_str("</svg>\n");
    svg
}
