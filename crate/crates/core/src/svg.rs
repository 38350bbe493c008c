//! SVG rendering of Schlegel diagrams.
//!
//! For a 3-polytope the diagram is planar and every cell is drawn as a
//! polygon. For a 4-polytope the diagram lives in 3-space; its edges are
//! drawn through the fixed parallel map `(x, y, z) ↦ (x + z/2, y + z/3)`.
//! Coordinates are exact until the final scaling and printed with three
//! decimals, so equal inputs give byte-identical files.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::exact::{Rational, Vector};
use crate::projection::{LabelledPolytope, SchlegelComplex};

const SIZE: f64 = 400.0;
const MARGIN: f64 = 20.0;

fn planar(x: &Vector) -> (Rational, Rational) {
    match x.dim() {
        2 => (x[0].clone(), x[1].clone()),
        _ => (
            &x[0] + &(&x[2] * Rational::new(1, 2)),
            &x[1] + &(&x[2] * Rational::new(1, 3)),
        ),
    }
}

struct Canvas {
    min: (f64, f64),
    scale: f64,
}

impl Canvas {
    fn fit(points: &[(Rational, Rational)]) -> Canvas {
        let xs: Vec<f64> = points.iter().map(|p| p.0.to_f64()).collect();
        let ys: Vec<f64> = points.iter().map(|p| p.1.to_f64()).collect();
        let lo = |v: &[f64]| v.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = |v: &[f64]| v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let span = (hi(&xs) - lo(&xs)).max(hi(&ys) - lo(&ys)).max(f64::MIN_POSITIVE);
        Canvas {
            min: (lo(&xs), lo(&ys)),
            scale: (SIZE - 2.0 * MARGIN) / span,
        }
    }

    /// Screen coordinates with the y axis pointing up.
    fn place(&self, p: &(Rational, Rational)) -> String {
        let x = MARGIN + (p.0.to_f64() - self.min.0) * self.scale;
        let y = SIZE - MARGIN - (p.1.to_f64() - self.min.1) * self.scale;
        format!("{x:.3},{y:.3}")
    }
}

/// Vertices of a polygon in boundary order, as parent labels.
fn cyclic_order(cell: &LabelledPolytope) -> Vec<usize> {
    let lattice = cell.polytope.lattice();
    let edges: Vec<Vec<usize>> = lattice.faces(1).iter().map(|e| e.vertices.to_vec()).collect();
    let mut order = vec![0usize];
    while order.len() < cell.labels.len() {
        let last = *order.last().unwrap();
        let next = edges
            .iter()
            .filter_map(|e| match e[..] {
                [a, b] if a == last => Some(b),
                [a, b] if b == last => Some(a),
                _ => None,
            })
            .find(|v| !order.contains(v))
            .expect("polygon boundary is a cycle");
        order.push(next);
    }
    order.into_iter().map(|i| cell.labels[i]).collect()
}

pub fn schlegel_svg(cx: &SchlegelComplex) -> Result<String> {
    let k = cx.k();
    if k != 2 && k != 3 {
        return Err(Error::DiagramDimension(k + 1));
    }
    let flat: Vec<(Rational, Rational)> = cx.positions.iter().map(planar).collect();
    let canvas = Canvas::fit(&flat);
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    )
    .unwrap();
    if k == 3 {
        writeln!(out, "<!-- 3D to 2D map (x, y, z) -> (x + z/2, y + z/3), then uniform scaling -->").unwrap();
    }
    writeln!(
        out,
        "<style>.cell{{fill:#dde6f0;stroke:#345;stroke-width:1}}.carrier{{fill:none;stroke:#123;stroke-width:2}}\
         .edge{{fill:none;stroke:#345;stroke-width:1}}.vertex{{fill:#c33}}</style>"
    )
    .unwrap();
    let points = |ids: &[usize]| ids.iter().map(|&v| canvas.place(&flat[v])).collect::<Vec<_>>().join(" ");
    if k == 2 {
        for (cell, origin) in cx.cells.iter().zip(&cx.cell_origin) {
            writeln!(
                out,
                r#"<polygon class="cell" data-facet="{origin}" points="{}"/>"#,
                points(&cyclic_order(cell))
            )
            .unwrap();
        }
        writeln!(
            out,
            r#"<polygon class="carrier" data-facet="{}" points="{}"/>"#,
            cx.facet,
            points(&cyclic_order(&cx.carrier))
        )
        .unwrap();
    } else {
        for edge in cx.faces.iter().filter(|f| f.dim == 1) {
            let ids = edge.vertices.to_vec();
            writeln!(
                out,
                r#"<path class="edge" d="M{} L{}"/>"#,
                canvas.place(&flat[ids[0]]),
                canvas.place(&flat[ids[1]])
            )
            .unwrap();
        }
    }
    for (v, p) in flat.iter().enumerate() {
        let at = canvas.place(p);
        let (x, y) = at.split_once(',').unwrap();
        writeln!(out, r#"<circle class="vertex" data-vertex="{v}" cx="{x}" cy="{y}" r="3"/>"#).unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out)
}
