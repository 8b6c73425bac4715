//! SVG plot of a two-dimensional polytope.

use std::cmp::Ordering;
use std::fmt::Write as _;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::polytope::RationalPolytope;
use crate::rational::{format_rational, Rational, RationalVec};

const SIZE: f64 = 480.0;
const MARGIN: f64 = 0.1 * SIZE;

fn half(v: &RationalVec) -> u8 {
    let (x, y) = (&v.0[0], &v.0[1]);
    if y.is_positive() || (y.is_zero() && x.is_positive()) {
        0
    } else {
        1
    }
}

/// Counterclockwise order around `center`, starting from the positive x
/// direction. Exact, so the output does not depend on floating point.
fn angular_order(points: &[RationalVec], center: &RationalVec) -> Vec<RationalVec> {
    let mut pts: Vec<RationalVec> = points.to_vec();
    pts.sort_by(|a, b| {
        let da = a.sub(center);
        let db = b.sub(center);
        half(&da).cmp(&half(&db)).then_with(|| {
            let cross = &da.0[0] * &db.0[1] - &da.0[1] * &db.0[0];
            if cross.is_positive() {
                Ordering::Less
            } else if cross.is_negative() {
                Ordering::Greater
            } else {
                Ordering::Equal
            }
        })
    });
    pts
}

fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(0.0)
}

/// Deterministic 480×480 SVG: axes through the origin, the polygon, and
/// every vertex labelled with its exact coordinates.
pub fn polytope_svg(p: &RationalPolytope) -> Result<String> {
    if p.dim() != 2 {
        return Err(Error::Invalid(format!(
            "SVG output supports dimension 2 only, got {}",
            p.dim()
        )));
    }
    let verts = p.vertices();
    let mut extent = Rational::zero();
    for v in verts {
        extent = extent.max(v.inf_norm());
    }
    let extent = if extent.is_zero() { 1.0 } else { to_f64(&extent) };
    let scale = (SIZE / 2.0 - MARGIN) / extent;
    let map = |v: &RationalVec| -> (f64, f64) {
        (SIZE / 2.0 + to_f64(&v.0[0]) * scale, SIZE / 2.0 - to_f64(&v.0[1]) * scale)
    };

    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" height=\"480\" viewBox=\"0 0 480 480\">"
    );
    let _ = writeln!(s, "  <rect x=\"0\" y=\"0\" width=\"480\" height=\"480\" fill=\"white\"/>");
    let _ = writeln!(
        s,
        "  <line x1=\"0\" y1=\"240\" x2=\"480\" y2=\"240\" stroke=\"gray\" stroke-dasharray=\"4 4\"/>"
    );
    let _ = writeln!(
        s,
        "  <line x1=\"240\" y1=\"0\" x2=\"240\" y2=\"480\" stroke=\"gray\" stroke-dasharray=\"4 4\"/>"
    );

    if !verts.is_empty() {
        let n = Rational::from_integer(verts.len().into());
        let center = verts
            .iter()
            .fold(RationalVec::zero(2), |acc, v| acc.add(v))
            .scale(&n.recip());
        let ordered = angular_order(verts, &center);
        let pts: Vec<String> = ordered
            .iter()
            .map(|v| {
                let (x, y) = map(v);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let _ = writeln!(
            s,
            "  <polygon points=\"{}\" fill=\"#dde8f5\" stroke=\"black\" stroke-width=\"2\"/>",
            pts.join(" ")
        );
        for v in &ordered {
            let (x, y) = map(v);
            let _ = writeln!(s, "  <circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"3\" fill=\"black\"/>");
            let label = format!("({}, {})", format_rational(&v.0[0]), format_rational(&v.0[1]));
            let _ = writeln!(
                s,
                "  <text x=\"{:.2}\" y=\"{:.2}\" font-family=\"monospace\" font-size=\"12\">{label}</text>",
                x + 6.0,
                y - 6.0
            );
        }
    }
    s.push_str("</svg>\n");
    Ok(s)
}
