//! Deterministic geometry exports: SVG for planar domains, OFF meshes for
//! three-dimensional ones.
//!
//! Output is a pure function of the result document, so repeated runs are
//! byte-identical. Coordinates that have a terminating decimal expansion are
//! printed exactly; all others are rounded to four places and the exact value
//! is kept next to the element in a comment. Mesh files carry exact `p/q`
//! coordinates throughout.

use crate::document::ResultDocument;
use crate::numeric::{RatVector, Rational};
use num::bigint::BigInt;
use num::{Integer, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt::Write;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RenderError {
    #[error("renderer expects a {expected}-dimensional domain, document has {found}")]
    WrongDimension { expected: usize, found: usize },
}

const MARGIN: i64 = 60;

fn strip_factor(mut value: BigInt, factor: u32) -> (BigInt, u32) {
    let f = BigInt::from(factor);
    let mut count = 0;
    while (&value % &f).is_zero() {
        value /= &f;
        count += 1;
    }
    (value, count)
}

fn decimal_from_scaled(scaled: &BigInt, places: u32) -> String {
    let negative = scaled.is_negative();
    let digits = scaled.abs().to_string();
    let places = places as usize;
    let padded = if digits.len() <= places {
        format!("{}{}", "0".repeat(places + 1 - digits.len()), digits)
    } else {
        digits
    };
    let split = padded.len() - places;
    let (int_part, frac_part) = padded.split_at(split);
    let frac_trimmed = frac_part.trim_end_matches('0');
    let body = if frac_trimmed.is_empty() {
        int_part.to_string()
    } else {
        format!("{int_part}.{frac_trimmed}")
    };
    if negative && body != "0" {
        format!("-{body}")
    } else {
        body
    }
}

/// A pixel coordinate: printable text plus the exact value when the text had
/// to be rounded.
struct PixelCoord {
    text: String,
    exact: Option<String>,
}

fn pixel_coord(value: &Rational) -> PixelCoord {
    if value.is_zero() {
        return PixelCoord { text: "0".to_string(), exact: None };
    }
    let (rest, twos) = strip_factor(value.denom().clone(), 2);
    let (rest, fives) = strip_factor(rest, 5);
    let mut coord = if rest == BigInt::from(1) {
        let places = twos.max(fives);
        let ten_pow = BigInt::from(10).pow(places);
        let scaled = (value.numer() * ten_pow) / value.denom();
        PixelCoord { text: decimal_from_scaled(&scaled, places), exact: None }
    } else {
        let shifted = &(value * &Rational::from_int(10_000)) + &(Rational::from_int(1) / Rational::from_int(2));
        let rounded = shifted.numer().div_floor(shifted.denom());
        PixelCoord { text: decimal_from_scaled(&rounded, 4), exact: Some(value.to_string()) }
    };
    if coord.text == "-0" {
        coord.text = "0".to_string();
    }
    coord
}

fn px(x: &Rational, scale: &Rational) -> Rational {
    &Rational::from_int(MARGIN) + &(x * scale)
}

fn py(y: &Rational, scale: &Rational) -> Rational {
    &Rational::from_int(MARGIN) + &(&(&Rational::one() - y) * scale)
}

fn exact_comment(parts: &[(&str, &PixelCoord)]) -> Option<String> {
    let listed: Vec<String> = parts
        .iter()
        .filter_map(|(name, c)| c.exact.as_ref().map(|e| format!("{name}={e}")))
        .collect();
    if listed.is_empty() {
        None
    } else {
        Some(format!("  <!-- exact: {} -->", listed.join(" ")))
    }
}

/// Angular comparator for nonzero direction vectors `(a, b)` around the
/// origin, counterclockwise starting just above the positive horizontal axis.
fn angular_cmp(a: &(Rational, Rational), b: &(Rational, Rational)) -> Ordering {
    fn half(p: &(Rational, Rational)) -> u8 {
        if p.1.is_positive() || (p.1.is_zero() && p.0.is_positive()) {
            0
        } else {
            1
        }
    }
    half(a).cmp(&half(b)).then_with(|| {
        let cross = &(&a.0 * &b.1) - &(&b.0 * &a.1);
        if cross.is_positive() {
            Ordering::Less
        } else if cross.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

fn centroid(points: &[RatVector]) -> RatVector {
    let dim = points[0].len();
    let count = Rational::from_int(points.len() as i64);
    (0..dim)
        .map(|i| {
            let mut total = Rational::zero();
            for p in points {
                total += &p[i];
            }
            &total / &count
        })
        .collect()
}

fn clip_to_unit_square(constant: &Rational, a: &Rational, b: &Rational) -> Option<((Rational, Rational), (Rational, Rational))> {
    let zero = Rational::zero();
    let one = Rational::one();
    let in_unit = |t: &Rational| t >= &zero && t <= &one;
    let mut hits: BTreeSet<(Rational, Rational)> = BTreeSet::new();
    if !b.is_zero() {
        for x in [zero.clone(), one.clone()] {
            let y = &(-(constant + &(a * &x))) / b;
            if in_unit(&y) {
                hits.insert((x, y));
            }
        }
    }
    if !a.is_zero() {
        for y in [zero.clone(), one.clone()] {
            let x = &(-(constant + &(b * &y))) / a;
            if in_unit(&x) {
                hits.insert((x, y));
            }
        }
    }
    if hits.len() < 2 {
        return None;
    }
    let first = hits.iter().next().unwrap().clone();
    let last = hits.iter().next_back().unwrap().clone();
    Some((first, last))
}

/// SVG picture of a two-boundary domain: unit square, the level wall and both
/// beta cuts clipped to the square, the filled feasible polygon, and each
/// vertex with its exact coordinates as a label.
pub fn render_polygon_svg(doc: &ResultDocument, scale: u32) -> Result<String, RenderError> {
    let k = doc.config.boundary_degrees.len();
    if k != 2 {
        return Err(RenderError::WrongDimension { expected: 2, found: k });
    }
    let scale_r = Rational::from_int(scale as i64);
    let side = scale as i64 + 2 * MARGIN;
    let mut out = String::new();
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{side}\" height=\"{side}\" viewBox=\"0 0 {side} {side}\">"
    )
    .unwrap();
    writeln!(
        out,
        "  <rect x=\"{MARGIN}\" y=\"{MARGIN}\" width=\"{scale}\" height=\"{scale}\" fill=\"none\" stroke=\"#999999\" stroke-width=\"1\"/>"
    )
    .unwrap();

    for form in &doc.halfspaces {
        let is_wall = form.label == "calabi_yau";
        let is_beta = form.label.starts_with("beta");
        if !is_wall && !is_beta {
            continue;
        }
        let Some((p, q)) = clip_to_unit_square(&form.constant, &form.coefficients[0], &form.coefficients[1]) else {
            continue;
        };
        let x1 = pixel_coord(&px(&p.0, &scale_r));
        let y1 = pixel_coord(&py(&p.1, &scale_r));
        let x2 = pixel_coord(&px(&q.0, &scale_r));
        let y2 = pixel_coord(&py(&q.1, &scale_r));
        if let Some(comment) = exact_comment(&[("x1", &x1), ("y1", &y1), ("x2", &x2), ("y2", &y2)]) {
            writeln!(out, "{comment}").unwrap();
        }
        let color = if is_wall { "#c0392b" } else { "#2980b9" };
        writeln!(
            out,
            "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{color}\" stroke-width=\"1.5\"/>",
            x1.text, y1.text, x2.text, y2.text
        )
        .unwrap();
    }

    let points: Vec<RatVector> = doc.vertices.iter().map(|v| v.point.clone()).collect();
    if points.len() >= 2 {
        let mut ordered: Vec<&RatVector> = points.iter().collect();
        if points.len() >= 3 {
            let center = centroid(&points);
            ordered.sort_by(|a, b| {
                let da = (&a[0] - &center[0], &a[1] - &center[1]);
                let db = (&b[0] - &center[0], &b[1] - &center[1]);
                angular_cmp(&da, &db)
            });
        }
        let mut coords = Vec::new();
        let mut exact_parts = Vec::new();
        for p in &ordered {
            let cx = pixel_coord(&px(&p[0], &scale_r));
            let cy = pixel_coord(&py(&p[1], &scale_r));
            if cx.exact.is_some() || cy.exact.is_some() {
                exact_parts.push(format!("({}, {})", p[0], p[1]));
            }
            coords.push(format!("{},{}", cx.text, cy.text));
        }
        if !exact_parts.is_empty() {
            writeln!(out, "  <!-- exact polygon vertices: {} -->", exact_parts.join(" ")).unwrap();
        }
        if ordered.len() >= 3 {
            writeln!(
                out,
                "  <polygon points=\"{}\" fill=\"#27ae60\" fill-opacity=\"0.25\" stroke=\"#1e8449\" stroke-width=\"2\"/>",
                coords.join(" ")
            )
            .unwrap();
        } else {
            let (a, b) = (&coords[0], &coords[1]);
            let (ax, ay) = a.split_once(',').unwrap();
            let (bx, by) = b.split_once(',').unwrap();
            writeln!(
                out,
                "  <line x1=\"{ax}\" y1=\"{ay}\" x2=\"{bx}\" y2=\"{by}\" stroke=\"#1e8449\" stroke-width=\"2\"/>"
            )
            .unwrap();
        }
    }

    for p in &points {
        let cx = pixel_coord(&px(&p[0], &scale_r));
        let cy = pixel_coord(&py(&p[1], &scale_r));
        if let Some(comment) = exact_comment(&[("cx", &cx), ("cy", &cy)]) {
            writeln!(out, "{comment}").unwrap();
        }
        writeln!(out, "  <circle cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"#111111\"/>", cx.text, cy.text).unwrap();
        let lx = pixel_coord(&(&px(&p[0], &scale_r) + &Rational::from_int(8)));
        let ly = pixel_coord(&(&py(&p[1], &scale_r) - &Rational::from_int(8)));
        writeln!(
            out,
            "  <text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"12\" fill=\"#111111\">({}, {})</text>",
            lx.text, ly.text, p[0], p[1]
        )
        .unwrap();
    }

    writeln!(out, "</svg>").unwrap();
    Ok(out)
}

fn sub3(a: &RatVector, b: &RatVector) -> [Rational; 3] {
    [&a[0] - &b[0], &a[1] - &b[1], &a[2] - &b[2]]
}

fn cross3(a: &[Rational; 3], b: &[Rational; 3]) -> [Rational; 3] {
    [
        &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
        &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
        &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
    ]
}

fn dot3(a: &[Rational; 3], b: &[Rational; 3]) -> Rational {
    let mut total = Rational::zero();
    for i in 0..3 {
        total += &(&a[i] * &b[i]);
    }
    total
}

fn is_zero3(a: &[Rational; 3]) -> bool {
    a.iter().all(|c| c.is_zero())
}

/// Orders the vertices of one planar face counterclockwise as seen from the
/// direction `outward`, then rotates the cycle to start at the smallest index.
fn face_cycle(points: &[RatVector], indices: &[usize], outward: &[Rational; 3]) -> Option<Vec<usize>> {
    let face_points: Vec<RatVector> = indices.iter().map(|&i| points[i].clone()).collect();
    let center = centroid(&face_points);
    let e1 = sub3(&face_points[0], &center);
    let e2 = cross3(outward, &e1);
    if is_zero3(&e2) {
        return None;
    }
    let mut keyed: Vec<(usize, (Rational, Rational))> = indices
        .iter()
        .map(|&i| {
            let d = sub3(&points[i], &center);
            (i, (dot3(&d, &e1), dot3(&d, &e2)))
        })
        .collect();
    if keyed.iter().any(|(_, d)| d.0.is_zero() && d.1.is_zero()) {
        return None;
    }
    keyed.sort_by(|a, b| angular_cmp(&a.1, &b.1));
    let mut cycle: Vec<usize> = keyed.into_iter().map(|(i, _)| i).collect();
    let min_pos = cycle
        .iter()
        .enumerate()
        .min_by_key(|(_, &idx)| idx)
        .map(|(pos, _)| pos)
        .unwrap();
    cycle.rotate_left(min_pos);
    Some(cycle)
}

/// OFF mesh of a three-boundary domain. One face per halfspace that touches
/// at least three vertices, oriented outward, with exact `p/q` coordinates.
pub fn render_polytope_mesh(doc: &ResultDocument) -> Result<String, RenderError> {
    let k = doc.config.boundary_degrees.len();
    if k != 3 {
        return Err(RenderError::WrongDimension { expected: 3, found: k });
    }
    let points: Vec<RatVector> = doc.vertices.iter().map(|v| v.point.clone()).collect();

    let mut faces: Vec<Vec<usize>> = Vec::new();
    for form in &doc.halfspaces {
        let incident: Vec<usize> = points
            .iter()
            .enumerate()
            .filter(|(_, p)| {
                let mut value = form.constant.clone();
                for (c, x) in form.coefficients.iter().zip(p.iter()) {
                    value += &(c * x);
                }
                value.is_zero()
            })
            .map(|(i, _)| i)
            .collect();
        if incident.len() < 3 {
            continue;
        }
        let outward = [
            -&form.coefficients[0],
            -&form.coefficients[1],
            -&form.coefficients[2],
        ];
        if let Some(cycle) = face_cycle(&points, &incident, &outward) {
            faces.push(cycle);
        }
    }

    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    for face in &faces {
        for w in 0..face.len() {
            let a = face[w];
            let b = face[(w + 1) % face.len()];
            edges.insert((a.min(b), a.max(b)));
        }
    }

    let mut out = String::new();
    writeln!(out, "OFF").unwrap();
    writeln!(out, "{} {} {}", points.len(), faces.len(), edges.len()).unwrap();
    for p in &points {
        writeln!(out, "{} {} {}", p[0], p[1], p[2]).unwrap();
    }
    for face in &faces {
        let listed: Vec<String> = face.iter().map(|i| i.to_string()).collect();
        writeln!(out, "{} {}", face.len(), listed.join(" ")).unwrap();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::document::{run_compute, RunConfigFile};
    use crate::numeric::ratio;

    fn doc_for(dim: usize, ci: Vec<u32>, degrees: Vec<u32>) -> ResultDocument {
        run_compute(&RunConfigFile::from_parts(dim, ci, degrees)).unwrap()
    }

    #[test]
    fn decimal_rendering_is_exact_for_terminating_fractions() {
        assert_eq!(pixel_coord(&ratio(5, 2)).text, "2.5");
        assert_eq!(pixel_coord(&ratio(7, 1)).text, "7");
        assert_eq!(pixel_coord(&ratio(3, 8)).text, "0.375");
        assert_eq!(pixel_coord(&ratio(1, 20)).text, "0.05");
        assert!(pixel_coord(&ratio(3, 8)).exact.is_none());
    }

    #[test]
    fn decimal_rendering_rounds_and_keeps_exact_value() {
        let c = pixel_coord(&ratio(980, 3));
        assert_eq!(c.text, "326.6667");
        assert_eq!(c.exact.as_deref(), Some("980/3"));
        let c = pixel_coord(&ratio(1, 3));
        assert_eq!(c.text, "0.3333");
        let c = pixel_coord(&ratio(2, 3));
        assert_eq!(c.text, "0.6667");
    }

    #[test]
    fn svg_requires_two_boundaries() {
        let doc = doc_for(3, vec![], vec![3]);
        assert_eq!(
            render_polygon_svg(&doc, 400).unwrap_err(),
            RenderError::WrongDimension { expected: 2, found: 1 }
        );
    }

    #[test]
    fn mesh_requires_three_boundaries() {
        let doc = doc_for(3, vec![], vec![2, 1]);
        assert_eq!(
            render_polytope_mesh(&doc).unwrap_err(),
            RenderError::WrongDimension { expected: 3, found: 2 }
        );
    }

    #[test]
    fn svg_output_is_deterministic_and_well_formed() {
        let doc = doc_for(3, vec![], vec![2, 1]);
        let first = render_polygon_svg(&doc, 400).unwrap();
        let second = render_polygon_svg(&doc, 400).unwrap();
        assert_eq!(first, second);
        assert!(first.starts_with("<svg "));
        assert!(first.trim_end().ends_with("</svg>"));
        assert_eq!(first.matches("<circle").count(), 3);
        assert!(first.contains("<polygon"));
        assert!(first.contains("(3/4, 1/2)"));
        // 3/4 of 400 plus the margin lands on an exact pixel.
        assert!(first.contains("cx=\"360\""));
    }

    #[test]
    fn svg_scale_changes_geometry() {
        let doc = doc_for(3, vec![], vec![2, 1]);
        let small = render_polygon_svg(&doc, 200).unwrap();
        assert!(small.contains("width=\"320\""));
        assert!(small.contains("cx=\"210\""));
    }

    #[test]
    fn mesh_output_for_three_quadrics() {
        let doc = doc_for(3, vec![], vec![2, 2, 2]);
        let off = render_polytope_mesh(&doc).unwrap();
        let again = render_polytope_mesh(&doc).unwrap();
        assert_eq!(off, again);
        let mut lines = off.lines();
        assert_eq!(lines.next(), Some("OFF"));
        let counts: Vec<usize> = lines
            .next()
            .unwrap()
            .split_whitespace()
            .map(|t| t.parse().unwrap())
            .collect();
        assert_eq!(counts[0], 7);
        let vertex_lines: Vec<&str> = off.lines().skip(2).take(7).collect();
        assert_eq!(vertex_lines[0], "0/1 0/1 0/1");
        assert_eq!(vertex_lines[1], "0/1 0/1 2/3");
        // Euler relation for a closed surface of genus zero.
        assert_eq!(counts[0] + counts[1], counts[2] + 2);
    }

    #[test]
    fn mesh_faces_reference_valid_vertices_and_close_up() {
        let doc = doc_for(4, vec![2], vec![1, 1, 1]);
        let off = render_polytope_mesh(&doc).unwrap();
        let counts: Vec<usize> = off
            .lines()
            .nth(1)
            .unwrap()
            .split_whitespace()
            .map(|t| t.parse().unwrap())
            .collect();
        let (v, f, e) = (counts[0], counts[1], counts[2]);
        assert_eq!(v, 8);
        assert_eq!(v + f, e + 2);
        for line in off.lines().skip(2 + v) {
            let fields: Vec<usize> = line.split_whitespace().map(|t| t.parse().unwrap()).collect();
            assert_eq!(fields.len(), fields[0] + 1);
            for &idx in &fields[1..] {
                assert!(idx < v);
            }
        }
    }
}
