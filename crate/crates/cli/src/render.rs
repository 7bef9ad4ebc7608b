//! SVG output. Geometry stays exact until a coordinate is written.

use std::fmt::Write;

use cheby_ramsey_core::plane::PlaneKind;
use cheby_ramsey_core::{PlaneColoring, Point, PointSet, Rational, Scalar};

const PALETTE: [&str; 8] = ["#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3", "#937860", "#da8bc3", "#8c8c8c"];
const OVERLAY: [&str; 4] = ["#000000", "#d62728", "#2ca02c", "#9467bd"];
const PIXELS: u32 = 480;

/// Six significant digits, trailing zeros trimmed.
pub fn num(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return "0".into();
    }
    let mag = v.abs().log10().floor() as i32;
    let s = if mag > 5 {
        let f = 10f64.powi(mag - 5);
        format!("{:.0}", (v / f).round() * f)
    } else {
        format!("{:.*}", (5 - mag) as usize, v)
    };
    let s = if s.contains('.') { s.trim_end_matches('0').trim_end_matches('.').to_string() } else { s };
    if s == "-0" { "0".into() } else { s }
}

fn f(r: &Rational) -> String {
    num(r.to_f64_lossy())
}

/// Header with a y-up frame: a point `(x, y)` is drawn at `(x, -y)`.
fn open(out: &mut String, x0: &Rational, y0: &Rational, w: &Rational, h: &Rational) {
    let top = -(y0.clone() + h.clone());
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{PIXELS}" height="{PIXELS}" viewBox="{} {} {} {}">"#,
        f(x0),
        f(&top),
        f(w),
        f(h)
    );
}

fn color(c: usize) -> &'static str {
    PALETTE[c % PALETTE.len()]
}

fn polygon(out: &mut String, pts: &[Point], fill: &str, class: &str) {
    let coords: Vec<String> = pts.iter().map(|p| format!("{},{}", f(&p.x), f(&-p.y.clone()))).collect();
    let _ = writeln!(out, r#"  <polygon class="{class}" points="{}" fill="{fill}"/>"#, coords.join(" "));
}

fn rect(out: &mut String, x0: &Rational, y0: &Rational, x1: &Rational, y1: &Rational, fill: &str) {
    let _ = writeln!(
        out,
        r#"  <rect class="cell" x="{}" y="{}" width="{}" height="{}" fill="{fill}"/>"#,
        f(x0),
        f(&-y1.clone()),
        f(&(x1.clone() - x0.clone())),
        f(&(y1.clone() - y0.clone()))
    );
}

/// Consecutive `[lo, hi)` pieces of `[0, limit)` on which a periodic line
/// coloring is constant, with their colors.
fn line_pieces(period: &Rational, breaks: &[Rational], colors: &[usize], limit: &Rational) -> Vec<(Rational, Rational, usize)> {
    let mut out = Vec::new();
    let mut base = Rational::from_int(0);
    while base < *limit {
        for (i, b) in breaks.iter().enumerate() {
            let lo = base.clone() + b.clone();
            let hi = base.clone() + breaks.get(i + 1).unwrap_or(period).clone();
            if lo >= *limit {
                break;
            }
            out.push((lo, hi.min(limit.clone()), colors[i]));
        }
        base = base + period.clone();
    }
    out
}

/// Clips a convex polygon to `x + y >= u` (`keep_above`) or `x + y <= u`.
fn clip(poly: &[Point], u: &Rational, keep_above: bool) -> Vec<Point> {
    let side = |p: &Point| {
        let s = p.x.clone() + p.y.clone() - u.clone();
        if keep_above { s } else { -s }
    };
    let zero = Rational::from_int(0);
    let mut out = Vec::new();
    for i in 0..poly.len() {
        let (p, q) = (&poly[i], &poly[(i + 1) % poly.len()]);
        let (sp, sq) = (side(p), side(q));
        if sp >= zero {
            out.push(p.clone());
        }
        if (sp < zero) != (sq < zero) && sp != zero && sq != zero {
            let t = sp.clone() / (sp - sq);
            out.push(Point::new(
                p.x.clone() + (q.x.clone() - p.x.clone()) * t.clone(),
                p.y.clone() + (q.y.clone() - p.y.clone()) * t,
            ));
        }
    }
    out
}

/// The coloring on `[0, w]^2`: stripes for lifts, cells for grids.
pub fn coloring_svg(c: &PlaneColoring, w: &Rational) -> String {
    let zero = Rational::from_int(0);
    let mut out = String::new();
    open(&mut out, &zero, &zero, w, w);
    match c.kind() {
        PlaneKind::Horizontal(line) => {
            for (lo, hi, col) in line_pieces(line.period(), line.breaks(), line.colors(), w) {
                rect(&mut out, &zero, &lo, w, &hi, color(col));
            }
        }
        PlaneKind::Diagonal(line) => {
            let square = [
                Point::new(zero.clone(), zero.clone()),
                Point::new(w.clone(), zero.clone()),
                Point::new(w.clone(), w.clone()),
                Point::new(zero.clone(), w.clone()),
            ];
            let limit = w.clone() + w.clone();
            for (lo, hi, col) in line_pieces(line.period(), line.breaks(), line.colors(), &limit) {
                let band = clip(&clip(&square, &lo, true), &hi, false);
                if band.len() >= 3 {
                    polygon(&mut out, &band, color(col), "stripe");
                }
            }
        }
        PlaneKind::Grid(g) => {
            let mut x = zero.clone();
            let mut col = 0;
            while x < *w {
                let x1 = (x.clone() + g.cell_w().clone()).min(w.clone());
                let mut y = zero.clone();
                let mut row = 0;
                while y < *w {
                    let y1 = (y.clone() + g.cell_h().clone()).min(w.clone());
                    rect(&mut out, &x, &y, &x1, &y1, color(g.table()[row % g.rows()][col % g.cols()]));
                    y = y + g.cell_h().clone();
                    row += 1;
                }
                x = x + g.cell_w().clone();
                col += 1;
            }
        }
    }
    out.push_str("</svg>\n");
    out
}

/// Point markers with each listed copy drawn as a triangle outline.
pub fn points_svg(set: &PointSet, copies: &[[usize; 3]]) -> String {
    let mut out = String::new();
    if set.is_empty() {
        out.push_str(r#"<svg xmlns="http://www.w3.org/2000/svg" width="1" height="1" viewBox="0 0 1 1"></svg>"#);
        out.push('\n');
        return out;
    }
    let pts = set.points();
    let min_x = pts.iter().map(|p| p.x.clone()).min().expect("non-empty");
    let max_x = pts.iter().map(|p| p.x.clone()).max().expect("non-empty");
    let min_y = pts.iter().map(|p| p.y.clone()).min().expect("non-empty");
    let max_y = pts.iter().map(|p| p.y.clone()).max().expect("non-empty");
    let span = (max_x.clone() - min_x.clone()).max(max_y.clone() - min_y.clone()).max(Rational::from_int(1));
    let margin = span.clone() / Rational::from_int(10);
    let side = span.clone() + margin.clone() + margin.clone();
    open(&mut out, &(min_x - margin.clone()), &(min_y - margin), &side, &side);
    let stroke = num(span.to_f64_lossy() / 150.0);
    for (i, e) in copies.iter().enumerate() {
        let coords: Vec<String> = e.iter().map(|&v| format!("{},{}", f(&pts[v].x), f(&-pts[v].y.clone()))).collect();
        let _ = writeln!(
            out,
            r#"  <polygon class="copy" points="{}" fill="none" stroke="{}" stroke-width="{stroke}"/>"#,
            coords.join(" "),
            OVERLAY[i % OVERLAY.len()]
        );
    }
    let r = num(span.to_f64_lossy() / 60.0);
    let on_copy = |v: usize| copies.iter().any(|e| e.contains(&v));
    for (v, p) in pts.iter().enumerate() {
        let class = if on_copy(v) { "point highlighted" } else { "point" };
        let _ = writeln!(out, r#"  <circle class="{class}" cx="{}" cy="{}" r="{r}"/>"#, f(&p.x), f(&-p.y.clone()));
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use cheby_ramsey_core::line::LineColoring;
    use cheby_ramsey_core::plane::{lift, LiftAxis};

    #[test]
    fn six_significant_digits() {
        assert_eq!(num(0.0), "0");
        assert_eq!(num(1.0 / 3.0), "0.333333");
        assert_eq!(num(-2.5), "-2.5");
        assert_eq!(num(1234567.0), "1234570");
        assert_eq!(num(8.0), "8");
    }

    #[test]
    fn diagonal_stripes_have_unit_width() {
        let c = lift(&LineColoring::parity(), LiftAxis::Diagonal);
        let svg = coloring_svg(&c, &Rational::from_int(8));
        assert_eq!(svg.matches("class=\"stripe\"").count(), 16);
        assert!(svg.contains(r#"points="0,0 1,0 0,-1""#));
    }

    #[test]
    fn horizontal_stripes() {
        let c = lift(&LineColoring::parity(), LiftAxis::Horizontal);
        let svg = coloring_svg(&c, &Rational::from_int(4));
        assert_eq!(svg.matches("<rect").count(), 4);
    }

    #[test]
    fn empty_point_set_is_valid_svg() {
        let svg = points_svg(&PointSet::empty(), &[]);
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    }
}
