//! Homology cycles as closed polylines with sheet labels, and their exact
//! intersection pairing.
//!
//! A contour is a closed polyline in the z-plane. Crossing a branch cut
//! swaps the sheet; every axis crossing is made an explicit vertex so each
//! segment lies entirely in the closed upper or lower half plane and carries
//! a single sheet label. The intersection number of two contours is the
//! signed count of proper segment crossings on equal sheets, evaluated in
//! exact rational arithmetic so the symplectic-pairing check is an integer
//! identity, not a tolerance.

use super::cuts::RealCutSystem;
use super::CurveError;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone)]
pub struct Contour {
    /// Closed polyline; segment k runs vertices[k] -> vertices[k+1 mod n].
    pub vertices: Vec<Complex64>,
    /// Sheet of segment k.
    pub sheets: Vec<u8>,
}

impl Contour {
    /// Builds a contour from a raw closed vertex loop, splitting segments at
    /// real-axis crossings and propagating sheet flips across cuts.
    pub fn from_loop(cuts: &RealCutSystem, raw: &[Complex64]) -> Result<Contour, CurveError> {
        let mut vertices = Vec::new();
        let n = raw.len();
        for k in 0..n {
            let a = raw[k];
            let b = raw[(k + 1) % n];
            vertices.push(a);
            if (a.im > 0.0 && b.im < 0.0) || (a.im < 0.0 && b.im > 0.0) {
                let t = a.im / (a.im - b.im);
                let x = a.re + t * (b.re - a.re);
                vertices.push(Complex64::new(x, 0.0));
            }
        }
        let m = vertices.len();
        let mut sheets = vec![0u8; m];
        let mut sheet = 0u8;
        for k in 0..m {
            sheets[k] = sheet;
            let v = vertices[(k + 1) % m];
            if v.im == 0.0 && cuts.inside_cut(v.re) {
                sheet ^= 1;
            }
        }
        if sheet != 0 {
            return Err(CurveError::CycleConstruction(
                "open sheet monodromy around contour".into(),
            ));
        }
        Ok(Contour { vertices, sheets })
    }

    pub fn reversed(&self) -> Contour {
        let m = self.vertices.len();
        let vertices: Vec<Complex64> = self.vertices.iter().rev().cloned().collect();
        // Segment k of the reversal retraces segment (m-2-k) mod m of the
        // original, so it inherits that segment's sheet.
        let sheets: Vec<u8> = (0..m).map(|k| self.sheets[(2 * m - 2 - k) % m]).collect();
        Contour { vertices, sheets }
    }

    fn segments(&self) -> impl Iterator<Item = (Complex64, Complex64, u8)> + '_ {
        let m = self.vertices.len();
        (0..m).map(move |k| (self.vertices[k], self.vertices[(k + 1) % m], self.sheets[k]))
    }
}

type Q = BigRational;

fn qf(x: f64) -> Q {
    BigRational::from_float(x).expect("finite coordinate")
}

/// Signed intersection number of two contours.
///
/// Degenerate configurations (shared endpoints, collinear overlap on equal
/// sheets) are construction errors, not data, so they are reported instead
/// of resolved.
pub fn intersection_number(c1: &Contour, c2: &Contour) -> Result<i64, CurveError> {
    let mut total = 0i64;
    for (a, b, s1) in c1.segments() {
        for (c, d, s2) in c2.segments() {
            if s1 != s2 {
                continue;
            }
            total += segment_crossing_sign(a, b, c, d)?;
        }
    }
    Ok(total)
}

/// Sign of the proper crossing of segment a->b with c->d (0 if disjoint).
fn segment_crossing_sign(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
) -> Result<i64, CurveError> {
    let (ax, ay) = (qf(a.re), qf(a.im));
    let (bx, by) = (qf(b.re), qf(b.im));
    let (cx, cy) = (qf(c.re), qf(c.im));
    let (dx, dy) = (qf(d.re), qf(d.im));
    let rx = &bx - &ax;
    let ry = &by - &ay;
    let sx = &dx - &cx;
    let sy = &dy - &cy;
    let denom = &rx * &sy - &ry * &sx;
    let acx = &cx - &ax;
    let acy = &cy - &ay;
    if denom.is_zero() {
        // Parallel. Overlap of collinear same-sheet segments would make the
        // pairing ill-defined; detect and refuse.
        let cross = &acx * &ry - &acy * &rx;
        if cross.is_zero() && collinear_overlap(&ax, &ay, &bx, &by, &cx, &cy, &dx, &dy) {
            return Err(CurveError::CycleConstruction(
                "collinear overlapping contour segments".into(),
            ));
        }
        return Ok(0);
    }
    // a + t r = c + u s
    let t = (&acx * &sy - &acy * &sx) / denom.clone();
    let u = (&acx * &ry - &acy * &rx) / denom.clone();
    let zero = Q::zero();
    let one = Q::one();
    let t_inside = t > zero && t < one;
    let u_inside = u > zero && u < one;
    if t_inside && u_inside {
        return Ok(if denom.is_positive() { 1 } else { -1 });
    }
    let t_touch = t == zero || t == one;
    let u_touch = u == zero || u == one;
    if (t_touch && (u_inside || u_touch)) || (u_touch && t_inside) {
        return Err(CurveError::CycleConstruction(
            "contour segments touch at an endpoint".into(),
        ));
    }
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn collinear_overlap(ax: &Q, ay: &Q, bx: &Q, by: &Q, cx: &Q, cy: &Q, dx: &Q, dy: &Q) -> bool {
    // Project onto the dominant axis of a->b and test interval overlap.
    let horizontal = (bx - ax).abs() >= (by - ay).abs();
    let (a, b, c, d) = if horizontal {
        (ax, bx, cx, dx)
    } else {
        (ay, by, cy, dy)
    };
    let (lo1, hi1) = if a <= b { (a, b) } else { (b, a) };
    let (lo2, hi2) = if c <= d { (c, d) } else { (d, c) };
    lo1.max(lo2) < hi1.min(hi2)
}

/// Builds the canonical A/B contours for a real-ordered curve.
///
/// A_i is a rectangle enclosing the i-th finite cut; B_i passes once through
/// the i-th cut and once through the cut to infinity. Heights and right
/// margins are staggered per index so no two contours share a support line.
pub fn standard_contours(cuts: &RealCutSystem) -> Result<(Vec<Contour>, Vec<Contour>), CurveError> {
    let g = cuts.genus();
    let l = &cuts.lambda;
    let spread = l[l.len() - 1] - l[0];
    let base = spread.max(1.0);
    let mut a_cycles = Vec::with_capacity(g);
    let mut b_cycles = Vec::with_capacity(g);
    for i in 0..g {
        let ca = l[2 * i];
        let cb = l[2 * i + 1];
        // Gap boundaries are split 1/3 from the left cut and 1/3 from the
        // right cut so adjacent rectangles never share a support line.
        let left = if i == 0 {
            ca - 0.5 * base
        } else {
            ca - (ca - l[2 * i - 1]) / 3.0
        };
        let right = cb + (l[2 * i + 2] - cb) / 3.0;
        let h = base * (1.0 + (i as f64 + 1.0) / (2.0 * g as f64));
        let rect = vec![
            Complex64::new(left, -h),
            Complex64::new(right, -h),
            Complex64::new(right, h),
            Complex64::new(left, h),
        ];
        a_cycles.push(Contour::from_loop(cuts, &rect)?);

        let m = 0.5 * (ca + cb);
        let reach = l[2 * g] + base * (i as f64 + 1.0) / (2.0 * (g as f64 + 1.0));
        let hb = base * (0.25 + (i as f64 + 1.0) / (4.0 * (g as f64 + 1.0)));
        let snake = vec![
            Complex64::new(m, -hb),
            Complex64::new(reach, -hb),
            Complex64::new(reach, hb),
            Complex64::new(m, hb),
        ];
        b_cycles.push(Contour::from_loop(cuts, &snake)?);
    }
    Ok((a_cycles, b_cycles))
}

/// Full 2g x 2g pairing matrix in the order (A_1..A_g, B_1..B_g).
pub fn pairing_matrix(a: &[Contour], b: &[Contour]) -> Result<Vec<Vec<i64>>, CurveError> {
    let g = a.len();
    let all: Vec<&Contour> = a.iter().chain(b.iter()).collect();
    let n = 2 * g;
    let mut p = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let v = intersection_number(all[i], all[j])?;
            p[i][j] = v;
            p[j][i] = -v;
        }
    }
    Ok(p)
}

/// True when `p` is exactly the standard symplectic form J.
pub fn is_standard_symplectic(p: &[Vec<i64>], g: usize) -> bool {
    let n = 2 * g;
    for i in 0..n {
        for j in 0..n {
            let want = if j == i + g {
                1
            } else if i == j + g {
                -1
            } else {
                0
            };
            if p[i][j] != want {
                return false;
            }
        }
    }
    true
}
