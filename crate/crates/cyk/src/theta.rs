//! Riemann theta functions with half-integer characteristics and the 2g+2
//! translated theta divisors of a hyperelliptic Jacobian.
//!
//! The series convention is
//!
//! ```text
//! theta[d,e](z, Z) = sum_m exp{ pi i (m+d/2)' Z (m+d/2) + 2 pi i (m+d/2)' (z+e/2) }
//! ```
//!
//! summed over lattice points inside an ellipsoid of the imaginary part,
//! with the radius chosen from the Gaussian tail bound to meet the
//! requested absolute tolerance.

use crate::curve::CurveError;
use crate::curve::{abel_jacobi, HyperellipticCurve, JacobianPoint, PeriodMatrix, Sheet};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ThetaError {
    #[error("imaginary part of the period matrix is not positive definite (min eig {0})")]
    NotPositiveDefinite(f64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

/// Half-integer characteristic: two vectors in {0,1}^g.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaCharacteristic {
    pub delta: Vec<u8>,
    pub epsilon: Vec<u8>,
}

impl ThetaCharacteristic {
    pub fn zero(g: usize) -> Self {
        ThetaCharacteristic {
            delta: vec![0; g],
            epsilon: vec![0; g],
        }
    }

    pub fn new(delta: Vec<u8>, epsilon: Vec<u8>) -> Self {
        assert_eq!(delta.len(), epsilon.len());
        assert!(delta.iter().chain(epsilon.iter()).all(|&b| b <= 1));
        ThetaCharacteristic { delta, epsilon }
    }

    pub fn genus(&self) -> usize {
        self.delta.len()
    }

    /// delta . epsilon mod 2; odd characteristics have odd theta functions.
    pub fn parity(&self) -> u8 {
        self.delta
            .iter()
            .zip(&self.epsilon)
            .map(|(&d, &e)| d * e)
            .sum::<u8>()
            % 2
    }
}

/// All 2^{2g} characteristics in a fixed lexicographic order.
pub fn all_characteristics(g: usize) -> Vec<ThetaCharacteristic> {
    let mut out = Vec::with_capacity(1 << (2 * g));
    for bits in 0..(1u32 << (2 * g)) {
        let delta: Vec<u8> = (0..g).map(|k| ((bits >> k) & 1) as u8).collect();
        let epsilon: Vec<u8> = (0..g).map(|k| ((bits >> (g + k)) & 1) as u8).collect();
        out.push(ThetaCharacteristic { delta, epsilon });
    }
    out
}

/// Value of a truncated theta series plus the truncation data.
#[derive(Debug, Clone, Copy)]
pub struct ThetaValue {
    pub value: Complex64,
    /// Ellipsoid radius used for the truncation.
    pub radius: f64,
    /// Number of lattice terms summed.
    pub terms: usize,
}

/// Evaluates theta[char](z, Z) to absolute accuracy `tol`.
pub fn theta(
    ch: &ThetaCharacteristic,
    z: &DVector<Complex64>,
    zmat: &DMatrix<Complex64>,
    tol: f64,
) -> Result<ThetaValue, ThetaError> {
    let g = ch.genus();
    if z.len() != g || zmat.nrows() != g || zmat.ncols() != g {
        return Err(ThetaError::DimensionMismatch(format!(
            "char genus {g}, z length {}, Z is {}x{}",
            z.len(),
            zmat.nrows(),
            zmat.ncols()
        )));
    }
    let y = {
        let im = zmat.map(|v| v.im);
        (&im + im.transpose()) * 0.5
    };
    let eig = y.clone().symmetric_eigen();
    let min_eig = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
    if min_eig <= 0.0 {
        return Err(ThetaError::NotPositiveDefinite(min_eig));
    }
    let det_y: f64 = eig.eigenvalues.iter().product();

    // Recentering: |term| = prefactor * exp(-pi |n - c|_Y^2) with
    // n = m + delta/2 and c = -Y^{-1} Im z.
    let im_z = z.map(|v| v.im);
    let y_lu = y.clone().lu();
    let c = -(y_lu.solve(&im_z).expect("Y positive definite"));
    let prefactor = (PI * im_z.dot(&(-c.clone()))).exp().max(1.0);

    // Smallest radius whose Gaussian tail bound meets the tolerance. The
    // shell-count coefficient is a deliberate overestimate; the doubling
    // invariant in the tests guards the bound.
    let mut radius = 1.0f64;
    let bound = |r: f64| {
        let shells = 8.0 * g as f64 * (r + 1.0).powi(g as i32 - 1) / det_y.sqrt().min(1.0);
        prefactor * shells * (-PI * min_eig * r * r).exp()
    };
    while bound(radius) > 0.5 * tol && radius < 1e3 {
        radius += 0.25;
    }

    // Enumerate the integer box covering the ellipsoid.
    let half_delta: Vec<f64> = ch.delta.iter().map(|&d| d as f64 / 2.0).collect();
    let w: DVector<Complex64> = DVector::from_iterator(
        g,
        (0..g).map(|k| z[k] + Complex64::new(ch.epsilon[k] as f64 / 2.0, 0.0)),
    );
    let reach = radius / min_eig.sqrt();
    let mut lo = vec![0i64; g];
    let mut hi = vec![0i64; g];
    for k in 0..g {
        let center = c[k] - half_delta[k];
        lo[k] = (center - reach).floor() as i64;
        hi[k] = (center + reach).ceil() as i64;
    }

    let mut value = Complex64::new(0.0, 0.0);
    let mut terms = 0usize;
    let mut m = lo.clone();
    'outer: loop {
        let n: Vec<f64> = (0..g).map(|k| m[k] as f64 + half_delta[k]).collect();
        let mut q = 0.0;
        for i in 0..g {
            for j in 0..g {
                q += (n[i] - c[i]) * y[(i, j)] * (n[j] - c[j]);
            }
        }
        if q <= radius * radius {
            let mut quad = Complex64::new(0.0, 0.0);
            for i in 0..g {
                for j in 0..g {
                    quad += zmat[(i, j)] * n[i] * n[j];
                }
            }
            let mut lin = Complex64::new(0.0, 0.0);
            for i in 0..g {
                lin += w[i] * n[i];
            }
            let exponent = Complex64::new(0.0, PI) * quad + Complex64::new(0.0, 2.0 * PI) * lin;
            value += exponent.exp();
            terms += 1;
        }
        // Lexicographic increment keeps the summation order deterministic.
        for k in (0..g).rev() {
            m[k] += 1;
            if m[k] <= hi[k] {
                continue 'outer;
            }
            m[k] = lo[k];
            if k == 0 {
                break 'outer;
            }
        }
    }
    Ok(ThetaValue {
        value,
        radius,
        terms,
    })
}

/// The 2g+2 translate vectors t_i = AJ(l_i), with the untranslated divisor
/// (base point infinity) in the last slot.
pub fn divisor_translates(
    curve: &HyperellipticCurve,
    periods: &PeriodMatrix,
    tol: f64,
) -> Result<Vec<JacobianPoint>, ThetaError> {
    let mut out = Vec::with_capacity(2 * curve.genus() + 2);
    for &l in curve.branch_points() {
        out.push(abel_jacobi(curve, periods, &[(l, Sheet::Plus)], tol)?);
    }
    out.push(JacobianPoint::zero(curve.genus()));
    Ok(out)
}

/// Membership in the i-th translated theta divisor (1-based index,
/// i = 2g+2 meaning the untranslated divisor).
///
/// Returns the verdict together with the witness ratio |theta| / scale,
/// where the scale is the largest |theta| over a deterministic sample
/// sphere around the argument; theta has no canonical normalization, so
/// membership is necessarily relative.
pub fn is_on_divisor(
    z: &DVector<Complex64>,
    index: usize,
    translates: &[JacobianPoint],
    zmat: &DMatrix<Complex64>,
    tol: f64,
) -> Result<(bool, f64), ThetaError> {
    let g = zmat.nrows();
    assert!(
        (1..=translates.len()).contains(&index),
        "divisor index out of range"
    );
    let ch = ThetaCharacteristic::zero(g);
    let t = &translates[index - 1];
    let arg = z + &t.vector;
    let val = theta(&ch, &arg, zmat, 1e-12)?.value.norm();
    let mut scale = 0.0f64;
    let rho = 0.35;
    for k in 0..g {
        for s in [-1.0, 1.0] {
            for dir in [Complex64::new(rho, 0.0), Complex64::new(0.0, rho)] {
                let mut probe = arg.clone();
                probe[k] += dir * s;
                scale = scale.max(theta(&ch, &probe, zmat, 1e-12)?.value.norm());
            }
        }
    }
    let witness = val / scale.max(f64::MIN_POSITIVE);
    Ok((witness <= tol, witness))
}
