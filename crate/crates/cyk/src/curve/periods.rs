//! Period integrals over the certified cycles and their normalization.

use super::cuts::RealCutSystem;
use super::cycles::Contour;
use super::{CurveError, CycleBasis, HyperellipticCurve};
use crate::quad::{self, BASE_NODES};
use nalgebra::DMatrix;
use num_complex::Complex64;

/// Raw and normalized period data.
#[derive(Debug, Clone)]
pub struct PeriodMatrix {
    /// g x 2g, entry (j, i) = integral of omega_j over cycle i, cycles
    /// ordered A_1..A_g, B_1..B_g.
    pub raw: DMatrix<Complex64>,
    /// Z = (A block)^{-1} (B block), symmetric with positive-definite
    /// imaginary part for a correct cycle basis.
    pub normalized: DMatrix<Complex64>,
    pub residuals: PeriodResiduals,
}

#[derive(Debug, Clone, Copy)]
pub struct PeriodResiduals {
    /// max |Z - Z^t|.
    pub symmetry: f64,
    /// Smallest eigenvalue of Im Z.
    pub min_eig_im: f64,
    /// Accumulated quadrature error estimate over all raw entries.
    pub quad_error: f64,
}

impl PeriodMatrix {
    pub fn genus(&self) -> usize {
        self.raw.nrows()
    }

    pub fn a_block(&self) -> DMatrix<Complex64> {
        let g = self.genus();
        self.raw.columns(0, g).into()
    }

    pub fn b_block(&self) -> DMatrix<Complex64> {
        let g = self.genus();
        self.raw.columns(g, g).into()
    }
}

/// Integral of z^power dz / y over one contour, with y continued along it.
pub(crate) fn contour_period(
    cuts: &RealCutSystem,
    contour: &Contour,
    power: usize,
    tol: f64,
    nodes: usize,
) -> Result<(Complex64, f64), CurveError> {
    let m = contour.vertices.len();
    let seg_tol = tol / m as f64;
    let mut total = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    for k in 0..m {
        let a = contour.vertices[k];
        let b = contour.vertices[(k + 1) % m];
        let sheet = contour.sheets[k];
        let f = |z: Complex64| z.powu(power as u32) / cuts.y_on_sheet(z, sheet);
        let integral = quad::adaptive(&f, a, b, seg_tol, nodes).ok_or_else(|| {
            CurveError::QuadratureFailure(format!(
                "segment {a} -> {b} did not meet tolerance {seg_tol:.3e}"
            ))
        })?;
        total += integral.value;
        err += integral.error;
    }
    Ok((total, err))
}

/// Fills the raw g x 2g matrix by quadrature and normalizes it.
pub fn period_matrix(
    curve: &HyperellipticCurve,
    cycles: &CycleBasis,
    tol: f64,
) -> Result<PeriodMatrix, CurveError> {
    period_matrix_with_nodes(curve, cycles, tol, BASE_NODES)
}

/// Same as [`period_matrix`] with an explicit base node count, used to check
/// that the result is stable under reparametrization of the quadrature.
pub fn period_matrix_with_nodes(
    curve: &HyperellipticCurve,
    cycles: &CycleBasis,
    tol: f64,
    nodes: usize,
) -> Result<PeriodMatrix, CurveError> {
    let min_tol = 100.0 * f64::EPSILON;
    if !(tol >= min_tol) {
        return Err(CurveError::QuadratureFailure(format!(
            "tolerance {tol:.3e} below the {min_tol:.3e} floor"
        )));
    }
    let g = curve.genus();
    if curve.is_real_ordered() {
        let cuts = curve.cut_system()?;
        let mut raw = DMatrix::zeros(g, 2 * g);
        let mut quad_error = 0.0;
        let all: Vec<&Contour> = cycles.a_cycles.iter().chain(cycles.b_cycles.iter()).collect();
        for (i, contour) in all.iter().enumerate() {
            for power in 0..g {
                let (value, err) = contour_period(&cuts, contour, power, tol, nodes)?;
                raw[(power, i)] = value;
                quad_error += err;
            }
        }
        let (normalized, residuals) = normalize_with_error(&raw, quad_error)?;
        Ok(PeriodMatrix {
            raw,
            normalized,
            residuals,
        })
    } else {
        elliptic_complex_periods(curve, tol, nodes)
    }
}

/// Genus-1 route for complex branch points.
///
/// The A period is twice the integral over the segment joining the first
/// two branch points, the B period twice the integral over the next
/// segment; each has inverse-square-root endpoint singularities removed by
/// the sine substitution. Only the ratio matters, and the orientation is
/// pinned by Im Z > 0.
fn elliptic_complex_periods(
    curve: &HyperellipticCurve,
    tol: f64,
    nodes: usize,
) -> Result<PeriodMatrix, CurveError> {
    assert_eq!(curve.genus(), 1);
    let l = curve.branch_points();
    let pa = segment_period(l[0], l[1], l[2], tol, nodes)?;
    let pb = segment_period(l[1], l[2], l[0], tol, nodes)?;
    let mut z = pb / pa;
    if z.im < 0.0 {
        z = -z;
    }
    let mut raw = DMatrix::zeros(1, 2);
    raw[(0, 0)] = pa;
    raw[(0, 1)] = pa * z;
    let normalized = DMatrix::from_element(1, 1, z);
    Ok(PeriodMatrix {
        raw,
        normalized,
        residuals: PeriodResiduals {
            symmetry: 0.0,
            min_eig_im: z.im,
            quad_error: tol,
        },
    })
}

/// 2 * integral of dz / sqrt((z-a)(z-b)(z-c)) over the segment a -> b.
///
/// The substitution z = m + r sin(theta) turns sqrt((z-a)(b-z)) into
/// r cos(theta) up to a constant branch factor, leaving an analytic
/// integrand; the remaining factor sqrt(z-c) is continued by principal
/// square roots of (z-c)/(m-c), which stays off the negative real axis
/// because c is not on the segment.
fn segment_period(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    tol: f64,
    nodes: usize,
) -> Result<Complex64, CurveError> {
    let m = (a + b) * 0.5;
    let r = (b - a) * 0.5;
    let mc = m - c;
    // With z = m + r sin(theta) the factor sqrt((z-a)(z-b)) equals
    // +-i r cos(theta) and cancels against dz = r cos(theta) d(theta)
    // exactly, leaving 1 / (i sqrt(z-c)); the residual +- branch constant
    // cancels in the period ratio after the Im Z > 0 normalization.
    let f = |theta: Complex64| {
        let z = m + r * theta.sin();
        let root_c = mc.sqrt() * ((z - c) / mc).sqrt();
        (Complex64::new(0.0, 1.0) * root_c).inv()
    };
    let half_pi = std::f64::consts::FRAC_PI_2;
    let integral = quad::adaptive(
        &f,
        Complex64::new(-half_pi, 0.0),
        Complex64::new(half_pi, 0.0),
        tol,
        nodes,
    )
    .ok_or_else(|| CurveError::QuadratureFailure("elliptic segment integral".into()))?;
    Ok(integral.value * 2.0)
}

/// Normalizes a raw g x 2g period matrix: Z = (A block)^{-1} (B block).
pub fn normalize_periods(
    raw: &DMatrix<Complex64>,
) -> Result<(DMatrix<Complex64>, PeriodResiduals), CurveError> {
    normalize_with_error(raw, 0.0)
}

fn normalize_with_error(
    raw: &DMatrix<Complex64>,
    quad_error: f64,
) -> Result<(DMatrix<Complex64>, PeriodResiduals), CurveError> {
    let g = raw.nrows();
    assert_eq!(raw.ncols(), 2 * g, "raw period matrix must be g x 2g");
    let a: DMatrix<Complex64> = raw.columns(0, g).into();
    let b: DMatrix<Complex64> = raw.columns(g, g).into();
    let lu = a.clone().lu();
    let det = lu.determinant();
    // Scale-aware singularity test on the A block.
    let scale = a.iter().map(|v| v.norm()).fold(0.0f64, f64::max);
    if !det.is_finite() || det.norm() <= 1e-13 * scale.powi(g as i32).max(f64::MIN_POSITIVE) {
        return Err(CurveError::SingularABlock);
    }
    let z = lu.solve(&b).ok_or(CurveError::SingularABlock)?;
    let symmetry = (&z - z.transpose())
        .iter()
        .map(|v| v.norm())
        .fold(0.0, f64::max);
    let im = z.map(|v| v.im);
    let im_sym = (&im + im.transpose()) * 0.5;
    let eig = im_sym.symmetric_eigenvalues();
    let min_eig_im = eig.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok((
        z,
        PeriodResiduals {
            symmetry,
            min_eig_im,
            quad_error,
        },
    ))
}
