//! Hyperelliptic curves y^2 = prod (z - l_i), their holomorphic
//! differentials, homology cycles, period matrices, and the Abel-Jacobi map.

mod abel;
pub mod cuts;
pub mod cycles;
mod periods;

pub use abel::{abel_jacobi, JacobianPoint, Sheet};
pub use periods::{normalize_periods, period_matrix, period_matrix_with_nodes, PeriodMatrix, PeriodResiduals};

use cuts::RealCutSystem;
use cycles::{is_standard_symplectic, pairing_matrix, standard_contours, Contour};
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CurveError {
    #[error("branch points {0} and {1} coincide within merge tolerance")]
    DuplicateBranchPoint(usize, usize),
    #[error("expected an odd number (2g+1) of finite branch points, got {0}")]
    EvenCount(usize),
    #[error("quadrature error estimate not met: {0}")]
    QuadratureFailure(String),
    #[error("left g x g block of the raw period matrix is singular")]
    SingularABlock,
    #[error("path planner could not clear a branch point: {0}")]
    PathThroughBranchPoint(String),
    #[error("cycle construction failed: {0}")]
    CycleConstruction(String),
    #[error("complex branch points are only supported for genus 1: {0}")]
    ComplexBranchPoints(String),
}

/// A hyperelliptic curve of genus g given by its 2g+1 finite branch points;
/// infinity is always the remaining branch point.
#[derive(Debug, Clone)]
pub struct HyperellipticCurve {
    genus: usize,
    /// Sorted lexicographically by (re, im).
    branch_points: Vec<Complex64>,
    all_real: bool,
}

/// Holomorphic differential z^power dz / y.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Differential {
    pub power: usize,
}

/// Validates a branch-point list and builds the curve.
pub fn new_curve(branch_points: &[Complex64]) -> Result<HyperellipticCurve, CurveError> {
    let n = branch_points.len();
    if n < 3 || n % 2 == 0 {
        return Err(CurveError::EvenCount(n));
    }
    let scale = branch_points
        .iter()
        .map(|l| l.norm())
        .fold(1.0f64, f64::max);
    let merge_tol = 1e-12 * scale;
    for i in 0..n {
        for j in (i + 1)..n {
            if (branch_points[i] - branch_points[j]).norm() <= merge_tol {
                return Err(CurveError::DuplicateBranchPoint(i, j));
            }
        }
    }
    let mut sorted = branch_points.to_vec();
    sorted.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
    });
    let all_real = sorted.iter().all(|l| l.im == 0.0);
    let genus = (n - 1) / 2;
    if !all_real && genus > 1 {
        return Err(CurveError::ComplexBranchPoints(format!(
            "got genus {genus}; higher-genus cut bookkeeping needs real-ordered branch points"
        )));
    }
    Ok(HyperellipticCurve {
        genus,
        branch_points: sorted,
        all_real,
    })
}

impl HyperellipticCurve {
    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn branch_points(&self) -> &[Complex64] {
        &self.branch_points
    }

    pub fn is_real_ordered(&self) -> bool {
        self.all_real
    }

    /// F(z) = prod (z - l_i).
    pub fn f(&self, z: Complex64) -> Complex64 {
        self.branch_points.iter().map(|&l| z - l).product()
    }

    pub(crate) fn cut_system(&self) -> Result<RealCutSystem, CurveError> {
        if !self.all_real {
            return Err(CurveError::ComplexBranchPoints(
                "cut system requires real-ordered branch points".into(),
            ));
        }
        Ok(RealCutSystem::new(
            self.branch_points.iter().map(|l| l.re).collect(),
        ))
    }
}

/// The standard basis z^{k-1} dz / y, k = 1..g.
pub fn holomorphic_basis(curve: &HyperellipticCurve) -> Vec<Differential> {
    (0..curve.genus()).map(|power| Differential { power }).collect()
}

/// Homology basis with the symplectic pairing certified combinatorially.
#[derive(Debug, Clone)]
pub struct CycleBasis {
    pub a_cycles: Vec<Contour>,
    pub b_cycles: Vec<Contour>,
    /// Exact integer pairing matrix in the order (A_1..A_g, B_1..B_g).
    pub pairing: Vec<Vec<i64>>,
}

impl CycleBasis {
    /// True for the genus-1 complex-branch-point marker basis, where the
    /// period route integrates branch-point segments directly and the
    /// orientation is pinned by Im Z > 0 instead of a combinatorial pairing.
    pub fn is_elliptic_marker(&self) -> bool {
        self.a_cycles.is_empty()
    }
}

/// Builds the canonical cycles and certifies <A_i,B_j> = delta_ij exactly.
///
/// The construction orients each B_i so the pairing comes out as the
/// standard form; if the certified pairing still differs, the construction
/// itself is wrong and an error is returned rather than trusted.
pub fn build_cycles(curve: &HyperellipticCurve) -> Result<CycleBasis, CurveError> {
    if !curve.is_real_ordered() {
        return Ok(CycleBasis {
            a_cycles: vec![],
            b_cycles: vec![],
            pairing: vec![],
        });
    }
    let cuts = curve.cut_system()?;
    let (a_cycles, mut b_cycles) = standard_contours(&cuts)?;
    let g = curve.genus();
    let mut pairing = pairing_matrix(&a_cycles, &b_cycles)?;
    for i in 0..g {
        if pairing[i][g + i] == -1 {
            b_cycles[i] = b_cycles[i].reversed();
        }
    }
    pairing = pairing_matrix(&a_cycles, &b_cycles)?;
    if !is_standard_symplectic(&pairing, g) {
        return Err(CurveError::CycleConstruction(format!(
            "pairing matrix is not the standard symplectic form: {pairing:?}"
        )));
    }
    Ok(CycleBasis {
        a_cycles,
        b_cycles,
        pairing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn real_curve(xs: &[f64]) -> HyperellipticCurve {
        let pts: Vec<Complex64> = xs.iter().map(|&x| c(x, 0.0)).collect();
        new_curve(&pts).unwrap()
    }

    #[test]
    fn smallest_curves() {
        assert_eq!(real_curve(&[0.0, 1.0, 2.0]).genus(), 1);
        assert_eq!(real_curve(&[0.0, 1.0, 2.0, 3.0, 4.0]).genus(), 2);
    }

    #[test]
    fn duplicate_branch_points_rejected() {
        let pts = [c(0.0, 0.0), c(1.0, 0.0), c(1.0 + 1e-15, 0.0)];
        assert!(matches!(
            new_curve(&pts),
            Err(CurveError::DuplicateBranchPoint(_, _))
        ));
    }

    #[test]
    fn even_count_rejected() {
        let pts = [c(0.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)];
        assert!(matches!(new_curve(&pts), Err(CurveError::EvenCount(4))));
    }

    #[test]
    fn basis_powers() {
        for g in 1..=3 {
            let xs: Vec<f64> = (0..2 * g + 1).map(|i| i as f64).collect();
            let basis = holomorphic_basis(&real_curve(&xs));
            assert_eq!(basis.len(), g);
            assert_eq!(basis.last().unwrap().power, g - 1);
        }
    }

    #[test]
    fn cycle_pairing_is_standard_symplectic() {
        for g in 1..=3 {
            let xs: Vec<f64> = (0..2 * g + 1).map(|i| i as f64).collect();
            let curve = real_curve(&xs);
            let cycles = build_cycles(&curve).unwrap();
            assert!(is_standard_symplectic(&cycles.pairing, g), "g={g}");
        }
    }

    #[test]
    fn cycle_pairing_survives_uneven_spacing() {
        let curve = real_curve(&[-3.0, -2.9, 0.0, 0.2, 7.0]);
        let cycles = build_cycles(&curve).unwrap();
        assert!(is_standard_symplectic(&cycles.pairing, 2));
    }

    #[test]
    fn complex_points_rejected_above_genus_one() {
        let pts = [
            c(0.0, 0.0),
            c(1.0, 0.5),
            c(2.0, 0.0),
            c(3.0, 0.0),
            c(4.0, 0.0),
        ];
        assert!(matches!(
            new_curve(&pts),
            Err(CurveError::ComplexBranchPoints(_))
        ));
    }
}
