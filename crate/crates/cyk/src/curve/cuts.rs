//! Branch-cut bookkeeping for curves with real-ordered branch points.
//!
//! Branch points are sorted ascending and cuts join consecutive pairs:
//! [l0,l1], [l2,l3], ..., plus the ray [l_{2g}, +inf). The reference branch
//!
//! ```text
//! y_ref(z) = prod_i sqrt(l_i - z)        (principal square root per factor)
//! ```
//!
//! is continuous exactly off that cut system: crossing the real axis inside
//! a cut passes an odd number of per-factor discontinuities, crossing in a
//! gap passes an even number. The curve's y is `(-1)^sheet * i * y_ref`,
//! which squares to `prod_i (z - l_i)` on both sheets.

use num_complex::Complex64;

/// Fraction of the smallest branch-point gap used as the clearance radius
/// for paths near branch points.
pub const CLEARANCE_FRACTION: f64 = 1e-3;

#[derive(Debug, Clone)]
pub struct RealCutSystem {
    /// Sorted ascending, length 2g+1.
    pub lambda: Vec<f64>,
    pub min_gap: f64,
}

impl RealCutSystem {
    pub fn new(mut lambda: Vec<f64>) -> Self {
        lambda.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let min_gap = lambda
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(f64::INFINITY, f64::min);
        RealCutSystem { lambda, min_gap }
    }

    pub fn genus(&self) -> usize {
        (self.lambda.len() - 1) / 2
    }

    pub fn clearance(&self) -> f64 {
        CLEARANCE_FRACTION * self.min_gap
    }

    /// True when the real point `x` lies strictly inside a cut (finite cuts
    /// or the ray to infinity). Points at branch points are rejected by the
    /// path planner before this is ever asked.
    pub fn inside_cut(&self, x: f64) -> bool {
        let n = self.lambda.len();
        for i in (0..n - 1).step_by(2) {
            if x > self.lambda[i] && x < self.lambda[i + 1] {
                return true;
            }
        }
        x > self.lambda[n - 1]
    }

    /// Reference branch, continuous off the cut system. On the real axis the
    /// lower-side limit (Im z -> 0^-) is used, factor by factor.
    pub fn y_ref(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(1.0, 0.0);
        for &l in &self.lambda {
            let w = Complex64::new(l, 0.0) - z;
            if z.im == 0.0 && w.re < 0.0 {
                // Lower-side limit: sqrt(-a + i0) = i sqrt(a).
                acc *= Complex64::new(0.0, (-w.re).sqrt());
            } else {
                acc *= w.sqrt();
            }
        }
        acc
    }

    /// y on the given sheet: `(-1)^sheet * i * y_ref(z)`.
    pub fn y_on_sheet(&self, z: Complex64, sheet: u8) -> Complex64 {
        let base = Complex64::new(0.0, 1.0) * self.y_ref(z);
        if sheet % 2 == 0 {
            base
        } else {
            -base
        }
    }

    pub fn nearest_branch_distance(&self, z: Complex64) -> f64 {
        self.lambda
            .iter()
            .map(|&l| (z - Complex64::new(l, 0.0)).norm())
            .fold(f64::INFINITY, f64::min)
    }
}
