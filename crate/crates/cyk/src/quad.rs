//! Gauss-Legendre quadrature over complex line segments with adaptive
//! bisection.
//!
//! All contour integrals in this crate reduce to integrals of analytic
//! integrands over straight segments in the complex plane. Endpoint
//! square-root singularities are removed by the callers with explicit
//! substitutions before reaching these rules, so plain Gauss-Legendre
//! converges geometrically here.

use num_complex::Complex64;
use std::sync::OnceLock;

/// Default node count for one panel.
pub const BASE_NODES: usize = 24;

/// Refinement depth bound; past this the error estimate is declared unmet.
const MAX_DEPTH: usize = 24;

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
///
/// Computed once by Newton iteration on the Legendre polynomial; the
/// iteration is deterministic, so repeated calls are bit-identical.
pub fn gauss_legendre(n: usize) -> &'static (Vec<f64>, Vec<f64>) {
    static TABLES: OnceLock<std::sync::Mutex<std::collections::BTreeMap<usize, &'static (Vec<f64>, Vec<f64>)>>> =
        OnceLock::new();
    let tables = TABLES.get_or_init(|| std::sync::Mutex::new(std::collections::BTreeMap::new()));
    let mut guard = tables.lock().unwrap();
    if let Some(t) = guard.get(&n) {
        return t;
    }
    let computed: &'static (Vec<f64>, Vec<f64>) = Box::leak(Box::new(compute_gauss_legendre(n)));
    guard.insert(n, computed);
    computed
}

fn compute_gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi initial guess for the i-th positive root.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, d) = legendre_and_derivative(n, x);
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_and_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
        let (_, d) = legendre_and_derivative(n, 0.0);
        weights[n / 2] = 2.0 / (d * d);
    }
    (nodes, weights)
}

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// One Gauss-Legendre panel for `f` over the segment `a -> b`.
pub fn panel<F: Fn(Complex64) -> Complex64>(f: &F, a: Complex64, b: Complex64, n: usize) -> Complex64 {
    let (nodes, weights) = gauss_legendre(n);
    let mid = (a + b) * 0.5;
    let half = (b - a) * 0.5;
    let mut acc = Complex64::new(0.0, 0.0);
    for (x, w) in nodes.iter().zip(weights.iter()) {
        acc += f(mid + half * *x) * *w;
    }
    acc * half
}

/// Result of an adaptive integration: value plus the accumulated error
/// estimate actually achieved.
#[derive(Debug, Clone, Copy)]
pub struct Integral {
    pub value: Complex64,
    pub error: f64,
}

/// Adaptive Gauss-Legendre over the segment `a -> b`.
///
/// The error estimate on a panel is the difference between the one-panel
/// rule and the two-half-panel rule; panels are bisected until the estimate
/// meets the absolute tolerance. Returns `None` when the bound is not met
/// within the depth limit.
pub fn adaptive<F: Fn(Complex64) -> Complex64>(
    f: &F,
    a: Complex64,
    b: Complex64,
    tol: f64,
    nodes: usize,
) -> Option<Integral> {
    fn recurse<F: Fn(Complex64) -> Complex64>(
        f: &F,
        a: Complex64,
        b: Complex64,
        whole: Complex64,
        tol: f64,
        nodes: usize,
        depth: usize,
    ) -> Option<Integral> {
        let mid = (a + b) * 0.5;
        let left = panel(f, a, mid, nodes);
        let right = panel(f, mid, b, nodes);
        let err = (left + right - whole).norm();
        if err <= tol {
            return Some(Integral { value: left + right, error: err });
        }
        if depth >= MAX_DEPTH {
            return None;
        }
        let l = recurse(f, a, mid, left, tol * 0.5, nodes, depth + 1)?;
        let r = recurse(f, mid, b, right, tol * 0.5, nodes, depth + 1)?;
        Some(Integral { value: l.value + r.value, error: l.error + r.error })
    }
    let whole = panel(f, a, b, nodes);
    recurse(f, a, b, whole, tol, nodes, 0)
}
