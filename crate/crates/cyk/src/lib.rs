//! Numerical and exact machinery for Jacobians of hyperelliptic curves and
//! the moduli of Calabi-Yau double covers of projective space.
//!
//! The crate is organised around five subsystems:
//!
//! * [`curve`] - hyperelliptic curves, homology cycles, period matrices and
//!   the Abel-Jacobi map, all computed by contour quadrature.
//! * [`theta`] - Riemann theta functions with half-integer characteristics
//!   and the translated theta divisors of a hyperelliptic Jacobian.
//! * [`domain`] - the bounded matrix ball of type I, the group SU(g,g), its
//!   symplectic realification, and weight-g Hodge bookkeeping.
//! * [`deform`] - Kodaira-Spencer brackets in exact arithmetic, the
//!   holomorphic volume-form expansion, and Weil-Petersson metric and
//!   curvature estimators.
//! * [`cover`] - exact combinatorics of the branch arrangement, the covering
//!   group, its ramification, and Hodge-number formulas.
//!
//! [`wire`] holds the JSON/string formats shared with the `cyk` command-line
//! tool, and [`acceptance`] bundles the end-to-end verification battery that
//! backs `cyk verify-all`.

pub mod acceptance;
pub mod cover;
pub mod curve;
pub mod deform;
pub mod domain;
pub mod exterior;
pub mod quad;
pub mod theta;
pub mod wire;

pub use num_complex::Complex64;

/// Schema tag embedded in every JSON report.
pub const REPORT_SCHEMA: &str = "cyk/1";
