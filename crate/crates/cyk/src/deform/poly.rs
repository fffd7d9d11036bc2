//! Multivariate polynomials over Gaussian rationals, exact throughout.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Gaussian rational scalar.
pub type Gq = Complex<BigRational>;

pub fn gq_int(re: i64, im: i64) -> Gq {
    Complex::new(
        BigRational::from_integer(BigInt::from(re)),
        BigRational::from_integer(BigInt::from(im)),
    )
}

pub fn gq_ratio(num: i64, den: i64) -> Gq {
    Complex::new(
        BigRational::new(BigInt::from(num), BigInt::from(den)),
        BigRational::zero(),
    )
}

/// Polynomial in `vars` holomorphic variables with Gaussian-rational
/// coefficients, keyed by exponent vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    pub vars: usize,
    pub terms: BTreeMap<Vec<u32>, Gq>,
}

impl Poly {
    pub fn zero(vars: usize) -> Self {
        Poly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: usize, value: Gq) -> Self {
        let mut p = Poly::zero(vars);
        if !value.is_zero() {
            p.terms.insert(vec![0; vars], value);
        }
        p
    }

    pub fn monomial(vars: usize, exps: &[u32], value: Gq) -> Self {
        assert_eq!(exps.len(), vars);
        let mut p = Poly::zero(vars);
        if !value.is_zero() {
            p.terms.insert(exps.to_vec(), value);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    fn insert(&mut self, exps: Vec<u32>, value: Gq) {
        if value.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(e) => {
                e.insert(value);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().clone() + value;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.vars, other.vars);
        let mut out = self.clone();
        for (e, v) in &other.terms {
            out.insert(e.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&gq_int(-1, 0)))
    }

    pub fn scale(&self, factor: &Gq) -> Poly {
        if factor.is_zero() {
            return Poly::zero(self.vars);
        }
        let mut out = Poly::zero(self.vars);
        for (e, v) in &self.terms {
            out.terms.insert(e.clone(), v.clone() * factor.clone());
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.vars, other.vars);
        let mut out = Poly::zero(self.vars);
        for (ea, va) in &self.terms {
            for (eb, vb) in &other.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.insert(exps, va.clone() * vb.clone());
            }
        }
        out
    }

    /// Partial derivative with respect to variable `k`.
    pub fn partial(&self, k: usize) -> Poly {
        let mut out = Poly::zero(self.vars);
        for (e, v) in &self.terms {
            if e[k] == 0 {
                continue;
            }
            let mut exps = e.clone();
            exps[k] -= 1;
            let factor = Complex::new(
                BigRational::from_integer(BigInt::from(e[k])),
                BigRational::zero(),
            );
            out.insert(exps, v.clone() * factor);
        }
        out
    }
}

impl std::fmt::Display for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, v)| {
                let mono: String = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &p)| p > 0)
                    .map(|(k, &p)| {
                        if p == 1 {
                            format!("z{}", k + 1)
                        } else {
                            format!("z{}^{}", k + 1, p)
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(" ");
                if mono.is_empty() {
                    format!("({}+{}i)", v.re, v.im)
                } else {
                    format!("({}+{}i) {}", v.re, v.im, mono)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
