//! Dense exterior algebra on up to 32 anticommuting generators, indexed by
//! bitmask. Small enough for direct wedge expansions; used to build wedge
//! bases and as an independent expansion route in tests.

use num_complex::Complex64;

#[derive(Debug, Clone)]
pub struct MultiVector {
    /// Number of generators.
    pub n: usize,
    /// Coefficient of the sorted monomial for each generator bitmask.
    pub coeffs: Vec<Complex64>,
}

/// Parity of the number of transpositions needed to merge the sorted
/// monomials `s` and `t` (disjoint bitmasks): for each generator in `t`,
/// count the generators of `s` above it.
pub fn merge_sign(s: u32, t: u32) -> f64 {
    let mut swaps = 0u32;
    let mut bits = t;
    while bits != 0 {
        let j = bits.trailing_zeros();
        swaps += (s >> (j + 1)).count_ones();
        bits &= bits - 1;
    }
    if swaps % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

impl MultiVector {
    pub fn zero(n: usize) -> Self {
        assert!(n <= 32);
        MultiVector {
            n,
            coeffs: vec![Complex64::new(0.0, 0.0); 1 << n],
        }
    }

    pub fn scalar(n: usize, value: Complex64) -> Self {
        let mut m = Self::zero(n);
        m.coeffs[0] = value;
        m
    }

    /// The k-th generator as a multivector.
    pub fn generator(n: usize, k: usize) -> Self {
        let mut m = Self::zero(n);
        m.coeffs[1 << k] = Complex64::new(1.0, 0.0);
        m
    }

    pub fn add_term(&mut self, mask: u32, value: Complex64) {
        self.coeffs[mask as usize] += value;
    }

    pub fn wedge(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = Self::zero(self.n);
        for (s, &a) in self.coeffs.iter().enumerate() {
            if a == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (t, &b) in other.coeffs.iter().enumerate() {
                if b == Complex64::new(0.0, 0.0) || (s & t) != 0 {
                    continue;
                }
                let sign = merge_sign(s as u32, t as u32);
                out.coeffs[s | t] += a * b * sign;
            }
        }
        out
    }

    pub fn plus(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (k, &v) in other.coeffs.iter().enumerate() {
            out.coeffs[k] += v;
        }
        out
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        let mut out = self.clone();
        for v in &mut out.coeffs {
            *v *= factor;
        }
        out
    }

    pub fn coeff(&self, mask: u32) -> Complex64 {
        self.coeffs[mask as usize]
    }
}

/// All bitmasks of `bits` bits with exactly `ones` set, ascending.
pub fn masks_with_popcount(bits: usize, ones: usize) -> Vec<u32> {
    (0u32..(1 << bits))
        .filter(|m| m.count_ones() as usize == ones)
        .collect()
}
