//! The bounded domain of type I, the group SU(g,g) preserving the split
//! Hermitian form, its fractional-linear action and symplectic
//! realification, and weight-g Hodge bookkeeping on exterior powers.

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DomainError {
    #[error("matrix is not square: {0}x{1}")]
    NonSquare(usize, usize),
    #[error("point is not in the domain (min eig of I - Z Z* is {0})")]
    NotInDomain(f64),
    #[error("fractional-linear denominator C Z + D is singular")]
    SingularDenominator,
    #[error("pairing symmetry does not match the weight parity (defect {0})")]
    ParityMismatch(f64),
    #[error("Hodge numbers are not conjugation-symmetric: {0:?}")]
    InconsistentDims(Vec<usize>),
    #[error("even weight {0} is only supported for weight 2")]
    UnsupportedEvenWeight(usize),
}

type CMat = DMatrix<Complex64>;

fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Complex dimension of the domain for size g.
pub fn dimension(g: usize) -> usize {
    g * g
}

/// Smallest eigenvalue of the Hermitian matrix I - Z Z*.
pub fn domain_margin(z: &CMat) -> Result<f64, DomainError> {
    if z.nrows() != z.ncols() {
        return Err(DomainError::NonSquare(z.nrows(), z.ncols()));
    }
    let g = z.nrows();
    let m = CMat::identity(g, g) - z * z.adjoint();
    Ok(min_eig_hermitian(&m))
}

/// Membership test: I - Z Z* positive definite beyond `tol`.
pub fn contains(z: &CMat, tol: f64) -> Result<bool, DomainError> {
    Ok(domain_margin(z)? > tol)
}

pub(crate) fn min_eig_hermitian(m: &CMat) -> f64 {
    let h = (m + m.adjoint()) * cx(0.5, 0.0);
    h.symmetric_eigenvalues()
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min)
}

/// The split form H = diag(I_g, -I_g).
pub fn split_form(g: usize) -> CMat {
    let mut h = CMat::identity(2 * g, 2 * g);
    for k in g..2 * g {
        h[(k, k)] = cx(-1.0, 0.0);
    }
    h
}

/// Checks M* H M = H and det M = 1 within `tol`.
pub fn su_check(m: &CMat, tol: f64) -> bool {
    let n = m.nrows();
    if n != m.ncols() || n % 2 != 0 {
        return false;
    }
    let g = n / 2;
    let h = split_form(g);
    let defect = (m.adjoint() * &h * m - &h)
        .iter()
        .map(|v| v.norm())
        .fold(0.0, f64::max);
    if defect > tol {
        return false;
    }
    let det = m.clone().lu().determinant();
    (det - cx(1.0, 0.0)).norm() <= tol
}

fn blocks(m: &CMat) -> (CMat, CMat, CMat, CMat) {
    let g = m.nrows() / 2;
    (
        m.view((0, 0), (g, g)).into(),
        m.view((0, g), (g, g)).into(),
        m.view((g, 0), (g, g)).into(),
        m.view((g, g), (g, g)).into(),
    )
}

/// Fractional-linear action Z' = (A Z + B)(C Z + D)^{-1}.
pub fn act(m: &CMat, z: &CMat) -> Result<CMat, DomainError> {
    let (a, b, c, d) = blocks(m);
    let num = &a * z + &b;
    let den = &c * z + &d;
    let inv = den.try_inverse().ok_or(DomainError::SingularDenominator)?;
    Ok(num * inv)
}

/// Hermitian matrix function via the eigendecomposition.
fn hermitian_map(m: &CMat, f: impl Fn(f64) -> f64) -> CMat {
    let h = (m + m.adjoint()) * cx(0.5, 0.0);
    let eig = h.symmetric_eigen();
    let n = m.nrows();
    let mut diag = CMat::zeros(n, n);
    for k in 0..n {
        diag[(k, k)] = cx(f(eig.eigenvalues[k]), 0.0);
    }
    &eig.eigenvectors * diag * eig.eigenvectors.adjoint()
}

/// Element of SU(g,g) mapping the origin to Z, built from Hermitian inverse
/// square roots; its determinant is one identically.
pub fn transitive_witness(z: &CMat) -> Result<CMat, DomainError> {
    let margin = domain_margin(z)?;
    if margin <= 0.0 {
        return Err(DomainError::NotInDomain(margin));
    }
    let g = z.nrows();
    let id = CMat::identity(g, g);
    let s1 = hermitian_map(&(&id - z * z.adjoint()), |t| 1.0 / t.sqrt());
    let s2 = hermitian_map(&(&id - z.adjoint() * z), |t| 1.0 / t.sqrt());
    let mut m = CMat::zeros(2 * g, 2 * g);
    m.view_mut((0, 0), (g, g)).copy_from(&s1);
    m.view_mut((0, g), (g, g)).copy_from(&(z * &s2));
    m.view_mut((g, 0), (g, g)).copy_from(&(z.adjoint() * &s1));
    m.view_mut((g, g), (g, g)).copy_from(&s2);
    Ok(m)
}

/// Block-diagonal stabilizer element diag(U, V); the caller is responsible
/// for det(U) det(V) = 1.
pub fn block_unitary(u: &CMat, v: &CMat) -> CMat {
    let g = u.nrows();
    let mut m = CMat::zeros(2 * g, 2 * g);
    m.view_mut((0, 0), (g, g)).copy_from(u);
    m.view_mut((g, g), (g, g)).copy_from(v);
    m
}

/// Realification C^{2g} -> R^{4g}, (x + i y) |-> (x, y): a 2g x 2g complex
/// matrix becomes [[Re M, -Im M], [Im M, Re M]].
pub fn embed_sp(m: &CMat) -> DMatrix<f64> {
    let n = m.nrows();
    let mut s = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let v = m[(i, j)];
            s[(i, j)] = v.re;
            s[(i, j + n)] = -v.im;
            s[(i + n, j)] = v.im;
            s[(i + n, j + n)] = v.re;
        }
    }
    s
}

/// The matrix of Im q on the realified space: [[0, -H], [H, 0]] with
/// H = diag(I_g, -I_g).
pub fn symplectic_form(g: usize) -> DMatrix<f64> {
    let n = 2 * g;
    let mut j = DMatrix::zeros(2 * n, 2 * n);
    for k in 0..n {
        let h = if k < g { 1.0 } else { -1.0 };
        j[(k, k + n)] = -h;
        j[(k + n, k)] = h;
    }
    j
}

/// Defect of S' J S = J for the realified symplectic form.
pub fn symplectic_defect(s: &DMatrix<f64>) -> f64 {
    let g = s.nrows() / 4;
    let j = symplectic_form(g);
    (s.transpose() * &j * s - &j)
        .iter()
        .map(|v| v.abs())
        .fold(0.0, f64::max)
}

/// Basis of the graph subspace spanned by the columns of [I ; Z^t], plus its
/// q-orthogonal complement spanned by [conj(Z) ; I]. The form q is positive
/// definite on the first and negative definite on the second.
pub fn graph_subspace(z: &CMat) -> Result<(CMat, CMat), DomainError> {
    let margin = domain_margin(z)?;
    if margin <= 0.0 {
        return Err(DomainError::NotInDomain(margin));
    }
    let g = z.nrows();
    let mut graph = CMat::zeros(2 * g, g);
    let mut compl = CMat::zeros(2 * g, g);
    let zt = z.transpose();
    let zc = z.map(|v| v.conj());
    for k in 0..g {
        graph[(k, k)] = cx(1.0, 0.0);
        compl[(g + k, k)] = cx(1.0, 0.0);
        for r in 0..g {
            graph[(g + r, k)] = zt[(r, k)];
            compl[(r, k)] = zc[(r, k)];
        }
    }
    Ok((graph, compl))
}

/// Gram matrix of the split form q on a set of column vectors.
pub fn q_gram(basis: &CMat) -> CMat {
    let g = basis.nrows() / 2;
    basis.adjoint() * split_form(g) * basis
}

/// One graded piece of a Hodge structure.
#[derive(Debug, Clone)]
pub struct HodgePiece {
    pub p: usize,
    pub q: usize,
    /// Columns span the (p,q) part.
    pub basis: CMat,
}

/// A weight-n Hodge decomposition presented by bases of its pieces.
#[derive(Debug, Clone)]
pub struct HodgeFiltration {
    pub weight: usize,
    pub pieces: Vec<HodgePiece>,
}

impl HodgeFiltration {
    pub fn dims(&self) -> Vec<(usize, usize, usize)> {
        self.pieces
            .iter()
            .map(|p| (p.p, p.q, p.basis.ncols()))
            .collect()
    }

    /// Basis of F^k, the sum of pieces with q <= k.
    pub fn flag(&self, k: usize) -> CMat {
        let rows = self.pieces[0].basis.nrows();
        let cols: usize = self
            .pieces
            .iter()
            .filter(|p| p.q <= k)
            .map(|p| p.basis.ncols())
            .sum();
        let mut out = CMat::zeros(rows, cols);
        let mut at = 0;
        for piece in self.pieces.iter().filter(|p| p.q <= k) {
            out.view_mut((0, at), (rows, piece.basis.ncols()))
                .copy_from(&piece.basis);
            at += piece.basis.ncols();
        }
        out
    }
}

/// Weight-one Hodge structure on C^{4g} induced by the point Z.
///
/// Under the realification, the complexified space splits into a copy of
/// C^{2g} embedded as v |-> (v, -i v) and its conjugate. H^{1,0} collects
/// the graph subspace in the first copy and the q-negative complement in
/// the second, which is exactly where i <w, conj w> is positive for the
/// realified symplectic pairing.
pub fn weight1_hodge(z: &CMat) -> Result<HodgeFiltration, DomainError> {
    let (graph, compl) = graph_subspace(z)?;
    let g = z.nrows();
    let n = 2 * g;
    let mut basis10 = CMat::zeros(2 * n, 2 * g);
    for k in 0..g {
        for r in 0..n {
            let v = graph[(r, k)];
            basis10[(r, k)] = v;
            basis10[(n + r, k)] = cx(0.0, -1.0) * v;
            let u = compl[(r, k)];
            basis10[(r, g + k)] = u;
            basis10[(n + r, g + k)] = cx(0.0, 1.0) * u;
        }
    }
    let basis01 = basis10.map(|v| v.conj());
    Ok(HodgeFiltration {
        weight: 1,
        pieces: vec![
            HodgePiece {
                p: 1,
                q: 0,
                basis: basis10,
            },
            HodgePiece {
                p: 0,
                q: 1,
                basis: basis01,
            },
        ],
    })
}

/// Riemann positivity of the weight-one structure: the Hermitian matrix
/// i <w_j, conj w_k> on H^{1,0} for the realified symplectic pairing.
pub fn weight1_positivity_gram(filtration: &HodgeFiltration) -> CMat {
    let h10 = &filtration.pieces[0].basis;
    let n4 = h10.nrows();
    let j = symplectic_form(n4 / 4).map(|v| cx(v, 0.0));
    let conj = h10.map(|v| v.conj());
    (h10.transpose() * j * conj) * cx(0.0, 1.0)
}

/// Hodge numbers h^{g-p,p} of the g-th exterior power of C^g + conj(C^g),
/// by explicit enumeration of wedge monomials rather than a formula.
pub fn wedge_hodge_dims(g: usize) -> Vec<usize> {
    use itertools::Itertools;
    let mut dims = vec![0usize; g + 1];
    for combo in (0..2 * g).combinations(g) {
        let anti = combo.iter().filter(|&&k| k >= g).count();
        dims[anti] += 1;
    }
    dims
}

/// The sign rule (-i)^{p-q} (-1)^{n(n-1)/2} of the positivity condition.
fn positivity_sign(p: usize, q: usize, weight: usize) -> Complex64 {
    let minus_i = cx(0.0, -1.0);
    let pow = minus_i.powi(p as i32 - q as i32);
    let parity = (weight * weight.saturating_sub(1) / 2) % 2;
    if parity == 1 {
        -pow
    } else {
        pow
    }
}

/// Verifies the polarized positivity and orthogonality conditions of a
/// Hodge decomposition against a bilinear pairing.
///
/// The pairing must have the symmetry (-1)^weight; each piece must make
/// sign(p,q) B^t P conj(B) Hermitian positive definite; and pieces with
/// p != q' must pair to zero under the plain bilinear pairing.
pub fn hodge_positivity_check(
    filtration: &HodgeFiltration,
    pairing: &CMat,
    tol: f64,
) -> Result<bool, DomainError> {
    let n = filtration.weight;
    let parity_sign = if n % 2 == 1 { -1.0 } else { 1.0 };
    let sym_defect = (pairing - pairing.transpose() * cx(parity_sign, 0.0))
        .iter()
        .map(|v| v.norm())
        .fold(0.0, f64::max);
    let scale = pairing.iter().map(|v| v.norm()).fold(0.0, f64::max);
    if sym_defect > tol * scale.max(1.0) {
        return Err(DomainError::ParityMismatch(sym_defect));
    }
    for piece in &filtration.pieces {
        let b = &piece.basis;
        let gram = (b.transpose() * pairing * b.map(|v| v.conj()))
            * positivity_sign(piece.p, piece.q, n);
        let herm_defect = (&gram - gram.adjoint())
            .iter()
            .map(|v| v.norm())
            .fold(0.0, f64::max);
        if herm_defect > 1e-8 * scale.max(1.0) || min_eig_hermitian(&gram) <= 0.0 {
            return Ok(false);
        }
    }
    for a in &filtration.pieces {
        for b in &filtration.pieces {
            if a.p != b.q {
                let cross = a.basis.transpose() * pairing * &b.basis;
                let worst = cross.iter().map(|v| v.norm()).fold(0.0, f64::max);
                if worst > tol * scale.max(1.0) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Real dimension of the moduli space G/K_1 of isotropic-flag filtrations
/// with the given Hodge numbers, listed as h^{n,0}, h^{n-1,1}, ..., h^{0,n}.
///
/// Odd weight n = 2m+1: G = Sp(b, R) and K_1 is a product of unitary
/// groups, one per conjugate pair of pieces. Even weight is implemented for
/// weight 2 only, where G = SO(2 h^{2,0}, h^{1,1}) and the orthogonal
/// factor of K_1 acts on the middle piece.
pub fn vhs_moduli_dimension(weight: usize, dims: &[usize]) -> Result<usize, DomainError> {
    if dims.len() != weight + 1 {
        return Err(DomainError::InconsistentDims(dims.to_vec()));
    }
    for k in 0..dims.len() {
        if dims[k] != dims[weight - k] {
            return Err(DomainError::InconsistentDims(dims.to_vec()));
        }
    }
    let b: usize = dims.iter().sum();
    if weight % 2 == 1 {
        let m = (weight - 1) / 2;
        if b % 2 != 0 {
            return Err(DomainError::InconsistentDims(dims.to_vec()));
        }
        let dim_g = b * (b + 1) / 2;
        let dim_k: usize = (0..=m).map(|k| dims[k] * dims[k]).sum();
        Ok(dim_g - dim_k)
    } else {
        if weight != 2 {
            return Err(DomainError::UnsupportedEvenWeight(weight));
        }
        let m1 = 2 * dims[0];
        let m2 = dims[1];
        let total = m1 + m2;
        let dim_g = total * (total - 1) / 2;
        let dim_k = dims[0] * dims[0] + m2 * m2.saturating_sub(1) / 2;
        Ok(dim_g - dim_k)
    }
}

/// Pseudo-random element of SU(g,g): a stabilizer rotation sandwiched
/// between two transvections.
pub fn random_su_element(g: usize, rng: &mut impl rand::Rng) -> CMat {
    let z1 = random_domain_point(g, 0.7, rng);
    let z2 = random_domain_point(g, 0.7, rng);
    let u = random_unitary(g, rng);
    let mut v = random_unitary(g, rng);
    // Scale one column of V so det(U) det(V) = 1 while staying unitary.
    let det = u.clone().lu().determinant() * v.clone().lu().determinant();
    let phase = det / det.norm();
    for r in 0..g {
        v[(r, g - 1)] /= phase;
    }
    let w1 = transitive_witness(&z1).expect("interior point");
    let w2 = transitive_witness(&z2).expect("interior point");
    w1 * block_unitary(&u, &v) * w2
}

/// Random point with operator norm bounded by `radius` < 1.
pub fn random_domain_point(g: usize, radius: f64, rng: &mut impl rand::Rng) -> CMat {
    let raw = CMat::from_fn(g, g, |_, _| {
        cx(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    // The Frobenius norm dominates the operator norm.
    let frob = raw.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    raw * cx(radius * rng.gen_range(0.1..1.0) / frob.max(1e-9), 0.0)
}

pub(crate) fn random_unitary(g: usize, rng: &mut impl rand::Rng) -> CMat {
    let raw = CMat::from_fn(g, g, |_, _| {
        cx(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    let qr = raw.qr();
    let q = qr.q();
    let r = qr.r();
    let mut out = q.clone();
    for k in 0..g {
        let d = r[(k, k)];
        if d.norm() > 0.0 {
            let phase = d / d.norm();
            for row in 0..g {
                out[(row, k)] *= phase;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn scalar_domain_membership() {
        let z = CMat::from_element(1, 1, cx(0.5, 0.0));
        assert!(contains(&z, 1e-12).unwrap());
        let boundary = CMat::identity(3, 3);
        assert!(!contains(&boundary, 1e-12).unwrap());
    }

    #[test]
    fn norm_bound_implies_membership() {
        let mut rng = StdRng::seed_from_u64(3);
        for g in 1..=3 {
            for _ in 0..20 {
                let z = random_domain_point(g, 0.9, &mut rng);
                assert!(contains(&z, 0.0).unwrap());
            }
        }
    }

    #[test]
    fn non_square_rejected() {
        let z = CMat::zeros(2, 3);
        assert!(matches!(contains(&z, 0.0), Err(DomainError::NonSquare(2, 3))));
    }

    #[test]
    fn su_check_identity_and_stabilizer() {
        for g in 1..=3 {
            assert!(su_check(&CMat::identity(2 * g, 2 * g), 1e-12));
        }
        let mut rng = StdRng::seed_from_u64(5);
        let g = 2;
        let u = random_unitary(g, &mut rng);
        let mut v = random_unitary(g, &mut rng);
        let det = u.clone().lu().determinant() * v.clone().lu().determinant();
        let phase = det / det.norm();
        for r in 0..g {
            v[(r, g - 1)] /= phase;
        }
        assert!(su_check(&block_unitary(&u, &v), 1e-10));
    }

    #[test]
    fn split_form_itself_fails_for_odd_g() {
        // H preserves the form but det H = (-1)^g.
        assert!(!su_check(&split_form(1), 1e-12));
        assert!(!su_check(&split_form(3), 1e-12));
        assert!(su_check(&split_form(2), 1e-12));
    }

    #[test]
    fn action_identity_and_stabilizer_of_origin() {
        let mut rng = StdRng::seed_from_u64(7);
        let g = 2;
        let z = random_domain_point(g, 0.8, &mut rng);
        let id = CMat::identity(2 * g, 2 * g);
        let back = act(&id, &z).unwrap();
        assert!((&back - &z).iter().map(|v| v.norm()).fold(0.0, f64::max) < 1e-14);
        let u = random_unitary(g, &mut rng);
        let v = random_unitary(g, &mut rng);
        let origin = CMat::zeros(g, g);
        let moved = act(&block_unitary(&u, &v), &origin).unwrap();
        assert!(moved.iter().map(|v| v.norm()).fold(0.0, f64::max) < 1e-14);
    }

    #[test]
    fn action_preserves_domain_and_composes() {
        let mut rng = StdRng::seed_from_u64(9);
        for g in 1..=3 {
            for _ in 0..10 {
                let m1 = random_su_element(g, &mut rng);
                let m2 = random_su_element(g, &mut rng);
                let z = random_domain_point(g, 0.8, &mut rng);
                let moved = act(&m1, &z).unwrap();
                assert!(contains(&moved, 0.0).unwrap(), "g={g} left the domain");
                let lhs = act(&(&m1 * &m2), &z).unwrap();
                let rhs = act(&m1, &act(&m2, &z).unwrap()).unwrap();
                let diff = (&lhs - &rhs).iter().map(|v| v.norm()).fold(0.0, f64::max);
                assert!(diff < 1e-10, "composition defect {diff}");
            }
        }
    }

    #[test]
    fn witness_roundtrip() {
        let mut rng = StdRng::seed_from_u64(13);
        for g in 1..=3 {
            let origin = CMat::zeros(g, g);
            let w0 = transitive_witness(&origin).unwrap();
            assert!(
                (&w0 - CMat::identity(2 * g, 2 * g))
                    .iter()
                    .map(|v| v.norm())
                    .fold(0.0, f64::max)
                    < 1e-12
            );
            for _ in 0..10 {
                let z = random_domain_point(g, 0.85, &mut rng);
                let w = transitive_witness(&z).unwrap();
                assert!(su_check(&w, 1e-10), "witness not in SU(g,g)");
                let back = act(&w, &CMat::zeros(g, g)).unwrap();
                let diff = (&back - &z).iter().map(|v| v.norm()).fold(0.0, f64::max);
                assert!(diff < 1e-12, "roundtrip defect {diff}");
            }
        }
        let half = CMat::from_element(1, 1, cx(0.5, 0.0));
        let w = transitive_witness(&half).unwrap();
        let back = act(&w, &CMat::zeros(1, 1)).unwrap();
        assert!((back[(0, 0)] - cx(0.5, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn witness_rejects_boundary() {
        let z = CMat::identity(2, 2);
        assert!(matches!(
            transitive_witness(&z),
            Err(DomainError::NotInDomain(_))
        ));
    }

    #[test]
    fn realification_is_symplectic_homomorphism() {
        let mut rng = StdRng::seed_from_u64(17);
        for g in 1..=3 {
            let id = embed_sp(&CMat::identity(2 * g, 2 * g));
            assert!((&id - DMatrix::identity(4 * g, 4 * g)).norm() < 1e-14);
            for _ in 0..8 {
                let m1 = random_su_element(g, &mut rng);
                let m2 = random_su_element(g, &mut rng);
                let s1 = embed_sp(&m1);
                assert!(symplectic_defect(&s1) < 1e-10, "not symplectic");
                let product = embed_sp(&(&m1 * &m2));
                let composed = &s1 * embed_sp(&m2);
                assert!((product - composed).norm() < 1e-9, "not a homomorphism");
            }
            // Stabilizer elements realify to orthogonal symplectic matrices.
            let u = random_unitary(g, &mut rng);
            let v = random_unitary(g, &mut rng);
            let s = embed_sp(&block_unitary(&u, &v));
            assert!((s.transpose() * &s - DMatrix::identity(4 * g, 4 * g)).norm() < 1e-10);
            assert!(symplectic_defect(&s) < 1e-10);
        }
    }

    #[test]
    fn graph_subspace_signs() {
        let mut rng = StdRng::seed_from_u64(19);
        for g in 1..=3 {
            let z = random_domain_point(g, 0.8, &mut rng);
            let (graph, compl) = graph_subspace(&z).unwrap();
            assert!(min_eig_hermitian(&q_gram(&graph)) > 0.0);
            let neg = q_gram(&compl);
            let max_eig = -min_eig_hermitian(&(-neg));
            assert!(max_eig < 0.0, "complement not negative definite");
        }
        let z0 = CMat::zeros(2, 2);
        let (graph, _) = graph_subspace(&z0).unwrap();
        let gram = q_gram(&graph);
        assert!(
            (gram - CMat::identity(2, 2))
                .iter()
                .map(|v| v.norm())
                .fold(0.0, f64::max)
                < 1e-14
        );
    }

    #[test]
    fn graph_gram_degenerates_at_boundary() {
        let z = CMat::from_element(1, 1, cx(0.999, 0.0));
        let (graph, _) = graph_subspace(&z).unwrap();
        let m = min_eig_hermitian(&q_gram(&graph));
        assert!(m > 0.0 && m < 3e-3);
    }

    #[test]
    fn weight_one_structure_is_positive() {
        let mut rng = StdRng::seed_from_u64(23);
        for g in 1..=3 {
            for _ in 0..5 {
                let z = random_domain_point(g, 0.85, &mut rng);
                let filt = weight1_hodge(&z).unwrap();
                assert_eq!(filt.pieces[0].basis.ncols(), 2 * g, "h^(1,0) = 2g");
                let gram = weight1_positivity_gram(&filt);
                assert!(min_eig_hermitian(&gram) > 0.0, "positivity failed");
            }
        }
        // Z = 0 gives the reference filtration: the Gram is 2 I.
        let filt = weight1_hodge(&CMat::zeros(2, 2)).unwrap();
        let gram = weight1_positivity_gram(&filt);
        assert!(
            (gram - CMat::identity(4, 4) * cx(2.0, 0.0))
                .iter()
                .map(|v| v.norm())
                .fold(0.0, f64::max)
                < 1e-13
        );
    }

    #[test]
    fn wedge_dims_match_binomial_squares() {
        fn binom(n: usize, k: usize) -> usize {
            let mut r = 1usize;
            for i in 0..k {
                r = r * (n - i) / (i + 1);
            }
            r
        }
        assert_eq!(wedge_hodge_dims(1), vec![1, 1]);
        assert_eq!(wedge_hodge_dims(3), vec![1, 9, 9, 1]);
        assert_eq!(wedge_hodge_dims(4), vec![1, 16, 36, 16, 1]);
        for g in 1..=6 {
            let dims = wedge_hodge_dims(g);
            for (p, &d) in dims.iter().enumerate() {
                let b = binom(g, p);
                assert_eq!(d, b * b, "g={g} p={p}");
            }
            let total: usize = dims.iter().sum();
            assert_eq!(total, binom(2 * g, g));
        }
    }

    #[test]
    fn moduli_dimensions() {
        // Weight 1 with h^{1,0} = 2g: Sp(4g)/U(2g) has real dimension
        // 2g(2g+1); cross-checked against the group dimensions directly.
        for g in 1..=4 {
            let got = vhs_moduli_dimension(1, &[2 * g, 2 * g]).unwrap();
            assert_eq!(got, 2 * g * (2 * g + 1));
            let b = 4 * g;
            let dim_sp = b * (b + 1) / 2;
            let dim_u = (2 * g) * (2 * g);
            assert_eq!(got, dim_sp - dim_u);
        }
        // Upper half plane.
        assert_eq!(vhs_moduli_dimension(1, &[1, 1]).unwrap(), 2);
        // Weight 3 with h^{3,0} = 1, h^{2,1} = g^2: expanding the formula,
        // (1+g^2)(2(1+g^2)+1) - 1 - g^4 = g^4 + 5 g^2 + 2.
        for g in 1..=4usize {
            let got = vhs_moduli_dimension(3, &[1, g * g, g * g, 1]).unwrap();
            assert_eq!(got, g.pow(4) + 5 * g * g + 2);
        }
        // Weight 2 sanity check: SO(2,19)/(U(1) x SO(19)) has dimension 38.
        assert_eq!(vhs_moduli_dimension(2, &[1, 19, 1]).unwrap(), 38);
        assert!(matches!(
            vhs_moduli_dimension(1, &[2, 3]),
            Err(DomainError::InconsistentDims(_))
        ));
        assert!(matches!(
            vhs_moduli_dimension(4, &[1, 2, 3, 2, 1]),
            Err(DomainError::UnsupportedEvenWeight(4))
        ));
    }

    #[test]
    fn domain_dimension_is_g_squared() {
        for g in 1..=6 {
            assert_eq!(dimension(g), g * g);
        }
    }

    /// Weight-1 structure of an elliptic curve in the real homology basis:
    /// H^{1,0} spanned by (1, Z), pairing [[0,-1],[1,0]].
    fn elliptic_filtration(z: Complex64, swapped: bool) -> (HodgeFiltration, CMat) {
        let omega = CMat::from_column_slice(2, 1, &[cx(1.0, 0.0), z]);
        let omega_bar = omega.map(|v| v.conj());
        let (p0, q0) = if swapped { (0, 1) } else { (1, 0) };
        let filt = HodgeFiltration {
            weight: 1,
            pieces: vec![
                HodgePiece {
                    p: p0,
                    q: q0,
                    basis: omega,
                },
                HodgePiece {
                    p: q0,
                    q: p0,
                    basis: omega_bar,
                },
            ],
        };
        let pairing = CMat::from_row_slice(2, 2, &[cx(0.0, 0.0), cx(-1.0, 0.0), cx(1.0, 0.0), cx(0.0, 0.0)]);
        (filt, pairing)
    }

    #[test]
    fn positivity_check_on_elliptic_periods() {
        use crate::curve::{build_cycles, new_curve, period_matrix};
        let pts: Vec<Complex64> = [0.0, 1.0, 2.0].iter().map(|&x| cx(x, 0.0)).collect();
        let curve = new_curve(&pts).unwrap();
        let cycles = build_cycles(&curve).unwrap();
        let pm = period_matrix(&curve, &cycles, 1e-10).unwrap();
        let z = pm.normalized[(0, 0)];
        let (filt, pairing) = elliptic_filtration(z, false);
        assert!(hodge_positivity_check(&filt, &pairing, 1e-10).unwrap());
        // Swapping the two pieces flips the sign rule.
        let (swapped, pairing) = elliptic_filtration(z, true);
        assert!(!hodge_positivity_check(&swapped, &pairing, 1e-10).unwrap());
    }

    #[test]
    fn parity_mismatch_is_reported() {
        let (filt, _) = elliptic_filtration(cx(0.3, 1.1), false);
        let symmetric = CMat::identity(2, 2);
        assert!(matches!(
            hodge_positivity_check(&filt, &symmetric, 1e-10),
            Err(DomainError::ParityMismatch(_))
        ));
    }

    /// Weight-g wedge structure at the origin: the g-th exterior power of
    /// the reference weight-one structure, expressed in the real wedge
    /// basis so that entrywise conjugation is honest conjugation.
    fn wedge_model(g: usize) -> (HodgeFiltration, CMat) {
        use crate::exterior::{masks_with_popcount, MultiVector};
        use itertools::Itertools;
        let n = 2 * g;
        // Generators 0..g are the real letters a_k, g..2g the letters b_k;
        // x_k = a_k + i b_k and y_k = conj(x_k) span the two types.
        let x = |k: usize| {
            MultiVector::generator(n, k).plus(&MultiVector::generator(n, g + k).scale(cx(0.0, 1.0)))
        };
        let y = |k: usize| {
            MultiVector::generator(n, k).plus(&MultiVector::generator(n, g + k).scale(cx(0.0, -1.0)))
        };
        // Real pairing S(a_i, b_j) = -delta, so S(x_i, y_j) = 2i delta.
        let s1 = |u: usize, v: usize| -> f64 {
            if u < g && v == u + g {
                -1.0
            } else if v < g && u == v + g {
                1.0
            } else {
                0.0
            }
        };
        let masks = masks_with_popcount(n, g);
        let dim = masks.len();
        // Pairing on the wedge power: sign * det[S(letter_a, letter_b)].
        let sigma = if (g * (g - 1) / 2) % 2 == 1 { -1.0 } else { 1.0 };
        let mut pairing = CMat::zeros(dim, dim);
        for (a, &ma) in masks.iter().enumerate() {
            let la: Vec<usize> = (0..n).filter(|&k| ma >> k & 1 == 1).collect();
            for (b, &mb) in masks.iter().enumerate() {
                let lb: Vec<usize> = (0..n).filter(|&k| mb >> k & 1 == 1).collect();
                let mut det_m = DMatrix::<f64>::zeros(g, g);
                for (r, &u) in la.iter().enumerate() {
                    for (cidx, &v) in lb.iter().enumerate() {
                        det_m[(r, cidx)] = s1(u, v);
                    }
                }
                pairing[(a, b)] = cx(sigma * det_m.determinant(), 0.0);
            }
        }
        let mut pieces = Vec::new();
        for p in 0..=g {
            // Wedges with g-p factors of type x and p of type y.
            let mut cols = Vec::new();
            for i_set in (0..g).combinations(g - p) {
                for j_set in (0..g).combinations(p) {
                    let mut w = MultiVector::scalar(n, cx(1.0, 0.0));
                    for &i in &i_set {
                        w = w.wedge(&x(i));
                    }
                    for &j in &j_set {
                        w = w.wedge(&y(j));
                    }
                    let col: Vec<Complex64> = masks.iter().map(|&m| w.coeff(m)).collect();
                    cols.push(col);
                }
            }
            let mut basis = CMat::zeros(dim, cols.len());
            for (cidx, col) in cols.iter().enumerate() {
                for (r, &v) in col.iter().enumerate() {
                    basis[(r, cidx)] = v;
                }
            }
            pieces.push(HodgePiece {
                p: g - p,
                q: p,
                basis,
            });
        }
        (
            HodgeFiltration {
                weight: g,
                pieces,
            },
            pairing,
        )
    }

    #[test]
    fn positivity_check_on_wedge_structure() {
        for g in 1..=3 {
            let (filt, pairing) = wedge_model(g);
            let dims: Vec<usize> = filt.pieces.iter().map(|p| p.basis.ncols()).collect();
            assert_eq!(dims, wedge_hodge_dims(g), "piece dims for g={g}");
            assert!(
                hodge_positivity_check(&filt, &pairing, 1e-10).unwrap(),
                "wedge positivity failed for g={g}"
            );
        }
    }
}
