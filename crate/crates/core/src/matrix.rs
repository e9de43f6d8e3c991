//! Dense complex matrix carriers.
//!
//! Everything in this crate works on dense `Complex64` matrices. Two newtypes
//! enforce the structural invariants the algorithms rely on: [`HermitianMatrix`]
//! (self-adjoint within tolerance) and [`Unitary`]. Diagonal matrices get fast
//! paths throughout, because the quantization pipeline produces large diagonal
//! matrices whose dense O(n³) handling would dominate everything else.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

/// Dense complex matrix type used throughout the crate.
pub type CMatrix = DMatrix<Complex64>;

#[cfg(test)]
pub(crate) fn complex(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub(crate) fn creal(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Largest entry modulus. Cheap scale estimate for relative tolerances.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Maximum deviation of `m` from its own adjoint.
pub fn hermiticity_deviation(m: &CMatrix) -> f64 {
    let mut dev: f64 = 0.0;
    for j in 0..m.ncols() {
        for i in 0..=j {
            dev = dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    dev
}

/// True when every off-diagonal entry is exactly zero.
pub fn is_diagonal(m: &CMatrix) -> bool {
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            if i != j && m[(i, j)] != Complex64::new(0.0, 0.0) {
                return false;
            }
        }
    }
    true
}

/// Matrix product with a fast path for diagonal operands.
pub fn mat_mul(a: &CMatrix, b: &CMatrix) -> CMatrix {
    if is_diagonal(a) && is_diagonal(b) {
        let n = a.nrows();
        let mut out = CMatrix::zeros(n, n);
        for i in 0..n {
            out[(i, i)] = a[(i, i)] * b[(i, i)];
        }
        return out;
    }
    a * b
}

/// Frobenius norm of `ab − ba`.
pub fn commutator_norm(a: &CMatrix, b: &CMatrix) -> f64 {
    (mat_mul(a, b) - mat_mul(b, a)).norm()
}

/// Dense complex square matrix asserted Hermitian within tolerance.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix {
    mat: CMatrix,
}

impl HermitianMatrix {
    /// Validates squareness and hermiticity before wrapping.
    pub fn new(mat: CMatrix, tol: &Tolerances) -> Result<Self> {
        if mat.nrows() != mat.ncols() || mat.nrows() == 0 {
            return Err(Error::DimensionMismatch {
                left: mat.nrows(),
                right: mat.ncols(),
            });
        }
        let threshold = tol.hermiticity_abs(max_abs(&mat));
        let dev = hermiticity_deviation(&mat);
        if dev > threshold {
            return Err(Error::NotHermitian {
                residual: dev,
                tolerance: threshold,
            });
        }
        Ok(HermitianMatrix { mat })
    }

    /// Wraps a matrix known to be Hermitian by construction.
    pub(crate) fn from_matrix_unchecked(mat: CMatrix) -> Self {
        HermitianMatrix { mat }
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut mat = CMatrix::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            mat[(i, i)] = creal(d);
        }
        HermitianMatrix { mat }
    }

    pub fn zeros(n: usize) -> Self {
        HermitianMatrix {
            mat: CMatrix::zeros(n, n),
        }
    }

    pub fn identity(n: usize) -> Self {
        HermitianMatrix {
            mat: CMatrix::identity(n, n),
        }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> CMatrix {
        self.mat
    }

    /// The unique normalized quasitrace of a matrix factor: `tr(X)/n`.
    pub fn normalized_trace(&self) -> f64 {
        self.mat.trace().re / self.dim() as f64
    }

    /// Un-normalized trace (real part; the imaginary part vanishes for
    /// Hermitian input).
    pub fn trace(&self) -> f64 {
        self.mat.trace().re
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.mat.norm()
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(&self.mat)
    }

    pub fn is_diagonal(&self) -> bool {
        is_diagonal(&self.mat)
    }

    /// Diagonal entries as reals, if the matrix is exactly diagonal.
    pub fn diagonal_reals(&self) -> Option<Vec<f64>> {
        if self.is_diagonal() {
            Some((0..self.dim()).map(|i| self.mat[(i, i)].re).collect())
        } else {
            None
        }
    }

    /// All eigenvalues in ascending order (no clustering).
    ///
    /// The dense path finishes the QR iteration's output with Jacobi sweeps;
    /// the raw solver results can drift by several orders of magnitude more
    /// than rounding, and mix eigenvectors across repeated eigenvalues.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut vals = match self.diagonal_reals() {
            Some(d) => d,
            None => {
                let se = self.mat.clone().symmetric_eigen();
                jacobi_polish(&self.mat, se.eigenvectors).0
            }
        };
        vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        vals
    }

    /// Operator norm, i.e. the largest eigenvalue modulus.
    pub fn operator_norm(&self) -> f64 {
        self.eigenvalues()
            .iter()
            .map(|v| v.abs())
            .fold(0.0, f64::max)
    }

    pub fn scaled(&self, c: f64) -> Self {
        HermitianMatrix {
            mat: &self.mat * creal(c),
        }
    }

    /// Amplification `X ↦ X ⊗ I_m`, a unital embedding into a factor of
    /// dimension `n·m` that preserves the normalized trace.
    pub fn amplify(&self, m: usize) -> Self {
        HermitianMatrix {
            mat: amplify_general(&self.mat, m),
        }
    }

    /// Shifts by a real multiple of the identity.
    pub fn shifted(&self, c: f64) -> Self {
        let mut mat = self.mat.clone();
        for i in 0..self.dim() {
            mat[(i, i)] += creal(c);
        }
        HermitianMatrix { mat }
    }
}

impl std::ops::Add for &HermitianMatrix {
    type Output = HermitianMatrix;
    fn add(self, rhs: &HermitianMatrix) -> HermitianMatrix {
        HermitianMatrix {
            mat: &self.mat + &rhs.mat,
        }
    }
}

impl std::ops::Sub for &HermitianMatrix {
    type Output = HermitianMatrix;
    fn sub(self, rhs: &HermitianMatrix) -> HermitianMatrix {
        HermitianMatrix {
            mat: &self.mat - &rhs.mat,
        }
    }
}

/// Amplification for general matrices: `A ↦ A ⊗ I_m`.
pub fn amplify_general(a: &CMatrix, m: usize) -> CMatrix {
    a.kronecker(&CMatrix::identity(m, m))
}

/// Rayleigh quotients `re(v_j* M v_j)` of the columns of `basis`, the
/// Frobenius-optimal diagonal for that basis.
pub(crate) fn rayleigh_quotients(m: &CMatrix, basis: &CMatrix) -> Vec<f64> {
    let product = m * basis;
    (0..basis.ncols())
        .map(|j| {
            let v = basis.column(j);
            let w = product.column(j);
            v.dotc(&w).re / v.norm_squared()
        })
        .collect()
}

/// Finishes a Hermitian eigendecomposition by cyclic complex Jacobi sweeps,
/// starting from an almost-diagonalizing basis.
///
/// The QR-iteration solver occasionally leaves eigenvalues drifted by ~1e−9
/// and, on spectra with repeated eigenvalues, lets eigenvectors mix across
/// eigenspaces. Starting nearly diagonal, Jacobi converges quadratically, so
/// a couple of sweeps restore residuals to rounding level.
pub(crate) fn jacobi_polish(x: &CMatrix, basis: CMatrix) -> (Vec<f64>, CMatrix) {
    let n = x.nrows();
    let mut v = basis;
    let mut t = symmetrized(v.adjoint() * x * &v);
    let scale = t.norm().max(f64::MIN_POSITIVE);

    for _sweep in 0..16 {
        let off: f64 = (0..n)
            .flat_map(|p| (0..n).filter(move |&q| q != p).map(move |q| (p, q)))
            .map(|(p, q)| t[(p, q)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= n as f64 * f64::EPSILON * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let g = t[(p, q)];
                let gn = g.norm();
                if gn <= 0.25 * f64::EPSILON * (t[(p, p)].norm() + t[(q, q)].norm() + scale / n as f64)
                {
                    continue;
                }
                // Unwind the phase so the 2×2 block is real symmetric, then
                // rotate it away (Golub & Van Loan sym.schur2).
                let phase = g / creal(gn);
                let alpha = t[(p, p)].re;
                let beta = t[(q, q)].re;
                let tau = (beta - alpha) / (2.0 * gn);
                let tt = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + tt * tt).sqrt();
                let s = tt * c;

                // W = diag(phase, 1) · [[c, s], [−s, c]] on coordinates (p, q)
                let wpp = phase * creal(c);
                let wpq = phase * creal(s);
                let wqp = creal(-s);
                let wqq = creal(c);

                // T ← W† T W, applied as column then row updates
                for r in 0..n {
                    let tp = t[(r, p)];
                    let tq = t[(r, q)];
                    t[(r, p)] = tp * wpp + tq * wqp;
                    t[(r, q)] = tp * wpq + tq * wqq;
                }
                for cidx in 0..n {
                    let tp = t[(p, cidx)];
                    let tq = t[(q, cidx)];
                    t[(p, cidx)] = wpp.conj() * tp + wqp.conj() * tq;
                    t[(q, cidx)] = wpq.conj() * tp + wqq.conj() * tq;
                }
                t[(p, q)] = creal(0.0);
                t[(q, p)] = creal(0.0);
                // V ← V W
                for r in 0..n {
                    let vp = v[(r, p)];
                    let vq = v[(r, q)];
                    v[(r, p)] = vp * wpp + vq * wqp;
                    v[(r, q)] = vp * wpq + vq * wqq;
                }
            }
        }
    }

    let values = (0..n).map(|i| t[(i, i)].re).collect();
    (values, v)
}

/// Unitary matrix; permutation unitaries keep their permutation around so
/// conjugations stay O(n²).
#[derive(Clone, Debug)]
pub struct Unitary {
    mat: CMatrix,
    /// `perm[j] = i` means column `j` is the standard basis vector `e_i`.
    perm: Option<Vec<usize>>,
}

impl Unitary {
    pub fn new(mat: CMatrix, tol: &Tolerances) -> Result<Self> {
        if mat.nrows() != mat.ncols() || mat.nrows() == 0 {
            return Err(Error::DimensionMismatch {
                left: mat.nrows(),
                right: mat.ncols(),
            });
        }
        let n = mat.nrows();
        let dev = (mat.adjoint() * &mat - CMatrix::identity(n, n)).norm();
        if dev > tol.residual_abs(1.0) * n as f64 {
            return Err(Error::InvalidUnitary(dev));
        }
        Ok(Unitary { mat, perm: None })
    }

    pub(crate) fn from_matrix_unchecked(mat: CMatrix) -> Self {
        Unitary { mat, perm: None }
    }

    pub fn identity(n: usize) -> Self {
        Unitary::from_permutation((0..n).collect())
    }

    pub fn from_permutation(perm: Vec<usize>) -> Self {
        let n = perm.len();
        let mut mat = CMatrix::zeros(n, n);
        for (j, &i) in perm.iter().enumerate() {
            mat[(i, j)] = creal(1.0);
        }
        Unitary {
            mat,
            perm: Some(perm),
        }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn permutation(&self) -> Option<&[usize]> {
        self.perm.as_deref()
    }

    pub fn adjoint(&self) -> Unitary {
        match &self.perm {
            Some(p) => {
                let mut inv = vec![0usize; p.len()];
                for (j, &i) in p.iter().enumerate() {
                    inv[i] = j;
                }
                Unitary::from_permutation(inv)
            }
            None => Unitary {
                mat: self.mat.adjoint(),
                perm: None,
            },
        }
    }

    /// Composition `self ∘ rhs` (matrix product `self · rhs`).
    pub fn compose(&self, rhs: &Unitary) -> Unitary {
        match (&self.perm, &rhs.perm) {
            (Some(p), Some(q)) => Unitary::from_permutation(q.iter().map(|&j| p[j]).collect()),
            _ => Unitary {
                mat: &self.mat * &rhs.mat,
                perm: None,
            },
        }
    }

    /// `U · diag(d) · U*` without materializing intermediate products when
    /// `U` is a permutation.
    pub fn conjugate_real_diagonal(&self, diag: &[f64]) -> HermitianMatrix {
        assert_eq!(diag.len(), self.dim());
        match &self.perm {
            Some(p) => {
                let mut out = vec![0.0; diag.len()];
                for (j, &i) in p.iter().enumerate() {
                    out[i] = diag[j];
                }
                HermitianMatrix::from_real_diagonal(&out)
            }
            None => {
                let d = CMatrix::from_diagonal(&DVector::from_iterator(
                    diag.len(),
                    diag.iter().map(|&x| creal(x)),
                ));
                let m = &self.mat * d * self.mat.adjoint();
                HermitianMatrix::from_matrix_unchecked(symmetrized(m))
            }
        }
    }

    /// `U · M · U*` for a general matrix.
    pub fn conjugate_general(&self, m: &CMatrix) -> CMatrix {
        assert_eq!(m.nrows(), self.dim());
        match &self.perm {
            Some(p) => {
                let n = m.nrows();
                let mut out = CMatrix::zeros(n, n);
                for j in 0..n {
                    for i in 0..n {
                        out[(p[i], p[j])] = m[(i, j)];
                    }
                }
                out
            }
            None => &self.mat * m * self.mat.adjoint(),
        }
    }

    /// `U · H · U*` stays Hermitian.
    pub fn conjugate_hermitian(&self, h: &HermitianMatrix) -> HermitianMatrix {
        HermitianMatrix::from_matrix_unchecked(self.conjugate_general(h.matrix()))
    }

    /// Applies the unitary to a vector.
    pub fn apply(&self, v: &DVector<Complex64>) -> DVector<Complex64> {
        match &self.perm {
            Some(p) => {
                let mut out = DVector::from_element(v.len(), creal(0.0));
                for (j, &i) in p.iter().enumerate() {
                    out[i] = v[j];
                }
                out
            }
            None => &self.mat * v,
        }
    }

    /// Applies the adjoint to a vector.
    pub fn apply_adjoint(&self, v: &DVector<Complex64>) -> DVector<Complex64> {
        match &self.perm {
            Some(p) => {
                let mut out = DVector::from_element(v.len(), creal(0.0));
                for (j, &i) in p.iter().enumerate() {
                    out[j] = v[i];
                }
                out
            }
            None => self.mat.adjoint() * v,
        }
    }
}

/// Averages away rounding asymmetry after dense conjugations.
pub(crate) fn symmetrized(m: CMatrix) -> CMatrix {
    let adj = m.adjoint();
    (m + adj) * creal(0.5)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermitian_construction_rejects_asymmetry() {
        let tol = Tolerances::default();
        let mut m = CMatrix::zeros(2, 2);
        m[(0, 1)] = complex(1.0, 0.0);
        assert!(matches!(
            HermitianMatrix::new(m, &tol),
            Err(Error::NotHermitian { .. })
        ));

        let mut h = CMatrix::zeros(2, 2);
        h[(0, 1)] = complex(0.0, 1.0);
        h[(1, 0)] = complex(0.0, -1.0);
        assert!(HermitianMatrix::new(h, &tol).is_ok());
    }

    #[test]
    fn normalized_trace_of_identity_is_one() {
        assert_eq!(HermitianMatrix::identity(5).normalized_trace(), 1.0);
        let x = HermitianMatrix::from_real_diagonal(&[2.0, -1.0, -1.0]);
        assert_eq!(x.normalized_trace(), 0.0);
    }

    #[test]
    fn diagonal_detection_and_eigenvalues() {
        let x = HermitianMatrix::from_real_diagonal(&[3.0, -1.0, 0.5]);
        assert!(x.is_diagonal());
        assert_eq!(x.eigenvalues(), vec![-1.0, 0.5, 3.0]);
        assert_eq!(x.operator_norm(), 3.0);
    }

    #[test]
    fn permutation_unitary_conjugates_diagonals() {
        let u = Unitary::from_permutation(vec![1, 0, 2]);
        let h = u.conjugate_real_diagonal(&[5.0, 7.0, 9.0]);
        assert_eq!(h.diagonal_reals().unwrap(), vec![7.0, 5.0, 9.0]);

        let inv = u.adjoint();
        let back = inv.conjugate_hermitian(&h);
        assert_eq!(back.diagonal_reals().unwrap(), vec![5.0, 7.0, 9.0]);
    }

    #[test]
    fn amplify_identity() {
        let x = HermitianMatrix::identity(2).amplify(3);
        assert_eq!(x.dim(), 6);
        assert_eq!(x.normalized_trace(), 1.0);
        let y = HermitianMatrix::from_real_diagonal(&[1.0, -1.0]).amplify(2);
        assert_eq!(y.normalized_trace(), 0.0);
    }

    #[test]
    fn eigenvalues_satisfy_moment_identities() {
        // Solver-independent guard: Σλ = tr M, Σλ² = ‖M‖_F², Σλ³ = tr M³.
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for n in [2usize, 5, 13, 40] {
            let g = CMatrix::from_fn(n, n, |_, _| {
                use rand::Rng;
                complex(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
            });
            let h = HermitianMatrix::from_matrix_unchecked(symmetrized(g));
            let eigs = h.eigenvalues();
            let s1: f64 = eigs.iter().sum();
            let s2: f64 = eigs.iter().map(|v| v * v).sum();
            let s3: f64 = eigs.iter().map(|v| v * v * v).sum();
            let m = h.matrix();
            let cube = m * m * m;
            assert!((s1 - h.trace()).abs() < 1e-10 * n as f64);
            assert!((s2 - m.norm_squared()).abs() < 1e-10 * n as f64);
            assert!((s3 - cube.trace().re).abs() < 1e-9 * n as f64);
        }
    }

    #[test]
    fn diagonal_product_fast_path_matches_dense() {
        let a = HermitianMatrix::from_real_diagonal(&[1.0, 2.0, 3.0]);
        let b = HermitianMatrix::from_real_diagonal(&[-1.0, 0.0, 2.0]);
        let fast = mat_mul(a.matrix(), b.matrix());
        let dense = a.matrix() * b.matrix();
        assert_eq!(fast, dense);
    }
}
