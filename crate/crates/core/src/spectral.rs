//! Spectral toolbox for Hermitian matrices.
//!
//! The decomposition algorithms downstream need *exact* combinatorial data out
//! of floating-point eigensolves: distinct eigenvalues with multiplicities,
//! grouped eigenbases, and spectral projections. [`eigendecompose`] produces
//! that by clustering raw eigenvalues with a gap threshold and snapping each
//! cluster to its mean, so degenerate spectra come out genuinely degenerate.
//!
//! The module also carries the projection lattice pieces used by the
//! subfactor arguments (support, join, amplification) and the Haagerup
//! ⅔-metric `d(X,Y) = q((X−Y)*(X−Y))^{1/3}` in which all approximation
//! statements are phrased.

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{creal, mat_mul, max_abs, CMatrix, HermitianMatrix, Unitary};
use crate::tolerance::Tolerances;

/// Projection: a Hermitian matrix with spectrum in {0, 1}.
#[derive(Clone, Debug)]
pub struct Projection {
    matrix: HermitianMatrix,
    rank: usize,
}

impl Projection {
    /// Validates idempotency (`P² = P`) and extracts the rank from the trace.
    pub fn new(matrix: HermitianMatrix, tol: &Tolerances) -> Result<Self> {
        let scale = 1.0 + matrix.max_abs();
        let idem = (mat_mul(matrix.matrix(), matrix.matrix()) - matrix.matrix()).norm();
        if idem > tol.residual * scale * matrix.dim() as f64 {
            return Err(Error::InvalidProjection(format!(
                "not idempotent: ‖P²−P‖ = {idem:e}"
            )));
        }
        let trace = matrix.trace();
        let rank = trace.round();
        if (trace - rank).abs() > 1e-6 || rank < 0.0 {
            return Err(Error::InvalidProjection(format!(
                "trace {trace} is not a nonnegative integer"
            )));
        }
        Ok(Projection {
            matrix,
            rank: rank as usize,
        })
    }

    pub(crate) fn from_parts_unchecked(matrix: HermitianMatrix, rank: usize) -> Self {
        Projection { matrix, rank }
    }

    /// Coordinate projection onto the given standard-basis slots.
    pub fn coordinate(dim: usize, slots: &[usize]) -> Self {
        let mut diag = vec![0.0; dim];
        for &s in slots {
            diag[s] = 1.0;
        }
        Projection {
            matrix: HermitianMatrix::from_real_diagonal(&diag),
            rank: slots.len(),
        }
    }

    pub fn zero(dim: usize) -> Self {
        Projection {
            matrix: HermitianMatrix::zeros(dim),
            rank: 0,
        }
    }

    pub fn identity(dim: usize) -> Self {
        Projection {
            matrix: HermitianMatrix::identity(dim),
            rank: dim,
        }
    }

    pub fn matrix(&self) -> &HermitianMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Dimension value `D(P) = rank/n`, the normalized quasitrace of `P`.
    pub fn dimension_value(&self) -> f64 {
        self.rank as f64 / self.dim() as f64
    }

    pub fn amplify(&self, m: usize) -> Projection {
        Projection {
            matrix: self.matrix.amplify(m),
            rank: self.rank * m,
        }
    }

    /// True when `self ≥ other` as projections (`P·Q = Q` within tolerance).
    pub fn contains(&self, other: &Projection, tol: &Tolerances) -> bool {
        if self.dim() != other.dim() {
            return false;
        }
        let prod = mat_mul(self.matrix.matrix(), other.matrix.matrix());
        (prod - other.matrix.matrix()).norm() <= tol.residual_abs(1.0) * self.dim() as f64
    }

    /// Unit vector spanning the range of a rank-one projection.
    pub(crate) fn unit_range_vector(&self) -> Result<DVector<Complex64>> {
        if self.rank != 1 {
            return Err(Error::InvalidProjection(format!(
                "expected rank 1, got {}",
                self.rank
            )));
        }
        let m = self.matrix.matrix();
        // P = vv*, so the column of largest norm is a scalar multiple of v.
        let (best, _) = (0..m.ncols())
            .map(|j| (j, m.column(j).norm()))
            .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .unwrap();
        let col = m.column(best).into_owned();
        let norm = col.norm();
        if norm == 0.0 {
            return Err(Error::InvalidProjection("zero projection".into()));
        }
        Ok(col / creal(norm))
    }
}

/// Clustered eigendecomposition: strictly increasing distinct eigenvalues,
/// multiplicities, and a basis whose columns are grouped by cluster.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    distinct_values: Vec<f64>,
    multiplicities: Vec<usize>,
    basis: Unitary,
}

impl SpectralDecomposition {
    pub fn distinct_values(&self) -> &[f64] {
        &self.distinct_values
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    /// Unitary whose `j`-th column is the eigenvector for working slot `j`.
    pub fn basis(&self) -> &Unitary {
        &self.basis
    }

    pub fn cluster_count(&self) -> usize {
        self.distinct_values.len()
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// Range of working slots occupied by cluster `i`.
    pub fn cluster_range(&self, i: usize) -> std::ops::Range<usize> {
        let start: usize = self.multiplicities[..i].iter().sum();
        start..start + self.multiplicities[i]
    }

    /// Eigenvalue of each working slot (cluster representative, repeated).
    pub fn slot_values(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.dim());
        for (i, &k) in self.multiplicities.iter().enumerate() {
            out.extend(std::iter::repeat(self.distinct_values[i]).take(k));
        }
        out
    }

    /// Eigenvalues with multiplicity, ascending.
    pub fn eigenvalues_with_multiplicity(&self) -> Vec<f64> {
        self.slot_values()
    }

    /// Spectral projection `E_i` onto the `i`-th cluster.
    pub fn projection(&self, i: usize) -> Projection {
        let range = self.cluster_range(i);
        let mut indicator = vec![0.0; self.dim()];
        for s in range.clone() {
            indicator[s] = 1.0;
        }
        let matrix = self.basis.conjugate_real_diagonal(&indicator);
        Projection::from_parts_unchecked(matrix, range.len())
    }

    pub fn projections(&self) -> Vec<Projection> {
        (0..self.cluster_count())
            .map(|i| self.projection(i))
            .collect()
    }

    /// Scalar spectral measure: atoms `(α_i, k_i/n)`.
    pub fn spectral_measure(&self) -> Vec<(f64, f64)> {
        let n = self.dim() as f64;
        self.distinct_values
            .iter()
            .zip(&self.multiplicities)
            .map(|(&a, &k)| (a, k as f64 / n))
            .collect()
    }

    /// Rank-one coordinate projection (in the original basis) on a working slot.
    pub fn slot_projection(&self, slot: usize) -> Projection {
        let mut indicator = vec![0.0; self.dim()];
        indicator[slot] = 1.0;
        let matrix = self.basis.conjugate_real_diagonal(&indicator);
        Projection::from_parts_unchecked(matrix, 1)
    }

    /// Rebuilds the matrix from the clustered data.
    pub fn reconstruct(&self) -> HermitianMatrix {
        self.basis.conjugate_real_diagonal(&self.slot_values())
    }

    pub(crate) fn with_basis(&self, basis: Unitary) -> SpectralDecomposition {
        SpectralDecomposition {
            distinct_values: self.distinct_values.clone(),
            multiplicities: self.multiplicities.clone(),
            basis,
        }
    }
}

/// Groups ascending raw eigenvalues into clusters separated by more than the
/// absolute gap threshold; errors when chaining makes the grouping ambiguous.
fn cluster_sorted(sorted: &[f64], gap: f64) -> Result<(Vec<f64>, Vec<usize>)> {
    let mut values = Vec::new();
    let mut mults = Vec::new();
    let mut start = 0;
    for i in 0..sorted.len() {
        let boundary = i + 1 == sorted.len() || sorted[i + 1] - sorted[i] > gap;
        if boundary {
            let spread = sorted[i] - sorted[start];
            if spread > gap {
                return Err(Error::ClusterAmbiguity { spread, gap });
            }
            let k = i + 1 - start;
            // Exact duplicates keep their exact value; a computed mean of k
            // equal values picks up O(k²·ε) summation noise, which is enough
            // to disturb the slot recursion's conserved trace at large n.
            let rep = if sorted[start] == sorted[i] {
                sorted[start]
            } else {
                sorted[start..=i].iter().sum::<f64>() / k as f64
            };
            values.push(rep);
            mults.push(k);
            start = i + 1;
        }
    }
    Ok((values, mults))
}

/// Eigendecomposition with eigenvalue clustering.
///
/// Diagonal input takes a permutation-basis fast path; everything else goes
/// through the dense Hermitian eigensolver. The reconstruction residual is
/// always re-checked against `tol.residual`.
pub fn eigendecompose(x: &HermitianMatrix, tol: &Tolerances) -> Result<SpectralDecomposition> {
    let n = x.dim();
    let (raw, basis_cols): (Vec<f64>, Option<CMatrix>) = match x.diagonal_reals() {
        Some(d) => (d, None),
        None => {
            let se = x.matrix().clone().symmetric_eigen();
            let (values, vectors) = crate::matrix::jacobi_polish(x.matrix(), se.eigenvectors);
            (values, Some(vectors))
        }
    };

    // Sort eigenpairs ascending; stable tie-break by original index keeps
    // degenerate diagonal inputs reproducible.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| raw[a].partial_cmp(&raw[b]).unwrap().then(a.cmp(&b)));
    let sorted: Vec<f64> = order.iter().map(|&i| raw[i]).collect();

    let scale = sorted.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let gap = tol.cluster_gap_abs(scale);
    let (values, mults) = cluster_sorted(&sorted, gap)?;

    // Canonical ordering inside each cluster: sort the cluster's columns by
    // the index of their dominant coordinate. Any intra-cluster order yields
    // a valid basis; this one makes recursion traces reproducible.
    let mut offset = 0;
    for &k in &mults {
        let block = &mut order[offset..offset + k];
        match &basis_cols {
            None => block.sort_unstable(),
            Some(cols) => {
                let dominant = |j: usize| -> usize {
                    let col = cols.column(j);
                    (0..n)
                        .max_by(|&a, &b| col[a].norm().partial_cmp(&col[b].norm()).unwrap())
                        .unwrap()
                };
                block.sort_by_key(|&j| dominant(j));
            }
        }
        offset += k;
    }

    let basis = match basis_cols {
        None => Unitary::from_permutation(order.clone()),
        Some(cols) => {
            let mut mat = CMatrix::zeros(n, n);
            for (slot, &j) in order.iter().enumerate() {
                mat.set_column(slot, &cols.column(j));
            }
            Unitary::from_matrix_unchecked(mat)
        }
    };

    let sd = SpectralDecomposition {
        distinct_values: values,
        multiplicities: mults,
        basis,
    };

    let residual = (sd.reconstruct().matrix() - x.matrix()).norm();
    let allowed = tol.residual_abs(scale) * (n as f64).sqrt();
    if residual > allowed {
        return Err(Error::ReconstructionFailed {
            residual,
            tolerance: allowed,
        });
    }
    Ok(sd)
}

/// Haagerup ⅔-metric `d(X,Y) = q((X−Y)*(X−Y))^{1/3}` for matrices of the same
/// dimension. Since `q(M*M) = ‖M‖_F²/n`, no products are formed.
pub fn haagerup_distance(x: &CMatrix, y: &CMatrix) -> Result<f64> {
    if x.nrows() != y.nrows() || x.ncols() != y.ncols() {
        return Err(Error::DimensionMismatch {
            left: x.nrows(),
            right: y.nrows(),
        });
    }
    let n = x.nrows() as f64;
    Ok(((x - y).norm_squared() / n).cbrt())
}

impl HermitianMatrix {
    pub fn haagerup_distance(&self, other: &HermitianMatrix) -> Result<f64> {
        haagerup_distance(self.matrix(), other.matrix())
    }
}

fn is_normal(m: &CMatrix, eps: f64) -> bool {
    commutator_with_adjoint(m) <= eps
}

fn commutator_with_adjoint(m: &CMatrix) -> f64 {
    let adj = m.adjoint();
    (mat_mul(m, &adj) - mat_mul(&adj, m)).norm()
}

/// Orthogonality predicate `AB = BA = AB* = B*A = 0`.
///
/// For a normal operand the Fuglede–Putnam theorem collapses the four products
/// to two, and for two normal operands to one; the implementation applies
/// those reductions.
pub fn is_orthogonal(a: &CMatrix, b: &CMatrix, tol: &Tolerances) -> Result<bool> {
    if a.nrows() != b.nrows() || a.ncols() != b.ncols() {
        return Err(Error::DimensionMismatch {
            left: a.nrows(),
            right: b.nrows(),
        });
    }
    let scale = 1.0 + max_abs(a) * max_abs(b) * a.nrows() as f64;
    let thr = tol.residual * scale;
    let normal_eps = tol.residual * (1.0 + max_abs(a).max(max_abs(b))).powi(2) * a.nrows() as f64;
    let (na, nb) = (is_normal(a, normal_eps), is_normal(b, normal_eps));
    let products: Vec<CMatrix> = if na && nb {
        vec![mat_mul(a, b)]
    } else if na || nb {
        vec![mat_mul(a, b), mat_mul(b, a)]
    } else {
        let b_adj = b.adjoint();
        vec![
            mat_mul(a, b),
            mat_mul(b, a),
            mat_mul(a, &b_adj),
            mat_mul(&b_adj, a),
        ]
    };
    Ok(products.iter().all(|p| p.norm() <= thr))
}

/// Support projection `s(A)`: the projection onto the span of eigenvectors
/// with eigenvalue modulus above the residual threshold.
pub fn support_projection(a: &HermitianMatrix, tol: &Tolerances) -> Result<Projection> {
    let sd = eigendecompose(a, tol)?;
    let threshold = tol.residual_abs(a.operator_norm());
    let mut indicator = vec![0.0; a.dim()];
    let mut rank = 0;
    for i in 0..sd.cluster_count() {
        if sd.distinct_values()[i].abs() > threshold {
            for s in sd.cluster_range(i) {
                indicator[s] = 1.0;
            }
            rank += sd.multiplicities()[i];
        }
    }
    let matrix = sd.basis().conjugate_real_diagonal(&indicator);
    Ok(Projection::from_parts_unchecked(matrix, rank))
}

/// Join (supremum) of finitely many projections, computed as the support of
/// their sum.
pub fn join_projections(projections: &[Projection], tol: &Tolerances) -> Result<Projection> {
    let first = projections.first().ok_or(Error::EmptyInput)?;
    let dim = first.dim();
    let mut sum = HermitianMatrix::zeros(dim);
    for p in projections {
        if p.dim() != dim {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: p.dim(),
            });
        }
        sum = &sum + p.matrix();
    }
    support_projection(&sum, tol)
}

/// Certifies unitary equivalence of Hermitian matrices by matching sorted
/// spectra; returns the conjugating unitary, or `None` when spectra differ.
pub fn unitary_equiv_exact(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    tol: &Tolerances,
) -> Result<Option<Unitary>> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    let sda = eigendecompose(a, tol)?;
    let sdb = eigendecompose(b, tol)?;
    let la = sda.eigenvalues_with_multiplicity();
    let lb = sdb.eigenvalues_with_multiplicity();
    let scale = a.operator_norm().max(b.operator_norm());
    let thr = tol.residual_abs(scale);
    if la
        .iter()
        .zip(&lb)
        .any(|(&x, &y)| (x - y).abs() > thr)
    {
        return Ok(None);
    }
    // With both spectra sorted ascending, slot k of A matches slot k of B.
    let u = sdb.basis().compose(&sda.basis().adjoint());
    Ok(Some(u))
}

/// Residuals observed while checking the quasitrace axioms on sample pairs.
#[derive(Clone, Debug, Default)]
pub struct QuasitraceReport {
    /// Worst residual per axiom (i)–(iv).
    pub max_residuals: [f64; 4],
    pub checked_pairs: usize,
}

fn normalized_trace_complex(m: &CMatrix) -> Complex64 {
    m.trace() / creal(m.nrows() as f64)
}

/// Checks the quasitrace axioms of the normalized matrix trace on a list of
/// sample pairs:
///
/// 1. `q(A + iB) = q(A) + i·q(B)` on self-adjoint parts,
/// 2. `q(MM*) = q(M*M) ≥ 0`,
/// 3. additivity on commuting self-adjoint elements,
/// 4. compatibility with the 2×2 corner embedding,
///    `q₂(diag(A, 0)) = ½·q(A)` in the normalized convention.
pub fn check_quasitrace_axioms(
    sample_pairs: &[(CMatrix, CMatrix)],
    tol: &Tolerances,
) -> Result<QuasitraceReport> {
    let mut report = QuasitraceReport::default();
    for (a, b) in sample_pairs {
        if a.nrows() != b.nrows() || a.nrows() != a.ncols() || b.nrows() != b.ncols() {
            return Err(Error::DimensionMismatch {
                left: a.nrows(),
                right: b.nrows(),
            });
        }
        let n = a.nrows();
        let scale = 1.0 + max_abs(a).max(max_abs(b));
        let thr = tol.residual * scale * scale * n as f64;

        let a_sa = crate::matrix::symmetrized(a.clone());
        let b_sa = crate::matrix::symmetrized(b.clone());
        let q = normalized_trace_complex;

        // (i) q(A + iB) = q(A) + i q(B) on self-adjoint parts.
        let lhs = q(&(&a_sa + &b_sa * Complex64::i()));
        let rhs = q(&a_sa) + Complex64::i() * q(&b_sa);
        let r1 = (lhs - rhs).norm();

        // (ii) q(MM*) = q(M*M) ≥ 0, for both raw samples.
        let mut r2: f64 = 0.0;
        for m in [a, b] {
            let adj = m.adjoint();
            let left = q(&mat_mul(m, &adj));
            let right = q(&mat_mul(&adj, m));
            r2 = r2.max((left - right).norm());
            r2 = r2.max((-left.re).max(0.0)).max(left.im.abs());
        }

        // (iii) additivity on commuting self-adjoint elements: A and A²
        // always commute; include the pair itself when it happens to commute.
        let a_sq = mat_mul(&a_sa, &a_sa);
        let mut r3 = (q(&(&a_sa + &a_sq)) - q(&a_sa) - q(&a_sq)).norm();
        if (mat_mul(&a_sa, &b_sa) - mat_mul(&b_sa, &a_sa)).norm() <= thr {
            r3 = r3.max((q(&(&a_sa + &b_sa)) - q(&a_sa) - q(&b_sa)).norm());
        }

        // (iv) 2×2 corner embedding: q₂(diag(A, 0)) = ½ q(A) with normalized
        // traces (the corner occupies half of the doubled factor).
        let mut corner = CMatrix::zeros(2 * n, 2 * n);
        corner.view_mut((0, 0), (n, n)).copy_from(&a_sa);
        let r4 = (q(&corner) - q(&a_sa) * creal(0.5)).norm();

        let residuals = [r1, r2, r3, r4];
        for (idx, &r) in residuals.iter().enumerate() {
            if r > thr {
                return Err(Error::AxiomViolation {
                    axiom: idx as u8 + 1,
                    residual: r,
                });
            }
            report.max_residuals[idx] = report.max_residuals[idx].max(r);
        }
        report.checked_pairs += 1;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::complex;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn eigendecompose_scalar_zero() {
        let x = HermitianMatrix::from_real_diagonal(&[0.0]);
        let sd = eigendecompose(&x, &tol()).unwrap();
        assert_eq!(sd.distinct_values(), &[0.0]);
        assert_eq!(sd.multiplicities(), &[1]);
    }

    #[test]
    fn eigendecompose_clusters_degenerate_diagonal() {
        let x = HermitianMatrix::from_real_diagonal(&[2.0, -1.0, -1.0]);
        let sd = eigendecompose(&x, &tol()).unwrap();
        assert_eq!(sd.distinct_values(), &[-1.0, 2.0]);
        assert_eq!(sd.multiplicities(), &[2, 1]);
        // slots ascending: the two −1 slots come from original indices 1, 2.
        assert_eq!(sd.basis().permutation().unwrap(), &[1, 2, 0]);
    }

    #[test]
    fn spectral_projections_are_orthogonal_and_sum_to_identity() {
        let x = HermitianMatrix::from_real_diagonal(&[2.0, -1.0, -1.0, 0.5]);
        let sd = eigendecompose(&x, &tol()).unwrap();
        let ps = sd.projections();
        let mut sum = HermitianMatrix::zeros(4);
        for p in &ps {
            sum = &sum + p.matrix();
        }
        assert!((sum.matrix() - HermitianMatrix::identity(4).matrix()).norm() < 1e-12);
        for i in 0..ps.len() {
            for j in 0..ps.len() {
                if i != j {
                    assert!(is_orthogonal(
                        ps[i].matrix().matrix(),
                        ps[j].matrix().matrix(),
                        &tol()
                    )
                    .unwrap());
                }
            }
        }
    }

    #[test]
    fn haagerup_distance_basic_values() {
        let x = HermitianMatrix::from_real_diagonal(&[1.0, 0.0]);
        assert_eq!(x.haagerup_distance(&x).unwrap(), 0.0);
        // X−Y = diag(1,−1): q((X−Y)²) = 1, so d = 1.
        let y = HermitianMatrix::from_real_diagonal(&[0.0, 1.0]);
        assert!((x.haagerup_distance(&y).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn orthogonality_examples() {
        let p = HermitianMatrix::from_real_diagonal(&[1.0, 0.0]);
        let q = HermitianMatrix::from_real_diagonal(&[0.0, 1.0]);
        assert!(is_orthogonal(p.matrix(), q.matrix(), &tol()).unwrap());
        assert!(!is_orthogonal(p.matrix(), p.matrix(), &tol()).unwrap());
    }

    #[test]
    fn support_projection_examples() {
        let a = HermitianMatrix::from_real_diagonal(&[2.0, 0.0, -1.0]);
        let s = support_projection(&a, &tol()).unwrap();
        assert_eq!(s.rank(), 2);
        assert_eq!(
            s.matrix().diagonal_reals().unwrap(),
            vec![1.0, 0.0, 1.0]
        );
        let z = support_projection(&HermitianMatrix::zeros(3), &tol()).unwrap();
        assert_eq!(z.rank(), 0);
    }

    #[test]
    fn join_of_coordinate_projections() {
        let p = Projection::coordinate(2, &[0]);
        let q = Projection::coordinate(2, &[1]);
        let j = join_projections(&[p.clone(), q], &tol()).unwrap();
        assert_eq!(j.rank(), 2);
        let single = join_projections(&[p.clone()], &tol()).unwrap();
        assert_eq!(single.rank(), 1);
        assert!(single.contains(&p, &tol()) && p.contains(&single, &tol()));
    }

    #[test]
    fn unitary_equiv_swap() {
        let a = HermitianMatrix::from_real_diagonal(&[1.0, 0.0]);
        let b = HermitianMatrix::from_real_diagonal(&[0.0, 1.0]);
        let u = unitary_equiv_exact(&a, &b, &tol()).unwrap().unwrap();
        let conj = u.conjugate_hermitian(&a);
        assert!((conj.matrix() - b.matrix()).norm() < 1e-12);
        // differing spectra yield absence
        let c = HermitianMatrix::from_real_diagonal(&[0.0, 0.0]);
        assert!(unitary_equiv_exact(&a, &c, &tol()).unwrap().is_none());
    }

    #[test]
    fn shift_creates_nonnormal_example() {
        // X = [[0,1],[0,0]]: XX* = diag(1,0) and X*X = diag(0,1) are equivalent.
        let mut x = CMatrix::zeros(2, 2);
        x[(0, 1)] = complex(1.0, 0.0);
        let xxs = HermitianMatrix::from_matrix_unchecked(mat_mul(&x, &x.adjoint()));
        let sxx = HermitianMatrix::from_matrix_unchecked(mat_mul(&x.adjoint(), &x));
        assert!(unitary_equiv_exact(&xxs, &sxx, &tol()).unwrap().is_some());
    }
}
