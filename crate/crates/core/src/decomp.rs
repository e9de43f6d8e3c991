//! Decomposition of a traceless Hermitian matrix into commuting,
//! unitarily-equivalent halves, and the abelian self-commutator witness
//! built from them.
//!
//! Given `X = X*` with `tr X = 0` and a rank-one projection `P` commuting
//! with `X`, [`decompose_with_projection`] produces `(A, B, U)` with
//!
//! * `AB = BA`,
//! * `X = A − B`,
//! * `B = U A U*` (equal spectra),
//! * `max(‖A‖, ‖B‖) ≤ ‖X‖`,
//! * `A ⊥ P`.
//!
//! The construction is recursive: pick the eigenvalue slot carrying `P`,
//! pair it with a slot of opposite sign, peel off a rank-one difference, and
//! recurse on the corner one dimension down. Because the protected slot is a
//! coordinate projection in the eigenbasis of `X`, every quantity in the
//! recursion is a diagonal value in one fixed basis; the whole algorithm is
//! combinatorial on a list of slots, and `U` comes out as an exact
//! permutation conjugated back to the original coordinates.
//!
//! From any decomposition, [`build_witness`] forms `Y = (A + tI)^{1/2} U*`,
//! so that `YY* = A + tI` and `Y*Y = B + tI` commute and
//! `YY* − Y*Y = X`: the witness exhibiting `X` as an abelian self-commutator.

use crate::error::{Error, Result};
use crate::matrix::{creal, mat_mul, CMatrix, HermitianMatrix, Unitary};
use crate::spectral::{eigendecompose, Projection, SpectralDecomposition};
use crate::tolerance::Tolerances;

/// One level of the slot recursion, recorded for reproducibility.
#[derive(Clone, Debug, PartialEq)]
pub struct RecursionStep {
    /// Cluster index (in that level's ascending distinct values) holding `P`.
    pub i0: usize,
    /// Cluster index chosen for the opposite-sign partner `Q`.
    pub i1: usize,
    /// Working-basis slot protected at this level.
    pub p_slot: usize,
    /// Working-basis slot chosen for `Q`.
    pub q_slot: usize,
    /// Eigenvalue `α` at the protected slot.
    pub alpha: f64,
}

/// Output of the decomposition: the halves, the conjugating unitary, the
/// avoided projection, and the recursion trace.
#[derive(Clone, Debug)]
pub struct CommutatorDecomposition {
    pub a: HermitianMatrix,
    pub b: HermitianMatrix,
    pub unitary: Unitary,
    pub avoided_projection: Option<Projection>,
    pub basis_trace: Vec<RecursionStep>,
}

/// Thresholds for the post-hoc verification of a decomposition. Each bound is
/// scaled at use: the commutator by `1 + ‖X‖²`, the reconstruction and
/// conjugation by `1 + ‖X‖`, the rest absolute.
#[derive(Clone, Copy, Debug)]
pub struct DecompositionBounds {
    pub commutator: f64,
    pub reconstruction: f64,
    pub conjugation: f64,
    pub spectra: f64,
    pub norm_slack: f64,
    pub avoided: f64,
}

impl Default for DecompositionBounds {
    fn default() -> Self {
        DecompositionBounds {
            commutator: 1e-9,
            reconstruction: 1e-10,
            conjugation: 1e-9,
            spectra: 1e-9,
            norm_slack: 1e-9,
            avoided: 1e-9,
        }
    }
}

/// Residuals of the five decomposition requirements, re-derived from the
/// output matrices alone.
#[derive(Clone, Debug)]
pub struct DecompositionReport {
    pub commutator_residual: f64,
    pub reconstruction_residual: f64,
    pub conjugation_residual: f64,
    pub spectra_mismatch: f64,
    pub norm_excess: f64,
    pub avoided_residual: Option<f64>,
    pub source_norm: f64,
    pub pass: bool,
}

impl DecompositionReport {
    pub fn failures(&self, bounds: &DecompositionBounds) -> Vec<String> {
        let mut out = Vec::new();
        let norm2 = 1.0 + self.source_norm * self.source_norm;
        let norm1 = 1.0 + self.source_norm;
        if self.commutator_residual > bounds.commutator * norm2 {
            out.push(format!("commutator residual {:e}", self.commutator_residual));
        }
        if self.reconstruction_residual > bounds.reconstruction * norm1 {
            out.push(format!(
                "reconstruction residual {:e}",
                self.reconstruction_residual
            ));
        }
        if self.conjugation_residual > bounds.conjugation * norm1 {
            out.push(format!("conjugation residual {:e}", self.conjugation_residual));
        }
        if self.spectra_mismatch > bounds.spectra {
            out.push(format!("spectra mismatch {:e}", self.spectra_mismatch));
        }
        if self.norm_excess > bounds.norm_slack {
            out.push(format!("norm excess {:e}", self.norm_excess));
        }
        if let Some(r) = self.avoided_residual {
            if r > bounds.avoided {
                out.push(format!("avoided-projection residual {:e}", r));
            }
        }
        out
    }
}

/// Re-checks every requirement of a claimed decomposition `(A, B, U)` of `X`,
/// independently of how the parts were produced.
pub fn verify_decomposition(
    x: &HermitianMatrix,
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    unitary: &Unitary,
    avoided: Option<&Projection>,
    bounds: &DecompositionBounds,
) -> DecompositionReport {
    let source_norm = x.operator_norm();
    let commutator_residual = (mat_mul(a.matrix(), b.matrix()) - mat_mul(b.matrix(), a.matrix())).norm();
    let reconstruction_residual = ((&(a - b)) - x).frobenius_norm();
    let conjugation_residual = (unitary.conjugate_hermitian(a).matrix() - b.matrix()).norm();
    let (ea, eb) = (a.eigenvalues(), b.eigenvalues());
    let spectra_mismatch = ea
        .iter()
        .zip(&eb)
        .map(|(&x, &y)| (x - y).abs())
        .fold(0.0, f64::max);
    let norm_excess = a.operator_norm().max(b.operator_norm()) - source_norm;
    let avoided_residual =
        avoided.map(|p| mat_mul(a.matrix(), p.matrix().matrix()).norm());

    let mut report = DecompositionReport {
        commutator_residual,
        reconstruction_residual,
        conjugation_residual,
        spectra_mismatch,
        norm_excess,
        avoided_residual,
        source_norm,
        pass: false,
    };
    report.pass = report.failures(bounds).is_empty();
    report
}

fn traceless_guard(x: &HermitianMatrix, tol: &Tolerances) -> Result<()> {
    let trace = x.trace();
    let allowed = tol.trace_zero_abs(x.dim(), x.max_abs());
    if trace.abs() > allowed {
        return Err(Error::NotTraceless {
            trace: trace.abs(),
            tolerance: allowed,
        });
    }
    Ok(())
}

/// Replaces `X` by `X − (tr X / n)·I`, the traceless part.
pub fn recentered(x: &HermitianMatrix) -> HermitianMatrix {
    x.shifted(-x.normalized_trace())
}

/// Base-case threshold of the slot recursion: slots at or below this modulus
/// count as zero. Scales with dimension to absorb the rounding drift the
/// chain of slot updates can accumulate.
fn zero_threshold(dim: usize, op_norm: f64) -> f64 {
    (1e-12_f64).max(4.0 * dim as f64 * f64::EPSILON) * (1.0 + op_norm)
}

/// The slot recursion. `values` are the diagonal entries of `X` in the
/// working basis, `p0` the protected slot. Returns the diagonals of `A` and
/// `B` in the working basis plus the per-level trace.
fn slot_recursion(
    values: &[f64],
    p0: usize,
    zero_tol: f64,
) -> Result<(Vec<f64>, Vec<f64>, Vec<RecursionStep>)> {
    let n = values.len();
    let mut v = values.to_vec();
    let mut active = vec![true; n];
    let mut a = vec![0.0; n];
    let mut b = vec![0.0; n];
    let mut steps = Vec::new();
    let mut p = p0;

    loop {
        let max_active = (0..n)
            .filter(|&s| active[s])
            .map(|s| v[s].abs())
            .fold(0.0, f64::max);
        if max_active <= zero_tol {
            // Remaining slots are numerically zero; both halves vanish there.
            break;
        }

        // Group the active slots by exact value. Sorting ascending gives the
        // level's distinct eigenvalue list.
        let mut slots: Vec<usize> = (0..n).filter(|&s| active[s]).collect();
        slots.sort_by(|&x, &y| v[x].partial_cmp(&v[y]).unwrap().then(x.cmp(&y)));
        let mut groups: Vec<(f64, Vec<usize>)> = Vec::new();
        for s in slots {
            match groups.last_mut() {
                Some((val, g)) if *val == v[s] => g.push(s),
                _ => groups.push((v[s], vec![s])),
            }
        }

        let alpha = v[p];
        let i0 = groups
            .iter()
            .position(|(val, _)| *val == alpha)
            .expect("protected slot must be active");

        // Opposite-sign partner: the most negative value when α ≥ 0, the most
        // positive when α < 0. A traceless level with a non-zero slot always
        // has both signs available.
        let i1 = if alpha >= 0.0 {
            if groups[0].0 < 0.0 {
                0
            } else {
                return Err(Error::InternalInvariantBroken(format!(
                    "no negative eigenvalue available at level {} (α = {alpha:e})",
                    steps.len()
                )));
            }
        } else {
            let last = groups.len() - 1;
            if groups[last].0 > 0.0 {
                last
            } else {
                return Err(Error::InternalInvariantBroken(format!(
                    "no positive eigenvalue available at level {} (α = {alpha:e})",
                    steps.len()
                )));
            }
        };
        let q = groups[i1].1[0];

        steps.push(RecursionStep {
            i0,
            i1,
            p_slot: p,
            q_slot: q,
            alpha,
        });

        // Peel off S = α(P − Q): the protected slot retires with A = 0,
        // B = −α there; the partner slot absorbs α and is protected next.
        a[q] = -alpha;
        b[p] = -alpha;
        v[q] += alpha;
        active[p] = false;
        p = q;
    }

    Ok((a, b, steps))
}

/// Permutation σ with `b[σ(j)] = a[j]`, built by matching sorted values.
/// Requires the two slot multisets to be exactly equal, which the recursion
/// guarantees.
fn matching_permutation(a: &[f64], b: &[f64]) -> Vec<usize> {
    let n = a.len();
    let mut ia: Vec<usize> = (0..n).collect();
    ia.sort_by(|&x, &y| a[x].partial_cmp(&a[y]).unwrap().then(x.cmp(&y)));
    let mut ib: Vec<usize> = (0..n).collect();
    ib.sort_by(|&x, &y| b[x].partial_cmp(&b[y]).unwrap().then(x.cmp(&y)));
    let mut sigma = vec![0usize; n];
    for k in 0..n {
        sigma[ia[k]] = ib[k];
    }
    sigma
}

fn run_decomposition(
    x: &HermitianMatrix,
    sd: &SpectralDecomposition,
    p_slot: usize,
    avoided: Projection,
    _tol: &Tolerances,
) -> Result<CommutatorDecomposition> {
    let values = sd.slot_values();
    let op_norm = values.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let zero_tol = zero_threshold(values.len(), op_norm);
    let (a_diag, b_diag, steps) = slot_recursion(&values, p_slot, zero_tol)?;

    let sigma = matching_permutation(&a_diag, &b_diag);
    let basis = sd.basis();
    let a = basis.conjugate_real_diagonal(&a_diag);
    let b = basis.conjugate_real_diagonal(&b_diag);
    let unitary = basis
        .compose(&Unitary::from_permutation(sigma))
        .compose(&basis.adjoint());

    let dec = CommutatorDecomposition {
        a,
        b,
        unitary,
        avoided_projection: Some(avoided),
        basis_trace: steps,
    };

    // Post-hoc verification is mandatory: the recursion is exact on slots,
    // but the conjugation back to the original basis is not.
    let report = verify_decomposition(
        x,
        &dec.a,
        &dec.b,
        &dec.unitary,
        dec.avoided_projection.as_ref(),
        &DecompositionBounds::default(),
    );
    if !report.pass {
        return Err(Error::InternalInvariantBroken(
            report
                .failures(&DecompositionBounds::default())
                .join("; "),
        ));
    }
    Ok(dec)
}

/// Decomposes traceless `X` into commuting equivalent halves avoiding the
/// given rank-one projection `P` (which must commute with `X`).
pub fn decompose_with_projection(
    x: &HermitianMatrix,
    p: &Projection,
    tol: &Tolerances,
) -> Result<CommutatorDecomposition> {
    traceless_guard(x, tol)?;
    if p.dim() != x.dim() {
        return Err(Error::DimensionMismatch {
            left: x.dim(),
            right: p.dim(),
        });
    }
    if p.rank() != 1 {
        return Err(Error::ProjectionIncompatible(format!(
            "projection rank must be 1, got {}",
            p.rank()
        )));
    }
    let commute = (mat_mul(p.matrix().matrix(), x.matrix())
        - mat_mul(x.matrix(), p.matrix().matrix()))
    .norm();
    let allowed = tol.residual_abs(x.operator_norm()) * x.dim() as f64;
    if commute > allowed {
        return Err(Error::ProjectionIncompatible(format!(
            "projection does not commute with the matrix: residual {commute:e}"
        )));
    }

    let sd = eigendecompose(x, tol)?;
    let v = p.unit_range_vector()?;
    let w = sd.basis().apply_adjoint(&v);

    // P commutes with X and has rank one, so its range vector must live in a
    // single eigenvalue cluster.
    let masses: Vec<f64> = (0..sd.cluster_count())
        .map(|i| sd.cluster_range(i).map(|s| w[s].norm_sqr()).sum())
        .collect();
    let (i0, &mass) = masses
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .unwrap();
    if mass < 1.0 - 1e-8 {
        return Err(Error::ProjectionIncompatible(format!(
            "projection range is not contained in one eigenspace (mass {mass})"
        )));
    }

    // Refine the basis inside cluster i0 so that P becomes the coordinate
    // projection on the cluster's first slot.
    let range = sd.cluster_range(i0);
    let refined = refine_basis_for_vector(sd.basis(), &w, range.clone());
    let sd = sd.with_basis(refined);
    run_decomposition(x, &sd, range.start, p.clone(), tol)
}

/// Rotates the basis inside `range` so that the (unit) coordinate vector `w`
/// restricted to `range` maps to the first slot of `range`. Outside the range
/// the basis is untouched, so the matrix stays diagonal in the new basis.
fn refine_basis_for_vector(
    basis: &Unitary,
    w: &nalgebra::DVector<num_complex::Complex64>,
    range: std::ops::Range<usize>,
) -> Unitary {
    let k = range.len();
    let block: Vec<num_complex::Complex64> = range.clone().map(|s| w[s]).collect();

    // Already a coordinate slot inside the block: reordering columns keeps a
    // permutation basis a permutation.
    if let Some(hot) = block
        .iter()
        .position(|z| (z.norm() - 1.0).abs() < 1e-12)
    {
        if block
            .iter()
            .enumerate()
            .all(|(i, z)| i == hot || z.norm() < 1e-12)
        {
            let n = basis.dim();
            let mut order: Vec<usize> = (0..n).collect();
            order.swap(range.start, range.start + hot);
            return reorder_columns(basis, &order);
        }
    }

    // General case: build a block unitary R with R·(w|block) = e_0 and take
    // basis · R†.
    let mut r = CMatrix::identity(k, k);
    // Householder: reflect w|block onto e_0 (complex phase handled via the
    // standard choice of sign).
    let mut u: Vec<num_complex::Complex64> = block.clone();
    let alpha = u[0];
    let norm: f64 = u.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let phase = if alpha.norm() > 0.0 {
        alpha / creal(alpha.norm())
    } else {
        creal(1.0)
    };
    u[0] += phase * creal(norm);
    let unorm: f64 = u.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if unorm > 0.0 {
        for z in u.iter_mut() {
            *z /= creal(unorm);
        }
        // R = phase_fix · (I − 2uu*)
        for j in 0..k {
            for i in 0..k {
                let h = if i == j { creal(1.0) } else { creal(0.0) };
                r[(i, j)] = h - creal(2.0) * u[i] * u[j].conj();
            }
        }
        // (I − 2uu*) w = −phase·norm·e_0; absorb the phase so R w = e_0.
        let fix = -(phase.conj());
        for j in 0..k {
            for i in 0..1 {
                r[(i, j)] *= fix;
            }
        }
    }

    // New basis columns inside the block: V' = V · R†.
    let mut mat = basis.matrix().clone();
    let old_block: Vec<nalgebra::DVector<num_complex::Complex64>> =
        range.clone().map(|s| mat.column(s).into_owned()).collect();
    for (local_j, s) in range.clone().enumerate() {
        let mut col = nalgebra::DVector::from_element(mat.nrows(), creal(0.0));
        for (local_i, old) in old_block.iter().enumerate() {
            // (V R†)_col j = Σ_i V_col i · conj(R[j][i])
            col += old * r[(local_j, local_i)].conj();
        }
        mat.set_column(s, &col);
    }
    Unitary::from_matrix_unchecked(mat)
}

fn reorder_columns(basis: &Unitary, order: &[usize]) -> Unitary {
    match basis.permutation() {
        Some(p) => Unitary::from_permutation(order.iter().map(|&j| p[j]).collect()),
        None => {
            let mut mat = basis.matrix().clone();
            let src = basis.matrix();
            for (slot, &j) in order.iter().enumerate() {
                if slot != j {
                    mat.set_column(slot, &src.column(j));
                }
            }
            Unitary::from_matrix_unchecked(mat)
        }
    }
}

/// Decomposes a traceless Hermitian matrix, choosing the protected projection
/// inside the top eigenvalue cluster (first slot, for determinism).
pub fn decompose_traceless(x: &HermitianMatrix, tol: &Tolerances) -> Result<CommutatorDecomposition> {
    traceless_guard(x, tol)?;
    let sd = eigendecompose(x, tol)?;
    let top = sd.cluster_count() - 1;
    let p_slot = sd.cluster_range(top).start;
    let avoided = sd.slot_projection(p_slot);
    run_decomposition(x, &sd, p_slot, avoided, tol)
}

/// Witness `Y` with `YY*` and `Y*Y` commuting and `YY* − Y*Y` equal to the
/// decomposed matrix.
#[derive(Clone, Debug)]
pub struct Witness {
    pub y: CMatrix,
    pub shift: f64,
}

/// Builds `Y = (A + tI)^{1/2} U*` from a decomposition. The default shift is
/// `t = ‖A‖`; a user shift must keep `A + tI` positive semidefinite.
pub fn build_witness(
    dec: &CommutatorDecomposition,
    shift: Option<f64>,
    tol: &Tolerances,
) -> Result<Witness> {
    let t = shift.unwrap_or_else(|| dec.a.operator_norm());
    let eigs = dec.a.eigenvalues();
    let min_eig = eigs.first().copied().unwrap_or(0.0);
    if min_eig + t < -tol.residual_abs(dec.a.operator_norm()) {
        return Err(Error::ShiftTooSmall {
            shift: t,
            min_eigenvalue: min_eig,
        });
    }
    let sd = eigendecompose(&dec.a, tol)?;
    let sqrt_diag: Vec<f64> = sd
        .slot_values()
        .iter()
        .map(|&v| (v + t).max(0.0).sqrt())
        .collect();
    let root = sd.basis().conjugate_real_diagonal(&sqrt_diag);
    let y = mat_mul(root.matrix(), dec.unitary.adjoint().matrix());
    Ok(Witness { y, shift: t })
}

/// Residuals of a witness claim, checkable without the decomposition.
#[derive(Clone, Debug)]
pub struct WitnessReport {
    /// `‖[YY*, Y*Y]‖_F`
    pub commutator_residual: f64,
    /// `‖(YY* − Y*Y) − X‖_F`
    pub reconstruction_residual: f64,
    /// Normalized trace of `X` (zero for any abelian self-commutator).
    pub trace: f64,
    pub source_norm: f64,
    pub pass: bool,
}

/// Verification thresholds for witnesses: commutator scaled by `1 + ‖X‖²`,
/// reconstruction by `1 + ‖X‖`.
#[derive(Clone, Copy, Debug)]
pub struct WitnessBounds {
    pub commutator: f64,
    pub reconstruction: f64,
}

impl Default for WitnessBounds {
    fn default() -> Self {
        WitnessBounds {
            commutator: 1e-8,
            reconstruction: 1e-9,
        }
    }
}

/// Checks that `Y` witnesses `X` as an abelian self-commutator:
/// `YY*` and `Y*Y` commute and their difference reconstructs `X`.
pub fn verify_witness(
    x: &HermitianMatrix,
    y: &CMatrix,
    bounds: &WitnessBounds,
) -> Result<WitnessReport> {
    if y.nrows() != x.dim() || y.ncols() != x.dim() {
        return Err(Error::DimensionMismatch {
            left: x.dim(),
            right: y.nrows(),
        });
    }
    let adj = y.adjoint();
    let yys = mat_mul(y, &adj);
    let syy = mat_mul(&adj, y);
    let commutator_residual = (mat_mul(&yys, &syy) - mat_mul(&syy, &yys)).norm();
    let reconstruction_residual = (yys - syy - x.matrix()).norm();
    let source_norm = x.operator_norm();
    let pass = commutator_residual <= bounds.commutator * (1.0 + source_norm * source_norm)
        && reconstruction_residual <= bounds.reconstruction * (1.0 + source_norm);
    Ok(WitnessReport {
        commutator_residual,
        reconstruction_residual,
        trace: x.normalized_trace(),
        source_norm,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn diag(d: &[f64]) -> HermitianMatrix {
        HermitianMatrix::from_real_diagonal(d)
    }

    #[test]
    fn zero_matrix_decomposes_trivially() {
        let x = HermitianMatrix::zeros(3);
        let dec = decompose_traceless(&x, &tol()).unwrap();
        assert_eq!(dec.a, HermitianMatrix::zeros(3));
        assert_eq!(dec.b, HermitianMatrix::zeros(3));
        assert!(dec.basis_trace.is_empty());
    }

    #[test]
    fn two_point_spectrum() {
        let x = diag(&[1.0, -1.0]);
        let dec = decompose_traceless(&x, &tol()).unwrap();
        assert_eq!(dec.a.diagonal_reals().unwrap(), vec![0.0, -1.0]);
        assert_eq!(dec.b.diagonal_reals().unwrap(), vec![-1.0, 0.0]);
        // U is the swap in original coordinates.
        let u = dec.unitary.permutation().unwrap();
        assert_eq!(u, &[1, 0]);
    }

    #[test]
    fn with_projection_on_first_coordinate() {
        let x = diag(&[1.0, -1.0]);
        let p = Projection::coordinate(2, &[0]);
        let dec = decompose_with_projection(&x, &p, &tol()).unwrap();
        assert_eq!(dec.a.diagonal_reals().unwrap(), vec![0.0, -1.0]);
        assert_eq!(dec.b.diagonal_reals().unwrap(), vec![-1.0, 0.0]);
    }

    #[test]
    fn golden_three_point_recursion() {
        let x = diag(&[2.0, -1.0, -1.0]);
        let dec = decompose_traceless(&x, &tol()).unwrap();
        assert_eq!(dec.a.diagonal_reals().unwrap(), vec![0.0, -2.0, -1.0]);
        assert_eq!(dec.b.diagonal_reals().unwrap(), vec![-2.0, -1.0, 0.0]);
        assert_eq!(dec.basis_trace.len(), 2);
        // Working basis is ascending: slots (0,1) carry −1, slot 2 carries 2.
        assert_eq!(dec.basis_trace[0].p_slot, 2);
        assert_eq!(dec.basis_trace[0].q_slot, 0);
        assert_eq!(dec.basis_trace[0].alpha, 2.0);
        assert_eq!(dec.basis_trace[1].p_slot, 0);
        assert_eq!(dec.basis_trace[1].q_slot, 1);
        assert_eq!(dec.basis_trace[1].alpha, 1.0);
    }

    #[test]
    fn rejects_nonzero_trace() {
        let x = diag(&[1.0, 1.0]);
        assert!(matches!(
            decompose_traceless(&x, &tol()),
            Err(Error::NotTraceless { .. })
        ));
        let fixed = recentered(&x);
        assert!(decompose_traceless(&fixed, &tol()).is_ok());
    }

    #[test]
    fn rejects_incompatible_projection() {
        let x = diag(&[1.0, -1.0]);
        let p = Projection::coordinate(2, &[0, 1]);
        assert!(matches!(
            decompose_with_projection(&x, &p, &tol()),
            Err(Error::ProjectionIncompatible(_))
        ));
    }

    #[test]
    fn witness_two_by_two() {
        let x = diag(&[1.0, -1.0]);
        let dec = decompose_traceless(&x, &tol()).unwrap();
        let w = build_witness(&dec, Some(1.0), &tol()).unwrap();
        let report = verify_witness(&x, &w.y, &WitnessBounds::default()).unwrap();
        assert!(report.pass, "{report:?}");
        assert!(report.trace.abs() < 1e-15);
    }

    #[test]
    fn witness_explicit_form() {
        // A = diag(1,0), B = diag(0,1), U = swap, t = 1 gives Y = [[0,√2],[1,0]].
        let dec = CommutatorDecomposition {
            a: diag(&[1.0, 0.0]),
            b: diag(&[0.0, 1.0]),
            unitary: Unitary::from_permutation(vec![1, 0]),
            avoided_projection: None,
            basis_trace: vec![],
        };
        let w = build_witness(&dec, Some(1.0), &tol()).unwrap();
        let y = &w.y;
        assert!((y[(0, 1)].re - 2.0_f64.sqrt()).abs() < 1e-12);
        assert!((y[(1, 0)].re - 1.0).abs() < 1e-12);
        assert!(y[(0, 0)].norm() < 1e-12 && y[(1, 1)].norm() < 1e-12);
        let x = diag(&[1.0, -1.0]);
        assert!(verify_witness(&x, y, &WitnessBounds::default())
            .unwrap()
            .pass);
    }

    #[test]
    fn witness_shift_too_small() {
        let x = diag(&[1.0, -1.0]);
        let dec = decompose_traceless(&x, &tol()).unwrap();
        assert!(matches!(
            build_witness(&dec, Some(0.5), &tol()),
            Err(Error::ShiftTooSmall { .. })
        ));
    }

    #[test]
    fn nilpotent_witness_verifies_against_its_commutator() {
        // Y = [[0,1],[0,0]]: YY* − Y*Y = diag(1,−1) with commuting products.
        let mut y = CMatrix::zeros(2, 2);
        y[(0, 1)] = creal(1.0);
        let x = diag(&[1.0, -1.0]);
        assert!(verify_witness(&x, &y, &WitnessBounds::default())
            .unwrap()
            .pass);
        // negative control: unrelated target fails reconstruction
        let wrong = diag(&[2.0, 0.0]);
        assert!(!verify_witness(&wrong, &y, &WitnessBounds::default())
            .unwrap()
            .pass);
    }
}
