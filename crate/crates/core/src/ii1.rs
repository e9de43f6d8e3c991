//! Desk-scale model of self-adjoint elements of a type II₁ factor, their
//! dyadic quantization into finite subfactors, and a finite surrogate for
//! the ultraproduct tail.
//!
//! A [`SpectralElement`] is an atomic spectral measure: finitely many
//! eigenvalues `α₁ < … < α_m` carrying dimension weights `μ_i` that sum to
//! one. Its norm is `max |α_i|` and its quasitrace is `q(X) = Σ α_i μ_i`.
//!
//! [`quantize`] rounds the weights down to the dyadic grid `{0, 1/n, …, 1}`,
//!
//! ```text
//! θ_n(i) = max{ ζ ∈ Z_n : ζ ≤ μ_i },
//! ```
//!
//! which realizes the element inside an order-`n` matrix subfactor as the
//! diagonal `H_n` with `α_i` repeated `n·θ_n(i)` times. Recentring
//! `B_n = H_n + (q(X) − q(H_n))·I` restores the quasitrace exactly, and both
//! errors have closed forms:
//!
//! ```text
//! |q(X) − q(H_n)| = |Σ α_i (μ_i − θ_n(i))| ≤ m‖X‖/n,
//! d(X, H_n)³      =  Σ α_i² (μ_i − θ_n(i)) ≤ m‖X‖²/n.
//! ```
//!
//! [`pipeline`] chains quantization with the commutator decomposition: for
//! each scheduled `n` the recentered `B_n` is traceless, splits into
//! commuting equivalent halves, and the only error between the source element
//! and `A_n − B_n` is the quantization error above.
//!
//! A genuinely free ultrafilter is not computable, so [`ultralimit`] is a
//! deterministic tail-window surrogate: it reports the tail mean together
//! with the tail oscillation and certifies only convergent sequences, the
//! case where the ultralimit agrees with the ordinary limit.

use crate::decomp::{decompose_traceless, CommutatorDecomposition};
use crate::error::{Error, Result};
use crate::matrix::HermitianMatrix;
use crate::tolerance::Tolerances;

/// One atom of a spectral measure: eigenvalue and dimension weight.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Atom {
    pub value: f64,
    pub weight: f64,
}

/// Atomic spectral measure modeling a self-adjoint element of a finite
/// factor: values strictly increasing, weights positive and summing to one.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralElement {
    atoms: Vec<Atom>,
}

const WEIGHT_SUM_TOL: f64 = 1e-12;

impl SpectralElement {
    pub fn new(atoms: Vec<(f64, f64)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut total = 0.0;
        for (i, &(a, mu)) in atoms.iter().enumerate() {
            if !a.is_finite() || !mu.is_finite() {
                return Err(Error::InvalidElement("non-finite atom".into()));
            }
            if mu <= 0.0 {
                return Err(Error::InvalidElement(format!(
                    "weight {mu} at atom {i} is not positive"
                )));
            }
            if i > 0 && atoms[i - 1].0 >= a {
                return Err(Error::InvalidElement(
                    "values must be strictly increasing".into(),
                ));
            }
            total += mu;
        }
        if (total - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::InvalidElement(format!(
                "weights sum to {total}, expected 1"
            )));
        }
        Ok(SpectralElement {
            atoms: atoms
                .into_iter()
                .map(|(value, weight)| Atom { value, weight })
                .collect(),
        })
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    /// Operator norm of the modeled element: `max |α_i|`.
    pub fn norm(&self) -> f64 {
        self.atoms
            .iter()
            .map(|a| a.value.abs())
            .fold(0.0, f64::max)
    }

    /// Quasitrace `q(X) = Σ α_i μ_i`.
    pub fn quasitrace(&self) -> f64 {
        self.atoms.iter().map(|a| a.value * a.weight).sum()
    }

    /// Shifts every eigenvalue by `c` (the element `X + cI`).
    pub fn shifted(&self, c: f64) -> SpectralElement {
        SpectralElement {
            atoms: self
                .atoms
                .iter()
                .map(|a| Atom {
                    value: a.value + c,
                    weight: a.weight,
                })
                .collect(),
        }
    }

    /// Exact diagonal realization in a matrix factor of dimension `dim`.
    /// Every `μ_i · dim` must be an integer (within 1e−9).
    pub fn realize(&self, dim: usize) -> Result<HermitianMatrix> {
        let mut diag = Vec::with_capacity(dim);
        for atom in &self.atoms {
            let count = atom.weight * dim as f64;
            let rounded = count.round();
            if (count - rounded).abs() > 1e-9 {
                return Err(Error::InvalidElement(format!(
                    "weight {} does not embed at dimension {dim}",
                    atom.weight
                )));
            }
            diag.extend(std::iter::repeat(atom.value).take(rounded as usize));
        }
        if diag.len() != dim {
            return Err(Error::InvalidElement(format!(
                "weights fill {} of {dim} slots",
                diag.len()
            )));
        }
        Ok(HermitianMatrix::from_real_diagonal(&diag))
    }

    /// Worst-case quasitrace error of order-`n` quantization: `m‖X‖/n`.
    pub fn bound_q(&self, n: usize) -> f64 {
        self.atom_count() as f64 * self.norm() / n as f64
    }

    /// Worst-case metric error of order-`n` quantization: `(m‖X‖²/n)^{1/3}`.
    pub fn bound_d(&self, n: usize) -> f64 {
        (self.atom_count() as f64 * self.norm() * self.norm() / n as f64).cbrt()
    }
}

/// Dyadic quantization of a spectral element at order `n`.
#[derive(Clone, Debug)]
pub struct DyadicApproximation {
    order: usize,
    theta: Vec<f64>,
    beta: f64,
    beta_n: f64,
    source: Vec<Atom>,
}

impl DyadicApproximation {
    /// Quantization order `n`.
    pub fn order(&self) -> usize {
        self.order
    }

    /// `θ_n(i)`, one per atom, each on the grid `{0, 1/n, …, 1}`.
    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    /// Quasitrace of the source element.
    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Quasitrace of `H_n`.
    pub fn beta_n(&self) -> f64 {
        self.beta_n
    }

    /// `H_n`: the diagonal with `α_i` on `n·θ_n(i)` contiguous slots, in atom
    /// order, zeros on the remainder.
    pub fn h_matrix(&self) -> HermitianMatrix {
        let mut diag = Vec::with_capacity(self.order);
        for (atom, &theta) in self.source.iter().zip(&self.theta) {
            let k = (theta * self.order as f64).round() as usize;
            diag.extend(std::iter::repeat(atom.value).take(k));
        }
        diag.resize(self.order, 0.0);
        HermitianMatrix::from_real_diagonal(&diag)
    }

    /// `B_n = H_n + (β − β_n)·I`, the recentered approximant whose normalized
    /// trace equals the source quasitrace.
    pub fn b_matrix(&self) -> HermitianMatrix {
        self.h_matrix().shifted(self.beta - self.beta_n)
    }

    pub(crate) fn source_atoms(&self) -> &[Atom] {
        &self.source
    }

    /// Closed-form `d(X, B_n)`: recentring subtracts the mean of the
    /// difference, so `d(X,B_n)³ = d(X,H_n)³ − (β−β_n)²`.
    pub fn output_distance(&self) -> f64 {
        let shift = self.beta - self.beta_n;
        let d3: f64 = self
            .source
            .iter()
            .zip(&self.theta)
            .map(|(a, &t)| a.value * a.value * (a.weight - t))
            .sum();
        (d3 - shift * shift).max(0.0).cbrt()
    }
}

/// Rounds each weight down to the grid `{0, 1/n, …, 1}` and packages the
/// quantization. `n ≥ 2` is required.
pub fn quantize(elem: &SpectralElement, n: usize) -> Result<DyadicApproximation> {
    if n < 2 {
        return Err(Error::InvalidSchedule(format!(
            "quantization order must be at least 2, got {n}"
        )));
    }
    // floor with a tiny forgiveness so exactly-representable k/n weights do
    // not drop a level to rounding.
    let theta: Vec<f64> = elem
        .atoms
        .iter()
        .map(|a| {
            let k = (a.weight * n as f64 + 1e-9).floor();
            (k / n as f64).min(1.0)
        })
        .collect();
    let beta = elem.quasitrace();
    let beta_n = elem
        .atoms
        .iter()
        .zip(&theta)
        .map(|(a, &t)| a.value * t)
        .sum();
    Ok(DyadicApproximation {
        order: n,
        theta,
        beta,
        beta_n,
        source: elem.atoms.clone(),
    })
}

/// Closed-form quantization errors of `approx` relative to its source:
/// `Δq = |Σ α_i (μ_i − θ_i)|` and `d = (Σ α_i² (μ_i − θ_i))^{1/3}`, the
/// quasitrace gap and Haagerup distance between `X` and `H_n` in a common
/// refinement.
pub fn approx_error(elem: &SpectralElement, approx: &DyadicApproximation) -> Result<(f64, f64)> {
    if approx.source_atoms() != elem.atoms() {
        return Err(Error::MismatchedProvenance(
            "approximation was built from a different element".into(),
        ));
    }
    let delta_q: f64 = elem
        .atoms
        .iter()
        .zip(approx.theta())
        .map(|(a, &t)| a.value * (a.weight - t))
        .sum();
    let d3: f64 = elem
        .atoms
        .iter()
        .zip(approx.theta())
        .map(|(a, &t)| a.value * a.value * (a.weight - t))
        .sum();
    Ok((delta_q.abs(), d3.max(0.0).cbrt()))
}

/// Collapses nondecreasing samples into `m` equal-count bins and returns the
/// element with one atom per bin at the bin mean, recentered so its
/// quasitrace equals the sample mean exactly.
pub fn discretize(quantile_samples: &[f64], m: usize) -> Result<SpectralElement> {
    if quantile_samples.is_empty() {
        return Err(Error::EmptyInput);
    }
    if m == 0 {
        return Err(Error::InvalidElement("bin count must be positive".into()));
    }
    if quantile_samples.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidElement(
            "samples must be nondecreasing".into(),
        ));
    }
    let n = quantile_samples.len();
    let mut atoms: Vec<(f64, f64)> = Vec::with_capacity(m);
    for j in 0..m {
        let lo = j * n / m;
        let hi = (j + 1) * n / m;
        if hi <= lo {
            continue;
        }
        let bin = &quantile_samples[lo..hi];
        let mean = bin.iter().sum::<f64>() / bin.len() as f64;
        let weight = bin.len() as f64 / n as f64;
        match atoms.last_mut() {
            // merge bins that landed on the same value
            Some((v, w)) if (*v - mean).abs() <= 1e-12 * (1.0 + mean.abs()) => *w += weight,
            _ => atoms.push((mean, weight)),
        }
    }
    let elem = SpectralElement::new(atoms)?;
    let sample_mean = quantile_samples.iter().sum::<f64>() / n as f64;
    Ok(elem.shifted(sample_mean - elem.quasitrace()))
}

/// Per-order record of the quantization pipeline.
#[derive(Clone, Debug)]
pub struct ApproximationReport {
    pub order: usize,
    /// `|q(X) − q(H_n)|`
    pub delta_q: f64,
    /// `m‖X‖/n`
    pub bound_q: f64,
    /// Closed-form `d(X, B_n)`
    pub d: f64,
    /// `(m‖X‖²/n)^{1/3}`
    pub bound_d: f64,
    /// `max(‖A_n‖, ‖B_n‖)` of the decomposition halves
    pub max_norm: f64,
    /// `‖X‖ + bound_q + 1/n`
    pub norm_budget: f64,
    /// `max_norm − norm_budget` (negative when within budget)
    pub norm_margin: f64,
    /// `‖(A_n − B_n) − B_n-matrix‖_F`
    pub decomposition_residual: f64,
    pub decomposition_pass: bool,
}

/// One pipeline stage: the quantization, its decomposition into commuting
/// equivalent halves, and the per-order report.
#[derive(Clone, Debug)]
pub struct PipelineStage {
    pub order: usize,
    pub approximation: DyadicApproximation,
    pub decomposition: CommutatorDecomposition,
    pub report: ApproximationReport,
}

/// Runs one order of the pipeline: quantize, recenter, decompose, report.
pub fn pipeline_stage(elem: &SpectralElement, n: usize, tol: &Tolerances) -> Result<PipelineStage> {
    let approx = quantize(elem, n)?;
    let b = approx.b_matrix();
    let decomposition = decompose_traceless(&b, tol)?;
    let difference = &decomposition.a - &decomposition.b;
    let decomposition_residual = (&difference - &b).frobenius_norm();
    let (delta_q, _) = approx_error(elem, &approx)?;
    let max_norm = decomposition
        .a
        .operator_norm()
        .max(decomposition.b.operator_norm());
    let bound_q = elem.bound_q(n);
    let norm_budget = elem.norm() + bound_q + 1.0 / n as f64;
    let report = ApproximationReport {
        order: n,
        delta_q,
        bound_q,
        d: approx.output_distance(),
        bound_d: elem.bound_d(n),
        max_norm,
        norm_budget,
        norm_margin: max_norm - norm_budget,
        decomposition_residual,
        decomposition_pass: decomposition_residual <= 1e-10 * (1.0 + elem.norm()),
    };
    Ok(PipelineStage {
        order: n,
        approximation: approx,
        decomposition,
        report,
    })
}

/// Full pipeline over a schedule of quantization orders. The element must be
/// traceless (`|q(X)| ≤ 1e−12`), so every `B_n` is traceless and decomposes.
pub fn pipeline(
    elem: &SpectralElement,
    schedule: &[usize],
    tol: &Tolerances,
) -> Result<Vec<PipelineStage>> {
    if elem.quasitrace().abs() > 1e-12 {
        return Err(Error::NotTraceless {
            trace: elem.quasitrace().abs(),
            tolerance: 1e-12,
        });
    }
    if schedule.is_empty() {
        return Err(Error::InvalidSchedule("schedule is empty".into()));
    }
    schedule
        .iter()
        .map(|&n| pipeline_stage(elem, n, tol))
        .collect()
}

/// Finite truncation of a bounded sequence, with the window of trailing terms
/// used for limit estimation.
#[derive(Clone, Debug)]
pub struct UltraSequence<T> {
    terms: Vec<T>,
    tail_window: usize,
}

impl<T> UltraSequence<T> {
    pub fn new(terms: Vec<T>, tail_window: usize) -> Result<Self> {
        if tail_window < 2 || tail_window > terms.len() {
            return Err(Error::InvalidSchedule(format!(
                "tail window {tail_window} must lie in 2..={}",
                terms.len()
            )));
        }
        Ok(UltraSequence { terms, tail_window })
    }

    pub fn terms(&self) -> &[T] {
        &self.terms
    }

    pub fn tail_window(&self) -> usize {
        self.tail_window
    }

    fn tail(&self) -> &[T] {
        &self.terms[self.terms.len() - self.tail_window..]
    }
}

/// Tail-window limit estimate with its convergence diagnostic.
#[derive(Clone, Copy, Debug)]
pub struct UltralimitEstimate {
    /// Mean of the tail window.
    pub limit: f64,
    /// Max − min over the tail window.
    pub oscillation: f64,
    /// Whether the oscillation is within tolerance. Only a convergent tail is
    /// certified: for convergent sequences the ultralimit along any free
    /// ultrafilter equals the ordinary limit.
    pub converged: bool,
}

/// Tail-window surrogate for the ultralimit of a real sequence.
pub fn ultralimit(seq: &UltraSequence<f64>, tol: f64) -> UltralimitEstimate {
    let tail = seq.tail();
    let limit = tail.iter().sum::<f64>() / tail.len() as f64;
    let max = tail.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = tail.iter().cloned().fold(f64::INFINITY, f64::min);
    let oscillation = max - min;
    UltralimitEstimate {
        limit,
        oscillation,
        converged: oscillation <= tol,
    }
}

/// Verdict on whether two bounded matrix sequences define the same class in
/// the quotient surrogate, plus the tail norm limits.
#[derive(Clone, Debug)]
pub struct NullDifferenceReport {
    pub is_null: bool,
    pub distance: UltralimitEstimate,
    pub left_norm: UltralimitEstimate,
    pub right_norm: UltralimitEstimate,
}

/// Checks whether `d(X_n, Y_n) → 0` over the tail window, which makes the two
/// sequences agree in the quotient. Also reports the tail limits of `‖X_n‖`
/// and `‖Y_n‖` (the quotient norm is dominated by either).
pub fn null_difference(
    xs: &UltraSequence<HermitianMatrix>,
    ys: &UltraSequence<HermitianMatrix>,
    tol: f64,
) -> Result<NullDifferenceReport> {
    if xs.terms.len() != ys.terms.len() {
        return Err(Error::DimensionMismatch {
            left: xs.terms.len(),
            right: ys.terms.len(),
        });
    }
    let mut distances = Vec::with_capacity(xs.terms.len());
    for (x, y) in xs.terms.iter().zip(&ys.terms) {
        distances.push(x.haagerup_distance(y)?);
    }
    let window = xs.tail_window.min(ys.tail_window);
    let dist_seq = UltraSequence::new(distances, window)?;
    let distance = ultralimit(&dist_seq, tol);

    let norms = |terms: &[HermitianMatrix]| -> Result<UltralimitEstimate> {
        let seq = UltraSequence::new(terms.iter().map(|m| m.operator_norm()).collect(), window)?;
        Ok(ultralimit(&seq, f64::INFINITY))
    };
    let left_norm = norms(&xs.terms)?;
    let right_norm = norms(&ys.terms)?;

    Ok(NullDifferenceReport {
        is_null: distance.converged && distance.limit.abs() <= tol,
        distance,
        left_norm,
        right_norm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn elem(atoms: &[(f64, f64)]) -> SpectralElement {
        SpectralElement::new(atoms.to_vec()).unwrap()
    }

    #[test]
    fn element_validation() {
        assert!(matches!(SpectralElement::new(vec![]), Err(Error::EmptyInput)));
        assert!(SpectralElement::new(vec![(0.0, 0.5), (0.0, 0.5)]).is_err());
        assert!(SpectralElement::new(vec![(1.0, 0.5), (-1.0, 0.5)]).is_err());
        assert!(SpectralElement::new(vec![(-1.0, 0.5), (1.0, 0.6)]).is_err());
        let e = elem(&[(-1.0, 0.5), (1.0, 0.5)]);
        assert_eq!(e.quasitrace(), 0.0);
        assert_eq!(e.norm(), 1.0);
    }

    #[test]
    fn exactly_dyadic_quantization() {
        let e = elem(&[(-1.0, 0.5), (1.0, 0.5)]);
        let q = quantize(&e, 2).unwrap();
        assert_eq!(q.theta(), &[0.5, 0.5]);
        assert_eq!(
            q.h_matrix().diagonal_reals().unwrap(),
            vec![-1.0, 1.0]
        );
        assert_eq!(q.b_matrix(), q.h_matrix());
        let (dq, d) = approx_error(&e, &q).unwrap();
        assert_eq!((dq, d), (0.0, 0.0));
    }

    #[test]
    fn two_atom_example_at_order_four() {
        let e = elem(&[(-7.0 / 3.0, 0.3), (1.0, 0.7)]);
        let q = quantize(&e, 4).unwrap();
        assert_eq!(q.theta(), &[0.25, 0.5]);
        assert_eq!(
            q.h_matrix().diagonal_reals().unwrap(),
            vec![-7.0 / 3.0, 1.0, 1.0, 0.0]
        );
        let expected_beta_n = -7.0 / 3.0 * 0.25 + 0.5;
        assert!((q.beta_n() - expected_beta_n).abs() < 1e-15);
        let (dq, d) = approx_error(&e, &q).unwrap();
        let expected_dq = (-7.0 / 3.0 * 0.05 + 0.2_f64).abs();
        let expected_d = (49.0 / 9.0 * 0.05 + 0.2_f64).cbrt();
        assert!((dq - expected_dq).abs() < 1e-14);
        assert!((d - expected_d).abs() < 1e-14);
    }

    #[test]
    fn theta_bracket_property() {
        let e = elem(&[(-0.4, 0.1), (0.25, 0.35), (1.0, 0.55)]);
        for n in [2usize, 3, 7, 64, 1000] {
            let q = quantize(&e, n).unwrap();
            for (atom, &t) in e.atoms().iter().zip(q.theta()) {
                assert!(t <= atom.weight + 1e-9, "θ ≤ μ at n={n}");
                assert!(atom.weight < t + 1.0 / n as f64 + 1e-9, "μ < θ+1/n at n={n}");
            }
        }
    }

    #[test]
    fn recentered_matrix_has_source_quasitrace() {
        let e = elem(&[(-0.5, 0.3), (0.9, 0.7)]);
        let q = quantize(&e, 8).unwrap();
        let b = q.b_matrix();
        assert!((b.normalized_trace() - e.quasitrace()).abs() < 1e-12);
    }

    #[test]
    fn provenance_mismatch_detected() {
        let e1 = elem(&[(-1.0, 0.5), (1.0, 0.5)]);
        let e2 = elem(&[(-2.0, 0.5), (2.0, 0.5)]);
        let q = quantize(&e1, 4).unwrap();
        assert!(matches!(
            approx_error(&e2, &q),
            Err(Error::MismatchedProvenance(_))
        ));
    }

    #[test]
    fn discretize_examples() {
        let constant = discretize(&[2.5; 7], 3).unwrap();
        assert_eq!(constant.atom_count(), 1);
        assert_eq!(constant.atoms()[0].weight, 1.0);
        assert!((constant.atoms()[0].value - 2.5).abs() < 1e-15);

        let pm = discretize(&[-1.0, -1.0, 1.0, 1.0], 2).unwrap();
        assert_eq!(pm.atom_count(), 2);
        assert_eq!(pm.atoms()[0], Atom { value: -1.0, weight: 0.5 });
        assert_eq!(pm.atoms()[1], Atom { value: 1.0, weight: 0.5 });

        assert!(matches!(discretize(&[], 2), Err(Error::EmptyInput)));
        assert!(discretize(&[1.0, 0.0], 2).is_err());
    }

    #[test]
    fn discretize_bin_means_on_uniform_grid() {
        let samples: Vec<f64> = (0..64).map(|i| -1.0 + 2.0 * i as f64 / 63.0).collect();
        let e = discretize(&samples, 8).unwrap();
        assert_eq!(e.atom_count(), 8);
        let shift = e.quasitrace() - samples.iter().sum::<f64>() / 64.0;
        assert!(shift.abs() < 1e-12);
        for (j, atom) in e.atoms().iter().enumerate() {
            let bin = &samples[j * 8..(j + 1) * 8];
            let mean = bin.iter().sum::<f64>() / 8.0;
            assert!((atom.value - mean).abs() < 1e-12);
        }
    }

    #[test]
    fn trivial_pipeline_is_exact() {
        let e = elem(&[(-1.0, 0.5), (1.0, 0.5)]);
        let stages = pipeline(&e, &[2], &Tolerances::default()).unwrap();
        let r = &stages[0].report;
        assert_eq!(r.delta_q, 0.0);
        assert_eq!(r.d, 0.0);
        assert!(r.decomposition_pass);
        assert!(r.max_norm <= 1.0 + 1e-12);
    }

    #[test]
    fn pipeline_rejects_nonzero_quasitrace() {
        let e = elem(&[(1.0, 1.0)]);
        assert!(matches!(
            pipeline(&e, &[2], &Tolerances::default()),
            Err(Error::NotTraceless { .. })
        ));
    }

    #[test]
    fn ultralimit_examples() {
        let constant = UltraSequence::new(vec![3.0; 10], 4).unwrap();
        let est = ultralimit(&constant, 1e-12);
        assert_eq!(est.limit, 3.0);
        assert_eq!(est.oscillation, 0.0);
        assert!(est.converged);

        let harmonic: Vec<f64> = (1..=200).map(|n| 1.0 / n as f64).collect();
        let seq = UltraSequence::new(harmonic, 10).unwrap();
        let est = ultralimit(&seq, 1e-3);
        assert!(est.limit.abs() < 6e-3);
        assert!(est.converged);
    }

    #[test]
    fn null_difference_examples() {
        let len = 4000usize;
        let terms: Vec<HermitianMatrix> = (1..=len)
            .map(|_| HermitianMatrix::from_real_diagonal(&[1.0, -1.0]))
            .collect();
        let xs = UltraSequence::new(terms.clone(), 8).unwrap();
        let ys = UltraSequence::new(terms.clone(), 8).unwrap();
        let same = null_difference(&xs, &ys, 1e-9).unwrap();
        assert!(same.is_null);

        // X_n + (1/n)I: d = |1/n|^{2/3} → 0, about 4e−3 on the tail here
        let drifted: Vec<HermitianMatrix> = (1..=len)
            .map(|n| HermitianMatrix::from_real_diagonal(&[1.0, -1.0]).shifted(1.0 / n as f64))
            .collect();
        let ys = UltraSequence::new(drifted, 8).unwrap();
        let close = null_difference(&xs, &ys, 1e-2).unwrap();
        assert!(close.is_null, "{close:?}");
        // d(X, X+cI) = |c|^{2/3}
        let c: f64 = 1.0 / len as f64;
        let last = HermitianMatrix::from_real_diagonal(&[1.0, -1.0]);
        let d = last.haagerup_distance(&last.shifted(c)).unwrap();
        assert!((d - c.powf(2.0 / 3.0)).abs() < 1e-12);

        // constant unit shift never converges to zero
        let far: Vec<HermitianMatrix> = (1..=len)
            .map(|_| HermitianMatrix::from_real_diagonal(&[2.0, 0.0]))
            .collect();
        let ys = UltraSequence::new(far, 8).unwrap();
        let apart = null_difference(&xs, &ys, 1e-2).unwrap();
        assert!(!apart.is_null);
        assert!((apart.distance.limit - 1.0).abs() < 1e-12);
    }
}
