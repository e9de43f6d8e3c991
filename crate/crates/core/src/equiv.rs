//! Approximate unitary equivalence via moments, assembly of commuting
//! abelian approximate self-commutators from a valid eight-tuple, and the
//! 2×2 corner embedding.
//!
//! Two Hermitian elements are approximately unitarily equivalent, written
//! `A ∼ B`, when `q(Aᵏ) = q(Bᵏ)` for every `k`. At matrix scale, comparing
//! moments up to `k = n` is complete: by Newton's identities the first `n`
//! power sums determine the characteristic polynomial, so moment equality up
//! to order `n` is exactly equality of eigenvalue multisets.

use crate::error::{Error, Result};
use crate::matrix::{mat_mul, CMatrix, HermitianMatrix};
use crate::spectral::Projection;
use crate::tolerance::Tolerances;

/// Power-sum moments `q(A^k)`, `k = 1..=max_order`.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentVector {
    max_order: usize,
    values: Vec<f64>,
}

impl MomentVector {
    pub fn max_order(&self) -> usize {
        self.max_order
    }

    /// `q(A^k)`; `k` is 1-based.
    pub fn value(&self, k: usize) -> f64 {
        self.values[k - 1]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Moments computed from eigenvalues, which is numerically stabler than
/// forming matrix powers.
pub fn moments(a: &HermitianMatrix, max_order: usize) -> Result<MomentVector> {
    if max_order == 0 {
        return Err(Error::EmptyInput);
    }
    let eigs = a.eigenvalues();
    let n = eigs.len() as f64;
    let mut values = Vec::with_capacity(max_order);
    let mut powers: Vec<f64> = vec![1.0; eigs.len()];
    for _ in 1..=max_order {
        for (p, &e) in powers.iter_mut().zip(&eigs) {
            *p *= e;
        }
        values.push(powers.iter().sum::<f64>() / n);
    }
    Ok(MomentVector { max_order, values })
}

/// Largest scaled moment deviation between two Hermitian matrices, orders
/// `1..=max_order`. The order-`k` deviation is divided by `max(1, ‖·‖)^k`, so
/// one tolerance works across orders.
pub fn moment_deviation(
    a1: &HermitianMatrix,
    a2: &HermitianMatrix,
    max_order: usize,
) -> Result<f64> {
    if a1.dim() != a2.dim() {
        return Err(Error::DimensionMismatch {
            left: a1.dim(),
            right: a2.dim(),
        });
    }
    let m1 = moments(a1, max_order)?;
    let m2 = moments(a2, max_order)?;
    let scale = a1.operator_norm().max(a2.operator_norm()).max(1.0);
    let mut worst: f64 = 0.0;
    let mut denom = 1.0;
    for k in 1..=max_order {
        denom *= scale;
        worst = worst.max((m1.value(k) - m2.value(k)).abs() / denom);
    }
    Ok(worst)
}

/// Moment criterion for `A₁ ∼ A₂` up to order `max_order`. With
/// `max_order ≥ dim` this coincides with equality of eigenvalue multisets.
pub fn approx_equivalent(
    a1: &HermitianMatrix,
    a2: &HermitianMatrix,
    max_order: usize,
    tol: f64,
) -> Result<bool> {
    Ok(moment_deviation(a1, a2, max_order)? <= tol)
}

/// The eight commuting self-adjoint elements and corner projection from
/// which a pair of commuting abelian approximate self-commutators is
/// assembled.
#[derive(Clone, Debug)]
pub struct AssemblyTuple {
    pub a1: HermitianMatrix,
    pub a2: HermitianMatrix,
    pub b1: HermitianMatrix,
    pub b2: HermitianMatrix,
    pub y1: HermitianMatrix,
    pub y2: HermitianMatrix,
    pub s1: HermitianMatrix,
    pub s2: HermitianMatrix,
    pub corner: Projection,
}

impl AssemblyTuple {
    fn members(&self) -> [(&'static str, &HermitianMatrix); 8] {
        [
            ("A1", &self.a1),
            ("A2", &self.a2),
            ("B1", &self.b1),
            ("B2", &self.b2),
            ("Y1", &self.y1),
            ("Y2", &self.y2),
            ("S1", &self.s1),
            ("S2", &self.s2),
        ]
    }

    pub fn dim(&self) -> usize {
        self.a1.dim()
    }

    /// The element the tuple reconstructs: `A1 − B1 + A2 − B2 + Y1 + Y2`.
    pub fn reconstructed(&self) -> HermitianMatrix {
        let mut x = &(&self.a1 - &self.b1) + &(&self.a2 - &self.b2);
        x = &x + &self.y1;
        &x + &self.y2
    }
}

/// Residual of one tuple condition.
#[derive(Clone, Debug)]
pub struct ConditionReport {
    pub name: &'static str,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Per-condition verdicts for an [`AssemblyTuple`].
#[derive(Clone, Debug)]
pub struct TupleReport {
    pub conditions: Vec<ConditionReport>,
    pub pass: bool,
}

fn orthogonality_residual(a: &HermitianMatrix, b: &HermitianMatrix) -> f64 {
    // Hermitian operands: A ⊥ B reduces to AB = 0 (and BA = (AB)* follows).
    mat_mul(a.matrix(), b.matrix()).norm()
}

/// Checks the six structural conditions of a tuple:
/// 1. all eight elements commute pairwise,
/// 2. `A1∼B1`, `A2∼B2`, `Y1∼S1`, `Y2∼S2`, and `S1+S2` is spectrally
///    symmetric (`∼` its negative),
/// 3. the orthogonality pattern, including `B2·P = P·B2 = Y1+Y2`,
/// 4. `{Y1,Y2} ⊥ {S1,S2}`,
/// 5. `Y1,Y2,S1,S2` live in the corner `P·(·)·P`,
/// 6. the reconstruction identity defining `X` (holds by construction).
pub fn validate_tuple(t: &AssemblyTuple, tol: &Tolerances) -> Result<TupleReport> {
    let dim = t.dim();
    for (_, m) in t.members() {
        if m.dim() != dim {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: m.dim(),
            });
        }
    }
    if t.corner.dim() != dim {
        return Err(Error::DimensionMismatch {
            left: dim,
            right: t.corner.dim(),
        });
    }

    let scale = t
        .members()
        .iter()
        .map(|(_, m)| m.max_abs())
        .fold(0.0, f64::max);
    let thr = tol.residual * (1.0 + scale * scale) * dim as f64;
    let moment_thr = 1e-9;
    let mut conditions = Vec::new();

    // (i) everything commutes
    let members = t.members();
    let mut commute: f64 = 0.0;
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            let r = (mat_mul(members[i].1.matrix(), members[j].1.matrix())
                - mat_mul(members[j].1.matrix(), members[i].1.matrix()))
            .norm();
            commute = commute.max(r);
        }
    }
    conditions.push(ConditionReport {
        name: "commuting family",
        residual: commute,
        tolerance: thr,
        pass: commute <= thr,
    });

    // (ii) moment equalities
    let k = dim;
    let s_sum = &t.s1 + &t.s2;
    let s_neg = s_sum.scaled(-1.0);
    let pairs = [
        (&t.a1, &t.b1),
        (&t.a2, &t.b2),
        (&t.y1, &t.s1),
        (&t.y2, &t.s2),
        (&s_sum, &s_neg),
    ];
    let mut equiv: f64 = 0.0;
    for (x, y) in pairs {
        equiv = equiv.max(moment_deviation(x, y, k)?);
    }
    conditions.push(ConditionReport {
        name: "moment equivalences",
        residual: equiv,
        tolerance: moment_thr,
        pass: equiv <= moment_thr,
    });

    // (iii) orthogonality pattern and the corner identity for B2
    let p = t.corner.matrix();
    let mut ortho: f64 = 0.0;
    for (x, y) in [
        (&t.a1, &t.a2),
        (&t.a1, &t.b1),
        (&t.a1, p),
        (&t.a2, &t.b2),
        (&t.a2, p),
        (&t.b1, &t.b2),
        (&t.b1, p),
    ] {
        ortho = ortho.max(orthogonality_residual(x, y));
    }
    let y_sum = &t.y1 + &t.y2;
    let b2p = mat_mul(t.b2.matrix(), p.matrix());
    let pb2 = mat_mul(p.matrix(), t.b2.matrix());
    ortho = ortho.max((&b2p - y_sum.matrix()).norm());
    ortho = ortho.max((&pb2 - y_sum.matrix()).norm());
    conditions.push(ConditionReport {
        name: "orthogonality pattern",
        residual: ortho,
        tolerance: thr,
        pass: ortho <= thr,
    });

    // (iv) Y's orthogonal to S's
    let mut ys: f64 = 0.0;
    for x in [&t.y1, &t.y2] {
        for y in [&t.s1, &t.s2] {
            ys = ys.max(orthogonality_residual(x, y));
        }
    }
    conditions.push(ConditionReport {
        name: "Y ⊥ S",
        residual: ys,
        tolerance: thr,
        pass: ys <= thr,
    });

    // (v) corner support
    let mut corner: f64 = 0.0;
    for m in [&t.y1, &t.y2, &t.s1, &t.s2] {
        let pmp = mat_mul(&mat_mul(p.matrix(), m.matrix()), p.matrix());
        corner = corner.max((pmp - m.matrix()).norm());
    }
    conditions.push(ConditionReport {
        name: "corner support",
        residual: corner,
        tolerance: thr,
        pass: corner <= thr,
    });

    // (vi) the reconstruction identity defines X
    conditions.push(ConditionReport {
        name: "reconstruction identity",
        residual: 0.0,
        tolerance: thr,
        pass: true,
    });

    let pass = conditions.iter().all(|c| c.pass);
    Ok(TupleReport { conditions, pass })
}

/// The assembled pair of commuting abelian approximate self-commutators and
/// the intermediate sums they difference.
#[derive(Clone, Debug)]
pub struct AssemblyPair {
    pub x1: HermitianMatrix,
    pub x2: HermitianMatrix,
    pub x: HermitianMatrix,
    pub v1: HermitianMatrix,
    pub w1: HermitianMatrix,
    pub v2: HermitianMatrix,
    pub w2: HermitianMatrix,
    /// `‖(X1 + X2) − X‖_F`; a pure addition identity, so at rounding scale.
    pub reconstruction_residual: f64,
    /// Worst scaled moment deviation over `V1∼W1`, `V2∼W2`.
    pub moment_residual: f64,
}

/// Assembles `X1 = V1 − W1` and `X2 = V2 − W2` from a validated tuple, where
///
/// ```text
/// V1 = A1 + Y1 − S2,   V2 = A2 + ½(S1+S2),
/// W1 = B1 + S1 − Y2,   W2 = B2 − ½(S1+S2).
/// ```
///
/// Orthogonal additivity of approximate equivalence gives `V1 ∼ W1` and
/// `V2 ∼ W2` (verified numerically here), so both differences are abelian
/// approximate self-commutators, they commute, and `X1 + X2` reproduces the
/// tuple's element exactly.
pub fn assemble_pair(t: &AssemblyTuple, tol: &Tolerances) -> Result<AssemblyPair> {
    let report = validate_tuple(t, tol)?;
    if !report.pass {
        let failed: Vec<&str> = report
            .conditions
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.name)
            .collect();
        return Err(Error::InvalidTuple(format!(
            "tuple conditions failed: {}",
            failed.join(", ")
        )));
    }

    let half_s = (&t.s1 + &t.s2).scaled(0.5);
    let v1 = &(&t.a1 + &t.y1) - &t.s2;
    let w1 = &(&t.b1 + &t.s1) - &t.y2;
    let v2 = &t.a2 + &half_s;
    let w2 = &t.b2 - &half_s;
    let x1 = &v1 - &w1;
    let x2 = &v2 - &w2;
    let x = t.reconstructed();
    let sum = &x1 + &x2;
    let reconstruction_residual = (&sum - &x).frobenius_norm();

    let k = t.dim();
    let moment_residual = moment_deviation(&v1, &w1, k)?.max(moment_deviation(&v2, &w2, k)?);

    let scale = 1.0 + x.max_abs();
    if reconstruction_residual > 1e-12 * scale * t.dim() as f64 {
        return Err(Error::InternalInvariantBroken(format!(
            "assembly reconstruction residual {reconstruction_residual:e}"
        )));
    }
    if moment_residual > 1e-9 {
        return Err(Error::InternalInvariantBroken(format!(
            "assembled halves are not moment-equivalent: {moment_residual:e}"
        )));
    }

    Ok(AssemblyPair {
        x1,
        x2,
        x,
        v1,
        w1,
        v2,
        w2,
        reconstruction_residual,
        moment_residual,
    })
}

/// Embeds `X` into the 2×2 matrix algebra over the factor as
/// `X̃ = diag(X, 0)`, together with the corner projection `E = diag(I, 0)`.
/// The support of `X̃` sits under `E` and `D(E) = ½`, so the assembly theorem
/// applies to `X̃` whenever `q(X) = 0`.
pub fn embed_2x2(x: &HermitianMatrix) -> (HermitianMatrix, Projection) {
    let n = x.dim();
    let mut mat = CMatrix::zeros(2 * n, 2 * n);
    mat.view_mut((0, 0), (n, n)).copy_from(x.matrix());
    let slots: Vec<usize> = (0..n).collect();
    (
        HermitianMatrix::from_matrix_unchecked(mat),
        Projection::coordinate(2 * n, &slots),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(d: &[f64]) -> HermitianMatrix {
        HermitianMatrix::from_real_diagonal(d)
    }

    #[test]
    fn moments_of_symmetric_spectrum() {
        let m = moments(&diag(&[1.0, -1.0]), 3).unwrap();
        assert_eq!(m.values(), &[0.0, 1.0, 0.0]);
        let z = moments(&HermitianMatrix::zeros(4), 5).unwrap();
        assert!(z.values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn moment_criterion_examples() {
        let a = diag(&[1.0, -1.0]);
        let b = diag(&[-1.0, 1.0]);
        assert!(approx_equivalent(&a, &b, 2, 1e-10).unwrap());
        let c = diag(&[1.0, 0.0]);
        let d = diag(&[0.0, 0.0]);
        assert!(!approx_equivalent(&c, &d, 1, 1e-10).unwrap());
    }

    #[test]
    fn zero_tuple_validates_and_assembles() {
        let z = HermitianMatrix::zeros(3);
        let t = AssemblyTuple {
            a1: z.clone(),
            a2: z.clone(),
            b1: z.clone(),
            b2: z.clone(),
            y1: z.clone(),
            y2: z.clone(),
            s1: z.clone(),
            s2: z.clone(),
            corner: Projection::zero(3),
        };
        let report = validate_tuple(&t, &Tolerances::default()).unwrap();
        assert!(report.pass);
        let pair = assemble_pair(&t, &Tolerances::default()).unwrap();
        assert_eq!(pair.x1, HermitianMatrix::zeros(3));
        assert_eq!(pair.x2, HermitianMatrix::zeros(3));
        assert_eq!(pair.x, HermitianMatrix::zeros(3));
    }

    #[test]
    fn overlapping_supports_fail_orthogonality() {
        let z = HermitianMatrix::zeros(2);
        let a = diag(&[1.0, 0.0]);
        let t = AssemblyTuple {
            a1: a.clone(),
            a2: a.clone(),
            b1: z.clone(),
            b2: z.clone(),
            y1: z.clone(),
            y2: z.clone(),
            s1: z.clone(),
            s2: z.clone(),
            corner: Projection::zero(2),
        };
        let report = validate_tuple(&t, &Tolerances::default()).unwrap();
        assert!(!report.pass);
        let failed: Vec<_> = report
            .conditions
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.name)
            .collect();
        assert!(failed.contains(&"orthogonality pattern"));
        assert!(matches!(
            assemble_pair(&t, &Tolerances::default()),
            Err(Error::InvalidTuple(_))
        ));
    }

    #[test]
    fn corner_embedding() {
        let x = diag(&[1.0, -1.0]);
        let (xt, e) = embed_2x2(&x);
        assert_eq!(xt.dim(), 4);
        assert_eq!(xt.normalized_trace(), 0.0);
        assert_eq!(e.dimension_value(), 0.5);
        assert_eq!(
            xt.diagonal_reals().unwrap(),
            vec![1.0, -1.0, 0.0, 0.0]
        );

        let one = HermitianMatrix::identity(1);
        let (t, _) = embed_2x2(&one);
        assert_eq!(t.normalized_trace(), 0.5);
    }
}
