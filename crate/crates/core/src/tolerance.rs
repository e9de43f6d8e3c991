use crate::error::{Error, Result};

/// Numerical tolerances, stored as dimensionless rates.
///
/// Every rate is multiplied by a scale derived from the matrices at the point
/// of use (typically `1 + ‖X‖`), so the same `Tolerances` value works across
/// magnitudes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Allowed deviation of `entries[j][k]` from `conj(entries[k][j])`.
    pub hermiticity: f64,
    /// Gap threshold separating distinct eigenvalue clusters.
    pub cluster_gap: f64,
    /// Residual allowed in reconstructions and zero tests.
    pub residual: f64,
    /// Per-entry rate for the traceless precondition, `|tr X| ≤ rate·n·(1+‖X‖)`.
    pub trace_zero: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            hermiticity: 1e-9,
            cluster_gap: 1e-8,
            residual: 1e-9,
            trace_zero: 1e-10,
        }
    }
}

impl Tolerances {
    pub fn new(hermiticity: f64, cluster_gap: f64, residual: f64, trace_zero: f64) -> Result<Self> {
        let t = Tolerances {
            hermiticity,
            cluster_gap,
            residual,
            trace_zero,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("hermiticity", self.hermiticity),
            ("cluster_gap", self.cluster_gap),
            ("residual", self.residual),
            ("trace_zero", self.trace_zero),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidTolerance(format!(
                    "{name} must be strictly positive and finite, got {v}"
                )));
            }
        }
        Ok(())
    }

    /// Absolute hermiticity threshold at the given scale.
    pub fn hermiticity_abs(&self, scale: f64) -> f64 {
        self.hermiticity * (1.0 + scale)
    }

    /// Absolute cluster-gap threshold at the given scale.
    pub fn cluster_gap_abs(&self, scale: f64) -> f64 {
        self.cluster_gap * (1.0 + scale)
    }

    /// Absolute residual threshold at the given scale.
    pub fn residual_abs(&self, scale: f64) -> f64 {
        self.residual * (1.0 + scale)
    }

    /// Absolute traceless threshold for an `n`-dimensional matrix of the given norm.
    pub fn trace_zero_abs(&self, dim: usize, scale: f64) -> f64 {
        self.trace_zero * dim as f64 * (1.0 + scale)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_nonpositive_rates() {
        assert!(Tolerances::new(0.0, 1e-8, 1e-9, 1e-10).is_err());
        assert!(Tolerances::new(1e-9, -1.0, 1e-9, 1e-10).is_err());
        assert!(Tolerances::new(1e-9, 1e-8, f64::NAN, 1e-10).is_err());
        assert!(Tolerances::new(1e-9, 1e-8, 1e-9, 1e-10).is_ok());
    }

    #[test]
    fn scaled_thresholds() {
        let t = Tolerances::default();
        assert_eq!(t.residual_abs(0.0), 1e-9);
        assert_eq!(t.trace_zero_abs(4, 1.0), 1e-10 * 4.0 * 2.0);
    }
}
