//! Abelian self-commutator decompositions at desk scale.
//!
//! A self-adjoint matrix `X` with trace zero always splits as `X = A − B`
//! where `A` and `B` commute, are unitarily equivalent, and obey
//! `max(‖A‖, ‖B‖) ≤ ‖X‖`. From such a split, `Y = (A + tI)^{1/2} U*`
//! exhibits `X` as an *abelian self-commutator*: `X = YY* − Y*Y` with `YY*`
//! and `Y*Y` commuting. This crate constructs those decompositions and
//! witnesses, verifies them independently, and simulates the approximation
//! machinery that carries the same statement into type II₁ factors:
//! atomic spectral measures, dyadic quantization into finite subfactors with
//! exact error formulas, a finite ultraproduct surrogate, and the
//! moment-criterion assembly of commuting abelian approximate
//! self-commutators.
//!
//! Start with [`decomp::decompose_traceless`] for the decomposition,
//! [`ii1::pipeline`] for the quantization pipeline, and the `book/` guide in
//! the repository for a narrative walkthrough.

pub mod decomp;
pub mod equiv;
pub mod error;
pub mod fixtures;
pub mod ii1;
pub mod matrix;
pub mod spectral;
pub mod tolerance;

pub use decomp::{
    build_witness, decompose_traceless, decompose_with_projection, recentered,
    verify_decomposition, verify_witness, CommutatorDecomposition, DecompositionBounds,
    DecompositionReport, RecursionStep, Witness, WitnessBounds, WitnessReport,
};
pub use equiv::{
    approx_equivalent, assemble_pair, embed_2x2, moments, validate_tuple, AssemblyPair,
    AssemblyTuple, MomentVector, TupleReport,
};
pub use error::{Error, Result};
pub use ii1::{
    approx_error, discretize, null_difference, pipeline, pipeline_stage, quantize, ultralimit,
    ApproximationReport, Atom, DyadicApproximation, PipelineStage, SpectralElement, UltraSequence,
    UltralimitEstimate,
};
pub use matrix::{CMatrix, HermitianMatrix, Unitary};
pub use spectral::{
    check_quasitrace_axioms, eigendecompose, haagerup_distance, is_orthogonal, join_projections,
    support_projection, unitary_equiv_exact, Projection, QuasitraceReport, SpectralDecomposition,
};
pub use tolerance::Tolerances;
