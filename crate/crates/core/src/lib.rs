//! Exact computations with quasi-socle ideals `I = Q : 𝔪^q`.
//!
//! Two concrete models are covered: monomial parameter ideals
//! `Q = (x_1^{a_1}, …, x_d^{a_d})` in a regular local ring, and `Q = (t^{an})`
//! in the numerical semigroup ring `k[[t^a, t^b]]`. For each, closed-form
//! predictions (integrality over `Q`, the reduction number `⌈q/ℓ⌉`, the
//! Cohen–Macaulay and Gorenstein verdicts) are compared against brute-force
//! ideal arithmetic. No field element is ever represented: every object is
//! monomial, so all verdicts are exact.

pub mod boxmodel;
pub mod closure;
pub mod duality;
pub mod error;
pub mod exponent;
pub mod harness;
pub mod quasisocle;
pub mod semigroup;
pub mod verify;

pub use boxmodel::{mbar_power, project, BoxIdeal, BoxSpec, DEFAULT_BOX_CAP};
pub use closure::{
    closure_diagonal, closure_generators, corollary41_check, in_closure_diagonal, in_closure_general,
    prop42_classify, ClosureQuery,
};
pub use duality::{nilpotency_index, ooishi_gorenstein_check, ArtinianIdeal};
pub use error::{Error, Result};
pub use exponent::{maximal_power, minimalize, ExponentVector, MonomialIdeal};
pub use harness::{
    run_case, run_single, run_sweep, CaseDescriptor, CaseOutcome, Caps, Format, RunOptions, RunReport, Summary,
    SweepRanges, SweepSpec,
};
pub use quasisocle::{
    analyze, compute_i, predict, AnalyzeOptions, CaseReport, CaseSpec, Check, Model, Prediction,
};
pub use semigroup::{
    semigroup_members, sg_analyze, sg_closure, sg_compute_i, sg_predict, ArtinianQuotient, NumericalSemigroup,
    SemigroupIdeal, SemigroupSpec,
};
