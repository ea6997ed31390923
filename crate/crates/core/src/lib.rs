//! Classical (Kolmogorov) versus quantum conditional probability.
//!
//! * [`prob`]: finite probability spaces, `±1` variables, Bayes conditionals,
//!   all in exact rational arithmetic.
//! * [`qubit`]: spin projections `σ(θ)`, their analytic eigenvectors, Born
//!   probabilities and projective collapse.
//! * [`inequality`]: Bell and Wigner inequalities on classical spaces and on
//!   quantum conditionals, plus a scanner and minimizer for the
//!   one-parameter family `(0, 6θ, 2θ)`.
//! * [`fit`]: exact decision whether a classical joint distribution
//!   reproduces given pairwise statistics.
//! * [`measurement`]: seeded Monte Carlo of the measure–collapse–measure
//!   protocol.

pub mod error;
pub mod fit;
pub mod inequality;
pub mod measurement;
pub mod prob;
pub mod qubit;
pub mod rational;
mod sign;

pub use error::{Error, Result};
pub use fit::{
    decide_feasibility, enumerate_wigner_facets, targets_from_quantum, verify_witness, Certificate,
    FeasibilityResult, JointDistribution8, PairwiseTargets, Var, WignerFacet,
};
pub use inequality::{
    bell_covariation_check, maximize_violation, quantum_wigner_conditional, scan_violations,
    trig_specialization, wigner_conditional_check, wigner_joint_check, InequalityKind, InequalityReport,
    Minimizer, Value, ViolationScanResult,
};
pub use measurement::{
    compare_to_theory, conditional_frequency, run_protocol, Comparison, FrequencyTable, ProtocolSpec,
};
pub use prob::{random_space_and_variables, DichotomicVariable, EventProbability, FiniteProbabilitySpace};
pub use qubit::{
    born_probability, collapse, quantum_conditional, transition_probability, ConditionalMatrix, EigenPair,
    QubitState, SpinObservable,
};
pub use rational::Rational;
pub use sign::Sign;
