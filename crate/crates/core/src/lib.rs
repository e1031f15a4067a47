//! Generalized probabilities on collections of intertwined contexts.
//!
//! A *logic* is a pasting of finite contexts (blocks of mutually exclusive
//! atoms) that may share atoms. This crate
//!
//! - parses and validates logics and checks faithful orthogonal
//!   representations ([`logic`], [`rep`]);
//! - enumerates two-valued states and builds the half-valued dispersionless
//!   state of odd cyclic pastings ([`states`]);
//! - synthesizes the canonical partition logic from the states
//!   ([`partition`]);
//! - computes conditional-probability matrices between contexts: classical
//!   (exact rationals, with explicit `0/0` entries), Born-rule and
//!   half-state ([`classical`], [`quantum`]);
//! - classifies matrices as row or doubly stochastic and decomposes them
//!   into permutation or row-vertex matrices ([`stochastic`],
//!   [`decompose`]);
//! - simulates the generalized urn model ([`urn`]).
//!
//! The matrix machinery is generic over [`Scalar`] (`f32`, `f64` and exact
//! [`Rational`]); the aliases below fix the common choices.
//!
//! ```
//! use ctxprob::{classical_cond_prob_matrix, canonical_partition_labels,
//!     enumerate_two_valued_states, parse_logic, Measure};
//!
//! let logic = parse_logic(r#"{"contexts": [
//!     {"name": "C1", "atoms": ["e1", "e2", "h"]},
//!     {"name": "C2", "atoms": ["f1", "f2", "h"]}]}"#).unwrap();
//! let family = enumerate_two_valued_states(&logic);
//! assert_eq!(family.len(), 5);
//! let labels = canonical_partition_labels(&family).unwrap();
//! let m = classical_cond_prob_matrix(&labels, &Measure::uniform(5), "C1", "C2").unwrap();
//! assert_eq!(m.entry(0, 0).to_string(), "1/2");
//! ```

pub mod classical;
pub mod decompose;
pub mod json;
pub mod logic;
pub mod matching;
pub mod matrix;
pub mod partition;
pub mod quantum;
pub mod rep;
pub mod scalar;
pub mod states;
pub mod stochastic;
pub mod table;
pub mod urn;

pub use classical::{
    atom_probability, classical_cond_prob_matrix, exotic_cond_prob_matrix, CondProbEntry, CondProbMatrix, MatrixRule,
    Measure, ProbError,
};
pub use decompose::{
    birkhoff_decompose, row_polytope_decompose, row_polytope_decompose_tol, Decomposition, DecompositionKind, Term,
};
pub use logic::{
    intertwines, parse_logic, read_logic, validate_logic, Atom, Context, ContextSpec, Logic, LogicError,
    ValidationReport, Violation,
};
pub use matrix::Matrix;
pub use partition::{
    canonical_partition_labels, match_up_to_permutation, verify_partition_labels, Label, PartitionError,
    PartitionLabeling,
};
pub use quantum::{
    born_cond_prob_matrix, projector_trace_prob, random_orthonormal_basis, state_probability_vector, BasisContext,
    Projector, PureState, QuantumError,
};
pub use rep::{check_orthogonal_rep, OrthogonalRep, RepError};
pub use scalar::{parse_rational, ratio, Scalar};
pub use states::{
    enumerate_two_valued_states, exotic_half_state, is_separating, DispersionlessState, SeparationReport, StateFamily,
    StructureError, TwoValuedState,
};
pub use stochastic::{classify_partial, classify_stochastic, StochasticError, StochasticVerdict};
pub use urn::{intrinsic_prepare, simulate_cond_prob, simulate_cond_prob_sharded, EmpiricalMatrix, UrnError, UrnSpec};

/// Exact rational scalar.
pub type Rational = num_rational::BigRational;
pub type Complex = num_complex::Complex64;

pub type RealMatrix = Matrix<f64>;
pub type RationalMatrix = Matrix<Rational>;
pub type PartialRationalMatrix = Matrix<Option<Rational>>;

pub type RealDecomposition = Decomposition<f64>;
pub type RationalDecomposition = Decomposition<Rational>;

pub type RealVerdict = StochasticVerdict<f64>;
pub type RationalVerdict = StochasticVerdict<Rational>;

pub type RealBasis = BasisContext<f64>;
pub type RealProjector = Projector<f64>;
pub type RealPureState = PureState<f64>;

/// Default orthonormality/stochasticity tolerance for real inputs.
pub const DEFAULT_TOL: f64 = 1e-10;
