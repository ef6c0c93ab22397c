//! Probabilistic structured argumentation over defeasible theories.
//!
//! The pipeline runs from a theory ([`dsl`]) through argument construction
//! ([`construct`]) and labelling semantics ([`semantics`]) to probability frames
//! ([`frames`]) and the marginals read off them ([`marginals`], [`report`]).
//! Probabilities are exact rationals throughout.

pub mod argument;
pub mod construct;
pub mod dsl;
pub mod frames;
pub mod graph;
pub mod label;
pub mod marginals;
pub mod rational;
pub mod report;
pub mod semantics;
pub mod theory;

pub use argument::{Argument, ArgumentError};
pub use construct::{build_arguments, build_graph, derive_attacks, Caps, ConstructError, PreferencePolicy};
pub use dsl::{parse_distribution_file, parse_theory, serialize_theory, DslError, TheoryDocument};
pub use frames::{Distribution, FrameError, Pag, Pef, Pgf, Plf, Ptf, SublabellingWeights};
pub use graph::{ArgSet, ArgumentationGraph, GraphError};
pub use label::{ArgLabel, LabelError, LabelSet, Labelling};
pub use marginals::{MarginalError, StatementLabel, StatementScheme};
pub use rational::{Rational, RationalParseError};
pub use report::{check_properties, CheckStatus, PropertyCheck, PropertyReport};
pub use semantics::{Criterion, JustificationLabel, LabellingSpec, Semantics, SemanticsError};
pub use theory::{DefeasibleTheory, Literal, Rule, RuleId, TheoryError};

use thiserror::Error;

/// Any error raised by this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Dsl(#[from] DslError),
    #[error(transparent)]
    Theory(#[from] TheoryError),
    #[error(transparent)]
    Argument(#[from] ArgumentError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Label(#[from] LabelError),
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error(transparent)]
    Marginal(#[from] MarginalError),
}

impl Error {
    /// True when a resource cap stopped the computation.
    pub fn is_cap_exceeded(&self) -> bool {
        match self {
            Error::Construct(e) => construct_cap(e),
            Error::Semantics(SemanticsError::CapExceeded { .. }) => true,
            Error::Frame(FrameError::CapExceeded { .. }) => true,
            Error::Frame(FrameError::Construct(e)) => construct_cap(e),
            Error::Frame(FrameError::Semantics(SemanticsError::CapExceeded { .. })) => true,
            _ => false,
        }
    }
}

fn construct_cap(error: &ConstructError) -> bool {
    matches!(
        error,
        ConstructError::TooManyArguments { .. } | ConstructError::TooManyRules { .. }
    )
}
