//! Direct powers, generated subsemirings, ideal quotients, isomorphism
//! search, and the witness pipelines built from them.

mod closure;
mod iso;
mod power;
mod quotient;
mod witness;

use thiserror::Error;

pub use closure::{generated_subsemiring, reduced_closure, GeneratedSubsemiring, IdealShape, ReducedClosure, DEFAULT_CLOSURE_CAP};
pub use iso::{find_embedding, find_semiring_isomorphism, find_semiring_isomorphism_seeded, is_embedding, is_isomorphism};
pub use power::{DirectPower, Tuple};
pub use quotient::{quotient_by_ideal, CongruenceViolation, IdealQuotient};
pub use witness::{
    verify_witness, ConstructionTrace, GeneratorRecord, IdentityTrace, Step, WitnessConfig, WitnessKind, WitnessReport,
};

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("direct power needs arity at least 1")]
    ZeroArity,
    #[error("generator list is empty")]
    NoGenerators,
    #[error("generator {index} is not a tuple of arity {arity} over the base")]
    ForeignGenerator { index: usize, arity: usize },
    #[error("closure exceeds {0} elements")]
    ClosureCap(usize),
    #[error("ideal is empty")]
    EmptyIdeal,
    #[error("ideal element {0} is not in the carrier")]
    ForeignIdealElement(usize),
    #[error("the zero tuple lies in the carrier but not in the ideal")]
    ZeroOutsideIdeal,
    #[error("not a congruence: {0}")]
    NotCongruence(Box<CongruenceViolation>),
    #[error("ideal shape `{shape}` does not absorb: {detail}")]
    NotAbsorbing { shape: String, detail: String },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Hypergraph(#[from] crate::hypergraph::HypergraphError),
    #[error(transparent)]
    Hg(#[from] crate::hg_semiring::HgError),
    #[error(transparent)]
    Semiring(#[from] crate::semiring::SemiringError),
    #[error(transparent)]
    Term(#[from] crate::terms::TermError),
    #[error(transparent)]
    Coloring(#[from] crate::coloring::ColoringError),
    #[error(transparent)]
    Word(#[from] crate::words::WordError),
}
