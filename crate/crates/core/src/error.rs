use thiserror::Error;

use crate::postulates::PostulateId;
use crate::refine::MappingProperty;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a universe needs at least one atom")]
    EmptyUniverse,
    #[error("atom `{0}` is declared more than once")]
    DuplicateAtom(String),
    #[error("`{0}` is not a valid atom name (expected [a-z][a-z0-9_]*)")]
    InvalidAtomName(String),
    #[error("universe has {size} atoms, the cap is {cap}")]
    UniverseTooLarge { size: usize, cap: usize },
    #[error("operands are defined over different universes")]
    UniverseMismatch,
    #[error("bit pattern {bits:#x} does not fit a universe of {atoms} atoms")]
    BitsOutOfRange { bits: u32, atoms: usize },

    #[error("boolean function arity must be in 1..={max}, got {arity}")]
    InvalidArity { arity: usize, max: usize },
    #[error("truth table of arity {arity} needs {expected} entries, got {found}")]
    TableLength {
        arity: usize,
        expected: usize,
        found: usize,
    },
    #[error("function is not symmetric: {input:?} and {other:?} have the same weight but different outputs")]
    NotSymmetric { input: Vec<bool>, other: Vec<bool> },
    #[error("function is not {kind}-reproducing: {input:?} maps to {output}")]
    NotReproducing {
        kind: u8,
        input: Vec<bool>,
        output: bool,
    },
    #[error("expected {expected} arguments, got {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown atom `{name}` at byte {position}")]
    UnknownAtom { name: String, position: usize },
    #[error("atom index {index} is outside a universe of {atoms} atoms")]
    AtomOutOfRange { index: usize, atoms: usize },
    #[error("model set is not closed under {beta}: {args} yields {result}, which is missing")]
    NotClosed {
        beta: String,
        args: String,
        result: String,
    },
    #[error("fragment `{0}` has no clause-level syntax to synthesize from")]
    NoSyntacticFragment(String),
    #[error("synthesized formula does not reproduce the model set")]
    SynthesisMismatch,

    #[error("base `{0}` is inconsistent")]
    InconsistentBase(String),
    #[error("a profile needs at least one base")]
    EmptyProfile,
    #[error("aggregation needs at least one distance")]
    EmptyInput,
    #[error("invalid counting distance: {0}")]
    InvalidDistance(String),

    #[error("mapping violates {property}: {detail}")]
    MappingViolation {
        property: MappingProperty,
        detail: String,
    },
    #[error("merge output is not contained in the constraint")]
    NotContainedInConstraint,

    #[error("{postulate} cannot be checked on a {found} instance")]
    ShapeMismatch {
        postulate: PostulateId,
        found: &'static str,
    },
    #[error("search space too large: {0}")]
    SpaceTooLarge(String),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("unknown postulate `{0}`")]
    UnknownPostulate(String),
}
