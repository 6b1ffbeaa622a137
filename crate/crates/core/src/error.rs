use thiserror::Error;

use crate::formula::{AtomSet, Formula, Fragment};
use crate::kernel::{CalculusId, CheckError, KernelError};
use crate::semantics::MissingAtom;

/// Errors raised by the proof constructions built on top of the kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("`{0}` is not a hypothesis of the derivation")]
    NotAHypothesis(Formula),
    #[error("{lemma} takes {expected} formula arguments, got {got}")]
    Arity { lemma: String, expected: String, got: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("calculus {have} lacks the schemes needed here (requires {need})")]
    InsufficientCalculus { need: CalculusId, have: CalculusId },
    #[error("`{formula}` lies outside the {fragment} fragment")]
    Fragment { formula: Formula, fragment: Fragment },
    #[error("invalid occurrence path in `{0}`")]
    InvalidPath(Formula),
    #[error("expected `{expected}`, found `{found}`")]
    FormulaMismatch { expected: Formula, found: Formula },
    #[error("no leaf derivation for the partition with true atoms {0}")]
    MissingPartition(AtomSet),
    #[error("derivation has open hypotheses")]
    OpenHypotheses,
    #[error("expected a derivation in {expected}, found {found}")]
    WrongCalculus { expected: CalculusId, found: CalculusId },
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Semantics(#[from] MissingAtom),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn require_fragment(fragment: Fragment, f: &Formula) -> Result<()> {
    if fragment.contains(f) {
        Ok(())
    } else {
        Err(Error::Fragment { formula: f.clone(), fragment })
    }
}
