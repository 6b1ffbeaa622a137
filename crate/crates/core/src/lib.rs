pub mod builder;
pub mod enumerate;
pub mod error;
pub mod formula;
pub mod kalmar;
pub mod kernel;
pub mod proof_file;
pub mod semantics;
pub mod tactics;
pub mod transform;

pub use error::{Error, Result};
pub use formula::{AtomSet, Formula, Fragment};
pub use kernel::{check, CalculusId, Derivation, SchemeId, Step};
pub use semantics::{Assignment, Verdict};
