//! Finite computations with equilogical objects over quantale-enriched bases.

pub mod assembly;
pub mod base;
pub mod completion;
pub mod equ;
pub mod error;
pub mod oracle;
pub mod pequ;
pub mod quantale;
pub mod relation;
pub mod search;
pub mod spaces;
pub mod vcat;

pub use assembly::Assembly;
pub use base::{Base, BaseKind};
pub use completion::{PseudoEqRel, Witnesses};
pub use equ::{EquObj, LimitKind, MorphClass};
pub use error::{EquilogError, Result};
pub use oracle::{SweepConfig, Verdict};
pub use pequ::{PEquObj, PMorph};
pub use quantale::{ExtRat, QValue, Quantale, QuantaleOps};
pub use relation::{Partition, Per};
pub use search::DEFAULT_SEARCH_BOUND;
pub use spaces::{Direction, FinApp, FinTop, Transfer};
pub use vcat::{VCatObj, VFunctor};
