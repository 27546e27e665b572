//! Computation with finite inverse semigroups: congruences and congruence
//! pairs, conjugation kernels, term-condition centrality, central series,
//! nilpotence and solvability, and Mal'cev tolerances.

pub mod centrality;
pub mod congruence;
pub mod conjugation;
pub mod construct;
pub mod corpus;
pub mod error;
pub mod file;
pub mod group;
pub mod limits;
pub mod partition;
pub mod pbij;
pub mod report;
pub mod semigroup;
pub mod series;
pub mod subset;
pub mod term;
pub mod tolerance;

pub use congruence::{Congruence, CongruencePair};
pub use error::{Error, Result};
pub use file::SemigroupFile;
pub use limits::Limits;
pub use partition::Partition;
pub use pbij::PartialBijection;
pub use semigroup::{CayleyTable, Element, InverseSemigroup};
pub use subset::Subset;
pub use term::Term;
pub use tolerance::Tolerance;
