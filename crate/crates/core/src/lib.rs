//! Finite-semigroup toolkit: Green's and starred Green's relations,
//! *-pairs, partial-order decompositions, and (straight) left-order
//! verification, with brute-force search oracles at small orders.

pub mod decomp;
pub mod error;
pub mod green;
pub mod starpair;
pub mod orders;
pub mod relation;
pub mod search;
pub mod semigroup;

pub use error::{Result, SgError};
pub use relation::{Relation, RelationKind};
pub use semigroup::{FiniteSemigroup, ReesQuotient, SubsetHandle, SubsetTag};
