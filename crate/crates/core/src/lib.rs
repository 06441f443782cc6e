//! Exact subset-sum machinery for finite abelian groups.
//!
//! The crate covers group arithmetic over mixed-radix element indices, bit-packed
//! set algebra (sumsets, Σ(A), stabilizers), integer-exact evaluation of the
//! known lower bounds on |Σ(A)|, constructive witness procedures, and harnesses
//! that check those bounds exhaustively or with seeded random sampling.

pub mod abelian;
pub mod bounds;
pub mod construct;
pub mod error;
pub mod setcalc;
pub mod verify;

pub use abelian::{generated_subgroup, make_group, quotient, Element, Group, Quotient, Subgroup};
pub use error::{Error, Result};
pub use setcalc::{GroupSet, SequenceMS};
