//! Finite abelian groups, their subgroups and quotients.

mod group;
mod quotient;
mod smith;
mod subgroup;

pub use group::{Element, Group, DEFAULT_MAX_ORDER};
pub use quotient::{quotient, Quotient};
pub use subgroup::{generated_subgroup, Subgroup};

/// `Group::new` under its functional name.
pub fn make_group(factors: &[usize]) -> crate::Result<Group> {
    Group::new(factors)
}
