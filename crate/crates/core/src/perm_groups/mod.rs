//! Permutations, permutation groups and the subgroup families used by the classifier.
mod families;
mod group;
mod permutation;

pub use families::{alternating, intransitive, named, parse_group_spec, symmetric, wreath, young, young_of, NAMED_GROUPS};
pub use group::PermGroup;
pub use permutation::Permutation;
