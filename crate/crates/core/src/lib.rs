//! Modular representations of symmetric groups and their restrictions to subgroups.

pub mod branching;
pub mod classifier;
pub mod error;
pub mod hom_tools;
pub mod linalg;
pub mod partitions;
pub mod perm_groups;
pub mod reps;
pub mod verify;

pub use error::{Error, Result};
pub use linalg::{Fp, MatFp, Subspace};
pub use partitions::{Node, Partition};
pub use perm_groups::{PermGroup, Permutation};
pub use reps::{Caps, Rep};
