//! Subgroup lattices of finite permutation groups and classification of
//! subgroups by maximality depth: maximal, 2-maximal, strictly 2-maximal and
//! n-maximal, with executable checks of the structural statements relating them.

mod bits;
pub mod classify;
pub mod constructions;
pub mod error;
pub mod field;
pub mod io;
pub mod lattice;
pub mod perm;
pub mod verify;

pub use bits::Mask;
pub use constructions::GroupRecipe;
pub use error::{Error, Result};
pub use lattice::{ClassedLattice, SubgroupSet};
pub use perm::{GroupTable, Permutation};
