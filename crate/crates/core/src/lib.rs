//! Finite groups, fusion systems over finite p-groups, and executable checks
//! of control-of-fusion results on concrete groups.

pub mod catalog;
pub mod error;
pub mod fusion;
pub mod group;
pub mod hom;
pub mod lattice;
pub mod limits;
pub mod local;
pub mod subgroup;
pub mod verify;

pub use error::{Error, Result};
pub use group::{Elem, Group};
pub use hom::{automorphism_group, AutGroup, GroupMap};
pub use lattice::all_subgroups;
pub use limits::Limits;
pub use subgroup::{centralizer, normalizer, transporter, Subgroup};
