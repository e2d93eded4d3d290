//! Absolute centres, absolute central automorphisms and inner automorphisms
//! of small finite p-groups, with executable checks of the equivalences that
//! relate them.
//!
//! Groups are explicit Cayley tables ([`group::Group`]). Automorphism
//! groups are enumerated exactly by a pruned backtracking search
//! ([`automorphism::automorphism_group`]) and every derived subgroup of
//! `Aut(G)` is an explicit sorted set, so equalities are set equalities.

pub mod abelian;
pub mod arith;
pub mod automorphism;
pub mod constructions;
pub mod error;
pub mod group;
mod search;
pub mod theorems;

pub use abelian::{AbelianInvariants, HomDescriptor};
pub use automorphism::{AutConfig, Automorphism, AutomorphismSet};
pub use error::{Error, Result};
pub use group::{Group, QuotientMap, Subgroup};
pub use search::Deadline;
