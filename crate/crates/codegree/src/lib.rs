//! Exact character codegrees of finite permutation groups.
//!
//! The crate covers: permutation-group arithmetic with stabilizer chains,
//! linear algebra over prime fields and small extension fields, structural
//! subgroup computations, exact character tables by the class-algebra method
//! over a well-chosen prime field, a construction DSL for the group families
//! with exactly four character codegrees, and a classifier that decides which
//! case of the four-codegree classification a given group satisfies.

pub mod error;
pub mod fq;
pub mod perm;
pub mod group;
pub mod structure;
pub mod chartab;
pub mod dsl;
pub mod builders;
pub mod classify;
pub mod catalog;

pub use error::{Error, Result};
pub use group::PermGroup;
pub use perm::Permutation;
