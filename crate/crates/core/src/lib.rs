//! Exact enumeration of colored plane trees, match sets and permutation
//! pairs, together with the binomial identities they certify.

pub mod acceptance;
pub mod error;
pub mod identities;
pub mod exact;
pub mod limits;
pub mod matches;
pub mod numbers;
pub mod parity;
pub mod trees;

pub use error::{Error, Result};
