//! Exact lower bounds on the size `P(n, d)` of permutation arrays: bound
//! formulas, explicit witness constructions, brute-force verification and
//! tabulation with provenance.

pub mod bounds;
pub mod combinatorics;
pub mod constructions;
pub mod error;
pub mod gfq;
pub mod perm;
pub mod tabulator;

pub use combinatorics::Count;
pub use error::{Error, Result};
pub use perm::{Permutation, PermutationArray};
