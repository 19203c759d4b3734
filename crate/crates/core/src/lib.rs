//! Exact matroid computations on small ground sets: rank oracles and
//! minors, connectivity and fans, tangles and branch width, and searches for
//! removal sets that keep 3-connectivity and a fixed minor.
//!
//! Everything is exhaustive over bitmask subsets, so ground sets are capped
//! at [`subset::MAX_GROUND`] elements and most searches are practical only
//! up to about a dozen.

pub mod connectivity;
pub mod corpus;
pub mod error;
pub mod matroid;
mod par;
pub mod removal;
pub mod subset;
pub mod tangle;
pub mod verify;

pub use error::{Error, Result};
pub use matroid::{Matroid, MinorSpec, Op};
pub use subset::GroundSubset;
