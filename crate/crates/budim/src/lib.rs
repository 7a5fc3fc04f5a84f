//! Unique beta-expansion sets: admissible blocks and intervals, subshifts
//! of finite type, topological entropy, and the Hausdorff dimension of the
//! set of points with a unique expansion in base beta over `{0,...,N-1}`.

pub mod admissible;
pub mod dimension;
pub mod entropy;
pub mod error;
pub mod expansions;
pub mod real;
pub mod words;

pub use error::{Error, Result};
