//! Binary LCD (linear complementary dual) codes: verification, structured
//! bases, constructions, isomorph-free classification, and bound tables for
//! the largest minimum distance an LCD code of given length and dimension
//! can attain.
//!
//! A binary linear code `C` is LCD when it meets its dual only in the zero
//! vector; equivalently, when `G G^T` is nonsingular for any generator
//! matrix `G` of `C`. Everything here works over GF(2).
//!
//! Module map:
//! - [`gf2`]: bit-packed matrices and linear algebra over GF(2)
//! - [`code`]: linear codes and their metrics (distance, dual, hull)
//! - [`lcd`]: LCD predicates, structured bases, and constructions
//! - [`canonical`]: equivalence-class certificates under column permutation
//! - [`classifier`]: isomorph-free exhaustive search at desk scale
//! - [`bounds`]: interval tables for the optimal LCD minimum distance
//! - [`verify`]: randomized property suites backing the theory operations
//! - [`fileio`]: text formats for codes, databases, and tables
//! - [`cli`]: the `lcdcodes` command-line tool

pub mod bounds;
pub mod canonical;
pub mod classifier;
pub mod cli;
pub mod code;
pub mod error;
pub mod fileio;
pub mod gf2;
pub mod lcd;
pub mod verify;

pub use crate::code::{CodeMetrics, LinearCode};
pub use crate::error::{Error, Result};
pub use crate::lcd::is_lcd;
