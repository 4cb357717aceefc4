//! Scattered linear orders of finite Hausdorff rank.

pub mod backforth;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod scott;
pub mod selftest;
pub mod term;

pub use error::{Error, Result};
pub use term::{normalize, parse_term, reduce, OrderTerm};
