//! Multisymmetric functions: the invariants of `S_n` acting on `n` copies of
//! `m` variables, computed exactly.

// `is_zero` is the emptiness test for every term container.
#![allow(clippy::len_without_is_empty)]

pub mod cli;
pub mod concrete;
pub mod error;
pub mod orbitring;
pub mod presentation;
pub mod ringcore;
pub mod symfun;

pub use error::{Error, Result};
