//! Exact computation in the string-link homotopy group.
//!
//! The crate is `no_std` with `alloc`. Everything is built on the reduced
//! free group `RF(m)` and its faithful multilinear expansion:
//!
//! * [`rf`]: reduced polynomials, group expressions, graded decomposition and
//!   commutator rewriting in `RF(m)`.
//! * [`hlink`]: the group `H(n)` as tuples of longitudes, Milnor invariants and
//!   the four-component normal form.
//! * [`nh`]: trivializing numbers and bounds.
//! * [`synthesis`]: explicit crossing-change and Delta-move sequences.
//! * [`extremal`]: exact search for minimum-weight graphs with heavy `k`-subgraphs.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

mod error;
pub mod extremal;
pub mod hlink;
mod int;
pub mod nh;
pub mod rf;
pub mod synthesis;

pub use error::{Error, Result};
