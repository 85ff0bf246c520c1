//! Exact coincidence statistics of random-permutation cycle structure and
//! their polynomial analogues over prime fields.
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is a pure
//! function of its inputs; IO, parallel drivers, caching and the command
//! line live in the `cyclestat` companion crate.
//!
//! Modules:
//!
//! - [`partitions`]: multiplicity-vector partitions, enumeration, Cauchy's formula.
//! - [`permstats`]: `E_r(n)`, `W_r(n)`, the cycle-count distribution, the
//!   characteristic function, asymptotic constants and the three-set
//!   decomposition of `W_r(n)`.
//! - [`series`]: truncated power series over exact rationals, the generating
//!   function of `W_r(n)` by two routes, and certified brackets for `A_r`.
//! - [`ffpoly`]: polynomials over `F_p`, factorization, cycle types,
//!   arithmetic functions and the structure polynomials `Φ`, `Σ`.
//! - [`scanner`]: exhaustive scans of shifted coincidences over all monic
//!   polynomials of a given degree.

#![no_std]
#![deny(rust_2018_idioms)]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod error;
pub mod ffpoly;
pub mod numeric;
pub mod partitions;
pub mod permstats;
pub mod rational;
pub mod scanner;
pub mod series;

pub use error::{Error, Result};
pub use partitions::Partition;
pub use rational::Rational;
