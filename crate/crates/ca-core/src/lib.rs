//! Analysis toolkit for one-dimensional cellular automata over finite
//! alphabets: exact simulation on finitely represented bi-infinite
//! configurations, decision procedures for surjectivity and injectivity,
//! blocking-word certification, measure-theoretic classification by seeded
//! Monte-Carlo sampling, construction of strictly temporally periodic
//! points, and extraction of periodic factors.
//!
//! The crate is `no_std` (with `alloc`); everything that touches files,
//! rendering or the command line lives in the companion CLI crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod alphabet;
pub mod config;
pub mod debruijn;
pub mod dynamics;
pub mod equicontinuity;
pub mod factors;
pub mod fixtures;
pub mod gilman;
pub mod rule;
pub mod stp;
pub mod word;

pub use alphabet::{Alphabet, Letter, Neighborhood};
pub use config::{Configuration, EventualPeriod, PeriodicConfig, TwoSidedConfig};
pub use dynamics::{Budget, ColumnTrace, Window};
pub use rule::CellularAutomaton;
