//! Simulation of a chained-block quantum cipher and attacks on it.
//!
//! Registers are dense state vectors with qubit 0 as the most significant
//! bit. Gate sequences list gates in the order they act. Stochastic routines
//! take either a caller-supplied generator or a [`seed::SeedStream`] from
//! which every run derives its own generator, so results do not depend on
//! thread scheduling.

pub mod adversary;
pub mod cipher;
pub mod circuitgen;
pub mod discrimination;
pub mod error;
pub mod parallel;
pub mod quantum;
pub mod report;
pub mod seed;

pub use error::{Error, Result};
