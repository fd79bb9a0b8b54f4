//! Gaussian-ansatz approximation scheme for one-dimensional anharmonic
//! oscillators and the Gaussian effective potential of lambda phi^4 theory.
//!
//! Every level `n` gets its own harmonic frequency `omega(n)` (and, in the
//! broken phase, a shift `sigma(n)`) from a stationarity condition on
//! `<n|H|n>`; the leading-order energy is that expectation value, and the
//! residual operator is treated perturbatively.
//!
//! The crate is `no_std` (with `alloc`); IO and formats live in the CLI crate.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;
pub mod gap;
pub mod ipt;
pub mod ladder;
pub mod linalg;
pub mod model;
pub mod oracle;
pub mod qft;
pub mod quad;
pub mod roots;
pub mod spectrum;
pub mod susy;
pub mod tables;
pub mod vacuum;

pub use error::{Error, Result};
pub use gap::{critical_coupling, select_phase, solve_gap, GapSolution};
pub use model::{Level, LevelFunctions, OscillatorClass, OscillatorSpec, Phase, PotentialParams};
pub use spectrum::{energy_lo, LevelEnergy, Moments};
