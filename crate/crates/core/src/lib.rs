//! Dynamics and correlation measures of a continuously measured two-level
//! system with a non-Hermitian effective Hamiltonian.
//!
//! The library covers three layers:
//!
//! - [`dynamics`]: measurement-induced decay rates, the coherent/incoherent
//!   tunneling regimes separated by an exceptional point, closed-form
//!   transition probabilities and passage times.
//! - [`correlations`]: the tripartite system/source/detector amplitude
//!   partition, reduced two-qubit X-state density matrices, Wootters
//!   concurrence and the entropic quantum-correlation measure.
//! - [`oracles`]: independent numerical cross-checks (adaptive Runge-Kutta
//!   integration of the non-Hermitian Schrödinger equation, passage-time
//!   root finding, brute-force measurement optimization for the classical
//!   correlation).
//!
//! Everything is `no_std` (with `alloc`); all functions are pure and
//! thread-safe. Units use `ħ = 1` throughout.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod correlations;
pub mod dynamics;
pub mod oracles;

mod error;

pub use error::{Error, Result};
pub use num_complex::Complex64;
