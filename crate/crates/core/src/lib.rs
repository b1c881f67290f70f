//! Secure-throughput analysis for a MIMOME wiretap link where the transmitter
//! selects a single antenna (TAS) from a feedback index and both receivers
//! apply maximal ratio combining.
//!
//! The crate is `no_std` and only needs `alloc`. It covers:
//!
//! * [`specfun`]: regularized lower incomplete gamma `P(a, z)` and its inverse.
//! * [`channel`]: closed-form SNR laws for Bob (best-of-`N_A` Gamma) and Eve
//!   (Gamma), plus a seeded fading sampler.
//! * [`secrecy`]: success and secrecy-outage probabilities, secure throughput,
//!   rate ceilings and the reliability/security frontier.
//! * [`optimizer`]: throughput maximization over the transmission rate.
//! * [`smartgrid`]: erasure simulation and linear-interpolation
//!   reconstruction of load profiles.
//!
//! All SNRs are linear and all rates are in bits/s/Hz.

#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod channel;
mod error;
pub mod montecarlo;
pub mod optimizer;
pub mod rng;
pub mod roots;
pub mod secrecy;
pub mod smartgrid;
pub mod specfun;

pub use channel::{AntennaConfig, LinkBudget, SnrSamplePair};
pub use error::{Error, Result};
pub use optimizer::{Binding, RbBound, SweepAxis, SweepRow, ThroughputSolution};
pub use secrecy::{Feasibility, RatePolicy, SecurityConstraints};
pub use smartgrid::{ErasurePattern, LoadProfile, ProfileKind, ReconstructionReport, Role};

/// Converts decibels to a linear power ratio.
pub fn db_to_linear(db: f64) -> f64 {
    libm::pow(10.0, db / 10.0)
}

/// Converts a linear power ratio to decibels.
pub fn linear_to_db(linear: f64) -> f64 {
    10.0 * libm::log10(linear)
}
