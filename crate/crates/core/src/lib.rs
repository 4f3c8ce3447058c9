//! Numerical toolkit for alpha-modulation spaces and unimodular Fourier
//! multipliers on the periodic torus.
//!
//! The crate builds smooth partitions of unity subordinate to alpha-coverings
//! of frequency space, evaluates alpha-modulation and Besov norms of sampled
//! functions, applies unimodular multipliers `exp(i mu(D))`, and runs a
//! falsification harness that probes the boundedness estimates behind those
//! operators at desk scale (dimension 1, optionally 2).
//!
//! Everything is built on one discretization model: functions are sampled on
//! uniform periodic grids, Fourier transforms are Riemann-sum approximations
//! of the continuous integrals, and all reductions run in a fixed
//! deterministic order so reports are byte-stable across thread counts.

pub mod bracket;
pub mod cli;
pub mod config;
pub mod coverings;
pub mod error;
pub mod exponent;
pub mod fit;
pub mod fl1;
pub mod fourier;
pub mod grid;
pub mod harness;
pub mod io;
pub mod report;
pub mod rng;
pub mod spaces;
pub mod symbols;

pub use error::{Error, Result};
pub use exponent::Exponent;
pub use grid::{Grid, SampledFunction, Side};
