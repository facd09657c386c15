//! Critical temperature of the 2D Ising model from Wolff-cluster Monte Carlo
//! and Binder-cumulant finite-size scaling.
//!
//! The pipeline runs bottom-up:
//!
//! - [`rng`]: MT19937 streams, one per chain;
//! - [`lattice`]: periodic `L x L` spin configurations with cached
//!   magnetization and energy;
//! - [`wolff`]: single-cluster updates;
//! - [`engine`]: chains, run files and parallel sweeps;
//! - [`stats`]: binning, jackknife and weighted straight-line fits;
//! - [`analysis`]: susceptibility, Binder cumulants, crossings, finite-size
//!   extrapolation, data collapse and figure data;
//! - [`cli`]: the `ising` command line.

// `!(x > 0.0)` is how arguments are checked here: it rejects NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod cli;
pub mod engine;
pub mod error;
pub mod lattice;
pub mod rng;
pub mod stats;
pub mod wolff;

pub use error::{Error, Result};
