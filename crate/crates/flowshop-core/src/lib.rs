//! Flowshop makespan engine.
//!
//! A permutation flowshop runs `N` jobs through `M` machines in a fixed job
//! order. Scheduling starts from a *fiducial* machine: its row runs
//! contiguously from time zero, later machines are scheduled forward and
//! earlier machines backward. The makespan `t_{M,N} - s_{1,1}` depends on
//! which machine is chosen as fiducial, and this crate provides:
//!
//! - exact deterministic scheduling for any fiducial machine ([`schedule`]),
//! - the equivalent last-passage percolation view with a brute-force oracle
//!   and per-realization decomposition identities ([`lattice`]),
//! - closed-form and asymptotic shape functions for exponential/geometric
//!   processing times ([`shape`]),
//! - seeded i.i.d. processing-time generators ([`dist`]),
//! - Monte Carlo sweeps over the fiducial index with SPT/LPT dispatching
//!   rules ([`sweep`]),
//! - a profiled least-squares fit of the two-shape-function makespan curve
//!   ([`fit`]).
//!
//! Everything is a pure function of its inputs; identical inputs (including
//! seeds) produce bit-identical outputs. The crate is `no_std` (with `alloc`)
//! so the engine can be embedded anywhere; IO and the CLI live in the
//! companion `flowshop-cli` crate.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod dist;
pub mod error;
pub mod fit;
pub mod lattice;
pub mod schedule;
pub mod shape;
pub mod sweep;
pub mod table;

pub use dist::DistributionSpec;
pub use error::Error;
pub use fit::FitResult;
pub use lattice::LatticeWeights;
pub use schedule::Schedule;
pub use shape::ShapeParams;
pub use sweep::{Rule, SweepResult};
pub use table::ProcessingTimeTable;
