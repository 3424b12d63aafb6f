//! Symplectic regularization of binary collisions in the circular N+2
//! Sitnikov problem.
//!
//! Two infinitesimal bodies move on the symmetry axis of a rigidly rotating
//! ring of `N` equal primaries. Their mutual collision is a genuine
//! singularity of the physical equations of motion. The crate provides
//!
//! - the physical Hamiltonian and vector field ([`physical`]),
//! - a symplectic chart plus fictitious-time rescaling that turns the
//!   collision into a regular crossing of `Q1 = 0` ([`regularized`]),
//! - structure-preserving and reference integrators with dual clocks
//!   ([`integrators`]),
//! - orbit classification, period function and level sets ([`analysis`]),
//! - the linear-algebra checks backing all of the above ([`symplectic`]).
//!
//! The `collreg` binary wraps these in `verify`, `simulate`, `classify`,
//! `levelset` and `period` subcommands; see [`cli`].

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Stage loops index Butcher tables and matrix blocks together.
#![allow(clippy::needless_range_loop)]

pub mod analysis;
pub mod cli;
pub mod config;
pub mod error;
pub mod integrators;
pub mod output;
pub mod physical;
pub mod regularized;
pub mod roots;
pub mod symplectic;
pub mod verify;

pub use config::{MassParams, RingConfig};
pub use error::{Error, Result};
pub use physical::PhysState;
pub use regularized::{ReducedState, RegState};
