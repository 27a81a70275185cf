//! Time-limited pseudo-optimal H2 model order reduction for LTI systems.
//!
//! The crate implements iteration-free, stability-preserving reduction of
//! dense state-space models `(A, B, C)` with fidelity targeted at a finite
//! time window `[t1, t2]`:
//!
//! - [`tlpork`] — time-limited pseudo-optimal rational Krylov reduction
//!   (input- and output-sided) plus a verification harness for the
//!   pseudo-optimality certificates.
//! - [`tlcure`] — adaptive cumulative reduction with monotone decay of the
//!   time-limited H2 error and accumulation of approximate time-limited
//!   Gramians.
//! - [`porkcure`] — the infinite-horizon counterparts (PORK, CURE).
//! - [`baselines`] — balanced truncation, time-limited balanced truncation,
//!   and (time-limited) IRKA for comparison.
//! - [`gramnorm`], [`sysmodel`], [`rkrylov`], [`numkit`] — Gramians and norms,
//!   system representations, tangential Krylov subspaces, and the dense
//!   linear-algebra kernels underneath.

pub mod baselines;
pub mod error;
pub mod gramnorm;
pub mod numkit;
pub mod porkcure;
pub mod rkrylov;
pub mod sysmodel;
pub mod tlcure;
pub mod tlpork;

pub use error::{MorError, Result};
