//! Qubit simulator for an affective-reflective model of processing.
//!
//! A single qubit carries the psychological state: the z-axis separates the
//! fast affective lane (|0⟩) from the slow reflective lane (|1⟩), the x-axis
//! measures depth of reflection and the y-axis valence. On top of the state
//! machinery sit the appraisal circuits, gate-labeled transition networks and
//! the steering session used by the joystick service.

pub mod affect;
pub mod error;
pub mod formats;
pub mod gates;
pub mod network;
pub mod quantum;
pub mod session;

pub use error::{Error, Result};

/// Largest register size accepted anywhere in the crate.
pub const MAX_QUBITS: usize = 8;

/// Construction and validation tolerance.
pub const TOL: f64 = 1e-9;
