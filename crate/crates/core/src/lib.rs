//! Numerical laboratory for the radial equivariant wave-map, Skyrme and
//! Adkins-Nappi equations.
//!
//! * [`model`]: coefficients, right-hand sides, energies and exact solutions.
//! * [`grid`]: the radial mesh and its fourth-order operators.
//! * [`solver`]: method-of-lines RK4 evolution, diagnostics, blow-up
//!   detection and scattering measurements.
//! * [`spectral`]: radial Fourier transforms, Sobolev and Besov norms.

// `!(x > 0.0)` is deliberate: it rejects NaN along with the out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod grid;
pub mod model;
pub mod solver;
pub mod spectral;

pub use error::{Error, Result};
pub use grid::{FieldSamples, OuterBoundary, Parity, RadialGrid};
pub use model::{CoeffId, ModelKind, ModelSpec, PointData};
pub use solver::{BlowupReport, DiagnosticsTrace, FieldState, ScatteringDeficit, TraceRow};
pub use spectral::{DyadicCutoff, RadialProfile, SpectralProfile};
