//! Method-of-lines evolution of the semilinear `v`-formulation.

mod blowup;
mod convergence;
mod integrate;
mod scattering;
mod state;
mod stepper;

pub use blowup::{detect_blowup, self_similar_misfit, BlowupReport, GROWTH_THRESHOLD, PROFILE_RHO_MAX};
pub use convergence::{convergence_study, convergence_study_exact, ConvergenceReport};
pub use integrate::{deficit_norm, evolve, integrate, DiagnosticsTrace, IntegrateOptions, TraceRow};
pub use scattering::{scattering_deficit, ScatteringDeficit, SMALL_DATA_GUARD};
pub use state::FieldState;
pub use stepper::{acceleration, step_rk4, CFL, HARD_STOP};
