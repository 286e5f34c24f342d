//! Closed-form content of the radial field equations: nonlinearity
//! coefficients, right-hand sides in both formulations, energies, the null
//! form and exact solutions.

mod bounds;
mod coefficients;
mod equations;
mod exact;
pub(crate) mod series;

pub use bounds::{
    check_coeff_bounds, check_sin_inequality, decay_power, default_sin_samples, japanese_bracket,
    CoeffBoundReport, CoeffSamples, SinInequalityReport,
};
pub use coefficients::{skyrme_denominator, tilde_h, CoeffId};
pub use equations::{
    energy_density, energy_density_v, null_form, rhs_u, rhs_v, ModelKind, ModelSpec, PointData,
};
pub use exact::{
    exact_free_wave_5d, exact_free_wave_5d_full, turok_spergel, FreeWaveSample, GaussianProfile,
    TurokSpergel, WaveProfile,
};
pub use series::{taylor_coefficient, SERIES_SWITCH};
