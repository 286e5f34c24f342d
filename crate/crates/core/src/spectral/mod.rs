//! Radial Fourier analysis: Sobolev and Besov norms, Littlewood-Paley pieces
//! and dimensional checks.

mod checks;
mod cutoff;
mod norms;
mod transform;
mod zeta;

pub use checks::{
    dyadic_sobolev_family, equivalence_family, norm_equivalence_band, norm_equivalence_check,
    radial_dyadic_sobolev_check, scale, DyadicSobolevReport, EquivalenceBand, MIN_FAMILY, MIN_LAMBDAS,
};
pub use cutoff::DyadicCutoff;
pub use norms::{
    besov22_multiplier, besov22_plancherel, besov_norm, dyadic_band, dyadic_piece, dyadic_pieces,
    sobolev_norm, sobolev_norm_spectral, weighted_besov_norm, BesovNorm,
};
pub use transform::{
    inverse_radial_fourier, radial_fourier, radial_fourier_to, sphere_area, RadialProfile, SpectralProfile,
    DECAY_TOLERANCE,
};
