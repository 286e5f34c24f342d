//! Property suites behind `skyrmelab verify <suite>`.
//!
//! The building blocks are public so the acceptance suite can run them at
//! full size; the suites themselves use sizes that finish in seconds.

use crate::error::{LabError, LabResult};
use crate::report::{Criterion, ScenarioReport};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use skyrmelab::grid::{self, laplacian5, radial_integral};
use skyrmelab::model::{
    check_coeff_bounds, check_sin_inequality, default_sin_samples, exact_free_wave_5d_full, rhs_u,
    taylor_coefficient, tilde_h, turok_spergel, CoeffSamples, GaussianProfile,
};
use skyrmelab::solver::{acceleration, convergence_study_exact, evolve, FieldState, IntegrateOptions, CFL};
use skyrmelab::spectral::{
    besov22_plancherel, besov_norm, dyadic_pieces, dyadic_sobolev_family, radial_dyadic_sobolev_check, scale,
    sobolev_norm, sphere_area,
};
use skyrmelab::{CoeffId, DyadicCutoff, ModelSpec, Parity, RadialGrid, RadialProfile};
use statrs::function::gamma::gamma;
use std::time::Instant;

pub const SUITES: [&str; 6] = ["coefficients", "grid", "solver", "spectral", "theorems", "all"];

/// Fixed seed of every sampled check.
pub const SEED: u64 = 0x5eed_2024;

/// Runs one named suite (`all` runs every suite in order).
pub fn verify(suite: &str) -> LabResult<Vec<ScenarioReport>> {
    let one = |f: fn() -> LabResult<ScenarioReport>| f().map(|r| vec![r]);
    match suite {
        "coefficients" => one(coefficients),
        "grid" => one(grid),
        "solver" => one(solver),
        "spectral" => one(spectral),
        "theorems" => one(theorems),
        "all" => [coefficients, grid, solver, spectral, theorems].iter().map(|f| f()).collect(),
        other => Err(LabError::config(format!("unknown suite `{other}`; expected one of {}", SUITES.join(", ")))),
    }
}

fn timed(id: &str, body: impl FnOnce(&mut ScenarioReport) -> LabResult<()>) -> LabResult<ScenarioReport> {
    let start = Instant::now();
    let mut rep = ScenarioReport::new(id);
    body(&mut rep)?;
    rep.runtime = start.elapsed();
    Ok(rep)
}

// ---------------------------------------------------------------- model

/// `max |u_tt - rhs_u|` for the wave-map blow-up solution at `samples`
/// seeded points with `t, r` uniform in `[0.1, 10]`.
pub fn turok_spergel_residual(samples: usize) -> LabResult<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let wm = ModelSpec::wave_map();
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let t = rng.random_range(0.1..=10.0);
        let r = rng.random_range(0.1..=10.0);
        let ts = turok_spergel(t, r)?;
        worst = worst.max((ts.u_tt - rhs_u(&wm, r, ts.u, ts.u_r, ts.u_t, ts.u_rr)?).abs());
    }
    Ok(worst)
}

/// Expected `h~_i(0)`.
pub fn expected_limit(id: CoeffId, alpha: f64) -> f64 {
    let a2 = alpha * alpha;
    match id.index() {
        1 | 5 => -4.0 / 3.0,
        2 => -2.0 * a2 / 3.0,
        3 => 0.0,
        4 => 2.0 * a2,
        _ => 4.0 / 3.0,
    }
}

/// Per coefficient: `|h~(0) - expected|` and `|expected - tabulated|`.
pub fn limit_errors(alpha: f64) -> LabResult<Vec<(CoeffId, f64, f64)>> {
    CoeffId::ALL
        .iter()
        .map(|&id| {
            let e = expected_limit(id, alpha);
            let factor = if id.scales_with_alpha() { alpha * alpha } else { 1.0 };
            let table = taylor_coefficient(id, 0).unwrap_or(f64::NAN) * factor;
            Ok((id, (tilde_h(id, 0.0, alpha)? - e).abs(), (table - e).abs()))
        })
        .collect()
}

/// Largest parity defect `|h~(-u) ∓ h~(u)|` over `u` in `[-50, 50]`.
pub fn parity_defect(alpha: f64) -> LabResult<f64> {
    let mut worst = 0.0f64;
    for id in CoeffId::ALL {
        let sign = if id.is_odd() { -1.0 } else { 1.0 };
        for k in 0..=5000 {
            let u = 0.01 * k as f64 + 1e-3;
            let d = tilde_h(id, -u, alpha)? - sign * tilde_h(id, u, alpha)?;
            worst = worst.max(d.abs());
        }
    }
    Ok(worst)
}

fn push_coefficient_lemma(rep: &mut ScenarioReport, samples: &CoeffSamples) -> LabResult<()> {
    for alpha in [0.5, 1.0, 2.0] {
        rep.push(Criterion::at_most(format!("parity defect (alpha={alpha})"), parity_defect(alpha)?, 1e-13));
        let mut signs = true;
        let mut bounded = true;
        for id in CoeffId::ALL {
            let b = check_coeff_bounds(id, alpha, samples);
            signs &= b.sign_ok.unwrap_or(true);
            bounded &= b.bounded(0.05);
        }
        rep.push(Criterion::holds(format!("h1 = h5 <= 0, h6 >= 0 (alpha={alpha})"), signs));
        rep.push(Criterion::holds(format!("<u>-weighted bounds (alpha={alpha})"), bounded));
    }
    let sin = check_sin_inequality(1.0, &default_sin_samples(400, 801));
    rep.push(Criterion::at_most("sin ratio j=0", sin.sup_ratio[0], 1.0 + 1e-12));
    rep.push(Criterion::at_most("sin ratio j=2 (alpha=1)", sin.sup_ratio[2], 0.5 + 1e-12));
    Ok(())
}

pub fn coefficient_lemma(samples: &CoeffSamples) -> LabResult<ScenarioReport> {
    timed("coefficient lemma", |rep| push_coefficient_lemma(rep, samples))
}

pub fn coefficients() -> LabResult<ScenarioReport> {
    timed("coefficients", |rep| {
        for alpha in [1.0, 1.7] {
            for (id, err, table) in limit_errors(alpha)? {
                rep.push(Criterion::at_most(format!("{id}(0) (alpha={alpha})"), err, 1e-10));
                rep.push(Criterion::at_most(format!("{id}(0) vs Taylor table (alpha={alpha})"), table, 1e-12));
            }
        }
        push_coefficient_lemma(rep, &CoeffSamples::new(20_001, 100.0, 64, 20))
    })
}

// ---------------------------------------------------------------- grid

fn max_err(a: &[f64], b: impl Fn(usize) -> f64) -> f64 {
    a.iter().enumerate().map(|(j, x)| (x - b(j)).abs()).fold(0.0, f64::max)
}

pub fn grid() -> LabResult<ScenarioReport> {
    timed("grid", |rep| {
        // f = exp(-r^2): f_r = -2 r f, Δ₅ f = (4 r^2 - 10) f, ∫ f r^4 = 3 sqrt(pi) / 8
        let errs = [64usize, 128, 256]
            .iter()
            .map(|&n| {
                let g = RadialGrid::new(8.0, n)?;
                let f = g.sample(Parity::Even, |r| (-r * r).exp());
                let fr = grid::d_r(&f, &g)?;
                let lap = laplacian5(&f, &g)?;
                let e_d = max_err(&fr.values, |j| -2.0 * g.r(j) * f.values[j]);
                let e_l = max_err(&lap.values, |j| (4.0 * g.r(j).powi(2) - 10.0) * f.values[j]);
                let e_q = (radial_integral(&f, &g, 4) - 3.0 * std::f64::consts::PI.sqrt() / 8.0).abs();
                Ok([e_d, e_l, e_q])
            })
            .collect::<LabResult<Vec<_>>>()?;
        for (k, name) in ["d_r", "laplacian5"].iter().enumerate() {
            let order = (errs[1][k] / errs[2][k]).log2();
            rep.record(format!("{name} error (N=256)"), errs[2][k]);
            rep.push(Criterion::at_least(format!("{name} observed order"), order, 3.5));
        }
        rep.push(Criterion::at_most("weighted quadrature error (N=256)", errs[2][2], 1e-10));
        // parity of derivatives
        let g = RadialGrid::new(4.0, 64)?;
        let odd = g.sample(Parity::Odd, |r| r * (-r * r).exp());
        rep.push(Criterion::holds("d_r flips parity", grid::d_r(&odd, &g)?.parity == Parity::Even));
        Ok(())
    })
}

// ---------------------------------------------------------------- solver

pub fn free_wave_data(grid: &RadialGrid, p: GaussianProfile) -> FieldState {
    FieldState::from_fn(
        *grid,
        ModelSpec::free_wave(),
        0.0,
        move |r| exact_free_wave_5d_full(&p, 0.0, r).v,
        move |r| exact_free_wave_5d_full(&p, 0.0, r).v_t,
    )
}

/// Gaussian data `v = amplitude exp(-r^2 / width^2)`, `v_t = 0`.
pub fn gaussian_state(model: ModelSpec, r_max: f64, cells: usize, amplitude: f64, width: f64) -> LabResult<FieldState> {
    let g = RadialGrid::new(r_max, cells)?;
    Ok(FieldState::from_fn(g, model, 0.0, move |r| amplitude * (-(r / width).powi(2)).exp(), |_| 0.0))
}

/// Observed orders against the exact 5D free wave at `t`.
pub fn free_wave_orders(r_max: f64, t: f64, resolutions: &[usize]) -> LabResult<Vec<f64>> {
    let p = GaussianProfile { amplitude: 1.0, center: 2.0, width: 1.0 };
    let rep = convergence_study_exact(
        &|g: &RadialGrid| free_wave_data(g, p),
        &|t, r| exact_free_wave_5d_full(&p, t, r).v,
        r_max,
        t,
        resolutions,
    )?;
    Ok(rep.orders)
}

/// Largest relative energy drift over `[0, t_end]`.
pub fn energy_drift(init: &FieldState, t_end: f64) -> LabResult<f64> {
    let dt = CFL * init.grid.dr();
    let (trace, _) = evolve(init, dt, t_end, &IntegrateOptions { cadence: 8, ..Default::default() })?;
    Ok(trace.energy_drift())
}

pub fn solver() -> LabResult<ScenarioReport> {
    timed("solver", |rep| {
        rep.push(Criterion::at_most("Turok-Spergel residual", turok_spergel_residual(10_000)?, 1e-12));

        let p = GaussianProfile { amplitude: 1.0, center: 2.0, width: 1.0 };
        let g = RadialGrid::new(12.0, 512)?;
        let s = free_wave_data(&g, p);
        let acc = acceleration(&s)?;
        let err = (0..g.len() - 2)
            .map(|j| (acc.values[j] - exact_free_wave_5d_full(&p, 0.0, g.r(j)).v_tt).abs())
            .fold(0.0, f64::max);
        rep.push(Criterion::at_most("acceleration vs exact v_tt (N=512)", err, 1e-5));

        let orders = free_wave_orders(20.0, 1.0, &[256, 512, 1024])?;
        let min = orders.iter().copied().fold(f64::INFINITY, f64::min);
        rep.push(Criterion::at_least("free-wave observed order", min, 3.5));

        for (name, model) in [("Skyrme", ModelSpec::skyrme(1.0)?), ("Adkins-Nappi", ModelSpec::adkins_nappi())] {
            let init = gaussian_state(model, 20.0, 1024, 0.5, 1.0)?;
            rep.push(Criterion::at_most(format!("{name} energy drift (N=1024, t=2)"), energy_drift(&init, 2.0)?, 1e-6));
        }

        // reversibility
        let init = gaussian_state(ModelSpec::skyrme(1.0)?, 10.0, 256, 0.5, 1.0)?;
        let dt = 1e-3;
        let (_, fwd) = evolve(&init, dt, 0.2, &IntegrateOptions::default())?;
        let mut back = fwd.clone();
        for _ in 0..200 {
            back = skyrmelab::solver::step_rk4(&back, -dt)?;
        }
        rep.push(Criterion::at_most("time reversal defect", max_err(&back.v.values, |j| init.v.values[j]), 1e-10));
        Ok(())
    })
}

// ---------------------------------------------------------------- spectral

/// Relative errors of `||exp(-r^2/2)||_{H^s(R^n)}` against
/// `(|S^{n-1}| Γ(s + n/2) / 2)^{1/2}`.
pub fn gaussian_sobolev_errors(r_max: f64, cells: usize) -> LabResult<Vec<(usize, f64, f64)>> {
    let mut out = Vec::new();
    for dim in [3, 5] {
        let p = RadialProfile::from_fn(dim, RadialGrid::new(r_max, cells)?, |r| (-r * r / 2.0).exp())?;
        for s in [0.0, 1.0, 1.5, 2.0, 2.5] {
            let exact = (sphere_area(dim) * gamma(s + dim as f64 / 2.0) / 2.0).sqrt();
            out.push((dim, s, (sobolev_norm(&p, s)? / exact - 1.0).abs()));
        }
    }
    Ok(out)
}

/// Relative gap between the dyadic `B^s_{2,2}` norm and `H^s` of the
/// Gaussian, plus the gap between the dyadic sum and its Plancherel form.
pub fn besov_sobolev_gaps(r_max: f64, cells: usize) -> LabResult<Vec<(usize, f64, f64, f64)>> {
    let c = DyadicCutoff::default();
    let mut out = Vec::new();
    for dim in [3, 5] {
        let p = RadialProfile::from_fn(dim, RadialGrid::new(r_max, cells)?, |r| (-r * r / 2.0).exp())?;
        for s in [0.0, 1.0, 1.5, 2.0, 2.5] {
            let b = besov_norm(&p, s, 2.0, 2.0, &c)?.value;
            let h = sobolev_norm(&p, s)?;
            let plan = besov22_plancherel(&p, s, &c)?;
            out.push((dim, s, (b / h - 1.0).abs(), (b / plan - 1.0).abs()));
        }
    }
    Ok(out)
}

/// Relative sup error of `sum_lambda S_lambda f - f` for a band-limited
/// profile `sin(4r)/r exp(-r^2/8)`.
pub fn reconstruction_error(dim: usize, r_max: f64, cells: usize) -> LabResult<f64> {
    let p = RadialProfile::from_fn(dim, RadialGrid::new(r_max, cells)?, |r| {
        let s = if r == 0.0 { 4.0 } else { (4.0 * r).sin() / r };
        s * (-0.125 * r * r).exp()
    })?;
    let pieces = dyadic_pieces(&p, &DyadicCutoff::default())?;
    let mut sum = vec![0.0; p.grid.len()];
    for (_, q) in &pieces {
        for (a, b) in sum.iter_mut().zip(q.values()) {
            *a += b;
        }
    }
    Ok(max_err(&sum, |j| p.values()[j]) / p.samples.max_abs())
}

pub fn spectral() -> LabResult<ScenarioReport> {
    timed("spectral", |rep| {
        let worst = gaussian_sobolev_errors(20.0, 1024)?.iter().map(|e| e.2).fold(0.0, f64::max);
        rep.push(Criterion::at_most("Gaussian H^s vs Gamma integral", worst, 1e-4));
        let plan = besov_sobolev_gaps(20.0, 1024)?.iter().map(|e| e.3).fold(0.0, f64::max);
        rep.push(Criterion::at_most("B^s_22 dyadic sum vs Plancherel form", plan, 1e-8));
        for dim in [3, 5] {
            rep.push(Criterion::at_most(format!("LP reconstruction (n={dim})"), reconstruction_error(dim, 40.0, 1024)?, 1e-6));
        }
        let c = DyadicCutoff::default();
        let partition = (0..2000)
            .map(|i| {
                let rho = 2f64.powf(-20.0 + 40.0 * i as f64 / 2000.0);
                let sum: f64 = (-30..=30).map(|j| c.chi(rho / 2f64.powi(j))).sum();
                (sum - 1.0).abs()
            })
            .fold(0.0, f64::max);
        rep.push(Criterion::at_most("dyadic partition of unity", partition, 1e-10));
        Ok(())
    })
}

// ---------------------------------------------------------------- theorems

/// Largest relative deviation of `||λ^a u(λ·)||_{H^s(R^3)}` from its
/// `λ = 1` value for the Gaussian `exp(-r^2/2)`.
pub fn scaling_deviation(a: f64, s: f64, r_max: f64, cells: usize, lambdas: &[f64]) -> LabResult<f64> {
    let base = RadialProfile::from_fn(3, RadialGrid::new(r_max, cells)?, |r| (-r * r / 2.0).exp())?;
    let n0 = sobolev_norm(&base, s)?;
    let mut worst = 0.0f64;
    for &l in lambdas {
        let n = sobolev_norm(&scale(&base, l, a)?, s)?;
        worst = worst.max((n / n0 - 1.0).abs());
    }
    Ok(worst)
}

/// Sampled constants of the radial dyadic Sobolev inequality: max/min over
/// `lambdas`.
pub fn dyadic_sobolev_variation(dim: usize, alpha: f64, p: f64, q: f64, r_max: f64, cells: usize, lambdas: &[f64]) -> LabResult<f64> {
    let grid = RadialGrid::new(r_max, cells)?;
    let family = dyadic_sobolev_family(dim, &grid)?;
    let rep = radial_dyadic_sobolev_check(&family, dim, alpha, p, q, lambdas, &DyadicCutoff::default())?;
    Ok(rep.variation())
}

pub const SCALING_LAMBDAS: [f64; 5] = [0.25, 0.5, 1.0, 2.0, 4.0];
pub const DYADIC_LAMBDAS: [f64; 5] = [1.0, 2.0, 4.0, 8.0, 16.0];
pub const DYADIC_TRIPLES: [(usize, f64, f64, f64); 3] = [(5, 4.0, 2.0, f64::INFINITY), (3, 2.0, 2.0, 4.0), (5, 0.0, 2.0, 4.0)];

pub fn theorems() -> LabResult<ScenarioReport> {
    timed("theorems", |rep| {
        for (a, s) in [(1.0, 2.5), (0.5, 2.0)] {
            let d = scaling_deviation(a, s, 40.0, 2048, &SCALING_LAMBDAS)?;
            rep.push(Criterion::at_most(format!("scale invariance of H^{s} (a={a})"), d, 1e-3));
        }
        for (n, alpha, p, q) in DYADIC_TRIPLES {
            let v = dyadic_sobolev_variation(n, alpha, p, q, 20.0, 1024, &DYADIC_LAMBDAS)?;
            rep.push(Criterion::at_most(format!("dyadic Sobolev constant stable (n={n}, a={alpha}, q={q})"), v, 2.0));
        }
        Ok(())
    })
}
