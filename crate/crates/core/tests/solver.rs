use skyrmelab::model::{exact_free_wave_5d_full, GaussianProfile};
use skyrmelab::solver::*;
use skyrmelab::*;

fn gaussian_state(model: ModelSpec, n: usize, r_max: f64, amp: f64) -> FieldState {
    let g = RadialGrid::new(r_max, n).unwrap();
    FieldState::from_fn(g, model, 0.0, |r| amp * (-r * r).exp(), |_| 0.0)
}

fn free_wave_state(g: &RadialGrid, prof: &GaussianProfile, t: f64) -> FieldState {
    FieldState::from_fn(
        *g,
        ModelSpec::free_wave(),
        t,
        |r| exact_free_wave_5d_full(prof, t, r).v,
        |r| exact_free_wave_5d_full(prof, t, r).v_t,
    )
}

const PROFILE: GaussianProfile = GaussianProfile { amplitude: 1.0, center: 2.0, width: 1.0 };

#[test]
fn zero_state_is_stationary() {
    for kind in ModelKind::ALL {
        let m = ModelSpec::new(kind, 1.0).unwrap();
        let s = FieldState::zeros(RadialGrid::new(5.0, 64).unwrap(), m);
        assert!(acceleration(&s).unwrap().values.iter().all(|&a| a == 0.0));
        let next = step_rk4(&s, 0.01).unwrap();
        assert_eq!(next.v, s.v);
        assert_eq!(next.vt, s.vt);
    }
}

#[test]
fn acceleration_matches_exact_free_wave() {
    let err = |n: usize| {
        let g = RadialGrid::new(20.0, n).unwrap();
        let s = free_wave_state(&g, &PROFILE, 0.3);
        let a = acceleration(&s).unwrap();
        (0..g.len() - 8)
            .map(|j| (a.values[j] - exact_free_wave_5d_full(&PROFILE, 0.3, g.r(j)).v_tt).abs())
            .fold(0.0, f64::max)
    };
    let (e1, e2) = (err(256), err(512));
    assert!(e2 < 1e-3 && e1 / e2 > 12.0, "{e1:e} {e2:e}");
}

#[test]
fn pointwise_acceleration_of_small_constant() {
    let m = ModelSpec::adkins_nappi();
    let g = RadialGrid::new(4.0, 64).unwrap();
    let c = 1e-2;
    let s = FieldState::from_fn(g, m, 0.0, |_| c, |_| 0.0);
    let a = acceleration(&s).unwrap();
    for j in 0..g.len() - 2 {
        let want = model::rhs_v(&m, &model::PointData::new(g.r(j), c, 0.0, 0.0));
        assert!((a.values[j] - want).abs() < 1e-12, "j={j}");
    }
}

#[test]
fn cfl_violation_is_a_config_error() {
    let s = gaussian_state(ModelSpec::wave_map(), 64, 8.0, 0.1);
    let dt = 0.51 * s.grid.dr();
    assert!(matches!(step_rk4(&s, dt), Err(Error::Config(_))));
    assert!(matches!(evolve(&s, dt, 1.0, &IntegrateOptions::default()), Err(Error::Config(_))));
}

#[test]
fn zero_span_gives_one_row() {
    let s = gaussian_state(ModelSpec::skyrme(1.0).unwrap(), 64, 8.0, 0.1);
    let (trace, end) = evolve(&s, 0.05, 0.0, &IntegrateOptions::default()).unwrap();
    assert_eq!(trace.rows.len(), 1);
    assert_eq!(end, s);
}

#[test]
fn time_reversal() {
    for m in [ModelSpec::skyrme(1.0).unwrap(), ModelSpec::adkins_nappi(), ModelSpec::wave_map()] {
        let s = gaussian_state(m, 256, 10.0, 0.5);
        let dt = 1e-3;
        let back = step_rk4(&step_rk4(&s, dt).unwrap(), -dt).unwrap();
        let dv = s.v.values.iter().zip(&back.v.values).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        let dvt = s.vt.values.iter().zip(&back.vt.values).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        assert!(dv <= 1e-12 && dvt <= 1e-12, "{}: {dv:e} {dvt:e}", m.kind);
    }
}

#[test]
fn trace_lands_on_end_time_and_is_monotone() {
    let s = gaussian_state(ModelSpec::adkins_nappi(), 128, 10.0, 0.2);
    let opts = IntegrateOptions { cadence: 7, ..Default::default() };
    let (trace, end) = evolve(&s, 0.03, 1.0, &opts).unwrap();
    assert_eq!(end.t, 1.0);
    assert_eq!(trace.last().unwrap().t, 1.0);
    assert!(trace.rows.windows(2).all(|w| w[1].t > w[0].t));
}

#[test]
fn energy_is_conserved_for_small_data() {
    for m in [ModelSpec::skyrme(1.0).unwrap(), ModelSpec::adkins_nappi(), ModelSpec::wave_map()] {
        let s = gaussian_state(m, 1024, 20.0, 0.5);
        let (trace, _) = evolve(&s, CFL * s.grid.dr(), 3.0, &IntegrateOptions { cadence: 20, ..Default::default() })
            .unwrap();
        assert!(trace.energy_drift() < 1e-6, "{}: {:e}", m.kind, trace.energy_drift());
    }
}

#[test]
fn lightcone_energy_does_not_grow() {
    let s = gaussian_state(ModelSpec::skyrme(1.0).unwrap(), 1024, 20.0, 0.3);
    let t0 = 4.0;
    let opts = IntegrateOptions { cadence: 10, lightcone_t0: Some(t0), ..Default::default() };
    let (trace, _) = evolve(&s, CFL * s.grid.dr(), 3.5, &opts).unwrap();
    let e: Vec<f64> = trace.rows.iter().map(|r| r.lightcone_energy.unwrap()).collect();
    assert!(e.windows(2).all(|w| w[1] <= w[0] + 1e-4), "{e:?}");
    assert!(e.last().unwrap() < &e[0]);
}

#[test]
fn runs_are_bit_identical() {
    let s = gaussian_state(ModelSpec::skyrme(0.7).unwrap(), 256, 10.0, 0.8);
    let opts = IntegrateOptions { cadence: 3, lightcone_t0: Some(5.0), ..Default::default() };
    let a = evolve(&s, 0.01, 1.0, &opts).unwrap();
    let b = evolve(&s, 0.01, 1.0, &opts).unwrap();
    assert_eq!(a, b);
}

#[test]
fn free_wave_converges_at_fourth_order() {
    let init = |g: &RadialGrid| free_wave_state(g, &PROFILE, 0.0);
    let exact = |t: f64, r: f64| exact_free_wave_5d_full(&PROFILE, t, r).v;
    let rep = convergence_study_exact(&init, &exact, 20.0, 1.0, &[128, 256, 512]).unwrap();
    assert!(rep.monotone);
    assert!(rep.min_order() >= 3.5, "{rep:?}");
}

#[test]
fn self_convergence_of_adkins_nappi() {
    let init = |g: &RadialGrid| FieldState::from_fn(*g, ModelSpec::adkins_nappi(), 0.0, |r| 0.5 * (-r * r).exp(), |_| 0.0);
    let rep = convergence_study(&init, 16.0, 1.0, &[128, 256, 512]).unwrap();
    assert!(rep.min_order() >= 3.5, "{rep:?}");
}

#[test]
fn convergence_needs_doubling_resolutions() {
    let init = |g: &RadialGrid| FieldState::zeros(*g, ModelSpec::free_wave());
    assert!(matches!(convergence_study(&init, 4.0, 0.1, &[64, 64, 64]), Err(Error::Config(_))));
    assert!(matches!(convergence_study(&init, 4.0, 0.1, &[64, 128]), Err(Error::Config(_))));
    assert!(matches!(convergence_study(&init, 4.0, 0.1, &[64, 128, 512]), Err(Error::Config(_))));
}

#[test]
fn free_wave_never_blows_up() {
    let s = gaussian_state(ModelSpec::free_wave(), 256, 10.0, 0.1);
    let opts = IntegrateOptions { stop_on_growth: Some(GROWTH_THRESHOLD), ..Default::default() };
    let (trace, end) = evolve(&s, CFL * s.grid.dr(), 3.0, &opts).unwrap();
    let rep = detect_blowup(&trace, &end);
    assert!(!rep.detected && rep.t_star_estimate.is_none());
    assert!(rep.growth_factor >= 1.0);
}

#[test]
fn wave_map_from_large_data_is_cut_short() {
    let g = RadialGrid::new(4.0, 2048).unwrap();
    let s = FieldState::from_fn(
        g,
        ModelSpec::wave_map(),
        0.0,
        |r| if r == 0.0 { 2.0 } else { 2.0 * r.atan() / r },
        |r| 2.0 / (1.0 + r * r),
    );
    let opts = IntegrateOptions { stop_on_growth: Some(GROWTH_THRESHOLD), ..Default::default() };
    let (trace, end) = evolve(&s, CFL * s.grid.dr(), 1.0, &opts).unwrap();
    assert!(trace.blowup && end.t < 1.0);
    assert!(trace.last().unwrap().blowup);
    let rep = detect_blowup(&trace, &end);
    assert!(rep.detected);
    assert!((rep.t_star_estimate.unwrap() - 1.0).abs() < 1e-2);
    assert!(rep.profile_fit_error.unwrap() < 0.1);
}

#[test]
fn hard_stop_truncates_instead_of_erroring() {
    // v_tt = -v^5 at v = 1e3 oscillates far faster than 1/dt; RK4 diverges
    let g = RadialGrid::new(2.0, 64).unwrap();
    let m = ModelSpec::new(ModelKind::AdkinsNappiApprox, 1.0).unwrap();
    let s = FieldState::from_fn(g, m, 0.0, |_| 1e3, |_| 0.0);
    let (trace, end) = evolve(&s, 0.01, 1.0, &IntegrateOptions::default()).unwrap();
    assert!(trace.blowup);
    assert!(trace.stop_reason.is_some());
    assert!(end.t < 1.0);
}

#[test]
fn free_wave_deficit_is_zero() {
    let s = gaussian_state(ModelSpec::free_wave(), 256, 20.0, 0.1);
    let d = scattering_deficit(&s, ModelSpec::free_wave(), 0.02, 1.0, 2.0).unwrap();
    assert_eq!(d.deficit, 0.0);
    assert!(scattering_deficit(&s, ModelSpec::free_wave(), 0.02, 2.0, 1.0).is_err());
}

#[test]
fn sommerfeld_lets_the_pulse_leave() {
    let g = RadialGrid::new(10.0, 512).unwrap().with_boundary(OuterBoundary::Sommerfeld);
    let prof = GaussianProfile { amplitude: 1.0, center: -3.0, width: 0.7 };
    let s = free_wave_state(&g, &prof, 0.0);
    let e0 = s.energy();
    let (_, end) = evolve(&s, CFL * g.dr(), 16.0, &IntegrateOptions { cadence: 100, ..Default::default() }).unwrap();
    assert!(end.energy() < 1e-2 * e0, "{} of {e0}", end.energy());
}
