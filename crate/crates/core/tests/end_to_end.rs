use weno_dp::diagnostics::error_norms;
use weno_dp::dp::DpSolver;
use weno_dp::exact::{
    dp_peakon, dp_soliton, evolve_particles, mu_peakon_field, mu_shock_field, ParticleState,
    SolitonParams, PARTICLE_DT,
};
use weno_dp::mudp::{discrete_mean, MuDpSolver};
use weno_dp::time::{integrate, TimePolicy};
use weno_dp::{make_grid, sample_field, DtMode, Scheme, StateField, WenoConfig};

fn argmax(u: &StateField) -> usize {
    let v = u.values();
    (0..v.len()).max_by(|&a, &b| v[a].total_cmp(&v[b])).unwrap()
}

#[test]
fn constant_states_are_steady() {
    let g = make_grid(-3.0, 5.0, 48).unwrap();
    for scheme in Scheme::ALL {
        let cfg = WenoConfig::new(scheme);
        let u = vec![0.6; 48];
        let dp = DpSolver::new(g, &cfg).unwrap().rhs(&u).unwrap();
        let mu = MuDpSolver::new(g, &cfg).unwrap().rhs(&u).unwrap();
        assert!(dp.iter().chain(&mu).all(|r| r.abs() < 1e-11), "{scheme}");
    }
}

#[test]
fn soliton_error_drops_at_design_rate() {
    let p = SolitonParams::default();
    for (scheme, want) in [(Scheme::Weno5Simple, 4.5), (Scheme::MrWeno5, 4.5), (Scheme::MrWeno7, 6.5)] {
        let cfg = WenoConfig::new(scheme).with_dt_mode(DtMode::accuracy_for(scheme));
        let err = |n: usize| {
            let g = make_grid(-50.0, 50.0, n).unwrap();
            let u0 = sample_field(&g, |x| dp_soliton(x, 0.0, &p)).unwrap();
            let s = DpSolver::new(g, &cfg).unwrap();
            let pol = TimePolicy::new(cfg.cfl, cfg.dt_mode, 1.0).unwrap();
            let (u, _) = integrate(&u0, |v| s.rhs(v), &pol).unwrap();
            let exact = sample_field(&g, |x| dp_soliton(x, 1.0, &p)).unwrap();
            error_norms(&u, &exact).unwrap().0
        };
        let order = (err(160) / err(320)).log2();
        assert!(order >= want, "{scheme}: {order}");
    }
}

#[test]
fn peakon_crest_moves_at_unit_speed() {
    let g = make_grid(-40.0, 40.0, 640).unwrap();
    let cfg = WenoConfig::new(Scheme::MrWeno5);
    let u0 = sample_field(&g, |x| dp_peakon(x, 0.0, 1.0, 1.0)).unwrap();
    let s = DpSolver::new(g, &cfg).unwrap();
    let pol = TimePolicy::new(0.3, DtMode::Linear, 8.0).unwrap();
    let (u, _) = integrate(&u0, |v| s.rhs(v), &pol).unwrap();
    assert!((g.x(argmax(&u)) - 8.0).abs() <= g.dx());
}

#[test]
fn mudp_peakon_follows_its_particle() {
    let g = make_grid(0.0, 1.0, 160).unwrap();
    let st = ParticleState::peakons(vec![0.333], vec![0.2]).unwrap();
    let u0 = sample_field(&g, |x| mu_peakon_field(x, &st)).unwrap();
    let s = MuDpSolver::new(g, &WenoConfig::new(Scheme::Weno5Simple)).unwrap();
    let pol = TimePolicy::new(0.3, DtMode::Linear, 1.0).unwrap();
    let (u, _) = integrate(&u0, |v| s.rhs(v), &pol).unwrap();
    let end = evolve_particles(&st, 1.0, PARTICLE_DT).unwrap();
    // speed 13/12 ψ
    assert!((end.phi[0] - (0.2 + 13.0 / 12.0 * 0.333)).abs() < 1e-12);
    let gap = (g.x(argmax(&u)) - end.phi[0]).abs();
    assert!(gap.min(1.0 - gap) <= 1.5 * g.dx(), "{gap}");
}

#[test]
fn mudp_shock_keeps_its_mean() {
    let g = make_grid(0.0, 1.0, 160).unwrap();
    let st = ParticleState::shocks(vec![0.3, 0.1], vec![0.2, 0.5], vec![0.4, 0.2]).unwrap();
    let u0 = sample_field(&g, |x| mu_shock_field(x, &st)).unwrap();
    let cfg = WenoConfig::shock_tuned(Scheme::MrWeno7);
    let s = MuDpSolver::new(g, &cfg).unwrap();
    let pol = TimePolicy::new(0.3, DtMode::Linear, 1.0).unwrap();
    let (u, _) = integrate(&u0, |v| s.rhs(v), &pol).unwrap();
    assert!((discrete_mean(&u) - discrete_mean(&u0)).abs() < 1e-12);
    assert!(u.values().iter().all(|v| v.is_finite()));
}
