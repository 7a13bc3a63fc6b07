//! Built-in experiments, one per published example.

use weno_dp::exact::{MuSmoothParams, TwoPeakonParams, DEFAULT_PROFILE_CELLS};
use weno_dp::WenoConfig;

use crate::config::{
    DtModeName, Equation, GridSizes, InitialCondition, Reference, RunConfig, SchemeName,
    WaveProfile, WeightOverrides,
};

#[allow(clippy::too_many_arguments)]
fn base(name: &str, description: &str, equation: Equation, scheme: SchemeName, domain: [f64; 2], n: usize, t_end: f64, ic: InitialCondition) -> RunConfig {
    RunConfig {
        name: name.to_string(),
        description: description.to_string(),
        equation,
        scheme,
        domain,
        n: GridSizes::One(n),
        t_end,
        cfl: 0.3,
        dt_mode: DtModeName::Linear,
        snapshots: Vec::new(),
        reference: Reference::None,
        output_dir: None,
        ic,
        weights: None,
    }
}

fn two_peakon(sign: f64) -> InitialCondition {
    let p = TwoPeakonParams::default();
    if sign > 0.0 {
        InitialCondition::TwoPeakon { c1: p.c1, c2: p.c2, x1: p.x1, x2: p.x2 }
    } else {
        InitialCondition::TwoAntipeakon { c1: p.c1, c2: p.c2, x1: p.x1, x2: p.x2 }
    }
}

fn shock_weights(scheme: SchemeName) -> WeightOverrides {
    let tuned = WenoConfig::shock_tuned(scheme.scheme());
    match scheme {
        SchemeName::Weno5 => WeightOverrides { simple: Some(tuned.simple_linear_weights), ..Default::default() },
        _ => WeightOverrides { mr: Some(tuned.mr_linear_weights), ..Default::default() },
    }
}

fn with(mut cfg: RunConfig, f: impl FnOnce(&mut RunConfig)) -> RunConfig {
    f(&mut cfg);
    cfg
}

pub fn catalog() -> Vec<RunConfig> {
    use Equation::{Dp, Mudp};
    use SchemeName::{Mrweno5, Mrweno7, Weno5};
    let mu = MuSmoothParams::default();
    let half = 0.5 * mu.period;
    vec![
        with(
            base("dp-soliton-accuracy", "DP smooth soliton, A = 1, c = 5: convergence against the closed form", Dp, Weno5, [-50.0, 50.0], 80, 1.0, InitialCondition::Soliton { a: 1.0 }),
            |c| {
                c.n = GridSizes::Many(vec![80, 160, 320, 640, 1280]);
                c.dt_mode = DtModeName::Accuracy5;
                c.reference = Reference::Exact;
            },
        ),
        with(
            base("dp-peakon", "DP single peakon, c = 1", Dp, Weno5, [-40.0, 40.0], 640, 16.0, InitialCondition::Peakon { c: 1.0 }),
            |c| {
                c.snapshots = vec![4.0, 8.0, 12.0];
                c.reference = Reference::Exact;
            },
        ),
        with(
            base("dp-antipeakon", "DP single anti-peakon, c = 1", Dp, Weno5, [-40.0, 40.0], 640, 16.0, InitialCondition::Antipeakon { c: 1.0 }),
            |c| {
                c.snapshots = vec![4.0, 8.0, 12.0];
                c.reference = Reference::Exact;
            },
        ),
        with(
            base("dp-two-peakon", "DP two-peakon interaction", Dp, Mrweno5, [-40.0, 40.0], 1280, 12.0, two_peakon(1.0)),
            |c| {
                c.snapshots = vec![0.0, 4.0, 8.0];
                c.reference = Reference::SelfFine;
            },
        ),
        with(
            base("dp-two-antipeakon", "DP two-anti-peakon interaction", Dp, Mrweno5, [-40.0, 40.0], 1280, 12.0, two_peakon(-1.0)),
            |c| {
                c.snapshots = vec![0.0, 4.0, 8.0];
                c.reference = Reference::SelfFine;
            },
        ),
        with(
            base("dp-shock-peakon", "DP shock peakon -sign(x)e^{-|x|}/(t+1)", Dp, Weno5, [-25.0, 25.0], 640, 6.0, InitialCondition::ShockPeakon),
            |c| {
                c.snapshots = vec![3.0];
                c.reference = Reference::Exact;
            },
        ),
        with(
            base("dp-peakon-antipeakon", "DP peakon and anti-peakon collision forming a shock peakon", Dp, Mrweno7, [-20.0, 20.0], 640, 7.0, InitialCondition::PeakonAntipeakon),
            |c| {
                c.snapshots = vec![0.0, 4.0, 5.0];
                c.reference = Reference::SelfFine;
            },
        ),
        with(
            base("dp-triple", "DP triple interaction", Dp, Weno5, [-20.0, 20.0], 640, 7.0, InitialCondition::Triple),
            |c| {
                c.snapshots = vec![0.0, 2.0, 5.32];
                c.reference = Reference::SelfFine;
            },
        ),
        with(
            base("dp-wavebreak-1", "DP wave breaking from e^{0.5x^2} sin(pi x)", Dp, Mrweno5, [-2.0, 2.0], 640, 1.1, InitialCondition::Wavebreak { profile: WaveProfile::Gaussian }),
            |c| {
                c.snapshots = vec![0.0, 0.18, 0.5];
                c.reference = Reference::SelfFine;
            },
        ),
        with(
            base("dp-wavebreak-2", "DP wave breaking from sech^2(0.1(x + 50))", Dp, Mrweno7, [-100.0, 100.0], 2560, 30.0, InitialCondition::Wavebreak { profile: WaveProfile::Sech }),
            |c| {
                c.snapshots = vec![0.0, 10.0, 20.0];
                c.reference = Reference::SelfFine;
            },
        ),
        with(
            base(
                "mudp-accuracy",
                "muDP smooth traveling wave: self-convergence (n against 2n)",
                Mudp,
                Weno5,
                [-half, half],
                32,
                0.1,
                InitialCondition::MuSmooth {
                    crest: mu.crest,
                    trough: mu.trough,
                    speed: mu.speed,
                    mu0: mu.mu0,
                    period: mu.period,
                    anchor_x: mu.anchor_x,
                    cells: DEFAULT_PROFILE_CELLS,
                },
            ),
            |c| {
                c.n = GridSizes::Many(vec![32, 64, 128, 256, 512, 1024]);
                c.dt_mode = DtModeName::Accuracy5;
                c.reference = Reference::SelfFine;
            },
        ),
        with(
            base("mudp-peakon-1", "muDP one peakon", Mudp, Weno5, [0.0, 1.0], 160, 10.0, InitialCondition::MuPeakons { psi: vec![0.333], phi: vec![-0.5] }),
            |c| {
                c.snapshots = vec![0.0, 1.0, 5.0];
                c.reference = Reference::Exact;
            },
        ),
        with(
            base("mudp-peakon-2", "muDP two peakons", Mudp, Mrweno5, [0.0, 1.0], 160, 10.0, InitialCondition::MuPeakons { psi: vec![0.1, 0.08], phi: vec![0.4, 0.1] }),
            |c| {
                c.snapshots = vec![0.0, 1.0, 5.0];
                c.reference = Reference::Exact;
            },
        ),
        with(
            base("mudp-shock-1", "muDP one shock with shock-tuned linear weights", Mudp, Weno5, [0.0, 1.0], 320, 5.0, InitialCondition::MuShocks { psi: vec![0.333], phi: vec![0.1], s: vec![0.1] }),
            |c| {
                c.snapshots = vec![0.0, 1.0, 3.0];
                c.weights = Some(shock_weights(Weno5));
            },
        ),
        with(
            base("mudp-shock-2", "muDP two shocks with shock-tuned linear weights", Mudp, Mrweno5, [0.0, 1.0], 320, 5.0, InitialCondition::MuShocks { psi: vec![0.3, 0.1], phi: vec![0.2, 0.5], s: vec![0.4, 0.2] }),
            |c| {
                c.snapshots = vec![0.0, 1.0, 3.0];
                c.weights = Some(shock_weights(Mrweno5));
            },
        ),
    ]
}

pub fn find(name: &str) -> Option<RunConfig> {
    catalog().into_iter().find(|c| c.name == name)
}
