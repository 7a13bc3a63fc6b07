//! Drives one experiment end to end and writes its artifacts.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use serde::Serialize;
use weno_dp::diagnostics::{convergence_orders, error_norms, restrict, self_convergence, ErrorReport};
use weno_dp::dp::DpSolver;
use weno_dp::exact::{
    dp_peakon, dp_peakon_antipeakon_ic, dp_shock_peakon, dp_soliton, dp_triple_ic,
    dp_two_peakon_ic, dp_wavebreak_ic, evolve_particles, load_or_generate_profile,
    mu_peakon_field, mu_shock_field, ParticleState, SmoothProfile, SolitonParams,
    TwoPeakonParams, WavebreakVariant, PARTICLE_DT,
};
use weno_dp::mudp::MuDpSolver;
use weno_dp::time::{integrate, integrate_snapshots, TimePolicy};
use weno_dp::{make_grid, sample_field, Scheme, StateField, UniformGrid, WenoConfig};

use crate::config::{DtModeName, Equation, InitialCondition, Reference, RunConfig, SchemeName, WaveProfile};
use crate::error::CliError;

/// Environment variable naming the output root (default `./output`).
pub const OUTPUT_ENV: &str = "WENO_DP_OUTPUT";

pub fn output_root() -> PathBuf {
    std::env::var_os(OUTPUT_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from("output"))
}

enum Solver {
    Dp(Box<DpSolver>),
    MuDp(Box<MuDpSolver>),
}

impl Solver {
    fn new(equation: Equation, grid: UniformGrid, cfg: &WenoConfig) -> weno_dp::Result<Self> {
        Ok(match equation {
            Equation::Dp => Solver::Dp(Box::new(DpSolver::new(grid, cfg)?)),
            Equation::Mudp => Solver::MuDp(Box::new(MuDpSolver::new(grid, cfg)?)),
        })
    }

    fn rhs(&self, u: &[f64]) -> weno_dp::Result<Vec<f64>> {
        match self {
            Solver::Dp(s) => s.rhs(u),
            Solver::MuDp(s) => s.rhs(u),
        }
    }

    fn q(&self, u: &[f64]) -> weno_dp::Result<Vec<f64>> {
        match self {
            Solver::Dp(s) => s.q(u),
            Solver::MuDp(s) => s.q(u),
        }
    }
}

/// Per-grid record in the metadata file.
#[derive(Debug, Clone, Serialize)]
pub struct GridRecord {
    pub n: usize,
    pub dt: f64,
    pub steps: usize,
    /// `dx·Σu` (the mean `μ_h` for muDP)
    pub mass_initial: f64,
    pub mass_final: f64,
    pub mass_drift: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub linf: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Metadata {
    pub name: String,
    pub mode: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failed_at_time: Option<f64>,
    pub finished_unix_s: u64,
    pub wall_time_s: f64,
    pub equation: Equation,
    pub scheme: SchemeName,
    pub epsilon: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub simple_linear_weights: Option<[f64; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mr_linear_weights: Option<Vec<Vec<f64>>>,
    pub cfl: f64,
    pub dt_mode: DtModeName,
    pub t_end: f64,
    pub reference: Reference,
    pub grids: Vec<GridRecord>,
}

/// What a finished run hands back to the caller.
#[derive(Debug, Clone)]
pub struct RunSummary {
    pub dir: PathBuf,
    pub metadata: Metadata,
    pub table: Vec<ErrorReport>,
}

struct Context<'a> {
    cfg: &'a RunConfig,
    weno: WenoConfig,
    profile: Option<SmoothProfile>,
}

impl Context<'_> {
    fn grid(&self, n: usize) -> Result<UniformGrid, CliError> {
        Ok(make_grid(self.cfg.domain[0], self.cfg.domain[1], n)?)
    }

    fn initial(&self, grid: &UniformGrid) -> Result<StateField, CliError> {
        if let Some(p) = &self.profile {
            return Ok(p.sample(grid.n())?);
        }
        let f = initial_data(&self.cfg.ic)?;
        Ok(sample_field(grid, f)?)
    }

    fn exact(&self, grid: &UniformGrid, t: f64) -> Result<StateField, CliError> {
        let field = match &self.cfg.ic {
            InitialCondition::Constant { value } => StateField::constant(*grid, *value),
            InitialCondition::Soliton { a } => {
                let p = SolitonParams::new(*a);
                sample_field(grid, |x| dp_soliton(x, t, &p))?
            }
            InitialCondition::Peakon { c } => sample_field(grid, |x| dp_peakon(x, t, *c, 1.0))?,
            InitialCondition::Antipeakon { c } => sample_field(grid, |x| dp_peakon(x, t, *c, -1.0))?,
            InitialCondition::ShockPeakon => sample_field(grid, |x| dp_shock_peakon(x, t))?,
            InitialCondition::MuPeakons { psi, phi } => {
                let st = evolve_particles(&ParticleState::peakons(psi.clone(), phi.clone())?, t, PARTICLE_DT)?;
                sample_field(grid, |x| mu_peakon_field(x, &st))?
            }
            InitialCondition::MuShocks { psi, phi, s } => {
                let st = ParticleState::shocks(psi.clone(), phi.clone(), s.clone())?;
                let st = evolve_particles(&st, t, PARTICLE_DT)?;
                sample_field(grid, |x| mu_shock_field(x, &st))?
            }
            other => {
                return Err(CliError::Config {
                    field: "reference".into(),
                    message: format!("no exact solution for '{}'", other.kind()),
                })
            }
        };
        Ok(field)
    }

    fn policy(&self, weno: &WenoConfig) -> Result<TimePolicy, CliError> {
        Ok(TimePolicy::new(weno.cfl, weno.dt_mode, self.cfg.t_end)?)
    }

    /// MR-WENO7 at 4n, restricted to the run grid.
    fn self_fine(&self, grid: &UniformGrid) -> Result<StateField, CliError> {
        let fine_grid = self.grid(4 * grid.n())?;
        let mut fine_cfg = if self.weno.scheme == Scheme::MrWeno7 {
            self.weno.clone()
        } else {
            WenoConfig::new(Scheme::MrWeno7).with_dt_mode(self.weno.dt_mode)
        };
        fine_cfg.cfl = self.weno.cfl;
        fine_cfg.epsilon = self.weno.epsilon;
        let u0 = self.initial(&fine_grid)?;
        let solver = Solver::new(self.cfg.equation, fine_grid, &fine_cfg)?;
        let (u, _) = integrate(&u0, |v| solver.rhs(v), &self.policy(&fine_cfg)?)?;
        Ok(restrict(&u, grid.n())?)
    }
}

/// Initial data as a function of `x`, for every kind except the smooth muDP wave.
pub fn initial_data(ic: &InitialCondition) -> Result<Box<dyn Fn(f64) -> f64>, CliError> {
    Ok(match ic.clone() {
        InitialCondition::Constant { value } => Box::new(move |_| value),
        InitialCondition::Soliton { a } => {
            let p = SolitonParams::new(a);
            Box::new(move |x| dp_soliton(x, 0.0, &p))
        }
        InitialCondition::Peakon { c } => Box::new(move |x| dp_peakon(x, 0.0, c, 1.0)),
        InitialCondition::Antipeakon { c } => Box::new(move |x| dp_peakon(x, 0.0, c, -1.0)),
        InitialCondition::TwoPeakon { c1, c2, x1, x2 } => {
            let p = TwoPeakonParams { c1, c2, x1, x2 };
            Box::new(move |x| dp_two_peakon_ic(x, &p, 1.0))
        }
        InitialCondition::TwoAntipeakon { c1, c2, x1, x2 } => {
            let p = TwoPeakonParams { c1, c2, x1, x2 };
            Box::new(move |x| dp_two_peakon_ic(x, &p, -1.0))
        }
        InitialCondition::ShockPeakon => Box::new(|x| dp_shock_peakon(x, 0.0)),
        InitialCondition::PeakonAntipeakon => Box::new(dp_peakon_antipeakon_ic),
        InitialCondition::Triple => Box::new(dp_triple_ic),
        InitialCondition::Wavebreak { profile } => {
            let v = match profile {
                WaveProfile::Gaussian => WavebreakVariant::Gaussian,
                WaveProfile::Sech => WavebreakVariant::Sech,
            };
            Box::new(move |x| dp_wavebreak_ic(x, v))
        }
        InitialCondition::MuPeakons { psi, phi } => {
            let st = ParticleState::peakons(psi, phi)?;
            Box::new(move |x| mu_peakon_field(x, &st))
        }
        InitialCondition::MuShocks { psi, phi, s } => {
            let st = ParticleState::shocks(psi, phi, s)?;
            Box::new(move |x| mu_shock_field(x, &st))
        }
        InitialCondition::MuSmooth { .. } => {
            return Err(CliError::Config {
                field: "ic.kind".into(),
                message: "the smooth muDP wave is sampled from its generated profile".into(),
            })
        }
    })
}

fn mass(u: &StateField) -> f64 {
    u.grid().dx() * u.values().iter().sum::<f64>()
}

fn time_label(t: f64) -> String {
    format!("{t}")
}

/// `x,u[,q]` with 17 significant digits.
fn write_csv(path: &Path, u: &StateField, q: Option<&[f64]>) -> Result<(), CliError> {
    let mut w = BufWriter::new(fs::File::create(path)?);
    writeln!(w, "{}", if q.is_some() { "x,u,q" } else { "x,u" })?;
    for (i, x) in u.grid().points().enumerate() {
        match q {
            Some(q) => writeln!(w, "{x:.16e},{:.16e},{:.16e}", u.values()[i], q[i])?,
            None => writeln!(w, "{x:.16e},{:.16e}", u.values()[i])?,
        }
    }
    w.flush()?;
    Ok(())
}

fn write_table(path: &Path, rows: &[ErrorReport]) -> Result<(), CliError> {
    let mut w = BufWriter::new(fs::File::create(path)?);
    writeln!(w, "n,l1,order_l1,linf,order_linf")?;
    let opt = |o: Option<f64>| o.map(|v| format!("{v:.6}")).unwrap_or_default();
    for r in rows {
        writeln!(w, "{},{:.16e},{},{:.16e},{}", r.n, r.l1, opt(r.order_l1), r.linf, opt(r.order_linf))?;
    }
    w.flush()?;
    Ok(())
}

fn base_metadata(cfg: &RunConfig, weno: &WenoConfig, mode: &str) -> Metadata {
    let (simple, mr) = match weno.scheme {
        Scheme::Weno5Simple => (Some(weno.simple_linear_weights), None),
        _ => (None, Some(weno.mr_linear_weights.clone())),
    };
    Metadata {
        name: cfg.name.clone(),
        mode: mode.to_string(),
        status: "ok".into(),
        error: None,
        failed_at_time: None,
        finished_unix_s: 0,
        wall_time_s: 0.0,
        equation: cfg.equation,
        scheme: cfg.scheme,
        epsilon: weno.epsilon,
        simple_linear_weights: simple,
        mr_linear_weights: mr,
        cfl: cfg.cfl,
        dt_mode: cfg.dt_mode,
        t_end: cfg.t_end,
        reference: cfg.reference,
        grids: Vec::new(),
    }
}

fn write_metadata(dir: &Path, meta: &Metadata) -> Result<(), CliError> {
    let text = toml::to_string(meta).expect("metadata serializes");
    fs::write(dir.join("metadata.toml"), text)?;
    Ok(())
}

fn now_unix() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

/// Runs `cfg` and writes artifacts below `root`.
///
/// A single grid size writes one CSV per output time; a list of sizes runs a
/// convergence study and writes `convergence.csv` as well.
pub fn run(cfg: &RunConfig, root: &Path) -> Result<RunSummary, CliError> {
    cfg.validate()?;
    let weno = cfg.weno_config()?;
    let dir = root.join(cfg.output_dir.clone().unwrap_or_else(|| PathBuf::from(&cfg.name)));
    fs::create_dir_all(&dir)?;
    let profile = match cfg.ic.mu_smooth_params() {
        Some((params, cells)) => {
            let cache = root.join("cache").join(format!("mu-profile-{cells}.bin"));
            fs::create_dir_all(cache.parent().unwrap())?;
            Some(load_or_generate_profile(&cache, &params, cells)?)
        }
        None => None,
    };
    let ctx = Context { cfg, weno: weno.clone(), profile };
    let mode = if cfg.is_convergence() { "convergence" } else { "run" };
    let mut meta = base_metadata(cfg, &weno, mode);
    let start = Instant::now();
    let result = if cfg.is_convergence() {
        convergence_body(&ctx, &dir, &mut meta)
    } else {
        run_body(&ctx, &dir, &mut meta).map(|_| Vec::new())
    };
    meta.wall_time_s = start.elapsed().as_secs_f64();
    meta.finished_unix_s = now_unix();
    match result {
        Ok(table) => {
            write_metadata(&dir, &meta)?;
            Ok(RunSummary { dir, metadata: meta, table })
        }
        Err(e) => {
            meta.status = "aborted".into();
            meta.error = Some(e.to_string());
            if let CliError::Numerical { time, .. } = &e {
                meta.failed_at_time = *time;
            }
            write_metadata(&dir, &meta)?;
            Err(e)
        }
    }
}

fn run_body(ctx: &Context, dir: &Path, meta: &mut Metadata) -> Result<(), CliError> {
    let cfg = ctx.cfg;
    let n = cfg.n.as_slice()[0];
    let grid = ctx.grid(n)?;
    let u0 = ctx.initial(&grid)?;
    let solver = Solver::new(cfg.equation, grid, &ctx.weno)?;
    let policy = ctx.policy(&ctx.weno)?;
    let (snaps, steps) = integrate_snapshots(&u0, |v| solver.rhs(v), &policy, &cfg.output_times())?;
    for (t, u) in &snaps {
        let q = solver.q(u.values())?;
        write_csv(&dir.join(format!("solution_t{}.csv", time_label(*t))), u, Some(&q))?;
    }
    let u = &snaps.last().expect("t_end is always an output time").1;
    let reference = match cfg.reference {
        Reference::Exact => Some(ctx.exact(&grid, cfg.t_end)?),
        Reference::SelfFine => Some(ctx.self_fine(&grid)?),
        Reference::None => None,
    };
    let (mut l1, mut linf) = (None, None);
    if let Some(r) = &reference {
        write_csv(&dir.join(format!("reference_t{}.csv", time_label(cfg.t_end))), r, None)?;
        let (a, b) = error_norms(u, r)?;
        l1 = Some(a);
        linf = Some(b);
    }
    let (m0, m1) = (mass(&u0), mass(u));
    meta.grids.push(GridRecord {
        n,
        dt: policy.dt(grid.dx()),
        steps,
        mass_initial: m0,
        mass_final: m1,
        mass_drift: m1 - m0,
        l1,
        linf,
    });
    Ok(())
}

fn convergence_body(ctx: &Context, dir: &Path, meta: &mut Metadata) -> Result<Vec<ErrorReport>, CliError> {
    let cfg = ctx.cfg;
    let policy = ctx.policy(&ctx.weno)?;
    let mut finals = Vec::new();
    for &n in cfg.n.as_slice() {
        let grid = ctx.grid(n)?;
        let u0 = ctx.initial(&grid)?;
        let solver = Solver::new(cfg.equation, grid, &ctx.weno)?;
        let (u, steps) = integrate(&u0, |v| solver.rhs(v), &policy)?;
        let q = solver.q(u.values())?;
        write_csv(&dir.join(format!("solution_n{n}.csv")), &u, Some(&q))?;
        let (m0, m1) = (mass(&u0), mass(&u));
        meta.grids.push(GridRecord {
            n,
            dt: policy.dt(grid.dx()),
            steps,
            mass_initial: m0,
            mass_final: m1,
            mass_drift: m1 - m0,
            l1: None,
            linf: None,
        });
        finals.push(u);
    }
    let rows: Vec<ErrorReport> = match cfg.reference {
        Reference::Exact => finals
            .iter()
            .map(|u| {
                let (l1, linf) = error_norms(u, &ctx.exact(u.grid(), cfg.t_end)?)?;
                Ok(ErrorReport::new(u.len(), l1, linf))
            })
            .collect::<Result<_, CliError>>()?,
        Reference::SelfFine => finals
            .windows(2)
            .map(|w| {
                let (l1, linf) = self_convergence(&w[0], &w[1])?;
                Ok(ErrorReport::new(w[0].len(), l1, linf))
            })
            .collect::<Result<_, CliError>>()?,
        Reference::None => unreachable!("validated"),
    };
    for (rec, row) in meta.grids.iter_mut().zip(&rows) {
        rec.l1 = Some(row.l1);
        rec.linf = Some(row.linf);
    }
    let table = convergence_orders(&rows);
    write_table(&dir.join("convergence.csv"), &table)?;
    Ok(table)
}
