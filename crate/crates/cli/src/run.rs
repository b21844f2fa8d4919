//! Experiment drivers behind the subcommands.

use std::io;
use std::path::{Path, PathBuf};
use std::thread;

use fracgalerkin::diagnostics::{
    coercivity_constants, coercivity_violation, convergence_study, energy_report, energy_series, forcing_bounds,
    gradient_l1, gronwall_audit, potential_constant, running_max, three_quarter_l1, ConvergencePlan, ConvergenceRow,
};
use fracgalerkin::fracops::TimeGrid;
use fracgalerkin::galerkin::{
    mass_drift, solve_ml, solve_ml_on_grid, solve_stepping, GalerkinSystem, ProblemSpec, SolverKind, Trajectory,
};
use fracgalerkin::spectral::min_samples;
use fracgalerkin::{Cx, Error as SolverError, Lattice, SpectralField};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{ConfigError, Experiment, RunConfig, SolverChoice, SweepKey};
use crate::density::{default_xmax, stable_density, symmetric_grid, DensityError};
use crate::output::{num, Csv};
use crate::profiles::build_profile;

/// Mass drift allowed for the propagator and for the stepper, relative to
/// `max(1, |û(0,0)|)`.
const MASS_TOLERANCE_ML: f64 = 1e-10;
const MASS_TOLERANCE_STEPPING: f64 = 1e-8;
/// Random fields drawn by the forcing and coercivity audits.
const AUDIT_FIELDS: usize = 100;
const AUDIT_SEED: u64 = 0x5eed;
/// Output times of the spatial rows of a convergence study.
const CONVERGENCE_SNAPSHOTS: usize = 10;
/// Grid spacing and size cap of density output in config mode.
const DENSITY_SPACING: f64 = 0.05;
const DENSITY_MAX_POINTS: usize = 400_001;

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("{0}")]
    Config(#[from] ConfigError),
    #[error("{0}")]
    Solver(#[from] SolverError),
    #[error("{0}")]
    Density(#[from] DensityError),
    #[error("{0}")]
    Invariant(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
}

impl RunError {
    /// 2 configuration, 3 solver, 4 invariant violation, 1 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config(_) => 2,
            Self::Solver(_) | Self::Density(_) => 3,
            Self::Invariant(_) => 4,
            Self::Io { .. } => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Self::Config(_) => "config",
            Self::Solver(_) => "solver",
            Self::Density(_) => "density",
            Self::Invariant(_) => "invariant",
            Self::Io { .. } => "io",
        }
    }

    /// Single-line `key=value` report for scripts.
    pub fn machine_line(&self) -> String {
        let message = self.to_string().replace('\\', "\\\\").replace('"', "\\\"").replace('\n', " ");
        format!("error code={} kind={} message=\"{}\"", self.exit_code(), self.kind(), message)
    }
}

fn config_error(key: &str, message: impl Into<String>) -> RunError {
    RunError::Config(ConfigError { line: None, key: Some(key.to_owned()), message: message.into() })
}

fn write(csv: &Csv, path: PathBuf, files: &mut Vec<PathBuf>) -> Result<(), RunError> {
    csv.write(&path).map_err(|source| RunError::Io { path: path.clone(), source })?;
    files.push(path);
    Ok(())
}

/// Samples per axis of snapshot CSVs.
pub fn output_points(d: usize, m: usize) -> usize {
    let floor = if d == 1 { 128 } else { 32 };
    min_samples(m).max(floor)
}

pub fn build_problem(cfg: &RunConfig) -> Result<ProblemSpec<f64>, RunError> {
    let profile = |key: &str, spec| build_profile(spec, cfg.d).map_err(|m| config_error(key, m));
    Ok(ProblemSpec::new(cfg.alpha, cfg.beta, cfg.diffusion, cfg.t_final)?
        .with_potential(profile("potential", &cfg.potential)?)
        .with_source(profile("source", &cfg.source)?)
        .with_initial(profile("initial", &cfg.initial)?))
}

pub fn build_system(cfg: &RunConfig) -> Result<GalerkinSystem<f64>, RunError> {
    let lattice = Lattice::new(cfg.d, cfg.m)?;
    Ok(GalerkinSystem::assemble(&build_problem(cfg)?, &lattice)?)
}

/// Integrates with the configured solver. With `times`, the propagator only
/// evaluates those times; the stepper always covers the full grid.
pub fn integrate(
    system: &GalerkinSystem<f64>,
    choice: SolverChoice,
    grid: &TimeGrid<f64>,
    times: Option<&[f64]>,
) -> Result<Trajectory<f64>, RunError> {
    let propagate = || match times {
        Some(ts) => solve_ml(system, ts),
        None => solve_ml_on_grid(system, grid),
    };
    let traj = match choice {
        SolverChoice::Ml => propagate()?,
        SolverChoice::Stepping => solve_stepping(system, grid)?,
        SolverChoice::Auto if system.is_autonomous() => match propagate() {
            Err(SolverError::IllConditioned { condition, limit }) => {
                log::warn!("eigenbasis condition {condition:e} > {limit:e}; falling back to stepping");
                solve_stepping(system, grid)?
            }
            other => other?,
        },
        SolverChoice::Auto => solve_stepping(system, grid)?,
    };
    Ok(traj)
}

/// Snapshot times must be grid nodes whenever the stepper may run.
fn check_snapshots(cfg: &RunConfig, grid: &TimeGrid<f64>) -> Result<(), RunError> {
    if cfg.solver == SolverChoice::Ml {
        return Ok(());
    }
    let dt = grid.dt();
    for &t in &cfg.snapshots {
        let j = (t / dt).round() as usize;
        if j > grid.steps() || (grid.t(j) - t).abs() > 1e-9 * cfg.t_final.max(1.0) {
            return Err(config_error(
                "snapshots",
                format!("time {t} is not a node of the grid with n_steps = {}", grid.steps()),
            ));
        }
    }
    Ok(())
}

/// Fails when the source has zero mean and `û(0, t)` drifts.
pub fn check_mass(system: &GalerkinSystem<f64>, traj: &Trajectory<f64>) -> Result<f64, RunError> {
    let drift = mass_drift(traj);
    let zero = system.lattice().zero_index();
    let f0 = system.forcing_at(0.0)?;
    let scale = 1.0 + f0.norm();
    if f0[zero].norm() > 1e-12 * scale {
        return Ok(drift);
    }
    let tolerance = match traj.solver() {
        SolverKind::MittagLeffler => MASS_TOLERANCE_ML,
        SolverKind::Stepping => MASS_TOLERANCE_STEPPING,
    };
    let mass0 = traj.mass_mode().first().map_or(0.0, |m| m.norm());
    if drift > tolerance * mass0.max(1.0) {
        return Err(RunError::Invariant(format!("mass drift {drift:e} exceeds {tolerance:e} with a zero-mean source")));
    }
    Ok(drift)
}

fn snapshot_time(traj: &Trajectory<f64>, t: f64) -> f64 {
    traj.index_of_time(t).map(|i| traj.times()[i]).unwrap_or(t)
}

fn write_solution(
    cfg: &RunConfig,
    traj: &Trajectory<f64>,
    dir: &Path,
    files: &mut Vec<PathBuf>,
) -> Result<(), RunError> {
    let d = cfg.d;
    let n = output_points(d, cfg.m);
    let points = fracgalerkin::spectral::grid_points::<f64>(d, n);
    let mut header: Vec<String> = (1..=d).map(|i| format!("x_{i}")).collect();
    header.extend(["t".to_owned(), "u".to_owned()]);
    let mut snaps = Csv::new(&header.iter().map(String::as_str).collect::<Vec<_>>());
    let mut header: Vec<String> = vec!["t".to_owned()];
    header.extend((1..=d).map(|i| format!("k_{i}")));
    header.extend(["re".to_owned(), "im".to_owned()]);
    let mut modes = Csv::new(&header.iter().map(String::as_str).collect::<Vec<_>>());

    let mut worst_imag: f64 = 0.0;
    for &t in &cfg.snapshots {
        let field = traj.field_at(snapshot_time(traj, t))?;
        let values = field.synthesize_grid(n);
        for (x, v) in points.iter().zip(&values) {
            worst_imag = worst_imag.max(v.im.abs());
            let mut row: Vec<String> = x.iter().map(|&c| num(c)).collect();
            row.extend([num(t), num(v.re)]);
            snaps.row(row);
        }
        for (idx, c) in field.coeffs().iter().enumerate() {
            let mut row = vec![num(t)];
            row.extend(field.lattice().k_of(idx).into_iter().map(|k| k.to_string()));
            row.extend([num(c.re), num(c.im)]);
            modes.row(row);
        }
    }
    if worst_imag > 1e-8 {
        log::warn!("largest imaginary residue in snapshots: {worst_imag:e}");
    }
    write(&snaps, dir.join("snapshots.csv"), files)?;
    write(&modes, dir.join("modes.csv"), files)
}

fn solver_name(kind: SolverKind) -> &'static str {
    match kind {
        SolverKind::MittagLeffler => "ml",
        SolverKind::Stepping => "stepping",
    }
}

/// `solve`: snapshots, modes and a short diagnostics table in `dir`.
pub fn run_solve(cfg: &RunConfig, dir: &Path) -> Result<Vec<PathBuf>, RunError> {
    let system = build_system(cfg)?;
    let grid = TimeGrid::new(cfg.t_final, cfg.n_steps)?;
    check_snapshots(cfg, &grid)?;
    let traj = integrate(&system, cfg.solver, &grid, Some(&cfg.snapshots))?;
    let drift = check_mass(&system, &traj)?;
    let mut files = Vec::new();
    write_solution(cfg, &traj, dir, &mut files)?;
    let mut diag = Csv::new(&["name", "value"]);
    diag.row(["solver", solver_name(traj.solver())]);
    diag.named("mass_drift", drift);
    diag.named("c_v", potential_constant(system.potential()));
    write(&diag, dir.join("diagnostics.csv"), &mut files)?;
    Ok(files)
}

fn member_dir(base: &Path, key: SweepKey, value: f64) -> PathBuf {
    base.join(format!("{}_{}", key.name(), num(value)))
}

/// `sweep`: one `solve` per value, run concurrently, each in its own directory.
pub fn run_sweep(cfg: &RunConfig) -> Result<Vec<PathBuf>, RunError> {
    let key = cfg.sweep_key.ok_or_else(|| config_error("sweep_key", "required for the sweep experiment"))?;
    let members: Vec<(RunConfig, PathBuf)> = cfg
        .sweep_values
        .iter()
        .map(|&v| {
            let mut member = cfg.clone();
            member.apply(key, v).map_err(|m| config_error("sweep_values", m))?;
            member.experiment = Experiment::Solve;
            Ok((member, member_dir(&cfg.out_dir, key, v)))
        })
        .collect::<Result<_, RunError>>()?;
    let results: Vec<Result<Vec<PathBuf>, RunError>> = thread::scope(|scope| {
        let handles: Vec<_> = members.iter().map(|(m, dir)| scope.spawn(move || run_solve(m, dir))).collect();
        handles.into_iter().map(|h| h.join().expect("sweep member panicked")).collect()
    });
    let mut files = Vec::new();
    for r in results {
        files.extend(r?);
    }
    Ok(files)
}

/// Refinement levels derived from the config: radii from `sweep_values`
/// when sweeping `m` (reference `2·max`), otherwise `m/8, m/4, m/2` against
/// `m`; steps `T/n_steps` halved three times; temporal rows at the
/// smallest radius.
pub fn convergence_plan(cfg: &RunConfig) -> Result<ConvergencePlan<f64>, RunError> {
    let (m_list, m_reference) = if cfg.sweep_key == Some(SweepKey::M) {
        let list: Vec<usize> = cfg.sweep_values.iter().map(|&v| v as usize).collect();
        let max = list.iter().copied().max().unwrap_or(0);
        (list, 2 * max)
    } else {
        let mut list: Vec<usize> = [8, 4, 2].iter().map(|div| cfg.m / div).filter(|&m| m >= 1).collect();
        list.dedup();
        (list, cfg.m)
    };
    let dt = cfg.t_final / cfg.n_steps as f64;
    let temporal_m = m_list.iter().copied().min().unwrap_or(cfg.m);
    Ok(ConvergencePlan {
        dim: cfg.d,
        m_list,
        m_reference,
        snapshots: CONVERGENCE_SNAPSHOTS,
        dt_list: (0..4).map(|i| dt / f64::from(1u32 << i)).collect(),
        temporal_m,
    })
}

/// `convergence`: `convergence.csv` plus fitted rates in `diagnostics.csv`.
pub fn run_convergence(cfg: &RunConfig) -> Result<Vec<PathBuf>, RunError> {
    let problem = build_problem(cfg)?;
    let plan = convergence_plan(cfg)?;
    let table = convergence_study(&problem, &plan)?;
    let mut csv = Csv::new(&["m", "dt", "sup_t_l2_error"]);
    let cell = |r: &ConvergenceRow<f64>| [r.m.to_string(), r.dt.map_or(String::new(), num), num(r.error)];
    for r in table.spatial.iter().chain(&table.temporal) {
        csv.row(cell(r));
    }
    let mut files = Vec::new();
    write(&csv, cfg.out_dir.join("convergence.csv"), &mut files)?;
    let mut diag = Csv::new(&["name", "value"]);
    diag.named("spatial_rate", table.spatial_rate.unwrap_or(f64::NAN));
    diag.named("temporal_order", table.temporal_order.unwrap_or(f64::NAN));
    write(&diag, cfg.out_dir.join("diagnostics.csv"), &mut files)?;
    Ok(files)
}

/// Random real trigonometric polynomial with zero mean and `|û(k)| ≤ 1`.
pub fn random_zero_mean_field(lattice: &Lattice, rng: &mut impl Rng) -> SpectralField<f64> {
    let mut field = SpectralField::zeros(lattice);
    let zero = lattice.zero_index();
    for i in 0..zero {
        let c = Cx::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) / 2f64.sqrt();
        let coeffs = field.coeffs_mut();
        coeffs[i] = c;
        coeffs[lattice.mirror(i)] = c.conj();
    }
    field
}

/// `diagnose`: constants, audits, energy norms and the Grönwall check.
pub fn run_diagnose(cfg: &RunConfig) -> Result<Vec<PathBuf>, RunError> {
    let system = build_system(cfg)?;
    let potential = system.potential();
    let c_v = potential_constant(potential);
    let mut diag = Csv::new(&["name", "value"]);
    diag.named("c_v", c_v);
    diag.named("grad_v_l1", gradient_l1(potential));
    diag.named("three_quarter_v_l1", three_quarter_l1(potential));

    let constants = coercivity_constants(cfg.diffusion, c_v, cfg.beta, None);
    match &constants {
        Ok(c) => {
            diag.named("gamma1", c.gamma1);
            diag.named("gamma2", c.gamma2);
            diag.named("epsilon", c.epsilon);
            diag.named("young_constant", c.young);
            if let Some(g) = c.single {
                diag.named("gamma_single", g);
            }
        }
        Err(e) => log::warn!("coercivity constants unavailable: {e}"),
    }

    let lattice = system.lattice();
    let mut rng = ChaCha8Rng::seed_from_u64(AUDIT_SEED);
    let (mut split, mut combined, mut coercive) = (f64::NEG_INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for _ in 0..AUDIT_FIELDS {
        let u = random_zero_mean_field(lattice, &mut rng);
        let v = random_zero_mean_field(lattice, &mut rng);
        let b = forcing_bounds(&u, &v, potential)?;
        split = split.max(b.lhs - b.split_rhs);
        combined = combined.max(b.lhs - b.combined_rhs);
        if let Ok(c) = &constants {
            coercive = coercive.max(coercivity_violation(&u, c, potential)?);
        }
    }
    diag.named("forcing_split_violation", split);
    diag.named("forcing_combined_violation", combined);
    if constants.is_ok() {
        diag.named("coercivity_violation", coercive);
    }

    let grid = TimeGrid::new(cfg.t_final, cfg.n_steps)?;
    let traj = integrate(&system, cfg.solver, &grid, None)?;
    let drift = check_mass(&system, &traj)?;
    diag.row(["solver", solver_name(traj.solver())]);
    diag.named("mass_drift", drift);
    let report = energy_report(&traj)?;
    for (name, value) in report.entries() {
        diag.named(name, value);
    }
    if let Ok(c) = &constants {
        let source_sq: Vec<f64> =
            traj.times().iter().map(|&t| system.forcing_at(t).map(|f| f.norm_squared())).collect::<Result<_, _>>()?;
        let violation =
            gronwall_audit(&energy_series(&traj), 2.0 * c.gamma2 + 1.0, &running_max(&source_sq), cfg.alpha, &grid)?;
        diag.named("gronwall_violation", violation);
    }
    let mut files = Vec::new();
    write(&diag, cfg.out_dir.join("diagnostics.csv"), &mut files)?;
    Ok(files)
}

/// Density table `x,p` on `n` points of `[−xmax, xmax]`.
pub fn density_csv(beta: f64, xmax: f64, n: usize) -> Result<Csv, RunError> {
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(config_error("beta", format!("{beta} outside (0, 1]")));
    }
    let xs = symmetric_grid(xmax, n);
    let ps = stable_density(beta, &xs)?;
    let mut csv = Csv::new(&["x", "p"]);
    for (x, p) in xs.iter().zip(&ps) {
        csv.numbers(&[*x, *p]);
    }
    Ok(csv)
}

/// `stable-density` from a config: window from [`default_xmax`], spacing
/// `0.05` up to `400001` points; one file per `beta` when sweeping it.
pub fn run_stable_density(cfg: &RunConfig) -> Result<Vec<PathBuf>, RunError> {
    let betas = match cfg.sweep_key {
        Some(SweepKey::Beta) => cfg.sweep_values.clone(),
        _ => vec![cfg.beta],
    };
    let mut files = Vec::new();
    for beta in betas {
        let xmax = default_xmax(beta);
        let n = ((2.0 * (xmax / DENSITY_SPACING).ceil()) as usize + 1).min(DENSITY_MAX_POINTS);
        let csv = density_csv(beta, xmax, n)?;
        write(&csv, cfg.out_dir.join(format!("stable_density_beta_{}.csv", num(beta))), &mut files)?;
    }
    Ok(files)
}

/// Runs the configured experiment and returns the files written.
pub fn run(cfg: &RunConfig) -> Result<Vec<PathBuf>, RunError> {
    match cfg.experiment {
        Experiment::Solve => run_solve(cfg, &cfg.out_dir),
        Experiment::Sweep => run_sweep(cfg),
        Experiment::Convergence => run_convergence(cfg),
        Experiment::Diagnose => run_diagnose(cfg),
        Experiment::StableDensity => run_stable_density(cfg),
    }
}
