//! `key = value` run configuration.

use std::collections::HashSet;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use fracgalerkin::spectral::MAX_MODES;

/// Problem size above which a warning about run time is logged.
const DESK_MAX_T: f64 = 100.0;
const DESK_MAX_M: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub key: Option<String>,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(line) = self.line {
            write!(f, "line {line}: ")?;
        }
        if let Some(key) = &self.key {
            write!(f, "{key}: ")?;
        }
        f.write_str(&self.message)
    }
}

impl std::error::Error for ConfigError {}

fn at_line(line: usize, key: &str, message: impl Into<String>) -> ConfigError {
    ConfigError { line: Some(line), key: Some(key.to_owned()), message: message.into() }
}

fn range(key: &str, message: impl Into<String>) -> ConfigError {
    ConfigError { line: None, key: Some(key.to_owned()), message: message.into() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    Solve,
    Sweep,
    Convergence,
    Diagnose,
    StableDensity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverChoice {
    Ml,
    Stepping,
    /// Propagator for autonomous problems, stepper otherwise or when the
    /// eigenbasis is rejected.
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepKey {
    Alpha,
    Beta,
    K,
    T,
    M,
}

impl SweepKey {
    pub fn name(self) -> &'static str {
        match self {
            Self::Alpha => "alpha",
            Self::Beta => "beta",
            Self::K => "K",
            Self::T => "T",
            Self::M => "m",
        }
    }
}

/// Built-in profile vocabulary shared by `potential`, `initial` and `source`.
#[derive(Debug, Clone, PartialEq)]
pub enum ProfileSpec {
    Zero,
    /// `Σ cos xᵢ`.
    Cosine,
    /// `Σ cos 2xᵢ + tilt·sin xᵢ`.
    DoubleWell {
        tilt: f64,
    },
    /// `Π cos(kᵢxᵢ)`.
    Mode(Vec<i64>),
    /// Mollified indicator of half-width `width` around `center` on each axis.
    Bump {
        center: f64,
        width: f64,
    },
    /// `Π exp(κ(cos(xᵢ − center) − 1))`.
    VonMises {
        center: f64,
        kappa: f64,
    },
    /// Coefficients read from a `k_1..k_d,re,im` CSV file.
    Fourier(PathBuf),
    /// `cos(ωt)` times the inner profile.
    Oscillating {
        omega: f64,
        inner: Box<ProfileSpec>,
    },
}

impl ProfileSpec {
    pub fn is_time_dependent(&self) -> bool {
        matches!(self, Self::Oscillating { .. })
    }
}

fn parse_f64(text: &str) -> Result<f64, String> {
    let v: f64 = text.trim().parse().map_err(|_| format!("`{}` is not a number", text.trim()))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("`{}` is not finite", text.trim()))
    }
}

impl FromStr for ProfileSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let (head, rest) = s.split_once(':').map_or((s, None), |(h, r)| (h, Some(r)));
        let args = |n: usize| -> Result<Vec<f64>, String> {
            let parts: Vec<&str> = rest.map_or(Vec::new(), |r| r.split(':').collect());
            if parts.len() != n {
                return Err(format!("`{head}` takes {n} argument(s) separated by `:`"));
            }
            parts.into_iter().map(parse_f64).collect()
        };
        match head {
            "zero" if rest.is_none() => Ok(Self::Zero),
            "cosine" if rest.is_none() => Ok(Self::Cosine),
            "double_well" => match rest {
                None => Ok(Self::DoubleWell { tilt: fracgalerkin::galerkin::profiles::DOUBLE_WELL_TILT }),
                Some(_) => Ok(Self::DoubleWell { tilt: args(1)?[0] }),
            },
            "mode" => {
                let list = rest.ok_or("`mode` needs a frequency, e.g. mode:1 or mode:1,2")?;
                let k = list
                    .split(',')
                    .map(|c| c.trim().parse::<i64>().map_err(|_| format!("`{c}` is not an integer frequency")))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Self::Mode(k))
            }
            "bump" => {
                let a = args(2)?;
                let max = fracgalerkin::galerkin::profiles::max_bump_width();
                if !(a[1] > 0.0 && a[1] <= max) {
                    return Err(format!("bump width must lie in (0, {max:.4}]"));
                }
                Ok(Self::Bump { center: a[0], width: a[1] })
            }
            "von_mises" => {
                let a = args(2)?;
                if !(a[1] > 0.0) {
                    return Err("von_mises concentration must be positive".into());
                }
                Ok(Self::VonMises { center: a[0], kappa: a[1] })
            }
            "fourier" => {
                let path = rest.filter(|p| !p.is_empty()).ok_or("`fourier` needs a file path")?;
                Ok(Self::Fourier(PathBuf::from(path)))
            }
            "oscillating" => {
                let rest = rest.ok_or("`oscillating` needs `omega:inner`")?;
                let (omega, inner) = rest.split_once(':').ok_or("`oscillating` needs `omega:inner`")?;
                let inner: ProfileSpec = inner.parse()?;
                if inner.is_time_dependent() {
                    return Err("`oscillating` cannot be nested".into());
                }
                Ok(Self::Oscillating { omega: parse_f64(omega)?, inner: Box::new(inner) })
            }
            _ => Err(format!("unknown profile `{s}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub d: usize,
    pub m: usize,
    pub alpha: f64,
    pub beta: f64,
    pub diffusion: f64,
    pub t_final: f64,
    pub n_steps: usize,
    pub solver: SolverChoice,
    pub experiment: Experiment,
    pub potential: ProfileSpec,
    pub initial: ProfileSpec,
    pub source: ProfileSpec,
    /// Output times; defaults to `[T]`.
    pub snapshots: Vec<f64>,
    pub sweep_key: Option<SweepKey>,
    pub sweep_values: Vec<f64>,
    pub out_dir: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            d: 1,
            m: 16,
            alpha: 1.0,
            beta: 1.0,
            diffusion: 1.0,
            t_final: 1.0,
            n_steps: 1000,
            solver: SolverChoice::Auto,
            experiment: Experiment::Solve,
            potential: ProfileSpec::Zero,
            initial: ProfileSpec::Cosine,
            source: ProfileSpec::Zero,
            snapshots: Vec::new(),
            sweep_key: None,
            sweep_values: Vec::new(),
            out_dir: PathBuf::from("out"),
        }
    }
}

fn parse_list(value: &str) -> Result<Vec<f64>, String> {
    value.split(',').filter(|p| !p.trim().is_empty()).map(parse_f64).collect()
}

fn parse_count(value: &str) -> Result<usize, String> {
    value.trim().parse::<usize>().map_err(|_| format!("`{}` is not a non-negative integer", value.trim()))
}

/// Parses and validates a configuration. Unknown and repeated keys are errors.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let mut cfg = RunConfig::default();
    let mut seen = HashSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| ConfigError {
            line: Some(line_no),
            key: None,
            message: format!("expected `key = value`, got `{line}`"),
        })?;
        let key = key.trim();
        let value = value.trim();
        if !seen.insert(key.to_owned()) {
            return Err(at_line(line_no, key, "key given more than once"));
        }
        let err = |m: String| at_line(line_no, key, m);
        match key {
            "d" => cfg.d = parse_count(value).map_err(err)?,
            "m" => cfg.m = parse_count(value).map_err(err)?,
            "alpha" => cfg.alpha = parse_f64(value).map_err(err)?,
            "beta" => cfg.beta = parse_f64(value).map_err(err)?,
            "K" => cfg.diffusion = parse_f64(value).map_err(err)?,
            "T" => cfg.t_final = parse_f64(value).map_err(err)?,
            "n_steps" => cfg.n_steps = parse_count(value).map_err(err)?,
            "solver" => {
                cfg.solver = match value {
                    "ml" => SolverChoice::Ml,
                    "stepping" => SolverChoice::Stepping,
                    "auto" => SolverChoice::Auto,
                    _ => return Err(err(format!("unknown solver `{value}` (ml, stepping, auto)"))),
                }
            }
            "experiment" => {
                cfg.experiment = match value {
                    "solve" => Experiment::Solve,
                    "sweep" => Experiment::Sweep,
                    "convergence" => Experiment::Convergence,
                    "diagnose" => Experiment::Diagnose,
                    "stable-density" => Experiment::StableDensity,
                    _ => {
                        return Err(err(format!(
                            "unknown experiment `{value}` (solve, sweep, convergence, diagnose, stable-density)"
                        )))
                    }
                }
            }
            "potential" => cfg.potential = value.parse().map_err(err)?,
            "initial" => cfg.initial = value.parse().map_err(err)?,
            "source" => cfg.source = value.parse().map_err(err)?,
            "snapshots" => cfg.snapshots = parse_list(value).map_err(err)?,
            "sweep_key" => {
                cfg.sweep_key = Some(match value {
                    "alpha" => SweepKey::Alpha,
                    "beta" => SweepKey::Beta,
                    "K" => SweepKey::K,
                    "T" => SweepKey::T,
                    "m" => SweepKey::M,
                    _ => return Err(err(format!("cannot sweep over `{value}` (alpha, beta, K, T, m)"))),
                })
            }
            "sweep_values" => cfg.sweep_values = parse_list(value).map_err(err)?,
            "out_dir" => {
                if value.is_empty() {
                    return Err(err("empty path".into()));
                }
                cfg.out_dir = PathBuf::from(value);
            }
            _ => return Err(err(format!("unknown key `{key}`"))),
        }
    }
    if cfg.initial.is_time_dependent() {
        return Err(range("initial", "the initial datum cannot depend on time"));
    }
    if cfg.snapshots.is_empty() {
        cfg.snapshots.push(cfg.t_final);
    }
    cfg.validate()?;
    Ok(cfg)
}

impl RunConfig {
    /// Range checks; every error names the offending key.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.d == 0 {
            return Err(range("d", "must be at least 1"));
        }
        let modes = (2 * self.m as u128 + 1).checked_pow(self.d as u32);
        if modes.is_none_or(|n| n > MAX_MODES as u128) {
            return Err(range("m", format!("(2m+1)^d exceeds {MAX_MODES} modes")));
        }
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(range("alpha", format!("{} outside (0, 1]", self.alpha)));
        }
        if !(self.beta > 0.0) {
            return Err(range("beta", format!("{} must be positive", self.beta)));
        }
        if self.experiment == Experiment::StableDensity && self.beta > 1.0 {
            return Err(range("beta", format!("{} outside (0, 1] for stable densities", self.beta)));
        }
        if !(self.diffusion > 0.0) {
            return Err(range("K", format!("{} must be positive", self.diffusion)));
        }
        if !(self.t_final > 0.0) {
            return Err(range("T", format!("{} must be positive", self.t_final)));
        }
        if self.n_steps == 0 {
            return Err(range("n_steps", "must be at least 1"));
        }
        if let Some(t) = self.snapshots.iter().find(|&&t| !(t >= 0.0 && t <= self.t_final)) {
            return Err(range("snapshots", format!("time {t} outside [0, T]")));
        }
        match (self.sweep_key, self.sweep_values.is_empty()) {
            (Some(_), true) => return Err(range("sweep_values", "required when sweep_key is set")),
            (None, false) => return Err(range("sweep_key", "required when sweep_values is set")),
            _ => {}
        }
        if self.experiment == Experiment::Sweep && self.sweep_key.is_none() {
            return Err(range("sweep_key", "required for the sweep experiment"));
        }
        if let Some(key) = self.sweep_key {
            for &v in &self.sweep_values {
                let mut probe = self.clone();
                probe.sweep_key = None;
                probe.sweep_values.clear();
                probe.experiment = Experiment::Solve;
                probe.apply(key, v).map_err(|m| range("sweep_values", m))?;
                probe.validate().map_err(|e| range("sweep_values", format!("{v}: {}", e.message)))?;
            }
        }
        if self.t_final > DESK_MAX_T || self.m > DESK_MAX_M {
            log::warn!("T = {}, m = {}: beyond desk scale, expect a long run", self.t_final, self.m);
        }
        Ok(())
    }

    /// Sets the swept parameter to `value`.
    pub fn apply(&mut self, key: SweepKey, value: f64) -> Result<(), String> {
        match key {
            SweepKey::Alpha => self.alpha = value,
            SweepKey::Beta => self.beta = value,
            SweepKey::K => self.diffusion = value,
            SweepKey::T => {
                let old = self.t_final;
                self.t_final = value;
                for t in &mut self.snapshots {
                    if *t == old {
                        *t = value;
                    }
                }
            }
            SweepKey::M => {
                if !(value >= 0.0 && value.fract() == 0.0) {
                    return Err(format!("m = {value} is not a non-negative integer"));
                }
                self.m = value as usize;
            }
        }
        Ok(())
    }
}
