use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use coherent_core::analytic::orbit_radius;
use coherent_core::primitives::make_grid;
use coherent_core::verify::Suite;
use coherent_core::{CoherentLabel, Grid, PhysicalParams};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Config(coherent_core::Error),
    Io(String, std::io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Config(e) => write!(f, "{e}"),
            CliError::Io(what, e) => write!(f, "{what}: {e}"),
        }
    }
}

impl From<coherent_core::Error> for CliError {
    fn from(e: coherent_core::Error) -> Self {
        CliError::Config(e)
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "coherent",
    version,
    about = "Harmonic-oscillator coherent states: wave functions, evolution, verification"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write ψ(x) for one coherent state as x, Re ψ, Im ψ, |ψ|².
    Wavefn(WavefnArgs),
    /// Evolve a coherent state and write snapshots.
    Evolve(EvolveArgs),
    /// Run verification checks and report value, threshold and pass per check.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Analytic,
    Splitstep,
    Fock,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Analytic => "analytic",
            Method::Splitstep => "splitstep",
            Method::Fock => "fock",
        })
    }
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Coherent label α as real and imaginary part.
    #[arg(long, num_args = 2, value_names = ["RE", "IM"], allow_negative_numbers = true, action = clap::ArgAction::Append)]
    pub alpha: Vec<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub hbar: f64,
    #[arg(long, default_value_t = 1.0)]
    pub mass: f64,
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    /// Grid points (power of two, at least 16).
    #[arg(long, default_value_t = 1024)]
    pub grid_n: usize,
    /// Grid half-width beyond the classical orbit, in ground-state position
    /// standard deviations.
    #[arg(long, default_value_t = 10.0)]
    pub sigma_mult: f64,
    #[arg(long, default_value_t = 4096)]
    pub steps_per_period: usize,
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output format; csv for curves and json for reports by default.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Args)]
pub struct WavefnArgs {
    #[command(flatten)]
    pub common: Common,
    /// Evaluate the evolved state at this time (absolute, or `0.25T` for a
    /// fraction of the period).
    #[arg(long, default_value = "0")]
    pub time: TimeSpec,
    /// Write the Gaussian packet without its exp(−i⟨x⟩⟨p⟩/2ħ) factor.
    #[arg(long)]
    pub phaseless: bool,
}

#[derive(Debug, Clone, Args)]
pub struct EvolveArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum, default_value_t = Method::Analytic)]
    pub method: Method,
    /// Comma-separated snapshot times, absolute or `T`-suffixed.
    #[arg(long, value_delimiter = ',', default_value = "0")]
    pub times: Vec<TimeSpec>,
    /// Time horizon in periods; every snapshot must lie in [0, periods·T].
    #[arg(long, default_value_t = 1.0)]
    pub periods: f64,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: Common,
    /// One of all, eigen, uncertainty, residual, trajectory, phase-counterexample.
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Sample times per period for residual, trajectory and oracle checks.
    #[arg(long, default_value_t = 16)]
    pub sample_times: usize,
    /// Evaluate the analytic path without exp(−i⟨x⟩⟨p⟩/2ħ).
    #[arg(long)]
    pub drop_phase_factor: bool,
}

/// A time given either directly or as a multiple of the period `2π/ω`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TimeSpec {
    Absolute(f64),
    Periods(f64),
}

impl TimeSpec {
    pub fn resolve(self, params: &PhysicalParams) -> f64 {
        match self {
            TimeSpec::Absolute(t) => t,
            TimeSpec::Periods(f) => f * params.period(),
        }
    }
}

impl std::str::FromStr for TimeSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let parse = |v: &str| {
            v.parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| format!("'{s}' is not a time (use e.g. 1.5 or 0.25T)"))
        };
        match s.strip_suffix('T') {
            Some("") => Ok(TimeSpec::Periods(1.0)),
            Some(frac) => parse(frac).map(TimeSpec::Periods),
            None => parse(s).map(TimeSpec::Absolute),
        }
    }
}

impl fmt::Display for TimeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TimeSpec::Absolute(t) => write!(f, "{t}"),
            TimeSpec::Periods(p) => write!(f, "{p}T"),
        }
    }
}

/// Validated settings shared by every subcommand.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub params: PhysicalParams,
    pub labels: Vec<CoherentLabel>,
    pub grid_n: usize,
    pub sigma_mult: f64,
    pub steps_per_period: usize,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    pub fn from_common(common: &Common, default_format: Format) -> Result<Self, CliError> {
        let params = PhysicalParams::new(common.mass, common.omega, common.hbar)?;
        let labels = common
            .alpha
            .chunks(2)
            .map(|pair| CoherentLabel::from_parts(pair[0], pair[1]))
            .collect::<Result<Vec<_>, _>>()?;
        if !common.grid_n.is_power_of_two() {
            return Err(coherent_core::Error::NotPowerOfTwo(common.grid_n).into());
        }
        if common.steps_per_period == 0 {
            return Err(CliError::Usage(
                "--steps-per-period must be positive".into(),
            ));
        }
        let config = Self {
            params,
            labels,
            grid_n: common.grid_n,
            sigma_mult: common.sigma_mult,
            steps_per_period: common.steps_per_period,
            out: common.out.clone(),
            format: common.format.unwrap_or(default_format),
        };
        // surfaces grid-size and sigma errors before any work is done
        make_grid(&config.params, 0.0, config.sigma_mult, config.grid_n)?;
        Ok(config)
    }

    /// The single label of `wavefn`/`evolve`; `0 0` when none was given.
    pub fn single_label(&self) -> Result<CoherentLabel, CliError> {
        match self.labels.as_slice() {
            [] => Ok(CoherentLabel::from_parts(0.0, 0.0)?),
            [one] => Ok(*one),
            _ => Err(CliError::Usage("exactly one --alpha RE IM expected".into())),
        }
    }

    pub fn grid_for(&self, label: &CoherentLabel) -> Result<Grid, CliError> {
        Ok(make_grid(
            &self.params,
            orbit_radius(label, &self.params),
            self.sigma_mult,
            self.grid_n,
        )?)
    }

    pub fn suite(name: &str) -> Result<Suite, CliError> {
        name.parse::<Suite>()
            .map_err(|e| CliError::Usage(e.to_string()))
    }
}
