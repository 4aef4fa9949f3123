//! Command-line surface and the validated run configuration.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pdm_coherent::{Complex64, ProfileKind, ReferenceOscillator};
use serde::Serialize;

/// Node count for spectra when neither `--grid` nor `--n-points` is given.
pub const DEFAULT_POINTS: usize = 2001;
/// Default for ladder-side work. The stiffest case (nonlinear reference,
/// Case 1 γ = 2) needs this resolution to meet 1e-6 on the equality gap.
pub const DEFAULT_LADDER_POINTS: usize = 2 * DEFAULT_POINTS - 1;

#[derive(Debug, Parser)]
#[command(
    name = "pdmcs",
    version,
    about = "Checks coherent states of position-dependent-mass oscillators"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compare the finite-difference spectrum with the closed-form levels.
    Spectrum(CommonArgs),
    /// Build coherent states for each `--alpha` and check their properties.
    Coherent(CommonArgs),
    /// Run the full verification suite.
    VerifyAll(CommonArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Reference {
    Harmonic,
    Nonlinear,
}

impl From<Reference> for ReferenceOscillator {
    fn from(r: Reference) -> Self {
        match r {
            Reference::Harmonic => ReferenceOscillator::Harmonic,
            Reference::Nonlinear => ReferenceOscillator::CarinenaNonlinear,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    Constant,
    Case1,
    Case2,
}

impl From<Profile> for ProfileKind {
    fn from(p: Profile) -> Self {
        match p {
            Profile::Constant => ProfileKind::Constant,
            Profile::Case1 => ProfileKind::Case1,
            Profile::Case2 => ProfileKind::Case2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// `xmin:xmax:n` on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub n_points: usize,
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, n] = parts.as_slice() else {
            return Err(format!("expected xmin:xmax:n, got {s:?}"));
        };
        let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
        Ok(GridSpec {
            x_min: num(a)?,
            x_max: num(b)?,
            n_points: n.trim().parse().map_err(|e| format!("{n:?}: {e}"))?,
        })
    }
}

/// `re,im` on the command line, `[re, im]` in JSON.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Alpha(pub Complex64);

impl FromStr for Alpha {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (a, b) = s.split_once(',').ok_or_else(|| format!("expected re,im, got {s:?}"))?;
        let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
        Ok(Alpha(Complex64::new(num(a)?, num(b)?)))
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.0.re, self.0.im)
    }
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    #[arg(long, value_enum, default_value = "harmonic")]
    pub reference: Reference,
    #[arg(long, value_enum, default_value = "constant")]
    pub profile: Profile,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub gamma: f64,
    /// Explicit grid; otherwise one is sized to the problem.
    #[arg(
        long,
        value_name = "XMIN:XMAX:N",
        allow_hyphen_values = true,
        conflicts_with = "n_points"
    )]
    pub grid: Option<GridSpec>,
    /// Node count for the automatically sized grid (odd; 2001 for spectra,
    /// 4001 for coherent states).
    #[arg(long)]
    pub n_points: Option<usize>,
    /// Number of levels compared by `spectrum`.
    #[arg(long, default_value_t = 5)]
    pub k: usize,
    /// Coherent-state label, repeatable.
    #[arg(long = "alpha", value_name = "RE,IM", allow_hyphen_values = true)]
    pub alphas: Vec<Alpha>,
    /// Truncation of the number-state series.
    #[arg(long, default_value_t = 40)]
    pub n_max: usize,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Write here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Emit `|⟨x|α⟩|²` columns instead of the check table (CSV only).
    #[arg(long)]
    pub dump_density: bool,
    /// Report `wall_time_s` as null so that reruns are byte-identical.
    #[arg(long)]
    pub omit_timing: bool,
}

/// Which subcommand a configuration belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    Spectrum,
    Coherent,
    VerifyAll,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Spectrum => "spectrum",
            CommandKind::Coherent => "coherent",
            CommandKind::VerifyAll => "verify-all",
        }
    }
}

/// A validated configuration, echoed verbatim into the report.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub reference: Reference,
    pub profile: Profile,
    pub gamma: f64,
    /// `None` means "size the grid to the problem".
    pub grid: Option<GridSpec>,
    pub n_points: usize,
    pub k: usize,
    #[serde(serialize_with = "serialize_alphas")]
    pub alphas: Vec<Alpha>,
    pub n_max: usize,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub dump_density: bool,
    #[serde(skip)]
    pub omit_timing: bool,
}

fn serialize_alphas<S: serde::Serializer>(alphas: &[Alpha], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(alphas.len()))?;
    for a in alphas {
        seq.serialize_element(&[crate::report::round12(a.0.re), crate::report::round12(a.0.im)])?;
    }
    seq.end()
}

impl RunConfig {
    pub fn from_args(kind: CommandKind, args: CommonArgs) -> Result<Self, String> {
        let default = match kind {
            CommandKind::Coherent => DEFAULT_LADDER_POINTS,
            CommandKind::Spectrum | CommandKind::VerifyAll => DEFAULT_POINTS,
        };
        let n_points = args.grid.map_or(args.n_points.unwrap_or(default), |g| g.n_points);
        if n_points.is_multiple_of(2) {
            return Err(format!("n_points must be odd for Simpson quadrature, got {n_points}"));
        }
        if n_points < pdm_coherent::numerics::MIN_POINTS {
            return Err(format!(
                "n_points must be at least {}",
                pdm_coherent::numerics::MIN_POINTS
            ));
        }
        if let Some(g) = args.grid {
            if !(g.x_min.is_finite() && g.x_max.is_finite() && g.x_min < g.x_max) {
                return Err(format!("grid needs finite xmin < xmax, got {}:{}", g.x_min, g.x_max));
            }
        }
        if !args.gamma.is_finite() {
            return Err("gamma must be finite".into());
        }
        if args.alphas.iter().any(|a| !(a.0.re.is_finite() && a.0.im.is_finite())) {
            return Err("alpha components must be finite".into());
        }
        if kind == CommandKind::Coherent && args.alphas.is_empty() {
            return Err("coherent needs at least one --alpha re,im".into());
        }
        if args.n_max == 0 || args.n_max > pdm_coherent::pct::MAX_HERMITE_DEGREE {
            return Err(format!(
                "--n-max must lie in 1..={}",
                pdm_coherent::pct::MAX_HERMITE_DEGREE
            ));
        }
        if kind == CommandKind::Spectrum && args.k == 0 {
            return Err("--k must be positive".into());
        }
        if args.dump_density && (kind != CommandKind::Coherent || args.format != Format::Csv) {
            return Err("--dump-density needs the coherent command with --format csv".into());
        }
        Ok(RunConfig {
            reference: args.reference,
            profile: args.profile,
            gamma: args.gamma,
            grid: args.grid,
            n_points,
            k: args.k,
            alphas: args.alphas,
            n_max: args.n_max,
            format: args.format,
            out: args.out,
            dump_density: args.dump_density,
            omit_timing: args.omit_timing,
        })
    }
}
