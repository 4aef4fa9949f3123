use pdm_coherent::coherent::{sweep, CoherentAnalysis};
use pdm_coherent::pct::working_grid;
use pdm_coherent::spectral::spectrum_report;
use pdm_coherent::{Complex64, Grid64, LadderSystem64, MassProfile, PdmProblem64, ReferenceOscillator};

use crate::config::{Alpha, RunConfig};
use crate::report::{fmt_csv, Check};
use crate::Failure;

pub const SPECTRUM_TOL: f64 = 1e-3;
pub const EIGEN_TOL: f64 = 1e-5;
pub const EQUALITY_TOL: f64 = 1e-6;
pub const HARMONIC_MIN_TOL: f64 = 1e-8;
pub const MOMENT_TOL: f64 = 1e-7;
pub const PERELOMOV_TOL: f64 = 1e-6;
pub const UNITARY_NORM_TOL: f64 = 1e-10;
pub const UNITARY_EIGEN_TOL: f64 = 1e-6;
pub const RENORMALIZED_TOL: f64 = 1e-12;
pub const SHIFT_TOL: f64 = 1e-4;

/// Half-width of the fixed spectrum box.
pub const SPECTRUM_HALF_WIDTH: f64 = 10.0;

pub fn problem(config: &RunConfig) -> Result<PdmProblem64, Failure> {
    let profile = MassProfile::new(config.profile.into(), config.gamma).map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(PdmProblem64::new(profile, config.reference.into()))
}

fn explicit_grid(config: &RunConfig) -> Result<Option<Grid64>, Failure> {
    config
        .grid
        .map(|g| Grid64::new(g.x_min, g.x_max, g.n_points))
        .transpose()
        .map_err(|e| Failure::Usage(e.to_string()))
}

/// Spectrum rows for `k` levels.
pub fn spectrum_checks(prefix: &str, problem: &PdmProblem64, grid: &Grid64, k: usize) -> Vec<Check> {
    match spectrum_report(problem, grid, k) {
        Ok(rows) => rows
            .iter()
            .map(|r| {
                Check::below(format!("{prefix}E{}", r.n), "gap", r.gap, SPECTRUM_TOL)
                    .with("analytic", r.analytic)
                    .with("discrete", r.discrete)
            })
            .collect(),
        Err(e) => vec![Check::failed(format!("{prefix}spectrum"), SPECTRUM_TOL, e)],
    }
}

pub fn cmd_spectrum(config: &RunConfig) -> Result<Vec<Check>, Failure> {
    let p = problem(config)?;
    let grid = match explicit_grid(config)? {
        Some(g) => g,
        None => Grid64::symmetric(SPECTRUM_HALF_WIDTH, config.n_points).map_err(|e| Failure::Usage(e.to_string()))?,
    };
    Ok(spectrum_checks("spectrum.", &p, &grid, config.k))
}

/// Every per-α check for one successful analysis.
pub fn analysis_checks(prefix: &str, reference: ReferenceOscillator, a: &CoherentAnalysis<f64>) -> Vec<Check> {
    let alpha = a.alpha;
    let u = &a.uncertainty;
    let mut out = vec![
        Check::below(format!("{prefix}eigenstate"), "residual", a.eigen_residual, EIGEN_TOL)
            .with("alpha_re", alpha.re)
            .with("alpha_im", alpha.im),
        Check::below(
            format!("{prefix}uncertainty_equality"),
            "relative_gap",
            u.relative_gap(),
            EQUALITY_TOL,
        )
        .with("var_phi", u.var_phi)
        .with("var_pi", u.var_pi)
        .with("product", u.product)
        .with("bound", u.bound)
        .with("commutator_mean", u.commutator_mean),
        Check::below(
            format!("{prefix}mean_phi"),
            "error",
            (u.mean_phi - std::f64::consts::SQRT_2 * alpha.re).abs(),
            MOMENT_TOL,
        )
        .with("mean_phi", u.mean_phi),
        Check::below(
            format!("{prefix}mean_pi"),
            "error",
            (u.mean_pi - std::f64::consts::SQRT_2 * alpha.im).abs(),
            MOMENT_TOL,
        )
        .with("mean_pi", u.mean_pi),
    ];
    if reference == ReferenceOscillator::Harmonic {
        let err = (u.var_phi - 0.5)
            .abs()
            .max((u.var_pi - 0.5).abs())
            .max((u.product - 0.25).abs());
        out.push(Check::below(
            format!("{prefix}harmonic_minimum"),
            "error",
            err,
            HARMONIC_MIN_TOL,
        ));
    }
    if let Some(gap) = a.perelomov_gap {
        out.push(Check::below(
            format!("{prefix}perelomov"),
            "sup_gap",
            gap,
            PERELOMOV_TOL,
        ));
    }
    let d = &a.displacement;
    out.push(Check::below(
        format!("{prefix}displacement_renormalized"),
        "sup_gap",
        d.renormalized_gap,
        RENORMALIZED_TOL,
    ));
    if let Some(unit) = &d.unitary {
        out.push(Check::below(
            format!("{prefix}displacement_unitary_norm"),
            "error",
            unit.norm_error,
            UNITARY_NORM_TOL,
        ));
        out.push(Check::below(
            format!("{prefix}displacement_unitary_eigenstate"),
            "residual",
            unit.eigen_residual,
            UNITARY_EIGEN_TOL,
        ));
        out.push(Check::below(
            format!("{prefix}creator_shift"),
            "residual",
            d.creator_shift_residual,
            SHIFT_TOL,
        ));
    }
    // [h, Â†] = iα* is only an identity for imaginary α; otherwise the
    // residual is reported next to the annihilator one without gating.
    let shift = Check::below(
        format!("{prefix}annihilator_shift"),
        "residual",
        d.annihilator_shift_residual,
        SHIFT_TOL,
    );
    out.push(if d.unitary.is_none() {
        shift.with("creator_shift_residual", d.creator_shift_residual)
    } else {
        shift
    });
    out
}

pub struct CoherentRun {
    pub grid: Grid64,
    pub checks: Vec<Check>,
    /// `|⟨x|α⟩|²` per α, `None` where construction failed.
    pub densities: Vec<Option<Vec<f64>>>,
}

pub fn run_sweep(prefix: &str, ls: &LadderSystem64, alphas: &[Complex64], grid: &Grid64, n_max: usize) -> CoherentRun {
    let reference = ls.problem().reference;
    let mut checks = Vec::new();
    let mut densities = Vec::new();
    for (i, res) in sweep(ls, alphas, grid, n_max).into_iter().enumerate() {
        let p = format!("{prefix}[{i}].");
        match res {
            Ok(a) => {
                checks.extend(analysis_checks(&p, reference, &a));
                densities.push(Some(a.density));
            }
            Err(e) => {
                checks.push(Check::failed(format!("{p}construct"), 0.0, e));
                densities.push(None);
            }
        }
    }
    CoherentRun {
        grid: *grid,
        checks,
        densities,
    }
}

pub fn cmd_coherent(config: &RunConfig) -> Result<CoherentRun, Failure> {
    let p = problem(config)?;
    let ls = pdm_coherent::build_ladder(&p).map_err(|e| Failure::Usage(e.to_string()))?;
    let grid = match explicit_grid(config)? {
        Some(g) => g,
        None => working_grid(&p, config.n_points).map_err(|e| Failure::Usage(e.to_string()))?,
    };
    let alphas: Vec<Complex64> = config.alphas.iter().map(|a: &Alpha| a.0).collect();
    Ok(run_sweep("coherent", &ls, &alphas, &grid, config.n_max))
}

/// `x,density_alpha0,...` with one row per node.
pub fn density_csv(run: &CoherentRun) -> String {
    let mut out = String::from("x");
    for i in 0..run.densities.len() {
        out += &format!(",density_alpha{i}");
    }
    out.push('\n');
    for (j, x) in run.grid.nodes().enumerate() {
        out += &fmt_csv(x);
        for d in &run.densities {
            out.push(',');
            if let Some(d) = d {
                out += &fmt_csv(d[j]);
            }
        }
        out.push('\n');
    }
    out
}
