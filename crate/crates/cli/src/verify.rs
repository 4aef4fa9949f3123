//! The full verification suite behind `verify-all`.
//!
//! Spectra use the fixed box `[−10, 10]` with the configured node count.
//! Ladder and coherent-state checks use the problem-sized working grid at
//! twice that resolution, since the stiffest ground state (nonlinear
//! reference, Case 1 γ = 2) only clears 1e-6 annihilation there.

use pdm_coherent::coherent::{analyze, make_coherent, perelomov_series, phase_aligned_sup_distance};
use pdm_coherent::ladder::{
    annihilation_residual, commutator_residual, factorization_residual, second_solution, second_solution_residual,
};
use pdm_coherent::numerics::normalize;
use pdm_coherent::pct::{pdm_eigenfunction, working_grid};
use pdm_coherent::{
    build_ladder, Complex64, Grid64, GridFunction64, LadderSystem64, MassProfile, PdmProblem64, ProfileKind,
    ReferenceOscillator,
};

use crate::commands::{analysis_checks, spectrum_checks, SPECTRUM_HALF_WIDTH};
use crate::config::RunConfig;
use crate::report::Check;
use crate::Failure;

pub const ANNIHILATION_TOL: f64 = 1e-6;
pub const FACTORIZATION_TOL: f64 = 1e-4;
pub const PERELOMOV_TOL: f64 = 1e-6;
pub const REDUCTION_TOL: f64 = 1e-8;
pub const SECOND_SOLUTION_TOL: f64 = 1e-4;
pub const COMMUTATOR_TOL: f64 = 1e-4;

pub const SETTINGS: [(ProfileKind, f64); 5] = [
    (ProfileKind::Constant, 0.0),
    (ProfileKind::Case1, 0.5),
    (ProfileKind::Case1, 2.0),
    (ProfileKind::Case2, 0.25),
    (ProfileKind::Case2, 1.0),
];
pub const REFERENCES: [ReferenceOscillator; 2] =
    [ReferenceOscillator::Harmonic, ReferenceOscillator::CarinenaNonlinear];

fn pdm(kind: ProfileKind, gamma: f64, r: ReferenceOscillator) -> PdmProblem64 {
    PdmProblem64::new(MassProfile::new(kind, gamma).expect("suite settings are valid"), r)
}

fn label(kind: ProfileKind, gamma: f64, r: ReferenceOscillator) -> String {
    let r = match r {
        ReferenceOscillator::Harmonic => "harmonic",
        ReferenceOscillator::CarinenaNonlinear => "nonlinear",
    };
    match kind {
        ProfileKind::Constant => format!("{r}.constant"),
        _ => format!("{r}.{kind}({gamma:?})"),
    }
}

/// Normalized Gaussian centred at `c`.
fn bump(grid: Grid64, c: f64, w: f64) -> pdm_coherent::Result<GridFunction64> {
    let g = GridFunction64::from_real_fn(grid, |x| (-(x - c).powi(2) / (2.0 * w * w)).exp())?;
    Ok(normalize(&g)?.0)
}

struct Setting {
    name: String,
    ls: LadderSystem64,
    grid: Grid64,
}

fn settings(n: usize) -> pdm_coherent::Result<Vec<Setting>> {
    let mut out = Vec::new();
    for r in REFERENCES {
        for (kind, gamma) in SETTINGS {
            let p = pdm(kind, gamma, r);
            out.push(Setting {
                name: label(kind, gamma, r),
                grid: working_grid(&p, n)?,
                ls: build_ladder(&p)?,
            });
        }
    }
    Ok(out)
}

fn or_fail(name: String, tol: f64, r: pdm_coherent::Result<Check>) -> Check {
    r.unwrap_or_else(|e| Check::failed(name, tol, e))
}

pub fn cmd_verify_all(config: &RunConfig) -> Result<Vec<Check>, Failure> {
    let n = config.n_points;
    let box_grid = Grid64::symmetric(SPECTRUM_HALF_WIDTH, n).map_err(|e| Failure::Usage(e.to_string()))?;
    let fine = 2 * n - 1;
    let mut checks = Vec::new();

    for (kind, gamma) in [
        (ProfileKind::Constant, 0.0),
        (ProfileKind::Case1, 2.0),
        (ProfileKind::Case2, 0.75),
    ] {
        let r = ReferenceOscillator::Harmonic;
        let prefix = format!("c01.spectrum.{}.", label(kind, gamma, r));
        checks.extend(spectrum_checks(&prefix, &pdm(kind, gamma, r), &box_grid, 5));
    }
    for (kind, gamma) in [(ProfileKind::Constant, 0.0), (ProfileKind::Case1, 2.0)] {
        let r = ReferenceOscillator::CarinenaNonlinear;
        let prefix = format!("c02.spectrum.{}.", label(kind, gamma, r));
        checks.extend(spectrum_checks(&prefix, &pdm(kind, gamma, r), &box_grid, 4));
    }

    let all = settings(fine).map_err(|e| Failure::Usage(e.to_string()))?;

    for s in &all {
        let name = format!("c03.annihilation.{}", s.name);
        let r = pdm_eigenfunction(s.ls.problem(), 0, &s.grid)
            .and_then(|u| annihilation_residual(&s.ls, &u))
            .map(|v| Check::below(name.clone(), "residual", v, ANNIHILATION_TOL));
        checks.push(or_fail(name, ANNIHILATION_TOL, r));
    }

    for s in &all {
        let mut states = vec![("ground", pdm_eigenfunction(s.ls.problem(), 0, &s.grid))];
        if s.ls.problem().reference == ReferenceOscillator::Harmonic {
            states.push(("level2", pdm_eigenfunction(s.ls.problem(), 2, &s.grid)));
        }
        states.push(("bump", bump(s.grid, 0.3, 0.8)));
        for (tag, g) in states {
            let name = format!("c04.factorization.{}.{tag}", s.name);
            let r = g
                .and_then(|g| factorization_residual(&s.ls, &g))
                .map(|v| Check::below(name.clone(), "residual", v, FACTORIZATION_TOL));
            checks.push(or_fail(name, FACTORIZATION_TOL, r));
        }
    }

    // Criteria 5, 6 and 7 share one analysis per (setting, α).
    let alphas = [
        Complex64::new(0.3, 0.0),
        Complex64::new(0.0, 0.4),
        Complex64::new(0.3, 0.2),
    ];
    for s in &all {
        let reference = s.ls.problem().reference;
        for (i, &alpha) in alphas.iter().enumerate() {
            let prefix = format!("c05-07.coherent.{}[{i}].", s.name);
            match analyze(&s.ls, alpha, &s.grid, 0) {
                Ok(a) => checks.extend(
                    analysis_checks(&prefix, reference, &a)
                        .into_iter()
                        .filter(|c| !c.name.contains("displacement") && !c.name.contains("shift")),
                ),
                Err(e) => checks.push(Check::failed(format!("{prefix}construct"), 0.0, e)),
            }
        }
    }

    checks.push(perelomov_check(fine));
    checks.extend(reduction_checks(fine));

    for (kind, gamma) in [(ProfileKind::Constant, 0.0), (ProfileKind::Case2, 0.5)] {
        let r = ReferenceOscillator::Harmonic;
        let name = format!("c10.second_solution.{}", label(kind, gamma, r));
        let p = pdm(kind, gamma, r);
        let res = (|| {
            let ls = build_ladder(&p)?;
            let grid = working_grid(&p, fine)?;
            let u = pdm_eigenfunction(&p, 0, &grid)?;
            let sol = second_solution(&u, &p.profile)?;
            let (v, c) = second_solution_residual(&ls, &sol)?;
            Ok(Check::below(name.clone(), "relative_residual", v, SECOND_SOLUTION_TOL)
                .with("scale_re", c.re)
                .with("scale_im", c.im))
        })();
        checks.push(or_fail(name, SECOND_SOLUTION_TOL, res));
    }

    for s in &all {
        for c in [-0.5, 0.0, 0.5] {
            let name = format!("c11.commutator.{}.bump({c})", s.name);
            let r = bump(s.grid, c, 0.8)
                .and_then(|g| commutator_residual(&s.ls, &g))
                .map(|v| Check::below(name.clone(), "residual", v, COMMUTATOR_TOL));
            checks.push(or_fail(name, COMMUTATOR_TOL, r));
        }
    }
    Ok(checks)
}

/// Series against closed form for harmonic Case 1 γ = 2, α = 0.8.
fn perelomov_check(n: usize) -> Check {
    let name = "c08.perelomov.harmonic.case1(2)".to_string();
    let res = (|| {
        let p = pdm(ProfileKind::Case1, 2.0, ReferenceOscillator::Harmonic);
        let ls = build_ladder(&p)?;
        let grid = working_grid(&p, n)?;
        let alpha = Complex64::new(0.8, 0.0);
        let closed = make_coherent(&ls, alpha, &grid)?;
        let mut gaps = Vec::new();
        for n_max in [10, 20, 40] {
            let series = perelomov_series(&p, alpha, n_max, &grid)?;
            gaps.push(phase_aligned_sup_distance(&series, &closed.state)?);
        }
        let monotone = gaps.windows(2).all(|w| w[1] < w[0]);
        Ok(
            Check::new(name.clone(), PERELOMOV_TOL, monotone && gaps[2] < PERELOMOV_TOL)
                .with("gap_n10", gaps[0])
                .with("gap_n20", gaps[1])
                .with("gap_n40", gaps[2]),
        )
    })();
    or_fail(name, PERELOMOV_TOL, res)
}

/// γ-limits that must reproduce the constant-mass state at α = 0.5.
fn reduction_checks(n: usize) -> Vec<Check> {
    let alpha = Complex64::new(0.5, 0.0);
    let mut out = Vec::new();
    for r in REFERENCES {
        let base = pdm(ProfileKind::Constant, 0.0, r);
        for (kind, gamma) in [(ProfileKind::Case1, 1.0), (ProfileKind::Case2, 1e-8)] {
            let name = format!("c09.reduction.{}", label(kind, gamma, r));
            let res = (|| {
                let grid = working_grid(&base, n)?;
                let a = make_coherent(&build_ladder(&base)?, alpha, &grid)?;
                let b = make_coherent(&build_ladder(&pdm(kind, gamma, r))?, alpha, &grid)?;
                Ok(Check::below(
                    name.clone(),
                    "sup_gap",
                    b.state.sup_distance(&a.state)?,
                    REDUCTION_TOL,
                ))
            })();
            out.push(or_fail(name, REDUCTION_TOL, res));
        }
    }
    out
}
