//! Exactly solvable PDM problems obtained from constant-mass reference
//! oscillators by the point canonical transformation `y = f(x)`,
//! `ψ̃ₙ(x) = m^{1/4} ψₙ(f(x))`, `Ẽₙ = Eₙ`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::mass::MassProfile;
use crate::numerics::{normalize, Grid, GridFunction};
use crate::scalar::{re, Real};

/// Largest Hermite degree evaluated.
pub const MAX_HERMITE_DEGREE: usize = 60;

/// Value of `|f|` at which [`working_grid`] truncates the domain; the
/// Gaussian envelope is ~1e-31 there.
pub const EDGE_MAPPING: f64 = 12.0;

/// Smallest `|f|` at the grid edge accepted by [`working_grid`]; there the
/// harmonic ground-state density is below `e^{-64}`.
pub const MIN_MAPPED_REACH: f64 = 8.0;

/// Physicists' Hermite polynomial `Hₙ(y)` by the three-term recurrence.
pub fn hermite_eval<T: Real>(n: usize, y: T) -> Result<T> {
    if n > MAX_HERMITE_DEGREE {
        return Err(Error::InvalidArgument(format!(
            "Hermite degree {n} exceeds {MAX_HERMITE_DEGREE}"
        )));
    }
    let two = T::lit(2.0);
    let (mut prev, mut cur) = (T::one(), two * y);
    if n == 0 {
        return Ok(prev);
    }
    for k in 1..n {
        let next = two * y * cur - two * T::from_index(k) * prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Normalized Hermite functions `N_k H_k(y) e^{-y²/2}` for `k = 0..=n_max`,
/// via the stable recurrence on the normalized functions themselves.
fn hermite_functions<T: Real>(n_max: usize, y: T) -> Vec<T> {
    let mut out = Vec::with_capacity(n_max + 1);
    let psi0 = T::PI().powf(T::lit(-0.25)) * (-y * y / T::lit(2.0)).exp();
    out.push(psi0);
    if n_max >= 1 {
        out.push(T::lit(2.0).sqrt() * y * psi0);
    }
    for k in 1..n_max {
        let kk = T::from_index(k);
        let a = (T::lit(2.0) / (kk + T::one())).sqrt();
        let b = (kk / (kk + T::one())).sqrt();
        let next = a * y * out[k] - b * out[k - 1];
        out.push(next);
    }
    out
}

/// Constant-mass problem the PDM problem is mapped from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReferenceOscillator {
    /// `V = y²/2`, `Eₙ = n + 1/2`.
    Harmonic,
    /// `V = ½(y² + 8(2y²−1)/(1+2y²)²)`, `Eₙ = n − 3/2` for `n = 0, 3, 4, …`.
    CarinenaNonlinear,
}

impl ReferenceOscillator {
    pub fn name(self) -> &'static str {
        match self {
            ReferenceOscillator::Harmonic => "harmonic",
            ReferenceOscillator::CarinenaNonlinear => "nonlinear",
        }
    }

    pub fn potential<T: Real>(self, y: T) -> T {
        let half = T::lit(0.5);
        match self {
            ReferenceOscillator::Harmonic => half * y * y,
            ReferenceOscillator::CarinenaNonlinear => {
                let q = T::one() + T::lit(2.0) * y * y;
                half * (y * y + T::lit(8.0) * (T::lit(2.0) * y * y - T::one()) / (q * q))
            }
        }
    }

    /// Whether `n` labels a bound state.
    pub fn supports(self, n: usize) -> bool {
        match self {
            ReferenceOscillator::Harmonic => true,
            ReferenceOscillator::CarinenaNonlinear => n != 1 && n != 2,
        }
    }

    pub fn energy<T: Real>(self, n: usize) -> Result<T> {
        if !self.supports(n) {
            return Err(Error::UnsupportedQuantumNumber {
                n,
                reference: self.name(),
            });
        }
        let nn = T::from_index(n);
        Ok(match self {
            ReferenceOscillator::Harmonic => nn + T::lit(0.5),
            ReferenceOscillator::CarinenaNonlinear => nn - T::lit(1.5),
        })
    }

    /// Quantum number of the `k`-th level counted from the ground state.
    pub fn level(self, k: usize) -> usize {
        match self {
            ReferenceOscillator::Harmonic => k,
            ReferenceOscillator::CarinenaNonlinear if k == 0 => 0,
            ReferenceOscillator::CarinenaNonlinear => k + 2,
        }
    }

    pub fn ground_energy<T: Real>(self) -> T {
        self.energy(0).expect("ground state always exists")
    }

    /// Whether `ψₙ` has a closed form implemented here.
    pub fn has_closed_form(self, n: usize) -> bool {
        match self {
            ReferenceOscillator::Harmonic => n <= MAX_HERMITE_DEGREE,
            ReferenceOscillator::CarinenaNonlinear => n == 0,
        }
    }

    /// Normalized reference eigenfunction `ψₙ(y)`.
    pub fn psi<T: Real>(self, n: usize, y: T) -> Result<T> {
        self.check_closed_form(n)?;
        Ok(match self {
            ReferenceOscillator::Harmonic => hermite_functions(n, y)[n],
            ReferenceOscillator::CarinenaNonlinear => self.log_ground(y).exp(),
        })
    }

    /// `ln ψ₀(y)`, finite far beyond where `ψ₀` itself underflows.
    pub fn log_ground<T: Real>(self, y: T) -> T {
        let gauss = -y * y / T::lit(2.0);
        match self {
            ReferenceOscillator::Harmonic => gauss - T::PI().ln() / T::lit(4.0),
            ReferenceOscillator::CarinenaNonlinear => {
                // N₀² = 2/√π
                let log_norm = (T::lit(2.0).ln() - T::PI().ln() / T::lit(2.0)) / T::lit(2.0);
                log_norm + gauss - (T::one() + T::lit(2.0) * y * y).ln()
            }
        }
    }

    fn check_closed_form(self, n: usize) -> Result<()> {
        if !self.supports(n) {
            return Err(Error::UnsupportedQuantumNumber {
                n,
                reference: self.name(),
            });
        }
        if !self.has_closed_form(n) {
            return Err(match self {
                ReferenceOscillator::Harmonic => {
                    Error::InvalidArgument(format!("Hermite degree {n} exceeds {MAX_HERMITE_DEGREE}"))
                }
                ReferenceOscillator::CarinenaNonlinear => Error::UnsupportedQuantumNumber {
                    n,
                    reference: self.name(),
                },
            });
        }
        Ok(())
    }
}

impl fmt::Display for ReferenceOscillator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ReferenceOscillator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "harmonic" => Ok(ReferenceOscillator::Harmonic),
            "nonlinear" | "carinena" => Ok(ReferenceOscillator::CarinenaNonlinear),
            other => Err(Error::InvalidArgument(format!("unknown reference {other:?}"))),
        }
    }
}

/// A PDM Hamiltonian `−½ d/dx (1/m) d/dx + Ṽ` built from a mass profile and a
/// reference oscillator.
#[derive(Debug, Clone)]
pub struct PdmProblem<T> {
    pub profile: MassProfile<T>,
    pub reference: ReferenceOscillator,
}

impl<T: Real> PdmProblem<T> {
    pub fn new(profile: MassProfile<T>, reference: ReferenceOscillator) -> Self {
        Self { profile, reference }
    }

    /// `(1/8m)[m''/m − (7/4)(m'/m)²]`.
    pub fn mass_correction(&self, x: T) -> T {
        let p = &self.profile;
        let m = p.mass(x);
        let r1 = p.mass_d1(x) / m;
        let r2 = p.mass_d2(x) / m;
        (r2 - T::lit(1.75) * r1 * r1) / (T::lit(8.0) * m)
    }

    /// `Ṽ(x) = V(f(x)) + (1/8m)[m''/m − (7/4)(m'/m)²]`.
    pub fn effective_potential_at(&self, x: T) -> T {
        self.reference.potential(self.profile.mapping(x)) + self.mass_correction(x)
    }

    pub fn energy(&self, n: usize) -> Result<T> {
        self.reference.energy(n)
    }

    pub fn ground_energy(&self) -> T {
        self.reference.ground_energy()
    }

    /// `ln ψ̃₀(x) = ¼ ln m + ln ψ₀(f(x))`.
    pub fn log_ground(&self, x: T) -> T {
        self.profile.mass(x).ln() / T::lit(4.0) + self.reference.log_ground(self.profile.mapping(x))
    }
}

/// Samples the effective potential.
pub fn effective_potential<T: Real>(problem: &PdmProblem<T>, grid: &Grid<T>) -> Result<GridFunction<T>> {
    GridFunction::from_real_fn(*grid, |x| problem.effective_potential_at(x))
}

/// `m^{1/4} ψₙ(f(x))` with the reference normalization constant, before any
/// quadrature rescale.
pub fn pdm_eigenfunction_raw<T: Real>(problem: &PdmProblem<T>, n: usize, grid: &Grid<T>) -> Result<GridFunction<T>> {
    problem.reference.check_closed_form(n)?;
    let p = &problem.profile;
    match problem.reference {
        ReferenceOscillator::Harmonic => GridFunction::from_real_fn(*grid, |x| {
            p.mass(x).powf(T::lit(0.25)) * hermite_functions(n, p.mapping(x))[n]
        }),
        ReferenceOscillator::CarinenaNonlinear => GridFunction::from_real_fn(*grid, |x| problem.log_ground(x).exp()),
    }
}

/// Normalized PDM eigenfunction `ψ̃ₙ`.
pub fn pdm_eigenfunction<T: Real>(problem: &PdmProblem<T>, n: usize, grid: &Grid<T>) -> Result<GridFunction<T>> {
    Ok(normalize(&pdm_eigenfunction_raw(problem, n, grid)?)?.0)
}

/// `ψ̃₀, …, ψ̃_{n_max}` of a harmonic-reference problem in one recurrence
/// sweep, each rescaled to unit quadrature norm.
pub fn harmonic_eigenbasis<T: Real>(
    problem: &PdmProblem<T>,
    n_max: usize,
    grid: &Grid<T>,
) -> Result<Vec<GridFunction<T>>> {
    if problem.reference != ReferenceOscillator::Harmonic {
        return Err(Error::Unsupported(
            "closed-form eigenbasis only exists for the harmonic reference".into(),
        ));
    }
    if n_max > MAX_HERMITE_DEGREE {
        return Err(Error::InvalidArgument(format!(
            "n_max {n_max} exceeds {MAX_HERMITE_DEGREE}"
        )));
    }
    let p = &problem.profile;
    let mut columns = vec![Vec::with_capacity(grid.len()); n_max + 1];
    for x in grid.nodes() {
        let w = p.mass(x).powf(T::lit(0.25));
        for (k, v) in hermite_functions(n_max, p.mapping(x)).into_iter().enumerate() {
            columns[k].push(re(w * v));
        }
    }
    columns
        .into_iter()
        .map(|c| Ok(normalize(&GridFunction::new(*grid, c)?)?.0))
        .collect()
}

/// Energy `Ẽₙ`, independent of the mass profile.
pub fn pdm_energy<T: Real>(problem: &PdmProblem<T>, n: usize) -> Result<T> {
    problem.energy(n)
}

/// Symmetric grid sized to the problem: half-width `10·max(1, 1/min √m)`,
/// cut down to where `|f| = 12` when the mapping grows faster than that.
pub fn working_grid<T: Real>(problem: &PdmProblem<T>, n_points: usize) -> Result<Grid<T>> {
    let p = &problem.profile;
    let ten = T::lit(10.0);
    let min_root = match p.global_min_mass() {
        Some(m) => m.sqrt(),
        None => {
            let probe = Grid::new(-ten, ten, 2001)?;
            probe.nodes().map(|x| p.sqrt_mass(x)).fold(T::infinity(), T::min)
        }
    };
    if !(min_root > T::zero()) {
        return Err(Error::Domain("mass must be positive to size a grid".into()));
    }
    let mut half = ten * T::one().max(T::one() / min_root);
    let edge = T::lit(EDGE_MAPPING);
    if p.mapping(half) > edge && -p.mapping(-half) > edge {
        half = p.inverse_mapping(edge).max(-p.inverse_mapping(-edge));
    }
    // Mappings with finite range never let the ground state decay.
    let reach = p.mapping(half).min(-p.mapping(-half));
    if !(reach >= T::lit(MIN_MAPPED_REACH)) {
        return Err(Error::DomainTooSmall(format!(
            "mapping only reaches {reach} at x = ±{half}; profiles whose f has finite range are not supported"
        )));
    }
    Grid::symmetric(half, n_points)
}

/// Example-specific closed forms of the mass-correction term, written out
/// independently of [`PdmProblem::mass_correction`] for cross-checking.
pub mod closed_form {
    use crate::scalar::Real;

    /// Rational mass: `(γ−1)(3x⁴ + 2(2−γ)x² − γ) / (2(γ+x²)⁴)`.
    pub fn case1_correction<T: Real>(gamma: T, x: T) -> T {
        let x2 = x * x;
        let q = gamma + x2;
        (gamma - T::one()) * (T::lit(3.0) * x2 * x2 + T::lit(2.0) * (T::lit(2.0) - gamma) * x2 - gamma)
            / (T::lit(2.0) * q * q * q * q)
    }

    /// Hyperbolic mass: `(γ²/16) sech⁴(γx) [7 − 3 cosh(2γx)]`.
    pub fn case2_correction<T: Real>(gamma: T, x: T) -> T {
        let sech = T::one() / (gamma * x).cosh();
        let s2 = sech * sech;
        gamma * gamma / T::lit(16.0) * s2 * s2 * (T::lit(7.0) - T::lit(3.0) * (T::lit(2.0) * gamma * x).cosh())
    }
}
