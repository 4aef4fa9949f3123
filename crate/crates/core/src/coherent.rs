//! Coherent states `|α⟩ ∝ ψ̃₀ e^{√2 α f}`, their uncertainty budget, and the
//! displacement-operator (series) construction.

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ladder::{apply_a, apply_a_dagger, apply_pi, LadderSystem};
use crate::numerics::{inner_product, l2_norm, normalize, Grid, GridFunction};
use crate::pct::{harmonic_eigenbasis, pdm_eigenfunction, PdmProblem, MAX_HERMITE_DEGREE};
use crate::scalar::{re, Cplx, Real};

/// Gaussian envelope margin required between the displaced centre and the
/// grid edge, in units of the mapping.
const ENVELOPE_MARGIN: f64 = 4.0;

/// A normalized coherent state on a grid.
#[derive(Debug, Clone)]
pub struct CoherentState<T> {
    pub alpha: Cplx<T>,
    pub state: GridFunction<T>,
    /// Factor applied to `ψ̃₀ e^{√2 α f}` to reach unit quadrature norm.
    pub norm_constant: T,
}

fn check_envelope<T: Real>(ls: &LadderSystem<T>, alpha: Cplx<T>, grid: &Grid<T>) -> Result<()> {
    let p = ls.profile();
    let reach = p.mapping(grid.x_max()).min(-p.mapping(grid.x_min()));
    let shift = T::SQRT_2() * alpha.re.abs();
    if shift < reach - T::lit(ENVELOPE_MARGIN) {
        Ok(())
    } else {
        Err(Error::DomainTooSmall(format!(
            "√2|Re α| = {shift} does not fit inside mapped half-width {reach} minus margin {ENVELOPE_MARGIN}"
        )))
    }
}

/// Builds `|α⟩ = N ψ̃₀ e^{√2 α f}` and normalizes it by quadrature. The
/// exponent is accumulated in log space so that `e^{√2αf}` never overflows.
pub fn make_coherent<T: Real>(ls: &LadderSystem<T>, alpha: Cplx<T>, grid: &Grid<T>) -> Result<CoherentState<T>> {
    check_envelope(ls, alpha, grid)?;
    let problem = ls.problem();
    let shift = alpha * T::SQRT_2();
    let raw = GridFunction::from_fn(*grid, |x| {
        (re(problem.log_ground(x)) + shift * problem.profile.mapping(x)).exp()
    })?;
    let (state, norm) = normalize(&raw)?;
    Ok(CoherentState {
        alpha,
        state,
        norm_constant: T::one() / norm,
    })
}

/// `‖Â|α⟩ − α|α⟩‖₂ / max(|α|, 1)`.
pub fn eigenstate_residual<T: Real>(cs: &CoherentState<T>, ls: &LadderSystem<T>) -> Result<T> {
    let a = apply_a(ls, &cs.state)?;
    let alpha = cs.alpha;
    let diff = a.zip_with(&cs.state, |av, v| av - v * alpha)?;
    Ok(l2_norm(&diff)? / alpha.norm().max(T::one()))
}

/// Quadrature moments of `φ` and `Π` in a coherent state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UncertaintyReport<T> {
    pub mean_phi: T,
    pub mean_pi: T,
    pub var_phi: T,
    pub var_pi: T,
    pub product: T,
    /// `⟨φ'/√m⟩`.
    pub commutator_mean: T,
    /// `⟨φ'/√m⟩² / 4`.
    pub bound: T,
    /// `|product − bound|`.
    pub equality_gap: T,
}

impl<T: Real> UncertaintyReport<T> {
    pub fn relative_gap(&self) -> T {
        self.equality_gap / self.bound
    }
}

/// Means, variances and the commutator bound of `φ` and `Π`. `⟨Π²⟩` is taken
/// as `⟨Πs, Πs⟩`, which needs only first derivatives and stays nonnegative.
pub fn uncertainty_report<T: Real>(cs: &CoherentState<T>, ls: &LadderSystem<T>) -> Result<UncertaintyReport<T>> {
    let s = &cs.state;
    let phi_s = s.mul_fn(|x| ls.phi(x))?;
    let pi_s = apply_pi(ls, s)?;
    let mean_phi = inner_product(s, &phi_s)?.re;
    let mean_pi = inner_product(s, &pi_s)?.re;
    let phi2 = inner_product(&phi_s, &phi_s)?.re;
    let pi2 = inner_product(&pi_s, &pi_s)?.re;
    let var_phi = (phi2 - mean_phi * mean_phi).max(T::zero());
    let var_pi = (pi2 - mean_pi * mean_pi).max(T::zero());
    let weighted = s.mul_fn(|x| ls.commutator_weight(x))?;
    let commutator_mean = inner_product(s, &weighted)?.re;
    let product = var_phi * var_pi;
    let bound = commutator_mean * commutator_mean / T::lit(4.0);
    Ok(UncertaintyReport {
        mean_phi,
        mean_pi,
        var_phi,
        var_pi,
        product,
        commutator_mean,
        bound,
        equality_gap: (product - bound).abs(),
    })
}

/// `e^{−|α|²/2} αⁿ / √(n!)`, evaluated in log space.
pub fn perelomov_coefficient<T: Real>(alpha: Cplx<T>, n: usize) -> Cplx<T> {
    let r = alpha.norm();
    let half = T::lit(0.5);
    if r == T::zero() {
        return if n == 0 { re(T::one()) } else { re(T::zero()) };
    }
    let log_fact: T = (1..=n).map(|k| T::from_index(k).ln()).fold(T::zero(), |a, b| a + b);
    let log_mag = -half * r * r + T::from_index(n) * r.ln() - half * log_fact;
    Complex::from_polar(log_mag.exp(), T::from_index(n) * alpha.arg())
}

/// Truncated expansion `e^{−|α|²/2} Σ_{n ≤ n_max} αⁿ/√(n!) ψ̃ₙ`; harmonic
/// reference only.
pub fn perelomov_series<T: Real>(
    problem: &PdmProblem<T>,
    alpha: Cplx<T>,
    n_max: usize,
    grid: &Grid<T>,
) -> Result<GridFunction<T>> {
    if n_max > MAX_HERMITE_DEGREE {
        return Err(Error::InvalidArgument(format!(
            "n_max {n_max} exceeds {MAX_HERMITE_DEGREE}"
        )));
    }
    let basis = harmonic_eigenbasis(problem, n_max, grid)?;
    let mut acc = vec![re(T::zero()); grid.len()];
    for (n, psi) in basis.iter().enumerate() {
        let c = perelomov_coefficient(alpha, n);
        for (a, v) in acc.iter_mut().zip(psi.values()) {
            *a = *a + *v * c;
        }
    }
    GridFunction::new(*grid, acc)
}

/// `sup |e^{−iθ} a − b|` with the global phase `θ = arg⟨b, a⟩` removed.
pub fn phase_aligned_sup_distance<T: Real>(a: &GridFunction<T>, b: &GridFunction<T>) -> Result<T> {
    let overlap = inner_product(b, a)?;
    let phase = if overlap.norm() > T::zero() {
        (overlap / overlap.norm()).conj()
    } else {
        re(T::one())
    };
    a.scale(phase).sup_distance(b)
}

/// Results of the displacement-operator checks for one `α`.
#[derive(Debug, Clone, PartialEq)]
pub struct DisplacementReport<T> {
    pub alpha: Cplx<T>,
    /// Set for purely imaginary `α`: `e^{√2αf}` is a pure phase.
    pub unitary: Option<UnitaryBranch<T>>,
    /// `sup |normalize(e^{√2αf} ψ̃₀) − make_coherent(α)|`.
    pub renormalized_gap: T,
    /// `‖[h, Â] ψ̃₀ − iα ψ̃₀‖` with `h = −i√2 α f`.
    pub annihilator_shift_residual: T,
    /// `‖[h, Â†] ψ̃₀ − iα* ψ̃₀‖`; zero only for imaginary `α`.
    pub creator_shift_residual: T,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitaryBranch<T> {
    /// `|‖e^{√2αf} ψ̃₀‖ − 1|` without renormalization.
    pub norm_error: T,
    pub eigen_residual: T,
}

/// Multiplies by `e^{√2αf}` keeping exact zeros (tails where `ψ̃₀`
/// underflowed) at zero.
fn displace<T: Real>(ls: &LadderSystem<T>, alpha: Cplx<T>, g: &GridFunction<T>) -> Result<GridFunction<T>> {
    let shift = alpha * T::SQRT_2();
    g.map(|x, v| {
        if v == re(T::zero()) {
            v
        } else {
            v * (shift * ls.profile().mapping(x)).exp()
        }
    })
}

pub fn displacement_check<T: Real>(
    ls: &LadderSystem<T>,
    alpha: Cplx<T>,
    grid: &Grid<T>,
) -> Result<DisplacementReport<T>> {
    let ground = pdm_eigenfunction(ls.problem(), 0, grid)?;
    let moved = displace(ls, alpha, &ground)?;
    let imaginary = alpha.re.abs() <= T::epsilon() * alpha.norm();
    let unitary = if imaginary {
        let norm_error = (l2_norm(&moved)? - T::one()).abs();
        let cs = CoherentState {
            alpha,
            state: moved.clone(),
            norm_constant: T::one(),
        };
        Some(UnitaryBranch {
            norm_error,
            eigen_residual: eigenstate_residual(&cs, ls)?,
        })
    } else {
        None
    };
    let closed = make_coherent(ls, alpha, grid)?;
    let renormalized_gap = normalize(&moved)?.0.sup_distance(&closed.state)?;

    // h = −i√2 α f acts by multiplication.
    let h_coef = Complex::new(T::zero(), -T::one()) * alpha * T::SQRT_2();
    let h = |g: &GridFunction<T>| g.map(|x, v| v * h_coef * ls.profile().mapping(x));
    let i = Complex::new(T::zero(), T::one());
    let comm_a = (&h(&apply_a(ls, &ground)?)? - &apply_a(ls, &h(&ground)?)?)?;
    let comm_ad = (&h(&apply_a_dagger(ls, &ground)?)? - &apply_a_dagger(ls, &h(&ground)?)?)?;
    let annihilator_shift_residual = l2_norm(&(&comm_a - &ground.scale(i * alpha))?)?;
    let creator_shift_residual = l2_norm(&(&comm_ad - &ground.scale(i * alpha.conj()))?)?;

    Ok(DisplacementReport {
        alpha,
        unitary,
        renormalized_gap,
        annihilator_shift_residual,
        creator_shift_residual,
    })
}

/// Every coherent-state diagnostic for one `α`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoherentAnalysis<T> {
    pub alpha: Cplx<T>,
    pub eigen_residual: T,
    pub uncertainty: UncertaintyReport<T>,
    /// Phase-aligned sup gap to the series at `n_max` (harmonic only).
    pub perelomov_gap: Option<T>,
    pub displacement: DisplacementReport<T>,
    /// `|⟨x|α⟩|²` at the grid nodes.
    pub density: Vec<T>,
}

pub fn analyze<T: Real>(
    ls: &LadderSystem<T>,
    alpha: Cplx<T>,
    grid: &Grid<T>,
    n_max: usize,
) -> Result<CoherentAnalysis<T>> {
    let cs = make_coherent(ls, alpha, grid)?;
    let eigen_residual = eigenstate_residual(&cs, ls)?;
    let uncertainty = uncertainty_report(&cs, ls)?;
    let perelomov_gap = if ls.problem().reference.has_closed_form(n_max) && n_max > 0 {
        let series = perelomov_series(ls.problem(), alpha, n_max, grid)?;
        Some(phase_aligned_sup_distance(&series, &cs.state)?)
    } else {
        None
    };
    let displacement = displacement_check(ls, alpha, grid)?;
    Ok(CoherentAnalysis {
        alpha,
        eigen_residual,
        uncertainty,
        perelomov_gap,
        displacement,
        density: cs.state.abs_sqr(),
    })
}

/// [`analyze`] over many `α` in parallel; results keep input order and are
/// bitwise identical to a sequential loop.
pub fn sweep<T: Real>(
    ls: &LadderSystem<T>,
    alphas: &[Cplx<T>],
    grid: &Grid<T>,
    n_max: usize,
) -> Vec<Result<CoherentAnalysis<T>>> {
    alphas.par_iter().map(|&a| analyze(ls, a, grid, n_max)).collect()
}
