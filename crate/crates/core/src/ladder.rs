//! Deformed ladder operators of a PDM problem.
//!
//! With `a = m^{-1/4}` and deformed superpotential `φ`,
//!
//! ```text
//! Â  = (1/√2) [ m^{-1/4} d/dx m^{-1/4} + φ ]
//! Â† = (1/√2) [ −m^{-1/4} d/dx m^{-1/4} + φ ]
//! Π  = −i m^{-1/4} d/dx m^{-1/4}
//! ```
//!
//! and `Â†Â = H − λ` with `λ = Ẽ₀`. All operators act through the expanded
//! product rule `m^{-1/4} (m^{-1/4} g)' = g'/√m − m'/(4m^{3/2}) g`, so only
//! one stencil is applied to `g`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::mass::MassProfile;
use crate::numerics::{cumulative_integral, derivative, inner_product, l2_norm, GridFunction};
use crate::pct::{PdmProblem, ReferenceOscillator};
use crate::scalar::{re, Cplx, Real};

/// Modulus below which a ground-state sample counts as a zero.
const HAZARD_MODULUS: f64 = 1e-300;
/// Relative modulus defining the trusted interval for the second solution.
pub const TRUSTED_FRACTION: f64 = 1e-6;

/// `K`, `φ`, `φ'` and `λ` of a problem, with analytic closed forms.
#[derive(Debug, Clone)]
pub struct LadderSystem<T> {
    problem: PdmProblem<T>,
    lambda: T,
}

/// Builds the ladder system from the closed-form ground state.
pub fn build_ladder<T: Real>(problem: &PdmProblem<T>) -> Result<LadderSystem<T>> {
    if !problem.reference.has_closed_form(0) {
        return Err(Error::Unsupported(format!(
            "{} reference has no closed-form ground state",
            problem.reference
        )));
    }
    Ok(LadderSystem {
        problem: problem.clone(),
        lambda: problem.ground_energy(),
    })
}

impl<T: Real> LadderSystem<T> {
    pub fn problem(&self) -> &PdmProblem<T> {
        &self.problem
    }

    pub fn profile(&self) -> &MassProfile<T> {
        &self.problem.profile
    }

    /// Factorization energy, equal to the ground energy.
    pub fn lambda(&self) -> T {
        self.lambda
    }

    /// `K = −u'/u` of the ground state.
    pub fn k(&self, x: T) -> T {
        let p = self.profile();
        let f = p.mapping(x);
        let df = p.sqrt_mass(x);
        let base = f * df - p.mass_d1(x) / (T::lit(4.0) * p.mass(x));
        match self.problem.reference {
            ReferenceOscillator::Harmonic => base,
            ReferenceOscillator::CarinenaNonlinear => base + T::lit(4.0) * f * df / (T::one() + T::lit(2.0) * f * f),
        }
    }

    /// Deformed superpotential `φ`.
    pub fn phi(&self, x: T) -> T {
        let f = self.profile().mapping(x);
        match self.problem.reference {
            ReferenceOscillator::Harmonic => f,
            ReferenceOscillator::CarinenaNonlinear => f + T::lit(4.0) * f / (T::one() + T::lit(2.0) * f * f),
        }
    }

    pub fn phi_prime(&self, x: T) -> T {
        let p = self.profile();
        let df = p.sqrt_mass(x);
        match self.problem.reference {
            ReferenceOscillator::Harmonic => df,
            ReferenceOscillator::CarinenaNonlinear => {
                let f = p.mapping(x);
                let q = T::one() + T::lit(2.0) * f * f;
                df * (T::one() + T::lit(4.0) * (T::one() - T::lit(2.0) * f * f) / (q * q))
            }
        }
    }

    /// `φ'/√m`, the multiplication operator equal to `[Â, Â†]`.
    pub fn commutator_weight(&self, x: T) -> T {
        match self.problem.reference {
            // φ = f and f' = √m
            ReferenceOscillator::Harmonic => T::one(),
            ReferenceOscillator::CarinenaNonlinear => self.phi_prime(x) / self.profile().sqrt_mass(x),
        }
    }

    /// `(1/√m, m'/(4m^{3/2}))` at every node.
    fn kinetic_coefficients(&self, g: &GridFunction<T>) -> Vec<(T, T)> {
        let p = self.profile();
        g.grid()
            .nodes()
            .map(|x| (T::one() / p.sqrt_mass(x), p.ordering_term(x)))
            .collect()
    }

    /// `m^{-1/4} (m^{-1/4} g)'` through the expanded product rule.
    fn deformed_derivative(&self, g: &GridFunction<T>) -> Result<GridFunction<T>> {
        let dg = derivative(g, 1)?;
        let coef = self.kinetic_coefficients(g);
        let values = g
            .values()
            .iter()
            .zip(dg.values())
            .zip(coef)
            .map(|((&v, &d), (w, t))| d * w - v * t)
            .collect();
        GridFunction::new(*g.grid(), values)
    }
}

fn sqrt_half<T: Real>() -> T {
    T::FRAC_1_SQRT_2()
}

/// `Â g`.
pub fn apply_a<T: Real>(ls: &LadderSystem<T>, g: &GridFunction<T>) -> Result<GridFunction<T>> {
    let d = ls.deformed_derivative(g)?;
    let s = sqrt_half::<T>();
    let values = d
        .values()
        .iter()
        .zip(g.values())
        .zip(g.grid().nodes())
        .map(|((&dv, &v), x)| (dv + v * ls.phi(x)) * s)
        .collect();
    GridFunction::new(*g.grid(), values)
}

/// `Â† g`.
pub fn apply_a_dagger<T: Real>(ls: &LadderSystem<T>, g: &GridFunction<T>) -> Result<GridFunction<T>> {
    let d = ls.deformed_derivative(g)?;
    let s = sqrt_half::<T>();
    let values = d
        .values()
        .iter()
        .zip(g.values())
        .zip(g.grid().nodes())
        .map(|((&dv, &v), x)| (v * ls.phi(x) - dv) * s)
        .collect();
    GridFunction::new(*g.grid(), values)
}

/// Deformed momentum `Π g = −i m^{-1/4} (m^{-1/4} g)'`.
pub fn apply_pi<T: Real>(ls: &LadderSystem<T>, g: &GridFunction<T>) -> Result<GridFunction<T>> {
    let d = ls.deformed_derivative(g)?;
    Ok(d.scale(Complex::new(T::zero(), -T::one())))
}

/// `H g = −½[(1/m) g'' − (m'/m²) g'] + Ṽ g`.
pub fn apply_h<T: Real>(problem: &PdmProblem<T>, g: &GridFunction<T>) -> Result<GridFunction<T>> {
    let d1 = derivative(g, 1)?;
    let d2 = derivative(g, 2)?;
    let p = &problem.profile;
    let half = T::lit(0.5);
    let values = g
        .values()
        .iter()
        .zip(d1.values())
        .zip(d2.values())
        .zip(g.grid().nodes())
        .map(|(((&v, &a), &b), x)| {
            let m = p.mass(x);
            let kinetic = (b / m - a * (p.mass_d1(x) / (m * m))) * (-half);
            kinetic + v * problem.effective_potential_at(x)
        })
        .collect();
    GridFunction::new(*g.grid(), values)
}

/// `‖Â†Â g − (H − λ) g‖₂`.
pub fn factorization_residual<T: Real>(ls: &LadderSystem<T>, g: &GridFunction<T>) -> Result<T> {
    let lhs = apply_a_dagger(ls, &apply_a(ls, g)?)?;
    let hg = apply_h(ls.problem(), g)?;
    let lam = ls.lambda();
    let rhs = hg.zip_with(g, |h, v| h - v * lam)?;
    l2_norm(&(&lhs - &rhs)?)
}

/// `‖[Â, Â†] g − (φ'/√m) g‖₂`.
pub fn commutator_residual<T: Real>(ls: &LadderSystem<T>, g: &GridFunction<T>) -> Result<T> {
    let a_ad = apply_a(ls, &apply_a_dagger(ls, g)?)?;
    let ad_a = apply_a_dagger(ls, &apply_a(ls, g)?)?;
    let comm = (&a_ad - &ad_a)?;
    let expected = g.mul_fn(|x| ls.commutator_weight(x))?;
    l2_norm(&(&comm - &expected)?)
}

/// `‖Â g‖ / ‖g‖`.
pub fn annihilation_residual<T: Real>(ls: &LadderSystem<T>, g: &GridFunction<T>) -> Result<T> {
    Ok(l2_norm(&apply_a(ls, g)?)? / l2_norm(g)?)
}

/// `⟨f, Â g⟩ − ⟨Â† f, g⟩`, which vanishes for localized states.
pub fn adjointness_defect<T: Real>(ls: &LadderSystem<T>, f: &GridFunction<T>, g: &GridFunction<T>) -> Result<T> {
    let lhs = inner_product(f, &apply_a(ls, g)?)?;
    let rhs = inner_product(&apply_a_dagger(ls, f)?, g)?;
    Ok((lhs - rhs).norm())
}

/// Rejects `u` with a zero or sign change at an interior node.
fn check_nodeless<T: Real>(u: &GridFunction<T>, range: std::ops::Range<usize>) -> Result<()> {
    let grid = u.grid();
    let vals = u.values();
    for i in range.clone() {
        if vals[i].norm() < T::lit(HAZARD_MODULUS) {
            return Err(Error::DivisionHazard {
                index: i,
                x: grid.x(i).to_f64().unwrap_or(f64::NAN),
                reason: "ground state vanishes",
            });
        }
        if i > range.start && (vals[i].re > T::zero()) != (vals[i - 1].re > T::zero()) {
            return Err(Error::DivisionHazard {
                index: i,
                x: grid.x(i).to_f64().unwrap_or(f64::NAN),
                reason: "ground state changes sign",
            });
        }
    }
    Ok(())
}

/// `K = −u'/u` from sampled ground-state data.
pub fn k_from_ground<T: Real>(u: &GridFunction<T>) -> Result<GridFunction<T>> {
    check_nodeless(u, 1..u.len() - 1)?;
    let du = derivative(u, 1)?;
    du.zip_with(u, |d, v| -d / v)
}

/// `φ = K/√m + m'/(4m^{3/2})` from a sampled `K`.
pub fn phi_from_k<T: Real>(k: &GridFunction<T>, profile: &MassProfile<T>) -> Result<GridFunction<T>> {
    k.map(|x, kv| kv / profile.sqrt_mass(x) + re(profile.ordering_term(x)))
}

/// Second solution `ũ = u ∫₀ˣ m/|u|²` at the ground energy, and
/// `η = √m/u`, sampled on the trusted interval where `|u|` exceeds
/// [`TRUSTED_FRACTION`] of its peak.
#[derive(Debug, Clone)]
pub struct SecondSolution<T> {
    /// Index of the first trusted node on the input grid.
    pub offset: usize,
    pub u: GridFunction<T>,
    pub u_tilde: GridFunction<T>,
    pub eta: GridFunction<T>,
}

pub fn second_solution<T: Real>(u: &GridFunction<T>, profile: &MassProfile<T>) -> Result<SecondSolution<T>> {
    let grid = u.grid();
    let threshold = u.sup_norm() * T::lit(TRUSTED_FRACTION);
    let vals = u.values();
    let first = vals.iter().position(|v| v.norm() > threshold);
    let last = vals.iter().rposition(|v| v.norm() > threshold);
    let (start, mut end) = match (first, last) {
        (Some(a), Some(b)) if b > a => (a, b),
        _ => return Err(Error::InvalidArgument("ground state has no resolvable bulk".into())),
    };
    // Simpson downstream needs an odd node count.
    if (end - start) % 2 == 1 {
        end -= 1;
    }
    check_nodeless(u, start..end + 1)?;
    if let Some(i) = (start..=end).find(|&i| vals[i].norm() <= threshold) {
        return Err(Error::DivisionHazard {
            index: i,
            x: grid.x(i).to_f64().unwrap_or(f64::NAN),
            reason: "ground state dips below the trusted level",
        });
    }
    let sub = grid.slice(start, end)?;
    let u_sub = GridFunction::new(sub, vals[start..=end].to_vec())?;
    let weight = u_sub.map(|x, v| re(profile.mass(x) / v.norm_sqr()))?;
    let anchor = if sub.contains(T::zero()) {
        T::zero()
    } else {
        sub.x(sub.len() / 2)
    };
    let running = cumulative_integral(&weight, anchor)?;
    let u_tilde = (&u_sub * &running)?;
    let eta = u_sub.map(|x, v| re(profile.sqrt_mass(x)) / v)?;
    Ok(SecondSolution {
        offset: start,
        u: u_sub,
        u_tilde,
        eta,
    })
}

/// Relative residual `‖Âũ − cη‖ / ‖cη‖` with the scalar `c` fitted by least
/// squares; `c` absorbs the free lower limit of the integral.
pub fn second_solution_residual<T: Real>(ls: &LadderSystem<T>, sol: &SecondSolution<T>) -> Result<(T, Cplx<T>)> {
    let a_ut = apply_a(ls, &sol.u_tilde)?;
    let c = inner_product(&sol.eta, &a_ut)? / inner_product(&sol.eta, &sol.eta)?;
    let fitted = sol.eta.scale(c);
    let res = l2_norm(&(&a_ut - &fitted)?)? / l2_norm(&fitted)?;
    Ok((res, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mass::ProfileKind;
    use crate::numerics::Grid;
    use crate::pct::{pdm_eigenfunction, working_grid};
    use approx::assert_abs_diff_eq;

    fn system(kind: ProfileKind, gamma: f64, r: ReferenceOscillator) -> LadderSystem<f64> {
        build_ladder(&PdmProblem::new(MassProfile::new(kind, gamma).unwrap(), r)).unwrap()
    }

    #[test]
    fn closed_forms_at_sample_points() {
        let ls = system(ProfileKind::Constant, 0.0, ReferenceOscillator::Harmonic);
        assert_eq!((ls.k(0.7), ls.phi(0.7), ls.lambda()), (0.7, 0.7, 0.5));
        let ls = system(ProfileKind::Case2, 1.0, ReferenceOscillator::Harmonic);
        assert_abs_diff_eq!(ls.phi(1.0), 1.175_201_193_643_801_4, epsilon = 1e-12);
        let ls = system(ProfileKind::Constant, 0.0, ReferenceOscillator::CarinenaNonlinear);
        assert_abs_diff_eq!(ls.phi(1.0), 1.0 + 4.0 / 3.0, epsilon = 1e-14);
        assert_eq!(ls.lambda(), -1.5);
    }

    #[test]
    fn phi_prime_matches_finite_difference() {
        for r in [ReferenceOscillator::Harmonic, ReferenceOscillator::CarinenaNonlinear] {
            let ls = system(ProfileKind::Case1, 0.5, r);
            for x in [-1.7, -0.2, 0.0, 0.9, 2.4] {
                let d = 1e-5;
                let fd = (ls.phi(x + d) - ls.phi(x - d)) / (2.0 * d);
                assert_abs_diff_eq!(ls.phi_prime(x), fd, epsilon = 1e-7);
            }
        }
    }

    #[test]
    fn harmonic_commutator_weight_is_one_pointwise() {
        for (kind, g) in [(ProfileKind::Case1, 0.5), (ProfileKind::Case2, 0.25)] {
            let ls = system(kind, g, ReferenceOscillator::Harmonic);
            for i in -50..=50 {
                let x = i as f64 * 0.1;
                assert_abs_diff_eq!(ls.phi_prime(x) / ls.profile().sqrt_mass(x), 1.0, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn k_from_gaussian_is_identity() {
        let g = Grid::<f64>::symmetric(5.0, 1001).unwrap();
        let u = GridFunction::from_real_fn(g, |x| (-x * x / 2.0).exp()).unwrap();
        let k = k_from_ground(&u).unwrap();
        for (v, x) in k.values().iter().zip(g.nodes()) {
            if x.abs() <= 4.0 {
                assert!((v.re - x).abs() < 1e-6, "x = {x}");
            }
        }
    }

    #[test]
    fn k_from_case1_ground_matches_analytic() {
        let ls = system(ProfileKind::Case1, 2.0, ReferenceOscillator::Harmonic);
        let g = working_grid(ls.problem(), 4001).unwrap();
        let u = pdm_eigenfunction(ls.problem(), 0, &g).unwrap();
        let k = k_from_ground(&u).unwrap();
        let phi = phi_from_k(&k, ls.profile()).unwrap();
        let mut worst = (0.0f64, 0.0f64);
        for i in 0..g.len() {
            if u.values()[i].norm() > 1e-8 {
                let x = g.x(i);
                worst.0 = worst.0.max((k.values()[i].re - ls.k(x)).abs());
                worst.1 = worst.1.max((phi.values()[i].re - ls.phi(x)).abs());
            }
        }
        assert!(worst.0 < 1e-6 && worst.1 < 1e-6, "{worst:?}");
    }

    #[test]
    fn k_from_ground_rejects_zero_crossing() {
        let g = Grid::<f64>::symmetric(3.0, 301).unwrap();
        let u = GridFunction::from_real_fn(g, |x| x * (-x * x).exp()).unwrap();
        assert!(matches!(k_from_ground(&u), Err(Error::DivisionHazard { .. })));
        let shifted = GridFunction::from_real_fn(g, |x| (x - 0.005) * (-x * x).exp()).unwrap();
        assert!(matches!(k_from_ground(&shifted), Err(Error::DivisionHazard { .. })));
    }

    #[test]
    fn constant_mass_ladder_action() {
        let ls = system(ProfileKind::Constant, 0.0, ReferenceOscillator::Harmonic);
        let g = working_grid(ls.problem(), 2001).unwrap();
        let psi0 = pdm_eigenfunction(ls.problem(), 0, &g).unwrap();
        let psi1 = pdm_eigenfunction(ls.problem(), 1, &g).unwrap();
        let down = apply_a(&ls, &psi1).unwrap();
        assert!(l2_norm(&(&down - &psi0).unwrap()).unwrap() < 1e-6);
        let up = apply_a_dagger(&ls, &psi0).unwrap();
        assert!(l2_norm(&(&up - &psi1).unwrap()).unwrap() < 1e-6);
        let zero = apply_a_dagger(&ls, &apply_a(&ls, &psi0).unwrap()).unwrap();
        assert!(l2_norm(&zero).unwrap() < 1e-6);
    }

    #[test]
    fn pi_is_odd_imaginary_on_even_input_and_matches_ladder_combination() {
        let ls = system(ProfileKind::Case2, 0.5, ReferenceOscillator::Harmonic);
        let g = working_grid(ls.problem(), 1001).unwrap();
        let even = GridFunction::from_real_fn(g, |x| (-x * x).exp() * (1.0 + x * x)).unwrap();
        let pi = apply_pi(&ls, &even).unwrap();
        let n = g.len();
        for i in 0..n {
            assert!(pi.values()[i].re.abs() < 1e-14);
            assert_abs_diff_eq!(pi.values()[i].im, -pi.values()[n - 1 - i].im, epsilon = 1e-10);
        }
        let a = apply_a(&ls, &even).unwrap();
        let ad = apply_a_dagger(&ls, &even).unwrap();
        let combo = (&a - &ad)
            .unwrap()
            .scale(Complex::new(0.0, -std::f64::consts::FRAC_1_SQRT_2));
        assert!(l2_norm(&(&pi - &combo).unwrap()).unwrap() < 1e-12);
    }

    #[test]
    fn constant_mass_pi_is_plain_momentum() {
        let ls = system(ProfileKind::Constant, 0.0, ReferenceOscillator::Harmonic);
        let g = Grid::<f64>::symmetric(8.0, 1601).unwrap();
        let k = 1.3;
        let wave = GridFunction::from_fn(g, |x| Complex::new(0.0, k * x).exp() * (-x * x / 2.0).exp()).unwrap();
        let pi = apply_pi(&ls, &wave).unwrap();
        let expected = wave.map(|x, v| v * Complex::new(k, x)).unwrap();
        assert!(pi.sup_distance(&expected).unwrap() < 1e-6);
    }

    #[test]
    fn constant_mass_h_is_laplacian_plus_potential() {
        let p = PdmProblem::new(MassProfile::constant(), ReferenceOscillator::Harmonic);
        let g = Grid::<f64>::symmetric(6.0, 601).unwrap();
        let f = GridFunction::from_real_fn(g, |x| (-(x - 0.3) * (x - 0.3)).exp()).unwrap();
        let h = apply_h(&p, &f).unwrap();
        let d2 = derivative(&f, 2).unwrap();
        let manual = d2.scale_real(-0.5);
        for i in 0..g.len() {
            let x = g.x(i);
            let want = manual.values()[i] + f.values()[i] * (x * x / 2.0);
            assert!((h.values()[i] - want).norm() < 1e-12);
        }
    }

    #[test]
    fn ground_state_eigenvalue_residuals() {
        for (kind, gamma, r, e) in [
            (ProfileKind::Case2, 0.75, ReferenceOscillator::Harmonic, 0.5),
            (ProfileKind::Constant, 0.0, ReferenceOscillator::CarinenaNonlinear, -1.5),
        ] {
            let ls = system(kind, gamma, r);
            let g = working_grid(ls.problem(), 2001).unwrap();
            let psi = pdm_eigenfunction(ls.problem(), 0, &g).unwrap();
            let h = apply_h(ls.problem(), &psi).unwrap();
            let res = l2_norm(&h.zip_with(&psi, |a, b| a - b * e).unwrap()).unwrap();
            assert!(res < 1e-5, "{kind:?}/{r:?}: {res:e}");
        }
    }

    #[test]
    fn second_solution_constant_mass() {
        let g = Grid::<f64>::symmetric(10.0, 2001).unwrap();
        let u = GridFunction::from_real_fn(g, |x| (-x * x / 2.0).exp()).unwrap();
        let sol = second_solution(&u, &MassProfile::constant()).unwrap();
        // η = e^{x²/2}
        for (v, x) in sol.eta.values().iter().zip(sol.eta.grid().nodes()) {
            assert_abs_diff_eq!(v.re, (x * x / 2.0).exp(), epsilon = 1e-9 * (x * x / 2.0).exp());
        }
        // ũ/u increases strictly
        let ratio: Vec<f64> = sol
            .u_tilde
            .values()
            .iter()
            .zip(sol.u.values())
            .map(|(a, b)| (a / b).re)
            .collect();
        assert!(ratio.windows(2).all(|w| w[0] < w[1]));
        let ls = system(ProfileKind::Constant, 0.0, ReferenceOscillator::Harmonic);
        let (res, _) = second_solution_residual(&ls, &sol).unwrap();
        assert!(res < 1e-4, "res = {res:e}");
        // restricted check on |x| <= 2.5
        let a_ut = apply_a(&ls, &sol.u_tilde).unwrap();
        let (_, c) = second_solution_residual(&ls, &sol).unwrap();
        for i in 0..sol.eta.len() {
            let x = sol.eta.grid().x(i);
            if x.abs() <= 2.5 {
                let want = sol.eta.values()[i] * c;
                assert!((a_ut.values()[i] - want).norm() / want.norm() < 1e-4);
            }
        }
    }

    #[test]
    fn second_solution_rejects_nodes() {
        let g = Grid::<f64>::symmetric(5.0, 501).unwrap();
        let u = GridFunction::from_real_fn(g, |x| (x - 0.01) * (-x * x / 2.0).exp()).unwrap();
        assert!(matches!(
            second_solution(&u, &MassProfile::constant()),
            Err(Error::DivisionHazard { .. })
        ));
    }
}
