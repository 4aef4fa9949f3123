//! Finite-difference eigenvalue oracle for `−½ d/dx (1/m) d/dx + Ṽ`.
//!
//! The operator is discretized with the conservative three-point scheme
//!
//! ```text
//! (Hψ)ᵢ = −(1/2h²)[w_{i+½}(ψ_{i+1} − ψᵢ) − w_{i−½}(ψᵢ − ψ_{i−1})] + Ṽᵢ ψᵢ,   w = 1/m,
//! ```
//!
//! with Dirichlet ends, giving a symmetric tridiagonal matrix whose lowest
//! eigenvalues are found by Sturm-sequence bisection. Nothing here touches
//! the ladder machinery.

use crate::error::{Error, Result};
use crate::numerics::Grid;
use crate::pct::PdmProblem;
use crate::scalar::Real;

/// Absolute bracket width each eigenvalue is bisected to.
pub const BISECTION_WIDTH: f64 = 1e-10;

/// Symmetric tridiagonal matrix on the interior nodes of a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteHamiltonian<T> {
    pub grid: Grid<T>,
    pub diag: Vec<T>,
    /// Shared sub/super-diagonal, length `diag.len() − 1`.
    pub offdiag: Vec<T>,
}

impl<T: Real> DiscreteHamiltonian<T> {
    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Number of eigenvalues strictly below `lambda` (count of negative
    /// pivots in the `LDLᵀ` recurrence).
    pub fn count_below(&self, lambda: T) -> usize {
        let tiny = T::min_positive_value().sqrt();
        let mut count = 0;
        let mut q = T::one();
        for i in 0..self.diag.len() {
            let coupling = if i == 0 {
                T::zero()
            } else {
                self.offdiag[i - 1] * self.offdiag[i - 1] / q
            };
            q = self.diag[i] - lambda - coupling;
            if q == T::zero() {
                q = -tiny;
            }
            if q < T::zero() {
                count += 1;
            }
        }
        count
    }

    /// Gershgorin interval containing the whole spectrum.
    pub fn gershgorin(&self) -> (T, T) {
        let n = self.diag.len();
        let mut lo = T::infinity();
        let mut hi = T::neg_infinity();
        for i in 0..n {
            let left = if i > 0 { self.offdiag[i - 1].abs() } else { T::zero() };
            let right = if i + 1 < n { self.offdiag[i].abs() } else { T::zero() };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }
}

/// Assembles the conservative discretization on the interior nodes.
pub fn discretize<T: Real>(problem: &PdmProblem<T>, grid: &Grid<T>) -> Result<DiscreteHamiltonian<T>> {
    let n = grid.len();
    let h = grid.spacing();
    let half_h = h / T::lit(2.0);
    let scale = T::one() / (T::lit(2.0) * h * h);
    // w at x_{i+½} for i = 0..n-1
    let w: Vec<T> = (0..n - 1)
        .map(|i| T::one() / problem.profile.mass(grid.x(i) + half_h))
        .collect();
    let diag: Vec<T> = (1..n - 1)
        .map(|i| (w[i - 1] + w[i]) * scale + problem.effective_potential_at(grid.x(i)))
        .collect();
    let offdiag: Vec<T> = (1..n - 2).map(|i| -w[i] * scale).collect();
    if let Some(i) = diag.iter().position(|d| !d.is_finite()) {
        return Err(Error::NonFinite(i + 1));
    }
    Ok(DiscreteHamiltonian {
        grid: *grid,
        diag,
        offdiag,
    })
}

/// The `k` smallest eigenvalues, ascending.
pub fn lowest_eigenvalues<T: Real>(h: &DiscreteHamiltonian<T>, k: usize) -> Result<Vec<T>> {
    if k == 0 || k > h.dim() {
        return Err(Error::InvalidArgument(format!(
            "requested {k} eigenvalues of a {}-dimensional matrix",
            h.dim()
        )));
    }
    let (lo0, hi0) = h.gershgorin();
    let width = T::lit(BISECTION_WIDTH);
    let two = T::lit(2.0);
    let mut out = Vec::with_capacity(k);
    let mut lo = lo0;
    for j in 0..k {
        // Find λⱼ: the smallest x with count_below(x) > j.
        let (mut a, mut b) = (lo, hi0);
        while b - a > width {
            let mid = (a + b) / two;
            if mid <= a || mid >= b {
                break;
            }
            if h.count_below(mid) > j {
                b = mid;
            } else {
                a = mid;
            }
        }
        let value = (a + b) / two;
        out.push(value);
        lo = a;
    }
    Ok(out)
}

/// One row of a spectrum comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumRow<T> {
    pub n: usize,
    pub analytic: T,
    pub discrete: T,
    pub gap: T,
}

/// Compares the `k` lowest discrete levels with the closed-form energies,
/// skipping quantum numbers the reference does not support.
pub fn spectrum_report<T: Real>(problem: &PdmProblem<T>, grid: &Grid<T>, k: usize) -> Result<Vec<SpectrumRow<T>>> {
    let h = discretize(problem, grid)?;
    let discrete = lowest_eigenvalues(&h, k)?;
    discrete
        .into_iter()
        .enumerate()
        .map(|(level, d)| {
            let n = problem.reference.level(level);
            let analytic = problem.energy(n)?;
            Ok(SpectrumRow {
                n,
                analytic,
                discrete: d,
                gap: (d - analytic).abs(),
            })
        })
        .collect()
}

pub fn max_gap<T: Real>(rows: &[SpectrumRow<T>]) -> T {
    rows.iter().map(|r| r.gap).fold(T::zero(), T::max)
}
