//! Position-dependent mass distributions and the mapping `f(x) = ∫₀ˣ √m`.
//!
//! Two analytic families are provided next to the constant mass:
//!
//! * rational, `m = (γ + x²)² / (1 + x²)²`, with `f = x + (γ − 1) arctan x`;
//! * hyperbolic, `m = cosh²(γx)`, with `f = sinh(γx) / γ`.
//!
//! Both reduce to `m ≡ 1` (rational at `γ = 1`, hyperbolic at `γ = 0`).
//! Arbitrary user masses are supported through [`MassProfile::custom`];
//! their derivatives and mapping are computed numerically.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numerics::{cumulative_integral, derivative, Grid, GridFunction};
use crate::scalar::{re, Real};

/// Below this |γ| the hyperbolic mapping switches to its Taylor series.
const SERIES_GAMMA: f64 = 1e-6;
/// Step of the internal stencils used for custom masses.
const CUSTOM_D1_STEP: f64 = 1e-3;
const CUSTOM_D2_STEP: f64 = 2e-3;
/// Target Simpson step for the custom mapping integral.
const CUSTOM_QUAD_STEP: f64 = 5e-3;

/// The analytic mass families selectable by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProfileKind {
    Constant,
    /// `(γ + x²)² / (1 + x²)²`
    Case1,
    /// `cosh²(γx)`
    Case2,
}

impl ProfileKind {
    pub fn name(self) -> &'static str {
        match self {
            ProfileKind::Constant => "constant",
            ProfileKind::Case1 => "case1",
            ProfileKind::Case2 => "case2",
        }
    }
}

impl fmt::Display for ProfileKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProfileKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "constant" => Ok(ProfileKind::Constant),
            "case1" => Ok(ProfileKind::Case1),
            "case2" => Ok(ProfileKind::Case2),
            other => Err(Error::InvalidArgument(format!("unknown profile kind {other:?}"))),
        }
    }
}

type MassFn<T> = Arc<dyn Fn(T) -> T + Send + Sync>;

#[derive(Clone)]
enum Shape<T> {
    Constant,
    RationalCase1 { gamma: T },
    CoshCase2 { gamma: T },
    CustomNumeric { mass: MassFn<T> },
}

/// A mass distribution `m(x) > 0` with derivatives and mapping function.
#[derive(Clone)]
pub struct MassProfile<T> {
    shape: Shape<T>,
}

impl<T: fmt::Debug> fmt::Debug for MassProfile<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.shape {
            Shape::Constant => f.write_str("MassProfile::Constant"),
            Shape::RationalCase1 { gamma } => write!(f, "MassProfile::Case1(γ = {gamma:?})"),
            Shape::CoshCase2 { gamma } => write!(f, "MassProfile::Case2(γ = {gamma:?})"),
            Shape::CustomNumeric { .. } => f.write_str("MassProfile::CustomNumeric"),
        }
    }
}

impl<T: Real> MassProfile<T> {
    /// Builds one of the analytic profiles. `gamma` is ignored for
    /// [`ProfileKind::Constant`].
    pub fn new(kind: ProfileKind, gamma: T) -> Result<Self> {
        let shape = match kind {
            ProfileKind::Constant => Shape::Constant,
            ProfileKind::Case1 => {
                if !(gamma > T::zero()) || !gamma.is_finite() {
                    return Err(Error::Domain(format!(
                        "case1 mass needs γ > 0 (m vanishes on the real line otherwise), got {gamma}"
                    )));
                }
                Shape::RationalCase1 { gamma }
            }
            ProfileKind::Case2 => {
                if gamma < T::zero() || !gamma.is_finite() {
                    return Err(Error::Domain(format!("case2 mass needs γ ≥ 0, got {gamma}")));
                }
                Shape::CoshCase2 { gamma }
            }
        };
        Ok(Self { shape })
    }

    pub fn constant() -> Self {
        Self { shape: Shape::Constant }
    }

    /// Wraps an arbitrary mass evaluator. Positivity is not checked here;
    /// see [`verify_profile`].
    pub fn custom(mass: impl Fn(T) -> T + Send + Sync + 'static) -> Self {
        Self {
            shape: Shape::CustomNumeric { mass: Arc::new(mass) },
        }
    }

    /// Analytic kind and γ, or `None` for custom masses.
    pub fn kind(&self) -> Option<(ProfileKind, T)> {
        match self.shape {
            Shape::Constant => Some((ProfileKind::Constant, T::zero())),
            Shape::RationalCase1 { gamma } => Some((ProfileKind::Case1, gamma)),
            Shape::CoshCase2 { gamma } => Some((ProfileKind::Case2, gamma)),
            Shape::CustomNumeric { .. } => None,
        }
    }

    pub fn is_analytic(&self) -> bool {
        !matches!(self.shape, Shape::CustomNumeric { .. })
    }

    /// Lower bound of `m` over the whole real line, or `None` if unknown.
    pub fn global_min_mass(&self) -> Option<T> {
        match self.shape {
            Shape::Constant | Shape::CoshCase2 { .. } => Some(T::one()),
            Shape::RationalCase1 { gamma } => Some((gamma * gamma).min(T::one())),
            Shape::CustomNumeric { .. } => None,
        }
    }

    pub fn mass(&self, x: T) -> T {
        match &self.shape {
            Shape::Constant => T::one(),
            Shape::RationalCase1 { gamma } => {
                let s = rational_sqrt_mass(*gamma, x);
                s * s
            }
            Shape::CoshCase2 { gamma } => {
                let c = (*gamma * x).cosh();
                c * c
            }
            Shape::CustomNumeric { mass } => mass(x),
        }
    }

    pub fn sqrt_mass(&self, x: T) -> T {
        match &self.shape {
            Shape::Constant => T::one(),
            Shape::RationalCase1 { gamma } => rational_sqrt_mass(*gamma, x),
            Shape::CoshCase2 { gamma } => (*gamma * x).cosh(),
            Shape::CustomNumeric { mass } => mass(x).sqrt(),
        }
    }

    /// `m'(x)`.
    pub fn mass_d1(&self, x: T) -> T {
        match &self.shape {
            Shape::Constant => T::zero(),
            Shape::RationalCase1 { gamma } => {
                // m = s², s = 1 + (γ−1)/(1+x²)
                let s = rational_sqrt_mass(*gamma, x);
                let q = T::one() + x * x;
                let ds = -(*gamma - T::one()) * T::lit(2.0) * x / (q * q);
                T::lit(2.0) * s * ds
            }
            Shape::CoshCase2 { gamma } => *gamma * (T::lit(2.0) * *gamma * x).sinh(),
            Shape::CustomNumeric { mass } => {
                let d = T::lit(CUSTOM_D1_STEP);
                let two = T::lit(2.0);
                (mass(x - two * d) - T::lit(8.0) * mass(x - d) + T::lit(8.0) * mass(x + d) - mass(x + two * d))
                    / (T::lit(12.0) * d)
            }
        }
    }

    /// `m''(x)`.
    pub fn mass_d2(&self, x: T) -> T {
        match &self.shape {
            Shape::Constant => T::zero(),
            Shape::RationalCase1 { gamma } => {
                let g1 = *gamma - T::one();
                let s = rational_sqrt_mass(*gamma, x);
                let q = T::one() + x * x;
                let ds = -g1 * T::lit(2.0) * x / (q * q);
                let dds = g1 * (T::lit(6.0) * x * x - T::lit(2.0)) / (q * q * q);
                T::lit(2.0) * (ds * ds + s * dds)
            }
            Shape::CoshCase2 { gamma } => T::lit(2.0) * *gamma * *gamma * (T::lit(2.0) * *gamma * x).cosh(),
            Shape::CustomNumeric { mass } => {
                let d = T::lit(CUSTOM_D2_STEP);
                let two = T::lit(2.0);
                (-mass(x - two * d) + T::lit(16.0) * mass(x - d) - T::lit(30.0) * mass(x) + T::lit(16.0) * mass(x + d)
                    - mass(x + two * d))
                    / (T::lit(12.0) * d * d)
            }
        }
    }

    /// The mapping `f(x) = ∫₀ˣ √m(x') dx'`.
    pub fn mapping(&self, x: T) -> T {
        match &self.shape {
            Shape::Constant => x,
            Shape::RationalCase1 { gamma } => x + (*gamma - T::one()) * x.atan(),
            Shape::CoshCase2 { gamma } => {
                let g = *gamma;
                if g.abs() < T::lit(SERIES_GAMMA) {
                    let gx2 = (g * x) * (g * x);
                    x * (T::one() + gx2 / T::lit(6.0) + gx2 * gx2 / T::lit(120.0))
                } else {
                    (g * x).sinh() / g
                }
            }
            Shape::CustomNumeric { mass } => simpson_closure(|t| mass(t).sqrt(), T::zero(), x),
        }
    }

    /// Inverse of [`mapping`](Self::mapping) by bisection. `f` is strictly
    /// increasing, so the root is unique.
    pub fn inverse_mapping(&self, y: T) -> T {
        if let Shape::Constant = self.shape {
            return y;
        }
        let two = T::lit(2.0);
        let (mut lo, mut hi) = (-T::one(), T::one());
        while self.mapping(lo) > y {
            lo = lo * two;
        }
        while self.mapping(hi) < y {
            hi = hi * two;
        }
        for _ in 0..200 {
            let mid = (lo + hi) / two;
            if mid <= lo || mid >= hi {
                break;
            }
            if self.mapping(mid) < y {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        (lo + hi) / two
    }

    /// `m'/(4 m^{3/2})`, the coefficient produced by `m^{-1/4} d/dx m^{-1/4}`.
    pub fn ordering_term(&self, x: T) -> T {
        let s = self.sqrt_mass(x);
        self.mass_d1(x) / (T::lit(4.0) * s * s * s)
    }

    pub fn sample_mass(&self, grid: &Grid<T>) -> Result<GridFunction<T>> {
        GridFunction::from_real_fn(*grid, |x| self.mass(x))
    }
}

fn rational_sqrt_mass<T: Real>(gamma: T, x: T) -> T {
    T::one() + (gamma - T::one()) / (T::one() + x * x)
}

/// Composite Simpson of a closure between `a` and `b`.
fn simpson_closure<T: Real>(f: impl Fn(T) -> T, a: T, b: T) -> T {
    let width = (b - a).abs();
    if width == T::zero() {
        return T::zero();
    }
    let cells = (width / T::lit(CUSTOM_QUAD_STEP)).ceil().to_usize().unwrap_or(2).max(2);
    let cells = cells + cells % 2;
    let h = (b - a) / T::from_index(cells);
    let mut sum = f(a) + f(b);
    for i in 1..cells {
        let w = if i % 2 == 1 { T::lit(4.0) } else { T::lit(2.0) };
        sum = sum + w * f(a + h * T::from_index(i));
    }
    sum * h / T::lit(3.0)
}

/// Samples `f(x) = ∫₀ˣ √m` by running quadrature of `√m` on the grid,
/// independent of any closed form.
pub fn numeric_mapping<T: Real>(profile: &MassProfile<T>, grid: &Grid<T>) -> Result<GridFunction<T>> {
    let root_m = GridFunction::from_real_fn(*grid, |x| profile.sqrt_mass(x))?;
    let running = cumulative_integral(&root_m, T::zero())?;
    // The anchor snaps to a node; shift so that f(0) = 0 exactly.
    let node = grid.x(grid.nearest_node(T::zero()));
    let offset = if node == T::zero() {
        T::zero()
    } else {
        let h = node.abs() / T::lit(16.0);
        let n = 16usize;
        let mut sum = profile.sqrt_mass(T::zero()) + profile.sqrt_mass(node);
        for i in 1..n {
            let w = if i % 2 == 1 { T::lit(4.0) } else { T::lit(2.0) };
            sum = sum + w * profile.sqrt_mass(node.signum() * h * T::from_index(i));
        }
        node.signum() * sum * h / T::lit(3.0)
    };
    running.map(|_, v| v + re(offset))
}

/// Consistency residuals of a profile on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileDiagnostics<T> {
    pub min_mass: T,
    pub positive: bool,
    /// `sup |derivative(f) − √m|`; `None` when positivity fails.
    pub mapping_residual: Option<T>,
    /// `sup |m' − derivative(m)|`; `None` when positivity fails.
    pub mass_derivative_residual: Option<T>,
    pub monotone: bool,
}

/// Checks `m > 0`, `f' = √m` and the analytic `m'` against stencils.
/// Violations are reported, not raised.
pub fn verify_profile<T: Real>(profile: &MassProfile<T>, grid: &Grid<T>) -> Result<ProfileDiagnostics<T>> {
    let min_mass = grid.nodes().map(|x| profile.mass(x)).fold(T::infinity(), |a, b| {
        if b.is_nan() {
            T::neg_infinity()
        } else {
            a.min(b)
        }
    });
    let positive = min_mass > T::zero();
    if !positive {
        return Ok(ProfileDiagnostics {
            min_mass,
            positive,
            mapping_residual: None,
            mass_derivative_residual: None,
            monotone: false,
        });
    }
    let f = GridFunction::from_real_fn(*grid, |x| profile.mapping(x))?;
    let df = derivative(&f, 1)?;
    let mapping_residual = df
        .values()
        .iter()
        .zip(grid.nodes())
        .map(|(v, x)| (v.re - profile.sqrt_mass(x)).abs())
        .fold(T::zero(), T::max);
    let m = profile.sample_mass(grid)?;
    let dm = derivative(&m, 1)?;
    let mass_derivative_residual = dm
        .values()
        .iter()
        .zip(grid.nodes())
        .map(|(v, x)| (v.re - profile.mass_d1(x)).abs())
        .fold(T::zero(), T::max);
    let fr = f.real_parts();
    let monotone = fr.windows(2).all(|w| w[0] < w[1]);
    Ok(ProfileDiagnostics {
        min_mass,
        positive,
        mapping_residual: Some(mapping_residual),
        mass_derivative_residual: Some(mass_derivative_residual),
        monotone,
    })
}
