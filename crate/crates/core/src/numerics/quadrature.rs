use num_complex::Complex;

use crate::error::{Error, Result};
use crate::numerics::GridFunction;
use crate::scalar::{Cplx, Real};

/// Composite Simpson rule on an odd number of samples.
pub(crate) fn simpson_samples<T: Real>(values: &[Cplx<T>], h: T) -> Result<Cplx<T>> {
    let n = values.len();
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "Simpson quadrature needs an odd number (>= 3) of samples, got {n}"
        )));
    }
    let zero = Complex::new(T::zero(), T::zero());
    let (mut odd, mut even) = (zero, zero);
    for (i, &v) in values.iter().enumerate().take(n - 1).skip(1) {
        if i % 2 == 1 {
            odd = odd + v;
        } else {
            even = even + v;
        }
    }
    let sum = values[0] + values[n - 1] + odd * T::lit(4.0) + even * T::lit(2.0);
    Ok(sum * (h / T::lit(3.0)))
}

/// `∫ f dx` over the whole grid by composite Simpson.
pub fn integrate<T: Real>(f: &GridFunction<T>) -> Result<Cplx<T>> {
    simpson_samples(f.values(), f.grid().spacing())
}

/// `∫ conj(f) g dx`.
pub fn inner_product<T: Real>(f: &GridFunction<T>, g: &GridFunction<T>) -> Result<Cplx<T>> {
    f.same_grid(g)?;
    let prod: Vec<_> = f.values().iter().zip(g.values()).map(|(a, b)| a.conj() * b).collect();
    simpson_samples(&prod, f.grid().spacing())
}

/// `sqrt(<f, f>)`.
pub fn l2_norm<T: Real>(f: &GridFunction<T>) -> Result<T> {
    let sq: Vec<_> = f
        .values()
        .iter()
        .map(|v| Complex::new(v.norm_sqr(), T::zero()))
        .collect();
    Ok(simpson_samples(&sq, f.grid().spacing())?.re.max(T::zero()).sqrt())
}

/// Rescales `f` to unit quadrature norm, returning the state and the norm
/// it had before rescaling.
pub fn normalize<T: Real>(f: &GridFunction<T>) -> Result<(GridFunction<T>, T)> {
    let norm = l2_norm(f)?;
    if !(norm > T::zero()) {
        return Err(Error::InvalidArgument("cannot normalize a zero function".into()));
    }
    Ok((f.scale_real(T::one() / norm), norm))
}

/// Integral over each cell `[x_i, x_{i+1}]` from the cubic through four
/// neighbouring samples; one-sided cubics in the first and last cells.
fn cell_integrals<T: Real>(values: &[Cplx<T>], h: T) -> Vec<Cplx<T>> {
    let n = values.len();
    let w = h / T::lit(24.0);
    let c = |a: f64, b: f64, cc: f64, d: f64, v: [Cplx<T>; 4]| {
        (v[0] * T::lit(a) + v[1] * T::lit(b) + v[2] * T::lit(cc) + v[3] * T::lit(d)) * w
    };
    (0..n - 1)
        .map(|i| {
            if i == 0 {
                c(9.0, 19.0, -5.0, 1.0, [values[0], values[1], values[2], values[3]])
            } else if i == n - 2 {
                c(
                    1.0,
                    -5.0,
                    19.0,
                    9.0,
                    [values[n - 4], values[n - 3], values[n - 2], values[n - 1]],
                )
            } else {
                c(
                    -1.0,
                    13.0,
                    13.0,
                    -1.0,
                    [values[i - 1], values[i], values[i + 1], values[i + 2]],
                )
            }
        })
        .collect()
}

/// Running integral `F(x) = ∫_{anchor}^{x} f dx'` on the grid.
///
/// The anchor snaps to its nearest node, where `F` is exactly zero. Cell
/// integrals are fourth-order accurate, matching the Simpson rule used by
/// [`integrate`].
pub fn cumulative_integral<T: Real>(f: &GridFunction<T>, anchor: T) -> Result<GridFunction<T>> {
    let grid = *f.grid();
    if !grid.contains(anchor) {
        return Err(Error::InvalidArgument(format!(
            "anchor {anchor} outside [{}, {}]",
            grid.x_min(),
            grid.x_max()
        )));
    }
    let cells = cell_integrals(f.values(), grid.spacing());
    let k = grid.nearest_node(anchor);
    let zero = Complex::new(T::zero(), T::zero());
    let mut out = vec![zero; grid.len()];
    for i in k + 1..grid.len() {
        out[i] = out[i - 1] + cells[i - 1];
    }
    for i in (0..k).rev() {
        out[i] = out[i + 1] - cells[i];
    }
    GridFunction::new(grid, out)
}
