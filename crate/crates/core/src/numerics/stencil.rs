//! Fourth-order finite differences on uniform grids.
//!
//! Interior rows use the 5-point central stencils; the two rows at each end
//! use one-sided stencils of the same order (5 points for the first
//! derivative, 6 for the second). All rows are exact for polynomials of
//! degree four.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::numerics::{GridFunction, MIN_POINTS};
use crate::scalar::{Cplx, Real};

const D1_CENTRAL: [f64; 5] = [1.0, -8.0, 0.0, 8.0, -1.0];
const D1_EDGE0: [f64; 5] = [-25.0, 48.0, -36.0, 16.0, -3.0];
const D1_EDGE1: [f64; 5] = [-3.0, -10.0, 18.0, -6.0, 1.0];

const D2_CENTRAL: [f64; 5] = [-1.0, 16.0, -30.0, 16.0, -1.0];
const D2_EDGE0: [f64; 6] = [45.0, -154.0, 214.0, -156.0, 61.0, -10.0];
const D2_EDGE1: [f64; 6] = [10.0, -15.0, -4.0, 14.0, -6.0, 1.0];

fn dot<T: Real>(coefs: &[f64], window: &[Cplx<T>]) -> Cplx<T> {
    coefs
        .iter()
        .zip(window)
        .fold(Complex::new(T::zero(), T::zero()), |acc, (&c, &v)| acc + v * T::lit(c))
}

/// Sample-slice version of [`derivative`]; `values.len() >= 9` is assumed.
fn derivative_samples<T: Real>(values: &[Cplx<T>], h: T, order: u8) -> Vec<Cplx<T>> {
    let n = values.len();
    let mut out = vec![Complex::new(T::zero(), T::zero()); n];
    // Right-edge rows reuse the left-edge stencils on the reversed window.
    // Odd-order derivatives flip sign under reflection.
    let rev = |i: usize, len: usize| -> Vec<Cplx<T>> { (0..len).map(|k| values[i - k]).collect() };
    match order {
        1 => {
            let scale = T::lit(12.0) * h;
            out[0] = dot(&D1_EDGE0, &values[0..5]) / scale;
            out[1] = dot(&D1_EDGE1, &values[0..5]) / scale;
            for i in 2..n - 2 {
                out[i] = dot(&D1_CENTRAL, &values[i - 2..=i + 2]) / scale;
            }
            out[n - 1] = -dot(&D1_EDGE0, &rev(n - 1, 5)) / scale;
            out[n - 2] = -dot(&D1_EDGE1, &rev(n - 1, 5)) / scale;
        }
        _ => {
            let scale = T::lit(12.0) * h * h;
            out[0] = dot(&D2_EDGE0, &values[0..6]) / scale;
            out[1] = dot(&D2_EDGE1, &values[0..6]) / scale;
            for i in 2..n - 2 {
                out[i] = dot(&D2_CENTRAL, &values[i - 2..=i + 2]) / scale;
            }
            out[n - 1] = dot(&D2_EDGE0, &rev(n - 1, 6)) / scale;
            out[n - 2] = dot(&D2_EDGE1, &rev(n - 1, 6)) / scale;
        }
    }
    out
}

/// First (`order = 1`) or second (`order = 2`) derivative of a grid function.
pub fn derivative<T: Real>(f: &GridFunction<T>, order: u8) -> Result<GridFunction<T>> {
    if !(order == 1 || order == 2) {
        return Err(Error::InvalidArgument(format!(
            "derivative order must be 1 or 2, got {order}"
        )));
    }
    if f.len() < MIN_POINTS {
        return Err(Error::InvalidArgument(format!(
            "derivative needs at least {MIN_POINTS} points"
        )));
    }
    let values = derivative_samples(f.values(), f.grid().spacing(), order);
    GridFunction::new(*f.grid(), values)
}
