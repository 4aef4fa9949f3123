use crate::error::{Error, Result};
use crate::scalar::Real;

/// Smallest grid that carries the 5-point interior stencil plus two
/// one-sided boundary rows on each side.
pub const MIN_POINTS: usize = 9;

/// Uniform grid on `[x_min, x_max]` with `n_points` nodes including both ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid<T> {
    x_min: T,
    x_max: T,
    n_points: usize,
}

impl<T: Real> Grid<T> {
    pub fn new(x_min: T, x_max: T, n_points: usize) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite()) || !(x_min < x_max) {
            return Err(Error::InvalidArgument(format!(
                "grid needs finite x_min < x_max, got [{x_min}, {x_max}]"
            )));
        }
        if n_points < MIN_POINTS {
            return Err(Error::InvalidArgument(format!(
                "grid needs at least {MIN_POINTS} points, got {n_points}"
            )));
        }
        Ok(Self { x_min, x_max, n_points })
    }

    /// Symmetric grid `[-half_width, half_width]`; `n_points` is bumped to
    /// the next odd number so that `x = 0` is a node and Simpson applies.
    pub fn symmetric(half_width: T, n_points: usize) -> Result<Self> {
        let n = if n_points.is_multiple_of(2) {
            n_points + 1
        } else {
            n_points
        };
        Self::new(-half_width, half_width, n)
    }

    pub fn x_min(&self) -> T {
        self.x_min
    }

    pub fn x_max(&self) -> T {
        self.x_max
    }

    pub fn len(&self) -> usize {
        self.n_points
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> T {
        (self.x_max - self.x_min) / T::from_index(self.n_points - 1)
    }

    #[inline]
    pub fn x(&self, i: usize) -> T {
        // Interpolate from both ends so the last node is exactly x_max.
        let n1 = T::from_index(self.n_points - 1);
        let t = T::from_index(i) / n1;
        self.x_min * (T::one() - t) + self.x_max * t
    }

    pub fn nodes(&self) -> impl ExactSizeIterator<Item = T> + '_ {
        (0..self.n_points).map(move |i| self.x(i))
    }

    pub fn contains(&self, x: T) -> bool {
        x >= self.x_min && x <= self.x_max
    }

    /// Index of the node closest to `x` (clamped to the grid).
    pub fn nearest_node(&self, x: T) -> usize {
        let h = self.spacing();
        let k = ((x - self.x_min) / h).round();
        if k <= T::zero() {
            0
        } else {
            k.to_usize().unwrap_or(usize::MAX).min(self.n_points - 1)
        }
    }

    /// Contiguous sub-grid covering nodes `start..=end` with the same spacing.
    pub fn slice(&self, start: usize, end: usize) -> Result<Self> {
        if end >= self.n_points || start >= end {
            return Err(Error::InvalidArgument(format!(
                "bad node range {start}..={end} on a {}-point grid",
                self.n_points
            )));
        }
        Self::new(self.x(start), self.x(end), end - start + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_bounds_and_sizes() {
        assert!(Grid::<f64>::new(1.0, 1.0, 11).is_err());
        assert!(Grid::<f64>::new(2.0, 1.0, 11).is_err());
        assert!(Grid::<f64>::new(0.0, 1.0, 8).is_err());
        assert!(Grid::<f64>::new(0.0, f64::NAN, 11).is_err());
        assert!(Grid::<f64>::new(0.0, 1.0, 9).is_ok());
    }

    #[test]
    fn symmetric_grid_has_origin_node() {
        let g = Grid::<f64>::symmetric(10.0, 2000).unwrap();
        assert_eq!(g.len(), 2001);
        assert_eq!(g.x(1000), 0.0);
        assert_eq!(g.x(2000), 10.0);
        assert_eq!(g.nearest_node(0.004), 1000);
        assert_eq!(g.nearest_node(-50.0), 0);
        assert_eq!(g.nearest_node(50.0), 2000);
    }

    #[test]
    fn slice_keeps_spacing() {
        let g = Grid::<f64>::new(-1.0, 1.0, 201).unwrap();
        let s = g.slice(50, 150).unwrap();
        assert!((s.spacing() - g.spacing()).abs() < 1e-15);
        assert!((s.x_min() - g.x(50)).abs() < 1e-15);
        assert!(g.slice(150, 50).is_err());
    }
}
