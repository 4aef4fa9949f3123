//! Uniform grids, complex grid functions, fourth-order stencils and
//! Simpson quadrature.

mod function;
mod grid;
mod quadrature;
mod stencil;

pub use function::GridFunction;
pub use grid::{Grid, MIN_POINTS};
pub use quadrature::{cumulative_integral, inner_product, integrate, l2_norm, normalize};
pub use stencil::derivative;
