//! Minimum-uncertainty coherent states of exactly solvable
//! position-dependent-mass Schrödinger equations.
//!
//! The pipeline is:
//!
//! 1. pick a [`MassProfile`] and a [`ReferenceOscillator`] to form a
//!    [`PdmProblem`];
//! 2. obtain PDM eigenfunctions and energies through the point canonical
//!    transformation ([`pct`]);
//! 3. build the deformed ladder operators ([`ladder`]);
//! 4. construct coherent states and check their uncertainty budget
//!    ([`coherent`]);
//! 5. confirm the spectrum independently with a finite-difference oracle
//!    ([`spectral`]).
//!
//! Everything is generic over the float type through [`Real`]; the `*64`
//! aliases below fix it to `f64`.
//!
//! ```
//! use pdm_coherent::coherent::{make_coherent, uncertainty_report};
//! use pdm_coherent::pct::working_grid;
//! use pdm_coherent::{build_ladder, Complex64, MassProfile, PdmProblem, ProfileKind, ReferenceOscillator};
//!
//! # fn main() -> pdm_coherent::Result<()> {
//! let problem = PdmProblem::new(MassProfile::new(ProfileKind::Case1, 2.0)?, ReferenceOscillator::Harmonic);
//! let ladder = build_ladder(&problem)?;
//! let grid = working_grid(&problem, 4001)?;
//! let state = make_coherent(&ladder, Complex64::new(0.3, 0.2), &grid)?;
//! let u = uncertainty_report(&state, &ladder)?;
//! assert!((u.product - 0.25).abs() < 1e-8);
//! # Ok(())
//! # }
//! ```

// `!(x > 0)` style guards are used on purpose: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod coherent;
pub mod error;
pub mod ladder;
pub mod mass;
pub mod numerics;
pub mod pct;
pub mod scalar;
pub mod spectral;

pub use coherent::{CoherentAnalysis, CoherentState, DisplacementReport, UncertaintyReport};
pub use error::{Error, Result};
pub use ladder::{build_ladder, LadderSystem};
pub use mass::{MassProfile, ProfileKind};
pub use numerics::{Grid, GridFunction};
pub use pct::{PdmProblem, ReferenceOscillator};
pub use scalar::{Cplx, Real};
pub use spectral::DiscreteHamiltonian;

pub type Grid64 = Grid<f64>;
pub type GridFunction64 = GridFunction<f64>;
pub type MassProfile64 = MassProfile<f64>;
pub type PdmProblem64 = PdmProblem<f64>;
pub type LadderSystem64 = LadderSystem<f64>;
pub type CoherentState64 = CoherentState<f64>;
pub type UncertaintyReport64 = UncertaintyReport<f64>;
pub type DiscreteHamiltonian64 = DiscreteHamiltonian<f64>;
pub type Complex64 = num_complex::Complex64;
