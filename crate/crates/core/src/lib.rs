//! Spectra of the power-law and logarithmic central potentials in `N`
//! dimensions, the semiclassical P-representation of their eigenvalues,
//! generalized comparison machinery for crossing potentials, and the
//! spectral bounds that follow from it.
//!
//! Module map:
//!
//! * [`exact`]: closed-form spectra (hydrogenic, oscillator, linear via Airy zeros).
//! * [`airy`]: Airy function evaluation and zeros.
//! * [`potential`] and [`radial`]: the potential family and the shooting eigensolver.
//! * [`prep`]: the kinetic-potential function `g(P, q)`, its inverse, `Z(q)` and `Q(q)`.
//! * [`comparison`]: crossings, the `k(r)` functional and the crossing construction.
//! * [`bounds`]: envelope and Q-sharpened bounds, sum-of-powers lower bound.
//! * [`datasets`]: batch sweeps (reference table, P/Q curves, bound datasets, verification grids).

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod airy;
pub mod bounds;
pub mod comparison;
pub mod datasets;
mod error;
pub mod exact;
pub mod minimize;
pub mod potential;
pub mod prep;
pub mod quadrature;
pub mod radial;
pub mod sweep;

pub use error::{Error, Result};
pub use exact::StateLabel;
pub use potential::{Potential, PotentialKind, PotentialSpec};
pub use radial::{EigenResult, SolverConfig};
