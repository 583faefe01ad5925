//! Exact arithmetic for generalized permutahedra written as signed Minkowski
//! sums of standard simplices `Σ_I y_I Δ_I`.
//!
//! * [`setfun`]: subsets as bitmasks, dense rational set functions and the
//!   zeta/Möbius pair linking y-coefficients and facet right-hand sides z.
//! * [`genperm`]: validity of a y-vector, supermodularity of a z-vector,
//!   vertices, faces, and brute-force lattice points.
//! * [`functionals`]: the cone of positive translation-invariant Minkowski
//!   linear functionals, its symmetric subcone and the nonnegativity
//!   certificate for the Ehrhart linear coefficient.
//! * [`lattice`]: lattice-point counting formula, Ehrhart polynomials, `E_1`.
//! * [`matroid`]: beta invariants and matroid (independence) polytopes.
//! * [`solidangle`]: the dimension-4 solid-angle example with a negative
//!   linear coefficient.
//! * [`json`]: the JSON exchange formats.

pub mod error;
pub mod functionals;
pub mod genperm;
pub mod json;
pub mod lattice;
mod linalg;
mod lp;
pub mod matroid;
pub mod setfun;
pub mod solidangle;

pub use error::{Error, Result};
pub use genperm::{GenPermRep, Validation};
pub use setfun::{SetFunction, SubsetMask};

/// Exact rational number, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integral [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
