//! Exact symbolic engine for spectral Einstein functionals of the twisted
//! Bismut Laplacian.
//!
//! The crate computes noncommutative-residue densities in two settings:
//! interior densities on closed even-dimensional manifolds and boundary
//! densities of the Boutet de Monvel residue in the collar chart of a
//! manifold with boundary. All symbolic work is exact: coefficients live in
//! [`K`], Gaussian rationals times formal half-integer powers of π.
//!
//! The low-level kernels ([`scalars`], [`clifford`], [`residue`]) are generic
//! over the rational field; the symbol calculus above them is instantiated at
//! [`Rational`]. Numeric oracles are generic over `num_traits::Float`.

pub mod calculus;
pub mod cli;
pub mod clifford;
mod error;
pub mod residue;
pub mod scalars;
pub mod symbol;
pub mod wres;

pub use error::{Error, Result};

/// Arbitrary-precision rationals, the field used by the symbolic pipeline.
pub type Rational = num_rational::BigRational;

/// Exact coefficient ring used throughout the symbol calculus.
pub type K = scalars::KScalar<Rational>;

/// Gaussian rational over [`Rational`].
pub type Gauss = scalars::Gaussian<Rational>;

/// Rational functions in ξₙ with poles at ±i, over [`K`].
pub type XiN = residue::XiNRational<Rational>;

/// Polynomials in ξₙ over [`K`].
pub type Poly = residue::Poly<Rational>;

/// Clifford-algebra elements with [`K`] coefficients.
pub type Cl = clifford::CliffordExpr<Rational>;
