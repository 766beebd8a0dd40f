//! Exact coefficients and the jet variables evaluated at the boundary point.

mod field;
mod jet;
mod kscalar;

pub use field::ExactField;
pub use jet::{sym_name, Aggregate, Field, Idx, JetAtom, JetMonomial, Opaque};
pub use kscalar::{gamma_half, Gaussian, KScalar};
