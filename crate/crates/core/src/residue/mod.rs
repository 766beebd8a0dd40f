//! The analytic kernel: half-plane projections, real-line ξₙ integrals by
//! residues at `ξₙ = i`, unit-sphere moments, and floating-point oracles.

mod contract;
mod hardy;
pub mod oracle;
mod poly;
mod sphere;
mod xin;

pub use contract::{contract_indices, sphere_integrate};
pub use hardy::{hardy_split, integrate_xin, pi_minus, pi_plus, pi_prime, residue_at_i, HardySplit};
pub use poly::Poly;
pub use sphere::{perfect_matchings, sphere_moment, sphere_volume, tensor_moment};
pub use xin::XiNRational;
