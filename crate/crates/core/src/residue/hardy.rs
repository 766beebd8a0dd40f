use num_traits::{One, Zero};

use super::{Poly, XiNRational};
use crate::scalars::{ExactField, Gaussian, KScalar};
use crate::{Error, Result};

/// Decomposition `f = plus + minus + poly`: `plus` collects the partial
/// fractions with poles at `+i`, `minus` those at `-i`.
#[derive(Clone, Debug, PartialEq)]
pub struct HardySplit<R> {
    pub plus: XiNRational<R>,
    pub minus: XiNRational<R>,
    pub poly: Poly<R>,
}

/// Principal part of `f` at `+i` (or `-i`) as a rational function.
fn principal_part<R: ExactField>(f: &XiNRational<R>, at_plus: bool) -> XiNRational<R> {
    let order = if at_plus { f.p() } else { f.q() };
    if order == 0 {
        return XiNRational::zero();
    }
    let c = f.local_series(at_plus, order as usize);
    // Σ_k c_k (ξ - root)^k / (ξ - root)^order
    let root = if at_plus { Gaussian::i() } else { -Gaussian::i() };
    let lin = Poly::linear(root);
    let mut num = Poly::zero();
    let mut pw = Poly::constant(KScalar::one());
    for ck in &c {
        num = num.add(&pw.scale(ck));
        pw = pw.mul(&lin);
    }
    if at_plus {
        XiNRational::new(num, order, 0)
    } else {
        XiNRational::new(num, 0, order)
    }
}

/// Partial-fraction splitting of an arbitrary rational function with poles
/// at `±i`.
pub fn hardy_split<R: ExactField>(f: &XiNRational<R>) -> HardySplit<R> {
    let plus = principal_part(f, true);
    let minus = principal_part(f, false);
    let rest = f.sub(&plus).sub(&minus);
    debug_assert!(rest.is_polynomial(), "remainder after removing principal parts must be polynomial");
    HardySplit { plus, minus, poly: rest.num().clone() }
}

fn require_proper<R: ExactField>(f: &XiNRational<R>) -> Result<()> {
    match f.num().degree() {
        Some(d) if d as u32 >= f.p() + f.q() => Err(Error::ImproperRational { num: d, den: (f.p() + f.q()) as usize }),
        _ => Ok(()),
    }
}

/// Projection onto the part with upper-half-plane poles (`H⁺`), for proper
/// rational functions.
pub fn pi_plus<R: ExactField>(f: &XiNRational<R>) -> Result<XiNRational<R>> {
    require_proper(f)?;
    Ok(principal_part(f, true))
}

/// Complementary projection `f - π⁺f`, for proper rational functions.
pub fn pi_minus<R: ExactField>(f: &XiNRational<R>) -> Result<XiNRational<R>> {
    require_proper(f)?;
    Ok(principal_part(f, false))
}

/// Residue of `f` at `ξₙ = i`.
pub fn residue_at_i<R: ExactField>(f: &XiNRational<R>) -> KScalar<R> {
    if f.p() == 0 {
        return KScalar::zero();
    }
    f.local_series(true, f.p() as usize).pop().unwrap_or_else(KScalar::zero)
}

/// `∫_ℝ f(ξₙ) dξₙ = 2πi · Res_{ξₙ=i} f`.
pub fn integrate_xin<R: ExactField>(f: &XiNRational<R>) -> Result<KScalar<R>> {
    if f.is_zero() {
        return Ok(KScalar::zero());
    }
    let d = f.num().degree().unwrap_or(0);
    let den = (f.p() + f.q()) as usize;
    if d + 2 > den {
        return Err(Error::NonIntegrable { num: d, den });
    }
    let two_pi_i = &(&KScalar::int(2) * &KScalar::i()) * &KScalar::pi();
    Ok(&two_pi_i * &residue_at_i(f))
}

/// `π'f = (1/2π) ∫_ℝ f dξₙ`.
pub fn pi_prime<R: ExactField>(f: &XiNRational<R>) -> Result<KScalar<R>> {
    integrate_xin(f)?.checked_div(&(&KScalar::int(2) * &KScalar::pi()))
}
