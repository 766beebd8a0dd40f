use num_traits::Zero;

use crate::scalars::{gamma_half, ExactField, Gaussian, KScalar};
use crate::Result;

/// `∫_{S^{n-2}} Π_i ξ_i^{a_i} dσ` over the unit sphere of the tangent
/// covector space `ℝ^{n-1}`. Missing exponents are zero.
///
/// Uses `2 Π Γ((a_i+1)/2) / Γ((|a| + n - 1)/2)`; odd moments vanish.
pub fn sphere_moment<R: ExactField>(exponents: &[u32], n: u8) -> Result<KScalar<R>> {
    let m = n as usize - 1;
    assert!(exponents.len() <= m, "more exponents than tangent directions");
    if exponents.iter().any(|a| a % 2 == 1) {
        return Ok(KScalar::zero());
    }
    let mut num = KScalar::int(2);
    let mut total = 0i32;
    for i in 0..m {
        let a = exponents.get(i).copied().unwrap_or(0) as i32;
        total += a;
        num = &num * &gamma_half::<R>(a + 1)?;
    }
    num.checked_div(&gamma_half::<R>(total + m as i32)?)
}

/// Constant `C_k` in `∫ ξ_{i_1} ... ξ_{i_{2k}} dσ = C_k Σ_{matchings} Π δ`,
/// `C_k = 2 π^{m/2} / (2^k Γ(m/2 + k))` with `m = n - 1`.
pub fn tensor_moment<R: ExactField>(k: u32, n: u8) -> Result<KScalar<R>> {
    let m = n as i32 - 1;
    let num = KScalar::<R>::pi_pow(m).scale(&Gaussian::real(R::from_int(2)));
    let den = gamma_half::<R>(m + 2 * k as i32)?.scale(&Gaussian::real(R::from_int(1i64 << k)));
    num.checked_div(&den)
}

/// All perfect matchings of `0..len` (empty for odd `len`).
pub fn perfect_matchings(len: usize) -> Vec<Vec<(usize, usize)>> {
    fn go(rest: &[usize], acc: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        let Some((&first, tail)) = rest.split_first() else {
            out.push(acc.clone());
            return;
        };
        for (pos, &partner) in tail.iter().enumerate() {
            let remaining: Vec<usize> = tail.iter().enumerate().filter(|(i, _)| *i != pos).map(|(_, v)| *v).collect();
            acc.push((first, partner));
            go(&remaining, acc, out);
            acc.pop();
        }
    }
    if len % 2 == 1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    go(&(0..len).collect::<Vec<_>>(), &mut Vec::new(), &mut out);
    out
}

/// Volume of the unit sphere in `ℝ^{n-1}`.
pub fn sphere_volume<R: ExactField>(n: u8) -> Result<KScalar<R>> {
    tensor_moment(0, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Rational, K};

    #[test]
    fn known_moments() {
        assert_eq!(sphere_moment::<Rational>(&[2], 4).unwrap(), &K::frac(4, 3) * &K::pi());
        assert_eq!(sphere_moment::<Rational>(&[1, 1], 4).unwrap(), K::zero());
        assert_eq!(sphere_moment::<Rational>(&[], 4).unwrap(), &K::int(4) * &K::pi());
        assert_eq!(sphere_moment::<Rational>(&[2], 3).unwrap(), K::pi());
        assert_eq!(sphere_moment::<Rational>(&[], 3).unwrap(), &K::int(2) * &K::pi());
    }

    #[test]
    fn matchings_count() {
        assert_eq!(perfect_matchings(0).len(), 1);
        assert_eq!(perfect_matchings(4).len(), 3);
        assert_eq!(perfect_matchings(6).len(), 15);
        assert!(perfect_matchings(3).is_empty());
    }

    #[test]
    fn tensor_route_agrees_with_gamma_formula() {
        for n in 3..=6u8 {
            for exps in [vec![2], vec![4], vec![2, 2], vec![2, 2, 0], vec![4, 2], vec![6]] {
                if exps.len() > n as usize - 1 {
                    continue;
                }
                let deg: u32 = exps.iter().sum();
                let k = deg / 2;
                // count matchings of the index list that pair equal indices
                let idx: Vec<usize> = exps.iter().enumerate().flat_map(|(i, &a)| std::iter::repeat_n(i, a as usize)).collect();
                let count = perfect_matchings(idx.len()).iter().filter(|mt| mt.iter().all(|(a, b)| idx[*a] == idx[*b])).count();
                let via_tensor = tensor_moment::<Rational>(k, n).unwrap().scale_int(count as i64);
                assert_eq!(via_tensor, sphere_moment::<Rational>(&exps, n).unwrap(), "n={n} exps={exps:?}");
            }
        }
    }
}
