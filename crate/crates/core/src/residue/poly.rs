use std::fmt;

use num_traits::{One, Zero};

use crate::scalars::{ExactField, Gaussian, KScalar};

/// Dense polynomial in ξₙ with exact coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly<R> {
    coeffs: Vec<KScalar<R>>,
}

impl<R: ExactField> Poly<R> {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: KScalar<R>) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c · ξₙ^k`.
    pub fn monomial(c: KScalar<R>, k: usize) -> Self {
        let mut coeffs = vec![KScalar::zero(); k];
        coeffs.push(c);
        Self::from_coeffs(coeffs)
    }

    /// `ξₙ - root`.
    pub fn linear(root: Gaussian<R>) -> Self {
        Self::from_coeffs(vec![-KScalar::from_gaussian(root), KScalar::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<KScalar<R>>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[KScalar<R>] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> KScalar<R> {
        self.coeffs.get(k).cloned().unwrap_or_else(KScalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, o: &Self) -> Self {
        let len = self.coeffs.len().max(o.coeffs.len());
        Self::from_coeffs((0..len).map(|k| &self.coeff(k) + &o.coeff(k)).collect())
    }

    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![KScalar::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, c: &KScalar<R>) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::constant(KScalar::one()), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c.scale_int(k as i64)).collect())
    }

    pub fn eval(&self, x: &Gaussian<R>) -> KScalar<R> {
        let x = KScalar::from_gaussian(x.clone());
        self.coeffs.iter().rev().fold(KScalar::zero(), |acc, c| &(&acc * &x) + c)
    }

    /// The polynomial `u ↦ self(root + u)`.
    pub fn shift(&self, root: &Gaussian<R>) -> Self {
        let r = KScalar::from_gaussian(root.clone());
        let mut out = Self::zero();
        // Horner in u: p(root + u) = (...(c_d (root+u) + c_{d-1}) ...)
        let lin = Self::from_coeffs(vec![r, KScalar::one()]);
        for c in self.coeffs.iter().rev() {
            out = out.mul(&lin).add(&Self::constant(c.clone()));
        }
        out
    }

    /// Quotient by `ξₙ - root`, assuming the remainder vanishes.
    pub fn deflate(&self, root: &Gaussian<R>) -> Self {
        let r = KScalar::from_gaussian(root.clone());
        let d = match self.degree() {
            None | Some(0) => return Self::zero(),
            Some(d) => d,
        };
        let mut q = vec![KScalar::zero(); d];
        let mut carry = KScalar::zero();
        for k in (1..=d).rev() {
            carry = &(&carry * &r) + &self.coeffs[k];
            q[k - 1] = carry.clone();
        }
        Self::from_coeffs(q)
    }

    pub fn map_coeffs(&self, f: impl Fn(&KScalar<R>) -> KScalar<R>) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(f).collect())
    }
}

impl<R: ExactField> fmt::Display for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            parts.push(match k {
                0 => format!("({c})"),
                1 => format!("({c})*xin"),
                k => format!("({c})*xin^{k}"),
            });
        }
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Gauss, K};

    type P = Poly<crate::Rational>;

    #[test]
    fn shift_and_deflate() {
        // (ξ - i)(ξ + 2)
        let i = Gauss::i();
        let two = Gauss::real(crate::Rational::from_int(-2));
        let p = P::linear(i.clone()).mul(&P::linear(two.clone()));
        assert!(p.eval(&i).is_zero());
        assert_eq!(p.deflate(&i), P::linear(two.clone()));
        let s = p.shift(&i);
        assert_eq!(s.coeff(0), K::zero());
        assert_eq!(s.degree(), Some(2));
        assert_eq!(s.shift(&(-i)), p);
    }

    #[test]
    fn derivative_of_power() {
        let x = P::monomial(K::int(1), 1);
        let p = x.add(&P::constant(K::int(1))).pow(3);
        let dp = x.add(&P::constant(K::int(1))).pow(2).scale(&K::int(3));
        assert_eq!(p.derivative(), dp);
    }
}
