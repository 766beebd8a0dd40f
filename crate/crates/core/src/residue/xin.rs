use std::fmt;

use num_traits::{One, Zero};

use super::Poly;
use crate::scalars::{ExactField, Gaussian, KScalar};

/// `num(ξₙ) / ((ξₙ - i)^p (ξₙ + i)^q)`, with no common root between the
/// numerator and the denominator factors.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct XiNRational<R> {
    num: Poly<R>,
    p: u32,
    q: u32,
}

fn root_plus<R: ExactField>() -> Gaussian<R> {
    Gaussian::i()
}

fn root_minus<R: ExactField>() -> Gaussian<R> {
    -Gaussian::i()
}

impl<R: ExactField> XiNRational<R> {
    pub fn new(num: Poly<R>, p: u32, q: u32) -> Self {
        let mut out = Self { num, p, q };
        out.cancel();
        out
    }

    pub fn zero() -> Self {
        Self { num: Poly::zero(), p: 0, q: 0 }
    }

    pub fn poly(num: Poly<R>) -> Self {
        Self { num, p: 0, q: 0 }
    }

    pub fn constant(c: KScalar<R>) -> Self {
        Self::poly(Poly::constant(c))
    }

    /// `c · ξₙ^k`.
    pub fn monomial(c: KScalar<R>, k: usize) -> Self {
        Self::poly(Poly::monomial(c, k))
    }

    /// `(1 + ξₙ²)^{-m}`.
    pub fn inv_one_plus_sq(m: u32) -> Self {
        Self::new(Poly::constant(KScalar::one()), m, m)
    }

    pub fn num(&self) -> &Poly<R> {
        &self.num
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.p == 0 && self.q == 0
    }

    /// Numerator degree minus denominator degree; `None` for zero.
    pub fn excess(&self) -> Option<i64> {
        self.num.degree().map(|d| d as i64 - (self.p + self.q) as i64)
    }

    fn cancel(&mut self) {
        if self.num.is_zero() {
            self.p = 0;
            self.q = 0;
            return;
        }
        for (root, pow) in [(root_plus::<R>(), &mut self.p), (root_minus::<R>(), &mut self.q)] {
            while *pow > 0 && self.num.eval(&root).is_zero() {
                self.num = self.num.deflate(&root);
                *pow -= 1;
            }
        }
    }

    /// Numerator after raising the denominator to `(p, q)`.
    fn lifted(&self, p: u32, q: u32) -> Poly<R> {
        let up = Poly::linear(root_plus::<R>()).pow(p - self.p);
        let uq = Poly::linear(root_minus::<R>()).pow(q - self.q);
        self.num.mul(&up).mul(&uq)
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let p = self.p.max(o.p);
        let q = self.q.max(o.q);
        Self::new(self.lifted(p, q).add(&o.lifted(p, q)), p, q)
    }

    pub fn neg(&self) -> Self {
        Self { num: self.num.neg(), p: self.p, q: self.q }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.num.mul(&o.num), self.p + o.p, self.q + o.q)
    }

    pub fn scale(&self, c: &KScalar<R>) -> Self {
        Self::new(self.num.scale(c), self.p, self.q)
    }

    /// Multiplication by `(ξₙ - i)^{-a} (ξₙ + i)^{-b}`.
    pub fn div_factors(&self, a: u32, b: u32) -> Self {
        Self::new(self.num.clone(), self.p + a, self.q + b)
    }

    /// `d/dξₙ`.
    pub fn derivative(&self) -> Self {
        if self.is_polynomial() {
            return Self::poly(self.num.derivative());
        }
        // (N/D)' = (N' (ξ-i)(ξ+i) - p N (ξ+i) - q N (ξ-i)) / ((ξ-i)^{p+1} (ξ+i)^{q+1})
        let lp = Poly::linear(root_plus::<R>());
        let lq = Poly::linear(root_minus::<R>());
        let a = self.num.derivative().mul(&lp).mul(&lq);
        let b = self.num.mul(&lq).scale(&KScalar::int(self.p as i64));
        let c = self.num.mul(&lp).scale(&KScalar::int(self.q as i64));
        Self::new(a.sub(&b).sub(&c), self.p + 1, self.q + 1)
    }

    /// Laurent coefficients `c_0 .. c_{len-1}` of `N(root+u) · (root - other + u)^{-m}`
    /// about `u = 0`, where `m` is the power of the other factor.
    pub(crate) fn local_series(&self, at_plus: bool, len: usize) -> Vec<KScalar<R>> {
        let (root, m) = if at_plus { (root_plus::<R>(), self.q) } else { (root_minus::<R>(), self.p) };
        // distance to the other root: 2i at +i, -2i at -i
        let two_i = Gaussian::new(R::zero(), R::from_int(if at_plus { 2 } else { -2 }));
        let inv = two_i.inv().expect("nonzero");
        let shifted = self.num.shift(&root);
        // (d + u)^{-m} = d^{-m} Σ_k binom(-m, k) (u/d)^k
        let mut series = Vec::with_capacity(len);
        let mut dk = Gaussian::one();
        for _ in 0..m {
            dk = dk * inv.clone();
        }
        let mut binom = R::one();
        for k in 0..len {
            series.push(KScalar::from_gaussian(dk.scale(&binom)));
            // binom(-m, k+1) = binom(-m, k) · (-m - k) / (k + 1)
            binom = binom * R::from_frac(-(m as i64) - k as i64, k as i64 + 1);
            dk = dk * inv.clone();
        }
        (0..len)
            .map(|k| (0..=k).fold(KScalar::zero(), |acc, j| &acc + &(&shifted.coeff(j) * &series[k - j])))
            .collect()
    }

    pub fn eval(&self, x: &Gaussian<R>) -> Option<KScalar<R>> {
        let d = Poly::linear(root_plus::<R>()).pow(self.p).mul(&Poly::linear(root_minus::<R>()).pow(self.q)).eval(x);
        let (e, g) = d.as_monomial()?;
        if e != 0 {
            return None;
        }
        Some(self.num.eval(x).scale(&g.inv().ok()?))
    }
}

impl<R: ExactField> fmt::Display for XiNRational<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.num)?;
        match (self.p, self.q) {
            (0, 0) => Ok(()),
            (p, 0) => write!(f, "/(xin-I)^{p}"),
            (0, q) => write!(f, "/(xin+I)^{q}"),
            (p, q) => write!(f, "/((xin-I)^{p}*(xin+I)^{q})"),
        }
    }
}
