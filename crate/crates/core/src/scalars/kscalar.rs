use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{Float, FloatConst, One, Zero};

use super::ExactField;
use crate::{Error, Result};

/// A Gaussian rational `re + im·i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gaussian<R> {
    pub re: R,
    pub im: R,
}

impl<R: ExactField> Gaussian<R> {
    pub fn new(re: R, im: R) -> Self {
        Self { re, im }
    }

    pub fn real(re: R) -> Self {
        Self { re, im: R::zero() }
    }

    pub fn i() -> Self {
        Self { re: R::zero(), im: R::one() }
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn norm_sqr(&self) -> R {
        self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone()
    }

    pub fn inv(&self) -> Result<Self> {
        let d = self.norm_sqr();
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self { re: self.re.clone() / d.clone(), im: -self.im.clone() / d })
    }

    pub fn scale(&self, r: &R) -> Self {
        Self { re: self.re.clone() * r.clone(), im: self.im.clone() * r.clone() }
    }

    pub fn to_complex<T: Float>(&self) -> Complex<T> {
        Complex::new(T::from(self.re.to_f64()).unwrap(), T::from(self.im.to_f64()).unwrap())
    }
}

impl<R: ExactField> Zero for Gaussian<R> {
    fn zero() -> Self {
        Self { re: R::zero(), im: R::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl<R: ExactField> One for Gaussian<R> {
    fn one() -> Self {
        Self::real(R::one())
    }
}

impl<R: ExactField> Add for Gaussian<R> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self { re: self.re + o.re, im: self.im + o.im }
    }
}

impl<R: ExactField> Sub for Gaussian<R> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self { re: self.re - o.re, im: self.im - o.im }
    }
}

impl<R: ExactField> Mul for Gaussian<R> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self {
            re: self.re.clone() * o.re.clone() - self.im.clone() * o.im.clone(),
            im: self.re * o.im + self.im * o.re,
        }
    }
}

impl<R: ExactField> Neg for Gaussian<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Self { re: -self.re, im: -self.im }
    }
}

impl<R: ExactField> fmt::Display for Gaussian<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let re0 = self.re.is_zero();
        let im0 = self.im.is_zero();
        match (re0, im0) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => {
                if self.im.is_one() {
                    write!(f, "I")
                } else if (-self.im.clone()).is_one() {
                    write!(f, "-I")
                } else {
                    write!(f, "{}*I", self.im)
                }
            }
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                let mag = self.im.abs();
                if mag.is_one() {
                    write!(f, "({} {} I)", self.re, sign)
                } else {
                    write!(f, "({} {} {}*I)", self.re, sign, mag)
                }
            }
        }
    }
}

/// Exact coefficient: a finite sum `Σ g_e · π^{e/2}` with Gaussian rational
/// `g_e`. Keys are twice the π-exponent so that √π is representable.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KScalar<R> {
    terms: BTreeMap<i32, Gaussian<R>>,
}

impl<R: ExactField> KScalar<R> {
    pub fn from_gaussian(g: Gaussian<R>) -> Self {
        Self::monomial(g, 0)
    }

    /// `g · π^{half_exp/2}`.
    pub fn monomial(g: Gaussian<R>, half_exp: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !g.is_zero() {
            terms.insert(half_exp, g);
        }
        Self { terms }
    }

    pub fn int(v: i64) -> Self {
        Self::from_gaussian(Gaussian::real(R::from_int(v)))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Self::from_gaussian(Gaussian::real(R::from_frac(n, d)))
    }

    pub fn rational(r: R) -> Self {
        Self::from_gaussian(Gaussian::real(r))
    }

    pub fn i() -> Self {
        Self::from_gaussian(Gaussian::i())
    }

    /// `π^{half_exp/2}`.
    pub fn pi_pow(half_exp: i32) -> Self {
        Self::monomial(Gaussian::one(), half_exp)
    }

    pub fn pi() -> Self {
        Self::pi_pow(2)
    }

    /// Entries as `(2·exponent, coefficient)`, ascending in exponent.
    pub fn entries(&self) -> impl Iterator<Item = (i32, &Gaussian<R>)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    /// The single `(half_exp, coefficient)` pair when this is a π-monomial.
    pub fn as_monomial(&self) -> Option<(i32, &Gaussian<R>)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(k, v)| (*k, v))
        } else {
            None
        }
    }

    /// Coefficient of π⁰ when no other power is present.
    pub fn as_gaussian(&self) -> Option<Gaussian<R>> {
        match self.as_monomial() {
            None if self.is_zero() => Some(Gaussian::zero()),
            Some((0, g)) => Some(g.clone()),
            _ => None,
        }
    }

    /// `true` when every π-exponent present is an integer.
    pub fn has_integer_pi_powers(&self) -> bool {
        self.terms.keys().all(|k| k % 2 == 0)
    }

    /// Set of twice-exponents present.
    pub fn half_exponents(&self) -> Vec<i32> {
        self.terms.keys().copied().collect()
    }

    pub fn scale(&self, g: &Gaussian<R>) -> Self {
        let mut out = BTreeMap::new();
        for (k, v) in &self.terms {
            let p = v.clone() * g.clone();
            if !p.is_zero() {
                out.insert(*k, p);
            }
        }
        Self { terms: out }
    }

    pub fn scale_int(&self, v: i64) -> Self {
        self.scale(&Gaussian::real(R::from_int(v)))
    }

    pub fn conj(&self) -> Self {
        Self { terms: self.terms.iter().map(|(k, v)| (*k, v.conj())).collect() }
    }

    /// Exact division; the divisor must be a single π-power.
    pub fn checked_div(&self, d: &Self) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (e, g) = d.as_monomial().ok_or_else(|| Error::NonMonomialDivisor(d.to_string()))?;
        let inv = g.inv()?;
        let mut out = BTreeMap::new();
        for (k, v) in &self.terms {
            out.insert(k - e, v.clone() * inv.clone());
        }
        Ok(Self { terms: out })
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Numeric value with π evaluated in `T`.
    pub fn to_complex<T: Float + FloatConst>(&self) -> Complex<T> {
        let mut acc = Complex::new(T::zero(), T::zero());
        for (k, v) in &self.terms {
            let half = T::from(*k).unwrap() / T::from(2.0).unwrap();
            let w = T::PI().powf(half);
            acc = acc + v.to_complex::<T>() * w;
        }
        acc
    }
}

impl<R: ExactField> Zero for KScalar<R> {
    fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<R: ExactField> One for KScalar<R> {
    fn one() -> Self {
        Self::int(1)
    }
}

impl<'a, R: ExactField> Add<&'a KScalar<R>> for &'a KScalar<R> {
    type Output = KScalar<R>;
    fn add(self, o: &KScalar<R>) -> KScalar<R> {
        let mut out = self.terms.clone();
        for (k, v) in &o.terms {
            let s = match out.remove(k) {
                Some(a) => a + v.clone(),
                None => v.clone(),
            };
            if !s.is_zero() {
                out.insert(*k, s);
            }
        }
        KScalar { terms: out }
    }
}

impl<'a, R: ExactField> Mul<&'a KScalar<R>> for &'a KScalar<R> {
    type Output = KScalar<R>;
    fn mul(self, o: &KScalar<R>) -> KScalar<R> {
        let mut out: BTreeMap<i32, Gaussian<R>> = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let p = x.clone() * y.clone();
                let e = out.entry(a + b).or_insert_with(Gaussian::zero);
                *e = e.clone() + p;
            }
        }
        out.retain(|_, v| !v.is_zero());
        KScalar { terms: out }
    }
}

impl<R: ExactField> Neg for &KScalar<R> {
    type Output = KScalar<R>;
    fn neg(self) -> KScalar<R> {
        KScalar { terms: self.terms.iter().map(|(k, v)| (*k, -v.clone())).collect() }
    }
}

impl<'a, R: ExactField> Sub<&'a KScalar<R>> for &'a KScalar<R> {
    type Output = KScalar<R>;
    fn sub(self, o: &KScalar<R>) -> KScalar<R> {
        self + &(-o)
    }
}

impl<R: ExactField> Add for KScalar<R> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        &self + &o
    }
}

impl<R: ExactField> Sub for KScalar<R> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        &self - &o
    }
}

impl<R: ExactField> Mul for KScalar<R> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        &self * &o
    }
}

impl<R: ExactField> Neg for KScalar<R> {
    type Output = Self;
    fn neg(self) -> Self {
        -&self
    }
}

impl<R: ExactField> AddAssign<&KScalar<R>> for KScalar<R> {
    fn add_assign(&mut self, o: &KScalar<R>) {
        *self = &*self + o;
    }
}

impl<R: ExactField> fmt::Display for KScalar<R> {
    /// Canonical rendering, e.g. `(-7/12 - 5/12*I)*PI^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (k, g)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            match *k {
                0 => write!(f, "{g}")?,
                2 => write!(f, "{g}*PI")?,
                k if k % 2 == 0 => write!(f, "{g}*PI^{}", k / 2)?,
                k => write!(f, "{g}*PI^({k}/2)")?,
            }
        }
        Ok(())
    }
}

/// Γ(k) for positive `k = twice_k / 2`, exactly: rational for integers,
/// rational times √π for half-integers.
pub fn gamma_half<R: ExactField>(twice_k: i32) -> Result<KScalar<R>> {
    if twice_k <= 0 {
        return Err(Error::GammaDomain(format!("{twice_k}/2")));
    }
    let (mut acc, mut at) = if twice_k % 2 == 0 {
        (KScalar::<R>::one(), 2)
    } else {
        (KScalar::<R>::pi_pow(1), 1)
    };
    // Γ(x+1) = x Γ(x)
    while at < twice_k {
        acc = acc.scale(&Gaussian::real(R::from_frac(at as i64, 2)));
        at += 2;
    }
    Ok(acc)
}
