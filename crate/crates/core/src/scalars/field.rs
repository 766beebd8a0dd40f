use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, One, Signed, ToPrimitive};

/// An exact ordered field of rationals.
///
/// Implemented for `BigRational` and the fixed-width `Ratio<i64>` /
/// `Ratio<i128>`; the fixed-width variants are convenient for tests but may
/// overflow on long pipelines.
pub trait ExactField:
    Clone + Debug + Display + PartialEq + Eq + PartialOrd + Ord + Hash + Num + Signed + Send + Sync + 'static
{
    fn from_int(v: i64) -> Self;
    fn from_frac(n: i64, d: i64) -> Self;
    fn to_f64(&self) -> f64;
    /// `true` when the value is an integer.
    fn is_integral(&self) -> bool;
}

macro_rules! impl_fixed {
    ($t:ty) => {
        impl ExactField for Ratio<$t> {
            fn from_int(v: i64) -> Self {
                Ratio::from_integer(v as $t)
            }
            fn from_frac(n: i64, d: i64) -> Self {
                Ratio::new(n as $t, d as $t)
            }
            fn to_f64(&self) -> f64 {
                *self.numer() as f64 / *self.denom() as f64
            }
            fn is_integral(&self) -> bool {
                self.denom().is_one()
            }
        }
    };
}

impl_fixed!(i64);
impl_fixed!(i128);

impl ExactField for BigRational {
    fn from_int(v: i64) -> Self {
        Ratio::from_integer(BigInt::from(v))
    }
    fn from_frac(n: i64, d: i64) -> Self {
        Ratio::new(BigInt::from(n), BigInt::from(d))
    }
    fn to_f64(&self) -> f64 {
        match (self.numer().to_f64(), self.denom().to_f64()) {
            (Some(n), Some(d)) => n / d,
            _ => f64::NAN,
        }
    }
    fn is_integral(&self) -> bool {
        self.denom().is_one()
    }
}
