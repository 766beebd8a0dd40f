//! Clifford algebra of an orthonormal frame, `e_i e_j + e_j e_i = -2δ_ij`,
//! with the ungraded spinor trace.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::scalars::{ExactField, Gaussian, KScalar};
use crate::{Error, Result};

/// Largest supported frame dimension.
pub const MAX_DIM: u8 = 31;

/// A canonically ordered product `e_{g1} e_{g2} ...` of distinct generators,
/// `g1 < g2 < ...`. The empty word is the identity.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct CliffordWord {
    bits: u32,
}

impl CliffordWord {
    pub fn one() -> Self {
        Self { bits: 0 }
    }

    /// The generator `e_j`, `1 <= j <= MAX_DIM`.
    pub fn gen(j: u8) -> Self {
        assert!((1..=MAX_DIM).contains(&j), "generator index {j} out of range");
        Self { bits: 1 << (j - 1) }
    }

    /// Canonical word together with the sign from reordering `gens`.
    pub fn from_product(gens: &[u8]) -> (i8, Self) {
        gens.iter().fold((1, Self::one()), |(s, w), &g| {
            let (t, w) = w.mul(&Self::gen(g));
            (s * t, w)
        })
    }

    pub fn is_one(&self) -> bool {
        self.bits == 0
    }

    pub fn len(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn generators(&self) -> Vec<u8> {
        (1..=MAX_DIM).filter(|&j| self.bits & (1 << (j - 1)) != 0).collect()
    }

    pub fn max_index(&self) -> u8 {
        32 - self.bits.leading_zeros() as u8
    }

    /// Product of two canonical words: `(sign, word)`.
    pub fn mul(&self, o: &Self) -> (i8, Self) {
        let mut acc = self.bits;
        let mut sign = 1i8;
        let mut rest = o.bits;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            rest &= rest - 1;
            // move e_g left past every generator of acc above it
            let above = acc & !((bit << 1).wrapping_sub(1));
            if above.count_ones() % 2 == 1 {
                sign = -sign;
            }
            if acc & bit != 0 {
                sign = -sign;
                acc &= !bit;
            } else {
                acc |= bit;
            }
        }
        (sign, Self { bits: acc })
    }
}

impl PartialOrd for CliffordWord {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CliffordWord {
    /// Shorter words first, then lexicographic in generators.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len().cmp(&other.len()).then_with(|| self.generators().cmp(&other.generators()))
    }
}

impl fmt::Display for CliffordWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.generators().iter().map(|g| format!("e{g}")).collect();
        f.write_str(&parts.join("*"))
    }
}

/// A finite linear combination of Clifford words.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CliffordExpr<R> {
    terms: BTreeMap<CliffordWord, KScalar<R>>,
}

impl<R: ExactField> Default for CliffordExpr<R> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

impl<R: ExactField> CliffordExpr<R> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn scalar(k: KScalar<R>) -> Self {
        Self::word(CliffordWord::one(), k)
    }

    pub fn word(w: CliffordWord, k: KScalar<R>) -> Self {
        let mut terms = BTreeMap::new();
        if !k.is_zero() {
            terms.insert(w, k);
        }
        Self { terms }
    }

    pub fn gen(j: u8) -> Self {
        Self::word(CliffordWord::gen(j), KScalar::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CliffordWord, &KScalar<R>)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &CliffordWord) -> KScalar<R> {
        self.terms.get(w).cloned().unwrap_or_else(KScalar::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (w, k) in &o.terms {
            out.add_term(*w, k.clone());
        }
        out
    }

    pub fn add_term(&mut self, w: CliffordWord, k: KScalar<R>) {
        let s = match self.terms.remove(&w) {
            Some(a) => &a + &k,
            None => k,
        };
        if !s.is_zero() {
            self.terms.insert(w, s);
        }
    }

    pub fn scale(&self, k: &KScalar<R>) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_term(*w, c * k);
        }
        out
    }

    fn check(&self, n: u8) -> Result<()> {
        match self.terms.keys().find(|w| w.max_index() > n) {
            Some(w) => Err(Error::Chart(format!("Clifford word {w} exceeds dimension {n}"))),
            None => Ok(()),
        }
    }

    /// Product in the Clifford algebra of an `n`-dimensional frame.
    pub fn mul(&self, o: &Self, n: u8) -> Result<Self> {
        self.check(n)?;
        o.check(n)?;
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let (s, w) = a.mul(b);
                let p = x * y;
                out.add_term(w, if s < 0 { -p } else { p });
            }
        }
        Ok(out)
    }

    /// Ungraded trace on the `2^⌊n/2⌋`-dimensional spinor module: every
    /// nonempty canonical word is traceless.
    pub fn spinor_trace(&self, n: u8) -> KScalar<R> {
        self.coefficient(&CliffordWord::one()).scale(&Gaussian::real(R::from_int(spinor_dim(n))))
    }
}

/// `2^⌊n/2⌋`.
pub fn spinor_dim(n: u8) -> i64 {
    1i64 << (n / 2)
}

impl<R: ExactField> fmt::Display for CliffordExpr<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, k)| format!("({k})*{w}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::K;
    use proptest::prelude::*;

    type Cl = CliffordExpr<crate::Rational>;

    fn w(gens: &[u8]) -> Cl {
        let (s, word) = CliffordWord::from_product(gens);
        Cl::word(word, K::int(s as i64))
    }

    #[test]
    fn relations() {
        assert_eq!(w(&[1]).mul(&w(&[1]), 4).unwrap(), Cl::scalar(K::int(-1)));
        assert_eq!(w(&[2, 1]), w(&[1, 2]).scale(&K::int(-1)));
        assert_eq!(w(&[1, 2]).mul(&w(&[2, 3]), 4).unwrap(), w(&[1, 3]).scale(&K::int(-1)));
    }

    #[test]
    fn traces() {
        assert_eq!(Cl::scalar(K::int(1)).spinor_trace(4), K::int(4));
        assert!(w(&[1, 2]).spinor_trace(4).is_zero());
        assert!(w(&[1, 2, 3, 4]).spinor_trace(4).is_zero());
        for (n, d) in [(2, 2), (3, 2), (4, 4), (6, 8)] {
            assert_eq!(Cl::scalar(K::int(1)).spinor_trace(n), K::int(d));
        }
    }

    #[test]
    fn out_of_range_is_a_chart_error() {
        assert!(matches!(w(&[5]).mul(&w(&[1]), 4), Err(Error::Chart(_))));
    }

    #[test]
    fn display() {
        assert_eq!(CliffordWord::from_product(&[3, 1]).1.to_string(), "e1*e3");
        assert_eq!(CliffordWord::one().to_string(), "1");
    }

    fn arb_word(n: u8) -> impl Strategy<Value = Vec<u8>> {
        prop::collection::vec(1..=n, 0..=6)
    }

    proptest! {
        #[test]
        fn anticommutation(a in 1u8..=6, b in 1u8..=6) {
            let lhs = w(&[a]).mul(&w(&[b]), 6).unwrap().add(&w(&[b]).mul(&w(&[a]), 6).unwrap());
            let rhs = if a == b { Cl::scalar(K::int(-2)) } else { Cl::zero() };
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn associative(a in arb_word(6), b in arb_word(6), c in arb_word(6)) {
            let (a, b, c) = (w(&a), w(&b), w(&c));
            let l = a.mul(&b, 6).unwrap().mul(&c, 6).unwrap();
            let r = a.mul(&b.mul(&c, 6).unwrap(), 6).unwrap();
            prop_assert_eq!(l, r);
        }

        #[test]
        fn word_product_matches_concatenation(a in arb_word(6), b in arb_word(6)) {
            let mut cat = a.clone();
            cat.extend(&b);
            prop_assert_eq!(w(&a).mul(&w(&b), 6).unwrap(), w(&cat));
        }

        #[test]
        fn trace_is_cyclic(a in arb_word(5), b in arb_word(5)) {
            let (a, b) = (w(&a), w(&b));
            prop_assert_eq!(a.mul(&b, 5).unwrap().spinor_trace(5), b.mul(&a, 5).unwrap().spinor_trace(5));
        }
    }
}
