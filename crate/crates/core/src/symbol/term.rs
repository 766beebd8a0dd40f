use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::clifford::CliffordWord;
use crate::scalars::{Idx, JetAtom, JetMonomial};
use crate::{Rational, Result, XiN, K};

/// Labels at or above this value are reserved for fresh open indices.
pub const FRESH_BASE: u16 = 1000;

/// Representation mode of a symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    /// `|ξ|^{-2k}` kept symbolic; ξₙ factors are polynomial.
    ChartFree,
    /// Evaluated on `|ξ'| = 1`; ξₙ dependence is a rational function with
    /// poles at `±i`.
    Restricted,
}

/// One summand: `xin(ξₙ) · jet · Π ξ_idx^e · |ξ|^{-2 norm_pow} · cl`.
///
/// The numeric coefficient lives in `xin`. Tangential ξ factors are keyed by
/// symbolic or literal tangent indices; ξₙ never appears in `xi`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    pub jet: JetMonomial,
    pub xi: BTreeMap<Idx, u32>,
    pub norm_pow: i32,
    pub cl: CliffordWord,
    pub xin: XiN,
}

/// Grouping key: everything except the ξₙ factor.
pub type TermKey = (JetMonomial, BTreeMap<Idx, u32>, i32, CliffordWord);

impl Term {
    pub fn scalar(c: K) -> Self {
        Self {
            jet: JetMonomial::one(),
            xi: BTreeMap::new(),
            norm_pow: 0,
            cl: CliffordWord::one(),
            xin: XiN::constant(c),
        }
    }

    pub fn one() -> Self {
        Self::scalar(K::one())
    }

    pub fn key(&self) -> TermKey {
        (self.jet.clone(), self.xi.clone(), self.norm_pow, self.cl)
    }

    pub fn is_zero(&self) -> bool {
        self.xin.is_zero()
    }

    pub fn with_jet(mut self, atoms: Vec<JetAtom>) -> Self {
        self.jet = self.jet.mul(&JetMonomial::new(atoms));
        self
    }

    pub fn with_xi(mut self, idx: Idx, e: u32) -> Self {
        if e > 0 {
            *self.xi.entry(idx).or_insert(0) += e;
        }
        self
    }

    pub fn with_norm_pow(mut self, k: i32) -> Self {
        self.norm_pow += k;
        self
    }

    pub fn with_cl(mut self, w: CliffordWord) -> Self {
        let (s, w) = self.cl.mul(&w);
        self.cl = w;
        if s < 0 {
            self.xin = self.xin.neg();
        }
        self
    }

    pub fn with_xin(mut self, f: &XiN) -> Self {
        self.xin = self.xin.mul(f);
        self
    }

    pub fn scale(mut self, c: &K) -> Self {
        self.xin = self.xin.scale(c);
        self
    }

    pub fn scale_q(self, c: Rational) -> Self {
        self.scale(&K::rational(c))
    }

    /// Homogeneity degree in ξ, with `|ξ|^{-2}` counting `-2`. Only
    /// meaningful in chart-free mode, where `xin` is a monomial.
    pub fn degree(&self) -> Option<i32> {
        let tangential: u32 = self.xi.values().sum();
        let d = self.xin.num().degree()?;
        if !self.xin.is_polynomial() || self.xin.num().coeffs()[..d].iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(tangential as i32 + d as i32 - 2 * self.norm_pow)
    }

    /// Occurrence count of every symbolic index across jet and ξ factors.
    pub fn sym_counts(&self) -> BTreeMap<u16, usize> {
        let mut counts = BTreeMap::new();
        for i in self.jet.indices() {
            if let Idx::Sym(s) = i {
                *counts.entry(s).or_insert(0) += 1;
            }
        }
        for (i, e) in &self.xi {
            if let Idx::Sym(s) = i {
                *counts.entry(*s).or_insert(0) += *e as usize;
            }
        }
        counts
    }

    /// Symbolic indices that occur exactly twice, i.e. are summed.
    pub fn closed_syms(&self) -> Vec<u16> {
        self.sym_counts().into_iter().filter(|(_, c)| *c == 2).map(|(s, _)| s).collect()
    }

    /// Symbolic indices that occur once and await a partner.
    pub fn open_syms(&self) -> Vec<u16> {
        self.sym_counts().into_iter().filter(|(_, c)| *c == 1).map(|(s, _)| s).collect()
    }

    pub fn map_indices(&self, f: &impl Fn(Idx) -> Idx) -> Term {
        let mut xi = BTreeMap::new();
        for (i, e) in &self.xi {
            *xi.entry(f(*i)).or_insert(0) += e;
        }
        Term { jet: self.jet.map_indices(f), xi, norm_pow: self.norm_pow, cl: self.cl, xin: self.xin.clone() }
    }

    fn rename_syms(&self, map: &BTreeMap<u16, u16>) -> Term {
        self.map_indices(&|i| match i {
            Idx::Sym(s) => Idx::Sym(*map.get(&s).unwrap_or(&s)),
            lit => lit,
        })
    }

    /// Product; closed indices of `o` are renamed apart first, open indices
    /// are shared. Clifford words multiply in order.
    pub fn mul(&self, o: &Term) -> Term {
        let mine = self.sym_counts();
        let top = mine.keys().copied().filter(|s| *s < FRESH_BASE).max().unwrap_or(0);
        let theirs = o.closed_syms();
        let rename: BTreeMap<u16, u16> = theirs.iter().enumerate().map(|(k, s)| (*s, top + 1 + k as u16)).collect();
        let o = o.rename_syms(&rename);
        let mut xi = self.xi.clone();
        for (i, e) in &o.xi {
            *xi.entry(*i).or_insert(0) += e;
        }
        let (sign, cl) = self.cl.mul(&o.cl);
        let mut xin = self.xin.mul(&o.xin);
        if sign < 0 {
            xin = xin.neg();
        }
        Term { jet: self.jet.mul(&o.jet), xi, norm_pow: self.norm_pow + o.norm_pow, cl, xin }
    }

    /// Resolves Kronecker deltas whose symbolic side is closed; returns
    /// `None` when the term vanishes.
    pub fn resolve_deltas(&self, n: u8) -> Option<Term> {
        let mut t = self.clone();
        loop {
            let counts = t.sym_counts();
            let closed = |i: Idx| matches!(i, Idx::Sym(s) if counts.get(&s) == Some(&2));
            let mut progressed = false;
            let atoms = t.jet.atoms().to_vec();
            for (pos, atom) in atoms.iter().enumerate() {
                let JetAtom::Delta(a, b) = *atom else { continue };
                let rest: Vec<JetAtom> = atoms.iter().enumerate().filter(|(i, _)| *i != pos).map(|(_, x)| x.clone()).collect();
                let without = |t: &Term| Term { jet: JetMonomial::new(rest.clone()), ..t.clone() };
                let normal = Idx::Lit(n);
                match (a, b) {
                    (Idx::Lit(x), Idx::Lit(y)) => {
                        if x != y {
                            return None;
                        }
                        t = without(&t);
                    }
                    (Idx::Sym(_), l) | (l, Idx::Sym(_)) if l == normal => return None,
                    (Idx::Sym(s), Idx::Sym(u)) if s == u => {
                        t = without(&t).scale_q(Rational::from_integer((n as i64 - 1).into()));
                    }
                    (x, y) if closed(x) || closed(y) => {
                        let (from, to) = if closed(x) { (x, y) } else { (y, x) };
                        t = without(&t).map_indices(&|i| if i == from { to } else { i });
                    }
                    _ => continue,
                }
                progressed = true;
                break;
            }
            if !progressed {
                return Some(t);
            }
        }
    }

    /// Relabels closed indices to `1..k` in the lexicographically smallest
    /// way, so equal terms compare equal.
    pub fn canonicalize(&self) -> Term {
        let closed = self.closed_syms();
        if closed.is_empty() {
            return self.clone();
        }
        let k = closed.len();
        let mut best: Option<Term> = None;
        let mut perm: Vec<u16> = (1..=k as u16).collect();
        loop {
            let map: BTreeMap<u16, u16> = closed.iter().copied().zip(perm.iter().copied()).collect();
            let cand = self.rename_syms(&map);
            if best.as_ref().is_none_or(|b| (&cand.jet, &cand.xi) < (&b.jet, &b.xi)) {
                best = Some(cand);
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        best.expect("at least one permutation")
    }
}

fn next_permutation(v: &mut [u16]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else { return false };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("pivot exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Sums terms with equal keys and drops zeros, in canonical order.
pub fn collect_terms(terms: impl IntoIterator<Item = Term>) -> Vec<Term> {
    let mut acc: BTreeMap<TermKey, XiN> = BTreeMap::new();
    for t in terms {
        if t.is_zero() {
            continue;
        }
        let entry = acc.entry(t.key()).or_insert_with(XiN::zero);
        *entry = entry.add(&t.xin);
    }
    acc.into_iter()
        .filter(|(_, x)| !x.is_zero())
        .map(|((jet, xi, norm_pow, cl), xin)| Term { jet, xi, norm_pow, cl, xin })
        .collect()
}

/// Resolves deltas, canonicalizes and collects.
pub fn normalize_terms(terms: impl IntoIterator<Item = Term>, n: u8) -> Vec<Term> {
    collect_terms(terms.into_iter().filter_map(|t| t.resolve_deltas(n)).map(|t| t.canonicalize()))
}

/// Result alias for term-level operations.
pub type Terms = Result<Vec<Term>>;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Field;

    fn v(i: Idx) -> JetAtom {
        JetAtom::comp(Field::V, i)
    }
    fn w(i: Idx) -> JetAtom {
        JetAtom::comp(Field::W, i)
    }

    #[test]
    fn relabeling_identifies_equal_sums() {
        let a = Term::one().with_jet(vec![v(Idx::Sym(3)), w(Idx::Sym(7))]).with_xi(Idx::Sym(3), 1).with_xi(Idx::Sym(7), 1);
        let b = Term::one().with_jet(vec![v(Idx::Sym(2)), w(Idx::Sym(1))]).with_xi(Idx::Sym(1), 1).with_xi(Idx::Sym(2), 1);
        assert_eq!(a.canonicalize(), b.canonicalize());
        let summed = collect_terms([a.canonicalize(), b.canonicalize()]);
        assert_eq!(summed.len(), 1);
        assert_eq!(summed[0].xin, XiN::constant(K::int(2)));
    }

    #[test]
    fn deltas_substitute_and_trace() {
        let n = 4;
        // δ(s, t) V_s ξ_t  ->  V_t ξ_t
        let t = Term::one().with_jet(vec![JetAtom::Delta(Idx::Sym(1), Idx::Sym(2)), v(Idx::Sym(1))]).with_xi(Idx::Sym(2), 1);
        let r = t.resolve_deltas(n).unwrap().canonicalize();
        assert_eq!(r, Term::one().with_jet(vec![v(Idx::Sym(1))]).with_xi(Idx::Sym(1), 1));
        // δ(s, s) = n - 1
        let tr = Term::one().with_jet(vec![JetAtom::Delta(Idx::Sym(5), Idx::Sym(5))]);
        assert_eq!(tr.resolve_deltas(n).unwrap(), Term::scalar(K::int(3)));
        // tangent index never equals the normal one
        let z = Term::one().with_jet(vec![JetAtom::Delta(Idx::Sym(1), Idx::Lit(4)), v(Idx::Sym(1))]);
        assert!(z.resolve_deltas(n).is_none());
        // an open side waits for its partner
        let open = Term::one().with_jet(vec![JetAtom::Delta(Idx::Sym(1001), Idx::Lit(2))]);
        assert_eq!(open.resolve_deltas(n).unwrap(), open);
    }

    #[test]
    fn product_renames_closed_indices_apart() {
        let a = Term::one().with_jet(vec![v(Idx::Sym(1)), w(Idx::Sym(1))]);
        let p = a.mul(&a).canonicalize();
        assert_eq!(p.closed_syms(), vec![1, 2]);
        let shared = Term::one().with_xi(Idx::Sym(1001), 1);
        let q = shared.mul(&Term::one().with_jet(vec![v(Idx::Sym(1001))]));
        assert_eq!(q.closed_syms(), vec![1001]);
    }

    #[test]
    fn degree_counts_norm_power() {
        let t = Term::one().with_xi(Idx::Sym(1), 2).with_norm_pow(1).with_xin(&XiN::monomial(K::int(1), 1));
        assert_eq!(t.degree(), Some(1));
    }
}
