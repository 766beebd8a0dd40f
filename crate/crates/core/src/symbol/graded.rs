use std::collections::BTreeMap;
use std::fmt;

use super::term::{normalize_terms, Mode, Term};
use crate::scalars::Idx;
use crate::{Error, Result};

/// Dimension and collar-chart data at the boundary point `x₀`.
///
/// Coordinates are normal coordinates of the boundary at `x₀` extended by
/// the inward normal `x_n`, with metric `h(x_n)^{-1} g^{∂M} + dx_n²`,
/// `h(0) = 1`. At `x₀` the only surviving metric jet is `h'(0)`:
/// `∂_{x_n} |ξ|² = h'(0) |ξ'|²`, `∂_{x_j} |ξ|² = 0` for `j < n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChartContext {
    n: u8,
}

impl ChartContext {
    pub fn new(n: u8) -> Result<Self> {
        if !(3..=crate::clifford::MAX_DIM).contains(&n) {
            return Err(Error::Validation(format!("dimension {n} outside 3..={}", crate::clifford::MAX_DIM)));
        }
        Ok(Self { n })
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn is_even(&self) -> bool {
        self.n % 2 == 0
    }

    pub fn normal(&self) -> Idx {
        Idx::Lit(self.n)
    }

    pub fn is_normal(&self, i: Idx) -> bool {
        i == self.normal()
    }

    /// Checks that a literal index lies in `1..=n`.
    pub fn check(&self, i: Idx) -> Result<()> {
        match i {
            Idx::Lit(k) if k == 0 || k > self.n => Err(Error::Chart(format!("index {k} outside 1..={}", self.n))),
            _ => Ok(()),
        }
    }
}

/// Terms bucketed by homogeneity order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSymbol {
    mode: Mode,
    n: u8,
    buckets: BTreeMap<i32, Vec<Term>>,
}

impl GradedSymbol {
    pub fn new(mode: Mode, n: u8) -> Self {
        Self { mode, n, buckets: BTreeMap::new() }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    /// The identity symbol.
    pub fn identity(n: u8) -> Self {
        let mut s = Self::new(Mode::ChartFree, n);
        s.add_terms(0, vec![Term::one()]);
        s
    }

    pub fn bucket(&self, order: i32) -> &[Term] {
        self.buckets.get(&order).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Orders with at least one term, highest first.
    pub fn orders(&self) -> Vec<i32> {
        self.buckets.keys().rev().copied().collect()
    }

    pub fn top_order(&self) -> Option<i32> {
        self.buckets.keys().next_back().copied()
    }

    pub fn buckets(&self) -> impl Iterator<Item = (i32, &[Term])> {
        self.buckets.iter().rev().map(|(k, v)| (*k, v.as_slice()))
    }

    pub fn is_zero(&self) -> bool {
        self.buckets.is_empty()
    }

    /// Adds terms to a bucket, normalizing.
    pub fn add_terms(&mut self, order: i32, terms: Vec<Term>) {
        let mut all = self.buckets.remove(&order).unwrap_or_default();
        all.extend(terms);
        let all = normalize_terms(all, self.n);
        if !all.is_empty() {
            self.buckets.insert(order, all);
        }
    }

    pub fn add(&self, o: &GradedSymbol) -> GradedSymbol {
        let mut out = self.clone();
        for (k, ts) in &o.buckets {
            out.add_terms(*k, ts.clone());
        }
        out
    }

    pub fn neg(&self) -> GradedSymbol {
        self.map(|t| Ok(vec![t.clone().scale(&crate::K::int(-1))]), 0).expect("negation is total")
    }

    pub fn sub(&self, o: &GradedSymbol) -> GradedSymbol {
        self.add(&o.neg())
    }

    /// Keeps only the listed orders.
    pub fn truncate(&self, lowest: i32) -> GradedSymbol {
        let mut out = Self::new(self.mode, self.n);
        for (k, ts) in &self.buckets {
            if *k >= lowest {
                out.buckets.insert(*k, ts.clone());
            }
        }
        out
    }

    /// Single-bucket symbol.
    pub fn only(&self, order: i32) -> GradedSymbol {
        let mut out = Self::new(self.mode, self.n);
        if let Some(ts) = self.buckets.get(&order) {
            out.buckets.insert(order, ts.clone());
        }
        out
    }

    /// Applies a term-level map, moving every bucket by `shift`.
    pub fn map(&self, f: impl Fn(&Term) -> Result<Vec<Term>>, shift: i32) -> Result<GradedSymbol> {
        self.map_mode(f, shift, self.mode)
    }

    pub(crate) fn map_mode(&self, f: impl Fn(&Term) -> Result<Vec<Term>>, shift: i32, mode: Mode) -> Result<GradedSymbol> {
        let mut out = Self::new(mode, self.n);
        for (k, ts) in &self.buckets {
            let mut acc = Vec::new();
            for t in ts {
                acc.extend(f(t)?);
            }
            out.add_terms(k + shift, acc);
        }
        Ok(out)
    }

    /// Verifies every chart-free term has the degree of its bucket.
    pub fn check_homogeneous(&self) -> Result<()> {
        if self.mode != Mode::ChartFree {
            return Ok(());
        }
        for (k, ts) in &self.buckets {
            for t in ts {
                for (deg, part) in split_xin_powers(t) {
                    if deg != *k {
                        return Err(Error::Validation(format!("term of degree {deg} in order-{k} bucket: {part:?}")));
                    }
                }
            }
        }
        Ok(())
    }

    /// All terms with their orders, highest order first.
    pub fn iter_terms(&self) -> impl Iterator<Item = (i32, &Term)> {
        self.buckets().flat_map(|(k, ts)| ts.iter().map(move |t| (k, t)))
    }
}

/// Degrees of the ξₙ-monomials inside a chart-free term.
fn split_xin_powers(t: &Term) -> Vec<(i32, Term)> {
    let tangential: u32 = t.xi.values().sum();
    t.xin
        .num()
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
        .map(|(d, c)| {
            let part = Term { xin: crate::XiN::monomial(c.clone(), d), ..t.clone() };
            (tangential as i32 + d as i32 - 2 * t.norm_pow, part)
        })
        .collect()
}

impl fmt::Display for GradedSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, ts) in self.buckets() {
            writeln!(f, "order {k}:")?;
            for t in ts {
                writeln!(f, "  {}", super::render_term(t, self.n))?;
            }
        }
        Ok(())
    }
}
