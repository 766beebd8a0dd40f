use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::scalars::JetMonomial;
use crate::symbol::Term;
use crate::{Error, Result, K};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DensityKind {
    Interior,
    Boundary,
}

/// A linear combination of aggregated jet monomials with exact coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueDensity {
    pub n: u8,
    pub kind: DensityKind,
    terms: BTreeMap<JetMonomial, K>,
}

impl ResidueDensity {
    pub fn zero(n: u8, kind: DensityKind) -> Self {
        Self { n, kind, terms: BTreeMap::new() }
    }

    /// Collects fully integrated terms; each must carry a constant coefficient
    /// and no ξ or Clifford factors.
    pub fn from_terms(n: u8, kind: DensityKind, terms: impl IntoIterator<Item = Term>) -> Result<Self> {
        let mut d = Self::zero(n, kind);
        for t in terms {
            if !t.xi.is_empty() || t.norm_pow != 0 || !t.cl.is_one() || !t.xin.is_polynomial() || t.xin.num().degree().unwrap_or(0) > 0
            {
                return Err(Error::Validation(format!("term is not fully integrated: {}", crate::symbol::render_term(&t, n))));
            }
            d.add_term(t.jet, t.xin.num().coeff(0));
        }
        Ok(d)
    }

    pub fn add_term(&mut self, m: JetMonomial, c: K) {
        let e = self.terms.entry(m.clone()).or_insert_with(K::zero);
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, o: &ResidueDensity) -> ResidueDensity {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &ResidueDensity) -> ResidueDensity {
        self.add(&o.scale(&K::int(-1)))
    }

    pub fn scale(&self, c: &K) -> ResidueDensity {
        let mut out = Self::zero(self.n, self.kind);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&JetMonomial, &K)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &JetMonomial) -> K {
        self.terms.get(m).cloned().unwrap_or_else(K::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `true` when every coefficient is a Gaussian rational times `π^p`.
    pub fn has_pi_power(&self, p: i32) -> bool {
        self.terms.values().all(|c| c.as_monomial().is_some_and(|(e, _)| e == 2 * p))
    }

    pub fn has_tangential_derivative(&self) -> bool {
        self.terms.keys().any(|m| m.has_tangential_derivative(self.n))
    }

    /// Rendered monomial names with rendered coefficients, in canonical
    /// order.
    pub fn rendered(&self) -> BTreeMap<String, String> {
        self.terms.iter().map(|(m, c)| (m.render(self.n), c.to_string())).collect()
    }
}

impl fmt::Display for ResidueDensity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("({c})*{}", m.render(self.n))).collect();
        f.write_str(&parts.join(" + "))
    }
}
