use std::collections::BTreeMap;

use super::OperatorSpec;
use crate::symbol::{normalize_terms, term_dx, term_dxi, ChartContext, GradedSymbol, Mode, Term, FRESH_BASE};
use crate::{Error, Result, K};

/// `(bucket of a, bucket of b, |α|)` for one slice of the composition sum.
pub type PartKey = (i32, i32, u32);

/// `σ(a∘b)` truncated at `cutoff`, with a depth check on both tables.
pub fn compose(a: &OperatorSpec, b: &OperatorSpec, cutoff: i32, chart: &ChartContext) -> Result<GradedSymbol> {
    check_depth(a, b, cutoff)?;
    compose_symbols(&a.symbol, &b.symbol, cutoff, chart)
}

fn check_depth(a: &OperatorSpec, b: &OperatorSpec, cutoff: i32) -> Result<()> {
    if let Some(lb) = b.lowest {
        if cutoff < a.order + lb {
            return Err(Error::InsufficientDepth(format!(
                "{} is known down to order {lb}; bucket {cutoff} of {}∘{} needs order {}",
                b.name,
                a.name,
                b.name,
                cutoff - a.order
            )));
        }
    }
    if let Some(la) = a.lowest {
        if cutoff < la + b.order {
            return Err(Error::InsufficientDepth(format!(
                "{} is known down to order {la}; bucket {cutoff} of {}∘{} needs order {}",
                a.name,
                a.name,
                b.name,
                cutoff - b.order
            )));
        }
    }
    Ok(())
}

/// Composition of two raw chart-free symbols.
pub fn compose_symbols(a: &GradedSymbol, b: &GradedSymbol, cutoff: i32, chart: &ChartContext) -> Result<GradedSymbol> {
    let mut out = GradedSymbol::new(Mode::ChartFree, chart.n());
    for ((ra, rb, k), terms) in compose_parts(a, b, cutoff, chart)? {
        out.add_terms(ra + rb - k as i32, terms);
    }
    Ok(out)
}

/// The composition sum split by contributing buckets and `|α|`.
///
/// Each slice is `Σ_{|α|=k} (1/α!) ∂_ξ^α σ_ra(a) · D_x^α σ_rb(b)` with
/// `D_x = -i ∂_x`, expanded over ordered direction sequences weighted by
/// `1/k!`. A tangent slot carries a fresh index which becomes summed once
/// both factors are multiplied.
pub fn compose_parts(
    a: &GradedSymbol,
    b: &GradedSymbol,
    cutoff: i32,
    chart: &ChartContext,
) -> Result<BTreeMap<PartKey, Vec<Term>>> {
    if a.mode() != Mode::ChartFree || b.mode() != Mode::ChartFree {
        return Err(Error::WrongMode("chart-free"));
    }
    let n = chart.n();
    let mut parts = BTreeMap::new();
    for (ra, ta) in a.buckets() {
        for (rb, tb) in b.buckets() {
            let top = ra + rb - cutoff;
            for k in 0..=top.max(-1) {
                let k = k as u32;
                let terms = slice(ta, tb, k, chart)?;
                let terms = normalize_terms(terms, n);
                if !terms.is_empty() {
                    parts.insert((ra, rb, k), terms);
                }
            }
        }
    }
    Ok(parts)
}

fn slice(ta: &[Term], tb: &[Term], k: u32, chart: &ChartContext) -> Result<Vec<Term>> {
    let n = chart.n();
    let coeff = minus_i_pow(k) * K::frac(1, factorial(k));
    let mut out = Vec::new();
    for seq in 0u32..(1 << k) {
        let dirs: Vec<_> = (0..k)
            .map(|i| if seq >> i & 1 == 1 { chart.normal() } else { crate::scalars::Idx::Sym(FRESH_BASE + i as u16) })
            .collect();
        let mut left: Vec<Term> = ta.to_vec();
        for d in &dirs {
            let mut next = Vec::new();
            for t in &left {
                next.extend(term_dxi(t, *d, chart)?);
            }
            left = normalize_terms(next, n);
            if left.is_empty() {
                break;
            }
        }
        if left.is_empty() {
            continue;
        }
        let mut right: Vec<Term> = tb.to_vec();
        for d in &dirs {
            let mut next = Vec::new();
            for t in &right {
                next.extend(term_dx(t, *d, chart)?);
            }
            right = normalize_terms(next, n);
            if right.is_empty() {
                break;
            }
        }
        for l in &left {
            for r in &right {
                out.push(l.mul(r).scale(&coeff));
            }
        }
    }
    Ok(out)
}

fn minus_i_pow(k: u32) -> K {
    (-K::i()).pow(k)
}

fn factorial(k: u32) -> i64 {
    (1..=k as i64).product()
}
