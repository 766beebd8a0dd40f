use super::compose::compose_symbols;
use super::OperatorSpec;
use crate::symbol::{normalize_terms, ChartContext, GradedSymbol, Mode, Term};
use crate::{Error, Result, K};

/// Graded inverse `q` with `σ(p∘q) = 1` in buckets `0, -1, ..., -(depth-1)`.
///
/// `q_{-m} = p_m^{-1}` and each further bucket solves
/// `q_{-m-j} = -p_m^{-1} · [σ(p∘q_partial)]_{-j}`.
pub fn parametrix(p: &OperatorSpec, depth: u32, chart: &ChartContext) -> Result<OperatorSpec> {
    if depth == 0 {
        return Err(Error::Validation("parametrix depth must be at least 1".into()));
    }
    let m = p.order;
    let needed = m - depth as i32 + 1;
    if p.known_down_to(i32::MIN) > needed {
        return Err(Error::InsufficientDepth(format!(
            "{} is known down to order {}; a depth-{depth} parametrix needs order {needed}",
            p.name,
            p.known_down_to(i32::MIN)
        )));
    }
    let inv = invert_leading(p.symbol.bucket(m))?;
    let n = chart.n();
    let mut q = GradedSymbol::new(Mode::ChartFree, n);
    q.add_terms(-m, vec![inv.clone()]);
    for j in 1..depth as i32 {
        let rem = compose_symbols(&p.symbol, &q, -j, chart)?;
        let next: Vec<Term> = rem.bucket(-j).iter().map(|t| inv.mul(t).scale(&K::int(-1))).collect();
        q.add_terms(-m - j, normalize_terms(next, n));
    }
    OperatorSpec::new(format!("{}^-1", p.name), q, Some(-m - depth as i32 + 1))
}

/// Inverts `c |ξ|^{-2k}` with a constant monomial `c`.
fn invert_leading(top: &[Term]) -> Result<Term> {
    let [t] = top else {
        return Err(Error::NonScalarLeading(format!("{} terms in the leading bucket", top.len())));
    };
    if !t.cl.is_one() {
        return Err(Error::NonScalarLeading(format!("Clifford factor {}", t.cl)));
    }
    if !t.jet.is_one() || !t.xi.is_empty() {
        return Err(Error::NonScalarLeading("leading symbol depends on jets or on ξ' beyond |ξ|".into()));
    }
    let c = match (t.xin.is_polynomial(), t.xin.num().degree()) {
        (true, Some(0)) => t.xin.num().coeff(0),
        _ => return Err(Error::NonScalarLeading(format!("ξₙ factor {} is not a constant", t.xin))),
    };
    let inv = K::int(1).checked_div(&c).map_err(|e| Error::NonScalarLeading(e.to_string()))?;
    Ok(Term::scalar(inv).with_norm_pow(-t.norm_pow))
}
