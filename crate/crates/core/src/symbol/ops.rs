use num_traits::Zero;

use super::graded::{ChartContext, GradedSymbol};
use super::term::{Mode, Term, Terms, FRESH_BASE};
use crate::residue::Poly;
use crate::scalars::{Idx, JetAtom};
use crate::{Error, Rational, Result, XiN, K};

fn fresh_closed_label(t: &Term) -> u16 {
    t.sym_counts().keys().copied().filter(|s| *s < FRESH_BASE).max().unwrap_or(0) + 1
}

/// `∂_{x_dir}` of a chart-free term at `x₀`.
pub fn term_dx(t: &Term, dir: Idx, chart: &ChartContext) -> Terms {
    chart.check(dir)?;
    let n = chart.n();
    let mut out = Vec::new();
    for (c, jet) in t.jet.leibniz_dn::<Rational>(dir, n)? {
        out.push(Term { jet, ..t.clone() }.scale_q(c));
    }
    if t.norm_pow != 0 && chart.is_normal(dir) {
        if t.jet.atoms().contains(&JetAtom::Hp) {
            return Err(Error::SecondDerivative("|ξ|² along x_n with h'(0) already present (needs h''(0))".into()));
        }
        // ∂_n |ξ|^{-2k} = -k h'(0) |ξ'|² |ξ|^{-2k-2}
        let s = fresh_closed_label(t);
        let k = t.norm_pow;
        out.push(t.clone().with_jet(vec![JetAtom::Hp]).with_xi(Idx::Sym(s), 2).with_norm_pow(1).scale(&K::int(-(k as i64))));
    }
    Ok(out)
}

/// `∂_{ξ_target}` of a term.
pub fn term_dxi(t: &Term, target: Idx, chart: &ChartContext) -> Terms {
    chart.check(target)?;
    let mut out = Vec::new();
    if chart.is_normal(target) {
        out.push(Term { xin: t.xin.derivative(), ..t.clone() });
        if t.norm_pow != 0 {
            // ∂_{ξn} |ξ|^{-2k} = -2k ξn |ξ|^{-2k-2}
            let k = t.norm_pow as i64;
            out.push(t.clone().with_norm_pow(1).with_xin(&XiN::monomial(K::int(-2 * k), 1)));
        }
        return Ok(out);
    }
    for (&idx, &e) in &t.xi {
        let mut rest = t.clone();
        if e == 1 {
            rest.xi.remove(&idx);
        } else {
            rest.xi.insert(idx, e - 1);
        }
        let rest = rest.scale(&K::int(e as i64));
        match (target, idx) {
            (a, b) if a == b => out.push(rest),
            (Idx::Lit(_), Idx::Lit(_)) => {}
            (a, b) => out.push(rest.with_jet(vec![JetAtom::Delta(a, b)])),
        }
    }
    if t.norm_pow != 0 {
        let k = t.norm_pow as i64;
        out.push(t.clone().with_norm_pow(1).with_xi(target, 1).scale(&K::int(-2 * k)));
    }
    Ok(out)
}

/// Evaluation on `|ξ'| = 1` at `x₀`: `|ξ|² ↦ (ξₙ - i)(ξₙ + i)`, `√h ↦ 1`,
/// self-paired `ξ_s ξ_s ↦ 1`.
pub fn term_restrict(t: &Term) -> Term {
    let k = t.norm_pow;
    let xin = match k.cmp(&0) {
        std::cmp::Ordering::Greater => t.xin.div_factors(k as u32, k as u32),
        std::cmp::Ordering::Less => {
            let one_plus_sq = Poly::from_coeffs(vec![K::int(1), K::zero(), K::int(1)]);
            t.xin.mul(&XiN::poly(one_plus_sq.pow((-k) as u32)))
        }
        std::cmp::Ordering::Equal => t.xin.clone(),
    };
    let atoms: Vec<JetAtom> = t.jet.atoms().iter().filter(|a| **a != JetAtom::FrameScale).cloned().collect();
    let jet_counts = crate::scalars::JetMonomial::new(atoms.clone());
    let jet_syms: Vec<Idx> = jet_counts.indices();
    let mut xi = t.xi.clone();
    xi.retain(|i, e| !(i.is_sym() && *e == 2 && !jet_syms.contains(i)));
    Term { jet: jet_counts, xi, norm_pow: 0, cl: t.cl, xin }
}

/// Switches a chart-free symbol to boundary-restricted mode.
pub fn restrict_to_boundary_sphere(s: &GradedSymbol, _chart: &ChartContext) -> Result<GradedSymbol> {
    if s.mode() == Mode::Restricted {
        return Err(Error::AlreadyRestricted);
    }
    s.map_mode(|t| Ok(vec![term_restrict(t)]), 0, Mode::Restricted)
}

/// `∂_{x_j}` at `x₀` (chart-free symbols only).
pub fn dx_apply(s: &GradedSymbol, j: Idx, chart: &ChartContext) -> Result<GradedSymbol> {
    if s.mode() != Mode::ChartFree {
        return Err(Error::WrongMode("chart-free"));
    }
    s.map(|t| term_dx(t, j, chart), 0)
}

/// `∂_{ξ_target}`; tangential targets need a chart-free symbol.
pub fn dxi_apply(s: &GradedSymbol, target: Idx, chart: &ChartContext) -> Result<GradedSymbol> {
    if s.mode() == Mode::Restricted && !chart.is_normal(target) {
        return Err(Error::WrongMode("chart-free"));
    }
    s.map(|t| term_dxi(t, target, chart), -1)
}

/// Applies `∂_{x_n}^j` to a list of terms.
pub fn terms_dx_pow(ts: Vec<Term>, dir: Idx, times: u32, chart: &ChartContext) -> Terms {
    let mut cur = ts;
    for _ in 0..times {
        let mut next = Vec::new();
        for t in &cur {
            next.extend(term_dx(t, dir, chart)?);
        }
        cur = next;
    }
    Ok(cur)
}

/// Applies `∂_{ξ_target}^times` to a list of terms.
pub fn terms_dxi_pow(ts: Vec<Term>, target: Idx, times: u32, chart: &ChartContext) -> Terms {
    let mut cur = ts;
    for _ in 0..times {
        let mut next = Vec::new();
        for t in &cur {
            next.extend(term_dxi(t, target, chart)?);
        }
        cur = next;
    }
    Ok(cur)
}
