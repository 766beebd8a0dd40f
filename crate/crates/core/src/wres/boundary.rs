use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex;
use serde::Serialize;

use super::cases::{enumerate_cases, CaseIndex};
use super::density::{DensityKind, ResidueDensity};
use crate::calculus::{builtin, compose, compose_parts, parametrix, OperatorSpec, PartKey};
use crate::clifford::spinor_dim;
use crate::residue::oracle::{oracle_integral, oracle_pi_plus, rel_err};
use crate::residue::{contract_indices, hardy_split, integrate_xin, sphere_integrate};
use crate::scalars::{Field, Idx};
use crate::symbol::{normalize_terms, term_dx, term_dxi, term_restrict, ChartContext, Term, FRESH_BASE};
use crate::{Error, Result, XiN, K};

/// Pipeline switches.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundaryOptions {
    /// Drop products with an odd number of tangent ξ factors before the
    /// sphere integral.
    pub prune_odd: bool,
    /// Drop Clifford-valued summands of the first factor when the second is
    /// Clifford-scalar.
    pub drop_traceless_early: bool,
    /// Cross-check every π⁺ and ξₙ integral against quadrature.
    pub oracle: bool,
    pub oracle_tol: f64,
}

impl Default for BoundaryOptions {
    fn default() -> Self {
        Self { prune_odd: true, drop_traceless_early: false, oracle: true, oracle_tol: 1e-8 }
    }
}

/// Worst relative deviations of the exact kernel from its numeric oracles.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct OracleResidual {
    pub pi_plus: f64,
    pub integral: f64,
    pub checks: usize,
}

impl OracleResidual {
    pub fn merge(&mut self, o: &OracleResidual) {
        self.pi_plus = self.pi_plus.max(o.pi_plus);
        self.integral = self.integral.max(o.integral);
        self.checks += o.checks;
    }

    pub fn max(&self) -> f64 {
        self.pi_plus.max(self.integral)
    }

    pub fn within(&self, tol: f64) -> bool {
        self.max() <= tol
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CaseResult {
    pub case: CaseIndex,
    pub density: ResidueDensity,
    pub oracle: OracleResidual,
}

/// The operator data of the boundary pipeline: the composite
/// `∇̃_V ∇̃_W ∘ H_X^{-1}`, the parametrix of `H_X`, and the split of the
/// composite into its contributing slices.
#[derive(Clone, Debug)]
pub struct BoundarySetup {
    pub chart: ChartContext,
    pub composite: OperatorSpec,
    pub inverse: OperatorSpec,
    pub parts: BTreeMap<PartKey, Vec<Term>>,
    pub cases: Vec<CaseIndex>,
}

impl BoundarySetup {
    /// Builds the paper's operators; `max_depth` caps the parametrix depth.
    pub fn builtin(chart: &ChartContext, max_depth: u32) -> Result<Self> {
        Self::with_pair(chart, builtin("nabla_pair", chart)?, max_depth)
    }

    /// Same pipeline with a user-supplied operator in place of the
    /// connection pair.
    pub fn with_pair(chart: &ChartContext, pair: OperatorSpec, max_depth: u32) -> Result<Self> {
        let n = chart.n();
        if pair.symbol.n() != n {
            return Err(Error::Validation(format!("operator {} is {}-dimensional, chart is {n}-dimensional", pair.name, pair.symbol.n())));
        }
        let h = builtin("bismut", chart)?;
        let inv_order = -h.order;
        let cases = enumerate_cases(n, pair.order + inv_order, inv_order)?;
        let lowest_l = cases.iter().map(|c| c.l).min().unwrap_or(inv_order);
        let lowest_r = cases.iter().map(|c| c.r).min().unwrap_or(0);
        let depth = (inv_order - lowest_l + 1) as u32;
        if depth > max_depth {
            return Err(Error::InsufficientDepth(format!("n={n} needs a depth-{depth} parametrix, limit is {max_depth}")));
        }
        let inverse = parametrix(&h, depth, chart)?;
        let sym = compose(&pair, &inverse, lowest_r, chart)?;
        let parts = compose_parts(&pair.symbol, &inverse.symbol, lowest_r, chart)?;
        let composite = OperatorSpec::new(format!("{}*{}", pair.name, inverse.name), sym, Some(lowest_r))?;
        Ok(Self { chart: *chart, composite, inverse, parts, cases })
    }

    pub fn part(&self, key: PartKey) -> &[Term] {
        self.parts.get(&key).map(Vec::as_slice).unwrap_or(&[])
    }
}

/// One boundary case for full operator tables.
pub fn compute_case(
    c: &CaseIndex,
    a: &OperatorSpec,
    b: &OperatorSpec,
    chart: &ChartContext,
    opts: &BoundaryOptions,
) -> Result<CaseResult> {
    for (spec, order) in [(a, c.r), (b, c.l)] {
        if spec.known_down_to(i32::MIN) > order {
            return Err(Error::InsufficientDepth(format!("case {c} needs bucket {order} of {}", spec.name)));
        }
    }
    compute_case_terms(c, a.symbol.bucket(c.r), b.symbol.bucket(c.l), chart, opts)
}

fn apply(ts: Vec<Term>, n: u8, f: impl Fn(&Term) -> Result<Vec<Term>>) -> Result<Vec<Term>> {
    let mut out = Vec::new();
    for t in &ts {
        out.extend(f(t)?);
    }
    Ok(normalize_terms(out, n))
}

fn factorial(k: u32) -> i64 {
    (1..=k as i64).product()
}

struct Oracle {
    opts: BoundaryOptions,
    res: OracleResidual,
    seen: BTreeSet<(u8, XiN)>,
}

impl Oracle {
    fn pi_plus(&mut self, f: &XiN, plus: &XiN, poly_free: &XiN) -> Result<()> {
        if !self.opts.oracle || !self.seen.insert((0, f.clone())) {
            return Ok(());
        }
        for x in [-0.7, 0.3, 1.9] {
            let exact = crate::residue::oracle::eval_xin(plus, Complex::new(x, 0.0));
            let num = oracle_pi_plus(poly_free, x, 1e-13)?;
            self.res.pi_plus = self.res.pi_plus.max(rel_err(exact, num, 1e-12));
            self.res.checks += 1;
        }
        Ok(())
    }

    fn integral(&mut self, f: &XiN, exact: &K) -> Result<()> {
        if !self.opts.oracle || !self.seen.insert((1, f.clone())) {
            return Ok(());
        }
        let num = oracle_integral::<f64, _>(f, 1e-13)?;
        self.res.integral = self.res.integral.max(rel_err(exact.to_complex::<f64>(), num, 1e-12));
        self.res.checks += 1;
        Ok(())
    }
}

/// One boundary case with explicit first-factor and second-factor terms.
///
/// Coefficient `(-i)^{|α|+j+k+1} / (α! (j+k+1)!)`; first factor
/// `∂_{x_n}^j ∂_{ξ'}^α ∂_{ξ_n}^k σ_r`, restricted and projected by π⁺;
/// second factor `∂_{x'}^α ∂_{ξ_n}^{j+1} ∂_{x_n}^k σ_ℓ`, restricted. Then
/// Clifford trace, ξₙ integral, sphere integral and index contraction.
pub fn compute_case_terms(
    c: &CaseIndex,
    a_terms: &[Term],
    b_terms: &[Term],
    chart: &ChartContext,
    opts: &BoundaryOptions,
) -> Result<CaseResult> {
    let n = chart.n();
    let nn = chart.normal();
    let mut oracle = Oracle { opts: *opts, res: OracleResidual::default(), seen: BTreeSet::new() };
    let dirs: Vec<Idx> = (0..c.alpha).map(|i| Idx::Sym(FRESH_BASE + i as u16)).collect();

    let mut f1 = normalize_terms(a_terms.to_vec(), n);
    for d in &dirs {
        f1 = apply(f1, n, |t| term_dxi(t, *d, chart))?;
    }
    for _ in 0..c.k {
        f1 = apply(f1, n, |t| term_dxi(t, nn, chart))?;
    }
    for _ in 0..c.j {
        f1 = apply(f1, n, |t| term_dx(t, nn, chart))?;
    }
    let f1 = normalize_terms(f1.iter().map(term_restrict), n);
    let mut plus = Vec::new();
    for t in f1 {
        let split = hardy_split(&t.xin);
        let poly_free = split.plus.add(&split.minus);
        oracle.pi_plus(&t.xin, &split.plus, &poly_free)?;
        plus.push(Term { xin: split.plus, ..t });
    }
    let mut f1 = normalize_terms(plus, n);

    let mut f2 = normalize_terms(b_terms.to_vec(), n);
    for d in &dirs {
        f2 = apply(f2, n, |t| term_dx(t, *d, chart))?;
    }
    for _ in 0..c.j + 1 {
        f2 = apply(f2, n, |t| term_dxi(t, nn, chart))?;
    }
    for _ in 0..c.k {
        f2 = apply(f2, n, |t| term_dx(t, nn, chart))?;
    }
    let f2 = normalize_terms(f2.iter().map(term_restrict), n);
    if opts.drop_traceless_early && f2.iter().all(|t| t.cl.is_one()) {
        f1.retain(|t| t.cl.is_one());
    }

    let coeff = (-K::i()).pow(c.alpha + c.j + c.k + 1) * K::frac(1, factorial(c.alpha) * factorial(c.j + c.k + 1));
    let mut products = Vec::new();
    for x in &f1 {
        for y in &f2 {
            products.push(x.mul(y));
        }
    }
    let products = normalize_terms(products, n);
    let trace = K::int(spinor_dim(n));
    let mut integrated = Vec::new();
    for t in products {
        let odd = t.xi.values().sum::<u32>() % 2 == 1;
        if (opts.prune_odd && odd) || !t.cl.is_one() {
            continue;
        }
        let v = integrate_xin(&t.xin)?;
        oracle.integral(&t.xin, &v)?;
        let v = &(&v * &trace) * &coeff;
        integrated.push(Term { xin: XiN::constant(v), ..t });
    }
    let mut out = Vec::new();
    for t in normalize_terms(integrated, n) {
        for s in sphere_integrate(&t, n)? {
            out.push(s);
        }
    }
    let mut contracted = Vec::new();
    for t in normalize_terms(out, n) {
        contracted.push(contract_indices(&t, n)?);
    }
    let density = ResidueDensity::from_terms(n, DensityKind::Boundary, contracted)?;
    Ok(CaseResult { case: *c, density, oracle: oracle.res })
}

/// Labelled sub-computation of a case.
#[derive(Clone, Debug, PartialEq)]
pub struct SubResult {
    pub label: String,
    pub result: CaseResult,
}

/// The boundary term `Φ`: every case, their exact sum, and the finer split
/// of `σ_{-3}(H_X^{-1})` and of `σ_{-1}` of the composite used in reports.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryPhi {
    pub n: u8,
    pub total: ResidueDensity,
    pub cases: Vec<CaseResult>,
    pub subs: Vec<SubResult>,
}

pub fn boundary_phi(setup: &BoundarySetup, opts: &BoundaryOptions) -> Result<BoundaryPhi> {
    let chart = &setup.chart;
    let n = chart.n();
    let mut cases = Vec::new();
    let mut total = ResidueDensity::zero(n, DensityKind::Boundary);
    for c in &setup.cases {
        let r = compute_case(c, &setup.composite, &setup.inverse, chart, opts)?;
        total = total.add(&r.density);
        cases.push(r);
    }
    let mut subs = Vec::new();
    let q3 = CaseIndex::new(0, -3, 0, 0, 0);
    if setup.cases.contains(&q3) {
        let b = setup.inverse.symbol.bucket(-3);
        let (with_x, without_x): (Vec<Term>, Vec<Term>) = b.iter().cloned().partition(mentions_x);
        let a = setup.composite.symbol.bucket(0);
        for (label, part) in [("PHI4A", without_x), ("PHI4B", with_x)] {
            let result = compute_case_terms(&q3, a, &part, chart, opts)?;
            subs.push(SubResult { label: label.into(), result });
        }
    }
    let c5 = CaseIndex::new(-1, -2, 0, 0, 0);
    if setup.cases.contains(&c5) {
        let b = setup.inverse.symbol.bucket(-2);
        for (label, key) in [("PHI5_B1", (2, -3, 0)), ("PHI5_B2", (1, -2, 0)), ("PHI5_B3", (2, -2, 1))] {
            let result = compute_case_terms(&c5, setup.part(key), b, chart, opts)?;
            subs.push(SubResult { label: label.into(), result });
        }
    }
    Ok(BoundaryPhi { n, total, cases, subs })
}

fn mentions_x(t: &Term) -> bool {
    use crate::scalars::JetAtom;
    t.jet.atoms().iter().any(|a| match a {
        JetAtom::Comp { field, .. } | JetAtom::Deriv { field, .. } => *field == Field::X,
        JetAtom::Inner(a, b) | JetAtom::DInner { a, b, .. } => *a == Field::X || *b == Field::X,
        _ => false,
    })
}
