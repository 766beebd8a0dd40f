use super::OperatorSpec;
use crate::clifford::CliffordWord;
use crate::scalars::{Field, Idx, JetAtom};
use crate::symbol::{ChartContext, GradedSymbol, Mode, Term};
use crate::{Error, Result, XiN, K};

const NAMES: [&str; 5] = ["dirac_sq", "bismut", "nabla_tilde_V", "nabla_tilde_W", "nabla_pair"];

pub fn builtin_names() -> &'static [&'static str] {
    &NAMES
}

/// Built-in operator tables in chart-free mode.
///
/// * `dirac_sq`: `D²`, principal symbol `|ξ|²`. The first-order part at
///   `x₀` is tabulated for `n = 4` only.
/// * `bismut`: `H_X`, adding `(i/2) X_j ξ_j` to the first-order part.
/// * `nabla_tilde_V`, `nabla_tilde_W`: `∇_V + A(V) + ¾ g(V,X)`.
/// * `nabla_pair`: the product of the two twisted connections, written out
///   bucket by bucket.
pub fn builtin(name: &str, chart: &ChartContext) -> Result<OperatorSpec> {
    let n = chart.n();
    match name {
        "dirac_sq" => {
            let mut s = GradedSymbol::new(Mode::ChartFree, n);
            s.add_terms(2, vec![Term::one().with_norm_pow(-1)]);
            let lowest = if n == 4 {
                s.add_terms(1, dirac_sq_first_order(n));
                1
            } else {
                2
            };
            OperatorSpec::new(name, s, Some(lowest))
        }
        "bismut" => {
            let d = builtin("dirac_sq", chart)?;
            let mut s = d.symbol.clone();
            if d.lowest == Some(1) {
                let half_i = K::i() * K::frac(1, 2);
                s.add_terms(1, full_range(n, |i| vec![Term::scalar(half_i.clone()).with_jet(vec![comp(Field::X, i)])], &[]));
            }
            OperatorSpec::new(name, s, d.lowest)
        }
        "nabla_tilde_V" => nabla_tilde(name, Field::V, n),
        "nabla_tilde_W" => nabla_tilde(name, Field::W, n),
        "nabla_pair" => nabla_pair(n),
        other => Err(Error::UnknownBuiltin(other.to_string())),
    }
}

fn comp(f: Field, i: Idx) -> JetAtom {
    JetAtom::comp(f, i)
}

/// `ξ_i` as a term: a tangent ξ factor or the ξₙ polynomial.
fn xi(i: Idx, n: u8) -> Term {
    if i == Idx::Lit(n) {
        Term::one().with_xin(&XiN::monomial(K::int(1), 1))
    } else {
        Term::one().with_xi(i, 1)
    }
}

/// Sums `f(i) · ξ_i` over the full index range, tangent part symbolic.
/// `taken` lists the symbolic labels already used in `f`.
fn full_range(n: u8, f: impl Fn(Idx) -> Vec<Term>, taken: &[u16]) -> Vec<Term> {
    let s = Idx::Sym(taken.iter().max().copied().unwrap_or(0) + 1);
    let mut out = Vec::new();
    for i in [s, Idx::Lit(n)] {
        for t in f(i) {
            out.push(t.mul(&xi(i, n)));
        }
    }
    out
}

/// `A(F) = ¼ Σ_{a,b} <∇_F e_a, e_b> c(e_a) c(e_b) = ½ Σ_{a<b} <∇_F e_a, e_b> e_a e_b`.
pub fn connection_a(field: Field, n: u8) -> Vec<Term> {
    connection_terms(n, |a, b| JetAtom::Conn { field, a, b })
}

fn connection_terms(n: u8, atom: impl Fn(u8, u8) -> JetAtom) -> Vec<Term> {
    let mut out = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            let (_, w) = CliffordWord::from_product(&[a, b]);
            out.push(Term::scalar(K::frac(1, 2)).with_jet(vec![atom(a, b)]).with_cl(w));
        }
    }
    out
}

/// `V[A(W)] = V_j ∂_j A(W)`.
fn directional_a(v: Field, w: Field, n: u8) -> Vec<Term> {
    let mut out = Vec::new();
    for j in [Idx::Sym(1), Idx::Lit(n)] {
        for t in connection_terms(n, |a, b| JetAtom::DConn { dir: j, field: w, a, b }) {
            out.push(t.with_jet(vec![comp(v, j)]));
        }
    }
    out
}

fn dirac_sq_first_order(n: u8) -> Vec<Term> {
    // i h'(0) ξₙ (5/2 - ½ Σ_{k<n} c(e_k) c(e_n))
    let base = Term::scalar(K::i()).with_jet(vec![JetAtom::Hp]).with_xin(&XiN::monomial(K::int(1), 1));
    let mut out = vec![base.clone().scale(&K::frac(5, 2))];
    for k in 1..n {
        let (_, w) = CliffordWord::from_product(&[k, n]);
        out.push(base.clone().scale(&K::frac(-1, 2)).with_cl(w));
    }
    out
}

fn inner(a: Field, b: Field) -> JetAtom {
    JetAtom::Inner(a, b)
}

fn nabla_tilde(name: &str, f: Field, n: u8) -> Result<OperatorSpec> {
    let mut s = GradedSymbol::new(Mode::ChartFree, n);
    s.add_terms(1, full_range(n, |i| vec![Term::scalar(K::i()).with_jet(vec![comp(f, i)])], &[]));
    let mut zero = connection_a(f, n);
    zero.push(Term::scalar(K::frac(3, 4)).with_jet(vec![inner(f, Field::X)]));
    s.add_terms(0, zero);
    OperatorSpec::new(name, s, None)
}

fn nabla_pair(n: u8) -> Result<OperatorSpec> {
    use Field::{V, W, X};
    let i = K::i();
    let q = |a: i64, b: i64| K::frac(a, b);
    let mut s = GradedSymbol::new(Mode::ChartFree, n);
    // σ₂ = -V_j W_l ξ_j ξ_l
    let two = full_range(n, |j| full_range(n, |l| vec![Term::scalar(K::int(-1)).with_jet(vec![comp(V, j), comp(W, l)])], &[1]), &[]);
    s.add_terms(2, two);
    // σ₁
    let mut one = full_range(
        n,
        |l| {
            [Idx::Sym(2), Idx::Lit(n)]
                .into_iter()
                .map(|j| Term::scalar(i.clone()).with_jet(vec![comp(V, j), JetAtom::deriv(W, j, l)]))
                .collect()
        },
        &[2],
    );
    for (a, b) in [(W, V), (V, W)] {
        // i A(a) b_j ξ_j
        one.extend(full_range(n, |j| connection_a(a, n).into_iter().map(|t| t.scale(&i).with_jet(vec![comp(b, j)])).collect(), &[]));
    }
    for (g, b) in [(V, W), (W, V)] {
        // ¾ g(g,X) b_l i ξ_l
        one.extend(full_range(n, |l| vec![Term::scalar(q(3, 4) * i.clone()).with_jet(vec![inner(g, X), comp(b, l)])], &[]));
    }
    s.add_terms(1, one);
    // σ₀
    let av = connection_a(V, n);
    let aw = connection_a(W, n);
    let mut zero = directional_a(V, W, n);
    for x in &av {
        for y in &aw {
            zero.push(x.mul(y));
        }
    }
    zero.extend(aw.iter().map(|t| t.clone().scale(&q(3, 4)).with_jet(vec![inner(V, X)])));
    for j in [Idx::Sym(1), Idx::Lit(n)] {
        zero.push(Term::scalar(q(3, 4)).with_jet(vec![comp(V, j), JetAtom::DInner { dir: j, a: W, b: X }]));
    }
    zero.extend(av.iter().map(|t| t.clone().scale(&q(3, 4)).with_jet(vec![inner(W, X)])));
    zero.push(Term::scalar(q(9, 16)).with_jet(vec![inner(V, X), inner(W, X)]));
    s.add_terms(0, zero);
    OperatorSpec::new("nabla_pair", s, None)
}
