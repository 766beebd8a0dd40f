use num_traits::Zero;

use crate::clifford::{spinor_dim, CliffordWord};
use crate::scalars::{gamma_half, Aggregate, Field, Idx, JetAtom, JetMonomial, Opaque};
use crate::symbol::{collect_terms, Term};
use crate::{Error, Result, K};

use super::density::{DensityKind, ResidueDensity};

/// The twisted connection and endomorphism of `H_X` at a point, in normal
/// coordinates with a synchronous frame (`g = δ`, `Γ = 0`, `σ = 0` there).
///
/// Clifford-valued quantities are sums of terms whose jet part carries the
/// field components; full-range sums run over literal frame indices.
#[derive(Clone, Debug)]
pub struct InteriorEndomorphism {
    pub n: u8,
    /// `ω̃_i` for `i = 1..=n`.
    pub omega: Vec<Vec<Term>>,
    /// `Ẽ` with `μ(X)` read as the scalar `Tr(mu(X))` times the identity.
    pub e_tilde: Vec<Term>,
    /// Named intermediate traces of the chain, in order.
    pub steps: Vec<(&'static str, ResidueDensity)>,
    /// `Tr Ẽ`.
    pub trace: ResidueDensity,
}

fn x(k: u8) -> JetAtom {
    JetAtom::comp(Field::X, Idx::Lit(k))
}

fn cl(k: u8) -> Vec<Term> {
    vec![Term::one().with_cl(CliffordWord::gen(k))]
}

fn c_x(n: u8) -> Vec<Term> {
    (1..=n).map(|k| Term::one().with_jet(vec![x(k)]).with_cl(CliffordWord::gen(k))).collect()
}

/// `∂_j c(X)`.
fn d_c_x(j: u8, n: u8) -> Vec<Term> {
    (1..=n)
        .map(|k| Term::one().with_jet(vec![JetAtom::deriv(Field::X, Idx::Lit(j), Idx::Lit(k))]).with_cl(CliffordWord::gen(k)))
        .collect()
}

fn scalar_atom(c: K, atoms: Vec<JetAtom>) -> Vec<Term> {
    vec![Term::scalar(c).with_jet(atoms)]
}

fn mul(a: &[Term], b: &[Term]) -> Vec<Term> {
    collect_terms(a.iter().flat_map(|s| b.iter().map(move |t| s.mul(t))))
}

fn add(a: &[Term], b: &[Term]) -> Vec<Term> {
    collect_terms(a.iter().chain(b).cloned())
}

fn scale(a: &[Term], c: K) -> Vec<Term> {
    a.iter().map(|t| t.clone().scale(&c)).collect()
}

fn sum(parts: impl IntoIterator<Item = Vec<Term>>) -> Vec<Term> {
    collect_terms(parts.into_iter().flatten())
}

/// Spinor trace: only the scalar word survives, with weight `2^⌊n/2⌋`.
fn trace(a: &[Term], n: u8) -> Result<ResidueDensity> {
    let dim = K::int(spinor_dim(n));
    let kept = a.iter().filter(|t| t.cl.is_one()).map(|t| t.clone().scale(&dim));
    let mut d = ResidueDensity::from_terms(n, DensityKind::Interior, kept)?;
    fold_full_range(&mut d);
    Ok(d)
}

/// Replaces a uniform full-range sum `c Σ pattern(i)` by `c·target`.
fn fold(d: &mut ResidueDensity, tuples: &[Vec<u8>], pattern: impl Fn(&[u8]) -> JetMonomial, target: JetMonomial) {
    let Some(first) = tuples.first() else { return };
    let c = d.coefficient(&pattern(first));
    if c.is_zero() || tuples.iter().any(|t| d.coefficient(&pattern(t)) != c) {
        return;
    }
    for t in tuples {
        d.add_term(pattern(t), -c.clone());
    }
    d.add_term(target, c);
}

fn fold_full_range(d: &mut ResidueDensity) {
    let n = d.n;
    let singles: Vec<Vec<u8>> = (1..=n).map(|k| vec![k]).collect();
    let pairs: Vec<Vec<u8>> = (1..=n).flat_map(|a| (1..=n).map(move |b| vec![a, b])).collect();
    fold(d, &singles, |t| JetMonomial::new(vec![x(t[0]), x(t[0])]), JetMonomial::atom(JetAtom::Scalar(Opaque::Norm2X)));
    fold(
        d,
        &singles,
        |t| JetMonomial::atom(JetAtom::deriv(Field::X, Idx::Lit(t[0]), Idx::Lit(t[0]))),
        JetMonomial::atom(JetAtom::Scalar(Opaque::DivX)),
    );
    for (a, b) in [(Field::V, Field::W), (Field::W, Field::V)] {
        // g(∇_a X, b) = a_i ∂_i X_j b_j at the centre of normal coordinates
        fold(
            d,
            &pairs,
            |t| {
                JetMonomial::new(vec![
                    JetAtom::comp(a, Idx::Lit(t[0])),
                    JetAtom::comp(b, Idx::Lit(t[1])),
                    JetAtom::deriv(Field::X, Idx::Lit(t[0]), Idx::Lit(t[1])),
                ])
            },
            JetMonomial::atom(JetAtom::Agg(Aggregate::CovX(a, b))),
        );
    }
}

fn check_dim(n: u8) -> Result<()> {
    if n < 3 {
        return Err(Error::Validation("dimension ≥ 3 required".into()));
    }
    Ok(())
}

/// The untwisted connection's X part, `-(1/8)(c(e_i)c(X) + c(X)c(e_i))`.
fn omega_x(i: u8, n: u8) -> Vec<Term> {
    let cx = c_x(n);
    scale(&add(&mul(&cl(i), &cx), &mul(&cx, &cl(i))), K::frac(-1, 8))
}

/// Works out `ω̃`, `Ẽ` and `Tr Ẽ` for `H_X` at the centre of normal
/// coordinates, keeping each step of the chain.
pub fn interior_endomorphism(n: u8) -> Result<InteriorEndomorphism> {
    check_dim(n)?;
    let omega: Vec<Vec<Term>> = (1..=n).map(|i| add(&omega_x(i, n), &scalar_atom(K::frac(1, 2), vec![x(i)]))).collect();

    // E of (D + c(X)/4)^2
    let norm2: Vec<Term> = sum((1..=n).map(|k| scalar_atom(K::int(1), vec![x(k), x(k)])));
    let quarter_cx: Vec<Vec<Term>> = (1..=n).map(|j| scale(&d_c_x(j, n), K::frac(1, 4))).collect();
    let commutator = sum((1..=n).map(|j| {
        let jj = (j - 1) as usize;
        add(&mul(&quarter_cx[jj], &cl(j)), &scale(&mul(&cl(j), &quarter_cx[jj]), K::int(-1)))
    }));
    let anti = sum((1..=n).map(|j| {
        let cx = c_x(n);
        let s = add(&mul(&cl(j), &cx), &mul(&cx, &cl(j)));
        mul(&s, &s)
    }));
    let e = sum([
        scalar_atom(K::frac(-1, 4), vec![JetAtom::Scalar(Opaque::S)]),
        scale(&norm2, K::frac(1, 16)),
        scale(&commutator, K::frac(1, 2)),
        scale(&anti, K::frac(-1, 64)),
    ]);

    // shift terms of Ẽ
    let div = sum((1..=n).map(|j| scalar_atom(K::frac(-1, 2), vec![JetAtom::deriv(Field::X, Idx::Lit(j), Idx::Lit(j))])));
    let omega_left = sum((1..=n).map(|k| scale(&mul(&omega_x(k, n), &scalar_atom(K::int(1), vec![x(k)])), K::frac(-1, 2))));
    let omega_right = sum((1..=n).map(|l| scale(&mul(&scalar_atom(K::int(1), vec![x(l)]), &omega_x(l, n)), K::frac(-1, 2))));
    let quad = scale(&norm2, K::frac(-1, 4));
    let mu = scalar_atom(K::int(1), vec![JetAtom::Scalar(Opaque::TrMu)]);

    let e_tilde = sum([e.clone(), mu, div.clone(), omega_left.clone(), omega_right.clone(), quad.clone()]);
    let steps = vec![
        ("Tr E", trace(&e, n)?),
        ("Tr[e_j(c(X)/4)c(e_j) - c(e_j)e_j(c(X)/4)]", trace(&commutator, n)?.scale(&K::frac(1, 4))),
        ("-(1/2) d_j X_j", trace(&div, n)?.scale(&K::frac(1, spinor_dim(n)))),
        ("-(1/2) omega_k X_k", trace(&omega_left, n)?.scale(&K::frac(1, spinor_dim(n)))),
        ("-(1/2) X_l omega_l", trace(&omega_right, n)?.scale(&K::frac(1, spinor_dim(n)))),
        ("-(1/4) X_j X_j", trace(&quad, n)?.scale(&K::frac(1, spinor_dim(n)))),
    ];
    let trace = trace(&e_tilde, n)?;
    Ok(InteriorEndomorphism { n, omega, e_tilde, steps, trace })
}

/// `F(V,W) = Σ V_a W_b Tr F_ab` for the twisted connection
/// `∇̃_a = e_a + σ_a + (3/4)X_a`.
///
/// At the centre `σ_a` and `[e_a, e_b]` vanish and `e_a(σ_b)` is a sum of
/// bivectors, which the trace kills, so only the twist contributes.
pub fn interior_curvature_trace(n: u8) -> Result<ResidueDensity> {
    check_dim(n)?;
    let twist = |i: u8| scalar_atom(K::frac(3, 4), vec![x(i)]);
    let d = |dir: u8, i: u8| scalar_atom(K::frac(3, 4), vec![JetAtom::deriv(Field::X, Idx::Lit(dir), Idx::Lit(i))]);
    // the pieces are traced apart so each full-range sum folds on its own
    let (mut ea, mut eb, mut comm) = (Vec::new(), Vec::new(), Vec::new());
    for a in 1..=n {
        for b in 1..=n {
            let vw = scalar_atom(K::int(1), vec![JetAtom::comp(Field::V, Idx::Lit(a)), JetAtom::comp(Field::W, Idx::Lit(b))]);
            ea.extend(mul(&vw, &d(a, b)));
            eb.extend(mul(&vw, &scale(&d(b, a), K::int(-1))));
            let c = add(&mul(&twist(a), &twist(b)), &scale(&mul(&twist(b), &twist(a)), K::int(-1)));
            comm.extend(mul(&vw, &c));
        }
    }
    Ok(trace(&collect_terms(ea), n)?.add(&trace(&collect_terms(eb), n)?).add(&trace(&collect_terms(comm), n)?))
}

/// The interior Einstein functional density `Wres(∇̃_V ∇̃_W H_X^{-m})` for
/// even `n = 2m`:
/// `υ/6 · 2^m · G(V,W) + υ/2 · F(V,W) - 1/2 · Tr(Ẽ) g(V,W)` with
/// `υ = 2π^m / Γ(m)`.
pub fn einstein_functional(n: u8) -> Result<ResidueDensity> {
    if n % 2 == 1 {
        return Err(Error::OddDimension(n));
    }
    check_dim(n)?;
    let m = (n / 2) as u32;
    let upsilon = (K::int(2) * K::pi().pow(m)).checked_div(&gamma_half(2 * m as i32)?)?;
    let mut out = ResidueDensity::zero(n, DensityKind::Interior);
    let g = upsilon.clone() * K::frac(spinor_dim(n), 6);
    out.add_term(JetMonomial::atom(JetAtom::Agg(Aggregate::Einstein)), g);
    out = out.add(&interior_curvature_trace(n)?.scale(&(upsilon * K::frac(1, 2))));
    let vw = JetMonomial::atom(JetAtom::Inner(Field::V, Field::W));
    for (mono, c) in interior_endomorphism(n)?.trace.terms() {
        out.add_term(mono.mul(&vw), c * &K::frac(-1, 2));
    }
    Ok(out)
}
