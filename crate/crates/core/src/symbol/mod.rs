//! Graded symbols in the collar chart and the chart rewrite rules at `x₀`.

mod graded;
mod ops;
mod term;

pub use graded::{ChartContext, GradedSymbol};
pub use ops::{
    dx_apply, dxi_apply, restrict_to_boundary_sphere, term_dx, term_dxi, term_restrict, terms_dx_pow, terms_dxi_pow,
};
pub use term::{collect_terms, normalize_terms, Mode, Term, TermKey, Terms, FRESH_BASE};

/// Human-readable rendering of a term.
pub fn render_term(t: &Term, n: u8) -> String {
    let mut parts = vec![format!("{}", t.xin)];
    if !t.jet.is_one() {
        parts.push(t.jet.render(n));
    }
    for (i, e) in &t.xi {
        let i = i.render(n);
        parts.push(if *e == 1 { format!("xi_{i}") } else { format!("xi_{i}^{e}") });
    }
    if t.norm_pow != 0 {
        parts.push(format!("|xi|^({})", -2 * t.norm_pow));
    }
    if !t.cl.is_one() {
        parts.push(t.cl.to_string());
    }
    parts.join(" * ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::residue::Poly;
    use crate::scalars::{Field, Idx, JetAtom};
    use crate::{XiN, K};
    use num_traits::Zero;

    fn chart() -> ChartContext {
        ChartContext::new(4).unwrap()
    }

    fn norm_inv(k: i32) -> GradedSymbol {
        let mut s = GradedSymbol::new(Mode::ChartFree, 4);
        s.add_terms(-2 * k, vec![Term::one().with_norm_pow(k)]);
        s
    }

    fn restricted(terms: Vec<Term>, order: i32) -> GradedSymbol {
        let mut s = GradedSymbol::new(Mode::Restricted, 4);
        s.add_terms(order, terms);
        s
    }

    #[test]
    fn restriction_examples() {
        let c = chart();
        let r = restrict_to_boundary_sphere(&norm_inv(1), &c).unwrap();
        assert_eq!(r.bucket(-2), &[Term::one().with_xin(&XiN::inv_one_plus_sq(1))]);
        let mut s = GradedSymbol::new(Mode::ChartFree, 4);
        s.add_terms(-3, vec![Term::one().with_norm_pow(2).with_xin(&XiN::monomial(K::int(1), 1))]);
        let r = restrict_to_boundary_sphere(&s, &c).unwrap();
        assert_eq!(r.bucket(-3)[0].xin, XiN::new(Poly::monomial(K::int(1), 1), 2, 2));
        assert_eq!(restrict_to_boundary_sphere(&r, &c), Err(crate::Error::AlreadyRestricted));
    }

    #[test]
    fn normal_derivative_of_inverse_norm() {
        let c = chart();
        assert!(dx_apply(&norm_inv(1), Idx::Sym(1001), &c).unwrap().is_zero());
        assert!(dx_apply(&norm_inv(1), Idx::Lit(2), &c).unwrap().is_zero());
        let d = dx_apply(&norm_inv(1), c.normal(), &c).unwrap();
        let r = restrict_to_boundary_sphere(&d, &c).unwrap();
        let expect = restricted(vec![Term::one().with_jet(vec![JetAtom::Hp]).with_xin(&XiN::inv_one_plus_sq(2).neg())], -2);
        assert_eq!(r, expect);
        // ∂ξn of that is +4 ξn h'/(1+ξn²)³ by the quotient rule
        let dd = dxi_apply(&r, c.normal(), &c).unwrap();
        let num = Poly::monomial(K::int(4), 1);
        assert_eq!(dd.bucket(-3), &[Term::one().with_jet(vec![JetAtom::Hp]).with_xin(&XiN::new(num, 3, 3))]);
    }

    #[test]
    fn second_normal_xi_derivative() {
        let c = chart();
        let d = dxi_apply(&dxi_apply(&norm_inv(1), c.normal(), &c).unwrap(), c.normal(), &c).unwrap();
        let r = restrict_to_boundary_sphere(&d, &c).unwrap();
        let num = Poly::from_coeffs(vec![K::int(-2), K::zero(), K::int(6)]);
        assert_eq!(r.bucket(-4), &[Term::one().with_xin(&XiN::new(num, 3, 3))]);
    }

    #[test]
    fn tangential_xi_derivative_of_quadratic() {
        let c = chart();
        // ∂ξ_t (-V_j W_l ξ_j ξ_l), full tangent part
        let (j, l, t) = (Idx::Sym(1), Idx::Sym(2), Idx::Sym(1001));
        let base = Term::scalar(K::int(-1))
            .with_jet(vec![JetAtom::comp(Field::V, j), JetAtom::comp(Field::W, l)])
            .with_xi(j, 1)
            .with_xi(l, 1);
        let mut s = GradedSymbol::new(Mode::ChartFree, 4);
        s.add_terms(2, vec![base]);
        let d = dxi_apply(&s, t, &c).unwrap();
        // -(V_t W_l + V_l W_t) ξ_l
        let a = Term::scalar(K::int(-1)).with_jet(vec![JetAtom::comp(Field::V, t), JetAtom::comp(Field::W, Idx::Sym(1))]).with_xi(Idx::Sym(1), 1);
        let b = Term::scalar(K::int(-1)).with_jet(vec![JetAtom::comp(Field::V, Idx::Sym(1)), JetAtom::comp(Field::W, t)]).with_xi(Idx::Sym(1), 1);
        let mut expect = GradedSymbol::new(Mode::ChartFree, 4);
        expect.add_terms(1, vec![a, b]);
        assert_eq!(d, expect);
    }

    #[test]
    fn mixed_partials_commute() {
        let c = chart();
        let mut s = GradedSymbol::new(Mode::ChartFree, 4);
        s.add_terms(
            -1,
            vec![Term::one().with_xi(Idx::Sym(1), 2).with_xin(&XiN::monomial(K::int(3), 1)).with_norm_pow(2)],
        );
        for (a, b) in [(Idx::Lit(4), Idx::Lit(1)), (Idx::Lit(2), Idx::Lit(1)), (Idx::Lit(4), Idx::Lit(4))] {
            let ab = dxi_apply(&dxi_apply(&s, a, &c).unwrap(), b, &c).unwrap();
            let ba = dxi_apply(&dxi_apply(&s, b, &c).unwrap(), a, &c).unwrap();
            assert_eq!(ab, ba);
        }
    }

    #[test]
    fn restricted_tangential_derivative_is_rejected() {
        let c = chart();
        let r = restrict_to_boundary_sphere(&norm_inv(1), &c).unwrap();
        assert_eq!(dxi_apply(&r, Idx::Lit(1), &c), Err(crate::Error::WrongMode("chart-free")));
        assert_eq!(dx_apply(&r, Idx::Lit(4), &c), Err(crate::Error::WrongMode("chart-free")));
    }
}
