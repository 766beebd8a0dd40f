use std::fmt;

use super::ExactField;
use crate::{Error, Result};

/// A component or direction index.
///
/// `Lit(k)` is a concrete axis `1..=n`; `Lit(n)` is the inward normal.
/// `Sym(s)` is a symbolic tangent index ranging over `1..n-1`. A symbolic
/// index occurring twice in a term is summed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Idx {
    Lit(u8),
    Sym(u16),
}

impl Idx {
    pub fn is_sym(self) -> bool {
        matches!(self, Idx::Sym(_))
    }

    pub fn sym(self) -> Option<u16> {
        match self {
            Idx::Sym(s) => Some(s),
            Idx::Lit(_) => None,
        }
    }

    /// Rendering with the normal axis shown as `n`.
    pub fn render(self, n: u8) -> String {
        match self {
            Idx::Lit(k) if k == n => "n".to_string(),
            Idx::Lit(k) => k.to_string(),
            Idx::Sym(s) => sym_name(s),
        }
    }
}

/// Display name of a symbolic index: `j`, `l`, `k`, `p`, `q`, `r`, `t`, `u`
/// then `j9`, `j10`, ...
pub fn sym_name(s: u16) -> String {
    const NAMES: [&str; 8] = ["j", "l", "k", "p", "q", "r", "t", "u"];
    match NAMES.get(s.wrapping_sub(1) as usize) {
        Some(name) if s >= 1 => (*name).to_string(),
        _ => format!("j{s}"),
    }
}

impl fmt::Display for Idx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Idx::Lit(k) => write!(f, "{k}"),
            Idx::Sym(s) => write!(f, "{}", sym_name(*s)),
        }
    }
}

/// The vector fields carried by jet atoms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Field {
    V,
    W,
    X,
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Field::V => "V",
            Field::W => "W",
            Field::X => "X",
        };
        f.write_str(s)
    }
}

/// Point constants whose derivatives never enter the computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Opaque {
    /// Scalar curvature.
    S,
    DivX,
    Norm2X,
    /// Trace of the moment map on spinors.
    TrMu,
}

impl fmt::Display for Opaque {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Opaque::S => "s",
            Opaque::DivX => "divX",
            Opaque::Norm2X => "|X|^2",
            Opaque::TrMu => "Tr(mu(X))",
        };
        f.write_str(s)
    }
}

/// Terminal aggregates produced by contraction or by the interior assembly.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Aggregate {
    /// A connected group of atoms whose shared symbolic indices are summed
    /// over the tangent range. Indices are relabeled canonically from 1.
    Contraction(Vec<JetAtom>),
    /// `Ric(V,W) - s/2 g(V,W)`.
    Einstein,
    /// `g(∇_a X, b)`.
    CovX(Field, Field),
}

/// A commuting jet variable at the evaluation point.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum JetAtom {
    /// Component `field_idx`.
    Comp { field: Field, idx: Idx },
    /// First derivative `∂_dir field_idx`.
    Deriv { field: Field, dir: Idx, idx: Idx },
    /// `h'(0)`.
    Hp,
    Scalar(Opaque),
    /// `g(a, b)` over the full range.
    Inner(Field, Field),
    /// `∂_dir g(a, b)`.
    DInner { dir: Idx, a: Field, b: Field },
    /// `<∇_field e_a, e_b>` for literal frame indices `a < b`.
    Conn { field: Field, a: u8, b: u8 },
    /// `∂_dir <∇_field e_a, e_b>`.
    DConn { dir: Idx, field: Field, a: u8, b: u8 },
    /// `sqrt(h(x_n))`, equal to 1 at the evaluation point.
    FrameScale,
    /// Kronecker delta, resolved by the owning term.
    Delta(Idx, Idx),
    Agg(Aggregate),
}

impl JetAtom {
    pub fn comp(field: Field, idx: Idx) -> Self {
        JetAtom::Comp { field, idx }
    }

    pub fn deriv(field: Field, dir: Idx, idx: Idx) -> Self {
        JetAtom::Deriv { field, dir, idx }
    }

    /// All index slots, directions first.
    pub fn indices(&self) -> Vec<Idx> {
        match self {
            JetAtom::Comp { idx, .. } => vec![*idx],
            JetAtom::Deriv { dir, idx, .. } => vec![*dir, *idx],
            JetAtom::DInner { dir, .. } | JetAtom::DConn { dir, .. } => vec![*dir],
            JetAtom::Delta(a, b) => vec![*a, *b],
            JetAtom::Agg(Aggregate::Contraction(_))
            | JetAtom::Agg(_)
            | JetAtom::Hp
            | JetAtom::Scalar(_)
            | JetAtom::Inner(..)
            | JetAtom::Conn { .. }
            | JetAtom::FrameScale => Vec::new(),
        }
    }

    /// Rewrites every free index slot through `f`. Aggregates are closed and
    /// left untouched.
    pub fn map_indices(&self, f: &impl Fn(Idx) -> Idx) -> Self {
        match self {
            JetAtom::Comp { field, idx } => JetAtom::Comp { field: *field, idx: f(*idx) },
            JetAtom::Deriv { field, dir, idx } => JetAtom::Deriv { field: *field, dir: f(*dir), idx: f(*idx) },
            JetAtom::DInner { dir, a, b } => JetAtom::DInner { dir: f(*dir), a: *a, b: *b },
            JetAtom::DConn { dir, field, a, b } => JetAtom::DConn { dir: f(*dir), field: *field, a: *a, b: *b },
            JetAtom::Delta(a, b) => JetAtom::Delta(f(*a), f(*b)),
            other => other.clone(),
        }
    }

    /// `∂_dir` of the atom as a sum of `(coefficient, replacement atoms)`.
    /// An empty result means the derivative vanishes at the evaluation point.
    pub fn derive<R: ExactField>(&self, dir: Idx, n: u8) -> Result<Vec<(R, Vec<JetAtom>)>> {
        let second = |what: &JetAtom| Error::SecondDerivative(format!("{what:?} along {dir}"));
        Ok(match self {
            JetAtom::Comp { field, idx } => vec![(R::one(), vec![JetAtom::deriv(*field, dir, *idx)])],
            JetAtom::Inner(a, b) => vec![(R::one(), vec![JetAtom::DInner { dir, a: *a, b: *b }])],
            JetAtom::Conn { field, a, b } => {
                vec![(R::one(), vec![JetAtom::DConn { dir, field: *field, a: *a, b: *b }])]
            }
            JetAtom::Deriv { .. } | JetAtom::DInner { .. } | JetAtom::DConn { .. } => {
                return Err(second(self))
            }
            JetAtom::FrameScale => {
                if dir == Idx::Lit(n) {
                    vec![(R::from_frac(1, 2), vec![JetAtom::Hp])]
                } else {
                    Vec::new()
                }
            }
            JetAtom::Hp | JetAtom::Scalar(_) | JetAtom::Delta(..) => Vec::new(),
            JetAtom::Agg(_) => return Err(Error::Chart("aggregates are terminal".into())),
        })
    }

    /// Rendering with the normal axis shown as `n`.
    pub fn render(&self, n: u8) -> String {
        let r = |i: &Idx| i.render(n);
        match self {
            JetAtom::Comp { field, idx } => format!("{field}_{}", r(idx)),
            JetAtom::Deriv { field, dir, idx } => format!("D{}{field}_{}", r(dir), r(idx)),
            JetAtom::Hp => "h'(0)".into(),
            JetAtom::Scalar(o) => o.to_string(),
            JetAtom::Inner(a, b) => format!("g({a},{b})"),
            JetAtom::DInner { dir, a, b } => format!("D{}g({a},{b})", r(dir)),
            JetAtom::Conn { field, a, b } => format!("<nabla_{field} e{a},e{b}>"),
            JetAtom::DConn { dir, field, a, b } => format!("D{}<nabla_{field} e{a},e{b}>", r(dir)),
            JetAtom::FrameScale => "sqrt(h)".into(),
            JetAtom::Delta(a, b) => format!("delta({},{})", r(a), r(b)),
            JetAtom::Agg(agg) => agg.render(n),
        }
    }

    /// `true` for a derivative along a tangent direction.
    pub fn is_tangential_derivative(&self, n: u8) -> bool {
        let tangential = |d: &Idx| *d != Idx::Lit(n);
        match self {
            JetAtom::Deriv { dir, .. } | JetAtom::DInner { dir, .. } | JetAtom::DConn { dir, .. } => tangential(dir),
            JetAtom::Agg(Aggregate::Contraction(atoms)) => atoms.iter().any(|a| a.is_tangential_derivative(n)),
            _ => false,
        }
    }
}

impl Aggregate {
    /// Conventional name for the contractions that occur in boundary
    /// densities, or a generic summed product.
    pub fn render(&self, n: u8) -> String {
        match self {
            Aggregate::Einstein => "G(V,W)".into(),
            Aggregate::CovX(a, b) => format!("g(nabla_{a}X,{b})"),
            Aggregate::Contraction(atoms) => {
                if let Some(name) = contraction_name(atoms, n) {
                    return name.to_string();
                }
                let body: Vec<String> = atoms.iter().map(|a| a.render(n)).collect();
                format!("sum[{}]", body.join("*"))
            }
        }
    }
}

fn contraction_name(atoms: &[JetAtom], n: u8) -> Option<&'static str> {
    use Field::*;
    use JetAtom::*;
    let s = Idx::Sym(1);
    let nn = Idx::Lit(n);
    let table: [(Vec<JetAtom>, &'static str); 9] = [
        (vec![Comp { field: V, idx: s }, Comp { field: W, idx: s }], "g(V^T,W^T)"),
        (vec![Comp { field: V, idx: s }, Comp { field: X, idx: s }], "g(X^T,V^T)"),
        (vec![Comp { field: W, idx: s }, Comp { field: X, idx: s }], "g(X^T,W^T)"),
        (vec![Comp { field: V, idx: s }, Comp { field: V, idx: s }], "|V^T|^2"),
        (vec![Comp { field: W, idx: s }, Deriv { field: V, dir: nn, idx: s }], "g(DnV^T,W^T)"),
        (vec![Comp { field: V, idx: s }, Deriv { field: W, dir: nn, idx: s }], "g(V^T,DnW^T)"),
        (vec![Comp { field: V, idx: s }, Deriv { field: W, dir: s, idx: nn }], "V^T(W_n)"),
        (vec![Comp { field: W, idx: s }, Deriv { field: V, dir: s, idx: nn }], "W^T(V_n)"),
        (vec![Deriv { field: X, dir: s, idx: s }], "div^T(X)"),
    ];
    table.into_iter().find(|(pat, _)| pat.as_slice() == atoms).map(|(_, name)| name)
}

/// A commutative product of jet atoms, stored sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JetMonomial {
    atoms: Vec<JetAtom>,
}

impl JetMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn new(mut atoms: Vec<JetAtom>) -> Self {
        atoms.sort();
        Self { atoms }
    }

    pub fn atom(a: JetAtom) -> Self {
        Self { atoms: vec![a] }
    }

    pub fn atoms(&self) -> &[JetAtom] {
        &self.atoms
    }

    pub fn is_one(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn mul(&self, o: &JetMonomial) -> JetMonomial {
        let mut atoms = self.atoms.clone();
        atoms.extend(o.atoms.iter().cloned());
        Self::new(atoms)
    }

    pub fn map_indices(&self, f: &impl Fn(Idx) -> Idx) -> JetMonomial {
        Self::new(self.atoms.iter().map(|a| a.map_indices(f)).collect())
    }

    /// Every index slot across all atoms.
    pub fn indices(&self) -> Vec<Idx> {
        self.atoms.iter().flat_map(|a| a.indices()).collect()
    }

    /// Product rule: `∂_dir` of the monomial.
    pub fn leibniz_dn<R: ExactField>(&self, dir: Idx, n: u8) -> Result<Vec<(R, JetMonomial)>> {
        let mut out = Vec::new();
        for (pos, atom) in self.atoms.iter().enumerate() {
            for (c, replacement) in atom.derive::<R>(dir, n)? {
                let mut atoms: Vec<JetAtom> = self.atoms.iter().enumerate().filter(|(i, _)| *i != pos).map(|(_, a)| a.clone()).collect();
                atoms.extend(replacement);
                out.push((c, JetMonomial::new(atoms)));
            }
        }
        Ok(out)
    }

    pub fn render(&self, n: u8) -> String {
        if self.atoms.is_empty() {
            return "1".into();
        }
        let parts: Vec<String> = self.atoms.iter().map(|a| a.render(n)).collect();
        parts.join("*")
    }

    pub fn has_tangential_derivative(&self, n: u8) -> bool {
        self.atoms.iter().any(|a| a.is_tangential_derivative(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use proptest::prelude::*;
    use std::collections::BTreeMap;

    const N: u8 = 4;

    fn v(i: Idx) -> JetAtom {
        JetAtom::comp(Field::V, i)
    }
    fn w(i: Idx) -> JetAtom {
        JetAtom::comp(Field::W, i)
    }

    fn collect(terms: Vec<(Rational, JetMonomial)>) -> BTreeMap<JetMonomial, Rational> {
        let mut m: BTreeMap<JetMonomial, Rational> = BTreeMap::new();
        for (c, j) in terms {
            *m.entry(j).or_insert_with(|| Rational::from_int(0)) += c;
        }
        m.retain(|_, c| !num_traits::Zero::is_zero(c));
        m
    }

    #[test]
    fn product_rule_on_components() {
        let nn = Idx::Lit(N);
        let m = JetMonomial::new(vec![v(Idx::Sym(1)), w(Idx::Sym(2))]);
        let d = collect(m.leibniz_dn::<Rational>(nn, N).unwrap());
        let expect = collect(vec![
            (Rational::from_int(1), JetMonomial::new(vec![JetAtom::deriv(Field::V, nn, Idx::Sym(1)), w(Idx::Sym(2))])),
            (Rational::from_int(1), JetMonomial::new(vec![v(Idx::Sym(1)), JetAtom::deriv(Field::W, nn, Idx::Sym(2))])),
        ]);
        assert_eq!(d, expect);

        let normal = JetMonomial::new(vec![v(nn), w(nn)]);
        let d = normal.leibniz_dn::<Rational>(nn, N).unwrap();
        assert_eq!(d.len(), 2);
        assert!(d.iter().any(|(_, m)| m.render(N) == "W_n*DnV_n"));
        assert!(d.iter().any(|(_, m)| m.render(N) == "V_n*DnW_n"));
    }

    #[test]
    fn constants_annihilate() {
        for a in [JetAtom::Hp, JetAtom::Scalar(Opaque::S), JetAtom::Scalar(Opaque::TrMu)] {
            assert!(JetMonomial::atom(a).leibniz_dn::<Rational>(Idx::Lit(N), N).unwrap().is_empty());
        }
        let fs = JetMonomial::atom(JetAtom::FrameScale);
        assert!(fs.leibniz_dn::<Rational>(Idx::Sym(1), N).unwrap().is_empty());
        let d = fs.leibniz_dn::<Rational>(Idx::Lit(N), N).unwrap();
        assert_eq!(d, vec![(Rational::from_frac(1, 2), JetMonomial::atom(JetAtom::Hp))]);
    }

    #[test]
    fn second_derivative_is_an_error() {
        let m = JetMonomial::atom(JetAtom::deriv(Field::X, Idx::Lit(N), Idx::Lit(1)));
        assert!(matches!(m.leibniz_dn::<Rational>(Idx::Lit(N), N), Err(Error::SecondDerivative(_))));
    }

    fn arb_atom() -> impl Strategy<Value = JetAtom> {
        let field = prop_oneof![Just(Field::V), Just(Field::W), Just(Field::X)];
        let idx = prop_oneof![(1u8..=N).prop_map(Idx::Lit), (1u16..4).prop_map(Idx::Sym)];
        prop_oneof![
            (field.clone(), idx).prop_map(|(f, i)| JetAtom::comp(f, i)),
            Just(JetAtom::Hp),
            Just(JetAtom::FrameScale),
            Just(JetAtom::Scalar(Opaque::DivX)),
            (field.clone(), field).prop_map(|(a, b)| JetAtom::Inner(a, b)),
        ]
    }

    fn arb_mono() -> impl Strategy<Value = JetMonomial> {
        prop::collection::vec(arb_atom(), 0..4).prop_map(JetMonomial::new)
    }

    proptest! {
        #[test]
        fn leibniz_is_a_derivation(a in arb_mono(), b in arb_mono(), dir in prop_oneof![Just(Idx::Lit(N)), Just(Idx::Sym(7))]) {
            let lhs = collect(a.mul(&b).leibniz_dn::<Rational>(dir, N).unwrap());
            let mut rhs = Vec::new();
            for (c, m) in a.leibniz_dn::<Rational>(dir, N).unwrap() {
                rhs.push((c, m.mul(&b)));
            }
            for (c, m) in b.leibniz_dn::<Rational>(dir, N).unwrap() {
                rhs.push((c, a.mul(&m)));
            }
            prop_assert_eq!(lhs, collect(rhs));
        }
    }
}
