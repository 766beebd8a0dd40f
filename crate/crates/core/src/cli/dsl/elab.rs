use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::parse::{err, Arg, BinOp, Block, Expr, Pos};
use crate::calculus::connection_a;
use crate::clifford::CliffordWord;
use crate::scalars::{Field, Idx, JetAtom, Opaque};
use crate::symbol::{normalize_terms, GradedSymbol, Mode, Term};
use crate::{Error, Result, XiN, K};

#[derive(Clone, Debug)]
enum IndexRef {
    Lit(u8),
    Name { name: String, primed: bool, pos: Pos },
}

#[derive(Clone, Debug)]
enum Fac {
    Comp(Field, IndexRef),
    Deriv(Field, IndexRef, IndexRef),
    Atom(JetAtom),
    DInner(IndexRef, Field, Field),
    Conn(Field, IndexRef, IndexRef),
    DConn(IndexRef, Field, IndexRef, IndexRef),
    Delta(IndexRef, IndexRef),
    Xi(IndexRef),
    Xin,
    Norm(i32),
    Cl(IndexRef),
    Fixed(Term),
}

impl Fac {
    /// Index slots, each flagged when only a literal may fill it.
    fn slots(&self) -> Vec<(&IndexRef, bool)> {
        match self {
            Fac::Comp(_, i) | Fac::Xi(i) => vec![(i, false)],
            Fac::Cl(i) => vec![(i, true)],
            Fac::Deriv(_, d, i) | Fac::Delta(d, i) => vec![(d, false), (i, false)],
            Fac::DInner(d, ..) => vec![(d, false)],
            Fac::Conn(_, a, b) => vec![(a, true), (b, true)],
            Fac::DConn(d, _, a, b) => vec![(d, false), (a, true), (b, true)],
            Fac::Atom(_) | Fac::Xin | Fac::Norm(_) | Fac::Fixed(_) => Vec::new(),
        }
    }
}

#[derive(Clone, Debug)]
struct Mono {
    coef: K,
    facs: Vec<Fac>,
}

type Sum = Vec<Mono>;

fn constant(c: K) -> Sum {
    vec![Mono { coef: c, facs: Vec::new() }]
}

fn factor(f: Fac) -> Sum {
    vec![Mono { coef: K::one(), facs: vec![f] }]
}

fn as_constant(s: &Sum) -> Option<K> {
    match s.as_slice() {
        [] => Some(K::zero()),
        [m] if m.facs.is_empty() => Some(m.coef.clone()),
        _ => None,
    }
}

fn product(a: &Sum, b: &Sum) -> Sum {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            let mut facs = x.facs.clone();
            facs.extend(y.facs.iter().cloned());
            out.push(Mono { coef: &x.coef * &y.coef, facs });
        }
    }
    out
}

struct Elab {
    n: u8,
}

impl Elab {
    fn index(&self, a: &Arg) -> Result<IndexRef> {
        let t = a.text.as_str();
        if t == "n" {
            return Ok(IndexRef::Lit(self.n));
        }
        if let Ok(v) = t.parse::<u32>() {
            if v == 0 || v > self.n as u32 {
                return err(a.pos, format!("index {v} out of range 1..{}", self.n));
            }
            return Ok(IndexRef::Lit(v as u8));
        }
        let (base, primed) = match t.strip_suffix('\'') {
            Some(b) => (b, true),
            None => (t, false),
        };
        let ok = base.chars().next().is_some_and(|c| c.is_ascii_lowercase())
            && base.chars().all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_');
        if !ok {
            return err(a.pos, format!("invalid index name '{t}'"));
        }
        Ok(IndexRef::Name { name: t.to_string(), primed, pos: a.pos })
    }

    fn field(&self, a: &Arg) -> Result<Field> {
        match a.text.as_str() {
            "V" => Ok(Field::V),
            "W" => Ok(Field::W),
            "X" => Ok(Field::X),
            t => err(a.pos, format!("expected a vector field V, W or X, found '{t}'")),
        }
    }

    fn arity(&self, name: &str, args: &[Arg], k: usize, pos: Pos) -> Result<()> {
        if args.len() != k {
            return err(pos, format!("{name} takes {k} argument(s), found {}", args.len()));
        }
        Ok(())
    }

    fn name(&self, name: &str, pos: Pos) -> Result<Sum> {
        let atom = |a: JetAtom| Ok(factor(Fac::Atom(a)));
        match name {
            "I" => Ok(constant(K::i())),
            "PI" => Ok(constant(K::pi())),
            "xin" => Ok(factor(Fac::Xin)),
            "normxi2inv" => Ok(factor(Fac::Norm(1))),
            "hp" => atom(JetAtom::Hp),
            "s" => atom(JetAtom::Scalar(Opaque::S)),
            "divX" => atom(JetAtom::Scalar(Opaque::DivX)),
            "norm2X" => atom(JetAtom::Scalar(Opaque::Norm2X)),
            "trMu" => atom(JetAtom::Scalar(Opaque::TrMu)),
            "rooth" => atom(JetAtom::FrameScale),
            other => err(pos, format!("unknown identifier '{other}'")),
        }
    }

    fn call(&self, name: &str, args: &[Arg], pos: Pos) -> Result<Sum> {
        let field_of = |c: char| match c {
            'V' => Some(Field::V),
            'W' => Some(Field::W),
            'X' => Some(Field::X),
            _ => None,
        };
        let f = match name {
            "xi" => {
                self.arity(name, args, 1, pos)?;
                Fac::Xi(self.index(&args[0])?)
            }
            "e" => {
                self.arity(name, args, 1, pos)?;
                Fac::Cl(self.index(&args[0])?)
            }
            "V" | "W" | "X" => {
                self.arity(name, args, 1, pos)?;
                Fac::Comp(field_of(name.chars().next().unwrap()).unwrap(), self.index(&args[0])?)
            }
            "DV" | "DW" | "DX" => {
                self.arity(name, args, 2, pos)?;
                Fac::Deriv(field_of(name.chars().nth(1).unwrap()).unwrap(), self.index(&args[0])?, self.index(&args[1])?)
            }
            "g" => {
                self.arity(name, args, 2, pos)?;
                Fac::Atom(JetAtom::Inner(self.field(&args[0])?, self.field(&args[1])?))
            }
            "Dg" => {
                self.arity(name, args, 3, pos)?;
                Fac::DInner(self.index(&args[0])?, self.field(&args[1])?, self.field(&args[2])?)
            }
            "conn" => {
                self.arity(name, args, 3, pos)?;
                Fac::Conn(self.field(&args[0])?, self.index(&args[1])?, self.index(&args[2])?)
            }
            "dconn" => {
                self.arity(name, args, 4, pos)?;
                Fac::DConn(self.index(&args[0])?, self.field(&args[1])?, self.index(&args[2])?, self.index(&args[3])?)
            }
            "delta" => {
                self.arity(name, args, 2, pos)?;
                Fac::Delta(self.index(&args[0])?, self.index(&args[1])?)
            }
            "A" => {
                self.arity(name, args, 1, pos)?;
                let field = self.field(&args[0])?;
                return Ok(connection_a(field, self.n).into_iter().map(|t| Mono { coef: K::one(), facs: vec![Fac::Fixed(t)] }).collect());
            }
            other => return err(pos, format!("unknown function '{other}'")),
        };
        Ok(factor(f))
    }

    fn expr(&self, e: &Expr) -> Result<Sum> {
        match e {
            Expr::Int(v, _) => Ok(constant(K::rational(BigRational::from_integer(v.clone())))),
            Expr::Name(s, p) => self.name(s, *p),
            Expr::Call(s, args, p) => self.call(s, args, *p),
            Expr::Neg(x, _) => Ok(self.expr(x)?.into_iter().map(|m| Mono { coef: -m.coef, facs: m.facs }).collect()),
            Expr::Bin(op, a, b, p) => {
                let (a, b) = (self.expr(a)?, self.expr(b)?);
                match op {
                    BinOp::Add => Ok(a.into_iter().chain(b).collect()),
                    BinOp::Sub => Ok(a.into_iter().chain(b.into_iter().map(|m| Mono { coef: -m.coef, facs: m.facs })).collect()),
                    BinOp::Mul => Ok(product(&a, &b)),
                    BinOp::Div => {
                        let Some(d) = as_constant(&b) else {
                            return err(*p, "division is only defined by a constant");
                        };
                        a.into_iter()
                            .map(|m| {
                                let coef = m.coef.checked_div(&d).map_err(|e| Error::Parse { line: p.line, col: p.col, msg: e.to_string() })?;
                                Ok(Mono { coef, facs: m.facs })
                            })
                            .collect()
                    }
                }
            }
            Expr::Pow(base, num, den, p) => self.pow(base, *num, *den, *p),
        }
    }

    fn pow(&self, base: &Expr, num: i64, den: i64, p: Pos) -> Result<Sum> {
        match base {
            Expr::Name(s, _) if s == "PI" => {
                if (2 * num) % den != 0 {
                    return err(p, "powers of PI must be integers or half-integers");
                }
                return Ok(constant(K::pi_pow((2 * num / den) as i32)));
            }
            Expr::Name(s, _) if s == "normxi2inv" && den == 1 => return Ok(factor(Fac::Norm(num as i32))),
            _ => {}
        }
        if den != 1 {
            return err(p, "fractional exponents apply to PI only");
        }
        let b = self.expr(base)?;
        if let Some(c) = as_constant(&b) {
            let k = c.pow(num.unsigned_abs() as u32);
            if num >= 0 {
                return Ok(constant(k));
            }
            let inv = K::one().checked_div(&k).map_err(|e| Error::Parse { line: p.line, col: p.col, msg: e.to_string() })?;
            return Ok(constant(inv));
        }
        if num < 0 {
            return err(p, "negative exponents apply to constants and normxi2inv only");
        }
        let mut out = constant(K::one());
        for _ in 0..num {
            out = product(&out, &b);
        }
        Ok(out)
    }

    /// Expands the summed indices of one product into terms.
    fn terms(&self, m: &Mono) -> Result<Vec<Term>> {
        let n = self.n;
        // name -> (count, literal-only, primed, first position)
        let mut names: BTreeMap<String, (usize, bool, bool, Pos)> = BTreeMap::new();
        for f in &m.facs {
            for (i, lit_only) in f.slots() {
                if let IndexRef::Name { name, primed, pos } = i {
                    let e = names.entry(name.clone()).or_insert((0, false, *primed, *pos));
                    e.0 += 1;
                    e.1 |= lit_only;
                }
            }
        }
        let mut choices: Vec<(String, Vec<Idx>)> = Vec::new();
        for (k, (name, (count, lit_only, primed, pos))) in names.into_iter().enumerate() {
            if count != 2 {
                return err(pos, format!("index {name} occurs {count} time(s) in a product; a summed index occurs exactly twice"));
            }
            let top = if primed { n - 1 } else { n };
            let opts = if lit_only {
                (1..=top).map(Idx::Lit).collect()
            } else if primed {
                vec![Idx::Sym(k as u16 + 1)]
            } else {
                vec![Idx::Sym(k as u16 + 1), Idx::Lit(n)]
            };
            choices.push((name, opts));
        }
        let mut out = Vec::new();
        let mut pick = vec![0usize; choices.len()];
        loop {
            let env: BTreeMap<&str, Idx> = choices.iter().zip(&pick).map(|((name, o), k)| (name.as_str(), o[*k])).collect();
            if let Some(t) = self.build(m, &env) {
                out.push(t);
            }
            // odometer over the choices
            let mut d = 0;
            while d < pick.len() {
                pick[d] += 1;
                if pick[d] < choices[d].1.len() {
                    break;
                }
                pick[d] = 0;
                d += 1;
            }
            if d == pick.len() {
                break;
            }
        }
        Ok(out)
    }

    fn build(&self, m: &Mono, env: &BTreeMap<&str, Idx>) -> Option<Term> {
        let n = self.n;
        let r = |i: &IndexRef| match i {
            IndexRef::Lit(k) => Idx::Lit(*k),
            IndexRef::Name { name, .. } => env[name.as_str()],
        };
        let lit = |i: &IndexRef| match r(i) {
            Idx::Lit(k) => k,
            Idx::Sym(_) => unreachable!("literal-only slot"),
        };
        let mut coef = m.coef.clone();
        let (mut atoms, mut xin_pow) = (Vec::new(), 0usize);
        let mut t = Term::one();
        let mut fixed = Vec::new();
        // <∇ e_a, e_b> is antisymmetric in the frame slots
        let ordered = |a: u8, b: u8, coef: &mut K| -> Option<(u8, u8)> {
            match a.cmp(&b) {
                std::cmp::Ordering::Less => Some((a, b)),
                std::cmp::Ordering::Equal => None,
                std::cmp::Ordering::Greater => {
                    *coef = -coef.clone();
                    Some((b, a))
                }
            }
        };
        for f in &m.facs {
            match f {
                Fac::Comp(fl, i) => atoms.push(JetAtom::comp(*fl, r(i))),
                Fac::Deriv(fl, d, i) => atoms.push(JetAtom::deriv(*fl, r(d), r(i))),
                Fac::Atom(a) => atoms.push(a.clone()),
                Fac::DInner(d, a, b) => atoms.push(JetAtom::DInner { dir: r(d), a: *a, b: *b }),
                Fac::Conn(fl, a, b) => {
                    let (a, b) = ordered(lit(a), lit(b), &mut coef)?;
                    atoms.push(JetAtom::Conn { field: *fl, a, b });
                }
                Fac::DConn(d, fl, a, b) => {
                    let (a, b) = ordered(lit(a), lit(b), &mut coef)?;
                    atoms.push(JetAtom::DConn { dir: r(d), field: *fl, a, b });
                }
                Fac::Delta(a, b) => atoms.push(JetAtom::Delta(r(a), r(b))),
                Fac::Xi(i) => match r(i) {
                    Idx::Lit(k) if k == n => xin_pow += 1,
                    idx => t = t.with_xi(idx, 1),
                },
                Fac::Xin => xin_pow += 1,
                Fac::Norm(k) => t = t.with_norm_pow(*k),
                Fac::Cl(i) => t = t.with_cl(CliffordWord::gen(lit(i))),
                Fac::Fixed(x) => fixed.push(x.clone()),
            }
        }
        let mut t = t.with_jet(atoms).with_xin(&XiN::monomial(coef, xin_pow));
        for x in fixed {
            t = t.mul(&x);
        }
        Some(t)
    }
}

/// Elaborates parsed blocks into a chart-free graded symbol, checking that
/// every bucket is homogeneous of its declared order.
pub fn elaborate(blocks: &[Block], n: u8) -> Result<GradedSymbol> {
    let e = Elab { n };
    let mut sym = GradedSymbol::new(Mode::ChartFree, n);
    for b in blocks {
        let Some(body) = &b.body else { continue };
        let mut raw = Vec::new();
        for m in e.expr(body)? {
            raw.extend(e.terms(&m)?);
        }
        let terms = normalize_terms(raw, n);
        for t in &terms {
            match t.degree() {
                Some(d) if d == b.order => {}
                Some(d) => {
                    return Err(Error::Validation(format!(
                        "{}:{}: bucket inhomogeneous: term of degree {d} in an order-{} block",
                        b.pos.line, b.pos.col, b.order
                    )))
                }
                None => {
                    return Err(Error::Validation(format!(
                        "{}:{}: bucket inhomogeneous: term of mixed degree in an order-{} block",
                        b.pos.line, b.pos.col, b.order
                    )))
                }
            }
        }
        sym.add_terms(b.order, terms);
    }
    Ok(sym)
}
