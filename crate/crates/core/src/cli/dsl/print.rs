use num_traits::One;

use crate::scalars::{sym_name, Idx, JetAtom, Opaque};
use crate::symbol::{GradedSymbol, Term};
use crate::{Error, Result, K};

fn idx(i: Idx, n: u8) -> String {
    match i {
        Idx::Lit(k) if k == n => "n".into(),
        Idx::Lit(k) => k.to_string(),
        Idx::Sym(s) => format!("{}'", sym_name(s)),
    }
}

fn coef(c: &K) -> String {
    if c.entries().count() > 1 {
        format!("({c})")
    } else {
        c.to_string()
    }
}

fn atom(a: &JetAtom, n: u8) -> Result<String> {
    let i = |x: &Idx| idx(*x, n);
    Ok(match a {
        JetAtom::Comp { field, idx } => format!("{field}({})", i(idx)),
        JetAtom::Deriv { field, dir, idx } => format!("D{field}({},{})", i(dir), i(idx)),
        JetAtom::Hp => "hp".into(),
        JetAtom::Scalar(o) => match o {
            Opaque::S => "s",
            Opaque::DivX => "divX",
            Opaque::Norm2X => "norm2X",
            Opaque::TrMu => "trMu",
        }
        .into(),
        JetAtom::Inner(a, b) => format!("g({a},{b})"),
        JetAtom::DInner { dir, a, b } => format!("Dg({},{a},{b})", i(dir)),
        JetAtom::Conn { field, a, b } => format!("conn({field},{a},{b})"),
        JetAtom::DConn { dir, field, a, b } => format!("dconn({},{field},{a},{b})", i(dir)),
        JetAtom::FrameScale => "rooth".into(),
        JetAtom::Delta(a, b) => format!("delta({},{})", i(a), i(b)),
        JetAtom::Agg(_) => return Err(Error::Validation("aggregates have no symbol syntax".into())),
    })
}

/// One term in DSL syntax.
pub fn print_term(t: &Term, n: u8) -> Result<String> {
    if !t.xin.is_polynomial() {
        return Err(Error::Validation("only polynomial ξn factors have symbol syntax".into()));
    }
    let mut facs = Vec::new();
    for a in t.jet.atoms() {
        facs.push(atom(a, n)?);
    }
    for (i, e) in &t.xi {
        facs.push(if *e == 1 { format!("xi({})", idx(*i, n)) } else { format!("xi({})^{e}", idx(*i, n)) });
    }
    match t.norm_pow {
        0 => {}
        1 => facs.push("normxi2inv".into()),
        k if k > 0 => facs.push(format!("normxi2inv^{k}")),
        k => facs.push(format!("normxi2inv^({k})")),
    }
    for g in t.cl.generators() {
        facs.push(format!("e({g})"));
    }
    let nonzero: Vec<(usize, &K)> = t.xin.num().coeffs().iter().enumerate().filter(|(_, c)| !num_traits::Zero::is_zero(*c)).collect();
    let lead = match nonzero.as_slice() {
        [(d, c)] => {
            match *d {
                0 => {}
                1 => facs.insert(0, "xin".into()),
                d => facs.insert(0, format!("xin^{d}")),
            }
            (*c).clone()
        }
        _ => {
            let parts: Vec<String> = nonzero
                .iter()
                .map(|(d, c)| match d {
                    0 => coef(c),
                    1 => format!("{}*xin", coef(c)),
                    d => format!("{}*xin^{d}", coef(c)),
                })
                .collect();
            facs.insert(0, format!("({})", parts.join(" + ")));
            K::one()
        }
    };
    let body = facs.join("*");
    Ok(if facs.is_empty() {
        coef(&lead)
    } else if lead.is_one() {
        body
    } else if lead == -K::one() {
        format!("-{body}")
    } else {
        format!("{}*{body}", coef(&lead))
    })
}

/// Canonical DSL text of a symbol, buckets in descending order.
pub fn print_symbol(s: &GradedSymbol) -> Result<String> {
    let mut orders = s.orders();
    orders.sort_unstable_by(|a, b| b.cmp(a));
    let mut out = String::new();
    for k in orders {
        let terms = s.bucket(k);
        if terms.is_empty() {
            continue;
        }
        out.push_str(&format!("order {k} {{\n"));
        for (i, t) in terms.iter().enumerate() {
            let sep = if i == 0 { "  " } else { "  + " };
            out.push_str(sep);
            out.push_str(&print_term(t, s.n())?);
            out.push('\n');
        }
        out.push_str("}\n");
    }
    Ok(out)
}
