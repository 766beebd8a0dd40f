//! Random well-indexed symbol sources for the round-trip properties.

use proptest::prelude::*;

/// Drawn shape of one term; indices are filled in by `render_term`.
#[derive(Clone, Debug)]
struct TermShape {
    re: i64,
    den: i64,
    im: i64,
    pi_half: u8,
    atoms: Vec<(u8, u8, u8)>,
    xis: Vec<u8>,
    norm: u8,
    cl: u8,
    primed: bool,
}

fn term_shape() -> impl Strategy<Value = TermShape> {
    (
        (-5i64..=5, 1i64..=4, -3i64..=3, 0u8..4),
        prop::collection::vec((0u8..15, 0u8..5, 0u8..5), 0..3),
        prop::collection::vec(0u8..5, 0..4),
        0u8..3,
        0u8..4,
        any::<bool>(),
    )
        .prop_map(|((re, den, im, pi_half), atoms, xis, norm, cl, primed)| TermShape { re, den, im, pi_half, atoms, xis, norm, cl, primed })
}

enum Slot {
    Lit(String),
    Sym,
}

fn slot(c: u8) -> Slot {
    match c {
        0 => Slot::Lit("1".into()),
        1 => Slot::Lit("2".into()),
        2 => Slot::Lit("n".into()),
        _ => Slot::Sym,
    }
}

/// Renders a term of `order`; symbolic slots are paired up in order of appearance.
fn render_term(t: &TermShape, order: i32) -> Option<String> {
    // atom templates with `{}` index holes
    let mut templates: Vec<(String, Vec<Slot>)> = Vec::new();
    for &(kind, a, b) in &t.atoms {
        let (tpl, slots) = match kind {
            0 => ("V({})", vec![slot(a)]),
            1 => ("W({})", vec![slot(a)]),
            2 => ("X({})", vec![slot(a)]),
            3 => ("DV({},{})", vec![slot(a), slot(b)]),
            4 => ("DX({},{})", vec![slot(a), slot(b)]),
            5 => ("hp", vec![]),
            6 => ("s", vec![]),
            7 => ("divX*norm2X", vec![]),
            8 => ("trMu", vec![]),
            9 => ("rooth", vec![]),
            10 => ("g(V,W)", vec![]),
            11 => ("Dg({},V,X)", vec![slot(a)]),
            12 => ("conn(V,1,2)", vec![]),
            13 => ("dconn({},W,1,3)", vec![slot(a)]),
            _ => ("delta({},{})", vec![slot(a), slot(b)]),
        };
        templates.push((tpl.to_string(), slots));
    }
    for &x in &t.xis {
        templates.push(("xi({})".into(), vec![slot(x)]));
    }
    let n_sym = templates.iter().flat_map(|(_, s)| s).filter(|s| matches!(s, Slot::Sym)).count();
    let names = ["j", "l", "k"];
    let mut sym_seen = 0;
    let mut factors = Vec::new();
    for (tpl, slots) in templates {
        let mut out = tpl;
        for s in slots {
            let text = match s {
                Slot::Lit(l) => l,
                // an odd leftover symbolic slot becomes a literal
                Slot::Sym if sym_seen + 1 == n_sym && n_sym % 2 == 1 => "3".into(),
                Slot::Sym => {
                    let name = names[(sym_seen / 2) % names.len()];
                    sym_seen += 1;
                    // reuse of a name beyond its pair would over-count it
                    if sym_seen > 2 * names.len() {
                        return None;
                    }
                    if t.primed { format!("{name}'") } else { name.to_string() }
                }
            };
            out = out.replacen("{}", &text, 1);
        }
        factors.push(out);
    }
    let xin = order + 2 * t.norm as i32 - t.xis.len() as i32;
    if xin < 0 {
        return None;
    }
    if xin > 0 {
        factors.push(format!("xin^{xin}"));
    }
    if t.norm > 0 {
        factors.push(format!("normxi2inv^{}", t.norm));
    }
    match t.cl {
        1 => factors.push("e(1)".into()),
        2 => factors.push("e(2)*e(n)".into()),
        3 => factors.push("e(3)*e(1)*e(2)".into()),
        _ => {}
    }
    let coef = format!("({}/{} + {}*I)*PI^({}/2)", t.re, t.den, t.im, t.pi_half);
    factors.insert(0, coef);
    Some(factors.join("*"))
}

pub fn source() -> impl Strategy<Value = String> {
    prop::collection::vec((-3i32..=2, prop::collection::vec(term_shape(), 1..4)), 1..3).prop_map(|blocks| {
        let mut src = String::new();
        for (order, terms) in blocks {
            let body: Vec<String> = terms.iter().filter_map(|t| render_term(t, order)).collect();
            src.push_str(&format!("order {order} {{ {} }}\n", body.join(" + ")));
        }
        src
    })
}
