use std::collections::BTreeMap;

use super::sphere::{perfect_matchings, tensor_moment};
use crate::scalars::{Aggregate, Idx, JetAtom, JetMonomial};
use crate::symbol::Term;
use crate::{Error, Rational, Result};

/// `∫_{|ξ'|=1}` of the tangent ξ factors of a term.
///
/// A monomial `ξ_{i_1}⋯ξ_{i_{2d}}` integrates to `C_d Σ_matchings Π δ`, with
/// the deltas resolved against the jet indices. Odd degree gives nothing.
pub fn sphere_integrate(t: &Term, n: u8) -> Result<Vec<Term>> {
    let idx: Vec<Idx> = t.xi.iter().flat_map(|(i, e)| std::iter::repeat_n(*i, *e as usize)).collect();
    if idx.len() % 2 == 1 {
        return Ok(Vec::new());
    }
    let c = tensor_moment::<Rational>((idx.len() / 2) as u32, n)?;
    let bare = Term { xi: BTreeMap::new(), ..t.clone() }.scale(&c);
    let mut out = Vec::new();
    for m in perfect_matchings(idx.len()) {
        let deltas = m.iter().map(|(a, b)| JetAtom::Delta(idx[*a], idx[*b])).collect();
        if let Some(r) = bare.clone().with_jet(deltas).resolve_deltas(n) {
            out.push(r);
        }
    }
    Ok(out)
}

/// Groups the atoms joined by summed tangent indices into contraction
/// aggregates. Requires a term without ξ factors.
pub fn contract_indices(t: &Term, n: u8) -> Result<Term> {
    if !t.xi.is_empty() {
        return Err(Error::DanglingIndex(format!("ξ factors remain in {:?}", t.xi)));
    }
    if let Some(s) = t.open_syms().first() {
        return Err(Error::DanglingIndex(format!("{} in {}", crate::scalars::sym_name(*s), t.jet.render(n))));
    }
    let atoms = t.jet.atoms();
    // union-find over atom positions, joined through shared symbolic labels
    let mut parent: Vec<usize> = (0..atoms.len()).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        p[i] = r;
        r
    }
    let mut owner: BTreeMap<u16, usize> = BTreeMap::new();
    for (pos, a) in atoms.iter().enumerate() {
        for s in a.indices().into_iter().filter_map(Idx::sym) {
            if let Some(&o) = owner.get(&s) {
                let (x, y) = (find(&mut parent, pos), find(&mut parent, o));
                parent[x] = y;
            } else {
                owner.insert(s, pos);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<JetAtom>> = BTreeMap::new();
    let mut plain = Vec::new();
    for (pos, a) in atoms.iter().enumerate() {
        if a.indices().iter().any(|i| i.is_sym()) {
            let root = find(&mut parent, pos);
            groups.entry(root).or_default().push(a.clone());
        } else {
            plain.push(a.clone());
        }
    }
    for g in groups.into_values() {
        let canon = Term { jet: JetMonomial::new(g), ..Term::one() }.canonicalize();
        plain.push(JetAtom::Agg(Aggregate::Contraction(canon.jet.atoms().to_vec())));
    }
    Ok(Term { jet: JetMonomial::new(plain), ..t.clone() })
}
