use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use super::boundary::{boundary_phi, BoundaryOptions, BoundaryPhi, BoundarySetup, OracleResidual};
use super::interior::einstein_functional;
use super::cases::CaseIndex;
use super::density::{DensityKind, ResidueDensity};
use crate::residue::contract_indices;
use crate::scalars::{Aggregate, Field, Idx, JetAtom, JetMonomial, Opaque};
use crate::symbol::{ChartContext, Term};
use crate::{Error, Result, K};

/// Labels of the reference table, in report order.
pub const LABELS: [&str; 14] = [
    "PHI1", "PHI2", "PHI3", "PHI4", "PHI4A", "PHI4B", "PHI5", "PHI5_B1", "PHI5_B2", "PHI5_B3", "TOTAL_N4", "THM37", "INTERIOR_N4",
    "THM38",
];

/// Everything the comparison needs: both boundary runs and the interior
/// density for `n = 4`.
#[derive(Clone, Debug)]
pub struct PaperResults {
    pub n4: BoundaryPhi,
    pub n3: BoundaryPhi,
    pub interior4: ResidueDensity,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComparisonEntry {
    pub label: &'static str,
    pub engine: ResidueDensity,
    pub paper: ResidueDensity,
    pub matches: bool,
    /// `None` for exact-only entries.
    pub oracle: Option<OracleResidual>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComparisonReport {
    pub entries: Vec<ComparisonEntry>,
}

#[derive(Serialize)]
struct EntryDoc<'a> {
    label: &'a str,
    #[serde(rename = "match")]
    matches: bool,
    kind: DensityKind,
    n: u8,
    engine: BTreeMap<String, String>,
    paper: BTreeMap<String, String>,
    oracle: Option<OracleResidual>,
}

#[derive(Serialize)]
struct ReportDoc<'a> {
    schema: u32,
    entries: Vec<EntryDoc<'a>>,
}

impl ComparisonReport {
    pub fn entry(&self, label: &str) -> Option<&ComparisonEntry> {
        self.entries.iter().find(|e| e.label == label)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("report serializes")
    }

    /// The structured form behind [`Self::to_json`].
    pub fn to_value(&self) -> serde_json::Value {
        let doc = ReportDoc {
            schema: 1,
            entries: self
                .entries
                .iter()
                .map(|e| EntryDoc {
                    label: e.label,
                    matches: e.matches,
                    kind: e.engine.kind,
                    n: e.engine.n,
                    engine: e.engine.rendered(),
                    paper: e.paper.rendered(),
                    oracle: e.oracle,
                })
                .collect(),
        };
        serde_json::to_value(&doc).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{:<12} {:<6} {:>10}", "label", "match", "oracle");
        for e in &self.entries {
            let oracle = e.oracle.map(|o| format!("{:.1e}", o.max())).unwrap_or_else(|| "exact".into());
            let _ = writeln!(s, "{:<12} {:<6} {:>10}", e.label, if e.matches { "yes" } else { "no" }, oracle);
            let _ = writeln!(s, "    engine: {}", e.engine);
            let _ = writeln!(s, "    paper:  {}", e.paper);
        }
        s
    }
}

/// Runs the built-in pipeline for `n = 4` and `n = 3` and the interior
/// functional for `n = 4`.
pub fn paper_results(opts: &BoundaryOptions, max_depth: u32) -> Result<PaperResults> {
    let run = |n: u8| -> Result<BoundaryPhi> {
        let chart = ChartContext::new(n)?;
        boundary_phi(&BoundarySetup::builtin(&chart, max_depth)?, opts)
    };
    Ok(PaperResults { n4: run(4)?, n3: run(3)?, interior4: einstein_functional(4)? })
}

/// Builds the comparison of every labeled target, engine against the
/// printed reference values.
pub fn compare_to_paper(r: &PaperResults) -> Result<ComparisonReport> {
    if r.n4.n != 4 || r.n3.n != 3 || r.interior4.n != 4 {
        return Err(Error::Validation("comparison needs the n = 4 and n = 3 runs".into()));
    }
    compare_available(Some(&r.n4), Some(&r.n3), Some(&r.interior4))
}

/// Like [`compare_to_paper`], keeping only the labels whose run is present.
pub fn compare_available(
    n4: Option<&BoundaryPhi>,
    n3: Option<&BoundaryPhi>,
    interior4: Option<&ResidueDensity>,
) -> Result<ComparisonReport> {
    for (phi, n) in [(n4, 4), (n3, 3)] {
        if phi.is_some_and(|p| p.n != n) {
            return Err(Error::Validation(format!("expected an n = {n} boundary run")));
        }
    }
    if interior4.is_some_and(|d| d.n != 4 || d.kind != DensityKind::Interior) {
        return Err(Error::Validation("expected the n = 4 interior density".into()));
    }
    // n = 4 labels are skipped when the run is absent; the closures only need a value
    let empty = BoundaryPhi { n: 4, total: ResidueDensity::zero(4, DensityKind::Boundary), cases: Vec::new(), subs: Vec::new() };
    let n4_present = n4.is_some();
    let n4 = n4.unwrap_or(&empty);
    let case = |idx: CaseIndex| -> Result<(ResidueDensity, OracleResidual)> {
        n4.cases
            .iter()
            .find(|c| c.case == idx)
            .map(|c| (c.density.clone(), c.oracle))
            .ok_or_else(|| Error::Validation(format!("case {idx} missing from the n = 4 run")))
    };
    let sub = |label: &str| -> Result<(ResidueDensity, OracleResidual)> {
        n4.subs
            .iter()
            .find(|s| s.label == label)
            .map(|s| (s.result.density.clone(), s.result.oracle))
            .ok_or_else(|| Error::Validation(format!("sub-entry {label} missing from the n = 4 run")))
    };
    let all = |phi: &BoundaryPhi| {
        let mut o = OracleResidual::default();
        for c in &phi.cases {
            o.merge(&c.oracle);
        }
        o
    };
    let mut entries = Vec::new();
    for label in LABELS {
        let present = match label {
            "THM38" => n3.is_some(),
            "INTERIOR_N4" => interior4.is_some(),
            _ => n4_present,
        };
        if !present {
            continue;
        }
        let (engine, oracle) = match label {
            "PHI1" => case(CaseIndex::new(0, -2, 0, 0, 1))?,
            "PHI2" => case(CaseIndex::new(0, -2, 0, 1, 0))?,
            "PHI3" => case(CaseIndex::new(0, -2, 1, 0, 0))?,
            "PHI4" => case(CaseIndex::new(0, -3, 0, 0, 0))?,
            "PHI5" => case(CaseIndex::new(-1, -2, 0, 0, 0))?,
            "TOTAL_N4" | "THM37" => (n4.total.clone(), all(n4)),
            "THM38" => {
                let n3 = n3.expect("checked");
                (n3.total.clone(), all(n3))
            }
            "INTERIOR_N4" => {
                let paper = paper_value(label)?;
                let engine = interior4.expect("checked").clone();
                entries.push(ComparisonEntry { label, matches: engine == paper, engine, paper, oracle: None });
                continue;
            }
            other => sub(other)?,
        };
        let paper = paper_value(label)?;
        entries.push(ComparisonEntry { label, matches: engine == paper, engine, paper, oracle: Some(oracle) });
    }
    Ok(ComparisonReport { entries })
}

/// Reference densities written in the engine's raw vocabulary.
///
/// Printed derivatives of products are split by the product rule, and the
/// printed combination `X_j - <X, ∂_j>/2` is entered as `X_j / 2`.
pub fn paper_value(label: &str) -> Result<ResidueDensity> {
    let n = if label == "THM38" { 3 } else { 4 };
    let v = Vocab { n };
    let (pi, kind) = match label {
        "THM38" => (1, DensityKind::Boundary),
        "INTERIOR_N4" => (0, DensityKind::Interior),
        _ => (2, DensityKind::Boundary),
    };
    let mut d = ResidueDensity::zero(n, kind);
    let pi_k = K::pi().pow(pi);
    let mut put = |c: K, m: JetMonomial| d.add_term(m, &c * &pi_k);
    let q = K::frac;
    let iq = |a, b| &K::frac(a, b) * &K::i();
    match label {
        "PHI1" => {}
        "PHI2" => {
            put(q(-1, 3), v.dgt_v());
            put(q(-1, 3), v.dgt_w());
            put(q(-5, 6), v.hp_gt());
            put(q(-2, 1), v.wn_dvn());
            put(q(-2, 1), v.vn_dwn());
            put(iq(1, 1), v.vw_hp());
        }
        "PHI3" => {
            put(q(5, 12), v.hp_gt());
            put(iq(5, 4), v.vw_hp());
        }
        "PHI4A" => {
            put(&q(1, 12) - &iq(5, 12), v.hp_gt());
            put(iq(11, 4), v.vw_hp());
        }
        "PHI4B" => {
            put(q(-1, 3), v.wn_gxv());
            put(q(-1, 3), v.vn_gxw());
            put(q(1, 6), v.xn_gt());
            put(iq(-1, 2), v.vw_xn());
        }
        "PHI5_B1" => {
            put(q(-1, 4), v.hp_gt());
            put(q(3, 4), v.vw_hp());
            put(q(-1, 6), v.xn_gt());
            put(q(-1, 6), v.vn_gxw());
            put(q(-1, 6), v.wn_gxv());
            put(q(-1, 2), v.vw_xn());
        }
        "PHI5_B2" => {
            put(q(-2, 1), v.vn_dwn());
            put(q(-3, 2), v.wn_gvx());
            put(q(-3, 2), v.vn_gwx());
        }
        "PHI5_B3" => put(q(2, 1), v.vw_hp()),
        "THM37" => {
            put(q(-1, 3), v.dgt_v());
            put(q(-1, 3), v.dgt_w());
            put(&q(-7, 12) - &iq(5, 12), v.hp_gt());
            put(q(-2, 1), v.wn_dvn());
            put(q(-4, 1), v.vn_dwn());
            put(q(-1, 1), v.wn_gxv());
            put(q(-1, 1), v.vn_gxw());
            put(q(-3, 2), v.wn_gvx());
            put(q(-3, 2), v.vn_gwx());
            put(&q(11, 4) + &iq(5, 1), v.vw_hp());
            put(&q(-1, 1) - &iq(1, 1), v.vw_xn());
        }
        "INTERIOR_N4" => {
            let pi2 = K::pi().pow(2);
            put(&q(4, 3) * &pi2, JetMonomial::atom(JetAtom::Agg(Aggregate::Einstein)));
            put(&q(3, 1) * &pi2, JetMonomial::atom(JetAtom::Agg(Aggregate::CovX(Field::V, Field::W))));
            put(&q(-3, 1) * &pi2, JetMonomial::atom(JetAtom::Agg(Aggregate::CovX(Field::W, Field::V))));
            let vw = |o: Opaque| JetMonomial::new(vec![JetAtom::Scalar(o), JetAtom::Inner(Field::V, Field::W)]);
            put(q(1, 2), vw(Opaque::S));
            put(q(1, 1), vw(Opaque::DivX));
            put(q(1, 1), vw(Opaque::Norm2X));
            put(q(-2, 1), vw(Opaque::TrMu));
        }
        "THM38" => {
            put(iq(1, 4), v.gt());
            put(iq(-1, 2), v.vn_wn());
        }
        "PHI4" | "PHI5" | "TOTAL_N4" => {
            let parts: &[&str] = match label {
                "PHI4" => &["PHI4A", "PHI4B"],
                "PHI5" => &["PHI5_B1", "PHI5_B2", "PHI5_B3"],
                _ => &["PHI1", "PHI2", "PHI3", "PHI4A", "PHI4B", "PHI5_B1", "PHI5_B2", "PHI5_B3"],
            };
            let mut acc = ResidueDensity::zero(n, kind);
            for p in parts {
                acc = acc.add(&paper_value(p)?);
            }
            return Ok(acc);
        }
        other => return Err(Error::Validation(format!("unknown comparison label {other}"))),
    }
    Ok(d)
}

/// Named monomials of the boundary vocabulary, built through the same
/// contraction as engine output so the keys coincide.
struct Vocab {
    n: u8,
}

impl Vocab {
    fn mono(&self, atoms: Vec<JetAtom>) -> JetMonomial {
        contract_indices(&Term::one().with_jet(atoms), self.n).expect("closed vocabulary monomial").jet
    }
    fn c(&self, f: Field) -> JetAtom {
        JetAtom::comp(f, Idx::Lit(self.n))
    }
    fn t(&self, f: Field, s: u16) -> JetAtom {
        JetAtom::comp(f, Idx::Sym(s))
    }
    fn gt(&self) -> JetMonomial {
        self.mono(vec![self.t(Field::V, 1), self.t(Field::W, 1)])
    }
    fn hp_gt(&self) -> JetMonomial {
        self.mono(vec![JetAtom::Hp, self.t(Field::V, 1), self.t(Field::W, 1)])
    }
    fn xn_gt(&self) -> JetMonomial {
        self.mono(vec![self.c(Field::X), self.t(Field::V, 1), self.t(Field::W, 1)])
    }
    fn dgt_v(&self) -> JetMonomial {
        self.mono(vec![JetAtom::deriv(Field::V, Idx::Lit(self.n), Idx::Sym(1)), self.t(Field::W, 1)])
    }
    fn dgt_w(&self) -> JetMonomial {
        self.mono(vec![self.t(Field::V, 1), JetAtom::deriv(Field::W, Idx::Lit(self.n), Idx::Sym(1))])
    }
    fn vn_wn(&self) -> JetMonomial {
        self.mono(vec![self.c(Field::V), self.c(Field::W)])
    }
    fn vw_hp(&self) -> JetMonomial {
        self.mono(vec![self.c(Field::V), self.c(Field::W), JetAtom::Hp])
    }
    fn vw_xn(&self) -> JetMonomial {
        self.mono(vec![self.c(Field::V), self.c(Field::W), self.c(Field::X)])
    }
    fn vn_dwn(&self) -> JetMonomial {
        self.mono(vec![self.c(Field::V), JetAtom::deriv(Field::W, Idx::Lit(self.n), Idx::Lit(self.n))])
    }
    fn wn_dvn(&self) -> JetMonomial {
        self.mono(vec![self.c(Field::W), JetAtom::deriv(Field::V, Idx::Lit(self.n), Idx::Lit(self.n))])
    }
    fn wn_gxv(&self) -> JetMonomial {
        self.mono(vec![self.c(Field::W), self.t(Field::X, 1), self.t(Field::V, 1)])
    }
    fn vn_gxw(&self) -> JetMonomial {
        self.mono(vec![self.c(Field::V), self.t(Field::X, 1), self.t(Field::W, 1)])
    }
    fn wn_gvx(&self) -> JetMonomial {
        self.mono(vec![self.c(Field::W), JetAtom::Inner(Field::V, Field::X)])
    }
    fn vn_gwx(&self) -> JetMonomial {
        self.mono(vec![self.c(Field::V), JetAtom::Inner(Field::W, Field::X)])
    }
}
