use std::fmt::Write as _;

use serde_json::{json, Value};

use super::run::RunReport;
use super::task::{Computation, Format};
use crate::wres::{ComparisonReport, OracleResidual, ResidueDensity};

fn computation_name(c: Computation) -> &'static str {
    match c {
        Computation::Interior => "interior",
        Computation::Boundary => "boundary",
        Computation::Both => "both",
    }
}

fn paint(s: &str, code: &str, color: bool) -> String {
    if color {
        format!("\x1b[{code}m{s}\x1b[0m")
    } else {
        s.to_string()
    }
}

fn oracle_line(o: &OracleResidual, tol: f64) -> String {
    format!("max residual {:.1e} over {} checks (tolerance {:.1e})", o.max(), o.checks, tol)
}

fn comparison_text(out: &mut String, c: &ComparisonReport, color: bool) {
    let _ = writeln!(out, "{:<12} {:<6} {:>10}", "label", "match", "oracle");
    for e in &c.entries {
        let cell = if e.matches { paint("yes   ", "32", color) } else { paint("no    ", "31", color) };
        let oracle = e.oracle.map(|o| format!("{:.1e}", o.max())).unwrap_or_else(|| "exact".into());
        let _ = writeln!(out, "{:<12} {cell} {oracle:>10}", e.label);
        let _ = writeln!(out, "    engine: {}", e.engine);
        let _ = writeln!(out, "    paper:  {}", e.paper);
    }
}

/// Plain-text report; `color` adds ANSI highlighting of the match column.
pub fn to_text(r: &RunReport, color: bool) -> String {
    let t = &r.task;
    let mut s = String::new();
    let _ = writeln!(s, "{}", paint("wres run", "1", color));
    let _ = writeln!(s, "  dimension:   {}", t.dimension);
    let _ = writeln!(s, "  computation: {}", computation_name(t.computation));
    let _ = writeln!(s, "  operators:   {}", t.operators.describe());
    match r.oracle() {
        Some(o) => {
            let _ = writeln!(s, "  oracle:      {}", oracle_line(&o, t.oracle_tol));
        }
        None => {
            let _ = writeln!(s, "  oracle:      off");
        }
    }
    if let Some(phi) = &r.boundary {
        let _ = writeln!(s, "\nboundary cases (r, l, k, j, alpha)");
        for c in &phi.cases {
            let _ = writeln!(s, "  {}: {}", c.case, c.density);
        }
        if !phi.subs.is_empty() {
            let _ = writeln!(s, "\nboundary sub-terms");
            for sub in &phi.subs {
                let _ = writeln!(s, "  {}: {}", sub.label, sub.result.density);
            }
        }
        let _ = writeln!(s, "\nboundary total\n  {}", phi.total);
    }
    if let Some(d) = &r.interior {
        let _ = writeln!(s, "\ninterior\n  {d}");
    }
    if let Some(c) = &r.comparison {
        let _ = writeln!(s, "\ncomparison");
        comparison_text(&mut s, c, color);
    }
    s
}

fn density(d: &ResidueDensity) -> Value {
    json!(d.rendered())
}

/// Structured report, schema version 1.
pub fn to_json(r: &RunReport) -> String {
    let t = &r.task;
    let boundary = r.boundary.as_ref().map(|phi| {
        json!({
            "total": density(&phi.total),
            "cases": phi.cases.iter().map(|c| json!({
                "case": c.case.to_string(),
                "density": density(&c.density),
                "oracle": t.oracle.then_some(c.oracle),
            })).collect::<Vec<_>>(),
            "subs": phi.subs.iter().map(|s| json!({
                "name": s.label,
                "density": density(&s.result.density),
            })).collect::<Vec<_>>(),
        })
    });
    let entries = r.comparison.as_ref().map_or(Value::Array(Vec::new()), |c| c.to_value()["entries"].clone());
    let doc = json!({
        "schema": 1,
        "task": {
            "dimension": t.dimension,
            "computation": computation_name(t.computation),
            "operators": t.operators.describe(),
            "oracle": t.oracle,
            "oracle_tolerance": t.oracle_tol,
            "depth": t.depth,
        },
        "oracle": r.oracle(),
        "boundary": boundary,
        "interior": r.interior.as_ref().map(density),
        "entries": entries,
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
    s.push('\n');
    s
}

pub fn emit(r: &RunReport, format: Format, color: bool) -> String {
    match format {
        Format::Text => to_text(r, color),
        Format::Json => to_json(r),
    }
}
