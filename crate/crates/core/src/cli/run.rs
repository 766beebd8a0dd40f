use std::fs;

use super::dsl::parse_operator;
use super::task::{Operators, TaskSpec};
use crate::symbol::ChartContext;
use crate::wres::{
    boundary_phi, compare_available, einstein_functional, BoundaryOptions, BoundaryPhi, BoundarySetup, ComparisonReport,
    OracleResidual, ResidueDensity,
};
use crate::{Error, Result};

/// Everything a task run produced.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub task: TaskSpec,
    pub boundary: Option<BoundaryPhi>,
    pub interior: Option<ResidueDensity>,
    /// Present for the built-in operators in the dimensions with reference values.
    pub comparison: Option<ComparisonReport>,
}

impl RunReport {
    pub fn oracle(&self) -> Option<OracleResidual> {
        let phi = self.boundary.as_ref().filter(|_| self.task.oracle)?;
        let mut o = OracleResidual::default();
        for c in &phi.cases {
            o.merge(&c.oracle);
        }
        Some(o)
    }
}

fn setup(task: &TaskSpec, chart: &ChartContext) -> Result<BoundarySetup> {
    match &task.operators {
        Operators::Builtin => BoundarySetup::builtin(chart, task.depth),
        Operators::Dsl(path) => {
            let src = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            let pair = parse_operator("user", &src, chart).map_err(|e| match e {
                Error::Parse { line, col, msg } => Error::Parse { line, col, msg: format!("{}: {msg}", path.display()) },
                other => other,
            })?;
            BoundarySetup::with_pair(chart, pair, task.depth)
        }
    }
}

/// Runs a validated task.
pub fn run_task(task: &TaskSpec) -> Result<RunReport> {
    task.validate()?;
    let n = task.dimension;
    let chart = ChartContext::new(n)?;
    let boundary = if task.computation.boundary() {
        let opts = BoundaryOptions { oracle: task.oracle, oracle_tol: task.oracle_tol, ..BoundaryOptions::default() };
        Some(boundary_phi(&setup(task, &chart)?, &opts)?)
    } else {
        None
    };
    let interior = if task.computation.interior() { Some(einstein_functional(n)?) } else { None };
    let comparison = match (&task.operators, n) {
        (Operators::Builtin, 4) if boundary.is_some() || interior.is_some() => {
            Some(compare_available(boundary.as_ref(), None, interior.as_ref())?)
        }
        (Operators::Builtin, 3) if boundary.is_some() => Some(compare_available(None, boundary.as_ref(), None)?),
        _ => None,
    };
    let report = RunReport { task: task.clone(), boundary, interior, comparison };
    if let Some(o) = report.oracle() {
        if !o.within(task.oracle_tol) {
            return Err(Error::Quadrature(format!(
                "exact kernel deviates from quadrature by {:.3e}, tolerance {:.1e}",
                o.max(),
                task.oracle_tol
            )));
        }
    }
    Ok(report)
}
