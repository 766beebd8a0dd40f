use std::ops::Range;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Deserialize;
use toml::Spanned;

use crate::{Error, Result};

/// The only operator family shipped as a task-level built-in.
pub const BUILTIN_OPERATORS: &str = "builtin:bismut-einstein";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Computation {
    Interior,
    Boundary,
    Both,
}

impl Computation {
    pub fn interior(self) -> bool {
        matches!(self, Computation::Interior | Computation::Both)
    }

    pub fn boundary(self) -> bool {
        matches!(self, Computation::Boundary | Computation::Both)
    }
}

impl FromStr for Computation {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "interior" => Ok(Computation::Interior),
            "boundary" => Ok(Computation::Boundary),
            "both" => Ok(Computation::Both),
            _ => Err(format!("unknown computation {s:?}, expected interior, boundary or both")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "json" | "structured" => Ok(Format::Json),
            _ => Err(format!("unknown format {s:?}, expected text or json")),
        }
    }
}

/// Where the pair operator of the boundary pipeline comes from.
#[derive(Clone, Debug, PartialEq)]
pub enum Operators {
    Builtin,
    /// DSL file replacing the connection pair; the Laplacian stays built in.
    Dsl(PathBuf),
}

impl Operators {
    pub fn describe(&self) -> String {
        match self {
            Operators::Builtin => BUILTIN_OPERATORS.into(),
            Operators::Dsl(p) => format!("dsl:{}", p.display()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TaskSpec {
    pub dimension: u8,
    pub computation: Computation,
    pub operators: Operators,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub oracle: bool,
    pub oracle_tol: f64,
    pub depth: u32,
}

impl Default for TaskSpec {
    fn default() -> Self {
        Self {
            dimension: 4,
            computation: Computation::Boundary,
            operators: Operators::Builtin,
            format: Format::Text,
            output: None,
            oracle: true,
            oracle_tol: 1e-8,
            depth: 2,
        }
    }
}

impl TaskSpec {
    /// Checks the cross-field constraints.
    pub fn validate(&self) -> Result<()> {
        if self.dimension < 3 {
            return Err(Error::Validation("dimension ≥ 3 required".into()));
        }
        if self.computation.interior() {
            if self.dimension % 2 == 1 {
                return Err(Error::OddDimension(self.dimension));
            }
            if self.operators != Operators::Builtin {
                return Err(Error::Validation("the interior functional is only available for the built-in operators".into()));
            }
        }
        if self.oracle_tol.is_nan() || self.oracle_tol <= 0.0 {
            return Err(Error::Validation("oracle tolerance must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOutput {
    format: Option<Spanned<String>>,
    path: Option<String>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawOracle {
    Flag(bool),
    Table { enabled: Option<bool>, tolerance: Option<f64> },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTask {
    dimension: Spanned<i64>,
    computation: Option<Spanned<String>>,
    operators: Option<Spanned<String>>,
    output: Option<RawOutput>,
    oracle: Option<RawOracle>,
    depth: Option<Spanned<i64>>,
}

fn line_col(src: &str, at: usize) -> (usize, usize) {
    let before = &src[..at.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

fn at(src: &str, span: Range<usize>, msg: impl std::fmt::Display) -> Error {
    let (line, col) = line_col(src, span.start);
    Error::Validation(format!("{line}:{col}: {msg}"))
}

/// Parses and validates a TOML task file. Relative DSL paths resolve
/// against `base`.
pub fn parse_task(src: &str, base: &Path) -> Result<TaskSpec> {
    let raw: RawTask = toml::from_str(src).map_err(|e| {
        let (line, col) = e.span().map_or((1, 1), |s| line_col(src, s.start));
        Error::Parse { line, col, msg: e.message().to_string() }
    })?;
    let mut t = TaskSpec::default();
    let d = raw.dimension;
    if *d.get_ref() < 3 {
        return Err(at(src, d.span(), "dimension ≥ 3 required"));
    }
    t.dimension = u8::try_from(*d.get_ref()).map_err(|_| at(src, d.span(), "dimension out of range"))?;
    if let Some(c) = raw.computation {
        t.computation = c.get_ref().parse().map_err(|m| at(src, c.span(), m))?;
    }
    if let Some(o) = raw.operators {
        let s = o.get_ref();
        t.operators = if let Some(name) = s.strip_prefix("builtin:") {
            if s != BUILTIN_OPERATORS {
                return Err(Error::UnknownBuiltin(name.to_string()));
            }
            Operators::Builtin
        } else {
            let path = s.strip_prefix("dsl:").unwrap_or(s);
            if path.is_empty() {
                return Err(at(src, o.span(), "empty operator path"));
            }
            Operators::Dsl(base.join(path))
        };
    }
    if let Some(out) = raw.output {
        if let Some(f) = out.format {
            t.format = f.get_ref().parse().map_err(|m| at(src, f.span(), m))?;
        }
        t.output = out.path.map(|p| base.join(p));
    }
    match raw.oracle {
        Some(RawOracle::Flag(b)) => t.oracle = b,
        Some(RawOracle::Table { enabled, tolerance }) => {
            t.oracle = enabled.unwrap_or(true);
            if let Some(tol) = tolerance {
                t.oracle_tol = tol;
            }
        }
        None => {}
    }
    if let Some(dp) = raw.depth {
        t.depth = u32::try_from(*dp.get_ref()).ok().filter(|&v| v > 0).ok_or_else(|| at(src, dp.span(), "depth must be a positive integer"))?;
    }
    if t.computation.interior() && t.dimension % 2 == 1 {
        return Err(Error::OddDimension(t.dimension));
    }
    t.validate()?;
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Result<TaskSpec> {
        parse_task(s, Path::new("/tasks"))
    }

    #[test]
    fn well_formed() {
        let t = parse("dimension = 4\ncomputation = \"boundary\"\noperators = \"builtin:bismut-einstein\"\n").unwrap();
        assert_eq!(t, TaskSpec::default());
        let t = parse(
            "dimension = 3\noperators = \"pair.wsym\"\ndepth = 3\noracle = { enabled = false, tolerance = 1e-6 }\n[output]\nformat = \"structured\"\npath = \"out.json\"\n",
        )
        .unwrap();
        assert_eq!(t.operators, Operators::Dsl("/tasks/pair.wsym".into()));
        assert_eq!((t.format, t.depth, t.oracle, t.oracle_tol), (Format::Json, 3, false, 1e-6));
        assert_eq!(t.output, Some("/tasks/out.json".into()));
    }

    #[test]
    fn small_dimension() {
        let e = parse("computation = \"boundary\"\ndimension = 2\n").unwrap_err();
        assert_eq!(e, Error::Validation("2:13: dimension ≥ 3 required".into()));
    }

    #[test]
    fn odd_interior() {
        assert_eq!(parse("dimension = 3\ncomputation = \"interior\"").unwrap_err(), Error::OddDimension(3));
        assert_eq!(parse("dimension = 5\ncomputation = \"both\"").unwrap_err(), Error::OddDimension(5));
    }

    #[test]
    fn unknown_builtin_and_syntax() {
        assert_eq!(parse("dimension = 4\noperators = \"builtin:dirac\"").unwrap_err(), Error::UnknownBuiltin("dirac".into()));
        assert!(matches!(parse("dimension = 4\ncomputation = \"sideways\""), Err(Error::Validation(m)) if m.starts_with("2:15:")));
        assert!(matches!(parse("dimension = 4\nfoo = 1"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse("dimension = \n"), Err(Error::Parse { line: 1, .. })));
    }
}
