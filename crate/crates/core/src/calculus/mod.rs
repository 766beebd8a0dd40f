//! Symbol composition, parametrix recursion and the built-in operator tables.

mod builtin;
mod compose;
mod parametrix;

pub use builtin::{builtin, builtin_names, connection_a};
pub use compose::{compose, compose_parts, compose_symbols, PartKey};
pub use parametrix::parametrix;

use crate::symbol::{GradedSymbol, Mode};
use crate::{Error, Result};

/// A named operator with its chart-free graded symbol table.
///
/// `lowest` is the lowest bucket that is known. `None` marks an exact
/// differential operator: every bucket below the listed ones is zero.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorSpec {
    pub name: String,
    pub order: i32,
    pub symbol: GradedSymbol,
    pub lowest: Option<i32>,
}

impl OperatorSpec {
    pub fn new(name: impl Into<String>, symbol: GradedSymbol, lowest: Option<i32>) -> Result<Self> {
        let name = name.into();
        if symbol.mode() != Mode::ChartFree {
            return Err(Error::WrongMode("chart-free"));
        }
        let order = symbol.top_order().ok_or_else(|| Error::Validation(format!("operator {name} has an empty symbol")))?;
        symbol.check_homogeneous()?;
        if let Some(l) = lowest {
            if l > order {
                return Err(Error::Validation(format!("operator {name}: lowest bucket {l} above order {order}")));
            }
        }
        Ok(Self { name, order, symbol, lowest })
    }

    /// The identity operator.
    pub fn identity(n: u8) -> Self {
        Self { name: "id".into(), order: 0, symbol: GradedSymbol::identity(n), lowest: None }
    }

    /// Lowest bucket that is determined, with `floor` standing in for an
    /// exact table.
    pub fn known_down_to(&self, floor: i32) -> i32 {
        self.lowest.unwrap_or(floor)
    }
}
