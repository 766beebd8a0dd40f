//! A small expression language for graded symbols.
//!
//! A file is a list of `order k { expr }` blocks. An index name occurring
//! twice in a product is summed over `1..n`; a primed name (`j'`) is summed
//! over the tangent range only. `n` denotes the normal direction.

mod elab;
mod parse;
mod print;

pub use elab::elaborate;
pub use parse::{parse_blocks, Block, Pos};
pub use print::{print_symbol, print_term};

use crate::calculus::OperatorSpec;
use crate::symbol::{ChartContext, GradedSymbol};
use crate::Result;

/// Parses DSL text into a chart-free symbol for the chart's dimension.
pub fn parse_symbol(src: &str, chart: &ChartContext) -> Result<GradedSymbol> {
    elaborate(&parse_blocks(src)?, chart.n())
}

/// Parses DSL text into an exact differential operator.
pub fn parse_operator(name: &str, src: &str, chart: &ChartContext) -> Result<OperatorSpec> {
    OperatorSpec::new(name, parse_symbol(src, chart)?, None)
}
