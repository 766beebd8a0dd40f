//! Drivers: the interior Einstein functional and the boundary term of the
//! residue, case by case, with a comparison against reference values.

mod boundary;
mod cases;
mod density;
mod interior;
mod report;

pub use boundary::{
    boundary_phi, compute_case, compute_case_terms, BoundaryOptions, BoundaryPhi, BoundarySetup, CaseResult, OracleResidual,
    SubResult,
};
pub use cases::{enumerate_cases, CaseIndex};
pub use density::{DensityKind, ResidueDensity};
pub use interior::{einstein_functional, interior_curvature_trace, interior_endomorphism, InteriorEndomorphism};
pub use report::{compare_available, compare_to_paper, paper_results, paper_value, ComparisonEntry, ComparisonReport, PaperResults, LABELS};
