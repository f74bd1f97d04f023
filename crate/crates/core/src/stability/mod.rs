//! Routh–Hurwitz tests, eigenvalues (closed form and numeric), stability
//! reports and the Hopf-candidate formula with sampled falsification.

mod eigen;
mod hopf;
mod hurwitz;
mod interval;
mod report;

pub use eigen::{
    bwd6d_factors, eigen_closed_form, eigen_numeric, flatten, max_relative_discrepancy, sort_eigen, Bwd6dFactors,
    ExactEigen, C64,
};
pub use hopf::{hopf_falsify, FormulaValue, Fraction, HopfFormula, HopfScanReport, ScanPoint, ScanSpec};
pub use hurwitz::{hurwitz_determinants, hurwitz_matrix, hurwitz_stable};
pub use interval::RatInterval;
pub use report::{
    classify, exact_spectrum, ratio_report, verdict_of, ExactSpectrum, ExactValue, PairDamping, RatioReport,
    StabilityReport, StateSummary, Verdict, MARGINAL_TOL,
};

#[cfg(test)]
mod tests;
