//! Steady-state certification at rational parameter points, checks of the
//! stored ideal decompositions, and the Allwright condition for the 3D model.

mod allwright;
pub mod data;
mod decomp;
mod pipelines;
mod solve;

pub use pipelines::{
    certify_bwd6d, certify_fwd6d, certify_points, certify_rep3d, certify_sample, certify_sampled, enclosure_width,
    j1_branch, j2_branch, BranchSummary, CertificateReport, CertifyOptions, Check, Flags, PointCert, SampleResult,
    SampleSpec,
};
pub use allwright::{allwright_check, phi_map, phi_step, printed_phi, AllwrightReport, Mobius, PrintedForm, SurdValue};
pub use decomp::{specialization_points, verify_decompositions, Decomposition, DecompositionReport};
pub use solve::{solve_zero_dim, RealPoint, ShapeForm};
