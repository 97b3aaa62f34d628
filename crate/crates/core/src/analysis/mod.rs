//! Diagnostics over distributions and schemes: support and realness checks,
//! linear-inversion tomography, and degeneracy counting bounds.

mod degeneracy;
mod realness;
mod reconstruction;
mod support;

pub use degeneracy::{
    degeneracy_feasible, min_common_distinct, min_distinct_with_nondegenerate, FeasibilityReport,
};
pub use realness::{
    diag_equality_check, random_unitary_form, realness_implies_z_expectation, scheme_is_real,
    RealnessReport, COUNTEREXAMPLE_ATTEMPTS, DIAG_EQUALITY_TOL, HASHED_SYMMETRY_TOL, Z_ZERO_TOL,
};
pub use reconstruction::{
    reconstruct_state, reconstruction_map, ReconstructionMap, SUPPORT_MISMATCH_TOL,
};
pub use support::{is_real, verify_support, SupportReport, EIGENVALUE_MATCH_TOL, REAL_TOL};
