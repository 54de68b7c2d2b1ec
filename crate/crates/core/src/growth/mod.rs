//! Growth models built from boxes: the comb and its two-sided extension,
//! the Chinese restaurant process, pyramids and Kreweras walks.

pub mod comb;
pub mod kreweras;
pub mod profile;
pub mod pyramid;
pub mod two_sided;

pub use comb::{
    bell_from_diagram, bounded_comb_kernel, comb_kernel, comb_model, crp_kernel, crp_transitions,
    stirling_from_diagram, stirling_identity_residual, CombHarmonic, CombModel, Composition,
    CrpHarmonic, CrpLogGamma,
};
pub use kreweras::{
    kreweras_brute_force, kreweras_constant, kreweras_counts, kreweras_diagnostics,
    kreweras_h_solver, kreweras_log_counts, kreweras_ratio_estimate, HSolution,
    KrewerasDiagnostic, Stencil,
};
pub use profile::{is_unimodal, Profile, PyramidState};
pub use pyramid::{legal_increments, pyramid_counts, pyramid_model, FrameModel, FrameState, PyramidModel};
pub use two_sided::{two_sided_kernel, TwoSidedHarmonic, TwoSidedModel, TwoSidedParams};
