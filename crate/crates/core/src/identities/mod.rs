//! Executable checks of the conic identities, each producing a
//! [`VerificationReport`] with exact residuals or z-scores.

mod arrangements;
mod bank;
mod faces;
mod kinematic;
mod report;
mod suite;

pub use arrangements::{
    verify_family_level_char, verify_family_statdim, verify_generic_level_char, verify_hug_schneider,
    verify_klivans_swartz, verify_zaslavsky,
};
pub use faces::{
    describe, steiner_s, verify_euler, verify_face_alternation, verify_gauss_bonnet, verify_genfun_alternation,
    verify_generalized_sommerville, verify_mcmullen_inverse, verify_sommerville, verify_statdim_alternation,
    verify_steiner_mgf, DEFAULT_GENFUN_GRID,
};
pub use kinematic::{
    cyclic_group, rotate_cone, verify_crofton_probability, verify_finite_double_count, verify_kinematic,
    verify_polar_kinematic, DEFAULT_INNER_SAMPLES, DEFAULT_TRIALS, DYADIC_BITS,
};
pub use report::{reports_to_table, Check, ReportBuilder, Status, VerificationReport, EXACT_TOL};
pub use suite::{bonferroni_sigmas, family_wise_bound, run_suite, SuiteResult, FAMILY_WISE_ERROR, STEINER_GRID};
