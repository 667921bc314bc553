//! Verdicts on algebras, and the parameter-level predictions they are
//! checked against.

pub mod catalan;
pub mod predict;
pub mod report;
pub mod verify;

pub use catalan::{catalan, catalan_convolution_check, catalan_convolution_check_printed, ConvolutionCheck};
pub use predict::{
    f1_nsn_reason, f2_change_basis, f2_nsn_reason, normalize_f2, normalize_f2_with_basis,
    predict_f1_strongly_nilpotent, predict_f2_strongly_nilpotent, F1Reason, F2Normalization,
    F2Reason, MIN_PREDICTOR_DIM,
};
pub use report::{
    algebra_sha256, analyze, classify, cross_check, Analysis, ClassificationReport, CrossCheck,
    OracleComparison, TOOL_VERSION,
};
pub use verify::{
    census, theta_independence, verify_theorem, Census, Mismatch, SampleKind, TheoremId,
    TheoremVerdict, FIXED_THETAS,
};
