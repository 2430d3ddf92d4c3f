//! Exact verification of isoparametric candidates `F = G / t^k`.

pub mod family;
pub mod matching;
pub mod mutations;
pub mod prop64;
pub mod recursion;
pub mod report;
pub mod sweep;

pub use family::{family_polynomial, family_polynomial_unchecked, real_part_basis, FamilyKind, FamilySpec};
pub use matching::{recognize, Recognition};
pub use mutations::{mutation_suite, Mutant};
pub use prop64::{bracket_condition, prop64_check, Prop64Report};
pub use recursion::{laplace_recursion, Recursion};
pub use report::{
    gradient_norm_numerator, laplace_residual, laplacian_numerator, transnormal_residual, verify, verify_laplace_first,
    VerificationReport,
};
pub use sweep::{completeness_sweep, SweepConfig, SweepHit, SweepSummary};
