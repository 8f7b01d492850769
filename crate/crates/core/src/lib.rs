//! Conditions, feasible ranges and explicit constructions for 3×3 nonnegative
//! matrices with a prescribed spectrum and diagonal.
//!
//! Everything is generic over [`Scalar`] (`f32` or `f64`); the aliases below fix `f64`.

pub mod bounds;
pub mod conditions;
pub mod construct;
pub mod eigen;
pub mod error;
pub mod oracle;
pub mod scalar;
pub mod spectra;

pub use bounds::{
    bound_constants, canonical_completion, classify_region_q, classify_region_r, in_region_r, omega1_range,
    range_pair, BoundConstants, Interval, RegionLabel,
};
pub use conditions::{
    check, check_pair, implication_audit, realizable, realizable_pair, ConditionItem, ConditionKind,
    ConditionReport, ImplicationAudit, RealizabilityReport,
};
pub use construct::{construct, construct_pair, normalize_unit, Auxiliaries, ConstructionResult};
pub use eigen::{
    char_poly, power_sum_diagnostics, power_sums, solve_cubic, solve_cubic_detailed, spectrum_distance, verify,
    CubicCoefficients, CubicSolution, JllCheck, PowerSum, PowerSumReport, VerificationReport,
};
pub use error::{Error, Result};
pub use oracle::{necessity_trial, omega_scan, random_matrix, range_audit, ScanConfig};
pub use scalar::Scalar;
pub use spectra::{
    canonicalize_diagonal, canonicalize_spectrum, elementary_symmetrics, DiagonalTriple, ElementarySymmetric,
    Matrix2, Matrix3, MatrixClass, PairDiagonal, PairSpectrum, Spectrum, Tolerance,
};

pub type Spectrum64 = Spectrum<f64>;
pub type DiagonalTriple64 = DiagonalTriple<f64>;
pub type Matrix3x64 = Matrix3<f64>;
pub type Tolerance64 = Tolerance<f64>;
pub type Interval64 = Interval<f64>;
pub type ConditionReport64 = ConditionReport<f64>;
pub type ConstructionResult64 = ConstructionResult<f64>;
pub type Spectrum32 = Spectrum<f32>;
pub type DiagonalTriple32 = DiagonalTriple<f32>;
pub type Matrix3x32 = Matrix3<f32>;
pub type Tolerance32 = Tolerance<f32>;
