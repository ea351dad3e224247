//! Tolerance constants shared by every module.
//!
//! All numeric thresholds live here so that switching the arithmetic kernel
//! (or tightening a verdict) is a one-line change.

/// Monomial coefficients below `DEGREE_TRIM * max|coeff|` count as zero when
/// computing a degree.
pub const DEGREE_TRIM: f64 = 1e-12;

/// Newton coefficients below `DEGREE_NEWTON` times the magnitude of their
/// explicit-sum terms count as zero in the projection-chain degree test.
pub const DEGREE_NEWTON: f64 = 1e-10;

/// Node equality tolerance for matrices read from text files.
pub const FILE_NODE_MATCH: f64 = 1e-12;

/// Width of the final bracket in the local refinement of a sampled maximum.
pub const REFINEMENT: f64 = 1e-8;

/// Relative tolerance for treating two sampled maxima as a tie.
pub const ARGMAX_TIE: f64 = 1e-12;

/// Minimum number of samples per unit of row length in every segment.
pub const SAMPLES_PER_NODE: usize = 8;

/// Largest row accepted by the sign-enumeration oracle.
pub const SUP_ORACLE_MAX_NODES: usize = 20;

/// Zero test for interpolating-basis verdicts, relative to the largest
/// monomial coefficient of the polynomial under test.
pub const INTERPOLATING_ZERO: f64 = 1e-9;

/// Relative tolerance for coefficient-wise basis comparisons.
pub const BASIS_MATCH: f64 = 1e-9;

/// Residual threshold for node recovery.
pub const ROOT_RESIDUAL: f64 = 1e-8;

/// Largest polynomial degree handled by node recovery.
pub const ROOT_MAX_DEGREE: usize = 12;

/// Agreement tolerance for the projection-chain conditions.
pub const CHAIN: f64 = 1e-8;

/// Additive slack for the Lebesgue lemma inequality.
pub const LEMMA_SLACK: f64 = 1e-8;

/// Stability band for porosity estimates across grid refinements.
pub const POROSITY_STABILITY: f64 = 0.02;

/// Default ratio of the geometric radius grid used by porosity estimates.
pub const POROSITY_GRID_FACTOR: f64 = 0.9;
