//! Lagrange interpolation on compact subsets of the line: Lebesgue functions
//! and constants, Newton and Faber bases, and lower porosity of the sets
//! themselves.
//!
//! ```
//! use lebesgue_lab::{lebesgue_constant, CompactSet};
//!
//! let x = CompactSet::interval(-1.0, 1.0)?;
//! let lambda = lebesgue_constant(&[-1.0, 0.0, 1.0], &x)?;
//! assert!((lambda.value - 1.25).abs() < 1e-8);
//! # Ok::<(), lebesgue_lab::Error>(())
//! ```

pub mod compact;
pub mod error;
pub mod faber;
pub mod function;
pub mod lebesgue;
pub mod matrix;
pub mod poly;
pub mod porosity;
pub mod sup;
pub mod tol;

pub use compact::{make_cantor, make_geometric_set, CompactSet, Extent, LimitPoint, Side};
pub use error::{Error, Result};
pub use faber::{
    check_interpolating, divided_differences, lagrange_basis, newton_basis,
    newton_lagrange_equivalence, partial_sum, partial_sums_equal, projection_chain_check,
    recover_nodes, rescale_basis, BasisCandidate, ChainReport, DdMethod, DividedDifferenceTable,
    InterpolatingVerdict, Recovery,
};
pub use function::SampledFunction;
pub use lebesgue::{
    best_approx_upper_bound, convergence_profile, fundamental_values, lagrange_interpolant,
    lebesgue_constant, lebesgue_function, lebesgue_lemma_check, lebesgue_report,
    lebesgue_sup_oracle, operator_norm_probe, uniform_error, LagrangeRow, LebesgueReport,
    LemmaCheck,
};
pub use matrix::{
    chebyshev_row, equispaced_row, leja_chebyshev, leja_order, nested_matrix, InterpolationMatrix,
    Nestedness, NodeSequence, RowViolation,
};
pub use poly::{barycentric_weights, BarycentricForm, MonomialForm, NewtonForm, Polynomial};
pub use porosity::{
    discreteness_check, gap_length, isolation_criterion, lower_porosity, lower_porosity_default,
    strongly_lower_porous_check, Isolation, PorosityEstimate, PorosityParams,
};
pub use sup::SupResult;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    mod polynomials {}
    #[doc = include_str!("../../../book/src/lebesgue.md")]
    mod lebesgue {}
    #[doc = include_str!("../../../book/src/newton-faber.md")]
    mod newton_faber {}
    #[doc = include_str!("../../../book/src/porosity.md")]
    mod porosity {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
