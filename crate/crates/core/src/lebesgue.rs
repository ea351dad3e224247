//! Fundamental polynomials, Lagrange interpolants, Lebesgue functions and
//! constants, and the convergence diagnostics built on them.
//!
//! Degrees follow the usual convention: the interpolant `Lₙ f` has degree at
//! most `n` and uses row `n + 1` of an [`InterpolationMatrix`]. Functions that
//! take a bare node row work with whatever length they are given.

use rand::Rng;

use crate::compact::CompactSet;
use crate::error::{Error, Result};
use crate::function::SampledFunction;
use crate::matrix::{chebyshev_row, InterpolationMatrix};
use crate::poly::{barycentric_weights, BarycentricForm};
use crate::sup::{maximize_on_set, SupResult};
use crate::tol;

/// A node row with its barycentric weights, ready for repeated evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct LagrangeRow {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl LagrangeRow {
    pub fn new(nodes: &[f64]) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::domain("empty node row"));
        }
        Ok(LagrangeRow {
            nodes: nodes.to_vec(),
            weights: barycentric_weights(nodes)?,
        })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    fn node_index(&self, x: f64) -> Option<usize> {
        self.nodes.iter().position(|&xk| xk == x)
    }

    /// `(ℓ₁(x), …, ℓₘ(x))`; the exact Kronecker pattern at a node.
    pub fn fundamental_values(&self, x: f64) -> Vec<f64> {
        if let Some(k) = self.node_index(x) {
            let mut out = vec![0.0; self.len()];
            out[k] = 1.0;
            return out;
        }
        // normalized by Σ wⱼ/(x − xⱼ) so the values sum to 1 up to rounding
        let terms: Vec<f64> = self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(&xk, &wk)| wk / (x - xk))
            .collect();
        let den: f64 = terms.iter().sum();
        terms.into_iter().map(|t| t / den).collect()
    }

    /// `λ(x) = Σ |ℓₖ(x)|`; exactly 1 at a node.
    #[inline]
    pub fn lebesgue_function(&self, x: f64) -> f64 {
        let mut node_poly = 1.0;
        let mut sum = 0.0;
        for (&xk, &wk) in self.nodes.iter().zip(&self.weights) {
            let d = x - xk;
            if d == 0.0 {
                return 1.0;
            }
            node_poly *= d;
            sum += (wk / d).abs();
        }
        node_poly.abs() * sum
    }

    /// The interpolant through `values` at the row's nodes.
    pub fn interpolant(&self, values: Vec<f64>) -> Result<BarycentricForm> {
        if values.len() != self.len() {
            return Err(Error::domain(format!(
                "{} values for {} nodes",
                values.len(),
                self.len()
            )));
        }
        BarycentricForm::with_weights(self.nodes.clone(), self.weights.clone(), values)
    }

    /// Sampling density used for maximization over a set.
    pub fn samples_per_segment(&self) -> usize {
        (tol::SAMPLES_PER_NODE * self.len()).max(16)
    }

    /// `Λ = sup_{x∈X} λ(x)` with the smallest maximizing point.
    pub fn lebesgue_constant(&self, set: &CompactSet) -> SupResult {
        maximize_on_set(set, &self.nodes, self.samples_per_segment(), |x| {
            self.lebesgue_function(x)
        })
    }

    /// `sup_{x∈X} |p(x)|` for the interpolant of `values`.
    pub fn interpolant_norm(&self, values: &[f64], set: &CompactSet) -> Result<f64> {
        let p = self.interpolant(values.to_vec())?;
        Ok(
            maximize_on_set(set, &self.nodes, self.samples_per_segment(), |x| {
                p.eval(x).abs()
            })
            .value,
        )
    }
}

/// `ℓₖ(x)` for every node of `row`, computed barycentrically.
pub fn fundamental_values(row: &[f64], x: f64) -> Result<Vec<f64>> {
    Ok(LagrangeRow::new(row)?.fundamental_values(x))
}

/// `ℓₖ(x) = ∏_{j≠k} (x − xⱼ)/(xₖ − xⱼ)` evaluated as the literal product.
///
/// Slower and less stable than the barycentric path; used as a reference.
pub fn fundamental_product(row: &[f64], k: usize, x: f64) -> f64 {
    row.iter()
        .enumerate()
        .filter(|&(j, _)| j != k)
        .map(|(_, &xj)| (x - xj) / (row[k] - xj))
        .product()
}

/// The Lagrange interpolant of `f` on `row`.
pub fn lagrange_interpolant(f: &SampledFunction, row: &[f64]) -> Result<BarycentricForm> {
    BarycentricForm::new(row.to_vec(), f.eval_all(row)?)
}

pub fn lebesgue_function(row: &[f64], x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::domain(format!("cannot evaluate at {x}")));
    }
    Ok(LagrangeRow::new(row)?.lebesgue_function(x))
}

/// `max_s |Σ sₖ ℓₖ(x)|` over every sign vector `s ∈ {−1, 1}ᵐ`, with the
/// fundamental values taken from the product formula. Returns the maximum
/// and the first sign vector attaining it. Refuses rows longer than
/// [`tol::SUP_ORACLE_MAX_NODES`].
pub fn lebesgue_sup_oracle(row: &[f64], x: f64) -> Result<(f64, Vec<f64>)> {
    let m = row.len();
    if m == 0 || m > tol::SUP_ORACLE_MAX_NODES {
        return Err(Error::domain(format!(
            "sign enumeration needs 1..={} nodes, got {m}",
            tol::SUP_ORACLE_MAX_NODES
        )));
    }
    crate::poly::check_distinct(row)?;
    let ell: Vec<f64> = (0..m).map(|k| fundamental_product(row, k, x)).collect();
    let mut best = (f64::NEG_INFINITY, 0u32);
    for mask in 0..(1u32 << m) {
        let s: f64 = ell
            .iter()
            .enumerate()
            .map(|(k, l)| if mask >> k & 1 == 1 { -l } else { *l })
            .sum();
        if s.abs() > best.0 {
            best = (s.abs(), mask);
        }
    }
    let signs = (0..m)
        .map(|k| if best.1 >> k & 1 == 1 { -1.0 } else { 1.0 })
        .collect();
    Ok((best.0, signs))
}

/// `Λ = sup_{x∈X} λ(x)` together with the smallest maximizer.
pub fn lebesgue_constant(row: &[f64], set: &CompactSet) -> Result<SupResult> {
    Ok(LagrangeRow::new(row)?.lebesgue_constant(set))
}

/// Lower bound for the operator norm `‖𝔏‖ = Λ` from `±1` data on the nodes.
///
/// When `trials` covers all `2ᵐ` sign patterns they are enumerated in order
/// (and the bound equals `Λ`); otherwise `trials` patterns are drawn from
/// `rng`.
pub fn operator_norm_probe<R: Rng + ?Sized>(
    row: &[f64],
    set: &CompactSet,
    trials: usize,
    rng: &mut R,
) -> Result<f64> {
    if trials == 0 {
        return Err(Error::domain(
            "operator norm probe needs at least one trial",
        ));
    }
    let lr = LagrangeRow::new(row)?;
    let m = lr.len();
    let exhaustive = m < usize::BITS as usize && trials >= (1usize << m);
    let patterns: Vec<Vec<f64>> = if exhaustive {
        (0..1usize << m)
            .map(|mask| {
                (0..m)
                    .map(|k| if mask >> k & 1 == 1 { -1.0 } else { 1.0 })
                    .collect()
            })
            .collect()
    } else {
        (0..trials)
            .map(|_| {
                (0..m)
                    .map(|_| if rng.gen::<bool>() { 1.0 } else { -1.0 })
                    .collect()
            })
            .collect()
    };
    operator_norm_of_patterns(&lr, set, &patterns)
}

/// `max_f ‖L f‖_X` over the given node data.
pub fn operator_norm_of_patterns(
    row: &LagrangeRow,
    set: &CompactSet,
    patterns: &[Vec<f64>],
) -> Result<f64> {
    patterns.iter().try_fold(0.0f64, |acc, values| {
        Ok(acc.max(row.interpolant_norm(values, set)?))
    })
}

fn check_evaluable(f: &SampledFunction, set: &CompactSet) -> Result<()> {
    if f.is_closed_form() {
        return Ok(());
    }
    if !set.is_finite_point_set() {
        return Err(Error::domain(format!(
            "{f} is only known at finitely many points"
        )));
    }
    for x in set.sample_points() {
        f.eval(x)?;
    }
    Ok(())
}

fn breakpoints(nodes: &[f64], f: &SampledFunction) -> Vec<f64> {
    let mut b = nodes.to_vec();
    b.extend(f.kinks());
    b
}

/// `sup_{x∈X} |f(x) − p(x)|` for a polynomial interpolant `p` of `f`.
fn interpolation_error(
    f: &SampledFunction,
    p: &BarycentricForm,
    set: &CompactSet,
    samples: usize,
) -> Result<SupResult> {
    check_evaluable(f, set)?;
    let r = maximize_on_set(set, &breakpoints(p.nodes(), f), samples, |x| {
        (f.eval(x).unwrap_or(f64::NAN) - p.eval(x)).abs()
    });
    Ok(r)
}

/// `‖f − Lₙ f‖_X` with `Lₙ` built on row `n + 1` of `matrix`.
pub fn uniform_error(
    f: &SampledFunction,
    matrix: &InterpolationMatrix,
    n: usize,
    set: &CompactSet,
) -> Result<SupResult> {
    let lr = LagrangeRow::new(matrix.row(n + 1)?)?;
    let p = lr.interpolant(f.eval_all(lr.nodes())?)?;
    interpolation_error(f, &p, set, lr.samples_per_segment())
}

/// Upper bound `Êₙ ≥ Eₙ(f)` for the best uniform approximation error on `X`
/// by polynomials of degree `≤ n`.
///
/// `f` is interpolated at the `n + 1` Chebyshev points of the hull
/// `[min X, max X]`; the error `e = f − p` is then centred by the constant
/// `−(max e + min e)/2`, which keeps the candidate inside `Hₙ`, so the bound
/// is `(max e − min e)/2` over `X`.
pub fn best_approx_upper_bound(f: &SampledFunction, n: usize, set: &CompactSet) -> Result<f64> {
    check_evaluable(f, set)?;
    let (a, b) = (set.min(), set.max());
    if a == b {
        return Ok(0.0);
    }
    let nodes: Vec<f64> = chebyshev_row(n + 1)?
        .into_iter()
        .map(|t| 0.5 * (a + b) + 0.5 * (b - a) * t)
        .collect();
    let lr = LagrangeRow::new(&nodes)?;
    let values: Vec<f64> = nodes.iter().map(|&x| f.eval(x)).collect::<Result<_>>()?;
    let p = lr.interpolant(values)?;
    let bp = breakpoints(&nodes, f);
    let samples = lr.samples_per_segment();
    let err = |x: f64| f.eval(x).unwrap_or(f64::NAN) - p.eval(x);
    let hi = maximize_on_set(set, &bp, samples, err).value;
    let lo = -maximize_on_set(set, &bp, samples, |x| -err(x)).value;
    Ok((0.5 * (hi - lo)).max(0.0))
}

/// Both sides of `‖Lₙf − f‖ ≤ (1 + Λₙ) Eₙ(f)` with `Eₙ` replaced by its
/// upper bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LemmaCheck {
    pub n: usize,
    pub uniform_error: f64,
    pub lebesgue_constant: f64,
    pub best_approx_bound: f64,
    /// `(1 + Λₙ) Êₙ − ‖f − Lₙ f‖`.
    pub slack: f64,
    pub pass: bool,
}

pub fn lebesgue_lemma_check(
    f: &SampledFunction,
    matrix: &InterpolationMatrix,
    n: usize,
    set: &CompactSet,
) -> Result<LemmaCheck> {
    let lr = LagrangeRow::new(matrix.row(n + 1)?)?;
    let lambda = lr.lebesgue_constant(set).value;
    let uniform_error = uniform_error(f, matrix, n, set)?.value;
    let best_approx_bound = best_approx_upper_bound(f, n, set)?;
    let slack = (1.0 + lambda) * best_approx_bound - uniform_error;
    Ok(LemmaCheck {
        n,
        uniform_error,
        lebesgue_constant: lambda,
        best_approx_bound,
        slack,
        pass: slack >= -tol::LEMMA_SLACK,
    })
}

/// One degree of a convergence profile.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileRow {
    pub n: usize,
    pub lebesgue: SupResult,
    /// `‖f − Lₙ f‖_X` per function, in the order given.
    pub errors: Vec<f64>,
    /// `λₙ(x)` at every probe point, in the order given.
    pub lambda_at_probes: Vec<f64>,
}

/// `Λₙ`, the uniform errors and pointwise Lebesgue function values for
/// `n = 1..=n_max`.
pub fn convergence_profile(
    functions: &[SampledFunction],
    matrix: &InterpolationMatrix,
    set: &CompactSet,
    n_max: usize,
    probes: &[f64],
) -> Result<Vec<ProfileRow>> {
    if n_max + 1 > matrix.depth() {
        return Err(Error::domain(format!(
            "degree {n_max} needs {} rows, matrix has {}",
            n_max + 1,
            matrix.depth()
        )));
    }
    (1..=n_max)
        .map(|n| {
            let lr = LagrangeRow::new(matrix.row(n + 1)?)?;
            let errors = functions
                .iter()
                .map(|f| {
                    let p = lr.interpolant(f.eval_all(lr.nodes())?)?;
                    Ok(interpolation_error(f, &p, set, lr.samples_per_segment())?.value)
                })
                .collect::<Result<_>>()?;
            Ok(ProfileRow {
                n,
                lebesgue: lr.lebesgue_constant(set),
                errors,
                lambda_at_probes: probes.iter().map(|&x| lr.lebesgue_function(x)).collect(),
            })
        })
        .collect()
}

/// Per-degree growth record.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub n: usize,
    pub lambda_max: f64,
    pub argmax_x: f64,
    /// Largest `λₙ` over the row's own nodes (always 1).
    pub lambda_at_nodes_max: f64,
    /// `‖f − Lₙ f‖_X` per function, in the order of the report's names.
    pub uniform_errors: Vec<f64>,
    /// `Λₙ / ln(n + 1)`.
    pub ratio_log: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LebesgueReport {
    pub functions: Vec<String>,
    pub rows: Vec<ReportRow>,
}

/// Growth report for `n = 1..=n_max`.
pub fn lebesgue_report(
    matrix: &InterpolationMatrix,
    set: &CompactSet,
    functions: &[SampledFunction],
    n_max: usize,
) -> Result<LebesgueReport> {
    let profile = convergence_profile(functions, matrix, set, n_max, &[])?;
    let rows = profile
        .into_iter()
        .map(|p| {
            let lr = LagrangeRow::new(matrix.row(p.n + 1)?)?;
            let at_nodes = lr
                .nodes()
                .iter()
                .map(|&x| lr.lebesgue_function(x))
                .fold(0.0, f64::max);
            Ok(ReportRow {
                n: p.n,
                lambda_max: p.lebesgue.value,
                argmax_x: p.lebesgue.argmax,
                lambda_at_nodes_max: at_nodes,
                uniform_errors: p.errors,
                ratio_log: p.lebesgue.value / ((p.n + 1) as f64).ln(),
            })
        })
        .collect::<Result<_>>()?;
    Ok(LebesgueReport {
        functions: functions.iter().map(|f| f.to_string()).collect(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{equispaced_row, nested_matrix, NodeSequence};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const ROW3: [f64; 3] = [-1.0, 0.0, 1.0];

    fn unit() -> CompactSet {
        CompactSet::interval(-1.0, 1.0).unwrap()
    }

    #[test]
    fn fundamental_values_examples() {
        assert_eq!(fundamental_values(&ROW3, 0.0).unwrap(), vec![0.0, 1.0, 0.0]);
        let v = fundamental_values(&ROW3, 0.5).unwrap();
        for (got, want) in v.iter().zip([-0.125, 0.75, 0.375]) {
            assert!((got - want).abs() < 1e-15);
        }
        assert!(matches!(
            fundamental_values(&[0.0, 1.0, 0.0], 0.3),
            Err(Error::DuplicateNodes { .. })
        ));
    }

    #[test]
    fn interpolant_examples() {
        let p = lagrange_interpolant(&SampledFunction::Abs, &ROW3).unwrap();
        assert_eq!(p.values(), &[1.0, 0.0, 1.0]);
        assert!((p.eval(0.5) - 0.25).abs() < 1e-15);

        let row = equispaced_row(11, -1.0, 1.0).unwrap();
        let p = lagrange_interpolant(&SampledFunction::Runge, &row).unwrap();
        let x = 0.95;
        assert!((p.eval(x) - SampledFunction::Runge.eval(x).unwrap()).abs() > 0.5);

        let tab = SampledFunction::tabulated(vec![(-1.0, 1.0), (0.0, 2.0)]).unwrap();
        assert!(lagrange_interpolant(&tab, &ROW3).is_err());
    }

    #[test]
    fn lebesgue_function_examples() {
        assert_eq!(lebesgue_function(&ROW3, 0.0).unwrap(), 1.0);
        assert!((lebesgue_function(&ROW3, 0.5).unwrap() - 1.25).abs() < 1e-15);
    }

    #[test]
    fn sup_oracle_examples() {
        let (v, signs) = lebesgue_sup_oracle(&ROW3, 0.5).unwrap();
        assert_eq!(v, 1.25);
        assert_eq!(signs, vec![-1.0, 1.0, 1.0]);
        for x in ROW3 {
            assert_eq!(lebesgue_sup_oracle(&ROW3, x).unwrap().0, 1.0);
        }
        let long: Vec<f64> = (0..21).map(|i| i as f64).collect();
        assert!(lebesgue_sup_oracle(&long, 0.5).is_err());
    }

    #[test]
    fn lebesgue_constant_examples() {
        let r = lebesgue_constant(&ROW3, &unit()).unwrap();
        assert!((r.value - 1.25).abs() < 1e-8);
        assert!((r.argmax + 0.5).abs() < 1e-4);

        let r = lebesgue_constant(&[-1.0, 1.0], &unit()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-15);

        let nodes = CompactSet::from_points(&ROW3).unwrap();
        assert_eq!(lebesgue_constant(&ROW3, &nodes).unwrap().value, 1.0);
    }

    #[test]
    fn subset_never_increases_constant() {
        let row = chebyshev_row(9).unwrap();
        let full = lebesgue_constant(&row, &unit()).unwrap().value;
        let part = CompactSet::new(vec![(-0.9, -0.2), (0.1, 0.1), (0.5, 0.7)]).unwrap();
        assert!(lebesgue_constant(&row, &part).unwrap().value <= full + 1e-12);
    }

    #[test]
    fn operator_norm_probe_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let exhaustive = operator_norm_probe(&ROW3, &unit(), 8, &mut rng).unwrap();
        assert!((exhaustive - 1.25).abs() < 1e-8);

        let lr = LagrangeRow::new(&ROW3).unwrap();
        let ones = operator_norm_of_patterns(&lr, &unit(), &[vec![1.0; 3]]).unwrap();
        assert!((ones - 1.0).abs() < 1e-15);

        let row = chebyshev_row(12).unwrap();
        let lambda = lebesgue_constant(&row, &unit()).unwrap().value;
        for trials in [1, 5, 20] {
            let probe = operator_norm_probe(&row, &unit(), trials, &mut rng).unwrap();
            assert!(probe <= lambda + 1e-8, "{probe} > {lambda}");
        }
    }

    #[test]
    fn uniform_error_examples() {
        let p = SampledFunction::from_name("poly:0.5:-1:0:2").unwrap();
        let cheb = InterpolationMatrix::chebyshev(41).unwrap();
        for n in [3, 6, 10] {
            assert!(uniform_error(&p, &cheb, n, &unit()).unwrap().value <= 1e-9 * 3.5);
        }
        let errs: Vec<f64> = [10, 20, 40]
            .iter()
            .map(|&n| {
                uniform_error(&SampledFunction::Runge, &cheb, n, &unit())
                    .unwrap()
                    .value
            })
            .collect();
        assert!(errs[0] > errs[1] && errs[1] > errs[2], "{errs:?}");

        let equi = InterpolationMatrix::equispaced(41, -1.0, 1.0).unwrap();
        let errs: Vec<f64> = [10, 20, 40]
            .iter()
            .map(|&n| {
                uniform_error(&SampledFunction::Runge, &equi, n, &unit())
                    .unwrap()
                    .value
            })
            .collect();
        assert!(errs[0] < errs[1] && errs[1] < errs[2], "{errs:?}");
    }

    #[test]
    fn best_approx_examples() {
        let p = SampledFunction::from_name("poly:1:2:3").unwrap();
        assert!(best_approx_upper_bound(&p, 2, &unit()).unwrap() <= 1e-9);
        // E₁(|x|) on [-1, 1] is 1/4
        let e1 = best_approx_upper_bound(&SampledFunction::Abs, 1, &unit()).unwrap();
        assert!((0.25..=0.5 + 1e-12).contains(&e1), "{e1}");
        for n in 1..12 {
            let a = best_approx_upper_bound(&SampledFunction::Exp, n, &unit()).unwrap();
            let b = best_approx_upper_bound(&SampledFunction::Exp, n + 2, &unit()).unwrap();
            assert!(b <= a + 1e-9);
        }
    }

    #[test]
    fn lemma_examples() {
        let cheb = InterpolationMatrix::chebyshev(41).unwrap();
        for n in 5..=40 {
            let c = lebesgue_lemma_check(&SampledFunction::Runge, &cheb, n, &unit()).unwrap();
            assert!(c.pass, "{c:?}");
        }
        let p = SampledFunction::from_name("poly:0:1:1").unwrap();
        assert!(lebesgue_lemma_check(&p, &cheb, 4, &unit()).unwrap().pass);
        let equi = InterpolationMatrix::equispaced(21, -1.0, 1.0).unwrap();
        for n in 5..=20 {
            let c = lebesgue_lemma_check(&SampledFunction::Abs, &equi, n, &unit()).unwrap();
            assert!(c.pass, "{c:?}");
        }
    }

    #[test]
    fn dense_nested_nodes_have_unit_lebesgue_function() {
        // 0, 1, -1, 1/2, -1/2, 1/4, 3/4, -1/4, -3/4, ...
        let mut pts = vec![0.0, 1.0, -1.0];
        let mut denom = 2.0;
        while pts.len() < 40 {
            let mut k = 1.0;
            while k < denom && pts.len() < 40 {
                pts.push(k / denom);
                pts.push(-k / denom);
                k += 2.0;
            }
            denom *= 2.0;
        }
        pts.truncate(40);
        let seq = NodeSequence::new(pts.clone()).unwrap();
        let m = nested_matrix(&seq, 40).unwrap();
        let probes = &pts[..10];
        let profile = convergence_profile(&[], &m, &unit(), 39, probes).unwrap();
        for row in &profile {
            for (j, lam) in row.lambda_at_probes.iter().enumerate() {
                if row.n + 1 > j {
                    assert_eq!(*lam, 1.0, "n={} j={j}", row.n);
                }
            }
        }
    }

    #[test]
    fn profile_rejects_short_matrix() {
        let m = InterpolationMatrix::chebyshev(5).unwrap();
        assert!(convergence_profile(&[], &m, &unit(), 5, &[]).is_err());
        assert!(convergence_profile(&[], &m, &unit(), 4, &[]).is_ok());
    }
}
