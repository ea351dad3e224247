//! Newton polynomials, divided differences and interpolating Faber bases.
//!
//! A basis `p₁, p₂, …` with `deg pₖ = k − 1` is *interpolating* with nodes
//! `x₁, x₂, …` when its partial sums `S_n f = Σ_{k≤n} cₖ pₖ` match `f` at
//! `x₁, …, xₙ`. That happens exactly when `pₖ(xⱼ) = 0` for `j < k` and
//! `pₖ(xₖ) ≠ 0`, and the nodes are then determined by the basis. The Newton
//! polynomials `πₖ = ∏_{j<k}(x − xⱼ)` are the monic representatives; any
//! other interpolating basis with the same nodes is a rescaling of them.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::function::SampledFunction;
use crate::lebesgue::LagrangeRow;
use crate::matrix::{InterpolationMatrix, NodeSequence};
use crate::poly::{check_distinct, newton_coefficients, MonomialForm, NewtonForm};
use crate::tol;

/// A finite candidate basis `p₁, …, p_N` with `deg pₖ = k − 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisCandidate {
    polys: Vec<MonomialForm>,
    claimed_nodes: Option<NodeSequence>,
}

impl BasisCandidate {
    pub fn new(polys: Vec<MonomialForm>) -> Result<Self> {
        if polys.is_empty() {
            return Err(Error::domain("empty basis"));
        }
        for (i, p) in polys.iter().enumerate() {
            if p.degree() != Some(i) {
                return Err(Error::domain(format!(
                    "basis polynomial {} has degree {}, expected {i}",
                    i + 1,
                    p.degree().map_or("-∞".to_string(), |d| d.to_string())
                )));
            }
        }
        Ok(BasisCandidate {
            polys,
            claimed_nodes: None,
        })
    }

    pub fn with_claimed_nodes(mut self, nodes: NodeSequence) -> Self {
        self.claimed_nodes = Some(nodes);
        self
    }

    pub fn claimed_nodes(&self) -> Option<&NodeSequence> {
        self.claimed_nodes.as_ref()
    }

    pub fn polys(&self) -> &[MonomialForm] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// Reads one polynomial per line, coefficients constant term first.
    /// Blank lines and lines starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let lines = parse_polynomial_lines(text)?;
        for (i, (line, p)) in lines.iter().enumerate() {
            if p.degree() != Some(i) {
                return Err(Error::parse(
                    *line,
                    format!("polynomial {} must have degree {i}", i + 1),
                ));
            }
        }
        Self::new(lines.into_iter().map(|(_, p)| p).collect())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for p in &self.polys {
            let line: Vec<String> = p.coeffs().iter().map(|c| format!("{c:e}")).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }
}

/// Polynomials of a basis file with their 1-based line numbers; degrees are
/// not checked.
pub fn parse_polynomial_lines(text: &str) -> Result<Vec<(usize, MonomialForm)>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let coeffs = line
            .split_whitespace()
            .map(|t| {
                t.parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| Error::parse(i + 1, format!("bad coefficient {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let p = MonomialForm::new(coeffs).map_err(|e| Error::parse(i + 1, e.to_string()))?;
        out.push((i + 1, p));
    }
    if out.is_empty() {
        return Err(Error::parse(0, "basis file has no polynomials"));
    }
    Ok(out)
}

/// How [`divided_differences`] computes `f[x₁, …, xₖ]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DdMethod {
    /// `Σⱼ f(xⱼ) / ∏_{i≠j}(xⱼ − xᵢ)`, term by term.
    Explicit,
    /// The usual triangular recursion.
    #[default]
    Recursive,
}

/// `f[x₁]`, `f[x₁, x₂]`, …, `f[x₁, …, x_N]` for a fixed node sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct DividedDifferenceTable {
    nodes: Vec<f64>,
    entries: Vec<f64>,
}

impl DividedDifferenceTable {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// `f[x₁, …, xₖ]`, 1-based.
    pub fn entry(&self, k: usize) -> Option<f64> {
        k.checked_sub(1).and_then(|i| self.entries.get(i)).copied()
    }

    /// The Newton form `Σ f[x₁..xₖ] πₖ`.
    pub fn to_newton(&self) -> NewtonForm {
        NewtonForm::new(self.nodes.clone(), self.entries.clone())
            .expect("table nodes are distinct and entries finite")
    }
}

fn explicit_divided_difference(nodes: &[f64], values: &[f64]) -> f64 {
    (0..nodes.len())
        .map(|j| {
            let den: f64 = (0..nodes.len())
                .filter(|&i| i != j)
                .map(|i| nodes[j] - nodes[i])
                .product();
            values[j] / den
        })
        .sum()
}

pub fn divided_differences(
    f: &SampledFunction,
    nodes: &[f64],
    method: DdMethod,
) -> Result<DividedDifferenceTable> {
    if nodes.is_empty() {
        return Err(Error::domain("divided differences need at least one node"));
    }
    check_distinct(nodes)?;
    let values = f.eval_all(nodes)?;
    let entries: Vec<f64> = match method {
        DdMethod::Recursive => newton_coefficients(nodes, &values),
        DdMethod::Explicit => (1..=nodes.len())
            .map(|k| explicit_divided_difference(&nodes[..k], &values[..k]))
            .collect(),
    };
    if let Some(k) = entries.iter().position(|v| !v.is_finite()) {
        return Err(Error::Numerical(format!(
            "divided difference of order {} overflowed",
            k + 1
        )));
    }
    Ok(DividedDifferenceTable {
        nodes: nodes.to_vec(),
        entries,
    })
}

fn newton_with_leading(nodes: &[f64], k: usize, leading: f64) -> Result<NewtonForm> {
    if k == 0 {
        return Err(Error::domain("basis index starts at 1"));
    }
    if nodes.len() + 1 < k {
        return Err(Error::domain(format!(
            "π_{k} needs {} nodes, got {}",
            k - 1,
            nodes.len()
        )));
    }
    let mut xs = nodes[..k.min(nodes.len())].to_vec();
    if xs.len() < k {
        // the last node never enters πₖ; any distinct filler works
        let pad = xs.iter().fold(0.0f64, |m, x| m.max(x.abs())) + 1.0;
        xs.push(pad);
    }
    let mut coeffs = vec![0.0; k];
    coeffs[k - 1] = leading;
    NewtonForm::new(xs, coeffs)
}

/// `πₖ(x) = ∏_{j<k}(x − xⱼ)`, with `π₁ ≡ 1`.
pub fn newton_basis(nodes: &[f64], k: usize) -> Result<NewtonForm> {
    newton_with_leading(nodes, k, 1.0)
}

/// `πₖ / πₖ(xₖ)`, normalized to 1 at `xₖ`.
pub fn lagrange_basis(nodes: &[f64], k: usize) -> Result<NewtonForm> {
    if k == 0 || nodes.len() < k {
        return Err(Error::domain(format!(
            "Lagrange basis element {k} needs {k} nodes, got {}",
            nodes.len()
        )));
    }
    let pi = newton_basis(nodes, k)?;
    newton_with_leading(nodes, k, 1.0 / pi.eval(nodes[k - 1]))
}

/// The first `n` elements of a basis as a [`BasisCandidate`].
pub fn newton_basis_candidate(nodes: &[f64], n: usize) -> Result<BasisCandidate> {
    let polys = (1..=n)
        .map(|k| Ok(newton_basis(nodes, k)?.to_monomial()))
        .collect::<Result<_>>()?;
    Ok(BasisCandidate::new(polys)?.with_claimed_nodes(NodeSequence::new(nodes.to_vec())?))
}

pub fn lagrange_basis_candidate(nodes: &[f64], n: usize) -> Result<BasisCandidate> {
    let polys = (1..=n)
        .map(|k| Ok(lagrange_basis(nodes, k)?.to_monomial()))
        .collect::<Result<_>>()?;
    Ok(BasisCandidate::new(polys)?.with_claimed_nodes(NodeSequence::new(nodes.to_vec())?))
}

/// `Σ_{k≤n} f[x₁..xₖ] πₖ`, the interpolant of `f` at `x₁, …, xₙ`.
pub fn partial_sum(f: &SampledFunction, n: usize, nodes: &[f64]) -> Result<NewtonForm> {
    if n == 0 || nodes.len() < n {
        return Err(Error::domain(format!(
            "partial sum of order {n} needs {n} nodes, got {}",
            nodes.len()
        )));
    }
    Ok(divided_differences(f, &nodes[..n], DdMethod::Recursive)?.to_newton())
}

/// Outcome of [`check_interpolating`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InterpolatingVerdict {
    Pass,
    /// First `(k, j)` (1-based, lexicographic) breaking the zero pattern:
    /// `j < k` with `pₖ(xⱼ)` not small, or `j = k` with `pₖ(xₖ)` small.
    Fail {
        k: usize,
        j: usize,
        value: f64,
    },
}

impl InterpolatingVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, InterpolatingVerdict::Pass)
    }
}

fn zero_pattern(polys: &[MonomialForm], nodes: &[f64]) -> InterpolatingVerdict {
    for (i, p) in polys.iter().enumerate() {
        let k = i + 1;
        let threshold = tol::INTERPOLATING_ZERO * p.max_abs_coeff();
        for (jj, &x) in nodes.iter().enumerate().take(k) {
            let j = jj + 1;
            let value = p.eval(x);
            let ok = if j < k {
                value.abs() <= threshold
            } else {
                value.abs() > threshold
            };
            if !ok {
                return InterpolatingVerdict::Fail { k, j, value };
            }
        }
    }
    InterpolatingVerdict::Pass
}

/// Checks `pₖ(xⱼ) = 0` for `j < k` and `pₖ(xₖ) ≠ 0`, relative to the
/// largest coefficient of `pₖ`.
pub fn check_interpolating(basis: &BasisCandidate, nodes: &[f64]) -> Result<InterpolatingVerdict> {
    if nodes.len() < basis.len() {
        return Err(Error::domain(format!(
            "{} basis polynomials but only {} nodes",
            basis.len(),
            nodes.len()
        )));
    }
    check_distinct(nodes)?;
    Ok(zero_pattern(basis.polys(), nodes))
}

/// Outcome of [`recover_nodes`].
#[derive(Debug, Clone, PartialEq)]
pub enum Recovery {
    /// `x₁, …, x_{N−1}` from a basis of length `N`.
    Recovered(NodeSequence),
    Failed {
        /// 1-based index of the node that could not be determined.
        k: usize,
        reason: String,
        /// Relative residual `|p_{k+1}(x)| / Σ|cᵢ||x|ⁱ` at the offending point
        /// (`NaN` when no candidate was produced).
        residual: f64,
    },
}

fn relative_residual(p: &MonomialForm, x: f64) -> f64 {
    let scale: f64 = p
        .coeffs()
        .iter()
        .rev()
        .fold(0.0, |acc, c| acc * x.abs() + c.abs());
    if scale == 0.0 {
        0.0
    } else {
        p.eval(x).abs() / scale
    }
}

/// Recovers the unique node sequence of an interpolating basis: `xₖ` is the
/// root of `p_{k+1}` left after dividing out `x₁, …, x_{k−1}`. With an
/// `ambient` interval, roots outside it are failures.
pub fn recover_nodes(basis: &BasisCandidate, ambient: Option<(f64, f64)>) -> Recovery {
    let fail = |k: usize, reason: String, residual: f64| Recovery::Failed {
        k,
        reason,
        residual,
    };
    if basis.len() < 2 {
        return fail(
            1,
            "a basis of length 1 determines no nodes".into(),
            f64::NAN,
        );
    }
    if basis.len() - 1 > tol::ROOT_MAX_DEGREE {
        return fail(
            tol::ROOT_MAX_DEGREE + 1,
            format!("unsupported degree above {}", tol::ROOT_MAX_DEGREE),
            f64::NAN,
        );
    }
    let mut nodes: Vec<f64> = Vec::with_capacity(basis.len() - 1);
    for (i, p) in basis.polys().iter().enumerate().skip(1) {
        let k = i;
        // earlier nodes must already be roots of p
        for &xj in &nodes {
            let r = relative_residual(p, xj);
            if r > tol::ROOT_RESIDUAL {
                return fail(
                    k,
                    format!("p_{} does not vanish at earlier node {xj}", k + 1),
                    r,
                );
            }
        }
        let mut q = p.clone();
        for &xj in &nodes {
            q = q.div_linear(xj).0;
        }
        let c = q.coeffs();
        let root = match c {
            [c0, c1] if *c1 != 0.0 => -c0 / c1,
            _ => {
                return fail(k, format!("p_{} has no simple new root", k + 1), f64::NAN);
            }
        };
        if !root.is_finite() {
            return fail(k, "root is not finite".into(), f64::NAN);
        }
        let residual = relative_residual(p, root);
        if residual > tol::ROOT_RESIDUAL {
            return fail(
                k,
                format!("root {root} of p_{} is inaccurate", k + 1),
                residual,
            );
        }
        if let Some((a, b)) = ambient {
            let slack = tol::ROOT_RESIDUAL * (1.0 + a.abs().max(b.abs()));
            if root < a - slack || root > b + slack {
                return fail(
                    k,
                    format!("root {root} of p_{} lies outside [{a}, {b}]", k + 1),
                    residual,
                );
            }
        }
        let clash = nodes
            .iter()
            .any(|&xj| (xj - root).abs() <= tol::ROOT_RESIDUAL * (1.0 + root.abs()));
        if clash {
            return fail(k, format!("p_{} repeats the root {root}", k + 1), residual);
        }
        nodes.push(root);
    }
    if let InterpolatingVerdict::Fail { k, j, value } = zero_pattern(basis.polys(), &nodes) {
        return fail(
            j,
            format!("zero pattern broken at (k={k}, j={j}) with value {value:e}"),
            value.abs(),
        );
    }
    match NodeSequence::new(nodes) {
        Ok(seq) => Recovery::Recovered(seq),
        Err(e) => fail(1, e.to_string(), f64::NAN),
    }
}

/// `pₖ ↦ λₖ pₖ`.
pub fn rescale_basis(basis: &BasisCandidate, lambdas: &[f64]) -> Result<BasisCandidate> {
    if lambdas.len() != basis.len() {
        return Err(Error::domain(format!(
            "{} factors for {} polynomials",
            lambdas.len(),
            basis.len()
        )));
    }
    if let Some(k) = lambdas.iter().position(|l| *l == 0.0 || !l.is_finite()) {
        return Err(Error::domain(format!(
            "factor {} must be finite and nonzero",
            k + 1
        )));
    }
    let polys = basis
        .polys()
        .iter()
        .zip(lambdas)
        .map(|(p, &l)| p.scale(l))
        .collect();
    let mut out = BasisCandidate::new(polys)?;
    out.claimed_nodes = basis.claimed_nodes.clone();
    Ok(out)
}

/// Coefficients of `S_n f = Σ_{k≤n} cₖ pₖ` matching `f` at `x₁, …, xₙ`,
/// solved by forward substitution on the lower-triangular `pₖ(xⱼ)`.
pub fn expansion_coefficients(
    basis: &BasisCandidate,
    nodes: &[f64],
    values: &[f64],
) -> Result<Vec<f64>> {
    let n = basis.len().min(nodes.len()).min(values.len());
    let mut c = Vec::with_capacity(n);
    for j in 0..n {
        let partial: f64 = c
            .iter()
            .zip(basis.polys())
            .map(|(ck, p): (&f64, &MonomialForm)| ck * p.eval(nodes[j]))
            .sum();
        let diag = basis.polys()[j].eval(nodes[j]);
        if diag == 0.0 {
            return Err(Error::Numerical(format!(
                "p_{}(x_{}) vanishes",
                j + 1,
                j + 1
            )));
        }
        c.push((values[j] - partial) / diag);
    }
    Ok(c)
}

/// Verdict of [`partial_sums_equal`].
#[derive(Debug, Clone, PartialEq)]
pub struct PartialSumsVerdict {
    /// `λₖ` with `aₖ ≈ λₖ bₖ`, from leading coefficients.
    pub lambdas: Vec<f64>,
    /// First `k` where `aₖ ≠ λₖ bₖ` coefficientwise.
    pub coefficient_mismatch: Option<usize>,
    /// First `(n, function index)` where `S_n` differ at a sample point.
    pub sum_mismatch: Option<(usize, usize)>,
}

impl PartialSumsVerdict {
    pub fn equal(&self) -> bool {
        self.coefficient_mismatch.is_none() && self.sum_mismatch.is_none()
    }
}

/// Decides whether two bases have the same partial-sum operators, i.e.
/// `aₖ = λₖ bₖ` for nonzero `λₖ`.
pub fn partial_sums_equal(
    a: &BasisCandidate,
    b: &BasisCandidate,
    nodes: &[f64],
    fs: &[SampledFunction],
) -> Result<PartialSumsVerdict> {
    if a.len() != b.len() {
        return Err(Error::domain(format!(
            "bases of different lengths {} and {}",
            a.len(),
            b.len()
        )));
    }
    let lambdas: Vec<f64> = a
        .polys()
        .iter()
        .zip(b.polys())
        .map(|(p, q)| p.coeffs()[p.coeffs().len() - 1] / q.coeffs()[q.coeffs().len() - 1])
        .collect();
    let coefficient_mismatch = a
        .polys()
        .iter()
        .zip(b.polys())
        .zip(&lambdas)
        .position(|((p, q), &l)| {
            let scaled = q.scale(l);
            let scale = p.max_abs_coeff().max(scaled.max_abs_coeff());
            let len = p.coeffs().len().max(scaled.coeffs().len());
            (0..len).any(|i| {
                let x = p.coeffs().get(i).copied().unwrap_or(0.0);
                let y = scaled.coeffs().get(i).copied().unwrap_or(0.0);
                (x - y).abs() > tol::BASIS_MATCH * scale
            })
        })
        .map(|i| i + 1);

    let mut sum_mismatch = None;
    let n = a.len().min(nodes.len());
    if n > 0 {
        check_distinct(&nodes[..n])?;
        let lo = nodes[..n].iter().copied().fold(f64::INFINITY, f64::min);
        let hi = nodes[..n].iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let (lo, hi) = if lo == hi {
            (lo - 1.0, hi + 1.0)
        } else {
            (lo, hi)
        };
        let samples: Vec<f64> = (0..=2 * n + 2)
            .map(|i| lo + (hi - lo) * i as f64 / (2 * n + 2) as f64)
            .collect();
        'outer: for (fi, f) in fs.iter().enumerate() {
            let values = f.eval_all(&nodes[..n])?;
            let (ca, cb) = match (
                expansion_coefficients(a, nodes, &values),
                expansion_coefficients(b, nodes, &values),
            ) {
                (Ok(ca), Ok(cb)) => (ca, cb),
                _ => {
                    sum_mismatch = Some((1, fi));
                    break;
                }
            };
            for m in 1..=n {
                let sa = |x: f64| -> f64 { (0..m).map(|k| ca[k] * a.polys()[k].eval(x)).sum() };
                let sb = |x: f64| -> f64 { (0..m).map(|k| cb[k] * b.polys()[k].eval(x)).sum() };
                let scale = 1.0 + values.iter().fold(0.0f64, |s, v| s.max(v.abs()));
                if samples
                    .iter()
                    .any(|&x| (sa(x) - sb(x)).abs() > tol::CHAIN * scale)
                {
                    sum_mismatch = Some((m, fi));
                    break 'outer;
                }
            }
        }
    }
    Ok(PartialSumsVerdict {
        lambdas,
        coefficient_mismatch,
        sum_mismatch,
    })
}

/// Where a projection-chain condition first failed.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainWitness {
    pub n: usize,
    /// Index into the function list.
    pub function: usize,
    /// Sample point (`NaN` for the degree condition).
    pub x: f64,
    /// Deviation at `x`, or `deg Lₙ₋₁f − deg Lₙf` for the degree condition.
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionResult {
    pub pass: bool,
    pub witness: Option<ChainWitness>,
}

impl ConditionResult {
    fn record(&mut self, w: ChainWitness) {
        if self.pass {
            self.pass = false;
            self.witness = Some(w);
        }
    }
}

impl Default for ConditionResult {
    fn default() -> Self {
        ConditionResult {
            pass: true,
            witness: None,
        }
    }
}

/// Results of [`projection_chain_check`] for `n ≤ n_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainReport {
    pub n_max: usize,
    /// `Lₙ ∘ Lₙ₊₁ = Lₙ`.
    pub chain: ConditionResult,
    /// `Lₙ ∘ Lₙ₊₁ = Lₙ₊₁ ∘ Lₙ`.
    pub commutation: ConditionResult,
    /// `deg Lₙ f ≥ deg Lₙ₋₁ f`.
    pub degree: ConditionResult,
}

impl ChainReport {
    pub fn all_pass(&self) -> bool {
        self.chain.pass && self.commutation.pass && self.degree.pass
    }
}

/// Degree of the interpolant of `values` at `nodes`: the last Newton
/// coefficient `v[x₁..xₖ]` (nodes in the given order) that stands above the
/// rounding floor `Σⱼ |vⱼ| / ∏ᵢ |xⱼ − xᵢ|` of its explicit sum.
fn numerical_degree(nodes: &[f64], values: &[f64]) -> Option<usize> {
    let mut table = values.to_vec();
    let mut degree = None;
    for k in 0..nodes.len() {
        if k > 0 {
            for i in (k..nodes.len()).rev() {
                table[i] = (table[i] - table[i - 1]) / (nodes[i] - nodes[i - k]);
            }
        }
        let floor: f64 = (0..=k)
            .map(|j| {
                let d: f64 = (0..=k)
                    .filter(|&i| i != j)
                    .map(|i| (nodes[j] - nodes[i]).abs())
                    .product();
                values[j].abs() / d
            })
            .sum();
        if table[k].abs() > tol::DEGREE_NEWTON * floor {
            degree = Some(k);
        }
    }
    degree
}

/// Checks the projection-chain identities for the operators `𝔏ₙ` that
/// interpolate on row `n` of `matrix` (degree `n − 1`), for `n = 1..=n_max`
/// and every function, at `2·n_max + 3` equispaced points of the ambient
/// interval.
pub fn projection_chain_check(
    matrix: &InterpolationMatrix,
    fs: &[SampledFunction],
    n_max: usize,
) -> Result<ChainReport> {
    if n_max == 0 || n_max + 1 > matrix.depth() {
        return Err(Error::domain(format!(
            "chain check up to {n_max} needs {} rows, matrix has {}",
            n_max + 1,
            matrix.depth()
        )));
    }
    let (a, b) = matrix.ambient();
    let count = 2 * n_max + 3;
    let samples: Vec<f64> = (0..count)
        .map(|i| a + (b - a) * i as f64 / (count - 1) as f64)
        .collect();
    let rows: Vec<LagrangeRow> = (1..=n_max + 1)
        .map(|n| LagrangeRow::new(matrix.row(n)?))
        .collect::<Result<_>>()?;
    let mut report = ChainReport {
        n_max,
        chain: ConditionResult::default(),
        commutation: ConditionResult::default(),
        degree: ConditionResult::default(),
    };
    for (fi, f) in fs.iter().enumerate() {
        let mut prev_degree: Option<usize> = None;
        for n in 1..=n_max {
            let (row_n, row_next) = (&rows[n - 1], &rows[n]);
            let ln_f = row_n.interpolant(f.eval_all(row_n.nodes())?)?;
            let lnext_f = row_next.interpolant(f.eval_all(row_next.nodes())?)?;
            let ln_lnext_f =
                row_n.interpolant(row_n.nodes().iter().map(|&x| lnext_f.eval(x)).collect())?;
            let lnext_ln_f =
                row_next.interpolant(row_next.nodes().iter().map(|&x| ln_f.eval(x)).collect())?;
            let scale = 1.0
                + row_next
                    .nodes()
                    .iter()
                    .chain(row_n.nodes())
                    .map(|&x| f.eval(x).map(f64::abs))
                    .collect::<Result<Vec<_>>>()?
                    .into_iter()
                    .fold(0.0, f64::max);
            for &x in &samples {
                let lhs = ln_lnext_f.eval(x);
                let d_chain = (lhs - ln_f.eval(x)).abs();
                if d_chain > tol::CHAIN * scale {
                    report.chain.record(ChainWitness {
                        n,
                        function: fi,
                        x,
                        deviation: d_chain,
                    });
                }
                let d_comm = (lhs - lnext_ln_f.eval(x)).abs();
                if d_comm > tol::CHAIN * scale {
                    report.commutation.record(ChainWitness {
                        n,
                        function: fi,
                        x,
                        deviation: d_comm,
                    });
                }
            }
            let deg = numerical_degree(row_n.nodes(), ln_f.values());
            if n >= 2 {
                let (cur, prev) = (
                    deg.map_or(-1, |d| d as i64),
                    prev_degree.map_or(-1, |d| d as i64),
                );
                if cur < prev {
                    report.degree.record(ChainWitness {
                        n,
                        function: fi,
                        x: f64::NAN,
                        deviation: (prev - cur) as f64,
                    });
                }
            }
            prev_degree = deg;
        }
    }
    Ok(report)
}

/// A hat function equal to 1 at the first node of row `n` that is missing
/// from row `n + 1` and 0 at every other node of both rows; `None` when row
/// `n` is contained in row `n + 1`.
pub fn indicator_witness(
    matrix: &InterpolationMatrix,
    n: usize,
) -> Result<Option<SampledFunction>> {
    let short = matrix.row(n)?;
    let long = matrix.row(n + 1)?;
    let tol = matrix.node_tolerance();
    let Some(&center) = short
        .iter()
        .find(|&&x| !long.iter().any(|&y| (x - y).abs() <= tol))
    else {
        return Ok(None);
    };
    let gap = short
        .iter()
        .chain(long)
        .map(|&y| (y - center).abs())
        .filter(|&d| d > 0.0)
        .fold(f64::INFINITY, f64::min);
    let half_width = if gap.is_finite() { 0.5 * gap } else { 1.0 };
    Ok(Some(SampledFunction::IndicatorOfNode {
        center,
        half_width,
    }))
}

/// `max |Lₙf − Σ_{k≤n+1} f[x₁..xₖ]πₖ|` over 100 equispaced points of the hull
/// of `nodes`, both built on the first `n + 1` nodes.
pub fn newton_lagrange_equivalence(f: &SampledFunction, nodes: &[f64], n: usize) -> Result<f64> {
    if nodes.len() < n + 1 {
        return Err(Error::domain(format!(
            "degree {n} needs {} nodes, got {}",
            n + 1,
            nodes.len()
        )));
    }
    let first = &nodes[..n + 1];
    let lagrange = crate::lebesgue::lagrange_interpolant(f, first)?;
    let newton = partial_sum(f, n + 1, nodes)?;
    let lo = nodes.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = nodes.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let (lo, hi) = if lo == hi {
        (lo - 1.0, hi + 1.0)
    } else {
        (lo, hi)
    };
    Ok((0..100)
        .map(|i| lo + (hi - lo) * i as f64 / 99.0)
        .map(|x| (lagrange.eval(x) - newton.eval(x)).abs())
        .fold(0.0, f64::max))
}
