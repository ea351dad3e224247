//! Polynomial representations and evaluation primitives.
//!
//! Three interchangeable forms are provided:
//!
//! * [`MonomialForm`]: coefficients of `1, x, x², …`;
//! * [`NewtonForm`]: coefficients of the Newton polynomials
//!   `π₁ = 1, πₖ(x) = (x − x₁)⋯(x − xₖ₋₁)`;
//! * [`BarycentricForm`]: node values together with barycentric weights
//!   `wₖ = 1 / ∏_{j≠k}(xₖ − xⱼ)`, evaluated with the second (true)
//!   barycentric formula.
//!
//! Every value is immutable once built.

use crate::error::{Error, Result};
use crate::tol;

fn check_finite_x(x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("evaluation point {x} is not finite")))
    }
}

/// Returns the first colliding pair of positions (in index order of the
/// smaller position) if `nodes` contains a repeated value.
pub(crate) fn check_distinct(nodes: &[f64]) -> Result<()> {
    for (i, a) in nodes.iter().enumerate() {
        if !a.is_finite() {
            return Err(Error::domain(format!("node {i} is not finite")));
        }
        if let Some(j) = nodes[i + 1..].iter().position(|b| b == a) {
            return Err(Error::DuplicateNodes {
                first: i,
                second: i + 1 + j,
            });
        }
    }
    Ok(())
}

/// Newton coefficients `f[x₁], f[x₁,x₂], …` by the standard recursion
/// `f[xᵢ..xⱼ] = (f[xᵢ₊₁..xⱼ] − f[xᵢ..xⱼ₋₁]) / (xⱼ − xᵢ)`.
pub(crate) fn newton_coefficients(nodes: &[f64], values: &[f64]) -> Vec<f64> {
    debug_assert_eq!(nodes.len(), values.len());
    let m = nodes.len();
    let mut table = values.to_vec();
    for level in 1..m {
        for i in (level..m).rev() {
            table[i] = (table[i] - table[i - 1]) / (nodes[i] - nodes[i - level]);
        }
    }
    table
}

/// A polynomial stored by its coefficients in the monomial basis;
/// `coeffs[i]` multiplies `xⁱ`. Exact trailing zeros are removed, so the
/// zero polynomial has no coefficients at all.
#[derive(Debug, Clone, PartialEq)]
pub struct MonomialForm {
    coeffs: Vec<f64>,
}

impl MonomialForm {
    pub fn new(mut coeffs: Vec<f64>) -> Result<Self> {
        if let Some(i) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(Error::domain(format!("coefficient {i} is not finite")));
        }
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        Ok(MonomialForm { coeffs })
    }

    pub fn zero() -> Self {
        MonomialForm { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest coefficient magnitude; `0` for the zero polynomial.
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Horner evaluation without argument checks.
    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn evaluate(&self, x: f64) -> Result<f64> {
        check_finite_x(x)?;
        Ok(self.eval(x))
    }

    /// Degree after discarding coefficients smaller than
    /// [`tol::DEGREE_TRIM`] times the largest one. `None` means the zero
    /// polynomial.
    pub fn degree(&self) -> Option<usize> {
        let cutoff = tol::DEGREE_TRIM * self.max_abs_coeff();
        self.coeffs.iter().rposition(|c| c.abs() > cutoff)
    }

    /// Coefficient of the trimmed leading term.
    pub fn leading_coefficient(&self) -> Option<f64> {
        self.degree().map(|d| self.coeffs[d])
    }

    pub fn scale(&self, factor: f64) -> MonomialForm {
        MonomialForm {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// `(x − root) · self`.
    pub fn mul_linear(&self, root: f64) -> MonomialForm {
        if self.is_zero() {
            return MonomialForm::zero();
        }
        let mut out = vec![0.0; self.coeffs.len() + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i + 1] += c;
            out[i] -= root * c;
        }
        MonomialForm { coeffs: out }
    }

    /// Synthetic division by `(x − root)`: returns the quotient and the
    /// remainder `self(root)`.
    pub fn div_linear(&self, root: f64) -> (MonomialForm, f64) {
        if self.coeffs.is_empty() {
            return (MonomialForm::zero(), 0.0);
        }
        let n = self.coeffs.len();
        let mut quotient = vec![0.0; n - 1];
        let mut carry = 0.0;
        for i in (0..n).rev() {
            let value = self.coeffs[i] + carry * root;
            if i == 0 {
                return (
                    MonomialForm::new(quotient).unwrap_or_else(|_| MonomialForm::zero()),
                    value,
                );
            }
            quotient[i - 1] = value;
            carry = value;
        }
        unreachable!()
    }

    fn add_constant(mut self, c: f64) -> MonomialForm {
        if self.coeffs.is_empty() {
            self.coeffs.push(c);
        } else {
            self.coeffs[0] += c;
        }
        while self.coeffs.last() == Some(&0.0) {
            self.coeffs.pop();
        }
        self
    }
}

/// A polynomial `Σ cₖ πₖ` in the Newton basis of `nodes`.
///
/// The last node never enters the evaluation (`π_m` stops at `x_{m−1}`) but
/// is kept so that coefficients and nodes pair up one to one.
#[derive(Debug, Clone, PartialEq)]
pub struct NewtonForm {
    nodes: Vec<f64>,
    coeffs: Vec<f64>,
}

impl NewtonForm {
    pub fn new(nodes: Vec<f64>, coeffs: Vec<f64>) -> Result<Self> {
        if nodes.len() != coeffs.len() {
            return Err(Error::domain(format!(
                "{} nodes but {} coefficients",
                nodes.len(),
                coeffs.len()
            )));
        }
        if nodes.is_empty() {
            return Err(Error::domain("Newton form needs at least one node"));
        }
        check_distinct(&nodes)?;
        if let Some(i) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(Error::domain(format!("coefficient {i} is not finite")));
        }
        Ok(NewtonForm { nodes, coeffs })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Nested evaluation `c₁ + (x−x₁)(c₂ + (x−x₂)(c₃ + …))`.
    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        let m = self.coeffs.len();
        let mut acc = self.coeffs[m - 1];
        for i in (0..m - 1).rev() {
            acc = self.coeffs[i] + (x - self.nodes[i]) * acc;
        }
        acc
    }

    pub fn evaluate(&self, x: f64) -> Result<f64> {
        check_finite_x(x)?;
        Ok(self.eval(x))
    }

    pub fn to_monomial(&self) -> MonomialForm {
        let m = self.coeffs.len();
        let mut acc = MonomialForm::zero().add_constant(self.coeffs[m - 1]);
        for i in (0..m - 1).rev() {
            acc = acc.mul_linear(self.nodes[i]).add_constant(self.coeffs[i]);
        }
        acc
    }

    pub fn degree(&self) -> Option<usize> {
        self.to_monomial().degree()
    }
}

/// Lagrange interpolant stored as nodes, barycentric weights and values.
#[derive(Debug, Clone, PartialEq)]
pub struct BarycentricForm {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    values: Vec<f64>,
}

/// Barycentric weights `wₖ = 1 / ∏_{j≠k}(xₖ − xⱼ)`.
pub fn barycentric_weights(nodes: &[f64]) -> Result<Vec<f64>> {
    check_distinct(nodes)?;
    let weights: Vec<f64> = nodes
        .iter()
        .enumerate()
        .map(|(k, &xk)| {
            let prod = nodes
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != k)
                .fold(1.0, |p, (_, &xj)| p * (xk - xj));
            1.0 / prod
        })
        .collect();
    if let Some(k) = weights.iter().position(|w| !w.is_finite() || *w == 0.0) {
        return Err(Error::Numerical(format!(
            "barycentric weight {k} is not a finite nonzero number"
        )));
    }
    Ok(weights)
}

impl BarycentricForm {
    pub fn new(nodes: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if nodes.len() != values.len() {
            return Err(Error::domain(format!(
                "{} nodes but {} values",
                nodes.len(),
                values.len()
            )));
        }
        if nodes.is_empty() {
            return Err(Error::domain("barycentric form needs at least one node"));
        }
        let weights = barycentric_weights(&nodes)?;
        Self::with_weights(nodes, weights, values)
    }

    /// Builds a form from precomputed weights (must match `nodes`).
    pub(crate) fn with_weights(
        nodes: Vec<f64>,
        weights: Vec<f64>,
        values: Vec<f64>,
    ) -> Result<Self> {
        if let Some(k) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::domain(format!("value {k} is not finite")));
        }
        Ok(BarycentricForm {
            nodes,
            weights,
            values,
        })
    }

    /// The `k`-th fundamental polynomial of `nodes` (value 1 at `nodes[k]`,
    /// 0 at every other node).
    pub fn fundamental(nodes: Vec<f64>, k: usize) -> Result<Self> {
        if k >= nodes.len() {
            return Err(Error::domain(format!(
                "index {k} out of range for {} nodes",
                nodes.len()
            )));
        }
        let mut values = vec![0.0; nodes.len()];
        values[k] = 1.0;
        Self::new(nodes, values)
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// First (modified Lagrange) barycentric formula
    /// `p(x) = ∏(x − xⱼ) · Σ wₖ vₖ / (x − xₖ)`, which stays accurate off the
    /// node hull; returns the stored value exactly at a node.
    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        let mut node_poly = 1.0;
        let mut sum = 0.0;
        for ((&xk, &wk), &vk) in self.nodes.iter().zip(&self.weights).zip(&self.values) {
            let d = x - xk;
            if d == 0.0 {
                return vk;
            }
            node_poly *= d;
            sum += wk * vk / d;
        }
        node_poly * sum
    }

    pub fn evaluate(&self, x: f64) -> Result<f64> {
        check_finite_x(x)?;
        Ok(self.eval(x))
    }

    /// The same polynomial in the Newton basis of the stored node order.
    pub fn to_newton(&self) -> NewtonForm {
        NewtonForm {
            nodes: self.nodes.clone(),
            coeffs: newton_coefficients(&self.nodes, &self.values),
        }
    }

    pub fn to_monomial(&self) -> MonomialForm {
        self.to_newton().to_monomial()
    }

    pub fn degree(&self) -> Option<usize> {
        self.to_monomial().degree()
    }
}

/// A polynomial in any of the supported representations.
#[derive(Debug, Clone, PartialEq)]
pub enum Polynomial {
    Monomial(MonomialForm),
    Newton(NewtonForm),
    Barycentric(BarycentricForm),
}

impl Polynomial {
    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Polynomial::Monomial(p) => p.eval(x),
            Polynomial::Newton(p) => p.eval(x),
            Polynomial::Barycentric(p) => p.eval(x),
        }
    }

    pub fn evaluate(&self, x: f64) -> Result<f64> {
        check_finite_x(x)?;
        Ok(self.eval(x))
    }

    pub fn to_monomial(&self) -> MonomialForm {
        match self {
            Polynomial::Monomial(p) => p.clone(),
            Polynomial::Newton(p) => p.to_monomial(),
            Polynomial::Barycentric(p) => p.to_monomial(),
        }
    }

    pub fn degree(&self) -> Option<usize> {
        self.to_monomial().degree()
    }
}

impl From<MonomialForm> for Polynomial {
    fn from(p: MonomialForm) -> Self {
        Polynomial::Monomial(p)
    }
}

impl From<NewtonForm> for Polynomial {
    fn from(p: NewtonForm) -> Self {
        Polynomial::Newton(p)
    }
}

impl From<BarycentricForm> for Polynomial {
    fn from(p: BarycentricForm) -> Self {
        Polynomial::Barycentric(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mono(c: &[f64]) -> MonomialForm {
        MonomialForm::new(c.to_vec()).unwrap()
    }

    #[test]
    fn newton_constant_basis() {
        let nf = NewtonForm::new(vec![0.3], vec![1.0]).unwrap();
        for x in [-2.0, 0.0, 0.3, 17.5] {
            assert_eq!(nf.evaluate(x).unwrap(), 1.0);
        }
    }

    #[test]
    fn newton_linear() {
        let nf = NewtonForm::new(vec![0.0, 1.0], vec![0.0, 1.0]).unwrap();
        assert_eq!(nf.evaluate(3.0).unwrap(), 3.0);
    }

    #[test]
    fn barycentric_fundamental_at_half() {
        let bf = BarycentricForm::new(vec![-1.0, 0.0, 1.0], vec![1.0, 0.0, 0.0]).unwrap();
        // ℓ₁(x) = x(x − 1)/2
        assert!((bf.evaluate(0.5).unwrap() + 0.125).abs() < 1e-15);
    }

    #[test]
    fn barycentric_exact_at_nodes() {
        let nodes = vec![-0.7, 0.1, 0.2, 0.9];
        let values = vec![1.0 / 3.0, -2.5, 7.25, 1e-300];
        let bf = BarycentricForm::new(nodes.clone(), values.clone()).unwrap();
        for (x, v) in nodes.iter().zip(&values) {
            assert_eq!(bf.eval(*x).to_bits(), v.to_bits());
        }
    }

    #[test]
    fn non_finite_argument_is_rejected() {
        let p = mono(&[1.0, 2.0]);
        assert!(matches!(p.evaluate(f64::NAN), Err(Error::Domain(_))));
        let nf = NewtonForm::new(vec![0.0], vec![1.0]).unwrap();
        assert!(nf.evaluate(f64::INFINITY).is_err());
    }

    #[test]
    fn newton_to_monomial_examples() {
        let nf = NewtonForm::new(vec![1.0, 2.0], vec![1.0, 1.0]).unwrap();
        assert_eq!(nf.to_monomial().coeffs(), &[0.0, 1.0]);
        let nf = NewtonForm::new(vec![0.0, 1.0, 2.0], vec![0.0, 0.0, 1.0]).unwrap();
        assert_eq!(nf.to_monomial().coeffs(), &[0.0, -1.0, 1.0]);
    }

    #[test]
    fn degree_examples() {
        assert_eq!(mono(&[5.0]).degree(), Some(0));
        assert_eq!(mono(&[0.0, 0.0, 3.0]).degree(), Some(2));
        assert_eq!(mono(&[0.0, 0.0]).degree(), None);
        assert_eq!(mono(&[1.0, 1e-14]).degree(), Some(0));
        let nf = NewtonForm::new(vec![0.0, 1.0, 2.0], vec![1.0, 1.0, 0.0]).unwrap();
        assert_eq!(nf.degree(), Some(1));
    }

    #[test]
    fn duplicate_nodes_rejected() {
        let err = NewtonForm::new(vec![0.0, 1.0, 0.0], vec![1.0; 3]).unwrap_err();
        assert_eq!(
            err,
            Error::DuplicateNodes {
                first: 0,
                second: 2
            }
        );
        assert!(BarycentricForm::new(vec![2.0, 2.0], vec![0.0, 1.0]).is_err());
    }

    #[test]
    fn synthetic_division() {
        // x³ − x = (x − 1)(x² + x)
        let p = mono(&[0.0, -1.0, 0.0, 1.0]);
        let (q, r) = p.div_linear(1.0);
        assert_eq!(r, 0.0);
        assert_eq!(q.coeffs(), &[0.0, 1.0, 1.0]);
        assert_eq!(q.mul_linear(1.0), p);
    }

    fn product_fundamental(nodes: &[f64], k: usize, x: f64) -> f64 {
        nodes
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, &xj)| (x - xj) / (nodes[k] - xj))
            .product()
    }

    fn distinct_nodes(max: usize) -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(-1.0f64..1.0, 1..=max).prop_filter("distinct", |v| {
            let mut s = v.clone();
            s.sort_by(f64::total_cmp);
            s.windows(2).all(|w| w[1] - w[0] > 1e-3)
        })
    }

    proptest! {
        #[test]
        fn newton_monomial_agree(
            nodes in distinct_nodes(6),
            seed_coeffs in prop::collection::vec(-2.0f64..2.0, 6),
            xs in prop::collection::vec(-1.0f64..1.0, 100),
        ) {
            let coeffs = seed_coeffs[..nodes.len()].to_vec();
            let nf = NewtonForm::new(nodes, coeffs).unwrap();
            let mf = nf.to_monomial();
            for x in xs {
                let a = nf.eval(x);
                let b = mf.eval(x);
                prop_assert!((a - b).abs() <= 1e-9 * (1.0 + a.abs()));
            }
        }

        #[test]
        fn fundamental_matches_product(
            nodes in distinct_nodes(21),
            x in -1.2f64..1.2,
        ) {
            for k in 0..nodes.len() {
                let bf = BarycentricForm::fundamental(nodes.clone(), k).unwrap();
                let direct = product_fundamental(&nodes, k, x);
                let got = bf.eval(x);
                prop_assert!((got - direct).abs() <= 1e-10 * direct.abs().max(1.0),
                    "k={k} got={got} direct={direct}");
            }
        }
    }
}
