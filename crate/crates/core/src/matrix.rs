//! Interpolation matrices and node schemes.
//!
//! An [`InterpolationMatrix`] is the triangular array whose `n`-th row holds
//! the `n` nodes used for interpolation by polynomials of degree `n − 1`.
//! Only the first `N` rows of the infinite array are stored, so every
//! statement checked on a matrix holds "for `n ≤ N`".

use std::f64::consts::PI;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::tol;

/// Chebyshev nodes `cos((2k − 1)π / 2n)`, `k = 1..n`, in decreasing order.
pub fn chebyshev_row(n: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::domain("Chebyshev row needs n ≥ 1"));
    }
    let mut row: Vec<f64> = (1..=n)
        .map(|k| ((2 * k - 1) as f64 * PI / (2 * n) as f64).cos())
        .collect();
    // cos((2k−1)π/2n) and cos((2(n+1−k)−1)π/2n) are negatives of each other;
    // mirror the first half so the row is symmetric to the last bit.
    for k in 0..n / 2 {
        row[n - 1 - k] = -row[k];
    }
    if n % 2 == 1 {
        row[n / 2] = 0.0;
    }
    Ok(row)
}

/// `n` equally spaced nodes on `[a, b]`; the midpoint when `n = 1`.
pub fn equispaced_row(n: usize, a: f64, b: f64) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::domain("equispaced row needs n ≥ 1"));
    }
    if !a.is_finite() || !b.is_finite() || a >= b {
        return Err(Error::domain(format!("invalid interval [{a}, {b}]")));
    }
    if n == 1 {
        return Ok(vec![0.5 * (a + b)]);
    }
    let h = (b - a) / (n - 1) as f64;
    let mut row: Vec<f64> = (0..n).map(|k| a + k as f64 * h).collect();
    row[n - 1] = b;
    Ok(row)
}

/// Reorders `points` greedily so that each new point maximizes the product of
/// distances to the points already taken. The first point is the one of
/// largest magnitude; ties go to the smaller index.
pub fn leja_order(points: &[f64]) -> Vec<f64> {
    let mut remaining: Vec<f64> = points.to_vec();
    let mut out = Vec::with_capacity(points.len());
    if remaining.is_empty() {
        return out;
    }
    let first = remaining.iter().enumerate().fold(0, |best, (i, x)| {
        if x.abs() > remaining[best].abs() {
            i
        } else {
            best
        }
    });
    out.push(remaining.remove(first));
    // log-distance sums keep the products representable for long sequences
    let mut score: Vec<f64> = remaining.iter().map(|x| (x - out[0]).abs().ln()).collect();
    while !remaining.is_empty() {
        let best = (0..remaining.len()).fold(0, |b, i| if score[i] > score[b] { i } else { b });
        let chosen = remaining.remove(best);
        score.remove(best);
        for (s, x) in score.iter_mut().zip(&remaining) {
            *s += (x - chosen).abs().ln();
        }
        out.push(chosen);
    }
    out
}

/// Leja-ordered Chebyshev points: a nested-friendly node sequence.
pub fn leja_chebyshev(n: usize) -> Result<NodeSequence> {
    NodeSequence::new(leja_order(&chebyshev_row(n)?))
}

/// A sequence `x₁, x₂, …` of pairwise distinct real nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeSequence {
    points: Vec<f64>,
}

impl NodeSequence {
    pub fn new(points: Vec<f64>) -> Result<Self> {
        crate::poly::check_distinct(&points)?;
        Ok(NodeSequence { points })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The first `n` nodes.
    pub fn prefix(&self, n: usize) -> Result<&[f64]> {
        self.points.get(..n).ok_or_else(|| {
            Error::domain(format!(
                "need {n} nodes, sequence has {}",
                self.points.len()
            ))
        })
    }

    /// One decimal per line; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut points = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let x: f64 = line
                .parse()
                .map_err(|_| Error::parse(i + 1, format!("not a number: {line:?}")))?;
            if !x.is_finite() {
                return Err(Error::parse(i + 1, "node is not finite"));
            }
            points.push(x);
        }
        crate::poly::check_distinct(&points).map_err(|e| match e {
            Error::DuplicateNodes { first, second } => Error::parse(
                0,
                format!("nodes {} and {} coincide", first + 1, second + 1),
            ),
            other => other,
        })?;
        Ok(NodeSequence { points })
    }

    pub fn to_text(&self) -> String {
        self.points.iter().map(|x| format!("{x:?}\n")).collect()
    }
}

/// A duplicated node inside one row (1-based row index and positions).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RowViolation {
    pub row: usize,
    pub positions: (usize, usize),
}

/// Outcome of [`InterpolationMatrix::is_nested`].
#[derive(Debug, Clone, PartialEq)]
pub enum Nestedness {
    /// Row `n` is a permutation of the first `n` points of the sequence.
    Nested(NodeSequence),
    /// `node` of row `row` (1-based) is absent from row `row + 1`.
    NotNested { row: usize, node: f64 },
}

/// The first `N` rows of an interpolation matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct InterpolationMatrix {
    rows: Vec<Vec<f64>>,
    ambient: (f64, f64),
    node_tolerance: f64,
}

impl InterpolationMatrix {
    /// Row `n` (1-based) must hold exactly `n` finite nodes inside
    /// `ambient`. Distinctness is not enforced here, see
    /// [`validate`](Self::validate).
    pub fn new(rows: Vec<Vec<f64>>, ambient: (f64, f64)) -> Result<Self> {
        let (a, b) = ambient;
        if !a.is_finite() || !b.is_finite() || a > b {
            return Err(Error::domain(format!(
                "invalid ambient interval [{a}, {b}]"
            )));
        }
        if rows.is_empty() {
            return Err(Error::domain("matrix needs at least one row"));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != i + 1 {
                return Err(Error::domain(format!(
                    "row {} has {} nodes, expected {}",
                    i + 1,
                    row.len(),
                    i + 1
                )));
            }
            if let Some(x) = row.iter().find(|x| !x.is_finite() || **x < a || **x > b) {
                return Err(Error::domain(format!(
                    "row {}: node {x} outside [{a}, {b}]",
                    i + 1
                )));
            }
        }
        Ok(InterpolationMatrix {
            rows,
            ambient,
            node_tolerance: 0.0,
        })
    }

    /// Chebyshev rows `1..=depth` on `[-1, 1]`.
    pub fn chebyshev(depth: usize) -> Result<Self> {
        let rows = (1..=depth).map(chebyshev_row).collect::<Result<_>>()?;
        Self::new(rows, (-1.0, 1.0))
    }

    /// Equispaced rows `1..=depth` on `[a, b]`.
    pub fn equispaced(depth: usize, a: f64, b: f64) -> Result<Self> {
        let rows = (1..=depth)
            .map(|n| equispaced_row(n, a, b))
            .collect::<Result<_>>()?;
        Self::new(rows, (a, b))
    }

    pub fn depth(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    /// Row `n`, 1-based, holding `n` nodes.
    pub fn row(&self, n: usize) -> Result<&[f64]> {
        if n == 0 || n > self.rows.len() {
            return Err(Error::domain(format!(
                "row {n} requested from a matrix of depth {}",
                self.rows.len()
            )));
        }
        Ok(&self.rows[n - 1])
    }

    pub fn ambient(&self) -> (f64, f64) {
        self.ambient
    }

    /// Tolerance used when comparing nodes across rows: zero for
    /// constructed matrices, [`tol::FILE_NODE_MATCH`] for parsed ones.
    pub fn node_tolerance(&self) -> f64 {
        self.node_tolerance
    }

    pub fn with_node_tolerance(mut self, tolerance: f64) -> Self {
        self.node_tolerance = tolerance;
        self
    }

    /// Every pair of coinciding nodes within a row; empty when the matrix
    /// satisfies the distinctness condition.
    pub fn validate(&self) -> Vec<RowViolation> {
        let mut out = Vec::new();
        for (r, row) in self.rows.iter().enumerate() {
            for i in 0..row.len() {
                for j in i + 1..row.len() {
                    if row[i] == row[j] {
                        out.push(RowViolation {
                            row: r + 1,
                            positions: (i + 1, j + 1),
                        });
                    }
                }
            }
        }
        out
    }

    fn same(&self, x: f64, y: f64) -> bool {
        (x - y).abs() <= self.node_tolerance
    }

    /// Decides whether every row is a permutation of a prefix of one
    /// sequence, i.e. row `n` ⊂ row `n + 1` as sets.
    pub fn is_nested(&self) -> Nestedness {
        let mut sequence = vec![self.rows[0][0]];
        for (i, pair) in self.rows.windows(2).enumerate() {
            let (short, long) = (&pair[0], &pair[1]);
            if let Some(&missing) = short
                .iter()
                .find(|&&x| !long.iter().any(|&y| self.same(x, y)))
            {
                return Nestedness::NotNested {
                    row: i + 1,
                    node: missing,
                };
            }
            // |long| = |short| + 1 and short ⊂ long, so exactly one node is new.
            let new = long
                .iter()
                .copied()
                .find(|&y| !short.iter().any(|&x| self.same(x, y)));
            match new {
                Some(y) => sequence.push(y),
                None => {
                    // Only possible with a duplicated node in `long`.
                    return Nestedness::NotNested {
                        row: i + 1,
                        node: short[0],
                    };
                }
            }
        }
        match NodeSequence::new(sequence) {
            Ok(seq) => Nestedness::Nested(seq),
            Err(_) => Nestedness::NotNested {
                row: 1,
                node: self.rows[0][0],
            },
        }
    }

    /// Replaces every node `x` by `alpha·x + beta`.
    pub fn affine_transform(&self, alpha: f64, beta: f64) -> Result<Self> {
        if alpha == 0.0 || !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::domain(format!(
                "affine map needs finite alpha ≠ 0 (got {alpha}, {beta})"
            )));
        }
        let map = |x: f64| alpha * x + beta;
        let (a, b) = (map(self.ambient.0), map(self.ambient.1));
        let rows: Vec<Vec<f64>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&x| map(x)).collect())
            .collect();
        // Rounding may push an extreme node a hair outside the image interval.
        let (lo, hi) = rows
            .iter()
            .flatten()
            .fold((a.min(b), a.max(b)), |(lo, hi), &x| (lo.min(x), hi.max(x)));
        Ok(InterpolationMatrix {
            rows,
            ambient: (lo, hi),
            node_tolerance: self.node_tolerance,
        })
    }

    /// Parses the matrix file format: line `n` (ignoring `#` comments and
    /// blank lines) lists the `n` nodes of row `n`, separated by spaces.
    /// The ambient interval is `[-1, 1]` when every node fits, otherwise the
    /// hull of the nodes.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rows: Vec<Vec<f64>> = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let row: Vec<f64> = trimmed
                .split(' ')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<f64>()
                        .ok()
                        .filter(|x| x.is_finite())
                        .ok_or_else(|| Error::parse(i + 1, format!("not a finite number: {t:?}")))
                })
                .collect::<Result<_>>()?;
            let expected = rows.len() + 1;
            if row.len() != expected {
                return Err(Error::parse(
                    i + 1,
                    format!(
                        "row {expected} must have {expected} entries, found {}",
                        row.len()
                    ),
                ));
            }
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(Error::parse(0, "matrix file has no rows"));
        }
        let (lo, hi) = rows
            .iter()
            .flatten()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
                (lo.min(x), hi.max(x))
            });
        let ambient = if lo >= -1.0 && hi <= 1.0 {
            (-1.0, 1.0)
        } else {
            (lo, hi)
        };
        Ok(Self::new(rows, ambient)?.with_node_tolerance(tol::FILE_NODE_MATCH))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(|x| format!("{x:?}")).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }
}

/// The matrix whose row `n` is the first `n` points of `seq`.
pub fn nested_matrix(seq: &NodeSequence, depth: usize) -> Result<InterpolationMatrix> {
    if depth == 0 {
        return Err(Error::domain("nested matrix needs depth ≥ 1"));
    }
    let prefix = seq.prefix(depth)?;
    let (lo, hi) = prefix
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
            (lo.min(x), hi.max(x))
        });
    let ambient = if lo >= -1.0 && hi <= 1.0 {
        (-1.0, 1.0)
    } else {
        (lo, hi)
    };
    let rows = (1..=depth).map(|n| prefix[..n].to_vec()).collect();
    InterpolationMatrix::new(rows, ambient)
}
