//! Compact subsets of ℝ modeled as finite unions of disjoint closed intervals.

use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Which side of a point a one-sided notion refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Right,
    Left,
}

/// A point at which the set being modeled accumulates from one side.
///
/// Generators that truncate an infinite construction (for instance
/// `{0} ∪ {rᵏ}`) record the accumulation points of the untruncated set here.
/// One-sided porosity and isolation at such a point are judged on the
/// scales the truncation still resolves instead of on the artificial gap
/// left below the truncation depth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitPoint {
    pub x: f64,
    pub side: Side,
}

/// `min X`, `max X` and the one-dimensional Lebesgue measure of `X`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extent {
    pub min: f64,
    pub max: f64,
    pub measure: f64,
}

/// Nonempty sorted union of disjoint closed intervals with strict gaps.
/// Degenerate intervals `[a, a]` are isolated points.
#[derive(Debug, Clone, PartialEq)]
pub struct CompactSet {
    intervals: Vec<(f64, f64)>,
    limit_points: Vec<LimitPoint>,
}

impl CompactSet {
    pub fn new(intervals: Vec<(f64, f64)>) -> Result<Self> {
        if intervals.is_empty() {
            return Err(Error::domain("compact set must be nonempty"));
        }
        for (i, &(a, b)) in intervals.iter().enumerate() {
            if !a.is_finite() || !b.is_finite() || a > b {
                return Err(Error::domain(format!(
                    "interval {i} = [{a}, {b}] is invalid"
                )));
            }
        }
        if let Some(i) = intervals.windows(2).position(|w| w[0].1 >= w[1].0) {
            return Err(Error::domain(format!(
                "intervals {} and {} overlap or are out of order",
                i,
                i + 1
            )));
        }
        Ok(CompactSet {
            intervals,
            limit_points: Vec::new(),
        })
    }

    pub fn interval(a: f64, b: f64) -> Result<Self> {
        Self::new(vec![(a, b)])
    }

    /// Finite point set; duplicates are merged.
    pub fn from_points(points: &[f64]) -> Result<Self> {
        let mut pts = points.to_vec();
        if pts.iter().any(|x| !x.is_finite()) {
            return Err(Error::domain("points must be finite"));
        }
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        Self::new(pts.into_iter().map(|x| (x, x)).collect())
    }

    /// Declares `x ∈ X` a one-sided accumulation point of the idealized set.
    pub fn with_limit_point(mut self, x: f64, side: Side) -> Result<Self> {
        if !self.contains(x) {
            return Err(Error::domain(format!("{x} is not a point of the set")));
        }
        self.limit_points.push(LimitPoint { x, side });
        Ok(self)
    }

    pub fn limit_points(&self) -> &[LimitPoint] {
        &self.limit_points
    }

    pub(crate) fn is_limit(&self, x: f64, side: Side) -> bool {
        self.limit_points.iter().any(|p| p.x == x && p.side == side)
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn min(&self) -> f64 {
        self.intervals[0].0
    }

    pub fn max(&self) -> f64 {
        self.intervals[self.intervals.len() - 1].1
    }

    pub fn diameter(&self) -> f64 {
        self.max() - self.min()
    }

    pub fn extent(&self) -> Extent {
        Extent {
            min: self.min(),
            max: self.max(),
            measure: self.intervals.iter().map(|(a, b)| b - a).sum(),
        }
    }

    /// Index of the interval containing `x`.
    pub fn locate(&self, x: f64) -> Option<usize> {
        // first interval whose right end is ≥ x
        let i = self.intervals.partition_point(|&(_, b)| b < x);
        match self.intervals.get(i) {
            Some(&(a, _)) if a <= x => Some(i),
            _ => None,
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.locate(x).is_some()
    }

    /// True when every interval is degenerate.
    pub fn is_finite_point_set(&self) -> bool {
        self.intervals.iter().all(|(a, b)| a == b)
    }

    /// Smallest distance between consecutive intervals.
    pub fn smallest_gap(&self) -> Option<f64> {
        self.intervals
            .windows(2)
            .map(|w| w[1].0 - w[0].1)
            .min_by(f64::total_cmp)
    }

    /// Every isolated point and interval endpoint, in increasing order.
    pub fn sample_points(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(2 * self.intervals.len());
        for &(a, b) in &self.intervals {
            out.push(a);
            if b != a {
                out.push(b);
            }
        }
        out
    }

    /// Set file: one interval `a b` per line (`a a` for a point), sorted and
    /// disjoint; `#` starts a comment line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut intervals: Vec<(f64, f64)> = Vec::new();
        let mut prev_line = 0;
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let nums: Vec<f64> = trimmed
                .split_whitespace()
                .map(|t| {
                    t.parse::<f64>()
                        .ok()
                        .filter(|x| x.is_finite())
                        .ok_or_else(|| Error::parse(line_no, format!("not a finite number: {t:?}")))
                })
                .collect::<Result<_>>()?;
            let &[a, b] = nums.as_slice() else {
                return Err(Error::parse(line_no, "expected two numbers \"a b\""));
            };
            if a > b {
                return Err(Error::parse(
                    line_no,
                    format!("interval [{a}, {b}] has a > b"),
                ));
            }
            if let Some(&(pa, pb)) = intervals.last() {
                if pb >= a {
                    return Err(Error::parse(
                        line_no,
                        format!(
                            "interval [{a}, {b}] is not strictly after [{pa}, {pb}] (line {prev_line})"
                        ),
                    ));
                }
            }
            intervals.push((a, b));
            prev_line = line_no;
        }
        if intervals.is_empty() {
            return Err(Error::parse(0, "set file has no intervals"));
        }
        Self::new(intervals)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (a, b) in &self.intervals {
            let _ = writeln!(out, "{a:?} {b:?}");
        }
        out
    }
}

/// `{0} ∪ {ratioᵏ : k = 0..=depth}` as isolated points, with 0 declared a
/// right accumulation point.
pub fn make_geometric_set(ratio: f64, depth: usize) -> Result<CompactSet> {
    if !(ratio > 0.0 && ratio < 1.0) {
        return Err(Error::domain(format!("ratio {ratio} not in (0, 1)")));
    }
    if depth == 0 {
        return Err(Error::domain("geometric set needs depth ≥ 1"));
    }
    let mut points = vec![0.0];
    points.extend((0..=depth).rev().map(|k| ratio.powi(k as i32)));
    if points.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Numerical(format!(
            "ratio {ratio} underflows before depth {depth}"
        )));
    }
    CompactSet::new(points.into_iter().map(|x| (x, x)).collect())?
        .with_limit_point(0.0, Side::Right)
}

/// Depth-`depth` outer approximation of the Cantor set on `[0, 1]` that
/// removes the open middle `middle_fraction` of every interval.
pub fn make_cantor(depth: usize, middle_fraction: f64) -> Result<CompactSet> {
    if !(middle_fraction > 0.0 && middle_fraction < 1.0) {
        return Err(Error::domain(format!(
            "middle fraction {middle_fraction} not in (0, 1)"
        )));
    }
    if depth > 24 {
        return Err(Error::domain("Cantor depth above 24 is not supported"));
    }
    let keep = (1.0 - middle_fraction) / 2.0;
    // interval i keeps the right copy at level j when bit (depth - j) of i is set;
    // endpoints come straight from the address so lengths do not drift
    let shifts: Vec<f64> = (0..depth)
        .map(|j| (1.0 - keep) * keep.powi(j as i32))
        .collect();
    let len = keep.powi(depth as i32);
    let intervals = (0..1usize << depth)
        .map(|i| {
            let a: f64 = (0..depth)
                .filter(|&j| i >> (depth - 1 - j) & 1 == 1)
                .map(|j| shifts[j])
                .sum();
            (a, a + len)
        })
        .collect();
    CompactSet::new(intervals)
}
