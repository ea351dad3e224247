//! Lower porosity of compact sets.
//!
//! For `x₀ ∈ X` let `λ(X, x₀, r)` be the length of the largest open
//! subinterval of `(x₀, x₀ + r) ∖ X`. The right lower porosity is
//! `p⁺ = liminf_{r→0⁺} λ/r`; the left one uses `(x₀ − r, x₀)`, and
//! `p = max(p⁺, p⁻)`, `p* = min(p⁺, p⁻)`.
//!
//! On an interval-list set the gaps seen from `x₀` on one side are a sorted
//! list of distance pairs `(d₁, d₂)`, and `λ(r)/r` is monotone between the
//! radii `d₁`, `d₂` and `d₁ + C` (where a growing gap overtakes the largest
//! completed one, of length `C`). Evaluating at those radii and at a
//! geometric grid therefore gives the exact minimum over a range of radii.
//!
//! The liminf itself is a statement about `r → 0`, which a finite model
//! cannot resolve below its own resolution. Each side is estimated over the
//! range where the model is faithful:
//!
//! * at a declared accumulation point ([`CompactSet::with_limit_point`]), from
//!   the distance to the nearest point on that side up to `r_max`;
//! * elsewhere, from `r_min` up to the distance to the nearest interval
//!   endpoint on that side, where the local picture is already final.

use crate::compact::{CompactSet, Side};
use crate::error::{Error, Result};
use crate::tol;

/// Gaps seen from `x₀` on one side, as distances from `x₀`.
#[derive(Debug, Clone)]
struct SideGaps {
    /// Gap `i` is `(d1[i], d2[i])`; the last gap is unbounded.
    d1: Vec<f64>,
    d2: Vec<f64>,
    /// `prefix_max[i]` = longest of gaps `0..i` (all complete before `d1[i]`).
    prefix_max: Vec<f64>,
}

impl SideGaps {
    /// Gaps starting closer than `reach`.
    fn new(set: &CompactSet, x0: f64, side: Side, reach: f64) -> Result<Self> {
        let i = set
            .locate(x0)
            .ok_or_else(|| Error::domain(format!("{x0} is not a point of the set")))?;
        let iv = set.intervals();
        let (mut d1, mut d2) = (Vec::new(), Vec::new());
        match side {
            Side::Right => {
                let mut j = i;
                loop {
                    let start = iv[j].1 - x0;
                    if start >= reach {
                        break;
                    }
                    d1.push(start);
                    match iv.get(j + 1) {
                        Some(&(a, _)) => d2.push(a - x0),
                        None => {
                            d2.push(f64::INFINITY);
                            break;
                        }
                    }
                    j += 1;
                }
            }
            Side::Left => {
                let mut j = i;
                loop {
                    let start = x0 - iv[j].0;
                    if start >= reach {
                        break;
                    }
                    d1.push(start);
                    if j == 0 {
                        d2.push(f64::INFINITY);
                        break;
                    }
                    d2.push(x0 - iv[j - 1].1);
                    j -= 1;
                }
            }
        }
        let mut prefix_max = Vec::with_capacity(d1.len());
        let mut m = 0.0f64;
        for k in 0..d1.len() {
            prefix_max.push(m);
            m = m.max(d2[k] - d1[k]);
        }
        Ok(SideGaps { d1, d2, prefix_max })
    }

    /// `λ(r)`, valid for `r ≤ reach`.
    fn lambda(&self, r: f64) -> f64 {
        let k = self.d1.partition_point(|&d| d < r);
        if k == 0 {
            return 0.0;
        }
        let last = k - 1;
        self.prefix_max[last].max(self.d2[last].min(r) - self.d1[last])
    }

    /// Radii in `[lo, hi]` where `λ(r)/r` can change monotonicity.
    fn breakpoints(&self, lo: f64, hi: f64) -> impl Iterator<Item = f64> + '_ {
        (0..self.d1.len())
            .flat_map(move |k| [self.d1[k], self.d2[k], self.d1[k] + self.prefix_max[k]])
            .filter(move |&r| r >= lo && r <= hi && r > 0.0)
    }

    /// Distance to the nearest endpoint strictly beyond `x₀`.
    fn local_scale(&self) -> f64 {
        match self.d1.first() {
            Some(&d) if d > 0.0 => d,
            Some(_) => self.d2[0],
            None => f64::INFINITY,
        }
    }
}

/// Exact `λ(X, x₀, r)` on the given side.
pub fn gap_length(set: &CompactSet, x0: f64, r: f64, side: Side) -> Result<f64> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::domain(format!("radius {r} must be positive")));
    }
    Ok(SideGaps::new(set, x0, side, r)?.lambda(r))
}

/// One side of a [`PorosityEstimate`].
#[derive(Debug, Clone, PartialEq)]
pub struct SideEstimate {
    /// `min λ(r)/r` over the radii below.
    pub value: f64,
    pub r_low: f64,
    pub r_high: f64,
    /// Every radius evaluated, increasing.
    pub radii: Vec<f64>,
    /// The running minimum moved by at most the stability tolerance over
    /// the last two grid refinements.
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PorosityEstimate {
    pub p_plus: f64,
    pub p_minus: f64,
    /// `max(p⁺, p⁻)`
    pub p: f64,
    /// `min(p⁺, p⁻)`
    pub p_star: f64,
    pub right: SideEstimate,
    pub left: SideEstimate,
    pub converged: bool,
}

/// Radius range and grid for [`lower_porosity`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PorosityParams {
    pub r_min: f64,
    pub r_max: f64,
    pub grid_factor: f64,
}

impl PorosityParams {
    /// `r_max = diam X` (1 for a single point); `r_min` is an eighth of the
    /// smallest scale present near `x₀` (gaps of `X`, local distances, `diam X`).
    pub fn default_for(set: &CompactSet, x0: f64) -> Result<Self> {
        let diameter = set.diameter();
        let r_max = if diameter > 0.0 { diameter } else { 1.0 };
        let mut scale = r_max;
        if let Some(g) = set.smallest_gap() {
            scale = scale.min(g);
        }
        for side in [Side::Right, Side::Left] {
            let s = SideGaps::new(set, x0, side, f64::INFINITY)?.local_scale();
            if s > 0.0 {
                scale = scale.min(s);
            }
        }
        Ok(PorosityParams {
            r_min: scale / 8.0,
            r_max,
            grid_factor: tol::POROSITY_GRID_FACTOR,
        })
    }
}

fn estimate_side(
    gaps: &SideGaps,
    lo: f64,
    hi: f64,
    grid_factor: f64,
    trusted: bool,
) -> SideEstimate {
    let ratio = |r: f64| (gaps.lambda(r) / r).clamp(0.0, 1.0);
    let mut grid = vec![hi];
    let mut r = hi;
    loop {
        r *= grid_factor;
        if r <= lo {
            break;
        }
        grid.push(r);
    }
    if lo < hi {
        grid.push(lo);
    }
    let mut extra: Vec<f64> = gaps.breakpoints(lo, hi).collect();
    extra.sort_by(|a, b| b.total_cmp(a));

    // running minimum as the grid descends, breakpoints folded in as passed
    let mut best = f64::INFINITY;
    let mut history = Vec::with_capacity(grid.len());
    let mut next_extra = 0;
    for &g in &grid {
        while next_extra < extra.len() && extra[next_extra] >= g {
            best = best.min(ratio(extra[next_extra]));
            next_extra += 1;
        }
        best = best.min(ratio(g));
        history.push(best);
    }
    let k = history.len();
    let converged =
        trusted && (k < 3 || (history[k - 1] - history[k - 3]).abs() <= tol::POROSITY_STABILITY);

    let mut radii = grid;
    radii.extend(extra);
    radii.sort_by(f64::total_cmp);
    radii.dedup();
    SideEstimate {
        value: best,
        r_low: lo,
        r_high: hi,
        radii,
        converged,
    }
}

fn side_estimate(
    set: &CompactSet,
    x0: f64,
    side: Side,
    params: &PorosityParams,
) -> Result<SideEstimate> {
    let gaps = SideGaps::new(set, x0, side, params.r_max * (1.0 + 1e-12))?;
    let (lo, hi) = if set.is_limit(x0, side) {
        let nearest = gaps.local_scale();
        (params.r_min.max(nearest), params.r_max)
    } else {
        (params.r_min, params.r_max.min(gaps.local_scale()))
    };
    Ok(if lo < hi {
        estimate_side(&gaps, lo, hi, params.grid_factor, true)
    } else {
        estimate_side(&gaps, params.r_min, params.r_max, params.grid_factor, false)
    })
}

/// Right and left lower porosity of `X` at `x₀`.
pub fn lower_porosity(
    set: &CompactSet,
    x0: f64,
    r_min: f64,
    r_max: f64,
    grid_factor: f64,
) -> Result<PorosityEstimate> {
    if !(r_min > 0.0 && r_min < r_max && r_max.is_finite()) {
        return Err(Error::domain(format!(
            "need 0 < r_min < r_max, got {r_min} and {r_max}"
        )));
    }
    if !(grid_factor > 0.0 && grid_factor < 1.0) {
        return Err(Error::domain(format!(
            "grid factor {grid_factor} not in (0, 1)"
        )));
    }
    let params = PorosityParams {
        r_min,
        r_max,
        grid_factor,
    };
    let right = side_estimate(set, x0, Side::Right, &params)?;
    let left = side_estimate(set, x0, Side::Left, &params)?;
    let (p_plus, p_minus) = (right.value, left.value);
    Ok(PorosityEstimate {
        p_plus,
        p_minus,
        p: p_plus.max(p_minus),
        p_star: p_plus.min(p_minus),
        converged: right.converged && left.converged,
        right,
        left,
    })
}

/// [`lower_porosity`] with [`PorosityParams::default_for`].
pub fn lower_porosity_default(set: &CompactSet, x0: f64) -> Result<PorosityEstimate> {
    let p = PorosityParams::default_for(set, x0)?;
    lower_porosity(set, x0, p.r_min, p.r_max, p.grid_factor)
}

/// One-sided isolation of `x₀`, read off the interval list.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Isolation {
    pub right_isolated: bool,
    pub left_isolated: bool,
    /// `p* > 1/2`, equivalent to isolation from both sides.
    pub p_star_exceeds_half: bool,
}

pub fn isolation_criterion(set: &CompactSet, x0: f64) -> Result<Isolation> {
    let i = set
        .locate(x0)
        .ok_or_else(|| Error::domain(format!("{x0} is not a point of the set")))?;
    let (a, b) = set.intervals()[i];
    let right_isolated = x0 == b && !set.is_limit(x0, Side::Right);
    let left_isolated = x0 == a && !set.is_limit(x0, Side::Left);
    Ok(Isolation {
        right_isolated,
        left_isolated,
        p_star_exceeds_half: right_isolated && left_isolated,
    })
}

/// Outcome of [`strongly_lower_porous_check`].
#[derive(Debug, Clone, PartialEq)]
pub struct StrongPorosity {
    pub strongly_porous: bool,
    /// First sampled point with `p < 1 − tolerance`, and its `p`.
    pub witness: Option<(f64, f64)>,
    pub points_checked: usize,
}

/// Checks `p(X, x₀) = 1` at every isolated point and interval endpoint.
/// A set with a nondegenerate interval fails at once: its interior points
/// have `p = 0`.
pub fn strongly_lower_porous_check(set: &CompactSet) -> Result<StrongPorosity> {
    if let Some(&(a, b)) = set.intervals().iter().find(|(a, b)| a < b) {
        return Ok(StrongPorosity {
            strongly_porous: false,
            witness: Some((0.5 * (a + b), 0.0)),
            points_checked: 0,
        });
    }
    let points = set.sample_points();
    for (i, &x0) in points.iter().enumerate() {
        let p = lower_porosity_default(set, x0)?.p;
        if p < 1.0 - tol::POROSITY_STABILITY {
            return Ok(StrongPorosity {
                strongly_porous: false,
                witness: Some((x0, p)),
                points_checked: i + 1,
            });
        }
    }
    Ok(StrongPorosity {
        strongly_porous: true,
        witness: None,
        points_checked: points.len(),
    })
}

/// Both sides of "every point of `X` has `p* > 1/2` ⟺ `X` is finite".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiscretenessCheck {
    /// `p* > 1/2` at every isolated point and interval endpoint.
    pub all_points_isolated: bool,
    /// Every interval is a point and no accumulation point is declared.
    pub finite: bool,
}

impl DiscretenessCheck {
    pub fn consistent(&self) -> bool {
        self.all_points_isolated == self.finite
    }
}

pub fn discreteness_check(set: &CompactSet) -> Result<DiscretenessCheck> {
    let mut all = true;
    for x0 in set.sample_points() {
        if !isolation_criterion(set, x0)?.p_star_exceeds_half {
            all = false;
            break;
        }
    }
    Ok(DiscretenessCheck {
        all_points_isolated: all,
        finite: set.is_finite_point_set() && set.limit_points().is_empty(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compact::{make_cantor, make_geometric_set};

    #[test]
    fn gap_length_examples() {
        let unit = CompactSet::interval(-1.0, 1.0).unwrap();
        assert_eq!(gap_length(&unit, 0.0, 0.5, Side::Right).unwrap(), 0.0);
        let two = CompactSet::from_points(&[0.0, 1.0]).unwrap();
        assert_eq!(gap_length(&two, 0.0, 0.5, Side::Right).unwrap(), 0.5);
        assert_eq!(gap_length(&two, 0.0, 0.5, Side::Left).unwrap(), 0.5);
        let g = make_geometric_set(0.5, 30).unwrap();
        let r = 1.5 * 2f64.powi(-5);
        assert_eq!(gap_length(&g, 0.0, r, Side::Right).unwrap(), 0.015625);
        assert!(gap_length(&g, 0.3, 0.1, Side::Right).is_err());
        assert!(gap_length(&g, 0.0, 0.0, Side::Right).is_err());
    }

    #[test]
    fn gap_length_is_monotone_and_bounded() {
        let c = make_cantor(5, 1.0 / 3.0).unwrap();
        for x0 in c.sample_points().into_iter().step_by(7) {
            for side in [Side::Right, Side::Left] {
                let mut prev = 0.0;
                for i in 1..200 {
                    let r = i as f64 * 0.007;
                    let l = gap_length(&c, x0, r, side).unwrap();
                    assert!(l >= prev && l <= r);
                    prev = l;
                }
            }
        }
    }

    #[test]
    fn interval_interior_is_not_porous() {
        let unit = CompactSet::interval(-1.0, 1.0).unwrap();
        let e = lower_porosity_default(&unit, 0.25).unwrap();
        assert_eq!((e.p_plus, e.p_minus, e.p, e.p_star), (0.0, 0.0, 0.0, 0.0));
        assert!(e.converged);
    }

    #[test]
    fn geometric_set_at_zero() {
        let g = make_geometric_set(0.5, 40).unwrap();
        let e = lower_porosity_default(&g, 0.0).unwrap();
        assert!((e.p_plus - 1.0 / 3.0).abs() <= 0.02, "{}", e.p_plus);
        assert!(e.converged);
        assert_eq!(e.p_minus, 1.0);
        assert_eq!(e.p, 1.0);
        assert_eq!(e.p_star, e.p_plus);
        let iso = isolation_criterion(&g, 0.0).unwrap();
        assert_eq!(
            (
                iso.right_isolated,
                iso.left_isolated,
                iso.p_star_exceeds_half
            ),
            (false, true, false)
        );
    }

    #[test]
    fn isolated_points_have_full_porosity() {
        let two = CompactSet::from_points(&[0.0, 1.0]).unwrap();
        let e = lower_porosity_default(&two, 0.0).unwrap();
        assert_eq!((e.p_plus, e.p_minus), (1.0, 1.0));
        let g = make_geometric_set(0.5, 40).unwrap();
        for x0 in g.sample_points().into_iter().skip(1) {
            let e = lower_porosity_default(&g, x0).unwrap();
            assert_eq!((e.p_plus, e.p_minus), (1.0, 1.0), "x0={x0}");
            assert!(isolation_criterion(&g, x0).unwrap().p_star_exceeds_half);
        }
    }

    #[test]
    fn explicit_radii_are_validated() {
        let unit = CompactSet::interval(0.0, 1.0).unwrap();
        assert!(lower_porosity(&unit, 0.5, 0.1, 0.05, 0.9).is_err());
        assert!(lower_porosity(&unit, 0.5, 0.01, 0.5, 1.5).is_err());
        assert!(lower_porosity(&unit, 2.0, 0.01, 0.5, 0.9).is_err());
        // window inside the interval from the start: local range is the whole range
        let e = lower_porosity(&unit, 0.5, 0.01, 0.4, 0.9).unwrap();
        assert_eq!(e.p, 0.0);
    }

    #[test]
    fn endpoints_of_intervals() {
        let x = CompactSet::new(vec![(0.0, 1.0), (2.0, 3.0)]).unwrap();
        let e = lower_porosity_default(&x, 1.0).unwrap();
        assert_eq!((e.p_plus, e.p_minus), (1.0, 0.0));
        let iso = isolation_criterion(&x, 1.0).unwrap();
        assert_eq!((iso.right_isolated, iso.left_isolated), (true, false));
        let iso = isolation_criterion(&x, 0.5).unwrap();
        assert_eq!(
            (
                iso.right_isolated,
                iso.left_isolated,
                iso.p_star_exceeds_half
            ),
            (false, false, false)
        );
    }

    #[test]
    fn strong_porosity_examples() {
        let g = make_geometric_set(0.5, 40).unwrap();
        assert!(strongly_lower_porous_check(&g).unwrap().strongly_porous);
        let unit = CompactSet::interval(0.0, 1.0).unwrap();
        let v = strongly_lower_porous_check(&unit).unwrap();
        assert!(!v.strongly_porous);
        assert_eq!(v.witness, Some((0.5, 0.0)));
        let pts = CompactSet::from_points(&[-0.3, 0.1, 0.8]).unwrap();
        assert!(strongly_lower_porous_check(&pts).unwrap().strongly_porous);
    }

    #[test]
    fn discreteness_examples() {
        let pts = CompactSet::from_points(&[-0.3, 0.1, 0.8]).unwrap();
        let d = discreteness_check(&pts).unwrap();
        assert!(d.all_points_isolated && d.finite);
        let g = make_geometric_set(0.5, 10).unwrap();
        let d = discreteness_check(&g).unwrap();
        assert!(!d.all_points_isolated && !d.finite && d.consistent());
        let c = make_cantor(3, 0.5).unwrap();
        assert!(discreteness_check(&c).unwrap().consistent());
    }
}
