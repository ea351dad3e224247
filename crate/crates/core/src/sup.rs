//! Sampled maximization of a function over a [`CompactSet`].
//!
//! Every non-degenerate interval of the set is cut at the supplied
//! breakpoints (interpolation nodes, kinks of the target function). On each
//! piece the objective is smooth, so it is sampled at Chebyshev–Lobatto
//! points and the best sample is polished by a golden-section search inside
//! its neighbouring samples. Isolated points are evaluated directly. The
//! returned value is always an attained value, hence a lower bound of the
//! true supremum.

use crate::compact::CompactSet;
use crate::tol;

/// A maximum value together with the smallest point attaining it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupResult {
    pub value: f64,
    pub argmax: f64,
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

fn golden_max(g: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let mut gc = g(c);
    let mut gd = g(d);
    for _ in 0..200 {
        if hi - lo <= tol::REFINEMENT * 1e-4 * (1.0 + c.abs()) {
            break;
        }
        if gc >= gd {
            hi = d;
            d = c;
            gd = gc;
            c = hi - INV_PHI * (hi - lo);
            gc = g(c);
        } else {
            lo = c;
            c = d;
            gc = gd;
            d = lo + INV_PHI * (hi - lo);
            gd = g(d);
        }
    }
    if gc >= gd {
        (c, gc)
    } else {
        (d, gd)
    }
}

fn better(candidate: (f64, f64), best: Option<(f64, f64)>) -> bool {
    match best {
        None => !candidate.1.is_nan(),
        Some((_, v)) => candidate.1 > v,
    }
}

/// Best point on `[lo, hi]` using `samples + 1` Chebyshev–Lobatto points.
fn maximize_segment(g: &impl Fn(f64) -> f64, lo: f64, hi: f64, samples: usize) -> (f64, f64) {
    let mid = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let m = samples.max(2);
    let xs: Vec<f64> = (0..=m)
        .map(|i| {
            if i == 0 {
                lo
            } else if i == m {
                hi
            } else {
                mid - half * (std::f64::consts::PI * i as f64 / m as f64).cos()
            }
        })
        .collect();
    let mut best: Option<(usize, f64)> = None;
    for (i, &x) in xs.iter().enumerate() {
        let v = g(x);
        if best.map_or(!v.is_nan(), |(_, b)| v > b) {
            best = Some((i, v));
        }
    }
    let Some((i, v)) = best else {
        return (lo, f64::NAN);
    };
    let a = xs[i.saturating_sub(1)];
    let b = xs[(i + 1).min(m)];
    let (xr, vr) = golden_max(g, a, b);
    if vr > v {
        (xr, vr)
    } else {
        (xs[i], v)
    }
}

/// Maximizes `g` over `set`. `samples_per_segment` is the number of
/// sampling steps in every piece between consecutive breakpoints.
pub fn maximize_on_set(
    set: &CompactSet,
    breakpoints: &[f64],
    samples_per_segment: usize,
    g: impl Fn(f64) -> f64,
) -> SupResult {
    let mut cuts: Vec<f64> = breakpoints
        .iter()
        .copied()
        .filter(|x| x.is_finite())
        .collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();

    // candidates in increasing x order
    let mut candidates: Vec<(f64, f64)> = Vec::new();
    for &(a, b) in set.intervals() {
        if a == b {
            candidates.push((a, g(a)));
            continue;
        }
        let start = cuts.partition_point(|&c| c <= a);
        let end = cuts.partition_point(|&c| c < b);
        let mut edges = Vec::with_capacity(end - start + 2);
        edges.push(a);
        edges.extend_from_slice(&cuts[start..end]);
        edges.push(b);
        for w in edges.windows(2) {
            candidates.push(maximize_segment(&g, w[0], w[1], samples_per_segment));
        }
    }

    let mut best: Option<(f64, f64)> = None;
    for &c in &candidates {
        if better(c, best) {
            best = Some(c);
        }
    }
    let Some((_, value)) = best else {
        return SupResult {
            value: f64::NAN,
            argmax: set.min(),
        };
    };
    let tie = tol::ARGMAX_TIE * value.abs().max(1.0);
    let argmax = candidates
        .iter()
        .filter(|(_, v)| *v >= value - tie)
        .map(|(x, _)| *x)
        .fold(f64::INFINITY, f64::min);
    SupResult { value, argmax }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parabola_peak_is_refined() {
        let set = CompactSet::interval(-1.0, 1.0).unwrap();
        let r = maximize_on_set(&set, &[], 7, |x| 1.0 - (x - 0.123456789).powi(2));
        assert!((r.value - 1.0).abs() < 1e-15);
        assert!((r.argmax - 0.123456789).abs() < 1e-7);
    }

    #[test]
    fn isolated_points_and_ties() {
        let set = CompactSet::from_points(&[-0.5, 0.2, 0.5]).unwrap();
        let r = maximize_on_set(&set, &[], 8, |x| x * x);
        assert_eq!(r.value, 0.25);
        assert_eq!(r.argmax, -0.5);
    }

    #[test]
    fn kink_at_breakpoint() {
        let set = CompactSet::interval(-1.0, 2.0).unwrap();
        let r = maximize_on_set(&set, &[0.3], 4, |x| -(x - 0.3).abs());
        assert_eq!(r.value, 0.0);
        assert_eq!(r.argmax, 0.3);
    }
}
