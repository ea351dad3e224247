//! Test functions: a small registry of closed forms plus tabulated data.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::MonomialForm;

/// A real function known in closed form or only at finitely many points.
#[derive(Debug, Clone, PartialEq)]
pub enum SampledFunction {
    /// `|x|`
    Abs,
    /// `1 / (1 + 25x²)`
    Runge,
    /// `eˣ`
    Exp,
    /// Continuous ramp: `-1` left of `-w`, `1` right of `w`, linear between.
    Step { half_width: f64 },
    /// A polynomial given by monomial coefficients.
    Polynomial(MonomialForm),
    /// Hat function equal to 1 at `center` and 0 outside
    /// `(center − half_width, center + half_width)`; with a small enough
    /// width it acts as the indicator of one node on any finite node set.
    IndicatorOfNode { center: f64, half_width: f64 },
    /// Values at listed points only (sorted by abscissa).
    Tabulated(Vec<(f64, f64)>),
}

/// Registry names accepted by [`SampledFunction::from_name`].
pub const REGISTRY: &[&str] = &["abs", "runge", "exp", "step", "poly:c0:c1:…", "node:x:w"];

impl SampledFunction {
    /// Looks up a registry name: `abs`, `runge`, `exp`, `step`,
    /// `poly:c0:c1:…` (constant term first) or `node:CENTER:HALF_WIDTH`.
    pub fn from_name(name: &str) -> Result<Self> {
        let mut parts = name.split(':');
        let head = parts.next().unwrap_or_default();
        let args: Vec<f64> = parts
            .map(|p| {
                p.parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| Error::domain(format!("bad number {p:?} in function {name:?}")))
            })
            .collect::<Result<_>>()?;
        match (head, args.as_slice()) {
            ("abs", []) => Ok(SampledFunction::Abs),
            ("runge", []) => Ok(SampledFunction::Runge),
            ("exp", []) => Ok(SampledFunction::Exp),
            ("step", []) => Ok(SampledFunction::Step { half_width: 0.1 }),
            ("step", [w]) if *w > 0.0 => Ok(SampledFunction::Step { half_width: *w }),
            ("poly", c) if !c.is_empty() => {
                Ok(SampledFunction::Polynomial(MonomialForm::new(c.to_vec())?))
            }
            ("node", [c, w]) if *w > 0.0 => Ok(SampledFunction::IndicatorOfNode {
                center: *c,
                half_width: *w,
            }),
            _ => Err(Error::domain(format!("unknown function {name:?}"))),
        }
    }

    pub fn tabulated(mut points: Vec<(f64, f64)>) -> Result<Self> {
        points.sort_by(|a, b| a.0.total_cmp(&b.0));
        if points.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::domain("tabulated function lists a point twice"));
        }
        if points.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
            return Err(Error::domain("tabulated function has non-finite entries"));
        }
        Ok(SampledFunction::Tabulated(points))
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        if !x.is_finite() {
            return Err(Error::domain(format!("cannot evaluate at {x}")));
        }
        Ok(match self {
            SampledFunction::Abs => x.abs(),
            SampledFunction::Runge => 1.0 / (1.0 + 25.0 * x * x),
            SampledFunction::Exp => x.exp(),
            SampledFunction::Step { half_width } => (x / half_width).clamp(-1.0, 1.0),
            SampledFunction::Polynomial(p) => p.eval(x),
            SampledFunction::IndicatorOfNode { center, half_width } => {
                (1.0 - (x - center).abs() / half_width).max(0.0)
            }
            SampledFunction::Tabulated(points) => {
                match points.binary_search_by(|p| p.0.total_cmp(&x)) {
                    Ok(i) => points[i].1,
                    Err(_) => {
                        return Err(Error::domain(format!(
                            "tabulated function has no value at {x}"
                        )))
                    }
                }
            }
        })
    }

    /// Values at every node, failing on the first node the function does not
    /// cover.
    pub fn eval_all(&self, xs: &[f64]) -> Result<Vec<f64>> {
        xs.iter().map(|&x| self.eval(x)).collect()
    }

    /// Points where the function is not smooth; used as extra breakpoints
    /// when maximizing errors.
    pub fn kinks(&self) -> Vec<f64> {
        match self {
            SampledFunction::Abs => vec![0.0],
            SampledFunction::Step { half_width } => vec![-half_width, *half_width],
            SampledFunction::IndicatorOfNode { center, half_width } => {
                vec![center - half_width, *center, center + half_width]
            }
            _ => Vec::new(),
        }
    }

    /// True when the function is known everywhere (not tabulated).
    pub fn is_closed_form(&self) -> bool {
        !matches!(self, SampledFunction::Tabulated(_))
    }
}

impl fmt::Display for SampledFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SampledFunction::Abs => write!(f, "abs"),
            SampledFunction::Runge => write!(f, "runge"),
            SampledFunction::Exp => write!(f, "exp"),
            SampledFunction::Step { half_width } => write!(f, "step:{half_width}"),
            SampledFunction::Polynomial(p) => {
                write!(f, "poly")?;
                for c in p.coeffs() {
                    write!(f, ":{c}")?;
                }
                Ok(())
            }
            SampledFunction::IndicatorOfNode { center, half_width } => {
                write!(f, "node:{center}:{half_width}")
            }
            SampledFunction::Tabulated(points) => write!(f, "tabulated[{}]", points.len()),
        }
    }
}
