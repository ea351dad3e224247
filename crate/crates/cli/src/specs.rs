//! Resolution of `--set`, `--interval`, `--matrix` and `--functions`.

use std::fs;
use std::path::Path;

use lebesgue_lab::{
    leja_chebyshev, make_cantor, make_geometric_set, nested_matrix, CompactSet,
    InterpolationMatrix, NodeSequence, SampledFunction,
};

use crate::CliError;

/// Reads a file, naming it in any error.
pub fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: cannot read: {e}", path.display())))
}

/// Attaches the file name to a parse error from the core crate.
pub fn in_file(path: &Path, e: lebesgue_lab::Error) -> CliError {
    match e {
        lebesgue_lab::Error::Numerical(m) => {
            CliError::Numerical(format!("{}: {m}", path.display()))
        }
        lebesgue_lab::Error::Parse { line, message } => {
            CliError::Input(format!("{}:{line}: {message}", path.display()))
        }
        other => CliError::Input(format!("{}: {other}", path.display())),
    }
}

fn spec_numbers(spec: &str, body: &str, expected: usize) -> Result<Vec<f64>, CliError> {
    let nums: Vec<f64> = body
        .split(':')
        .map(|t| t.parse::<f64>().ok().filter(|v| v.is_finite()))
        .collect::<Option<_>>()
        .ok_or_else(|| CliError::Input(format!("bad number in set spec {spec:?}")))?;
    if nums.len() != expected {
        return Err(CliError::Input(format!(
            "set spec {spec:?} needs {expected} fields"
        )));
    }
    Ok(nums)
}

fn as_count(spec: &str, v: f64) -> Result<usize, CliError> {
    if v >= 0.0 && v.fract() == 0.0 && v <= 64.0 {
        Ok(v as usize)
    } else {
        Err(CliError::Input(format!(
            "depth in {spec:?} must be an integer in 0..=64"
        )))
    }
}

/// The compact set `X`; `[-1, 1]` when neither option is given.
pub fn resolve_set(set: Option<&str>, interval: Option<&[f64]>) -> Result<CompactSet, CliError> {
    if let Some(iv) = interval {
        let &[a, b] = iv else {
            return Err(CliError::Input("--interval takes two numbers".into()));
        };
        if !(a.is_finite() && b.is_finite()) || a > b {
            return Err(CliError::Input(format!(
                "--interval {a} {b} needs finite a ≤ b"
            )));
        }
        return Ok(CompactSet::interval(a, b)?);
    }
    let Some(spec) = set else {
        return Ok(CompactSet::interval(-1.0, 1.0)?);
    };
    if let Some(body) = spec.strip_prefix("geometric:") {
        let n = spec_numbers(spec, body, 2)?;
        return Ok(make_geometric_set(n[0], as_count(spec, n[1])?)?);
    }
    if let Some(body) = spec.strip_prefix("cantor:") {
        let n = spec_numbers(spec, body, 2)?;
        let depth = as_count(spec, n[0])?;
        if depth > 20 {
            return Err(CliError::Input(format!("cantor depth {depth} exceeds 20")));
        }
        return Ok(make_cantor(depth, n[1])?);
    }
    let path = Path::new(spec);
    CompactSet::parse(&read_file(path)?).map_err(|e| in_file(path, e))
}

/// Hull of `X`, or `[-1, 1]` when `X` is a single point.
pub fn hull(set: &CompactSet) -> (f64, f64) {
    if set.min() < set.max() {
        (set.min(), set.max())
    } else {
        (-1.0, 1.0)
    }
}

fn onto_hull(
    m: InterpolationMatrix,
    (lo, hi): (f64, f64),
) -> Result<InterpolationMatrix, CliError> {
    if (lo, hi) == (-1.0, 1.0) {
        return Ok(m);
    }
    Ok(m.affine_transform(0.5 * (hi - lo), 0.5 * (hi + lo))?)
}

/// An interpolation matrix with at least `depth` rows.
pub fn resolve_matrix(
    spec: &str,
    set: &CompactSet,
    depth: usize,
) -> Result<InterpolationMatrix, CliError> {
    let h = hull(set);
    match spec {
        "chebyshev" => onto_hull(InterpolationMatrix::chebyshev(depth)?, h),
        "equispaced" => Ok(InterpolationMatrix::equispaced(depth, h.0, h.1)?),
        "leja" => onto_hull(nested_matrix(&leja_chebyshev(depth)?, depth)?, h),
        _ => {
            if let Some(file) = spec.strip_prefix("nested:") {
                let path = Path::new(file);
                let seq = NodeSequence::parse(&read_file(path)?).map_err(|e| in_file(path, e))?;
                if seq.len() < depth {
                    return Err(CliError::Input(format!(
                        "{}: {} nodes, need {depth}",
                        path.display(),
                        seq.len()
                    )));
                }
                return nested_matrix(&seq, depth).map_err(|e| in_file(path, e));
            }
            let path = Path::new(spec);
            let m = InterpolationMatrix::parse(&read_file(path)?).map_err(|e| in_file(path, e))?;
            if let Some(v) = m.validate().first() {
                return Err(CliError::Input(format!(
                    "{}: row {} repeats a node at positions {} and {}",
                    path.display(),
                    v.row,
                    v.positions.0,
                    v.positions.1
                )));
            }
            if m.depth() < depth {
                return Err(CliError::Input(format!(
                    "{}: {} rows, need {depth}",
                    path.display(),
                    m.depth()
                )));
            }
            Ok(m)
        }
    }
}

/// Test functions by registry name, in the given order.
pub fn resolve_functions(
    names: Option<&[String]>,
    default: &[&str],
) -> Result<Vec<SampledFunction>, CliError> {
    let owned: Vec<String> = match names {
        Some(n) if !n.is_empty() => n.to_vec(),
        _ => default.iter().map(|s| s.to_string()).collect(),
    };
    owned
        .iter()
        .map(|n| SampledFunction::from_name(n.trim()).map_err(CliError::from))
        .collect()
}
