//! The five subcommands.

use std::path::Path;

use lebesgue_lab::faber::{newton_basis_candidate, parse_polynomial_lines, PartialSumsVerdict};
use lebesgue_lab::porosity::{discreteness_check, strongly_lower_porous_check};
use lebesgue_lab::{
    check_interpolating, isolation_criterion, lebesgue_constant, lebesgue_function,
    lebesgue_lemma_check, lebesgue_report, lebesgue_sup_oracle, lower_porosity_default,
    nested_matrix, operator_norm_probe, partial_sums_equal, projection_chain_check, recover_nodes,
    BasisCandidate, CompactSet, InterpolatingVerdict, NodeSequence, Recovery, SampledFunction,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::args::{Format, Options};
use crate::output::{self, finite, float};
use crate::specs::{hull, in_file, read_file, resolve_functions, resolve_matrix, resolve_set};
use crate::{CliError, GENERATOR, SCHEMA};

#[derive(Serialize)]
struct Header {
    schema: &'static str,
    command: &'static str,
    seed: u64,
    generator: &'static str,
}

impl Header {
    fn new(command: &'static str, o: &Options) -> Self {
        Header {
            schema: SCHEMA,
            command,
            seed: o.seed,
            generator: GENERATOR,
        }
    }
}

#[derive(Serialize)]
struct SetInfo {
    min: f64,
    max: f64,
    measure: f64,
}

impl SetInfo {
    fn of(set: &CompactSet) -> Self {
        let e = set.extent();
        SetInfo {
            min: e.min,
            max: e.max,
            measure: e.measure,
        }
    }
}

fn format(o: &Options, default: Format) -> Format {
    o.format.unwrap_or(default)
}

fn checked_nmax(o: &Options) -> Result<usize, CliError> {
    if o.nmax == 0 {
        return Err(CliError::Input("--nmax must be at least 1".into()));
    }
    if o.nmax > 10_000 {
        return Err(CliError::Input(format!("--nmax {} exceeds 10000", o.nmax)));
    }
    Ok(o.nmax)
}

fn set_of(o: &Options) -> Result<CompactSet, CliError> {
    resolve_set(o.set.as_deref(), o.interval.as_deref())
}

#[derive(Serialize)]
struct NamedValue {
    function: String,
    value: Option<f64>,
}

#[derive(Serialize)]
struct GrowthRow {
    n: usize,
    lambda_max: f64,
    argmax_x: f64,
    lambda_at_nodes_max: f64,
    uniform_errors: Vec<NamedValue>,
    ratio_log: f64,
}

#[derive(Serialize)]
struct GrowthDoc {
    #[serde(flatten)]
    header: Header,
    matrix: String,
    set: SetInfo,
    functions: Vec<String>,
    rows: Vec<GrowthRow>,
}

pub fn growth(o: &Options) -> Result<Vec<u8>, CliError> {
    let set = set_of(o)?;
    let n_max = checked_nmax(o)?;
    let matrix = resolve_matrix(&o.matrix, &set, n_max + 1)?;
    let fs = resolve_functions(o.functions.as_deref(), &["runge"])?;
    let report = lebesgue_report(&matrix, &set, &fs, n_max)?;
    match format(o, Format::Csv) {
        Format::Csv => output::csv(
            &["n", "lambda_max", "argmax_x", "uniform_error", "ratio_log"],
            report.rows.iter().map(|r| {
                vec![
                    r.n.to_string(),
                    float(r.lambda_max),
                    float(r.argmax_x),
                    float(r.uniform_errors[0]),
                    float(r.ratio_log),
                ]
            }),
        ),
        Format::Json => output::json(&GrowthDoc {
            header: Header::new("growth", o),
            matrix: o.matrix.clone(),
            set: SetInfo::of(&set),
            rows: report
                .rows
                .iter()
                .map(|r| GrowthRow {
                    n: r.n,
                    lambda_max: r.lambda_max,
                    argmax_x: r.argmax_x,
                    lambda_at_nodes_max: r.lambda_at_nodes_max,
                    uniform_errors: report
                        .functions
                        .iter()
                        .zip(&r.uniform_errors)
                        .map(|(f, &v)| NamedValue {
                            function: f.clone(),
                            value: finite(v),
                        })
                        .collect(),
                    ratio_log: r.ratio_log,
                })
                .collect(),
            functions: report.functions,
        }),
    }
}

#[derive(Serialize)]
struct ConvergeRow {
    n: usize,
    function: String,
    lambda_max: f64,
    uniform_error: Option<f64>,
    best_approx_bound: Option<f64>,
    lemma_slack: Option<f64>,
    pass: bool,
}

#[derive(Serialize)]
struct ConvergeDoc {
    #[serde(flatten)]
    header: Header,
    matrix: String,
    set: SetInfo,
    all_pass: bool,
    rows: Vec<ConvergeRow>,
}

pub fn converge(o: &Options) -> Result<Vec<u8>, CliError> {
    let set = set_of(o)?;
    let n_max = checked_nmax(o)?;
    let matrix = resolve_matrix(&o.matrix, &set, n_max + 1)?;
    let mut fs = resolve_functions(o.functions.as_deref(), &["abs", "exp", "runge"])?;
    fs.sort_by_key(|f| f.to_string());
    let mut rows = Vec::with_capacity(n_max * fs.len());
    for n in 1..=n_max {
        for f in &fs {
            let c = lebesgue_lemma_check(f, &matrix, n, &set)?;
            rows.push(ConvergeRow {
                n,
                function: f.to_string(),
                lambda_max: c.lebesgue_constant,
                uniform_error: finite(c.uniform_error),
                best_approx_bound: finite(c.best_approx_bound),
                lemma_slack: finite(c.slack),
                pass: c.pass,
            });
        }
    }
    match format(o, Format::Csv) {
        Format::Csv => output::csv(
            &[
                "n",
                "function",
                "lambda_max",
                "uniform_error",
                "best_approx_bound",
                "lemma_slack",
            ],
            rows.iter().map(|r| {
                let opt = |v: Option<f64>| float(v.unwrap_or(f64::NAN));
                vec![
                    r.n.to_string(),
                    r.function.clone(),
                    float(r.lambda_max),
                    opt(r.uniform_error),
                    opt(r.best_approx_bound),
                    opt(r.lemma_slack),
                ]
            }),
        ),
        Format::Json => output::json(&ConvergeDoc {
            header: Header::new("converge", o),
            matrix: o.matrix.clone(),
            set: SetInfo::of(&set),
            all_pass: rows.iter().all(|r| r.pass),
            rows,
        }),
    }
}

#[derive(Serialize)]
struct InterpolatingJson {
    pass: bool,
    /// Polynomials checked; fewer than the basis length with recovered nodes.
    checked: usize,
    witness: Option<ZeroWitness>,
}

#[derive(Serialize)]
struct ZeroWitness {
    k: usize,
    j: usize,
    value: Option<f64>,
}

#[derive(Serialize)]
struct RecoveryFailure {
    k: usize,
    reason: String,
    residual: Option<f64>,
}

#[derive(Serialize)]
struct RecoveryJson {
    recovered: bool,
    nodes: Option<Vec<f64>>,
    max_deviation: Option<f64>,
    failure: Option<RecoveryFailure>,
}

#[derive(Serialize)]
struct SumMismatch {
    n: usize,
    function: String,
}

#[derive(Serialize)]
struct PartialSumsJson {
    equal: bool,
    lambdas: Vec<Option<f64>>,
    coefficient_mismatch: Option<usize>,
    sum_mismatch: Option<SumMismatch>,
}

#[derive(Serialize)]
struct ChainWitnessJson {
    n: usize,
    function: String,
    x: Option<f64>,
    deviation: Option<f64>,
}

#[derive(Serialize)]
struct ConditionJson {
    pass: bool,
    witness: Option<ChainWitnessJson>,
}

#[derive(Serialize)]
struct ChainJson {
    n_max: usize,
    chain: ConditionJson,
    commutation: ConditionJson,
    degree: ConditionJson,
}

#[derive(Serialize)]
struct FaberDoc {
    #[serde(flatten)]
    header: Header,
    basis_length: usize,
    candidate: bool,
    candidate_error: Option<String>,
    nodes_source: Option<&'static str>,
    interpolating: Option<InterpolatingJson>,
    recovery: Option<RecoveryJson>,
    partial_sums: Option<PartialSumsJson>,
    projection_chain: Option<ChainJson>,
    verdict: &'static str,
}

const VERDICT_FABER: &str = "interpolating Faber basis";
const VERDICT_NOT_INTERPOLATING: &str = "not interpolating";
const VERDICT_NOT_CANDIDATE: &str = "not a Faber basis candidate";
const VERDICT_UNDETERMINED: &str = "undetermined";

fn condition_json(
    c: &lebesgue_lab::faber::ConditionResult,
    fs: &[SampledFunction],
) -> ConditionJson {
    ConditionJson {
        pass: c.pass,
        witness: c.witness.as_ref().map(|w| ChainWitnessJson {
            n: w.n,
            function: fs
                .get(w.function)
                .map_or_else(|| format!("indicator#{}", w.function), |f| f.to_string()),
            x: finite(w.x),
            deviation: finite(w.deviation),
        }),
    }
}

fn partial_sums_json(v: &PartialSumsVerdict, fs: &[SampledFunction]) -> PartialSumsJson {
    PartialSumsJson {
        equal: v.equal(),
        lambdas: v.lambdas.iter().map(|&l| finite(l)).collect(),
        coefficient_mismatch: v.coefficient_mismatch,
        sum_mismatch: v.sum_mismatch.map(|(n, fi)| SumMismatch {
            n,
            function: fs[fi].to_string(),
        }),
    }
}

pub fn faber_check(o: &Options) -> Result<Vec<u8>, CliError> {
    if o.format == Some(Format::Csv) {
        return Err(CliError::Input("faber-check writes JSON only".into()));
    }
    let basis_path = o
        .basis
        .as_deref()
        .ok_or_else(|| CliError::Input("faber-check needs --basis FILE".into()))?;
    let lines =
        parse_polynomial_lines(&read_file(basis_path)?).map_err(|e| in_file(basis_path, e))?;
    let file_nodes = o
        .nodes
        .as_deref()
        .map(|p: &Path| NodeSequence::parse(&read_file(p)?).map_err(|e| in_file(p, e)))
        .transpose()?;
    let fs = resolve_functions(o.functions.as_deref(), &["abs", "runge", "exp"])?;
    let header = Header::new("faber-check", o);
    let basis_length = lines.len();

    let basis = match BasisCandidate::new(lines.into_iter().map(|(_, p)| p).collect()) {
        Ok(b) => b,
        Err(e) => {
            return output::json(&FaberDoc {
                header,
                basis_length,
                candidate: false,
                candidate_error: Some(e.to_string()),
                nodes_source: None,
                interpolating: None,
                recovery: None,
                partial_sums: None,
                projection_chain: None,
                verdict: VERDICT_NOT_CANDIDATE,
            })
        }
    };

    let recovery = recover_nodes(&basis, None);
    let recovery_json = match &recovery {
        Recovery::Recovered(seq) => RecoveryJson {
            recovered: true,
            nodes: Some(seq.points().to_vec()),
            max_deviation: file_nodes.as_ref().map(|f| {
                seq.points()
                    .iter()
                    .zip(f.points())
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max)
            }),
            failure: None,
        },
        Recovery::Failed {
            k,
            reason,
            residual,
        } => RecoveryJson {
            recovered: false,
            nodes: None,
            max_deviation: None,
            failure: Some(RecoveryFailure {
                k: *k,
                reason: reason.clone(),
                residual: finite(*residual),
            }),
        },
    };

    let (nodes, nodes_source): (Option<Vec<f64>>, Option<&'static str>) =
        match (&file_nodes, &recovery) {
            (Some(seq), _) => (Some(seq.points().to_vec()), Some("file")),
            (None, Recovery::Recovered(seq)) => (Some(seq.points().to_vec()), Some("recovered")),
            (None, Recovery::Failed { .. }) => (None, None),
        };

    let mut interpolating = None;
    let mut partial_sums = None;
    let mut projection_chain = None;
    if let Some(nodes) = nodes.as_deref().filter(|n| !n.is_empty()) {
        let checked = basis.len().min(nodes.len());
        let head = BasisCandidate::new(basis.polys()[..checked].to_vec())?;
        let verdict = check_interpolating(&head, nodes)?;
        interpolating = Some(InterpolatingJson {
            pass: verdict.passed(),
            checked,
            witness: match verdict {
                InterpolatingVerdict::Pass => None,
                InterpolatingVerdict::Fail { k, j, value } => Some(ZeroWitness {
                    k,
                    j,
                    value: finite(value),
                }),
            },
        });
        if verdict.passed() {
            let newton = newton_basis_candidate(nodes, basis.len())?;
            partial_sums = Some(partial_sums_json(
                &partial_sums_equal(&basis, &newton, nodes, &fs)?,
                &fs,
            ));
        }
        let depth = nodes.len().min(basis.len());
        if depth >= 2 {
            let seq = NodeSequence::new(nodes.to_vec())?;
            let matrix = nested_matrix(&seq, depth)?;
            let report = projection_chain_check(&matrix, &fs, depth - 1)?;
            projection_chain = Some(ChainJson {
                n_max: report.n_max,
                chain: condition_json(&report.chain, &fs),
                commutation: condition_json(&report.commutation, &fs),
                degree: condition_json(&report.degree, &fs),
            });
        }
    }

    let verdict = match (&interpolating, &recovery) {
        (Some(i), _) if i.pass => VERDICT_FABER,
        (Some(_), _) => VERDICT_NOT_INTERPOLATING,
        (None, Recovery::Failed { reason, .. }) if reason.starts_with("unsupported") => {
            VERDICT_UNDETERMINED
        }
        (None, _) => VERDICT_NOT_INTERPOLATING,
    };
    output::json(&FaberDoc {
        header,
        basis_length,
        candidate: true,
        candidate_error: None,
        nodes_source,
        interpolating,
        recovery: Some(recovery_json),
        partial_sums,
        projection_chain,
        verdict,
    })
}

#[derive(Serialize)]
struct PorosityPoint {
    x0: f64,
    p_plus: Option<f64>,
    p_minus: Option<f64>,
    p: Option<f64>,
    p_star: Option<f64>,
    right_isolated: Option<bool>,
    left_isolated: Option<bool>,
    p_star_exceeds_half: Option<bool>,
    converged: Option<bool>,
    r_range_plus: Option<[f64; 2]>,
    r_range_minus: Option<[f64; 2]>,
    error: Option<String>,
}

#[derive(Serialize)]
struct PorositySet {
    min: f64,
    max: f64,
    measure: f64,
    intervals: usize,
}

#[derive(Serialize)]
struct StrongJson {
    verdict: bool,
    witness_x: Option<f64>,
    witness_p: Option<f64>,
    points_checked: usize,
}

#[derive(Serialize)]
struct DiscreteJson {
    all_points_isolated: bool,
    finite: bool,
}

#[derive(Serialize)]
struct PorosityDoc {
    #[serde(flatten)]
    header: Header,
    set: PorositySet,
    strongly_lower_porous: StrongJson,
    discreteness: DiscreteJson,
    points: Vec<PorosityPoint>,
}

fn porosity_point(set: &CompactSet, x0: f64) -> PorosityPoint {
    let mut out = PorosityPoint {
        x0,
        p_plus: None,
        p_minus: None,
        p: None,
        p_star: None,
        right_isolated: None,
        left_isolated: None,
        p_star_exceeds_half: None,
        converged: None,
        r_range_plus: None,
        r_range_minus: None,
        error: None,
    };
    if !set.contains(x0) {
        out.error = Some(format!("{x0} is not a point of X"));
        return out;
    }
    let estimate =
        lower_porosity_default(set, x0).and_then(|e| Ok((e, isolation_criterion(set, x0)?)));
    match estimate {
        Ok((e, iso)) => {
            out.p_plus = Some(e.p_plus);
            out.p_minus = Some(e.p_minus);
            out.p = Some(e.p);
            out.p_star = Some(e.p_star);
            out.right_isolated = Some(iso.right_isolated);
            out.left_isolated = Some(iso.left_isolated);
            out.p_star_exceeds_half = Some(iso.p_star_exceeds_half);
            out.converged = Some(e.converged);
            out.r_range_plus = Some([e.right.r_low, e.right.r_high]);
            out.r_range_minus = Some([e.left.r_low, e.left.r_high]);
        }
        Err(err) => out.error = Some(err.to_string()),
    }
    out
}

pub fn porosity(o: &Options) -> Result<Vec<u8>, CliError> {
    let set = set_of(o)?;
    let points = match &o.points {
        Some(p) if !p.is_empty() => {
            if let Some(bad) = p.iter().find(|x| !x.is_finite()) {
                return Err(CliError::Input(format!(
                    "--points entry {bad} is not finite"
                )));
            }
            p.clone()
        }
        _ => set.sample_points(),
    };
    let rows: Vec<PorosityPoint> = points.iter().map(|&x| porosity_point(&set, x)).collect();
    let e = set.extent();
    match format(o, Format::Csv) {
        Format::Csv => output::csv(
            &[
                "x0",
                "p_plus",
                "p_minus",
                "p",
                "p_star",
                "right_isolated",
                "left_isolated",
                "p_star_exceeds_half",
                "converged",
                "error",
                "set_min",
                "set_max",
                "set_measure",
            ],
            rows.iter().map(|r| {
                let f = |v: Option<f64>| v.map(float).unwrap_or_default();
                let b = |v: Option<bool>| v.map(|b| b.to_string()).unwrap_or_default();
                vec![
                    float(r.x0),
                    f(r.p_plus),
                    f(r.p_minus),
                    f(r.p),
                    f(r.p_star),
                    b(r.right_isolated),
                    b(r.left_isolated),
                    b(r.p_star_exceeds_half),
                    b(r.converged),
                    r.error.clone().unwrap_or_default(),
                    float(e.min),
                    float(e.max),
                    float(e.measure),
                ]
            }),
        ),
        Format::Json => {
            let strong = strongly_lower_porous_check(&set)?;
            let disc = discreteness_check(&set)?;
            output::json(&PorosityDoc {
                header: Header::new("porosity", o),
                set: PorositySet {
                    min: e.min,
                    max: e.max,
                    measure: e.measure,
                    intervals: set.intervals().len(),
                },
                strongly_lower_porous: StrongJson {
                    verdict: strong.strongly_porous,
                    witness_x: strong.witness.map(|w| w.0),
                    witness_p: strong.witness.map(|w| w.1),
                    points_checked: strong.points_checked,
                },
                discreteness: DiscreteJson {
                    all_points_isolated: disc.all_points_isolated,
                    finite: disc.finite,
                },
                points: rows,
            })
        }
    }
}

/// Sign patterns drawn per row for the operator-norm probe.
const PROBE_PATTERNS: usize = 16;
/// Evaluation points per random row.
const ORACLE_POINTS: usize = 10;
/// Largest random row.
const ORACLE_MAX_NODES: usize = 9;

#[derive(Serialize)]
struct OracleRow {
    row: usize,
    n: usize,
    x: f64,
    lambda: f64,
    sup_oracle: f64,
    abs_diff: f64,
    norm_probe: f64,
    lambda_max: f64,
    pass: bool,
}

#[derive(Serialize)]
struct OracleDoc {
    #[serde(flatten)]
    header: Header,
    set: SetInfo,
    all_pass: bool,
    rows: Vec<OracleRow>,
}

fn random_row(rng: &mut ChaCha8Rng, (lo, hi): (f64, f64)) -> Vec<f64> {
    let m = rng.gen_range(1..=ORACLE_MAX_NODES);
    let mut nodes: Vec<f64> = Vec::with_capacity(m);
    while nodes.len() < m {
        let x = rng.gen_range(lo..=hi);
        if nodes.iter().all(|&y| (x - y).abs() > 1e-9 * (hi - lo)) {
            nodes.push(x);
        }
    }
    nodes
}

pub fn oracle(o: &Options) -> Result<Vec<u8>, CliError> {
    if o.trials == 0 {
        return Err(CliError::Input("--trials must be at least 1".into()));
    }
    let set = set_of(o)?;
    let h = hull(&set);
    let mut rng = ChaCha8Rng::seed_from_u64(o.seed);
    let mut rows = Vec::with_capacity(o.trials * ORACLE_POINTS);
    for row in 0..o.trials {
        let nodes = random_row(&mut rng, h);
        let xs: Vec<f64> = (0..ORACLE_POINTS)
            .map(|_| rng.gen_range(h.0..=h.1))
            .collect();
        let lambda_max = lebesgue_constant(&nodes, &set)?.value;
        let norm_probe = operator_norm_probe(&nodes, &set, PROBE_PATTERNS, &mut rng)?;
        for x in xs {
            let lambda = lebesgue_function(&nodes, x)?;
            let (sup_oracle, _) = lebesgue_sup_oracle(&nodes, x)?;
            let abs_diff = (lambda - sup_oracle).abs();
            let pass = abs_diff <= 1e-10 * sup_oracle.max(1.0)
                && norm_probe <= lambda_max + 1e-8 * lambda_max.max(1.0);
            rows.push(OracleRow {
                row,
                n: nodes.len() - 1,
                x,
                lambda,
                sup_oracle,
                abs_diff,
                norm_probe,
                lambda_max,
                pass,
            });
        }
    }
    match format(o, Format::Csv) {
        Format::Csv => output::csv(
            &[
                "row",
                "n",
                "x",
                "lambda",
                "sup_oracle",
                "abs_diff",
                "norm_probe",
                "lambda_max",
                "pass",
                "seed",
                "generator",
            ],
            rows.iter().map(|r| {
                vec![
                    r.row.to_string(),
                    r.n.to_string(),
                    float(r.x),
                    float(r.lambda),
                    float(r.sup_oracle),
                    float(r.abs_diff),
                    float(r.norm_probe),
                    float(r.lambda_max),
                    r.pass.to_string(),
                    o.seed.to_string(),
                    GENERATOR.to_string(),
                ]
            }),
        ),
        Format::Json => output::json(&OracleDoc {
            header: Header::new("oracle", o),
            set: SetInfo::of(&set),
            all_pass: rows.iter().all(|r| r.pass),
            rows,
        }),
    }
}
