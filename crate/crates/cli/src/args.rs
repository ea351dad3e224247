//! Command-line surface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "lebesgue-lab",
    version,
    about = "Lebesgue constants, Newton/Faber bases and porosity experiments",
    long_about = "Runs reproducible desk-scale experiments on Lagrange interpolation.\n\n\
        Exit codes: 0 success (negative verdicts included), 2 input error, \
        3 numerical failure."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lebesgue constant growth Λₙ for n = 1..nmax.
    #[command(after_help = GROWTH_FIELDS)]
    Growth(Options),
    /// Uniform errors and the Lebesgue-lemma slack per (n, function).
    #[command(after_help = CONVERGE_FIELDS)]
    Converge(Options),
    /// Verdicts on a candidate interpolating basis (JSON only).
    #[command(name = "faber-check", after_help = FABER_FIELDS)]
    FaberCheck(Options),
    /// Lower porosity and isolation at points of a compact set.
    #[command(after_help = POROSITY_FIELDS)]
    Porosity(Options),
    /// Lebesgue function against brute-force sign enumeration on random rows.
    #[command(after_help = ORACLE_FIELDS)]
    Oracle(Options),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    /// Interpolation matrix: chebyshev, equispaced, leja, nested:NODES_FILE or
    /// a matrix file (line n holds the n nodes of row n). Built-in schemes are
    /// mapped affinely onto the hull of X.
    #[arg(long, value_name = "SPEC", default_value = "chebyshev")]
    pub matrix: String,

    /// Compact set X: a set file ("a b" per line, "a a" for a point) or
    /// geometric:RATIO:DEPTH or cantor:DEPTH:FRACTION. Default [-1, 1].
    #[arg(long, value_name = "FILE|SPEC", conflicts_with = "interval")]
    pub set: Option<String>,

    /// X = [A, B].
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true)]
    pub interval: Option<Vec<f64>>,

    /// Largest polynomial degree n (row n + 1 of the matrix is used).
    #[arg(long, value_name = "N", default_value_t = 20)]
    pub nmax: usize,

    /// Comma-separated test functions: abs, runge, exp, step, step:W,
    /// poly:C0:C1:..., node:CENTER:HALF_WIDTH.
    #[arg(long, value_name = "LIST", value_delimiter = ',')]
    pub functions: Option<Vec<String>>,

    /// Basis file: one polynomial per line, coefficients constant term first.
    #[arg(long, value_name = "FILE")]
    pub basis: Option<PathBuf>,

    /// Nodes file: one decimal per line.
    #[arg(long, value_name = "FILE")]
    pub nodes: Option<PathBuf>,

    /// Output format (faber-check emits JSON only).
    #[arg(long, value_enum)]
    pub format: Option<Format>,

    /// Output file; standard output when absent.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Seed of the ChaCha8 generator used for random rows and sign patterns.
    #[arg(long, value_name = "S", default_value_t = 0)]
    pub seed: u64,

    /// Comma-separated query points for porosity; default: every isolated
    /// point and interval endpoint of X.
    #[arg(
        long,
        value_name = "LIST",
        value_delimiter = ',',
        allow_negative_numbers = true
    )]
    pub points: Option<Vec<f64>>,

    /// Number of random rows for the oracle command.
    #[arg(long, value_name = "T", default_value_t = 100)]
    pub trials: usize,
}

const GROWTH_FIELDS: &str = "\
CSV columns (header: n,lambda_max,argmax_x,uniform_error,ratio_log):
  n              polynomial degree; row n + 1 of the matrix
  lambda_max     Lebesgue constant Λₙ = sup over X of Σ|ℓₖ|
  argmax_x       smallest point of X attaining Λₙ
  uniform_error  sup over X of |f − Lₙf| for the first --functions entry (default runge)
  ratio_log      Λₙ / ln(n + 1)
JSON: schema, command, seed, generator, matrix, set {min, max, measure},
  functions, rows [{n, lambda_max, argmax_x, lambda_at_nodes_max,
  uniform_errors [{function, value}], ratio_log}].
  lambda_at_nodes_max is the largest λₙ over the row's own nodes (1).
Floats in CSV carry 17 significant digits.";

const CONVERGE_FIELDS: &str = "\
CSV columns (header: n,function,lambda_max,uniform_error,best_approx_bound,lemma_slack),
rows ordered by n, then function name:
  n                  polynomial degree
  function           registry name
  lambda_max         Lebesgue constant Λₙ over X
  uniform_error      sup over X of |f − Lₙf|
  best_approx_bound  upper bound Êₙ ≥ Eₙ(f) from a centred Chebyshev interpolant
  lemma_slack        (1 + Λₙ)Êₙ − uniform_error; nonnegative up to 1e-8
JSON: schema, command, seed, generator, matrix, set, rows [{n, function,
  lambda_max, uniform_error, best_approx_bound, lemma_slack, pass}], all_pass.
  Default functions: abs,exp,runge.";

const FABER_FIELDS: &str = "\
Needs --basis; --nodes is optional (recovered nodes are used when absent).
JSON fields:
  schema, command, seed, generator
  basis_length        number of polynomials N
  candidate           deg pₖ = k − 1 for every k
  candidate_error     reason when candidate is false, else null
  nodes_source        \"file\", \"recovered\" or null
  interpolating       {pass, checked, witness {k, j, value} | null}: pₖ(xⱼ) = 0 for j < k,
                      pₖ(xₖ) ≠ 0; checked = polynomials tested (N − 1 with recovered nodes)
  recovery            {recovered, nodes, max_deviation, failure {k, reason, residual}}
                      nodes xₖ from the roots of pₖ₊₁; max_deviation against --nodes
  partial_sums        {equal, lambdas, coefficient_mismatch, sum_mismatch {n, function}}
                      comparison with the Newton basis over the same nodes; pₖ = λₖπₖ
  projection_chain    {n_max, chain, commutation, degree} on the nested matrix of the
                      nodes, each {pass, witness {n, function, x, deviation}}
  verdict             \"interpolating Faber basis\", \"not interpolating\",
                      \"not a Faber basis candidate\" or \"undetermined\" (no nodes file
                      and a basis above degree 12, beyond root recovery)
Default functions: abs,runge,exp. Verdicts exit with code 0.";

const POROSITY_FIELDS: &str = "\
CSV columns, one row per query point:
  x0                   query point
  p_plus, p_minus      right and left lower porosity estimates
  p, p_star            max and min of the two
  right_isolated       no point of X in (x0, x0 + ε] for some ε
  left_isolated        no point of X in [x0 − ε, x0) for some ε
  p_star_exceeds_half  right_isolated and left_isolated
  converged            running minimum stable within 0.02 over the last two grid steps
  error                message when x0 is not in X (numeric fields empty), else empty
  set_min, set_max     min X and max X
  set_measure          one-dimensional measure of X
JSON: schema, command, seed, generator, set {min, max, measure, intervals},
  strongly_lower_porous {verdict, witness_x, witness_p, points_checked},
  discreteness {all_points_isolated, finite}, points [per-point fields above,
  plus r_range_plus and r_range_minus].";

const ORACLE_FIELDS: &str = "\
Draws --trials random rows (1 to 9 nodes in the hull of X) and 10 points each from
ChaCha8Rng (rand_chacha 0.3) seeded by --seed via seed_from_u64.
CSV columns:
  row         row index
  n           degree (nodes − 1)
  x           evaluation point
  lambda      Lebesgue function Σ|ℓₖ(x)|
  sup_oracle  max over sign vectors s of |Σ sₖℓₖ(x)|, product formula
  abs_diff    |lambda − sup_oracle|
  norm_probe  largest sup-norm over X of interpolants of 16 random ±1 data
  lambda_max  Lebesgue constant of the row over X
  pass        abs_diff ≤ 1e-10·max(1, sup_oracle) and norm_probe ≤ lambda_max + 1e-8
  seed        --seed
  generator   generator identity
JSON: schema, command, seed, generator, rows [same fields], all_pass.";
