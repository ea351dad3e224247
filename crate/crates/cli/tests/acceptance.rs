//! Acceptance criteria 1-13, one PASS/FAIL line each. Exits non-zero when
//! any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use lebesgue_lab::faber::{indicator_witness, lagrange_basis_candidate, newton_basis_candidate};
use lebesgue_lab::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn within(start: Instant, limit: Duration) -> (bool, String) {
    let t = start.elapsed();
    (
        t < limit,
        format!("{:.2}s of {}s", t.as_secs_f64(), limit.as_secs()),
    )
}

/// Points of `[-1, 1]` in random order with pairwise distance at least `gap`.
fn separated(rng: &mut ChaCha8Rng, len: usize, gap: f64) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::with_capacity(len);
    while out.len() < len {
        let x = rng.gen_range(-1.0..=1.0);
        if out.iter().all(|&y| (x - y).abs() >= gap) {
            out.push(x);
        }
    }
    out
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let m = rng.gen_range(1..=9);
        let row = separated(&mut rng, m, 1e-9);
        for _ in 0..10 {
            let x = rng.gen_range(-1.0..=1.0);
            let lambda = lebesgue_function(&row, x).unwrap();
            let (oracle, _) = lebesgue_sup_oracle(&row, x).unwrap();
            worst = worst.max((lambda - oracle).abs() / oracle.max(1.0));
        }
    }
    let (fast, t) = within(start, Duration::from_secs(10));
    outcome(
        worst <= 1e-10 && fast,
        format!("1000 points, max relative deviation {worst:.2e}, {t}"),
    )
}

fn builtin_matrices(depth: usize) -> Vec<(&'static str, InterpolationMatrix)> {
    vec![
        ("chebyshev", InterpolationMatrix::chebyshev(depth).unwrap()),
        (
            "equispaced",
            InterpolationMatrix::equispaced(depth, -1.0, 1.0).unwrap(),
        ),
        (
            "leja",
            nested_matrix(&leja_chebyshev(depth).unwrap(), depth).unwrap(),
        ),
    ]
}

fn criterion_2() -> Outcome {
    let mut worst = 0.0f64;
    let mut checked = 0;
    for (_, m) in builtin_matrices(41) {
        for n in 0..=40 {
            let row = m.row(n + 1).unwrap();
            for &x in row {
                worst = worst.max((lebesgue_function(row, x).unwrap() - 1.0).abs());
                checked += 1;
            }
        }
    }
    outcome(
        worst <= 1e-12,
        format!("{checked} nodes of 3 matrices, max |λ − 1| = {worst:.1e}"),
    )
}

fn criterion_3() -> Outcome {
    let x = CompactSet::interval(-1.0, 1.0).unwrap();
    let r = lebesgue_constant(&[-1.0, 0.0, 1.0], &x).unwrap();
    let pass = (r.value - 1.25).abs() <= 1e-8 && (r.argmax.abs() - 0.5).abs() <= 1e-4;
    outcome(
        pass,
        format!("Λ = {:.12}, argmax = {:.8}", r.value, r.argmax),
    )
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let x = CompactSet::interval(-1.0, 1.0).unwrap();
    let m = InterpolationMatrix::chebyshev(101).unwrap();
    let mut bound_ok = true;
    let mut monotone_ok = true;
    let mut worst_margin = f64::INFINITY;
    let mut prev_ratio: Option<f64> = None;
    for n in 2..=100 {
        let lambda = lebesgue_constant(m.row(n + 1).unwrap(), &x).unwrap().value;
        let log = ((n + 1) as f64).ln();
        let margin = 2.0 / std::f64::consts::PI * log + 1.1 - lambda;
        worst_margin = worst_margin.min(margin);
        bound_ok &= margin >= 0.0;
        let ratio = lambda / log;
        if n > 10 {
            if let Some(p) = prev_ratio {
                monotone_ok &= ratio <= p + 1e-3;
            }
        }
        prev_ratio = Some(ratio);
    }
    let (fast, t) = within(start, Duration::from_secs(60));
    outcome(
        bound_ok && monotone_ok && fast,
        format!("smallest bound margin {worst_margin:.4}, ratio decreasing: {monotone_ok}, {t}"),
    )
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let x = CompactSet::interval(-1.0, 1.0).unwrap();
    let row = equispaced_row(31, -1.0, 1.0).unwrap();
    let ratio = lebesgue_constant(&row, &x).unwrap().value / 31f64.ln();
    let (fast, t) = within(start, Duration::from_secs(10));
    outcome(
        ratio > 100.0 && fast,
        format!("Λ₃₀ / ln 31 = {ratio:.4e}, {t}"),
    )
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let m = rng.gen_range(1..=9);
        let row = separated(&mut rng, m, 1e-3);
        let x = rng.gen_range(-1.0..=1.0);
        let alpha = rng.gen_range(0.2..3.0) * if rng.gen::<bool>() { 1.0 } else { -1.0 };
        let beta = rng.gen_range(-2.0..2.0);
        let moved: Vec<f64> = row.iter().map(|&t| alpha * t + beta).collect();
        let a = lebesgue_function(&row, x).unwrap();
        let b = lebesgue_function(&moved, alpha * x + beta).unwrap();
        worst = worst.max((a - b).abs() / a.max(1.0));
    }
    outcome(
        worst <= 1e-12,
        format!("50 cases, max relative deviation {worst:.2e}"),
    )
}

fn criterion_7() -> Outcome {
    let nodes = leja_chebyshev(13).unwrap();
    let mut worst = 0.0f64;
    for (f, norm) in [
        (SampledFunction::Abs, 1.0),
        (SampledFunction::Runge, 1.0),
        (SampledFunction::Exp, std::f64::consts::E),
    ] {
        for n in 0..=12 {
            let d = newton_lagrange_equivalence(&f, nodes.points(), n).unwrap();
            worst = worst.max(d / (1.0 + norm));
        }
    }
    outcome(
        worst <= 1e-8,
        format!("max deviation / (1 + ‖f‖) = {worst:.2e}"),
    )
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let runge = SampledFunction::Runge;
    let square = SampledFunction::from_name("poly:0:0:1").unwrap();
    let mut worst = 0.0f64;
    let mut exp_worst = 0.0f64;
    for _ in 0..200 {
        let k = rng.gen_range(1..=12);
        let nodes = separated(&mut rng, k, 0.05);
        let mut cases = vec![(&runge, k)];
        if k <= 3 {
            cases.push((&square, k));
        }
        for (f, k) in cases {
            let a = divided_differences(f, &nodes[..k], DdMethod::Explicit).unwrap();
            let b = divided_differences(f, &nodes[..k], DdMethod::Recursive).unwrap();
            let (a, b) = (a.entry(k).unwrap(), b.entry(k).unwrap());
            worst = worst.max((a - b).abs() / a.abs().max(b.abs()));
        }
        // for exp the k-th difference sits below the rounding floor of the
        // explicit sum, so agreement is reported against the term magnitudes
        let a = divided_differences(&SampledFunction::Exp, &nodes, DdMethod::Explicit).unwrap();
        let b = divided_differences(&SampledFunction::Exp, &nodes, DdMethod::Recursive).unwrap();
        let terms: f64 = (0..k)
            .map(|j| {
                let d: f64 = (0..k)
                    .filter(|&i| i != j)
                    .map(|i| nodes[j] - nodes[i])
                    .product();
                (nodes[j].exp() / d).abs()
            })
            .sum();
        exp_worst = exp_worst.max((a.entry(k).unwrap() - b.entry(k).unwrap()).abs() / terms);
    }
    let hand = divided_differences(&square, &[1.0, 2.0], DdMethod::Recursive)
        .unwrap()
        .entry(2)
        .unwrap();
    outcome(
        worst <= 1e-8 && (hand - 3.0).abs() <= 1e-12,
        format!(
            "runge k ≤ 12 and x² k ≤ 3: max relative deviation {worst:.2e}; x² on (1, 2) gives {hand}; \
             exp deviation / term magnitude {exp_worst:.1e}"
        ),
    )
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut all_pass = true;
    let mut worst = 0.0f64;
    let mut invariant = true;
    for _ in 0..100 {
        let len = rng.gen_range(1..=10);
        let nodes = separated(&mut rng, len + 1, 0.05);
        let newton = newton_basis_candidate(&nodes, len + 1).unwrap();
        let lagrange = lagrange_basis_candidate(&nodes, len + 1).unwrap();
        all_pass &= check_interpolating(&newton, &nodes).unwrap().passed();
        all_pass &= check_interpolating(&lagrange, &nodes).unwrap().passed();
        match recover_nodes(&newton, None) {
            Recovery::Recovered(seq) => {
                for (a, b) in seq.points().iter().zip(&nodes) {
                    worst = worst.max((a - b).abs());
                }
            }
            Recovery::Failed { .. } => worst = f64::INFINITY,
        }
        let lambdas: Vec<f64> = (0..=len)
            .map(|_| rng.gen_range(0.1..10.0) * if rng.gen::<bool>() { 1.0 } else { -1.0 })
            .collect();
        let scaled = rescale_basis(&newton, &lambdas).unwrap();
        invariant &= check_interpolating(&scaled, &nodes).unwrap().passed();
        invariant &= matches!(recover_nodes(&scaled, None), Recovery::Recovered(_));
        // a non-interpolating order keeps failing at the same place
        let reversed: Vec<f64> = nodes.iter().rev().copied().collect();
        invariant &= failure_position(check_interpolating(&newton, &reversed).unwrap())
            == failure_position(check_interpolating(&scaled, &reversed).unwrap());
    }
    outcome(
        all_pass && worst <= 1e-8 && invariant,
        format!(
            "100 sequences: bases interpolating {all_pass}, recovery error {worst:.1e}, rescaling invariant {invariant}"
        ),
    )
}

/// `(k, j)` of a failed verdict; the witness value rescales with the basis.
fn failure_position(v: InterpolatingVerdict) -> Option<(usize, usize)> {
    match v {
        InterpolatingVerdict::Pass => None,
        InterpolatingVerdict::Fail { k, j, .. } => Some((k, j)),
    }
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let fs = ["abs", "runge", "exp", "step", "poly:1:-2:0:3"]
        .map(|n| SampledFunction::from_name(n).unwrap());
    let mut nested_ok = true;
    let mut cases = 0;
    let mut sequences = vec![leja_chebyshev(15).unwrap()];
    for _ in 0..10 {
        let len = rng.gen_range(3..=15);
        sequences.push(NodeSequence::new(separated(&mut rng, len, 0.02)).unwrap());
    }
    for seq in &sequences {
        let depth = seq.len();
        let m = nested_matrix(seq, depth).unwrap();
        let r = projection_chain_check(&m, &fs, depth - 1).unwrap();
        nested_ok &= r.all_pass();
        cases += 1;
    }
    let cheb = InterpolationMatrix::chebyshev(6).unwrap();
    let mut chain_fails = true;
    for n in 1..=4 {
        let w = indicator_witness(&cheb, n)
            .unwrap()
            .expect("rows are not nested");
        let r = projection_chain_check(&cheb, &[w], 5).unwrap();
        chain_fails &= !r.chain.pass;
    }
    outcome(
        nested_ok && chain_fails,
        format!("{cases} nested matrices pass: {nested_ok}; Chebyshev chain fails with indicator: {chain_fails}"),
    )
}

fn criterion_11() -> Outcome {
    let start = Instant::now();
    let g = make_geometric_set(0.5, 40).unwrap();
    let e = lower_porosity_default(&g, 0.0).unwrap();
    let plus_ok = (e.p_plus - 1.0 / 3.0).abs() <= 0.02 && e.right.converged;
    let minus_ok = e.p_minus == 1.0;
    let unit = CompactSet::interval(0.0, 1.0).unwrap();
    let i = lower_porosity_default(&unit, 0.5).unwrap();
    let interior_ok = [i.p_plus, i.p_minus, i.p, i.p_star]
        .iter()
        .all(|&v| v == 0.0);
    let mut identities_ok = true;
    for (set, x0) in [
        (&g, 0.0),
        (&g, 0.25),
        (&unit, 0.5),
        (&unit, 0.0),
        (&make_cantor(8, 1.0 / 3.0).unwrap(), 0.0),
    ] {
        let e = lower_porosity_default(set, x0).unwrap();
        identities_ok &= e.p == e.p_plus.max(e.p_minus) && e.p_star == e.p_plus.min(e.p_minus);
    }
    let (fast, t) = within(start, Duration::from_secs(5));
    outcome(
        plus_ok && minus_ok && interior_ok && identities_ok && fast,
        format!(
            "p⁺ = {:.4} (converged {}), p⁻ = {}, interior zero {interior_ok}, identities {identities_ok}, {t}",
            e.p_plus, e.right.converged, e.p_minus
        ),
    )
}

fn criterion_12() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut sets: Vec<(String, CompactSet, bool)> = Vec::new();
    for i in 0..8 {
        let len = rng.gen_range(1..=12);
        let mut pts = separated(&mut rng, len, 1e-3);
        pts.sort_by(f64::total_cmp);
        sets.push((
            format!("finite#{i}"),
            CompactSet::from_points(&pts).unwrap(),
            true,
        ));
    }
    for (i, ratio) in [0.3, 0.5, 0.7, 0.9].into_iter().enumerate() {
        let depth = rng.gen_range(10..=40);
        sets.push((
            format!("geometric#{i}"),
            make_geometric_set(ratio, depth).unwrap(),
            false,
        ));
    }
    for (i, frac) in [0.2, 1.0 / 3.0, 0.5, 0.8].into_iter().enumerate() {
        let depth = rng.gen_range(1..=8);
        sets.push((
            format!("cantor#{i}"),
            make_cantor(depth, frac).unwrap(),
            false,
        ));
    }
    for i in 0..4 {
        let mut cuts = separated(&mut rng, 4, 0.05);
        cuts.sort_by(f64::total_cmp);
        let set = CompactSet::new(vec![
            (cuts[0], cuts[0]),
            (cuts[1], cuts[2]),
            (cuts[3], cuts[3]),
        ])
        .unwrap();
        sets.push((format!("mixed#{i}"), set, false));
    }
    let mut failures = Vec::new();
    for (name, set, finite) in &sets {
        let d = discreteness_check(set).unwrap();
        // numerical p* at every sample point agrees with the structural answer
        let numeric_all = set
            .sample_points()
            .iter()
            .all(|&x| lower_porosity_default(set, x).unwrap().p_star > 0.5);
        if !(d.consistent() && d.finite == *finite && numeric_all == *finite) {
            failures.push(name.clone());
        }
    }
    outcome(
        failures.is_empty(),
        format!("{} sets, inconsistent: {:?}", sets.len(), failures),
    )
}

fn criterion_13() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let basis = dir.path().join("basis.txt");
    let nodes = dir.path().join("nodes.txt");
    let seq = leja_chebyshev(6).unwrap();
    std::fs::write(
        &basis,
        newton_basis_candidate(seq.points(), 6).unwrap().to_text(),
    )
    .unwrap();
    std::fs::write(&nodes, seq.to_text()).unwrap();
    let (b, n) = (basis.to_str().unwrap(), nodes.to_str().unwrap());
    let runs: Vec<Vec<&str>> = vec![
        vec!["growth", "--nmax", "15"],
        vec![
            "growth", "--nmax", "10", "--matrix", "leja", "--format", "json",
        ],
        vec!["converge", "--nmax", "8"],
        vec![
            "converge",
            "--nmax",
            "8",
            "--format",
            "json",
            "--interval",
            "-2",
            "3",
        ],
        vec!["faber-check", "--basis", b, "--nodes", n],
        vec!["faber-check", "--basis", b],
        vec!["porosity", "--set", "geometric:0.5:20"],
        vec![
            "porosity",
            "--set",
            "cantor:4:0.3333333333333333",
            "--format",
            "json",
        ],
        vec!["oracle", "--trials", "20", "--seed", "7"],
        vec![
            "oracle", "--trials", "20", "--seed", "7", "--format", "json",
        ],
    ];
    let exe = env!("CARGO_BIN_EXE_lebesgue-lab");
    let mut differing = Vec::new();
    for args in &runs {
        let once = || Command::new(exe).args(args).output().unwrap();
        let (a, b) = (once(), once());
        if !(a.status.success()
            && a.stdout == b.stdout
            && a.status == b.status
            && !a.stdout.is_empty())
        {
            differing.push(args[0]);
        }
    }
    outcome(
        differing.is_empty(),
        format!(
            "{} invocations run twice, differing or failing: {:?}",
            runs.len(),
            differing
        ),
    )
}

type Criterion = fn() -> Outcome;

fn main() {
    let criteria: [(&str, Criterion); 13] = [
        ("sign-enumeration oracle", criterion_1),
        ("unit Lebesgue function at nodes", criterion_2),
        ("closed-form constant of [-1, 0, 1]", criterion_3),
        ("Chebyshev logarithmic growth", criterion_4),
        ("equispaced divergence", criterion_5),
        ("affine invariance", criterion_6),
        ("Newton and Lagrange forms agree", criterion_7),
        ("divided differences", criterion_8),
        ("interpolating basis checks", criterion_9),
        ("projection-chain dichotomy", criterion_10),
        ("porosity closed forms", criterion_11),
        ("isolation and finiteness", criterion_12),
        ("CLI determinism", criterion_13),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("{tag} criterion {:>2} {name}: {}", i + 1, o.detail);
        failed += usize::from(!o.pass);
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
