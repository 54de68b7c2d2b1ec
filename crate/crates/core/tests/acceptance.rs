//! Acceptance harness: one PASS/FAIL line per acceptance criterion.
//!
//! Runs without the libtest harness so that every criterion is evaluated
//! and reported even when an earlier one fails; the process exits with
//! status 1 if any criterion failed. Criteria are implemented as stated;
//! known failures are expected to show up here.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use merw::chain::{identity_residual, harmonicity_residual, max_relative_residual, CentralKernel, HarmonicFn};
use merw::diagram::{default_budget, forward_level, DiagramModel, Dimensions};
use merw::growth::*;
use merw::knuth::{knuth_estimate_exact, pyramid_estimate, pyramid_merw_approx_sample, table1_experiment};
use merw::knuth::{ApproxParams, FiniteHorizon, WalkRule};
use merw::lattice::*;
use merw::rng::stream;
use merw::shape::{area_matched_distance, boundary_distance, crp_pd_test, fraction_test, sample_pyramids};
use merw::shape::FractionTarget;
use merw::tree::*;
use merw::{Exact, Scalar};
use num_bigint::BigUint;
use num_traits::{One, Zero};

type Check = Result<(bool, String), String>;

const BUDGET: usize = 50_000_000;
const SEEDS: [u64; 5] = [1, 2, 3, 4, 5];

fn q(p: i64, d: i64) -> Exact {
    Exact::new(p.into(), d.into())
}

fn int(p: i64) -> Exact {
    q(p, 1)
}

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

fn states<M: DiagramModel>(m: &M, max_level: usize) -> Vec<M::Vertex> {
    (0..=max_level)
        .flat_map(|n| forward_level(m, &m.root(), n, None, BUDGET).unwrap().into_keys())
        .collect()
}

fn pascal_vertices(max_level: u32) -> Vec<PascalVertex> {
    (0..=max_level).flat_map(|n| (0..=n).map(move |k| PascalVertex::new(n, k))).collect()
}

/// Levels `0..=n_max` at which the identity residual is non-zero.
fn combipower<M, H>(k: &CentralKernel<M, H>, n_max: usize) -> Result<Vec<usize>, String>
where
    M: DiagramModel<Weight = Exact>,
    H: HarmonicFn<M::Vertex, Value = Exact>,
{
    let mut bad = Vec::new();
    for n in 0..=n_max {
        let r = identity_residual(k.model(), k.harmonic(), n, BUDGET).map_err(|e| e.to_string())?;
        if !r.is_zero() {
            bad.push(n);
        }
    }
    Ok(bad)
}

fn exact_zero<M, H>(m: &M, phi: &H, vertices: &[M::Vertex]) -> usize
where
    M: DiagramModel<Weight = Exact>,
    H: HarmonicFn<M::Vertex, Value = Exact>,
{
    harmonicity_residual(m, phi, vertices).iter().filter(|(_, r)| !r.is_zero()).count()
}

fn err(e: impl ToString) -> String {
    e.to_string()
}

// ------------------------------------------------------------------ criteria

fn table1_counts() -> Check {
    let listed: [u64; 13] = [
        3, 11, 47, 213, 1013, 5047, 26077, 143067, 809973, 4758653, 28892669, 180970405,
        1166654573,
    ];
    let start = Instant::now();
    let counts = pyramid_counts(&pyramid_model(None).map_err(err)?, 13, default_budget()).map_err(err)?;
    let elapsed = start.elapsed();
    let mismatches: Vec<String> = (1..=13)
        .filter(|&n| counts[n] != BigUint::from(listed[n - 1]))
        .map(|n| format!("n={n}: computed {} listed {}", counts[n], listed[n - 1]))
        .collect();
    let fast = elapsed < Duration::from_secs(120);
    let detail = format!(
        "{} mismatches [{}], runtime {:.2?}",
        mismatches.len(),
        mismatches.join("; "),
        elapsed
    );
    Ok((mismatches.is_empty() && fast, detail))
}

fn unbiasedness() -> Check {
    let model = pyramid_model(None).map_err(err)?;
    let est = pyramid_estimate(&model, &PyramidState::single(), 8, &WalkRule::Grw, 100_000, 2024)
        .map_err(err)?;
    let rel = (est.mean - 143067.0).abs() / 143067.0;

    let dims = Dimensions::new(&model);
    let exact = knuth_estimate_exact(&model, &PyramidState::single(), 8, &FiniteHorizon::new(&dims), 500, 2024)
        .map_err(err)?;
    let std = exact.sample_std();
    let zero_var = std == Some(Exact::zero()) && exact.mean == int(143067);
    Ok((
        rel < 0.05 && zero_var,
        format!(
            "RW0 mean {:.1} (rel. error {:.4}); exact proposal mean {} std {}",
            est.mean,
            rel,
            exact.mean,
            std.map_or("irrational".into(), |s| s.to_string())
        ),
    ))
}

fn variance_ordering() -> Check {
    let ns: Vec<usize> = (4..=10).collect();
    let mut good = 0;
    let mut notes = Vec::new();
    for seed in SEEDS {
        let rows = table1_experiment(&ns, 10_000, &[seed]).map_err(err)?;
        let bad: Vec<usize> = rows.iter().filter(|r| r.rw1_std > r.rw0_std).map(|r| r.n).collect();
        if bad.is_empty() {
            good += 1;
        } else {
            notes.push(format!("seed {seed} violates at n={bad:?}"));
        }
    }
    Ok((good >= 4, format!("{good}/5 seeds ordered {}", notes.join("; "))))
}

fn identity_suite() -> Check {
    let mut failures: Vec<String> = Vec::new();
    let mut note = |name: &str, bad: Vec<usize>| {
        if !bad.is_empty() {
            failures.push(format!("{name} at {bad:?}"));
        }
    };

    // combipower for every shipped closed-form harmonic function
    for (a, b) in [(int(1), int(1)), (q(1, 4), q(3, 4)), (int(2), int(3))] {
        let params = PascalParams::new(a.clone(), b.clone()).map_err(err)?;
        let phi = pascal_merw_harmonic(&params).map_err(err)?;
        let k = CentralKernel::new(pascal_model(Some(params)), phi).map_err(err)?;
        note(&format!("pascal({a},{b})"), combipower(&k, 8)?);
    }
    note("polya", combipower(&polya_kernel(), 8)?);
    note("plancherel", combipower(&plancherel_kernel(), 8)?);
    for d in [2, 3] {
        note(&format!("bst d={d}"), combipower(&bst_kernel::<Exact>(d, None).map_err(err)?, 8)?);
    }
    note("wbst(1,3)", combipower(&weighted_bst_merw(int(1), int(3)).map_err(err)?, 8)?);
    note("idla(1,2)", combipower(&idla_annealed_kernel(vec![int(1), int(2)]).map_err(err)?, 8)?);
    let labels = LabelField::random_rational(2, 9, 9, &mut stream(11, 0));
    let k = CentralKernel::new(DaryTreeModel::<Exact>::new(2).map_err(err)?, label_harmonic(labels, None).map_err(err)?)
        .map_err(err)?;
    note("labels", combipower(&k, 8)?);
    note("comb", combipower(&comb_kernel(vec![q(1, 2), q(1, 4)]).map_err(err)?, 8)?);
    note("bounded comb", combipower(&bounded_comb_kernel::<Exact>(3).map_err(err)?, 8)?);
    for g in [q(1, 2), int(1), int(2)] {
        note(&format!("crp {g}"), combipower(&crp_kernel(g.clone()).map_err(err)?, 8)?);
    }
    let two = TwoSidedParams::new(q(1, 6), vec![q(1, 6)], vec![q(1, 4)], q(1, 3), q(1, 2)).map_err(err)?;
    note("two-sided", combipower(&two_sided_kernel(two).map_err(err)?, 8)?);
    note("two-sided merw", combipower(&two_sided_kernel(TwoSidedParams::<Exact>::merw()).map_err(err)?, 8)?);

    // sum of squared dimensions
    let bad: Vec<usize> = (0..=8u32)
        .filter(|&n| {
            partitions(n).iter().map(|l| young_dim(l).pow(2)).sum::<BigUint>() != factorial(n as u64)
        })
        .map(|n| n as usize)
        .collect();
    note("sum dim^2", bad);

    for d in [2, 3] {
        let mut bad = Vec::new();
        for n in 1..=8 {
            if !comb3_residual(d, n).map_err(err)?.is_zero() {
                bad.push(n);
            }
        }
        note(&format!("comb3 d={d}"), bad);
    }
    for w in [vec![q(1, 3), q(5, 2)], vec![int(2), q(7, 3)]] {
        let mut bad = Vec::new();
        for n in 1..=6 {
            if !comb4_residual(&w, n).map_err(err)?.is_zero() {
                bad.push(n);
            }
        }
        note("comb4", bad);
    }
    for seed in SEEDS {
        for d in [2, 3] {
            let labels = LabelField::random_rational(d, 6, 9, &mut stream(seed, d as u64));
            let mut bad = Vec::new();
            for n in 1..=6 {
                if !comb2_residual(&labels, n).map_err(err)?.is_zero() {
                    bad.push(n);
                }
            }
            note(&format!("comb2 seed {seed} d={d}"), bad);
        }
    }
    for x in 1..=10 {
        let mut bad = Vec::new();
        for n in 1..=12 {
            if !stirling_identity_residual(n, &int(x), BUDGET).map_err(err)?.is_zero() {
                bad.push(n);
            }
        }
        note(&format!("stirling X={x}"), bad);
    }
    let bad: Vec<usize> = (1..=10)
        .filter(|&n| bell_from_diagram(n, BUDGET).unwrap() != BigUint::from(set_partitions(n)))
        .collect();
    note("bell", bad);

    let detail = if failures.is_empty() {
        "all residuals exactly zero".to_string()
    } else {
        failures.join("; ")
    };
    Ok((failures.is_empty(), detail))
}

/// Set partitions of `{1..n}` by restricted growth strings.
fn set_partitions(n: usize) -> u64 {
    fn rec(i: usize, n: usize, blocks: usize) -> u64 {
        if i == n {
            return 1;
        }
        (0..=blocks).map(|b| rec(i + 1, n, blocks.max(b + 1))).sum()
    }
    rec(0, n, 0)
}

fn harmonicity_suite() -> Check {
    let mut failures = Vec::new();
    let pv = pascal_vertices(12);
    for (a, b) in [(int(2), int(3)), (int(4), int(6)), (q(1, 4), q(3, 4))] {
        let params = PascalParams::new(a.clone(), b.clone()).map_err(err)?;
        let regime = params.regime();
        let phi = pascal_merw_harmonic(&params).map_err(err)?;
        let bad = exact_zero(&pascal_model(Some(params)), &phi, &pv);
        if bad > 0 {
            failures.push(format!("pascal({a},{b}) {regime:?}: {bad}"));
        }
    }
    let polya = polya_kernel();
    let bad = exact_zero(polya.model(), polya.harmonic(), &pv);
    if bad > 0 {
        failures.push(format!("polya: {bad}"));
    }
    let young = plancherel_kernel();
    let lambdas: Vec<Partition> = (0..=8).flat_map(partitions).collect();
    let bad = exact_zero(young.model(), young.harmonic(), &lambdas);
    if bad > 0 {
        failures.push(format!("plancherel: {bad}"));
    }
    let trees: Vec<PrefixTree> = (1..=6).flat_map(|k| enumerate_dary_trees(2, k).unwrap()).collect();
    for (x, y) in [(int(1), int(3)), (q(1, 2), q(2, 3)), (q(5, 2), int(1))] {
        let k = weighted_bst_merw(x.clone(), y.clone()).map_err(err)?;
        let bad = exact_zero(k.model(), k.harmonic(), &trees);
        if bad > 0 {
            failures.push(format!("wbst({x},{y}): {bad}"));
        }
    }
    // states of size <= 7 are levels 0..=6
    let comb = comb_kernel(vec![q(1, 2), q(1, 3)]).map_err(err)?;
    let bad = exact_zero(comb.model(), comb.harmonic(), &states(comb.model(), 6));
    if bad > 0 {
        failures.push(format!("comb: {bad}"));
    }
    let two = TwoSidedParams::new(q(1, 6), vec![q(1, 6)], vec![q(1, 4)], q(1, 3), q(1, 2)).map_err(err)?;
    let two = two_sided_kernel(two).map_err(err)?;
    let bad = exact_zero(two.model(), two.harmonic(), &states(two.model(), 6));
    if bad > 0 {
        failures.push(format!("two-sided: {bad}"));
    }

    let mut worst = 0.0f64;
    for g in [0.5, 1.0, 2.0] {
        let k = CentralKernel::new(CombModel::<f64>::new(), CrpLogGamma::new(g).map_err(err)?).map_err(err)?;
        // sizes <= 8 are levels 0..=7
        worst = worst.max(max_relative_residual(k.model(), k.harmonic(), &states(k.model(), 7)));
    }
    if worst > 1e-8 {
        failures.push(format!("crp float residual {worst:.3e}"));
    }
    let ok = failures.is_empty();
    Ok((ok, format!("exact residuals zero: {ok}; crp float max relative residual {worst:.2e} {}", failures.join("; "))))
}

fn truncation_convergence() -> Check {
    let horizons = [500, 1000, 2000];
    let points = pascal_vertices(4);
    let mut ok = true;
    let mut parts = Vec::new();
    for (alpha, beta, strict) in [(0.25, 0.75, true), (1.0, 3.0, false)] {
        let params = PascalParams::new(alpha, beta).map_err(err)?;
        let phi = pascal_merw_harmonic(&params).map_err(err)?;
        let rows = pascal_truncation(alpha, beta, &points, &horizons);
        let dev: Vec<f64> = (0..horizons.len())
            .map(|h| {
                points
                    .iter()
                    .zip(&rows)
                    .map(|(p, r)| (r[h] - phi.eval(p)).abs() / phi.eval(p))
                    .fold(0.0, f64::max)
            })
            .collect();
        // once the deviation is at the float floor only non-increase is asked
        let decreasing = dev
            .windows(2)
            .all(|w| if strict { w[1] < w[0] } else { w[1] <= w[0] + 1e-9 });
        ok &= dev[2] < 1e-2 && decreasing;
        parts.push(format!("gamma={}: {:.3e} {:.3e} {:.3e}", params.gamma(), dev[0], dev[1], dev[2]));
    }
    Ok((ok, parts.join("; ")))
}

fn series_machinery() -> Check {
    let ode = SeriesT::new(40).map_err(err)?.ode_holds();
    let t = SeriesT::new(20).map_err(err)?;
    let factorials = (1..=20).all(|n| t.eval_exact(n, &int(2)) == Exact::from_big(&factorial(n as u64).into()));
    let mut ok = ode && factorials;
    let mut parts = vec![format!("ode {ode}, T_n(2)=n! {factorials}")];
    for s in [1.0, 3.0] {
        let r = asymptotic_ratios(s, 200).map_err(err)?;
        let last = (r[199] - 1.0).abs();
        let gaps: Vec<f64> = r[150..].iter().map(|x| (x - 1.0).abs()).collect();
        let monotone = gaps.windows(2).all(|w| w[1] <= w[0] + 1e-12);
        ok &= last < 0.05 && monotone;
        parts.push(format!("s={s}: |r_200 - 1| = {last:.2e}, monotone {monotone}"));
    }
    Ok((ok, parts.join("; ")))
}

fn kreweras() -> Check {
    let counts = kreweras_counts(20).map_err(err)?;
    let frame = FrameModel;
    let dims = Dimensions::new(&frame);
    let mut frame_ok = true;
    for n in 0..=20 {
        let f = dims.to_level(&frame.root(), n).map_err(err)?;
        frame_ok &= f == Exact::from_big(&counts[n].clone().into());
    }
    let brute_ok = (0..=8).all(|n| BigUint::from(kreweras_brute_force(n)) == counts[n]);
    let ratios: Vec<f64> = kreweras_diagnostics(400).map_err(err)?.iter().map(|d| d.growth_ratio).collect();
    let first_drop = ratios.windows(2).position(|w| w[1] <= w[0]);
    let below_three = ratios.iter().all(|&r| r < 3.0);
    let classes: Vec<bool> = (0..3)
        .map(|c| {
            let seq: Vec<f64> = ratios.iter().skip(6 + c).step_by(3).copied().collect();
            seq.windows(2).all(|w| w[1] > w[0])
        })
        .collect();
    let increasing = first_drop.is_none() && below_three;
    Ok((
        frame_ok && brute_ok && increasing,
        format!(
            "frame = DP (n<=20) {frame_ok}; brute = DP (n<=8) {brute_ok}; consecutive ratio increasing {increasing}{}; \
             per residue class mod 3 (n>=7) increasing {classes:?}; a_400/a_399 = {:.5}",
            first_drop.map_or(String::new(), |i| format!(" (first drop: a_{0}/a_{1} <= a_{1}/a_{2})", i + 2, i + 1, i)),
            ratios[399]
        ),
    ))
}

fn statistical_suite() -> Check {
    let (mut bst, mut wbst, mut crp) = (0, 0, 0);
    let (mut bst_max, mut wbst_max, mut crp_max) = (0.0f64, 0.0f64, 0.0f64);
    for seed in SEEDS {
        let r = fraction_test(&GrowthRule::Bst { d: 2 }, &[], 2000, 500, seed, FractionTarget::Uniform, 0.08)
            .map_err(err)?;
        bst += r.passed as usize;
        bst_max = bst_max.max(r.statistic);
        let r = fraction_test(
            &GrowthRule::WeightedBinary { x: 1.0, y: 3.0 },
            &[],
            2000,
            500,
            seed,
            FractionTarget::Weighted { x: 1.0, y: 3.0 },
            0.08,
        )
        .map_err(err)?;
        wbst += r.passed as usize;
        wbst_max = wbst_max.max(r.statistic);
        let c = crp_pd_test(1.0, 5000, 2000, 1, seed).map_err(err)?;
        crp += (c.mean_differences[0] < 0.03) as usize;
        crp_max = crp_max.max(c.mean_differences[0]);
    }
    Ok((
        bst >= 4 && wbst >= 4 && crp >= 4,
        format!(
            "BST {bst}/5 (max KS {bst_max:.3}); weighted BST {wbst}/5 (max KS {wbst_max:.3}); \
             CRP {crp}/5 (max diff {crp_max:.4})"
        ),
    ))
}

fn limit_shape() -> Check {
    let model = pyramid_model(None).map_err(err)?;
    let rule = WalkRule::rw1();
    let mut means = Vec::new();
    let mut matched = Vec::new();
    for n in [50usize, 100, 200] {
        let pyramids = sample_pyramids(
            |seed| {
                let params = ApproxParams { n: n - 1, depth: 10, samples: 100, seed };
                Ok(pyramid_merw_approx_sample(&model, &rule, &params)?.sample.last().clone())
            },
            50,
            7,
        )
        .map_err(err)?;
        let mean = |f: &dyn Fn(&PyramidState) -> merw::Result<f64>| -> Result<f64, String> {
            let total: f64 = pyramids.iter().map(f).collect::<merw::Result<Vec<f64>>>().map_err(err)?.iter().sum();
            Ok(total / pyramids.len() as f64)
        };
        means.push(mean(&|s| boundary_distance(s, n))?);
        matched.push(mean(&|s| area_matched_distance(s, n))?);
    }
    let ok = means.windows(2).all(|w| w[1] <= w[0]);
    Ok((
        ok,
        format!(
            "mean distance at n=50,100,200: {:.4} {:.4} {:.4}; area-matched diagnostic {:.4} {:.4} {:.4}",
            means[0], means[1], means[2], matched[0], matched[1], matched[2]
        ),
    ))
}

fn cli_determinism() -> Check {
    let cases = [
        ("count --model pyramid --n 13", "count_pyramid_13.csv"),
        ("table1 --n 10 --samples 2000 --seed 1", "table1_n10_seed1.csv"),
        ("heatmap --n 50 --np 10 --seed 1 --format svg --overlay", "heatmap_n50_np10_seed1.svg"),
    ];
    let mut bad = Vec::new();
    for (args, file) in cases {
        let path = format!("{}/tests/golden/{file}", env!("CARGO_MANIFEST_DIR"));
        let golden = std::fs::read(&path).map_err(|e| format!("{path}: {e}"))?;
        let mut out = Vec::new();
        let code = merw::cli::run(
            std::iter::once("merw").chain(args.split_whitespace()),
            &mut out,
            &mut std::io::sink(),
        );
        if code != 0 || out != golden {
            bad.push(file);
        }
    }
    Ok((bad.is_empty(), format!("{}/3 golden files byte-equal {bad:?}", 3 - bad.len())))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 11] = [
        ("pyramid count table", table1_counts),
        ("estimator unbiasedness", unbiasedness),
        ("variance ordering", variance_ordering),
        ("identity suite", identity_suite),
        ("harmonicity suite", harmonicity_suite),
        ("truncation convergence", truncation_convergence),
        ("series machinery", series_machinery),
        ("kreweras", kreweras),
        ("statistical suite", statistical_suite),
        ("limit-shape trend", limit_shape),
        ("cli determinism", cli_determinism),
    ];
    // optional substring filters, e.g. `cargo test --test acceptance -- kreweras`
    let filters: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    let mut ran = 0;
    for (name, f) in criteria {
        if !filters.is_empty() && !filters.iter().any(|p| name.contains(p.as_str())) {
            continue;
        }
        ran += 1;
        let start = Instant::now();
        let (ok, detail) = match catch_unwind(AssertUnwindSafe(f)) {
            Ok(Ok(r)) => r,
            Ok(Err(e)) => (false, format!("error: {e}")),
            Err(_) => (false, "panicked".into()),
        };
        failed += !ok as usize;
        println!(
            "{} {name} ({:.1?}): {detail}",
            if ok { "PASS" } else { "FAIL" },
            start.elapsed()
        );
    }
    println!("acceptance: {} passed, {failed} failed", ran - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
