//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line (run with `--nocapture` to see them). Deterministic criteria are
//! exact; statistical criteria pin their seeds and tolerance bands.

use std::time::{Duration, Instant};

use flowshop_core::dist::substream;
use flowshop_core::fit::fit_makespan_curve;
use flowshop_core::lattice::{decompose_makespan, lpp, lpp_bruteforce, LatticeWeights};
use flowshop_core::schedule::{schedule_fiducial, sweep_fiducial};
use flowshop_core::shape::{asymptotic_makespan, ShapeParams};
use flowshop_core::sweep::{compare_rules, monte_carlo_sweep, sample_trial_table, Rule};
use flowshop_core::{DistributionSpec, ProcessingTimeTable};
use rand_core::RngCore;

fn report(name: &str, started: Instant, budget: Duration) {
    let elapsed = started.elapsed();
    println!("acceptance {name}: PASS ({elapsed:.2?})");
    assert!(elapsed < budget, "{name} took {elapsed:.2?}, budget {budget:.2?}");
}

fn random_int_table(rng: &mut impl RngCore, machines: usize, jobs: usize, max: u64) -> ProcessingTimeTable {
    let entries = (0..machines * jobs)
        .map(|_| (rng.next_u64() % max + 1) as f64)
        .collect();
    ProcessingTimeTable::new(machines, jobs, entries).unwrap()
}

/// Criterion 1: the built-in 7x8 fixture reproduces its published sweep,
/// row totals, and bottleneck exactly.
#[test]
fn criterion_1_fixture_reproduction() {
    let start = Instant::now();
    let table = ProcessingTimeTable::demo();
    assert_eq!(sweep_fiducial(&table), vec![48., 49., 50., 55., 48., 48., 48.]);
    assert_eq!(table.row_totals(), vec![22., 25., 26., 18., 20., 23., 17.]);
    assert_eq!(table.bottleneck(), 3);
    report("1 fixture reproduction", start, Duration::from_millis(10));
}

/// Criterion 2: the lattice DP equals exhaustive path enumeration on 200
/// seeded random integer grids up to 6x6, with zero mismatches.
#[test]
fn criterion_2_oracle_equivalence() {
    let start = Instant::now();
    let mut rng = substream(2024, 0);
    for case in 0..200 {
        let rows = (rng.next_u64() % 6 + 1) as usize;
        let cols = (rng.next_u64() % 6 + 1) as usize;
        let weights = (0..rows * cols)
            .map(|_| (rng.next_u64() % 100) as f64)
            .collect();
        let grid = LatticeWeights::new(rows, cols, weights).unwrap();
        assert_eq!(lpp(&grid), lpp_bruteforce(&grid).unwrap(), "case {case}: {rows}x{cols}");
    }
    report("2 oracle equivalence", start, Duration::from_secs(1));
}

/// Criterion 3: upper + lower - fiducial_sum = makespan, exactly, for 100
/// seeded random 10x12 integer tables and every fiducial index.
#[test]
fn criterion_3_decomposition_identity() {
    let start = Instant::now();
    let mut rng = substream(333, 0);
    for case in 0..100 {
        let table = random_int_table(&mut rng, 10, 12, 20);
        for nu in 1..=10 {
            let (upper, lower, fsum) = decompose_makespan(&table, nu).unwrap();
            let ms = schedule_fiducial(&table, nu).unwrap().makespan();
            assert_eq!(upper + lower - fsum, ms, "case {case}, nu {nu}");
        }
    }
    report("3 decomposition identity", start, Duration::from_secs(1));
}

/// Criterion 4: reversing machines and jobs mirrors the fiducial sweep
/// exactly on the same 100 tables.
#[test]
fn criterion_4_reversal_symmetry() {
    let start = Instant::now();
    let mut rng = substream(333, 0);
    for case in 0..100 {
        let table = random_int_table(&mut rng, 10, 12, 20);
        let forward = sweep_fiducial(&table);
        let backward = sweep_fiducial(&table.reversed());
        for nu in 1..=10 {
            assert_eq!(forward[nu - 1], backward[10 - nu], "case {case}, nu {nu}");
        }
    }
    report("4 reversal symmetry", start, Duration::from_secs(1));
}

/// Criterion 5: with exponential mean 2, M = N = 300 and the fiducial at
/// the middle, the normalized mean makespan over 50 trials sits within 5%
/// of the limit 4sqrt(2) + 4 and below it (finite-size bias is negative).
#[test]
fn criterion_5_shape_function_limit() {
    let start = Instant::now();
    let spec = DistributionSpec::Exponential { lambda: 2.0 };
    let (m, n, nu, trials) = (300usize, 300usize, 150usize, 50usize);
    let mut sum = 0.0;
    for t in 0..trials {
        let table = sample_trial_table(&spec, m, n, 500, t).unwrap();
        sum += schedule_fiducial(&table, nu).unwrap().makespan() / n as f64;
    }
    let mean = sum / trials as f64;
    let limit = asymptotic_makespan(1.0, 0.5, &ShapeParams::exponential(2.0).unwrap()).unwrap();
    assert!((limit - (4.0 * 2.0_f64.sqrt() + 4.0)).abs() < 1e-12);
    assert!(mean < limit, "mean {mean} should lie below the limit {limit}");
    assert!(
        (limit - mean) / limit < 0.05,
        "mean {mean} more than 5% below the limit {limit}"
    );
    report("5 shape-function limit", start, Duration::from_secs(120));
}

/// Criterion 6: the fitted exponent for an exponential M=400, N=200 sweep
/// lands in [0.42, 0.60].
#[test]
fn criterion_6_exponent_recovery() {
    let start = Instant::now();
    let spec = DistributionSpec::Exponential { lambda: 2.0 };
    let sweep = monte_carlo_sweep(&spec, 400, 200, 50, 600, Rule::Normal).unwrap();
    let fit = fit_makespan_curve(&sweep).unwrap();
    assert!(fit.identifiable);
    assert!(
        (0.42..=0.60).contains(&fit.alpha),
        "fitted alpha {} outside [0.42, 0.60]",
        fit.alpha
    );
    report("6 exponent recovery", start, Duration::from_secs(300));
}

/// Criterion 7: the sweep is concave — the midpoint mean exceeds the
/// endpoint mean by more than 3 combined standard errors, while the two
/// endpoints agree within 3 SE.
#[test]
fn criterion_7_concave_sweep_shape() {
    let start = Instant::now();
    let spec = DistributionSpec::Exponential { lambda: 2.0 };
    let sweep = monte_carlo_sweep(&spec, 100, 50, 100, 700, Rule::Normal).unwrap();
    let s = &sweep.stats;
    let combined = |a: usize, b: usize| (s[a].stderr.powi(2) + s[b].stderr.powi(2)).sqrt();
    let mid_gain = s[49].mean - s[0].mean;
    assert!(
        mid_gain > 3.0 * combined(49, 0),
        "midpoint gain {mid_gain} not significant (3 SE = {})",
        3.0 * combined(49, 0)
    );
    let end_diff = (s[0].mean - s[99].mean).abs();
    assert!(
        end_diff < 3.0 * combined(0, 99),
        "endpoints differ by {end_diff} (3 SE = {})",
        3.0 * combined(0, 99)
    );
    report("7 concave sweep shape", start, Duration::from_secs(30));
}

/// Criterion 8: discrete-uniform, continuous-uniform, and chi-squared
/// processing times with matched moments (mean 7, variance 14) give
/// pairwise-consistent fitted exponents.
#[test]
fn criterion_8_universality_across_distributions() {
    let start = Instant::now();
    let root42 = 42.0_f64.sqrt();
    let specs = [
        DistributionSpec::DiscreteUniform { lo: 1, hi: 13 },
        DistributionSpec::ContinuousUniform { lo: 7.0 - root42, hi: 7.0 + root42 },
        DistributionSpec::ChiSquared { k: 7 },
    ];
    let mut alphas = Vec::new();
    for spec in &specs {
        let sweep = monte_carlo_sweep(spec, 200, 100, 50, 800, Rule::Normal).unwrap();
        let fit = fit_makespan_curve(&sweep).unwrap();
        assert!(
            (0.35..=0.65).contains(&fit.alpha),
            "{spec:?}: alpha {} outside [0.35, 0.65]",
            fit.alpha
        );
        alphas.push(fit.alpha);
    }
    for i in 0..alphas.len() {
        for j in i + 1..alphas.len() {
            assert!(
                (alphas[i] - alphas[j]).abs() < 0.1,
                "alphas {alphas:?} not pairwise within 0.1"
            );
        }
    }
    report("8 universality across distributions", start, Duration::from_secs(600));
}

/// Criterion 9: LPT hurts on average while SPT stays within 2% of the
/// normal rule.
#[test]
fn criterion_9_dispatching_rules() {
    let start = Instant::now();
    let spec = DistributionSpec::Exponential { lambda: 2.0 };
    let (m, n, trials, seed) = (200, 160, 100, 900);
    let normal = monte_carlo_sweep(&spec, m, n, trials, seed, Rule::Normal).unwrap();
    let spt = monte_carlo_sweep(&spec, m, n, trials, seed, Rule::Spt).unwrap();
    let lpt = monte_carlo_sweep(&spec, m, n, trials, seed, Rule::Lpt).unwrap();

    let lpt_cmp = compare_rules(&normal, &lpt).unwrap();
    let lpt_mean = lpt_cmp.per_nu.iter().sum::<f64>() / lpt_cmp.per_nu.len() as f64;
    assert!(lpt_mean > 0.0, "mean LPT relative difference {lpt_mean} not positive");

    let spt_cmp = compare_rules(&normal, &spt).unwrap();
    let spt_worst = spt_cmp.min_rel.abs().max(spt_cmp.max_rel.abs());
    assert!(spt_worst < 0.02, "max |SPT relative difference| {spt_worst} >= 0.02");

    report("9 dispatching rules", start, Duration::from_secs(300));
}
