//! Acceptance suite. Each test prints one `PASS`/`FAIL` line for its criterion straight to
//! stderr, so the lines show up even when the harness captures output.

mod common;

use std::io::Write;
use std::time::{Duration, Instant};

use common::*;
use optce_core::colgen::{solve_full_lp, solve_maxmin_ce, solve_optimal_cce, solve_optimal_ce, solve_scg_cce_symmetric};
use optce_core::game::count_vectors;
use optce_core::gen::{random_normal_form, random_singleton_congestion, random_tree_polymatrix, rng};
use optce_core::io::{game_to_string, solution_to_string};
use optce_core::oracle::{
    coarse_dasw_value, coarse_to_ce_plan, dasw_value, oracle_bruteforce, oracle_tree_polymatrix, polymatrix_adjust,
    scg_coarse_opt, weighted_dasw_value, BruteForceOracle, TreePolymatrixOracle,
};
use optce_core::verify::{cce_constraint_values, check_cce, check_ce, expand_exchangeable, expected_utilities};
use optce_core::{
    CoarseDeviationPlan, Concept, CorrelatedDistribution, DeviationPlan, Direction, Distribution, GameInstance, Method,
    ObjectiveSpec, OracleKind, PlayerWeights, Representation, SolveReport, SolverConfig,
};
use rand::Rng;

struct Outcome {
    failures: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok && self.failures.len() < 20 {
            self.failures.push(what());
        }
    }

    fn time_limit(&mut self, elapsed: Duration, limit: Duration) {
        self.check(elapsed < limit, || format!("took {elapsed:?}, limit {limit:?}"));
    }

    fn finish(self, id: u32, name: &str, start: Instant, summary: String) {
        let status = if self.failures.is_empty() { "PASS" } else { "FAIL" };
        let mut err = std::io::stderr().lock();
        let _ = writeln!(err, "[{status}] criterion {id}: {name} ({summary}, {:.2?})", start.elapsed());
        for f in &self.failures {
            let _ = writeln!(err, "    {f}");
        }
        drop(err);
        assert!(self.failures.is_empty(), "criterion {id} failed: {:?}", self.failures);
    }
}

fn correlated(report: &SolveReport) -> &CorrelatedDistribution {
    match &report.distribution {
        Distribution::Correlated(d) => d,
        Distribution::Exchangeable(_) => panic!("expected a correlated distribution"),
    }
}

fn random_game(seed: u64, kind: u64) -> GameInstance {
    let mut r = rng(seed.wrapping_mul(31).wrapping_add(kind));
    let n = r.gen_range(2..=4);
    match kind % 3 {
        0 => random_normal_form(seed, &random_action_counts(&mut r, n, 3)).unwrap(),
        1 => random_tree_polymatrix(seed, &random_action_counts(&mut r, n, 3)).unwrap(),
        _ => random_singleton_congestion(seed, n, r.gen_range(1..=3)).unwrap(),
    }
}

fn sw(n: usize, direction: Direction) -> ObjectiveSpec {
    ObjectiveSpec::social_welfare(n, direction)
}

#[test]
fn criterion_1_oracle_identity() {
    let start = Instant::now();
    let mut out = Outcome::new();
    for case in 0..200u64 {
        let game = random_game(1000 + case, case);
        let mut r = rng(case);
        let s = random_profile(&mut r, &game);
        let zero = DeviationPlan::zeros_for(&game);
        let a = dasw_value(&game, &zero, &s).unwrap();
        let b = game.social_welfare(&s).unwrap();
        out.check(a == b, || format!("case {case}: dasw(0) = {a}, welfare = {b}"));
    }
    for case in 0..200u64 {
        let game = random_game(5000 + case, case);
        let mut r = rng(7000 + case);
        let y = random_plan(&mut r, &game, 3.0);
        let s = random_profile(&mut r, &game);
        let inner: f64 = game
            .ce_column(&s)
            .unwrap()
            .iter()
            .map(|(d, a)| a * y.get(d.player, d.from, d.to))
            .sum();
        let want = game.social_welfare(&s).unwrap() + inner;
        let got = dasw_value(&game, &y, &s).unwrap();
        out.check((got - want).abs() <= 1e-9, || format!("case {case}: {got} vs {want}"));
        let reference = ref_weighted_dasw(&game, &y, &vec![1.0; game.players()], &s);
        out.check((got - reference).abs() <= 1e-9, || format!("case {case}: {got} vs definition {reference}"));
    }
    out.time_limit(start.elapsed(), Duration::from_secs(10));
    out.finish(1, "oracle identity", start, "400 cases".into());
}

#[test]
fn criterion_2_coarse_reduction() {
    let start = Instant::now();
    let mut out = Outcome::new();
    for case in 0..200u64 {
        let game = random_game(9000 + case, case);
        let mut r = rng(11_000 + case);
        let y = random_coarse_plan(&mut r, &game, 3.0);
        let s = random_profile(&mut r, &game);
        let a = coarse_dasw_value(&game, &y, &s).unwrap();
        let b = dasw_value(&game, &coarse_to_ce_plan(&y), &s).unwrap();
        out.check((a - b).abs() <= 1e-9, || format!("case {case}: {a} vs {b}"));
    }
    out.finish(2, "coarse reduction", start, "200 cases".into());
}

#[test]
fn criterion_3_tree_polymatrix_oracle() {
    let start = Instant::now();
    let mut out = Outcome::new();
    let mut profiles_checked = 0usize;
    for tree in 0..20u64 {
        let mut r = rng(20_000 + tree);
        let n = r.gen_range(2..=6);
        let game = random_tree_polymatrix(20_000 + tree, &random_action_counts(&mut r, n, 3)).unwrap();
        let Representation::Polymatrix(pm) = game.representation() else { unreachable!() };
        for round in 0..5 {
            let theta = random_weights(&mut r, n);
            let y = random_plan(&mut r, &game, 2.0);
            let fast = oracle_tree_polymatrix(pm, &theta, &y, 0.0, 1e-7).unwrap();
            let slow = oracle_bruteforce(&game, &theta, &y, 0.0, 1e-7, 1 << 20).unwrap();
            out.check((fast.value - slow.value).abs() <= 1e-9, || {
                format!("tree {tree} round {round}: tree {} vs brute force {}", fast.value, slow.value)
            });
            let adjusted: GameInstance = polymatrix_adjust(pm, &theta, &y).unwrap().into();
            for s in profiles(&game) {
                let a = adjusted.social_welfare(&s).unwrap();
                let b = weighted_dasw_value(&game, &y, &theta, &s).unwrap();
                out.check((a - b).abs() <= 1e-9, || format!("tree {tree} round {round} {s:?}: {a} vs {b}"));
                profiles_checked += 1;
            }
        }
    }
    out.time_limit(start.elapsed(), Duration::from_secs(30));
    out.finish(3, "tree polymatrix oracle", start, format!("100 pricings, {profiles_checked} adjusted profiles"));
}

#[test]
fn criterion_4_congestion_oracle() {
    let start = Instant::now();
    let mut out = Outcome::new();
    for g in 0..20u64 {
        let mut r = rng(30_000 + g);
        let n = r.gen_range(1..=5);
        let k = r.gen_range(1..=3);
        let game = random_singleton_congestion(30_000 + g, n, k).unwrap();
        let scg = as_scg(&game);
        for round in 0..5 {
            let direction = if round % 2 == 0 { Direction::Max } else { Direction::Min };
            let lambda = direction.sign();
            let per_action: Vec<f64> = (0..k).map(|_| 2.0 * r.gen::<f64>()).collect();
            let (counts, value) = scg_coarse_opt(scg, &per_action, direction).unwrap();
            let formula_best = count_vectors(n, k)
                .iter()
                .map(|c| ref_scg_count_value(scg, &per_action, lambda, c))
                .fold(f64::NEG_INFINITY, f64::max);
            out.check(value == formula_best, || format!("game {g} round {round}: DP {value} vs enumeration {formula_best}"));
            out.check(ref_scg_count_value(scg, &per_action, lambda, &counts) == value, || {
                format!("game {g} round {round}: witness {counts:?} does not attain {value}")
            });
            let y = CoarseDeviationPlan::symmetric(n, &per_action).unwrap();
            let profile_best = if direction == Direction::Max {
                profiles(&game)
                    .iter()
                    .map(|s| coarse_dasw_value(&game, &y, s).unwrap())
                    .fold(f64::NEG_INFINITY, f64::max)
            } else {
                let lifted = coarse_to_ce_plan(&y);
                let theta = vec![-1.0; n];
                profiles(&game)
                    .iter()
                    .map(|s| weighted_dasw_value(&game, &lifted, &theta, s).unwrap())
                    .fold(f64::NEG_INFINITY, f64::max)
            };
            out.check((value - profile_best).abs() <= 1e-9, || {
                format!("game {g} round {round}: DP {value} vs profile enumeration {profile_best}")
            });
        }
    }
    out.finish(4, "singleton congestion oracle", start, "100 pricings".into());
}

fn support_bound(game: &GameInstance) -> usize {
    game.incentive_rows() + 1
}

#[test]
fn criterion_5_end_to_end_ce() {
    let start = Instant::now();
    let cfg = SolverConfig::default();
    let brute = BruteForceOracle::default();
    let mut out = Outcome::new();
    for (name, game, want) in [("prisoners dilemma", prisoners_dilemma(), 2.0), ("chicken", chicken(), 10.5)] {
        let obj = sw(2, Direction::Max);
        let full = solve_full_lp(&game, &obj, Concept::Ce, &cfg).unwrap();
        let cg = solve_optimal_ce(&game, &obj, &brute, &cfg).unwrap();
        out.check((full.value - want).abs() <= 1e-9, || format!("{name}: full LP {} vs {want}", full.value));
        out.check((cg.value - want).abs() <= 1e-6, || format!("{name}: colgen {} vs {want}", cg.value));
    }
    let mut worst_gap = 0.0f64;
    for case in 0..50u64 {
        let game = random_normal_form(40_000 + case, &[3, 3, 3]).unwrap();
        let direction = if case % 5 == 4 { Direction::Min } else { Direction::Max };
        let obj = sw(3, direction);
        let full = solve_full_lp(&game, &obj, Concept::Ce, &cfg).unwrap();
        let cg = solve_optimal_ce(&game, &obj, &brute, &cfg).unwrap();
        let gap = (full.value - cg.value).abs();
        worst_gap = worst_gap.max(gap);
        out.check(gap <= 1e-6, || format!("case {case}: colgen {} vs full {}", cg.value, full.value));
        let dist = correlated(&cg);
        let v = check_ce(&game, dist).unwrap();
        out.check(v.min_ce_value >= -1e-7, || format!("case {case}: min CE value {}", v.min_ce_value));
        out.check(dist.len() <= support_bound(&game), || format!("case {case}: support {}", dist.len()));
    }
    out.time_limit(start.elapsed(), Duration::from_secs(60));
    out.finish(5, "end-to-end CE", start, format!("2 fixtures + 50 games, worst gap {worst_gap:.1e}"));
}

#[test]
fn criterion_6_end_to_end_cce_and_maxmin() {
    let start = Instant::now();
    let cfg = SolverConfig::default();
    let brute = BruteForceOracle::default();
    let mut out = Outcome::new();
    let obj = sw(2, Direction::Max);
    for (name, game, cce_want, maxmin_want) in [("prisoners dilemma", prisoners_dilemma(), 2.0, 1.0)] {
        let cce = solve_optimal_cce(&game, &obj, &brute, &cfg).unwrap();
        let mm = solve_maxmin_ce(&game, &brute, &cfg).unwrap();
        out.check((cce.value - cce_want).abs() <= 1e-6, || format!("{name}: CCE {}", cce.value));
        out.check((mm.value - maxmin_want).abs() <= 1e-6, || format!("{name}: max-min {}", mm.value));
    }
    let mut worst_gap = 0.0f64;
    for case in 0..50u64 {
        let game = random_normal_form(50_000 + case, &[3, 3, 3]).unwrap();
        let obj = sw(3, Direction::Max);

        let cce_full = solve_full_lp(&game, &obj, Concept::Cce, &cfg).unwrap();
        let cce = solve_optimal_cce(&game, &obj, &brute, &cfg).unwrap();
        let gap = (cce.value - cce_full.value).abs();
        worst_gap = worst_gap.max(gap);
        out.check(gap <= 1e-6, || format!("case {case}: CCE colgen {} vs full {}", cce.value, cce_full.value));
        let d = correlated(&cce);
        let v = check_cce(&game, d).unwrap();
        out.check(v.min_cce_value >= -1e-7, || format!("case {case}: min CCE value {}", v.min_cce_value));
        out.check(d.len() <= support_bound(&game), || format!("case {case}: CCE support {}", d.len()));

        let mm_full = solve_full_lp(&game, &obj, Concept::Maxmin, &cfg).unwrap();
        let mm = solve_maxmin_ce(&game, &brute, &cfg).unwrap();
        let gap = (mm.value - mm_full.value).abs();
        worst_gap = worst_gap.max(gap);
        out.check(gap <= 1e-6, || format!("case {case}: max-min colgen {} vs full {}", mm.value, mm_full.value));
        let d = correlated(&mm);
        let v = check_ce(&game, d).unwrap();
        out.check(v.min_ce_value >= -1e-7, || format!("case {case}: max-min CE value {}", v.min_ce_value));
        out.check(d.len() <= support_bound(&game), || format!("case {case}: max-min support {}", d.len()));

        let ce = solve_optimal_ce(&game, &obj, &brute, &cfg).unwrap();
        out.check(cce.value >= ce.value - 1e-6, || format!("case {case}: CCE {} below CE {}", cce.value, ce.value));
        let eu = expected_utilities(&game, correlated(&ce)).unwrap();
        let floor = eu.iter().copied().fold(f64::INFINITY, f64::min);
        out.check(mm.value >= floor - 1e-6, || format!("case {case}: max-min {} below {floor}", mm.value));
    }
    out.time_limit(start.elapsed(), Duration::from_secs(60));
    out.finish(6, "end-to-end CCE and max-min", start, format!("1 fixture + 50 games, worst gap {worst_gap:.1e}"));
}

#[test]
fn criterion_7_symmetric_congestion_cce() {
    let start = Instant::now();
    let cfg = SolverConfig::default();
    let mut out = Outcome::new();
    let mut worst_gap = 0.0f64;
    for case in 0..20u64 {
        let mut r = rng(60_000 + case);
        let n = r.gen_range(2..=5);
        let k = r.gen_range(1..=3);
        let game = random_singleton_congestion(60_000 + case, n, k).unwrap();
        let direction = if case % 4 == 3 { Direction::Min } else { Direction::Max };
        let obj = sw(n, direction);
        let sym = solve_scg_cce_symmetric(&game, &obj, &cfg).unwrap();
        let full = solve_full_lp(&game, &obj, Concept::Cce, &cfg).unwrap();
        let gap = (sym.value - full.value).abs();
        worst_gap = worst_gap.max(gap);
        out.check(gap <= 1e-6, || format!("case {case}: symmetric {} vs full {}", sym.value, full.value));
        let Distribution::Exchangeable(xc) = &sym.distribution else { panic!("expected counts") };
        let dist = expand_exchangeable(&game, xc, 1 << 20).unwrap();
        let v = check_cce(&game, &dist).unwrap();
        out.check(v.min_cce_value >= -1e-7, || format!("case {case}: min CCE value {}", v.min_cce_value));
        let rows = cce_constraint_values(&game, &dist).unwrap();
        for p in 1..n {
            for j in 0..k {
                let (a, b) = (rows[0][j], rows[p][j]);
                out.check((a - b).abs() <= 1e-9, || format!("case {case}: player {p} action {j}: {b} vs {a}"));
            }
        }
    }
    out.finish(7, "symmetric congestion CCE", start, format!("20 games, worst gap {worst_gap:.1e}"));
}

#[test]
fn criterion_8_tree_polymatrix_end_to_end() {
    let start = Instant::now();
    let cfg = SolverConfig::default();
    let mut out = Outcome::new();
    let mut slowest = Duration::ZERO;
    let mut worst_gap = 0.0f64;
    for case in 0..12u64 {
        let mut r = rng(70_000 + case);
        let n = r.gen_range(2..=5);
        let counts = if case < 4 { vec![3; 5] } else { random_action_counts(&mut r, n, 3) };
        let game = random_tree_polymatrix(70_000 + case, &counts).unwrap();
        let direction = if case % 3 == 2 { Direction::Min } else { Direction::Max };
        let theta: Vec<f64> = (0..counts.len()).map(|_| r.gen_range(0.5..2.0)).collect();
        let obj = ObjectiveSpec::new(PlayerWeights::new(theta).unwrap(), direction);
        let t0 = Instant::now();
        let cg = solve_optimal_ce(&game, &obj, &TreePolymatrixOracle, &cfg).unwrap();
        let took = t0.elapsed();
        slowest = slowest.max(took);
        out.check(took < Duration::from_secs(5), || format!("case {case}: took {took:?}"));
        let full = solve_full_lp(&game, &obj, Concept::Ce, &cfg).unwrap();
        let gap = (cg.value - full.value).abs();
        worst_gap = worst_gap.max(gap);
        out.check(gap <= 1e-6, || format!("case {case}: tree colgen {} vs full {}", cg.value, full.value));
        let v = check_ce(&game, correlated(&cg)).unwrap();
        out.check(v.min_ce_value >= -1e-7, || format!("case {case}: min CE value {}", v.min_ce_value));
    }
    out.finish(
        8,
        "tree polymatrix end-to-end",
        start,
        format!("12 trees, worst gap {worst_gap:.1e}, slowest solve {slowest:.2?}"),
    );
}

#[test]
fn criterion_9_determinism() {
    let start = Instant::now();
    let cfg = SolverConfig::default();
    let mut out = Outcome::new();
    let run = |seed: u64, kind: u64, concept: Concept| -> (String, String) {
        let game = random_game(seed, kind);
        let obj = sw(game.players(), Direction::Max);
        let report = optce_core::colgen::solve(&game, concept, &obj, Method::Colgen, OracleKind::Auto, &cfg).unwrap();
        let verification = match &report.distribution {
            Distribution::Correlated(d) => Some(check_ce(&game, d).unwrap()),
            Distribution::Exchangeable(_) => None,
        };
        (game_to_string(&game), solution_to_string(&report, verification.as_ref()))
    };
    let mut files = 0;
    for seed in 0..6u64 {
        for (kind, concept) in [(0, Concept::Ce), (1, Concept::Ce), (2, Concept::Cce), (0, Concept::Maxmin)] {
            let first = run(80_000 + seed, kind, concept);
            let second = run(80_000 + seed, kind, concept);
            out.check(first == second, || format!("seed {seed} kind {kind} {concept:?}: outputs differ"));
            files += 1;
        }
    }
    out.finish(9, "determinism", start, format!("{files} repeated solves"));
}
