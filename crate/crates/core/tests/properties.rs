mod common;

use common::*;
use optce_core::colgen::{solve_full_lp, symmetric_constraint_values};
use optce_core::game::{count_vector, count_vectors, profiles_in_class, SingletonCongestionGame};
use optce_core::gen::{random_normal_form, random_singleton_congestion, random_tree_polymatrix, rng};
use optce_core::oracle::{
    coarse_dasw_value, coarse_to_ce_plan, dasw_value, oracle_bruteforce, oracle_tree_polymatrix, polymatrix_adjust,
    scg_coarse_opt_weighted, scg_count_value, weighted_dasw_value,
};
use optce_core::verify::{cce_constraint_values, check_cce, expand_exchangeable, expected_utilities};
use optce_core::{
    CoarseDeviationPlan, Concept, CountVector, Direction, ExchangeableDistribution, GameInstance, ObjectiveSpec,
    PlayerWeights, PureProfile, Representation, SolverConfig,
};
use proptest::prelude::*;
use rand::Rng;

fn any_game(seed: u64, kind: u8) -> GameInstance {
    let mut r = rng(seed ^ 0x9e37_79b9);
    let n = r.gen_range(2..=4);
    match kind % 3 {
        0 => random_normal_form(seed, &random_action_counts(&mut r, n, 3)).unwrap(),
        1 => random_tree_polymatrix(seed, &random_action_counts(&mut r, n, 3)).unwrap(),
        _ => random_singleton_congestion(seed, n, r.gen_range(1..=3)).unwrap(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dasw_matches_definition(seed in any::<u64>(), kind in 0u8..3, scale in 0.0f64..5.0) {
        let game = any_game(seed, kind);
        let mut r = rng(seed);
        let y = random_plan(&mut r, &game, scale);
        let theta = random_weights(&mut r, game.players());
        let s = random_profile(&mut r, &game);
        let got = weighted_dasw_value(&game, &y, &theta, &s).unwrap();
        prop_assert!((got - ref_weighted_dasw(&game, &y, &theta, &s)).abs() <= 1e-9);
    }

    #[test]
    fn dasw_is_welfare_plus_column_inner_product(seed in any::<u64>(), kind in 0u8..3) {
        let game = any_game(seed, kind);
        let mut r = rng(seed);
        let y = random_plan(&mut r, &game, 2.0);
        let s = random_profile(&mut r, &game);
        let inner: f64 = game
            .ce_column(&s)
            .unwrap()
            .iter()
            .map(|(d, a)| a * y.get(d.player, d.from, d.to))
            .sum();
        let w = game.social_welfare(&s).unwrap();
        prop_assert!((dasw_value(&game, &y, &s).unwrap() - (w + inner)).abs() <= 1e-9);
    }

    #[test]
    fn dasw_is_affine_in_prices(seed in any::<u64>(), kind in 0u8..3, a in 0.0f64..3.0, b in 0.0f64..3.0) {
        let game = any_game(seed, kind);
        let mut r = rng(seed);
        let y1 = random_plan(&mut r, &game, 1.0);
        let y2 = random_plan(&mut r, &game, 1.0);
        let s = random_profile(&mut r, &game);
        let mut mix = y1.clone();
        for (p, &m) in game.action_counts().iter().enumerate() {
            for i in 0..m {
                for j in 0..m {
                    if i != j {
                        mix.set(p, i, j, a * y1.get(p, i, j) + b * y2.get(p, i, j)).unwrap();
                    }
                }
            }
        }
        let w = game.social_welfare(&s).unwrap();
        let g1 = dasw_value(&game, &y1, &s).unwrap() - w;
        let g2 = dasw_value(&game, &y2, &s).unwrap() - w;
        let gm = dasw_value(&game, &mix, &s).unwrap() - w;
        prop_assert!((gm - (a * g1 + b * g2)).abs() <= 1e-9);
    }

    #[test]
    fn coarse_value_is_lifted_value(seed in any::<u64>(), kind in 0u8..3) {
        let game = any_game(seed, kind);
        let mut r = rng(seed);
        let y = random_coarse_plan(&mut r, &game, 3.0);
        let s = random_profile(&mut r, &game);
        let direct = coarse_dasw_value(&game, &y, &s).unwrap();
        prop_assert!((direct - dasw_value(&game, &coarse_to_ce_plan(&y), &s).unwrap()).abs() <= 1e-9);
        prop_assert!((direct - ref_coarse_dasw(&game, &y, &s)).abs() <= 1e-9);
    }

    #[test]
    fn polymatrix_agrees_with_its_normal_form(seed in any::<u64>()) {
        let game = any_game(seed, 1);
        let nf: GameInstance = game.to_normal_form(1 << 20).unwrap().into();
        for s in profiles(&game) {
            for p in 0..game.players() {
                prop_assert_eq!(game.utility(p, &s).unwrap(), nf.utility(p, &s).unwrap());
            }
        }
    }

    #[test]
    fn adjusted_polymatrix_welfare_is_dasw(seed in any::<u64>()) {
        let game = any_game(seed, 1);
        let Representation::Polymatrix(pm) = game.representation() else { unreachable!() };
        let mut r = rng(seed);
        let y = random_plan(&mut r, &game, 2.0);
        let theta = random_weights(&mut r, game.players());
        let adjusted: GameInstance = polymatrix_adjust(pm, &theta, &y).unwrap().into();
        for s in profiles(&game) {
            let want = ref_weighted_dasw(&game, &y, &theta, &s);
            prop_assert!((adjusted.social_welfare(&s).unwrap() - want).abs() <= 1e-9);
        }
        let tree = oracle_tree_polymatrix(pm, &theta, &y, 0.0, 1e-7).unwrap();
        let brute = oracle_bruteforce(&game, &theta, &y, 0.0, 1e-7, 1 << 20).unwrap();
        prop_assert!((tree.value - brute.value).abs() <= 1e-9);
        prop_assert!((ref_weighted_dasw(&game, &y, &theta, &tree.witness) - tree.value).abs() <= 1e-9);
    }

    #[test]
    fn scg_value_depends_only_on_counts(seed in any::<u64>(), lambda in -1.0f64..1.0) {
        let game = any_game(seed, 2);
        let scg = as_scg(&game);
        let mut r = rng(seed);
        let per_action: Vec<f64> = (0..scg.actions()).map(|_| 2.0 * r.gen::<f64>()).collect();
        let y = CoarseDeviationPlan::symmetric(scg.players(), &per_action).unwrap();
        let theta = vec![lambda; scg.players()];
        let lifted = coarse_to_ce_plan(&y);
        for c in count_vectors(scg.players(), scg.actions()) {
            let want = scg_count_value(scg, &per_action, lambda, &c).unwrap();
            for s in profiles_in_class(&c) {
                prop_assert!((weighted_dasw_value(&game, &lifted, &theta, &s).unwrap() - want).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn scg_utilities_are_permutation_invariant(seed in any::<u64>(), shift in 0usize..8) {
        let game = any_game(seed, 2);
        let n = game.players();
        for s in profiles(&game) {
            let mut rotated = s.actions().to_vec();
            rotated.rotate_left(shift % n);
            let t = PureProfile::new(rotated);
            for p in 0..n {
                let q = (p + n - shift % n) % n;
                prop_assert_eq!(game.utility(p, &s).unwrap(), game.utility(q, &t).unwrap());
            }
            prop_assert_eq!(count_vector(s.actions(), as_scg(&game).actions()).unwrap(),
                count_vector(t.actions(), as_scg(&game).actions()).unwrap());
        }
    }

    #[test]
    fn scg_dp_matches_enumeration(seed in any::<u64>(), lambda in -1.0f64..1.0) {
        let game = any_game(seed, 2);
        let scg = as_scg(&game);
        let mut r = rng(seed);
        let y: Vec<f64> = (0..scg.actions()).map(|_| 3.0 * r.gen::<f64>()).collect();
        let (c, v) = scg_coarse_opt_weighted(scg, &y, lambda).unwrap();
        prop_assert_eq!(v, ref_scg_best(scg, &y, lambda));
        prop_assert_eq!(ref_scg_count_value(scg, &y, lambda, &c), v);
    }

    #[test]
    fn exchangeable_constraints_match_expansion(seed in any::<u64>()) {
        let game = any_game(seed, 2);
        let scg = as_scg(&game);
        let mut r = rng(seed);
        let classes = count_vectors(scg.players(), scg.actions());
        let raw: Vec<f64> = classes.iter().map(|_| r.gen::<f64>() + 0.01).collect();
        let total: f64 = raw.iter().sum();
        let support: Vec<(CountVector, f64)> = classes.into_iter().zip(raw.iter().map(|x| x / total)).collect();
        let xc = ExchangeableDistribution::new(scg.players(), support).unwrap();
        let per_action = symmetric_constraint_values(scg, &xc);
        let dist = expand_exchangeable(&game, &xc, 1 << 20).unwrap();
        for row in cce_constraint_values(&game, &dist).unwrap() {
            for (a, b) in row.iter().zip(&per_action) {
                prop_assert!((a - b).abs() <= 1e-9);
            }
        }
    }
}

fn scg_game(players: usize, table: Vec<Vec<f64>>) -> GameInstance {
    SingletonCongestionGame::new(players, table).unwrap().into()
}

#[test]
fn expected_utilities_sum_to_objective() {
    for seed in 0..10 {
        let game = random_normal_form(seed, &[2, 3, 2]).unwrap();
        let mut r = rng(seed);
        let theta: Vec<f64> = (0..3).map(|_| r.gen::<f64>()).collect();
        let obj = ObjectiveSpec::new(PlayerWeights::new(theta.clone()).unwrap(), Direction::Max);
        let report = solve_full_lp(&game, &obj, Concept::Ce, &SolverConfig::default()).unwrap();
        let optce_core::Distribution::Correlated(dist) = &report.distribution else { unreachable!() };
        let eu = expected_utilities(&game, dist).unwrap();
        let weighted: f64 = eu.iter().zip(&theta).map(|(u, w)| u * w).sum();
        assert!((weighted - report.value).abs() <= 1e-9);
    }
}

#[test]
fn congestion_expansion_is_a_cce_when_counts_are() {
    let game = scg_game(3, vec![vec![3.0, 2.0, 1.0], vec![2.5, 1.0, 0.5]]);
    let obj = ObjectiveSpec::social_welfare(3, Direction::Max);
    let report = optce_core::colgen::solve_scg_cce_symmetric(&game, &obj, &SolverConfig::default()).unwrap();
    let optce_core::Distribution::Exchangeable(xc) = &report.distribution else { unreachable!() };
    let dist = expand_exchangeable(&game, xc, 1 << 20).unwrap();
    assert!(check_cce(&game, &dist).unwrap().min_cce_value >= -1e-7);
}
