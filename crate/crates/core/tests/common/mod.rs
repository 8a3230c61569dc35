//! Reference implementations used by the integration tests. Everything here is written from the
//! definitions against the public game API, without going through the oracles under test.

#![allow(dead_code)]

use optce_core::game::{count_vectors, ProfileIter, SingletonCongestionGame};
use optce_core::{
    CoarseDeviationPlan, CountVector, DeviationPlan, GameInstance, NormalFormGame, PureProfile, Representation,
};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn deviate(s: &PureProfile, p: usize, j: usize) -> PureProfile {
    let mut v = s.actions().to_vec();
    v[p] = j;
    PureProfile::new(v)
}

pub fn profiles(game: &GameInstance) -> Vec<PureProfile> {
    ProfileIter::new(game.action_counts()).collect()
}

/// `sum_p theta_p u_p(s) + sum_p sum_j y^p_{s_p j} (u_p(s) - u_p(j, s_-p))`.
pub fn ref_weighted_dasw(game: &GameInstance, y: &DeviationPlan, theta: &[f64], s: &PureProfile) -> f64 {
    let mut total = 0.0;
    for p in 0..game.players() {
        let u = game.utility(p, s).unwrap();
        total += theta[p] * u;
        for j in 0..game.action_counts()[p] {
            total += y.get(p, s[p], j) * (u - game.utility(p, &deviate(s, p, j)).unwrap());
        }
    }
    total
}

pub fn ref_coarse_dasw(game: &GameInstance, y: &CoarseDeviationPlan, s: &PureProfile) -> f64 {
    let mut total = 0.0;
    for p in 0..game.players() {
        let u = game.utility(p, s).unwrap();
        total += u;
        for j in 0..game.action_counts()[p] {
            total += y.get(p, j) * (u - game.utility(p, &deviate(s, p, j)).unwrap());
        }
    }
    total
}

/// Count-space adjusted welfare of a singleton congestion game under symmetric prices,
/// summed over actions from the last one back.
pub fn ref_scg_count_value(game: &SingletonCongestionGame, y: &[f64], lambda: f64, c: &CountVector) -> f64 {
    let n = game.players();
    let mut acc = 0.0;
    for a in (0..game.actions()).rev() {
        let ca = c.counts()[a];
        let others: f64 = y.iter().enumerate().filter(|&(j, _)| j != a).map(|(_, v)| v).sum();
        let used = if ca > 0 { ca as f64 * game.payoff(a, ca) * (lambda + others) } else { 0.0 };
        let entering = if ca < n { (n - ca) as f64 * game.payoff(a, ca + 1) * y[a] } else { 0.0 };
        acc = (used - entering) + acc;
    }
    acc
}

pub fn ref_scg_best(game: &SingletonCongestionGame, y: &[f64], lambda: f64) -> f64 {
    count_vectors(game.players(), game.actions())
        .iter()
        .map(|c| ref_scg_count_value(game, y, lambda, c))
        .fold(f64::NEG_INFINITY, f64::max)
}

pub fn random_plan(rng: &mut ChaCha8Rng, game: &GameInstance, scale: f64) -> DeviationPlan {
    let mut y = DeviationPlan::zeros_for(game);
    for (p, &m) in game.action_counts().iter().enumerate() {
        for i in 0..m {
            for j in 0..m {
                if i != j && rng.gen_bool(0.7) {
                    y.set(p, i, j, scale * rng.gen::<f64>()).unwrap();
                }
            }
        }
    }
    y
}

pub fn random_coarse_plan(rng: &mut ChaCha8Rng, game: &GameInstance, scale: f64) -> CoarseDeviationPlan {
    let mut y = CoarseDeviationPlan::zeros_for(game);
    for (p, &m) in game.action_counts().iter().enumerate() {
        for j in 0..m {
            if rng.gen_bool(0.7) {
                y.set(p, j, scale * rng.gen::<f64>()).unwrap();
            }
        }
    }
    y
}

pub fn random_profile(rng: &mut ChaCha8Rng, game: &GameInstance) -> PureProfile {
    PureProfile::new(game.action_counts().iter().map(|&m| rng.gen_range(0..m)).collect())
}

pub fn random_weights(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

pub fn random_action_counts(rng: &mut ChaCha8Rng, players: usize, max_actions: usize) -> Vec<usize> {
    (0..players).map(|_| rng.gen_range(1..=max_actions)).collect()
}

pub fn prisoners_dilemma() -> GameInstance {
    let rows = [[3.0, 3.0], [0.0, 5.0], [5.0, 0.0], [1.0, 1.0]].map(|r| r.to_vec());
    NormalFormGame::from_rows(vec![2, 2], &rows).unwrap().into()
}

pub fn chicken() -> GameInstance {
    let rows = [[6.0, 6.0], [2.0, 7.0], [7.0, 2.0], [0.0, 0.0]].map(|r| r.to_vec());
    NormalFormGame::from_rows(vec![2, 2], &rows).unwrap().into()
}

pub fn as_scg(game: &GameInstance) -> &SingletonCongestionGame {
    match game.representation() {
        Representation::SingletonCongestion(g) => g,
        _ => panic!("not a singleton congestion game"),
    }
}
