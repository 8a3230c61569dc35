//! Benchmark fixtures.

use optce_core::gen::{random_normal_form, random_singleton_congestion, random_tree_polymatrix};
use optce_core::{DeviationPlan, GameInstance};

pub fn normal_form(players: usize, actions: usize) -> GameInstance {
    random_normal_form(1, &vec![actions; players]).expect("valid sizes")
}

pub fn tree(players: usize, actions: usize) -> GameInstance {
    random_tree_polymatrix(2, &vec![actions; players]).expect("valid sizes")
}

pub fn congestion(players: usize, resources: usize) -> GameInstance {
    random_singleton_congestion(3, players, resources).expect("valid sizes")
}

/// Deterministic dense prices `y^p_ij = 0.1 (1 + (p + i + j) mod 3)`.
pub fn prices(game: &GameInstance) -> DeviationPlan {
    let mut y = DeviationPlan::zeros_for(game);
    for (p, &m) in game.action_counts().iter().enumerate() {
        for i in 0..m {
            for j in (0..m).filter(|&j| j != i) {
                y.set(p, i, j, 0.1 * (1 + (p + i + j) % 3) as f64).expect("in range");
            }
        }
    }
    y
}
