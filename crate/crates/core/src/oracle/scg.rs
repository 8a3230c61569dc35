//! Coarse pricing for singleton congestion games under player-symmetric prices.
//!
//! With the same price `y_j` on deviation to `j` for every player, the coarse adjusted welfare
//! (with welfare weight `lambda`) depends on the profile only through its count vector and splits
//! into one term per action:
//!
//! ```text
//! c f^a(c) (lambda + sum_{j != a} y_j) - (n - c) f^a(c + 1) y_a,   c = c(a)
//! ```
//!
//! so a knapsack-style DP over actions and assigned players finds the best count vector.

use super::Direction;
use crate::error::{invalid, Result};
use crate::game::{CountVector, SingletonCongestionGame};

fn check_prices(game: &SingletonCongestionGame, y: &[f64]) -> Result<()> {
    if y.len() != game.actions() {
        return Err(invalid(format!("expected {} per-action prices, got {}", game.actions(), y.len())));
    }
    if y.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
        return Err(invalid("per-action prices must be finite and nonnegative"));
    }
    Ok(())
}

#[inline]
fn action_term(game: &SingletonCongestionGame, y: &[f64], lambda: f64, others: f64, a: usize, c: usize) -> f64 {
    let n = game.players();
    let used = if c > 0 { c as f64 * game.payoff(a, c) * (lambda + others) } else { 0.0 };
    // The (n - c) coefficient kills the f^a(n + 1) term, which is never read.
    let entering = if c < n { (n - c) as f64 * game.payoff(a, c + 1) * y[a] } else { 0.0 };
    used - entering
}

fn other_prices(y: &[f64]) -> Vec<f64> {
    (0..y.len())
        .map(|a| y.iter().enumerate().filter(|&(j, _)| j != a).map(|(_, v)| v).sum())
        .collect()
}

/// Coarse adjusted welfare of any profile with counts `c`, symmetric prices `y`, weight `lambda`.
pub fn scg_count_value(game: &SingletonCongestionGame, y: &[f64], lambda: f64, counts: &CountVector) -> Result<f64> {
    check_prices(game, y)?;
    if counts.counts().len() != game.actions() || counts.total() != game.players() {
        return Err(invalid("count vector does not fit the game"));
    }
    let others = other_prices(y);
    Ok((0..game.actions())
        .rev()
        .fold(0.0, |acc, a| action_term(game, y, lambda, others[a], a, counts[a]) + acc))
}

/// Best count vector for coarse pricing with welfare weight `lambda`; `O(k n^2)`.
/// Among optimal count vectors the lexicographically smallest is returned.
pub fn scg_coarse_opt_weighted(game: &SingletonCongestionGame, y: &[f64], lambda: f64) -> Result<(CountVector, f64)> {
    check_prices(game, y)?;
    let n = game.players();
    let k = game.actions();
    let others = other_prices(y);
    // suffix[a][r]: best total of actions a.. with r players still to place.
    let mut suffix = vec![vec![f64::NEG_INFINITY; n + 1]; k + 1];
    suffix[k][0] = 0.0;
    for a in (0..k).rev() {
        for r in 0..=n {
            suffix[a][r] = (0..=r)
                .map(|c| action_term(game, y, lambda, others[a], a, c) + suffix[a + 1][r - c])
                .fold(f64::NEG_INFINITY, f64::max);
        }
    }
    let mut counts = Vec::with_capacity(k);
    let mut left = n;
    for a in 0..k {
        let target = suffix[a][left];
        let c = (0..=left)
            .find(|&c| action_term(game, y, lambda, others[a], a, c) + suffix[a + 1][left - c] == target)
            .expect("DP optimum is attained");
        counts.push(c);
        left -= c;
    }
    Ok((CountVector::new(counts), suffix[0][n]))
}

/// [`scg_coarse_opt_weighted`] with the welfare weight set by direction: `+1` for max, `-1` for
/// min. The adjusted value is maximized in both cases.
pub fn scg_coarse_opt(game: &SingletonCongestionGame, y: &[f64], direction: Direction) -> Result<(CountVector, f64)> {
    scg_coarse_opt_weighted(game, y, direction.sign())
}

/// `g_j(c) = sum_{a != j} c(a) f^a(c(a)) - (n - c(j)) f^j(c(j) + 1)`: the coarse constraint
/// value for deviation `j`, summed over all players of any profile with counts `c`.
pub fn scg_deviation_gains(game: &SingletonCongestionGame, counts: &CountVector) -> Vec<f64> {
    let n = game.players();
    let used: Vec<f64> = (0..game.actions())
        .map(|a| if counts[a] > 0 { counts[a] as f64 * game.payoff(a, counts[a]) } else { 0.0 })
        .collect();
    (0..game.actions())
        .map(|j| {
            let rest: f64 = used.iter().enumerate().filter(|&(a, _)| a != j).map(|(_, v)| v).sum();
            let entering = if counts[j] < n {
                (n - counts[j]) as f64 * game.payoff(j, counts[j] + 1)
            } else {
                0.0
            };
            rest - entering
        })
        .collect()
}
