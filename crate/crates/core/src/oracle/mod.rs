//! Deviation-adjusted social welfare and the pricing oracles built on it.
//!
//! For prices `y >= 0` on the incentive constraints and player weights `v`, the weighted
//! deviation-adjusted utility of player `p` at profile `s` is
//!
//! ```text
//! v_p u^p_s + sum_j y^p_{s_p, j} (u^p_s - u^p_{j s_-p})
//! ```
//!
//! and the adjusted welfare sums it over players. Maximizing the adjusted welfare over pure
//! profiles is exactly the pricing problem of the restricted master LPs in [`crate::colgen`]:
//! a profile whose adjusted welfare exceeds the master's normalization dual `t` is a column with
//! positive reduced value.

mod brute;
mod plan;
mod scg;
mod tree;

pub use brute::{oracle_bruteforce, oracle_bruteforce_coarse, BruteForceOracle};
pub use plan::{coarse_to_ce_plan, CoarseDeviationPlan, DeviationPlan, PlayerWeights};
pub use scg::{scg_coarse_opt, scg_coarse_opt_weighted, scg_count_value, scg_deviation_gains};
pub use tree::{oracle_tree_polymatrix, polymatrix_adjust, tree_polymatrix_opt, TreePolymatrixOracle};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::game::{GameInstance, PureProfile};

/// Default strict-threshold slack used by all oracles.
pub const DEFAULT_PRICING_EPS: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    #[default]
    Max,
    Min,
}

impl Direction {
    /// `+1` for max, `-1` for min.
    pub fn sign(self) -> f64 {
        match self {
            Direction::Max => 1.0,
            Direction::Min => -1.0,
        }
    }
}

/// Result of a threshold query: whether some witness beats `t + eps`, the best witness, and its value.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleAnswer<W = PureProfile> {
    pub found: bool,
    pub witness: W,
    pub value: f64,
}

impl<W> OracleAnswer<W> {
    pub(crate) fn from_best(witness: W, value: f64, t: f64, eps: f64) -> Self {
        OracleAnswer {
            found: value > t + eps,
            witness,
            value,
        }
    }
}

/// Pricing for the CE-family masters: maximize `sum_p theta_p u^p_s + <U_s, y>` over profiles.
pub trait PricingOracle {
    fn price(
        &self,
        game: &GameInstance,
        weights: &[f64],
        y: &DeviationPlan,
        t: f64,
        eps: f64,
    ) -> Result<OracleAnswer>;

    fn name(&self) -> &'static str;
}

/// Pricing for the CCE master: maximize `sum_p theta_p u^p_s + <C_s, y>` over profiles.
pub trait CoarsePricingOracle {
    fn price_coarse(
        &self,
        game: &GameInstance,
        weights: &[f64],
        y: &CoarseDeviationPlan,
        t: f64,
        eps: f64,
    ) -> Result<OracleAnswer>;

    fn name(&self) -> &'static str;
}

fn check_weights(game: &GameInstance, weights: &[f64]) -> Result<()> {
    if weights.len() != game.players() {
        return Err(invalid("weight vector length must equal the player count"));
    }
    Ok(())
}

/// Adjusted welfare on a validated profile; split into base and adjustment so that `y = 0`
/// reproduces the plain weighted welfare bit for bit.
pub(crate) fn weighted_dasw_unchecked(game: &GameInstance, y: &DeviationPlan, weights: &[f64], s: &[usize]) -> f64 {
    let mut dev = Vec::new();
    let mut base = 0.0;
    let mut adjustment = 0.0;
    for p in 0..game.players() {
        dev.resize(game.action_counts()[p], 0.0);
        game.deviation_utilities(p, s, &mut dev);
        let u = dev[s[p]];
        base += weights[p] * u;
        for (j, (&price, &uj)) in y.row(p, s[p]).iter().zip(&dev).enumerate() {
            if j != s[p] {
                adjustment += price * (u - uj);
            }
        }
    }
    base + adjustment
}

pub(crate) fn coarse_dasw_unchecked(
    game: &GameInstance,
    y: &CoarseDeviationPlan,
    weights: &[f64],
    s: &[usize],
) -> f64 {
    let mut dev = Vec::new();
    let mut base = 0.0;
    let mut adjustment = 0.0;
    for p in 0..game.players() {
        dev.resize(game.action_counts()[p], 0.0);
        game.deviation_utilities(p, s, &mut dev);
        let u = dev[s[p]];
        base += weights[p] * u;
        for (j, (&price, &uj)) in y.row(p).iter().zip(&dev).enumerate() {
            if j != s[p] {
                adjustment += price * (u - uj);
            }
        }
    }
    base + adjustment
}

/// Deviation-adjusted social welfare `w_s + <U_s, y>`.
pub fn dasw_value(game: &GameInstance, y: &DeviationPlan, s: &PureProfile) -> Result<f64> {
    weighted_dasw_value(game, y, &vec![1.0; game.players()], s)
}

/// Weighted deviation-adjusted welfare: the weights scale only the base utilities.
pub fn weighted_dasw_value(game: &GameInstance, y: &DeviationPlan, weights: &[f64], s: &PureProfile) -> Result<f64> {
    y.check_game(game)?;
    check_weights(game, weights)?;
    game.validate_profile(s.actions())?;
    Ok(weighted_dasw_unchecked(game, y, weights, s.actions()))
}

/// Coarse deviation-adjusted welfare `w_s + <C_s, y>`.
pub fn coarse_dasw_value(game: &GameInstance, y: &CoarseDeviationPlan, s: &PureProfile) -> Result<f64> {
    y.check_game(game)?;
    game.validate_profile(s.actions())?;
    Ok(coarse_dasw_unchecked(game, y, &vec![1.0; game.players()], s.actions()))
}
