use super::{
    check_weights, coarse_dasw_unchecked, weighted_dasw_unchecked, CoarseDeviationPlan, CoarsePricingOracle,
    DeviationPlan, OracleAnswer, PricingOracle,
};
use crate::error::{invalid, Result};
use crate::game::{GameInstance, PureProfile, DEFAULT_PROFILE_CAP};

/// Exhaustive maximization; the first maximizer in lexicographic order wins ties.
pub(crate) fn argmax_profiles(
    game: &GameInstance,
    cap: u128,
    mut value: impl FnMut(&[usize]) -> f64,
) -> Result<(PureProfile, f64)> {
    let mut best: Option<(PureProfile, f64)> = None;
    for s in game.enumerate_profiles(cap)? {
        let v = value(s.actions());
        if best.as_ref().map_or(true, |(_, b)| v > *b) {
            best = Some((s, v));
        }
    }
    best.ok_or_else(|| invalid("game has no profiles"))
}

/// Does some profile have weighted deviation-adjusted welfare above `t + eps`?
pub fn oracle_bruteforce(
    game: &GameInstance,
    weights: &[f64],
    y: &DeviationPlan,
    t: f64,
    eps: f64,
    cap: u128,
) -> Result<OracleAnswer> {
    y.check_game(game)?;
    check_weights(game, weights)?;
    let (witness, value) = argmax_profiles(game, cap, |s| weighted_dasw_unchecked(game, y, weights, s))?;
    Ok(OracleAnswer::from_best(witness, value, t, eps))
}

/// Coarse counterpart of [`oracle_bruteforce`].
pub fn oracle_bruteforce_coarse(
    game: &GameInstance,
    weights: &[f64],
    y: &CoarseDeviationPlan,
    t: f64,
    eps: f64,
    cap: u128,
) -> Result<OracleAnswer> {
    y.check_game(game)?;
    check_weights(game, weights)?;
    let (witness, value) = argmax_profiles(game, cap, |s| coarse_dasw_unchecked(game, y, weights, s))?;
    Ok(OracleAnswer::from_best(witness, value, t, eps))
}

/// Enumerates every profile. Works for any representation up to the profile cap.
#[derive(Debug, Clone, Copy)]
pub struct BruteForceOracle {
    pub profile_cap: u128,
}

impl Default for BruteForceOracle {
    fn default() -> Self {
        BruteForceOracle {
            profile_cap: DEFAULT_PROFILE_CAP,
        }
    }
}

impl PricingOracle for BruteForceOracle {
    fn price(&self, game: &GameInstance, weights: &[f64], y: &DeviationPlan, t: f64, eps: f64) -> Result<OracleAnswer> {
        oracle_bruteforce(game, weights, y, t, eps, self.profile_cap)
    }

    fn name(&self) -> &'static str {
        "bruteforce"
    }
}

impl CoarsePricingOracle for BruteForceOracle {
    fn price_coarse(
        &self,
        game: &GameInstance,
        weights: &[f64],
        y: &CoarseDeviationPlan,
        t: f64,
        eps: f64,
    ) -> Result<OracleAnswer> {
        oracle_bruteforce_coarse(game, weights, y, t, eps, self.profile_cap)
    }

    fn name(&self) -> &'static str {
        "bruteforce"
    }
}
