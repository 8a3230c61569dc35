//! Independent certification of distributions, recomputed from the game's utilities alone.

use serde::Serialize;

use crate::distribution::{CorrelatedDistribution, ExchangeableDistribution};
use crate::error::{invalid, Error, Result};
use crate::game::{profiles_in_class, profiles_with_counts, GameInstance, PureProfile, Representation};

pub const DEFAULT_EXPANSION_CAP: u128 = 100_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub probability_sum_residual: f64,
    /// Smallest incentive-constraint value over `(p, i, j)`, `i != j`, among recommendations `i`
    /// that `p` receives with positive probability (the others are identically zero); 0 if none.
    pub min_ce_value: f64,
    /// Smallest coarse-constraint value over all `(p, j)`.
    pub min_cce_value: f64,
    pub expected_utilities: Vec<f64>,
    pub social_welfare: f64,
}

impl VerificationReport {
    /// Largest CE violation, or zero.
    pub fn ce_violation(&self) -> f64 {
        (-self.min_ce_value).max(0.0)
    }

    pub fn cce_violation(&self) -> f64 {
        (-self.min_cce_value).max(0.0)
    }

    /// Weighted objective `sum_p w_p E[u^p]`.
    pub fn objective(&self, weights: &[f64]) -> f64 {
        weights.iter().zip(&self.expected_utilities).map(|(w, u)| w * u).sum()
    }
}

fn check_support(game: &GameInstance, dist: &CorrelatedDistribution) -> Result<()> {
    for (s, _) in dist.support() {
        game.validate_profile(s.actions())?;
    }
    Ok(())
}

fn deviate(s: &PureProfile, p: usize, j: usize) -> PureProfile {
    let mut v = s.actions().to_vec();
    v[p] = j;
    PureProfile::new(v)
}

fn evaluate(game: &GameInstance, dist: &CorrelatedDistribution) -> Result<VerificationReport> {
    check_support(game, dist)?;
    let n = game.players();
    let m = game.action_counts();
    let mut ce: Vec<Vec<Vec<f64>>> = m.iter().map(|&mp| vec![vec![0.0; mp]; mp]).collect();
    let mut cce: Vec<Vec<f64>> = m.iter().map(|&mp| vec![0.0; mp]).collect();
    let mut recommended: Vec<Vec<bool>> = m.iter().map(|&mp| vec![false; mp]).collect();
    let mut expected = vec![0.0; n];
    let mut total = 0.0;
    for (s, x) in dist.support() {
        total += x;
        for p in 0..n {
            if *x > 0.0 {
                recommended[p][s[p]] = true;
            }
            let u = game.utility(p, s)?;
            expected[p] += x * u;
            for j in 0..m[p] {
                if j == s[p] {
                    continue;
                }
                let gap = x * (u - game.utility(p, &deviate(s, p, j))?);
                ce[p][s[p]][j] += gap;
                cce[p][j] += gap;
            }
        }
    }
    let mut min_ce = f64::INFINITY;
    for (p, rows) in ce.iter().enumerate() {
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if i != j && recommended[p][i] {
                    min_ce = min_ce.min(v);
                }
            }
        }
    }
    let min_cce = cce.iter().flatten().copied().fold(f64::INFINITY, f64::min);
    Ok(VerificationReport {
        probability_sum_residual: (total - 1.0).abs(),
        min_ce_value: if min_ce.is_finite() { min_ce } else { 0.0 },
        min_cce_value: if min_cce.is_finite() { min_cce } else { 0.0 },
        social_welfare: expected.iter().sum(),
        expected_utilities: expected,
    })
}

/// Evaluates every incentive constraint `sum_{s: s_p = i} x_s (u^p_s - u^p_{j s_-p})` over the support.
pub fn check_ce(game: &GameInstance, dist: &CorrelatedDistribution) -> Result<VerificationReport> {
    evaluate(game, dist)
}

/// Evaluates every coarse constraint `sum_s x_s (u^p_s - u^p_{j s_-p})` over the support.
pub fn check_cce(game: &GameInstance, dist: &CorrelatedDistribution) -> Result<VerificationReport> {
    evaluate(game, dist)
}

/// Every coarse constraint value, indexed `[p][j]`.
pub fn cce_constraint_values(game: &GameInstance, dist: &CorrelatedDistribution) -> Result<Vec<Vec<f64>>> {
    check_support(game, dist)?;
    let mut out: Vec<Vec<f64>> = game.action_counts().iter().map(|&m| vec![0.0; m]).collect();
    for (s, x) in dist.support() {
        for (p, row) in out.iter_mut().enumerate() {
            let u = game.utility(p, s)?;
            for (j, v) in row.iter_mut().enumerate() {
                if j != s[p] {
                    *v += x * (u - game.utility(p, &deviate(s, p, j))?);
                }
            }
        }
    }
    Ok(out)
}

pub fn expected_utilities(game: &GameInstance, dist: &CorrelatedDistribution) -> Result<Vec<f64>> {
    check_support(game, dist)?;
    let mut out = vec![0.0; game.players()];
    for (s, x) in dist.support() {
        for (p, e) in out.iter_mut().enumerate() {
            *e += x * game.utility(p, s)?;
        }
    }
    Ok(out)
}

/// Spreads each count class uniformly over its `n! / prod c!` profiles.
pub fn expand_exchangeable(
    game: &GameInstance,
    xc: &ExchangeableDistribution,
    cap: u128,
) -> Result<CorrelatedDistribution> {
    let k = match game.representation() {
        Representation::SingletonCongestion(g) => g.actions(),
        _ => return Err(invalid("exchangeable distributions apply to singleton congestion games")),
    };
    if xc.players() != game.players() {
        return Err(invalid("distribution and game disagree on the player count"));
    }
    if let Some((c, _)) = xc.support().iter().find(|(c, _)| c.counts().len() != k) {
        return Err(invalid(format!("count vector {:?} has the wrong number of actions", c.counts())));
    }
    let total: u128 = xc.support().iter().map(|(c, _)| profiles_with_counts(c)).sum();
    if total > cap {
        return Err(Error::ResourceLimit {
            what: "exchangeable expansion",
            actual: total,
            limit: cap,
        });
    }
    let mut support = Vec::with_capacity(total as usize);
    for (c, x) in xc.support() {
        let profiles = profiles_in_class(c);
        let share = x / profiles.len() as f64;
        support.extend(profiles.into_iter().map(|s| (s, share)));
    }
    support.sort_by(|a, b| a.0.cmp(&b.0));
    CorrelatedDistribution::new(support)
}
