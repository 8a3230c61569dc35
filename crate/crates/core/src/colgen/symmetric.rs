//! Symmetric CCE master for singleton congestion games.
//!
//! Averaging a profile's coarse column over the `n` cyclic shifts of the players gives a column
//! that is identical for every player and depends only on the count vector. The master therefore
//! has one row per action, its duals are player-symmetric prices, and the count-vector DP prices
//! it exactly.

use super::master::{self, ColumnData, MasterDuals, Pricer};
use super::{Concept, Method, ObjectiveSpec, SolveReport, SolverConfig};
use crate::distribution::{Distribution, ExchangeableDistribution};
use crate::error::{invalid, Error, Result};
use crate::game::{CountVector, GameInstance, Representation, SingletonCongestionGame};
use crate::oracle::{scg_coarse_opt_weighted, scg_deviation_gains, OracleAnswer};

struct ScgPricer<'a> {
    game: &'a SingletonCongestionGame,
    lambda: f64,
}

impl Pricer for ScgPricer<'_> {
    type Key = CountVector;

    fn incentive_rows(&self) -> usize {
        self.game.actions()
    }

    fn column(&self, c: &CountVector) -> Result<ColumnData> {
        let incentive = scg_deviation_gains(self.game, c)
            .into_iter()
            .enumerate()
            .filter(|&(_, g)| g != 0.0)
            .collect();
        Ok(ColumnData {
            objective: self.lambda * self.game.count_welfare(c.counts()),
            incentive,
            players: Vec::new(),
        })
    }

    fn initial(&self) -> Result<CountVector> {
        let zero = vec![0.0; self.game.actions()];
        Ok(scg_coarse_opt_weighted(self.game, &zero, self.lambda)?.0)
    }

    fn price(&self, duals: &MasterDuals, eps: f64) -> Result<OracleAnswer<CountVector>> {
        let (c, value) = scg_coarse_opt_weighted(self.game, &duals.incentive, self.lambda)?;
        Ok(OracleAnswer {
            found: value > duals.t + eps,
            witness: c,
            value,
        })
    }
}

/// Per-player coarse constraint values `sum_c x_c g_j(c) / n` of an exchangeable distribution.
pub fn symmetric_constraint_values(game: &SingletonCongestionGame, dist: &ExchangeableDistribution) -> Vec<f64> {
    let n = game.players() as f64;
    let mut out = vec![0.0; game.actions()];
    for (c, x) in dist.support() {
        for (o, g) in out.iter_mut().zip(scg_deviation_gains(game, c)) {
            *o += x * g / n;
        }
    }
    out
}

/// Optimal CCE of a singleton congestion game over exchangeable distributions. The objective
/// must weight all players equally.
pub fn solve_scg_cce_symmetric(
    game: &GameInstance,
    objective: &ObjectiveSpec,
    cfg: &SolverConfig,
) -> Result<SolveReport> {
    let Representation::SingletonCongestion(scg) = game.representation() else {
        return Err(Error::UnsupportedStructure(
            "the symmetric solver needs a singleton congestion game".into(),
        ));
    };
    objective.check(game)?;
    let w = objective.weights.as_slice();
    if w.iter().any(|&x| x != w[0]) {
        return Err(invalid("the symmetric solver needs equal weights for all players"));
    }
    let pricer = ScgPricer {
        game: scg,
        lambda: objective.direction.sign() * w[0],
    };
    let out = master::run(&pricer, &cfg.master_settings(game, None))?;
    let dist = ExchangeableDistribution::new(scg.players(), out.support)?;
    let value = w[0]
        * dist
            .support()
            .iter()
            .map(|(c, x)| x * scg.count_welfare(c.counts()))
            .sum::<f64>();
    let max_violation = symmetric_constraint_values(scg, &dist)
        .into_iter()
        .fold(0.0, |acc: f64, v| acc.max(-v));
    Ok(SolveReport {
        concept: Concept::Cce,
        objective: objective.clone(),
        value,
        distribution: Distribution::Exchangeable(dist),
        method: Method::Colgen,
        oracle: "scg-symmetric",
        iterations: out.iterations,
        oracle_calls: out.oracle_calls,
        penalty: out.penalty,
        max_violation,
        duality_gap: (out.best_priced - out.dual_bound).max(0.0),
    })
}
