//! Optimal CE, CCE and max-min CE solvers.
//!
//! Each solver is column generation on the primal LP over pure profiles: the restricted master
//! in [`master`] supplies dual prices, and a pricing oracle from [`crate::oracle`] either returns
//! a profile whose reduced value is positive or certifies that the duals are feasible for the
//! full dual LP, which proves the master's optimum is the global one.

mod full;
mod master;
mod outcome;
mod pricers;
mod symmetric;

pub use full::solve_full_lp;
pub use outcome::{optimal_outcome, price_of_anarchy};
pub use symmetric::{solve_scg_cce_symmetric, symmetric_constraint_values};

use serde::{Deserialize, Serialize};

use crate::distribution::{CorrelatedDistribution, Distribution};
use crate::error::{invalid, Error, Result};
use crate::game::{GameInstance, PureProfile, Representation, DEFAULT_PROFILE_CAP};
use crate::lp::LpOptions;
use crate::oracle::{
    BruteForceOracle, CoarsePricingOracle, Direction, PlayerWeights, PricingOracle, TreePolymatrixOracle,
    DEFAULT_PRICING_EPS,
};
use crate::verify::{check_ce, DEFAULT_EXPANSION_CAP};

use master::{MasterOutcome, MasterSettings};
use pricers::{CcePricer, CePricer};

/// Linear objective `sum_p theta_p E[u^p]`, maximized or minimized.
#[derive(Debug, Clone, PartialEq)]
pub struct ObjectiveSpec {
    pub weights: PlayerWeights,
    pub direction: Direction,
}

impl ObjectiveSpec {
    pub fn social_welfare(players: usize, direction: Direction) -> Self {
        ObjectiveSpec {
            weights: PlayerWeights::ones(players),
            direction,
        }
    }

    pub fn new(weights: PlayerWeights, direction: Direction) -> Self {
        ObjectiveSpec { weights, direction }
    }

    /// Weights of the equivalent maximization (negated for `Min`).
    pub fn max_form_weights(&self) -> Vec<f64> {
        let s = self.direction.sign();
        self.weights.as_slice().iter().map(|w| s * w).collect()
    }

    fn check(&self, game: &GameInstance) -> Result<()> {
        if self.weights.len() != game.players() {
            return Err(invalid("objective weights must have one entry per player"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Concept {
    Ce,
    Cce,
    Maxmin,
}

impl Concept {
    pub fn as_str(self) -> &'static str {
        match self {
            Concept::Ce => "ce",
            Concept::Cce => "cce",
            Concept::Maxmin => "maxmin",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Colgen,
    Full,
}

/// Which pricing oracle to use. `Auto` picks the tree DP for forest polymatrix games, the
/// symmetric count-vector solver for congestion-game CCE, and brute force otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleKind {
    Auto,
    Bruteforce,
    Tree,
    ScgSymmetric,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Strict pricing slack: a column enters only if its value exceeds `t + pricing_eps`.
    pub pricing_eps: f64,
    /// Slack values above this trigger a penalty doubling.
    pub master_tol: f64,
    /// Defaults to `10 (N + 1)` with `N = sum_p m_p^2`.
    pub max_iterations: Option<usize>,
    pub max_penalty_doublings: usize,
    pub profile_cap: u128,
    pub expansion_cap: u128,
    pub lp: LpOptions,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            pricing_eps: DEFAULT_PRICING_EPS,
            master_tol: 1e-8,
            max_iterations: None,
            max_penalty_doublings: 6,
            profile_cap: DEFAULT_PROFILE_CAP,
            expansion_cap: DEFAULT_EXPANSION_CAP,
            lp: LpOptions::default(),
        }
    }
}

impl SolverConfig {
    fn master_settings(&self, game: &GameInstance, maxmin_players: Option<usize>) -> MasterSettings {
        let (lo, hi) = game.utility_range();
        let n = game.incentive_rows();
        MasterSettings {
            maxmin_players,
            initial_penalty: 1.0 + (n + 1) as f64 * (hi - lo),
            max_doublings: self.max_penalty_doublings,
            max_iterations: self.max_iterations.unwrap_or(10 * (n + 1)),
            pricing_eps: self.pricing_eps,
            slack_tol: self.master_tol,
            lp: LpOptions {
                feasibility_tol: self.master_tol,
                ..self.lp
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub concept: Concept,
    pub objective: ObjectiveSpec,
    /// Objective of the returned distribution in the original direction (for max-min, the
    /// smallest expected utility).
    pub value: f64,
    pub distribution: Distribution,
    pub method: Method,
    pub oracle: &'static str,
    pub iterations: usize,
    pub oracle_calls: usize,
    /// Final penalty `M` on the master slacks (0 for full LPs).
    pub penalty: f64,
    /// Largest constraint violation of the returned distribution.
    pub max_violation: f64,
    /// Upper bound on how far `value` can be from the true optimum, from the last pricing round.
    pub duality_gap: f64,
}

pub(crate) fn correlated_value(
    game: &GameInstance,
    concept: Concept,
    objective: &ObjectiveSpec,
    dist: &CorrelatedDistribution,
) -> Result<(f64, f64)> {
    let report = check_ce(game, dist)?;
    let value = match concept {
        Concept::Maxmin => report.expected_utilities.iter().copied().fold(f64::INFINITY, f64::min),
        _ => report.objective(objective.weights.as_slice()),
    };
    let violation = match concept {
        Concept::Cce => report.cce_violation(),
        _ => report.ce_violation(),
    };
    Ok((value, violation))
}

fn finish(
    game: &GameInstance,
    concept: Concept,
    objective: &ObjectiveSpec,
    out: MasterOutcome<PureProfile>,
    oracle: &'static str,
) -> Result<SolveReport> {
    let dist = CorrelatedDistribution::new(out.support)?;
    let (value, max_violation) = correlated_value(game, concept, objective, &dist)?;
    Ok(SolveReport {
        concept,
        objective: objective.clone(),
        value,
        distribution: Distribution::Correlated(dist),
        method: Method::Colgen,
        oracle,
        iterations: out.iterations,
        oracle_calls: out.oracle_calls,
        penalty: out.penalty,
        max_violation,
        duality_gap: (out.best_priced - out.dual_bound).max(0.0),
    })
}

/// Optimal CE for a linear objective by column generation with the given pricing oracle.
pub fn solve_optimal_ce(
    game: &GameInstance,
    objective: &ObjectiveSpec,
    oracle: &dyn PricingOracle,
    cfg: &SolverConfig,
) -> Result<SolveReport> {
    objective.check(game)?;
    let pricer = CePricer::linear(game, objective.max_form_weights(), oracle);
    let out = master::run(&pricer, &cfg.master_settings(game, None))?;
    finish(game, Concept::Ce, objective, out, oracle.name())
}

/// Optimal CCE for a linear objective by column generation with a coarse pricing oracle.
pub fn solve_optimal_cce(
    game: &GameInstance,
    objective: &ObjectiveSpec,
    oracle: &dyn CoarsePricingOracle,
    cfg: &SolverConfig,
) -> Result<SolveReport> {
    objective.check(game)?;
    let pricer = CcePricer::new(game, objective.max_form_weights(), oracle);
    let out = master::run(&pricer, &cfg.master_settings(game, None))?;
    finish(game, Concept::Cce, objective, out, oracle.name())
}

/// CE maximizing the smallest expected utility, priced with weighted adjusted welfare.
pub fn solve_maxmin_ce(game: &GameInstance, oracle: &dyn PricingOracle, cfg: &SolverConfig) -> Result<SolveReport> {
    let n = game.players();
    let pricer = CePricer::maxmin(game, oracle);
    let out = master::run(&pricer, &cfg.master_settings(game, Some(n)))?;
    let objective = ObjectiveSpec::new(PlayerWeights::uniform(n), Direction::Max);
    finish(game, Concept::Maxmin, &objective, out, oracle.name())
}

fn is_forest_polymatrix(game: &GameInstance) -> bool {
    matches!(game.representation(), Representation::Polymatrix(g) if g.is_forest())
}

fn uniform_weights(objective: &ObjectiveSpec) -> bool {
    let w = objective.weights.as_slice();
    w.iter().all(|&x| x == w[0])
}

/// Dispatches to the solver for `concept`, resolving `OracleKind::Auto`.
pub fn solve(
    game: &GameInstance,
    concept: Concept,
    objective: &ObjectiveSpec,
    method: Method,
    oracle: OracleKind,
    cfg: &SolverConfig,
) -> Result<SolveReport> {
    if method == Method::Full {
        return solve_full_lp(game, objective, concept, cfg);
    }
    let brute = BruteForceOracle {
        profile_cap: cfg.profile_cap,
    };
    let is_scg = matches!(game.representation(), Representation::SingletonCongestion(_));
    let kind = match oracle {
        OracleKind::Auto if concept == Concept::Cce && is_scg && uniform_weights(objective) => OracleKind::ScgSymmetric,
        OracleKind::Auto if is_forest_polymatrix(game) => OracleKind::Tree,
        OracleKind::Auto => OracleKind::Bruteforce,
        other => other,
    };
    let ce_oracle: &dyn PricingOracle = match kind {
        OracleKind::Tree => &TreePolymatrixOracle,
        _ => &brute,
    };
    let cce_oracle: &dyn CoarsePricingOracle = match kind {
        OracleKind::Tree => &TreePolymatrixOracle,
        _ => &brute,
    };
    match (concept, kind) {
        (Concept::Cce, OracleKind::ScgSymmetric) => solve_scg_cce_symmetric(game, objective, cfg),
        (_, OracleKind::ScgSymmetric) => Err(Error::UnsupportedStructure(
            "the symmetric congestion solver only computes coarse correlated equilibria".into(),
        )),
        (Concept::Ce, _) => solve_optimal_ce(game, objective, ce_oracle, cfg),
        (Concept::Cce, _) => solve_optimal_cce(game, objective, cce_oracle, cfg),
        (Concept::Maxmin, _) => solve_maxmin_ce(game, ce_oracle, cfg),
    }
}
