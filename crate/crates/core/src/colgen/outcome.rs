use super::{solve, Concept, Method, ObjectiveSpec, OracleKind, SolverConfig};
use crate::error::{invalid, Error, Result};
use crate::game::{GameInstance, PureProfile, Representation};
use crate::oracle::{
    oracle_bruteforce, polymatrix_adjust, scg_coarse_opt_weighted, tree_polymatrix_opt, DeviationPlan, Direction,
};

/// Best pure profile for the objective (the pricing problem at zero prices) and its objective value.
pub fn optimal_outcome(game: &GameInstance, objective: &ObjectiveSpec, cfg: &SolverConfig) -> Result<(PureProfile, f64)> {
    objective.check(game)?;
    let weights = objective.max_form_weights();
    let profile = match game.representation() {
        Representation::Polymatrix(g) if g.is_forest() => {
            let adjusted = polymatrix_adjust(g, &weights, &DeviationPlan::zeros_for(game))?;
            tree_polymatrix_opt(&adjusted, Direction::Max)?.0
        }
        Representation::SingletonCongestion(g) if weights.iter().all(|&w| w == weights[0]) => {
            let zero = vec![0.0; g.actions()];
            scg_coarse_opt_weighted(g, &zero, weights[0])?.0.canonical_profile()
        }
        _ => {
            let zero = DeviationPlan::zeros_for(game);
            oracle_bruteforce(game, &weights, &zero, f64::NEG_INFINITY, 0.0, cfg.profile_cap)?.witness
        }
    };
    let value = game.weighted_welfare(objective.weights.as_slice(), &profile)?;
    Ok((profile, value))
}

/// Best-outcome social welfare divided by the social welfare of the worst equilibrium of `concept`.
pub fn price_of_anarchy(
    game: &GameInstance,
    concept: Concept,
    method: Method,
    oracle: OracleKind,
    cfg: &SolverConfig,
) -> Result<f64> {
    if concept == Concept::Maxmin {
        return Err(invalid("price of anarchy is defined for ce and cce"));
    }
    let n = game.players();
    let (_, best) = optimal_outcome(game, &ObjectiveSpec::social_welfare(n, Direction::Max), cfg)?;
    let worst = solve(game, concept, &ObjectiveSpec::social_welfare(n, Direction::Min), method, oracle, cfg)?.value;
    if worst <= 0.0 {
        return Err(Error::UndefinedRatio(worst));
    }
    Ok(best / worst)
}
