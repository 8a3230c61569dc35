use super::{correlated_value, Concept, Method, ObjectiveSpec, SolveReport, SolverConfig};
use crate::distribution::{CorrelatedDistribution, Distribution};
use crate::error::{Error, Result};
use crate::lp::{solve_lp_with, LpProblem, LpStatus, Relation, Sense};
use crate::oracle::{Direction, PlayerWeights};
use crate::game::GameInstance;

const CERTIFICATE_TOL: f64 = 1e-7;

/// Materializes the whole LP over every pure profile and solves it directly. Exponential in the
/// player count; this is the reference the column-generation solvers are checked against.
///
/// For `Concept::Maxmin` the objective argument is ignored.
pub fn solve_full_lp(
    game: &GameInstance,
    objective: &ObjectiveSpec,
    concept: Concept,
    cfg: &SolverConfig,
) -> Result<SolveReport> {
    let n = game.players();
    let objective = match concept {
        Concept::Maxmin => ObjectiveSpec::new(PlayerWeights::uniform(n), Direction::Max),
        _ => {
            objective.check(game)?;
            objective.clone()
        }
    };
    let weights = objective.max_form_weights();
    let profiles: Vec<_> = game.enumerate_profiles(cfg.profile_cap)?.collect();

    let mut lp = LpProblem::new(Sense::Max);
    let rows = match concept {
        Concept::Cce => game.coarse_rows(),
        _ => game.ce_constraint_count(),
    };
    let mut row_coeffs: Vec<Vec<(usize, f64)>> = vec![Vec::new(); rows];
    let mut player_coeffs: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    let mut xs = Vec::with_capacity(profiles.len());
    for s in &profiles {
        let u: Vec<f64> = (0..n).map(|p| game.utility_unchecked(p, s.actions())).collect();
        let obj = match concept {
            Concept::Maxmin => 0.0,
            _ => weights.iter().zip(&u).map(|(w, u)| w * u).sum(),
        };
        let x = lp.add_variable(obj);
        xs.push(x);
        match concept {
            Concept::Cce => {
                for (d, a) in game.cce_column(s)? {
                    if a != 0.0 {
                        row_coeffs[game.coarse_row_index(d)].push((x, a));
                    }
                }
            }
            _ => {
                for (d, a) in game.ce_column(s)? {
                    if a != 0.0 {
                        row_coeffs[game.ce_row_index(d)].push((x, a));
                    }
                }
            }
        }
        if concept == Concept::Maxmin {
            for (p, &up) in u.iter().enumerate() {
                player_coeffs[p].push((x, up));
            }
        }
    }
    for coeffs in row_coeffs {
        lp.add_constraint(coeffs, Relation::Ge, 0.0)?;
    }
    if concept == Concept::Maxmin {
        let r = lp.add_variable(1.0);
        lp.set_bounds(r, f64::NEG_INFINITY, f64::INFINITY)?;
        for mut coeffs in player_coeffs {
            coeffs.push((r, -1.0));
            lp.add_constraint(coeffs, Relation::Ge, 0.0)?;
        }
    }
    lp.add_constraint(xs.iter().map(|&x| (x, 1.0)).collect(), Relation::Eq, 1.0)?;

    let sol = solve_lp_with(&lp, &cfg.lp)?;
    if sol.status != LpStatus::Optimal {
        return Err(Error::Lp(format!("full LP returned {:?}", sol.status)));
    }
    let cert = sol.certificate(&lp);
    let residual = cert.primal_residual.max(cert.dual_residual);
    if residual > CERTIFICATE_TOL {
        return Err(Error::Lp(format!("full LP solution fails its optimality certificate by {residual:e}")));
    }
    let kept: Vec<_> = profiles
        .into_iter()
        .zip(&xs)
        .map(|(s, &x)| (s, sol.primal[x]))
        .filter(|&(_, x)| x > 1e-12)
        .collect();
    let mass: f64 = kept.iter().map(|(_, x)| x).sum();
    let dist = CorrelatedDistribution::new(kept.into_iter().map(|(s, x)| (s, x / mass)).collect())?;
    let (value, max_violation) = correlated_value(game, concept, &objective, &dist)?;
    Ok(SolveReport {
        concept,
        objective,
        value,
        distribution: Distribution::Correlated(dist),
        method: Method::Full,
        oracle: "none",
        iterations: 1,
        oracle_calls: 0,
        penalty: 0.0,
        max_violation,
        duality_gap: cert.duality_gap,
    })
}
