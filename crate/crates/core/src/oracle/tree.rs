use super::{
    coarse_to_ce_plan, CoarseDeviationPlan, CoarsePricingOracle, DeviationPlan, Direction, OracleAnswer,
    PricingOracle,
};
use crate::error::{invalid, Error, Result};
use crate::game::{GameInstance, Matrix, PolymatrixEdge, PolymatrixGame, PureProfile, Representation};

fn adjust_matrix(a: &Matrix, weight: f64, y: &DeviationPlan, owner: usize) -> Matrix {
    let mut out = Matrix::zeros(a.rows(), a.cols());
    for l in 0..a.rows() {
        let prices = y.row(owner, l);
        let total: f64 = prices.iter().enumerate().filter(|&(j, _)| j != l).map(|(_, v)| v).sum();
        for k in 0..a.cols() {
            let mut v = (weight + total) * a.get(l, k);
            for (j, &price) in prices.iter().enumerate() {
                if j != l && price != 0.0 {
                    v -= price * a.get(j, k);
                }
            }
            out.set(l, k, v);
        }
    }
    out
}

/// Rewrites every bilateral matrix so that the adjusted game's social welfare equals the
/// weighted deviation-adjusted welfare of the original: for the matrix owned by `p`,
/// `A'[l, k] = (theta_p + Y_l) A[l, k] - sum_j y^p_{l,j} A[j, k]` with `Y_l = sum_j y^p_{l,j}`.
pub fn polymatrix_adjust(game: &PolymatrixGame, weights: &[f64], y: &DeviationPlan) -> Result<PolymatrixGame> {
    if weights.len() != game.players() {
        return Err(invalid("weight vector length must equal the player count"));
    }
    if y.action_counts() != game.action_counts() {
        return Err(invalid("deviation plan does not match the game's action counts"));
    }
    let edges = game
        .edges()
        .iter()
        .map(|e| PolymatrixEdge {
            p: e.p,
            q: e.q,
            a_pq: adjust_matrix(&e.a_pq, weights[e.p], y, e.p),
            a_qp: adjust_matrix(&e.a_qp, weights[e.q], y, e.q),
        })
        .collect();
    Ok(game.with_edges(edges))
}

fn negated(game: &PolymatrixGame) -> PolymatrixGame {
    let neg = |a: &Matrix| {
        let mut out = a.clone();
        for r in 0..a.rows() {
            for c in 0..a.cols() {
                out.set(r, c, -a.get(r, c));
            }
        }
        out
    };
    let edges = game
        .edges()
        .iter()
        .map(|e| PolymatrixEdge {
            p: e.p,
            q: e.q,
            a_pq: neg(&e.a_pq),
            a_qp: neg(&e.a_qp),
        })
        .collect();
    game.with_edges(edges)
}

/// Optimal social welfare of a forest polymatrix game by leaf-to-root message passing.
///
/// Each component is rooted at its smallest player. A child `q` of `p` sends, for every action
/// `a` of `p`, the best welfare of `q`'s subtree plus the edge payoffs given `p` plays `a`.
/// Ties pick the smallest action.
pub fn tree_polymatrix_opt(game: &PolymatrixGame, direction: Direction) -> Result<(PureProfile, f64)> {
    if !game.is_forest() {
        return Err(Error::UnsupportedStructure("polymatrix edge graph contains a cycle".into()));
    }
    match direction {
        Direction::Max => max_welfare_forest(game),
        Direction::Min => {
            let (s, v) = max_welfare_forest(&negated(game))?;
            Ok((s, -v))
        }
    }
}

fn max_welfare_forest(game: &PolymatrixGame) -> Result<(PureProfile, f64)> {
    let n = game.players();
    let m = game.action_counts();
    // parent[q] = (parent player, edge index)
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut roots = Vec::new();
    for root in 0..n {
        if visited[root] {
            continue;
        }
        visited[root] = true;
        roots.push(root);
        let mut stack = vec![root];
        while let Some(p) = stack.pop() {
            order.push(p);
            for &k in game.incident(p).iter().rev() {
                let q = game.edges()[k].other(p);
                if !visited[q] {
                    visited[q] = true;
                    parent[q] = Some((p, k));
                    stack.push(q);
                }
            }
        }
    }

    // subtree[p][a]: best welfare inside p's subtree (edges below p) when p plays a.
    let mut subtree: Vec<Vec<f64>> = m.iter().map(|&mp| vec![0.0; mp]).collect();
    // choice[q][a]: q's best action when its parent plays a.
    let mut choice: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &q in order.iter().rev() {
        let Some((p, k)) = parent[q] else { continue };
        let e = &game.edges()[k];
        let (a_p, a_q) = (e.matrix_for(p), e.matrix_for(q));
        let mut best_for = vec![0usize; m[p]];
        for a in 0..m[p] {
            let mut best = f64::NEG_INFINITY;
            for b in 0..m[q] {
                let v = subtree[q][b] + a_p.get(a, b) + a_q.get(b, a);
                if v > best {
                    best = v;
                    best_for[a] = b;
                }
            }
            subtree[p][a] += best;
        }
        choice[q] = best_for;
    }

    let mut actions = vec![0usize; n];
    let mut total = 0.0;
    for &r in &roots {
        let (a, v) = subtree[r]
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |(ba, bv), (a, &v)| if v > bv { (a, v) } else { (ba, bv) });
        actions[r] = a;
        total += v;
    }
    for &q in &order {
        if let Some((p, _)) = parent[q] {
            actions[q] = choice[q][actions[p]];
        }
    }
    Ok((PureProfile::new(actions), total))
}

/// Polynomial pricing for forest polymatrix games: adjust the matrices, then run the tree DP.
pub fn oracle_tree_polymatrix(
    game: &PolymatrixGame,
    weights: &[f64],
    y: &DeviationPlan,
    t: f64,
    eps: f64,
) -> Result<OracleAnswer> {
    let adjusted = polymatrix_adjust(game, weights, y)?;
    let (witness, value) = tree_polymatrix_opt(&adjusted, Direction::Max)?;
    Ok(OracleAnswer::from_best(witness, value, t, eps))
}

/// [`PricingOracle`] over forest polymatrix games. Coarse plans are lifted with
/// [`coarse_to_ce_plan`].
#[derive(Debug, Clone, Copy, Default)]
pub struct TreePolymatrixOracle;

fn as_polymatrix(game: &GameInstance) -> Result<&PolymatrixGame> {
    match game.representation() {
        Representation::Polymatrix(g) => Ok(g),
        _ => Err(Error::UnsupportedStructure("tree oracle needs a polymatrix game".into())),
    }
}

impl PricingOracle for TreePolymatrixOracle {
    fn price(&self, game: &GameInstance, weights: &[f64], y: &DeviationPlan, t: f64, eps: f64) -> Result<OracleAnswer> {
        oracle_tree_polymatrix(as_polymatrix(game)?, weights, y, t, eps)
    }

    fn name(&self) -> &'static str {
        "tree"
    }
}

impl CoarsePricingOracle for TreePolymatrixOracle {
    fn price_coarse(
        &self,
        game: &GameInstance,
        weights: &[f64],
        y: &CoarseDeviationPlan,
        t: f64,
        eps: f64,
    ) -> Result<OracleAnswer> {
        oracle_tree_polymatrix(as_polymatrix(game)?, weights, &coarse_to_ce_plan(y), t, eps)
    }

    fn name(&self) -> &'static str {
        "tree"
    }
}
