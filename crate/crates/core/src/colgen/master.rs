//! Restricted master LP shared by every column-generation solver.
//!
//! Variables are one weight per generated column plus a penalized slack per incentive row
//! (and the free max-min level `r` when requested):
//!
//! ```text
//! max  sum_c obj_c x_c  [+ r]  - M sum_k v_k
//! s.t. sum_c a_kc x_c + v_k >= 0      for every incentive row k
//!      sum_c u^p_c x_c - r  >= 0      for every player p   (max-min only)
//!      sum_c x_c = 1
//! ```
//!
//! The duals of the three row blocks are the prices `y`, the player weights `v` and the
//! threshold `t` handed to the pricing oracle.

use std::fmt::Debug;

use crate::error::{Error, Result};
use crate::lp::{solve_lp_with, LpOptions, LpProblem, LpStatus, Relation, Sense};
use crate::oracle::OracleAnswer;

/// Values below this are dropped from the returned support.
const SUPPORT_EPS: f64 = 1e-12;

pub(crate) struct ColumnData {
    pub objective: f64,
    /// Sparse `(incentive row, coefficient)` pairs.
    pub incentive: Vec<(usize, f64)>,
    /// Per-player utilities; read only by max-min masters.
    pub players: Vec<f64>,
}

pub(crate) struct MasterDuals {
    pub incentive: Vec<f64>,
    pub players: Vec<f64>,
    pub t: f64,
}

pub(crate) trait Pricer {
    type Key: Clone + Ord + Debug;

    fn incentive_rows(&self) -> usize;
    fn column(&self, key: &Self::Key) -> Result<ColumnData>;
    fn initial(&self) -> Result<Self::Key>;
    fn price(&self, duals: &MasterDuals, eps: f64) -> Result<OracleAnswer<Self::Key>>;
}

pub(crate) struct MasterSettings {
    pub maxmin_players: Option<usize>,
    pub initial_penalty: f64,
    pub max_doublings: usize,
    pub max_iterations: usize,
    pub pricing_eps: f64,
    pub slack_tol: f64,
    pub lp: LpOptions,
}

pub(crate) struct MasterOutcome<K> {
    pub support: Vec<(K, f64)>,
    pub dual_bound: f64,
    pub best_priced: f64,
    pub iterations: usize,
    pub oracle_calls: usize,
    pub penalty: f64,
}

struct Solved {
    x: Vec<f64>,
    slacks: Vec<f64>,
    duals: MasterDuals,
}

fn solve_master(columns: &[ColumnData], rows: usize, penalty: f64, s: &MasterSettings) -> Result<Solved> {
    let mut lp = LpProblem::new(Sense::Max);
    let maxmin = s.maxmin_players.is_some();
    let xs: Vec<usize> = columns
        .iter()
        .map(|c| lp.add_variable(if maxmin { 0.0 } else { c.objective }))
        .collect();
    let level = if maxmin {
        let r = lp.add_variable(1.0);
        lp.set_bounds(r, f64::NEG_INFINITY, f64::INFINITY)?;
        Some(r)
    } else {
        None
    };
    let slacks: Vec<usize> = (0..rows).map(|_| lp.add_variable(-penalty)).collect();

    let mut row_coeffs: Vec<Vec<(usize, f64)>> = vec![Vec::new(); rows];
    for (c, &x) in columns.iter().zip(&xs) {
        for &(k, a) in &c.incentive {
            row_coeffs[k].push((x, a));
        }
    }
    for (k, mut coeffs) in row_coeffs.into_iter().enumerate() {
        coeffs.push((slacks[k], 1.0));
        lp.add_constraint(coeffs, Relation::Ge, 0.0)?;
    }
    let player_rows: Vec<usize> = match (s.maxmin_players, level) {
        (Some(n), Some(r)) => (0..n)
            .map(|p| {
                let mut coeffs: Vec<(usize, f64)> = columns.iter().zip(&xs).map(|(c, &x)| (x, c.players[p])).collect();
                coeffs.push((r, -1.0));
                lp.add_constraint(coeffs, Relation::Ge, 0.0)
            })
            .collect::<Result<_>>()?,
        _ => Vec::new(),
    };
    let norm = lp.add_constraint(xs.iter().map(|&x| (x, 1.0)).collect(), Relation::Eq, 1.0)?;

    let sol = solve_lp_with(&lp, &s.lp)?;
    if sol.status != LpStatus::Optimal {
        return Err(Error::Lp(format!("restricted master returned {:?}", sol.status)));
    }
    let duals = MasterDuals {
        incentive: (0..rows).map(|k| (-sol.duals[k]).max(0.0)).collect(),
        players: player_rows.iter().map(|&i| (-sol.duals[i]).max(0.0)).collect(),
        t: sol.duals[norm],
    };
    Ok(Solved {
        x: xs.iter().map(|&x| sol.primal[x]).collect(),
        slacks: slacks.iter().map(|&v| sol.primal[v]).collect(),
        duals,
    })
}

/// Alternates master solves and pricing until no column beats `t + eps` and every slack is zero,
/// doubling the penalty whenever the column set is complete but slacks remain.
pub(crate) fn run<P: Pricer>(pricer: &P, s: &MasterSettings) -> Result<MasterOutcome<P::Key>> {
    let rows = pricer.incentive_rows();
    let first = pricer.initial()?;
    let mut keys = vec![first.clone()];
    let mut columns = vec![pricer.column(&first)?];
    let mut penalty = s.initial_penalty;
    let mut doublings = 0;
    let mut iterations = 0;
    let mut oracle_calls = 1;
    let mut last_gap = f64::INFINITY;
    loop {
        if iterations >= s.max_iterations {
            return Err(Error::NonConvergence { iterations, gap: last_gap });
        }
        iterations += 1;
        let solved = solve_master(&columns, rows, penalty, s)?;
        let answer = pricer.price(&solved.duals, s.pricing_eps)?;
        oracle_calls += 1;
        last_gap = answer.value - solved.duals.t;
        if answer.found && !keys.contains(&answer.witness) {
            columns.push(pricer.column(&answer.witness)?);
            keys.push(answer.witness);
            continue;
        }
        let max_slack = solved.slacks.iter().copied().fold(0.0, f64::max);
        if max_slack > s.slack_tol {
            if doublings >= s.max_doublings {
                return Err(Error::PenaltyFailure { doublings, max_slack });
            }
            doublings += 1;
            penalty *= 2.0;
            continue;
        }
        let kept: Vec<(P::Key, f64)> = keys
            .into_iter()
            .zip(solved.x)
            .filter(|&(_, x)| x > SUPPORT_EPS)
            .collect();
        let mass: f64 = kept.iter().map(|(_, x)| x).sum();
        let mut support: Vec<(P::Key, f64)> = kept.into_iter().map(|(k, x)| (k, x / mass)).collect();
        support.sort_by(|a, b| a.0.cmp(&b.0));
        return Ok(MasterOutcome {
            support,
            dual_bound: solved.duals.t,
            best_priced: answer.value,
            iterations,
            oracle_calls,
            penalty,
        });
    }
}
