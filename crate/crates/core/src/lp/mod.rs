//! Dense two-phase simplex (Dantzig pricing, lexicographic ratio test), returning primal values and basis duals.
//!
//! Dual values are shadow prices: `duals[i]` is the rate of change of the optimal objective per
//! unit increase of constraint `i`'s right-hand side. In a maximization, `<=` rows therefore
//! carry nonnegative duals and `>=` rows nonpositive ones; a minimization flips both signs.

mod simplex;

pub use simplex::solve_lp_with;

use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Max,
    Min,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<(usize, f64)>,
    pub relation: Relation,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpProblem {
    sense: Sense,
    objective: Vec<f64>,
    lower: Vec<f64>,
    upper: Vec<f64>,
    constraints: Vec<Constraint>,
}

impl LpProblem {
    pub fn new(sense: Sense) -> Self {
        LpProblem {
            sense,
            objective: Vec::new(),
            lower: Vec::new(),
            upper: Vec::new(),
            constraints: Vec::new(),
        }
    }

    /// Adds a variable with bounds `[0, +inf)`; returns its index.
    pub fn add_variable(&mut self, objective: f64) -> usize {
        self.objective.push(objective);
        self.lower.push(0.0);
        self.upper.push(f64::INFINITY);
        self.objective.len() - 1
    }

    /// Bounds may be infinite (`lower = -inf` for free variables).
    pub fn set_bounds(&mut self, var: usize, lower: f64, upper: f64) -> Result<()> {
        if var >= self.objective.len() {
            return Err(invalid(format!("variable {var} does not exist")));
        }
        if lower.is_nan() || upper.is_nan() || lower > upper || lower == f64::INFINITY || upper == f64::NEG_INFINITY {
            return Err(invalid(format!("invalid bounds [{lower}, {upper}]")));
        }
        self.lower[var] = lower;
        self.upper[var] = upper;
        Ok(())
    }

    /// Adds `sum coeffs relation rhs`; returns the row index.
    pub fn add_constraint(&mut self, coeffs: Vec<(usize, f64)>, relation: Relation, rhs: f64) -> Result<usize> {
        if let Some(&(j, _)) = coeffs.iter().find(|(j, _)| *j >= self.objective.len()) {
            return Err(invalid(format!("constraint references missing variable {j}")));
        }
        if !rhs.is_finite() || coeffs.iter().any(|(_, a)| !a.is_finite()) {
            return Err(invalid("constraint coefficients must be finite"));
        }
        self.constraints.push(Constraint { coeffs, relation, rhs });
        Ok(self.constraints.len() - 1)
    }

    pub fn sense(&self) -> Sense {
        self.sense
    }

    pub fn objective(&self) -> &[f64] {
        &self.objective
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn bounds(&self, var: usize) -> (f64, f64) {
        (self.lower[var], self.upper[var])
    }

    pub fn nonzeros(&self) -> usize {
        self.constraints
            .iter()
            .map(|c| c.coeffs.iter().filter(|(_, a)| *a != 0.0).count())
            .sum()
    }

    fn check(&self) -> Result<()> {
        if self.objective.iter().any(|c| !c.is_finite()) {
            return Err(invalid("objective coefficients must be finite"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    pub primal: Vec<f64>,
    pub duals: Vec<f64>,
    pub objective: f64,
    pub pivots: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LpOptions {
    pub pivot_tol: f64,
    pub feasibility_tol: f64,
    pub max_nonzeros: usize,
    pub max_pivots: usize,
}

impl Default for LpOptions {
    fn default() -> Self {
        LpOptions {
            pivot_tol: 1e-10,
            feasibility_tol: 1e-8,
            max_nonzeros: 20_000,
            max_pivots: 200_000,
        }
    }
}

pub fn solve_lp(problem: &LpProblem) -> Result<LpSolution> {
    solve_lp_with(problem, &LpOptions::default())
}

/// Optimality residuals of a solution, computed from the problem data alone.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Certificate {
    pub primal_residual: f64,
    pub dual_residual: f64,
    pub complementary_residual: f64,
    pub duality_gap: f64,
    pub dual_objective: f64,
}

impl LpSolution {
    /// Primal/dual feasibility violations, complementary slackness and the duality gap.
    pub fn certificate(&self, problem: &LpProblem) -> Certificate {
        let s = match problem.sense {
            Sense::Max => 1.0,
            Sense::Min => -1.0,
        };
        let x = &self.primal;
        let mut primal_residual: f64 = 0.0;
        let mut dual_residual: f64 = 0.0;
        let mut complementary: f64 = 0.0;
        let mut dual_objective = 0.0;
        let mut reduced = problem.objective.clone();
        for (c, &pi) in problem.constraints.iter().zip(&self.duals) {
            let ax: f64 = c.coeffs.iter().map(|&(j, a)| a * x[j]).sum();
            let viol = match c.relation {
                Relation::Le => ax - c.rhs,
                Relation::Ge => c.rhs - ax,
                Relation::Eq => (ax - c.rhs).abs(),
            };
            primal_residual = primal_residual.max(viol);
            let wrong_sign = match c.relation {
                Relation::Le => -s * pi,
                Relation::Ge => s * pi,
                Relation::Eq => f64::NEG_INFINITY,
            };
            dual_residual = dual_residual.max(wrong_sign);
            complementary = complementary.max((pi * (ax - c.rhs)).abs());
            dual_objective += pi * c.rhs;
            for &(j, a) in &c.coeffs {
                reduced[j] -= pi * a;
            }
        }
        for (j, &d) in reduced.iter().enumerate() {
            let (lo, hi) = (problem.lower[j], problem.upper[j]);
            primal_residual = primal_residual.max(lo - x[j]).max(x[j] - hi);
            // In max form a negative reduced cost must sit at the lower bound, a positive one at the upper.
            let dm = s * d;
            if dm < 0.0 {
                if lo.is_finite() {
                    dual_objective += d * lo;
                    complementary = complementary.max((d * (x[j] - lo)).abs());
                } else {
                    dual_residual = dual_residual.max(-dm);
                }
            } else if dm > 0.0 {
                if hi.is_finite() {
                    dual_objective += d * hi;
                    complementary = complementary.max((d * (x[j] - hi)).abs());
                } else {
                    dual_residual = dual_residual.max(dm);
                }
            }
        }
        Certificate {
            primal_residual: primal_residual.max(0.0),
            dual_residual: dual_residual.max(0.0),
            complementary_residual: complementary,
            duality_gap: (self.objective - dual_objective).abs(),
            dual_objective,
        }
    }
}
