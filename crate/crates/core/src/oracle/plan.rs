use crate::error::{invalid, Result};
use crate::game::GameInstance;

fn offsets(action_counts: &[usize], width: impl Fn(usize) -> usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(action_counts.len() + 1);
    let mut acc = 0;
    for &m in action_counts {
        out.push(acc);
        acc += width(m);
    }
    out.push(acc);
    out
}

fn check_price(v: f64) -> Result<()> {
    if !(v.is_finite() && v >= 0.0) {
        return Err(invalid(format!("deviation prices must be finite and nonnegative, got {v}")));
    }
    Ok(())
}

/// Prices `y^p_{i,j} >= 0`, one per incentive constraint `(p, i, j)`, stored densely
/// (`sum_p m_p^2` entries, diagonal pinned at zero).
#[derive(Debug, Clone, PartialEq)]
pub struct DeviationPlan {
    action_counts: Vec<usize>,
    offsets: Vec<usize>,
    values: Vec<f64>,
}

impl DeviationPlan {
    pub fn zeros(action_counts: &[usize]) -> Self {
        let offsets = offsets(action_counts, |m| m * m);
        DeviationPlan {
            values: vec![0.0; offsets[action_counts.len()]],
            action_counts: action_counts.to_vec(),
            offsets,
        }
    }

    pub fn zeros_for(game: &GameInstance) -> Self {
        Self::zeros(game.action_counts())
    }

    /// Builds a plan from one value per non-trivial constraint in the game's dense row order.
    pub fn from_ce_values(game: &GameInstance, values: &[f64]) -> Result<Self> {
        if values.len() != game.ce_constraint_count() {
            return Err(invalid("one value per non-trivial incentive constraint expected"));
        }
        let mut plan = Self::zeros_for(game);
        for (d, &v) in game.ce_constraints().zip(values) {
            plan.set(d.player, d.from, d.to, v)?;
        }
        Ok(plan)
    }

    pub fn action_counts(&self) -> &[usize] {
        &self.action_counts
    }

    #[inline]
    pub fn get(&self, p: usize, i: usize, j: usize) -> f64 {
        let m = self.action_counts[p];
        self.values[self.offsets[p] + i * m + j]
    }

    /// Prices of every deviation away from `i` for player `p`, indexed by target action.
    #[inline]
    pub fn row(&self, p: usize, i: usize) -> &[f64] {
        let m = self.action_counts[p];
        let start = self.offsets[p] + i * m;
        &self.values[start..start + m]
    }

    pub fn set(&mut self, p: usize, i: usize, j: usize, v: f64) -> Result<()> {
        let m = *self
            .action_counts
            .get(p)
            .ok_or_else(|| invalid(format!("player {p} out of range")))?;
        if i >= m || j >= m {
            return Err(invalid(format!("actions ({i}, {j}) out of range for player {p}")));
        }
        if i == j {
            return Err(invalid("a deviation plan has no entry for i == j"));
        }
        check_price(v)?;
        self.values[self.offsets[p] + i * m + j] = v;
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0)
    }

    pub(crate) fn check_game(&self, game: &GameInstance) -> Result<()> {
        if self.action_counts != game.action_counts() {
            return Err(invalid("deviation plan does not match the game's action counts"));
        }
        Ok(())
    }
}

/// Prices `y^p_j >= 0`, one per coarse constraint `(p, j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoarseDeviationPlan {
    action_counts: Vec<usize>,
    offsets: Vec<usize>,
    values: Vec<f64>,
}

impl CoarseDeviationPlan {
    pub fn zeros(action_counts: &[usize]) -> Self {
        let offsets = offsets(action_counts, |m| m);
        CoarseDeviationPlan {
            values: vec![0.0; offsets[action_counts.len()]],
            action_counts: action_counts.to_vec(),
            offsets,
        }
    }

    pub fn zeros_for(game: &GameInstance) -> Self {
        Self::zeros(game.action_counts())
    }

    /// Builds a plan from one value per coarse constraint in the game's dense row order.
    pub fn from_values(game: &GameInstance, values: &[f64]) -> Result<Self> {
        if values.len() != game.coarse_rows() {
            return Err(invalid("one value per coarse constraint expected"));
        }
        values.iter().try_for_each(|&v| check_price(v))?;
        let mut plan = Self::zeros_for(game);
        plan.values.copy_from_slice(values);
        Ok(plan)
    }

    /// The same per-action price vector for every one of `players` players.
    pub fn symmetric(players: usize, per_action: &[f64]) -> Result<Self> {
        per_action.iter().try_for_each(|&v| check_price(v))?;
        let counts = vec![per_action.len(); players];
        let mut plan = Self::zeros(&counts);
        for chunk in plan.values.chunks_mut(per_action.len().max(1)) {
            chunk.copy_from_slice(per_action);
        }
        Ok(plan)
    }

    pub fn action_counts(&self) -> &[usize] {
        &self.action_counts
    }

    #[inline]
    pub fn get(&self, p: usize, j: usize) -> f64 {
        self.values[self.offsets[p] + j]
    }

    #[inline]
    pub fn row(&self, p: usize) -> &[f64] {
        &self.values[self.offsets[p]..self.offsets[p + 1]]
    }

    pub fn set(&mut self, p: usize, j: usize, v: f64) -> Result<()> {
        let m = *self
            .action_counts
            .get(p)
            .ok_or_else(|| invalid(format!("player {p} out of range")))?;
        if j >= m {
            return Err(invalid(format!("action {j} out of range for player {p}")));
        }
        check_price(v)?;
        self.values[self.offsets[p] + j] = v;
        Ok(())
    }

    /// True iff every player carries the same price vector.
    pub fn is_symmetric(&self) -> bool {
        let n = self.action_counts.len();
        n == 0 || (1..n).all(|p| self.row(p) == self.row(0))
    }

    pub(crate) fn check_game(&self, game: &GameInstance) -> Result<()> {
        if self.action_counts != game.action_counts() {
            return Err(invalid("coarse deviation plan does not match the game's action counts"));
        }
        Ok(())
    }
}

/// Lifts a coarse plan to a full one with `y'^p_{i,j} = y^p_j` for every `i != j`.
pub fn coarse_to_ce_plan(y: &CoarseDeviationPlan) -> DeviationPlan {
    let mut plan = DeviationPlan::zeros(y.action_counts());
    for (p, &m) in y.action_counts().iter().enumerate() {
        for i in 0..m {
            for j in 0..m {
                if i != j {
                    let at = plan.offsets[p] + i * m + j;
                    plan.values[at] = y.get(p, j);
                }
            }
        }
    }
    plan
}

/// Per-player weights on expected utilities. Any finite values are allowed for linear
/// objectives; max-min pricing requires a point of the simplex.
#[derive(Debug, Clone, PartialEq)]
pub struct PlayerWeights(Vec<f64>);

impl PlayerWeights {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.iter().any(|w| !w.is_finite()) {
            return Err(invalid("player weights must be finite"));
        }
        Ok(PlayerWeights(weights))
    }

    pub fn ones(n: usize) -> Self {
        PlayerWeights(vec![1.0; n])
    }

    pub fn uniform(n: usize) -> Self {
        PlayerWeights(vec![1.0 / n as f64; n])
    }

    /// Projects nonnegative weights onto the simplex by rescaling; all-zero becomes uniform.
    pub fn renormalized(weights: &[f64]) -> Self {
        let clipped: Vec<f64> = weights.iter().map(|w| w.max(0.0)).collect();
        let total: f64 = clipped.iter().sum();
        if total > 0.0 {
            PlayerWeights(clipped.iter().map(|w| w / total).collect())
        } else {
            Self::uniform(weights.len())
        }
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_simplex(&self) -> bool {
        self.0.iter().all(|&w| w >= 0.0) && (self.0.iter().sum::<f64>() - 1.0).abs() <= 1e-12
    }

    pub fn negated(&self) -> Self {
        PlayerWeights(self.0.iter().map(|w| -w).collect())
    }
}
