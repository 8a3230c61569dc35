use crate::error::{invalid, Result};

/// Symmetric game in which a player's payoff is `f^a(c(a))`, where `a` is her action and
/// `c(a)` the number of players choosing it.
#[derive(Debug, Clone, PartialEq)]
pub struct SingletonCongestionGame {
    players: usize,
    /// `payoffs[a][c - 1]` is the per-user payoff of action `a` with `c` users.
    payoffs: Vec<Vec<f64>>,
}

impl SingletonCongestionGame {
    pub fn new(players: usize, payoffs: Vec<Vec<f64>>) -> Result<Self> {
        if players == 0 {
            return Err(invalid("a game needs at least one player"));
        }
        if payoffs.is_empty() {
            return Err(invalid("a congestion game needs at least one action"));
        }
        for (a, row) in payoffs.iter().enumerate() {
            if row.len() != players {
                return Err(invalid(format!(
                    "payoff table of action {a} has {} entries, expected {players}",
                    row.len()
                )));
            }
            if row.iter().any(|v| !v.is_finite()) {
                return Err(invalid("congestion payoffs must be finite"));
            }
        }
        Ok(SingletonCongestionGame { players, payoffs })
    }

    pub fn players(&self) -> usize {
        self.players
    }

    pub fn actions(&self) -> usize {
        self.payoffs.len()
    }

    pub fn table(&self) -> &[Vec<f64>] {
        &self.payoffs
    }

    /// Per-user payoff of `action` when `count` players (1..=n) use it.
    #[inline]
    pub fn payoff(&self, action: usize, count: usize) -> f64 {
        self.payoffs[action][count - 1]
    }

    /// Total welfare of any profile with the given action counts.
    pub fn count_welfare(&self, counts: &[usize]) -> f64 {
        counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(a, &c)| c as f64 * self.payoff(a, c))
            .sum()
    }

    pub(crate) fn counts_of(&self, s: &[usize]) -> Vec<usize> {
        let mut c = vec![0; self.actions()];
        for &a in s {
            c[a] += 1;
        }
        c
    }

    pub(crate) fn utility(&self, p: usize, s: &[usize]) -> f64 {
        let a = s[p];
        let c = s.iter().filter(|&&b| b == a).count();
        self.payoff(a, c)
    }

    pub(crate) fn deviation_utilities(&self, p: usize, s: &[usize], out: &mut [f64]) {
        let counts = self.counts_of(s);
        for (j, o) in out.iter_mut().enumerate() {
            let c = if j == s[p] { counts[j] } else { counts[j] + 1 };
            *o = self.payoff(j, c);
        }
    }

    pub(crate) fn utility_range(&self) -> (f64, f64) {
        self.payoffs
            .iter()
            .flatten()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)))
    }
}
