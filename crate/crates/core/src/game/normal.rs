use crate::error::{invalid, Result};

/// Explicit utility tensor. Row `r` of the tensor holds the n utilities of the `r`-th profile
/// in lexicographic (mixed-radix, player 0 most significant) order.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalFormGame {
    action_counts: Vec<usize>,
    strides: Vec<usize>,
    utilities: Vec<f64>,
}

impl NormalFormGame {
    pub fn new(action_counts: Vec<usize>, utilities: Vec<f64>) -> Result<Self> {
        if action_counts.is_empty() {
            return Err(invalid("a game needs at least one player"));
        }
        if action_counts.contains(&0) {
            return Err(invalid("every player needs at least one action"));
        }
        let n = action_counts.len();
        let profiles = action_counts
            .iter()
            .try_fold(1usize, |acc, &m| acc.checked_mul(m))
            .ok_or_else(|| invalid("profile count overflows"))?;
        if utilities.len() != profiles * n {
            return Err(invalid(format!(
                "utility tensor has {} entries, expected {}",
                utilities.len(),
                profiles * n
            )));
        }
        if utilities.iter().any(|u| !u.is_finite()) {
            return Err(invalid("utilities must be finite"));
        }
        let mut strides = vec![1; n];
        for p in (0..n.saturating_sub(1)).rev() {
            strides[p] = strides[p + 1] * action_counts[p + 1];
        }
        Ok(NormalFormGame {
            action_counts,
            strides,
            utilities,
        })
    }

    /// Builds a game from per-profile utility rows given in lexicographic order.
    pub fn from_rows(action_counts: Vec<usize>, rows: &[Vec<f64>]) -> Result<Self> {
        let n = action_counts.len();
        if let Some(bad) = rows.iter().position(|r| r.len() != n) {
            return Err(invalid(format!("utility row {bad} does not have {n} entries")));
        }
        Self::new(action_counts, rows.iter().flatten().copied().collect())
    }

    pub fn action_counts(&self) -> &[usize] {
        &self.action_counts
    }

    pub fn profile_index(&self, s: &[usize]) -> usize {
        s.iter().zip(&self.strides).map(|(a, st)| a * st).sum()
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.utilities.chunks(self.action_counts.len())
    }

    pub(crate) fn utility(&self, p: usize, s: &[usize]) -> f64 {
        self.utilities[self.profile_index(s) * self.action_counts.len() + p]
    }

    pub(crate) fn deviation_utilities(&self, p: usize, s: &[usize], out: &mut [f64]) {
        let n = self.action_counts.len();
        let base = self.profile_index(s) - s[p] * self.strides[p];
        for (j, o) in out.iter_mut().enumerate() {
            *o = self.utilities[(base + j * self.strides[p]) * n + p];
        }
    }

    pub(crate) fn utility_range(&self) -> (f64, f64) {
        self.utilities
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &u| (lo.min(u), hi.max(u)))
    }
}
