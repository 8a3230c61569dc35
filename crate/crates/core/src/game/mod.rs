//! Game representations, profile indexing, utilities and constraint columns.

mod congestion;
mod normal;
mod polymatrix;
mod profile;

pub use congestion::SingletonCongestionGame;
pub use normal::NormalFormGame;
pub use polymatrix::{Matrix, PolymatrixEdge, PolymatrixGame};
pub use profile::{
    count_vector, count_vectors, profiles_in_class, profiles_with_counts, CountVector, ProfileIter, PureProfile,
};

use crate::error::{invalid, Error, Result};

/// Default cap on the number of profiles any enumeration may visit.
pub const DEFAULT_PROFILE_CAP: u128 = 1_000_000;

/// The three supported compact representations.
#[derive(Debug, Clone, PartialEq)]
pub enum Representation {
    NormalForm(NormalFormGame),
    Polymatrix(PolymatrixGame),
    SingletonCongestion(SingletonCongestionGame),
}

/// An incentive constraint `(p, i, j)`: player `p` told to play `i` considers playing `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Deviation {
    pub player: usize,
    pub from: usize,
    pub to: usize,
}

/// A coarse constraint `(p, j)`: player `p` commits to `j` regardless of the recommendation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoarseDeviation {
    pub player: usize,
    pub to: usize,
}

/// A game plus cached sizes. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct GameInstance {
    repr: Representation,
    action_counts: Vec<usize>,
    profile_count: u128,
    incentive_rows: usize,
    coarse_rows: usize,
    ce_offsets: Vec<usize>,
    coarse_offsets: Vec<usize>,
}

impl From<NormalFormGame> for GameInstance {
    fn from(g: NormalFormGame) -> Self {
        GameInstance::new(Representation::NormalForm(g))
    }
}

impl From<PolymatrixGame> for GameInstance {
    fn from(g: PolymatrixGame) -> Self {
        GameInstance::new(Representation::Polymatrix(g))
    }
}

impl From<SingletonCongestionGame> for GameInstance {
    fn from(g: SingletonCongestionGame) -> Self {
        GameInstance::new(Representation::SingletonCongestion(g))
    }
}

impl GameInstance {
    pub fn new(repr: Representation) -> Self {
        let action_counts = match &repr {
            Representation::NormalForm(g) => g.action_counts().to_vec(),
            Representation::Polymatrix(g) => g.action_counts().to_vec(),
            Representation::SingletonCongestion(g) => vec![g.actions(); g.players()],
        };
        let profile_count = action_counts
            .iter()
            .try_fold(1u128, |acc, &m| acc.checked_mul(m as u128))
            .unwrap_or(u128::MAX);
        let mut ce_offsets = Vec::with_capacity(action_counts.len() + 1);
        let mut coarse_offsets = Vec::with_capacity(action_counts.len() + 1);
        let (mut ce, mut co) = (0, 0);
        for &m in &action_counts {
            ce_offsets.push(ce);
            coarse_offsets.push(co);
            ce += m * (m - 1);
            co += m;
        }
        ce_offsets.push(ce);
        coarse_offsets.push(co);
        GameInstance {
            incentive_rows: action_counts.iter().map(|m| m * m).sum(),
            coarse_rows: co,
            repr,
            action_counts,
            profile_count,
            ce_offsets,
            coarse_offsets,
        }
    }

    pub fn representation(&self) -> &Representation {
        &self.repr
    }

    pub fn players(&self) -> usize {
        self.action_counts.len()
    }

    pub fn action_counts(&self) -> &[usize] {
        &self.action_counts
    }

    /// `M`, the number of pure profiles (saturating at `u128::MAX`).
    pub fn profile_count(&self) -> u128 {
        self.profile_count
    }

    /// `N = sum_p m_p^2`, the length of a deviation plan.
    pub fn incentive_rows(&self) -> usize {
        self.incentive_rows
    }

    /// `sum_p m_p`, the number of coarse constraints.
    pub fn coarse_rows(&self) -> usize {
        self.coarse_rows
    }

    /// Number of non-trivial incentive constraints, `sum_p m_p (m_p - 1)`.
    pub fn ce_constraint_count(&self) -> usize {
        self.ce_offsets[self.players()]
    }

    /// Dense index of a non-trivial incentive constraint (`from != to`).
    pub fn ce_row_index(&self, d: Deviation) -> usize {
        let m = self.action_counts[d.player];
        let to = if d.to < d.from { d.to } else { d.to - 1 };
        self.ce_offsets[d.player] + d.from * (m - 1) + to
    }

    /// All non-trivial incentive constraints in dense-index order.
    pub fn ce_constraints(&self) -> impl Iterator<Item = Deviation> + '_ {
        self.action_counts.iter().enumerate().flat_map(|(player, &m)| {
            (0..m).flat_map(move |from| {
                (0..m)
                    .filter(move |&to| to != from)
                    .map(move |to| Deviation { player, from, to })
            })
        })
    }

    pub fn coarse_row_index(&self, d: CoarseDeviation) -> usize {
        self.coarse_offsets[d.player] + d.to
    }

    pub fn coarse_constraints(&self) -> impl Iterator<Item = CoarseDeviation> + '_ {
        self.action_counts
            .iter()
            .enumerate()
            .flat_map(|(player, &m)| (0..m).map(move |to| CoarseDeviation { player, to }))
    }

    pub fn validate_profile(&self, s: &[usize]) -> Result<()> {
        if s.len() != self.players() {
            return Err(invalid(format!(
                "profile has {} entries, game has {} players",
                s.len(),
                self.players()
            )));
        }
        for (p, (&a, &m)) in s.iter().zip(&self.action_counts).enumerate() {
            if a >= m {
                return Err(invalid(format!("action {a} of player {p} out of range (has {m})")));
            }
        }
        Ok(())
    }

    fn validate_player(&self, p: usize) -> Result<()> {
        if p >= self.players() {
            return Err(invalid(format!("player {p} out of range ({} players)", self.players())));
        }
        Ok(())
    }

    /// `u^p_s`.
    pub fn utility(&self, p: usize, s: &PureProfile) -> Result<f64> {
        self.validate_player(p)?;
        self.validate_profile(s.actions())?;
        Ok(self.utility_unchecked(p, s.actions()))
    }

    pub fn social_welfare(&self, s: &PureProfile) -> Result<f64> {
        self.validate_profile(s.actions())?;
        Ok(self.welfare_unchecked(s.actions()))
    }

    pub fn weighted_welfare(&self, weights: &[f64], s: &PureProfile) -> Result<f64> {
        if weights.len() != self.players() {
            return Err(invalid("weight vector length must equal the player count"));
        }
        self.validate_profile(s.actions())?;
        Ok(self.weighted_welfare_unchecked(weights, s.actions()))
    }

    /// Nonzero-pattern column `U_s`: `u^p_s - u^p_{j s_-p}` at `(p, s_p, j)` for every `j != s_p`.
    pub fn ce_column(&self, s: &PureProfile) -> Result<Vec<(Deviation, f64)>> {
        self.validate_profile(s.actions())?;
        let s = s.actions();
        let mut out = Vec::with_capacity(self.ce_constraint_count() / 2 + 1);
        let mut dev = Vec::new();
        for p in 0..self.players() {
            dev.resize(self.action_counts[p], 0.0);
            self.deviation_utilities(p, s, &mut dev);
            let base = dev[s[p]];
            for (j, &uj) in dev.iter().enumerate() {
                if j != s[p] {
                    out.push((Deviation { player: p, from: s[p], to: j }, base - uj));
                }
            }
        }
        Ok(out)
    }

    /// Column `C_s`: `u^p_s - u^p_{j s_-p}` at `(p, j)` for every `j`, including the zero at `j = s_p`.
    pub fn cce_column(&self, s: &PureProfile) -> Result<Vec<(CoarseDeviation, f64)>> {
        self.validate_profile(s.actions())?;
        let s = s.actions();
        let mut out = Vec::with_capacity(self.coarse_rows);
        let mut dev = Vec::new();
        for p in 0..self.players() {
            dev.resize(self.action_counts[p], 0.0);
            self.deviation_utilities(p, s, &mut dev);
            let base = dev[s[p]];
            for (j, &uj) in dev.iter().enumerate() {
                let gap = if j == s[p] { 0.0 } else { base - uj };
                out.push((CoarseDeviation { player: p, to: j }, gap));
            }
        }
        Ok(out)
    }

    /// Lexicographic iterator over all profiles, refused if `M` exceeds `cap`.
    pub fn enumerate_profiles(&self, cap: u128) -> Result<ProfileIter> {
        self.check_profile_cap(cap)?;
        Ok(ProfileIter::new(&self.action_counts))
    }

    pub(crate) fn check_profile_cap(&self, cap: u128) -> Result<()> {
        if self.profile_count > cap {
            return Err(Error::ResourceLimit {
                what: "profile enumeration",
                actual: self.profile_count,
                limit: cap,
            });
        }
        Ok(())
    }

    pub(crate) fn utility_unchecked(&self, p: usize, s: &[usize]) -> f64 {
        match &self.repr {
            Representation::NormalForm(g) => g.utility(p, s),
            Representation::Polymatrix(g) => g.utility(p, s),
            Representation::SingletonCongestion(g) => g.utility(p, s),
        }
    }

    pub(crate) fn welfare_unchecked(&self, s: &[usize]) -> f64 {
        (0..self.players()).map(|p| self.utility_unchecked(p, s)).sum()
    }

    pub(crate) fn weighted_welfare_unchecked(&self, weights: &[f64], s: &[usize]) -> f64 {
        (0..self.players()).map(|p| weights[p] * self.utility_unchecked(p, s)).sum()
    }

    /// Writes `u^p_{j s_-p}` for every action `j` of `p` into `out` (length `m_p`).
    pub(crate) fn deviation_utilities(&self, p: usize, s: &[usize], out: &mut [f64]) {
        match &self.repr {
            Representation::NormalForm(g) => g.deviation_utilities(p, s, out),
            Representation::Polymatrix(g) => g.deviation_utilities(p, s, out),
            Representation::SingletonCongestion(g) => g.deviation_utilities(p, s, out),
        }
    }

    /// Bounds `(lo, hi)` on every utility value in the game.
    pub fn utility_range(&self) -> (f64, f64) {
        match &self.repr {
            Representation::NormalForm(g) => g.utility_range(),
            Representation::Polymatrix(g) => g.utility_range(),
            Representation::SingletonCongestion(g) => g.utility_range(),
        }
    }

    /// Expands any representation into an explicit utility tensor.
    pub fn to_normal_form(&self, cap: u128) -> Result<NormalFormGame> {
        let n = self.players();
        let mut utilities = Vec::with_capacity(self.profile_count.min(cap) as usize * n);
        for s in self.enumerate_profiles(cap)? {
            utilities.extend((0..n).map(|p| self.utility_unchecked(p, s.actions())));
        }
        NormalFormGame::new(self.action_counts.clone(), utilities)
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub fn two_player(rows: [[f64; 2]; 4]) -> GameInstance {
        let rows: Vec<Vec<f64>> = rows.iter().map(|r| r.to_vec()).collect();
        NormalFormGame::from_rows(vec![2, 2], &rows).unwrap().into()
    }

    /// Action 0 = cooperate, 1 = defect.
    pub fn prisoners_dilemma() -> GameInstance {
        two_player([[3.0, 3.0], [0.0, 5.0], [5.0, 0.0], [1.0, 1.0]])
    }

    /// Action 0 = chicken out (C), 1 = dare (D).
    pub fn chicken() -> GameInstance {
        two_player([[6.0, 6.0], [2.0, 7.0], [7.0, 2.0], [0.0, 0.0]])
    }

    pub fn single_edge() -> GameInstance {
        let e = PolymatrixEdge {
            p: 0,
            q: 1,
            a_pq: Matrix::from_rows(&[vec![1.0, 0.0], vec![0.0, 2.0]]).unwrap(),
            a_qp: Matrix::from_rows(&[vec![0.0, 0.0], vec![0.0, 1.0]]).unwrap(),
        };
        PolymatrixGame::new(vec![2, 2], vec![e]).unwrap().into()
    }

    pub fn small_congestion() -> GameInstance {
        SingletonCongestionGame::new(2, vec![vec![3.0, 1.0], vec![2.0, 2.0]]).unwrap().into()
    }
}
