use crate::error::{invalid, Result};
use crate::game::{CountVector, PureProfile};

/// Probability-sum tolerance for distributions.
pub const PROBABILITY_TOL: f64 = 1e-9;

fn check_probabilities<'a>(probs: impl Iterator<Item = &'a f64>) -> Result<()> {
    let mut total = 0.0;
    for &p in probs {
        if !p.is_finite() || p < 0.0 {
            return Err(invalid(format!("probability {p} is negative or not finite")));
        }
        total += p;
    }
    if (total - 1.0).abs() > PROBABILITY_TOL {
        return Err(invalid(format!("probabilities sum to {total}, not 1")));
    }
    Ok(())
}

/// Finite-support distribution over pure profiles.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelatedDistribution {
    support: Vec<(PureProfile, f64)>,
}

impl CorrelatedDistribution {
    /// Checks nonnegativity, unit mass and distinct profiles. Support order is kept.
    pub fn new(support: Vec<(PureProfile, f64)>) -> Result<Self> {
        check_probabilities(support.iter().map(|(_, p)| p))?;
        let mut seen: Vec<&PureProfile> = support.iter().map(|(s, _)| s).collect();
        seen.sort();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(invalid("duplicate profile in distribution support"));
        }
        Ok(CorrelatedDistribution { support })
    }

    pub fn point_mass(s: PureProfile) -> Self {
        CorrelatedDistribution { support: vec![(s, 1.0)] }
    }

    pub fn support(&self) -> &[(PureProfile, f64)] {
        &self.support
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }
}

/// Player-symmetric distribution stored by count class; each class is spread uniformly over
/// the profiles realizing it.
#[derive(Debug, Clone, PartialEq)]
pub struct ExchangeableDistribution {
    players: usize,
    support: Vec<(CountVector, f64)>,
}

impl ExchangeableDistribution {
    pub fn new(players: usize, support: Vec<(CountVector, f64)>) -> Result<Self> {
        check_probabilities(support.iter().map(|(_, p)| p))?;
        if let Some((c, _)) = support.iter().find(|(c, _)| c.total() != players) {
            return Err(invalid(format!("count vector {:?} does not sum to {players}", c.counts())));
        }
        let mut seen: Vec<&CountVector> = support.iter().map(|(c, _)| c).collect();
        seen.sort();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(invalid("duplicate count vector in distribution support"));
        }
        Ok(ExchangeableDistribution { players, support })
    }

    pub fn players(&self) -> usize {
        self.players
    }

    pub fn support(&self) -> &[(CountVector, f64)] {
        &self.support
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }
}

/// Either form of solver output.
#[derive(Debug, Clone, PartialEq)]
pub enum Distribution {
    Correlated(CorrelatedDistribution),
    Exchangeable(ExchangeableDistribution),
}

impl Distribution {
    pub fn support_size(&self) -> usize {
        match self {
            Distribution::Correlated(d) => d.len(),
            Distribution::Exchangeable(d) => d.len(),
        }
    }
}
