use super::master::{ColumnData, MasterDuals, Pricer};
use crate::error::Result;
use crate::game::{GameInstance, PureProfile};
use crate::oracle::{CoarseDeviationPlan, CoarsePricingOracle, DeviationPlan, OracleAnswer, PlayerWeights, PricingOracle};

fn player_utilities(game: &GameInstance, s: &PureProfile) -> Vec<f64> {
    (0..game.players()).map(|p| game.utility_unchecked(p, s.actions())).collect()
}

/// Columns are pure profiles with CE incentive coefficients.
pub(crate) struct CePricer<'a> {
    game: &'a GameInstance,
    /// `None` for max-min: weights come from the player-row duals.
    weights: Option<Vec<f64>>,
    oracle: &'a dyn PricingOracle,
}

impl<'a> CePricer<'a> {
    pub fn linear(game: &'a GameInstance, weights: Vec<f64>, oracle: &'a dyn PricingOracle) -> Self {
        CePricer { game, weights: Some(weights), oracle }
    }

    pub fn maxmin(game: &'a GameInstance, oracle: &'a dyn PricingOracle) -> Self {
        CePricer { game, weights: None, oracle }
    }
}

impl Pricer for CePricer<'_> {
    type Key = PureProfile;

    fn incentive_rows(&self) -> usize {
        self.game.ce_constraint_count()
    }

    fn column(&self, s: &PureProfile) -> Result<ColumnData> {
        let players = player_utilities(self.game, s);
        let objective = match &self.weights {
            Some(w) => w.iter().zip(&players).map(|(w, u)| w * u).sum(),
            None => 0.0,
        };
        let incentive = self
            .game
            .ce_column(s)?
            .into_iter()
            .filter(|&(_, a)| a != 0.0)
            .map(|(d, a)| (self.game.ce_row_index(d), a))
            .collect();
        Ok(ColumnData { objective, incentive, players })
    }

    fn initial(&self) -> Result<PureProfile> {
        let weights = match &self.weights {
            Some(w) => w.clone(),
            None => PlayerWeights::uniform(self.game.players()).as_slice().to_vec(),
        };
        let zero = DeviationPlan::zeros_for(self.game);
        Ok(self.oracle.price(self.game, &weights, &zero, f64::NEG_INFINITY, 0.0)?.witness)
    }

    fn price(&self, duals: &MasterDuals, eps: f64) -> Result<OracleAnswer<PureProfile>> {
        let y = DeviationPlan::from_ce_values(self.game, &duals.incentive)?;
        let weights = match &self.weights {
            Some(w) => w.clone(),
            None => PlayerWeights::renormalized(&duals.players).as_slice().to_vec(),
        };
        self.oracle.price(self.game, &weights, &y, duals.t, eps)
    }
}

/// Columns are pure profiles with CCE coefficients.
pub(crate) struct CcePricer<'a> {
    game: &'a GameInstance,
    weights: Vec<f64>,
    oracle: &'a dyn CoarsePricingOracle,
}

impl<'a> CcePricer<'a> {
    pub fn new(game: &'a GameInstance, weights: Vec<f64>, oracle: &'a dyn CoarsePricingOracle) -> Self {
        CcePricer { game, weights, oracle }
    }
}

impl Pricer for CcePricer<'_> {
    type Key = PureProfile;

    fn incentive_rows(&self) -> usize {
        self.game.coarse_rows()
    }

    fn column(&self, s: &PureProfile) -> Result<ColumnData> {
        let players = player_utilities(self.game, s);
        let objective = self.weights.iter().zip(&players).map(|(w, u)| w * u).sum();
        let incentive = self
            .game
            .cce_column(s)?
            .into_iter()
            .filter(|&(_, a)| a != 0.0)
            .map(|(d, a)| (self.game.coarse_row_index(d), a))
            .collect();
        Ok(ColumnData { objective, incentive, players })
    }

    fn initial(&self) -> Result<PureProfile> {
        let zero = CoarseDeviationPlan::zeros_for(self.game);
        Ok(self
            .oracle
            .price_coarse(self.game, &self.weights, &zero, f64::NEG_INFINITY, 0.0)?
            .witness)
    }

    fn price(&self, duals: &MasterDuals, eps: f64) -> Result<OracleAnswer<PureProfile>> {
        let y = CoarseDeviationPlan::from_values(self.game, &duals.incentive)?;
        self.oracle.price_coarse(self.game, &self.weights, &y, duals.t, eps)
    }
}
