//! Optimal correlated and coarse correlated equilibria of compactly represented games.
//!
//! The solvers in [`colgen`] grow a restricted master LP over pure profiles, pricing new columns
//! with the deviation-adjusted welfare oracles in [`oracle`]. Three representations are
//! supported: explicit normal form, polymatrix (with a polynomial oracle on forests) and
//! singleton congestion games (with a symmetric coarse solver over count vectors).

pub mod colgen;
pub mod distribution;
pub mod error;
pub mod gen;
pub mod game;
pub mod io;
pub mod lp;
pub mod oracle;
pub mod verify;

pub use colgen::{Concept, Method, ObjectiveSpec, OracleKind, SolveReport, SolverConfig};
pub use distribution::{CorrelatedDistribution, Distribution, ExchangeableDistribution};
pub use error::{Error, Result};
pub use game::{
    CoarseDeviation, CountVector, Deviation, GameInstance, Matrix, NormalFormGame, PolymatrixEdge, PolymatrixGame,
    PureProfile, Representation, SingletonCongestionGame,
};
pub use oracle::{CoarseDeviationPlan, DeviationPlan, Direction, OracleAnswer, PlayerWeights};
pub use verify::VerificationReport;
