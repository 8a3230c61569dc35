//! `optce`: optimal correlated equilibria from the command line.

mod config;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use optce_core::colgen::{price_of_anarchy, solve};
use optce_core::gen::{random_normal_form, random_singleton_congestion, random_tree_polymatrix};
use optce_core::io::{self, game_to_string, parse_game, parse_solution, solution_to_string, verification_to_string};
use optce_core::verify::{check_ce, expand_exchangeable};
use optce_core::{
    Concept, Direction, Distribution, Error, GameInstance, ObjectiveSpec, PlayerWeights, SolveReport,
    VerificationReport,
};
use serde_json::json;

use config::{ConfigArgs, RunConfig};

#[derive(Parser)]
#[command(name = "optce", version, about = "Optimal correlated and coarse correlated equilibria")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute an optimal CE, CCE or max-min CE and print it as JSON.
    Solve {
        game: PathBuf,
        #[arg(long, value_enum, default_value = "ce")]
        concept: ConceptArg,
        #[arg(long, value_enum, default_value = "max")]
        direction: DirectionArg,
        /// Comma-separated player weights; defaults to social welfare.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        weights: Option<Vec<f64>>,
        #[command(flatten)]
        config: ConfigArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check a solution file against its game.
    Verify {
        game: PathBuf,
        solution: PathBuf,
        /// Largest accepted constraint or probability residual.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Best-outcome welfare over the welfare of the worst equilibrium.
    Poa {
        game: PathBuf,
        #[arg(long, value_enum, default_value = "ce")]
        concept: ConceptArg,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Write a seeded random game.
    Gen {
        #[arg(long, value_enum)]
        kind: GameKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        players: usize,
        /// Actions per player (resources for congestion games).
        #[arg(long, default_value_t = 2)]
        actions: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ConceptArg {
    Ce,
    Cce,
    Maxmin,
}

impl From<ConceptArg> for Concept {
    fn from(c: ConceptArg) -> Self {
        match c {
            ConceptArg::Ce => Concept::Ce,
            ConceptArg::Cce => Concept::Cce,
            ConceptArg::Maxmin => Concept::Maxmin,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum DirectionArg {
    Max,
    Min,
}

#[derive(Clone, Copy, ValueEnum)]
enum GameKind {
    NormalForm,
    TreePolymatrix,
    SingletonCongestion,
}

/// A failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) | Error::InvalidArgument(_) => 2,
            Error::NonConvergence { .. } | Error::PenaltyFailure { .. } => 3,
            Error::ResourceLimit { .. } => 4,
            Error::UndefinedRatio(_) => 5,
            Error::UnsupportedStructure(_) | Error::Lp(_) => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn load_game(path: &Path) -> Result<GameInstance, Failure> {
    Ok(parse_game(&read(path)?)?)
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure {
            code: 1,
            message: format!("cannot write {}: {e}", path.display()),
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Explicit verification of a distribution. Exchangeable distributions are expanded first;
/// `None` if the expansion would exceed the cap.
fn verification(game: &GameInstance, dist: &Distribution, cap: u128) -> Result<Option<VerificationReport>, Failure> {
    let expanded;
    let correlated = match dist {
        Distribution::Correlated(d) => d,
        Distribution::Exchangeable(xc) => match expand_exchangeable(game, xc, cap) {
            Ok(d) => {
                expanded = d;
                &expanded
            }
            Err(Error::ResourceLimit { .. }) => return Ok(None),
            Err(e) => return Err(e.into()),
        },
    };
    Ok(Some(check_ce(game, correlated)?))
}

fn violation(concept: Concept, report: &VerificationReport) -> f64 {
    let v = match concept {
        Concept::Cce => report.cce_violation(),
        _ => report.ce_violation(),
    };
    v.max(report.probability_sum_residual)
}

fn cmd_solve(
    game: &Path,
    concept: Concept,
    direction: Direction,
    weights: Option<Vec<f64>>,
    run: &RunConfig,
    out: Option<&Path>,
) -> Result<(), Failure> {
    let game = load_game(game)?;
    let weights = match weights {
        Some(w) => PlayerWeights::new(w)?,
        None => PlayerWeights::ones(game.players()),
    };
    let objective = ObjectiveSpec::new(weights, direction);
    let cfg = run.solver_config();
    let report: SolveReport = solve(&game, concept, &objective, run.method, run.oracle, &cfg)?;
    let check = verification(&game, &report.distribution, cfg.expansion_cap)?;
    emit(&solution_to_string(&report, check.as_ref()), out)?;
    let residual = check.as_ref().map_or(report.max_violation, |c| violation(concept, c));
    if residual > run.certify_tol() {
        return Err(Failure {
            code: 3,
            message: format!("solution violates its constraints by {residual:e}"),
        });
    }
    Ok(())
}

fn cmd_verify(game: &Path, solution: &Path, tol: f64) -> Result<(), Failure> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(usage("--tol must be positive"));
    }
    let game = load_game(game)?;
    let parsed = parse_solution(&read(solution)?, game.players())?;
    let Some(report) = verification(&game, &parsed.distribution, u128::MAX)? else {
        unreachable!("uncapped expansion");
    };
    print!("{}", verification_to_string(&report));
    let residual = violation(parsed.concept, &report);
    if residual > tol {
        return Err(Failure {
            code: 1,
            message: format!("residual {residual:e} exceeds {tol:e}"),
        });
    }
    Ok(())
}

fn cmd_poa(game: &Path, concept: Concept, run: &RunConfig) -> Result<(), Failure> {
    let game = load_game(game)?;
    let ratio = price_of_anarchy(&game, concept, run.method, run.oracle, &run.solver_config())?;
    let value = json!({"concept": concept.as_str(), "price_of_anarchy": ratio});
    print!("{}", io::to_stable_string(value));
    Ok(())
}

fn cmd_gen(kind: GameKind, seed: u64, players: usize, actions: usize, out: Option<&Path>) -> Result<(), Failure> {
    if players == 0 || actions == 0 {
        return Err(usage("--players and --actions must be at least 1"));
    }
    let counts = vec![actions; players];
    let game = match kind {
        GameKind::NormalForm => random_normal_form(seed, &counts)?,
        GameKind::TreePolymatrix => random_tree_polymatrix(seed, &counts)?,
        GameKind::SingletonCongestion => random_singleton_congestion(seed, players, actions)?,
    };
    emit(&game_to_string(&game), out)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Solve {
            game,
            concept,
            direction,
            weights,
            config,
            out,
        } => {
            let direction = match direction {
                DirectionArg::Max => Direction::Max,
                DirectionArg::Min => Direction::Min,
            };
            let run = RunConfig::try_from(config).map_err(usage)?;
            cmd_solve(&game, concept.into(), direction, weights, &run, out.as_deref())
        }
        Command::Verify { game, solution, tol } => cmd_verify(&game, &solution, tol),
        Command::Poa { game, concept, config } => {
            let run = RunConfig::try_from(config).map_err(usage)?;
            cmd_poa(&game, concept.into(), &run)
        }
        Command::Gen {
            kind,
            seed,
            players,
            actions,
            out,
        } => cmd_gen(kind, seed, players, actions, out.as_deref()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("optce: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
