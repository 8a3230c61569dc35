//! JSON game and solution files.
//!
//! Numbers are written with 12 significant digits and object keys in sorted order, so equal
//! inputs give byte-identical files.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::colgen::{Concept, SolveReport};
use crate::distribution::{CorrelatedDistribution, Distribution, ExchangeableDistribution};
use crate::error::{Error, Result};
use crate::game::{
    CountVector, GameInstance, Matrix, NormalFormGame, PolymatrixEdge, PolymatrixGame, PureProfile, Representation,
    SingletonCongestionGame,
};
use crate::verify::VerificationReport;

/// Rounds to 12 significant digits; `-0.0` becomes `0.0`.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

fn round_value(v: Value) -> Value {
    match v {
        Value::Number(n) if !(n.is_i64() || n.is_u64()) => {
            let x = round_sig(n.as_f64().unwrap_or(0.0));
            serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(round_value).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_value(v))).collect()),
        other => other,
    }
}

/// Pretty-printed JSON with rounded numbers and a trailing newline.
pub fn to_stable_string(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&round_value(v)).expect("JSON values serialize");
    s.push('\n');
    s
}

#[derive(Debug, Serialize, Deserialize)]
struct EdgeFile {
    p: usize,
    q: usize,
    #[serde(rename = "A_pq")]
    a_pq: Vec<Vec<f64>>,
    #[serde(rename = "A_qp")]
    a_qp: Vec<Vec<f64>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
enum GameFile {
    NormalForm {
        players: usize,
        actions: Vec<usize>,
        utilities: Vec<Vec<f64>>,
    },
    Polymatrix {
        players: usize,
        actions: Vec<usize>,
        edges: Vec<EdgeFile>,
    },
    SingletonCongestion {
        players: usize,
        actions: Vec<usize>,
        f: Vec<Vec<f64>>,
    },
}

fn parse_err(e: impl std::fmt::Display) -> Error {
    Error::Parse(e.to_string())
}

fn check_players(players: usize, actions: &[usize]) -> Result<()> {
    if players != actions.len() {
        return Err(Error::Parse(format!(
            "\"players\" is {players} but \"actions\" lists {} players",
            actions.len()
        )));
    }
    Ok(())
}

/// Parses a game file. Structural problems surface as [`Error::Parse`].
pub fn parse_game(text: &str) -> Result<GameInstance> {
    let file: GameFile = serde_json::from_str(text).map_err(parse_err)?;
    let game: GameInstance = match file {
        GameFile::NormalForm {
            players,
            actions,
            utilities,
        } => {
            check_players(players, &actions)?;
            NormalFormGame::from_rows(actions, &utilities).map_err(parse_err)?.into()
        }
        GameFile::Polymatrix { players, actions, edges } => {
            check_players(players, &actions)?;
            let edges = edges
                .into_iter()
                .map(|e| {
                    Ok(PolymatrixEdge {
                        p: e.p,
                        q: e.q,
                        a_pq: Matrix::from_rows(&e.a_pq)?,
                        a_qp: Matrix::from_rows(&e.a_qp)?,
                    })
                })
                .collect::<Result<Vec<_>>>()
                .map_err(parse_err)?;
            PolymatrixGame::new(actions, edges).map_err(parse_err)?.into()
        }
        GameFile::SingletonCongestion { players, actions, f } => {
            check_players(players, &actions)?;
            if actions.iter().any(|&m| m != f.len()) {
                return Err(Error::Parse(format!(
                    "every player must have {} actions in a singleton congestion game",
                    f.len()
                )));
            }
            SingletonCongestionGame::new(players, f).map_err(parse_err)?.into()
        }
    };
    Ok(game)
}

pub fn game_to_value(game: &GameInstance) -> Value {
    let file = match game.representation() {
        Representation::NormalForm(g) => GameFile::NormalForm {
            players: game.players(),
            actions: game.action_counts().to_vec(),
            utilities: g.rows().map(<[f64]>::to_vec).collect(),
        },
        Representation::Polymatrix(g) => GameFile::Polymatrix {
            players: game.players(),
            actions: game.action_counts().to_vec(),
            edges: g
                .edges()
                .iter()
                .map(|e| EdgeFile {
                    p: e.p,
                    q: e.q,
                    a_pq: e.a_pq.to_rows(),
                    a_qp: e.a_qp.to_rows(),
                })
                .collect(),
        },
        Representation::SingletonCongestion(g) => GameFile::SingletonCongestion {
            players: game.players(),
            actions: game.action_counts().to_vec(),
            f: g.table().to_vec(),
        },
    };
    serde_json::to_value(file).expect("game files serialize")
}

pub fn game_to_string(game: &GameInstance) -> String {
    to_stable_string(game_to_value(game))
}

pub fn solution_to_value(report: &SolveReport, verification: Option<&VerificationReport>) -> Value {
    let support: Vec<Value> = match &report.distribution {
        Distribution::Correlated(d) => d
            .support()
            .iter()
            .map(|(s, p)| json!({"profile": s.actions(), "p": p}))
            .collect(),
        Distribution::Exchangeable(d) => d
            .support()
            .iter()
            .map(|(c, p)| json!({"counts": c.counts(), "p": p}))
            .collect(),
    };
    let kind = if report.concept == Concept::Maxmin { "maxmin" } else { "linear" };
    let mut out = json!({
        "concept": report.concept.as_str(),
        "objective": {
            "kind": kind,
            "direction": report.objective.direction,
            "weights": report.objective.weights.as_slice(),
        },
        "value": report.value,
        "support": support,
        "report": {
            "method": report.method,
            "oracle": report.oracle,
            "iterations": report.iterations,
            "oracle_calls": report.oracle_calls,
            "penalty": report.penalty,
            "max_violation": report.max_violation,
            "duality_gap": report.duality_gap,
            "support_size": report.distribution.support_size(),
        },
    });
    if let Some(v) = verification {
        out["verification"] = serde_json::to_value(v).expect("reports serialize");
    }
    out
}

pub fn solution_to_string(report: &SolveReport, verification: Option<&VerificationReport>) -> String {
    to_stable_string(solution_to_value(report, verification))
}

#[derive(Debug, Deserialize)]
struct SupportEntry {
    profile: Option<Vec<usize>>,
    counts: Option<Vec<usize>>,
    p: f64,
}

#[derive(Debug, Deserialize)]
struct SolutionFile {
    concept: Concept,
    value: f64,
    support: Vec<SupportEntry>,
}

/// The parts of a solution file needed to re-verify it.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedSolution {
    pub concept: Concept,
    pub value: f64,
    pub distribution: Distribution,
}

pub fn parse_solution(text: &str, players: usize) -> Result<ParsedSolution> {
    let file: SolutionFile = serde_json::from_str(text).map_err(parse_err)?;
    let exchangeable = file.support.iter().any(|e| e.counts.is_some());
    let distribution = if exchangeable {
        let support = file
            .support
            .into_iter()
            .map(|e| {
                e.counts
                    .map(|c| (CountVector::new(c), e.p))
                    .ok_or_else(|| Error::Parse("mixed profile and count entries".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Distribution::Exchangeable(ExchangeableDistribution::new(players, support).map_err(parse_err)?)
    } else {
        let support = file
            .support
            .into_iter()
            .map(|e| {
                e.profile
                    .map(|s| (PureProfile::new(s), e.p))
                    .ok_or_else(|| Error::Parse("support entry without \"profile\"".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Distribution::Correlated(CorrelatedDistribution::new(support).map_err(parse_err)?)
    };
    Ok(ParsedSolution {
        concept: file.concept,
        value: file.value,
        distribution,
    })
}

pub fn verification_to_string(report: &VerificationReport) -> String {
    to_stable_string(serde_json::to_value(report).expect("reports serialize"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use proptest::prelude::*;

    #[test]
    fn parses_each_representation() {
        let nf = r#"{"type":"normal_form","players":2,"actions":[2,2],
            "utilities":[[3,3],[0,5],[5,0],[1,1]]}"#;
        let g = parse_game(nf).unwrap();
        assert_eq!(g.utility(0, &PureProfile::new(vec![1, 0])).unwrap(), 5.0);

        let pm = r#"{"type":"polymatrix","players":2,"actions":[2,2],
            "edges":[{"p":0,"q":1,"A_pq":[[1,0],[0,2]],"A_qp":[[0,0],[0,1]]}]}"#;
        let g = parse_game(pm).unwrap();
        assert_eq!(g.utility(1, &PureProfile::new(vec![1, 1])).unwrap(), 1.0);

        let scg = r#"{"type":"singleton_congestion","players":2,"actions":[2,2],"f":[[3,1],[2,2]]}"#;
        let g = parse_game(scg).unwrap();
        assert_eq!(g.utility(0, &PureProfile::new(vec![0, 0])).unwrap(), 1.0);
    }

    #[test]
    fn malformed_files_are_parse_errors() {
        for bad in [
            "not json",
            r#"{"type":"normal_form","players":2,"actions":[2,2],"utilities":[[1,1]]}"#,
            r#"{"type":"normal_form","players":3,"actions":[2,2],"utilities":[]}"#,
            r#"{"type":"hypergraph","players":1,"actions":[1]}"#,
            r#"{"type":"singleton_congestion","players":2,"actions":[3,3],"f":[[3,1],[2,2]]}"#,
            r#"{"type":"polymatrix","players":2,"actions":[2,2],"edges":[{"p":0,"q":0,"A_pq":[[1,0],[0,2]],"A_qp":[[0,0],[0,1]]}]}"#,
        ] {
            assert!(matches!(parse_game(bad), Err(Error::Parse(_))), "{bad}");
        }
    }

    #[test]
    fn rounding() {
        assert_eq!(round_sig(1.0 / 3.0), 0.333333333333);
        assert_eq!(round_sig(-0.0), 0.0);
        assert_eq!(round_sig(10.5), 10.5);
    }

    proptest! {
        #[test]
        fn game_files_round_trip(seed in 0u64..500, kind in 0usize..3) {
            let g = match kind {
                0 => gen::random_normal_form(seed, &[2, 3]).unwrap(),
                1 => gen::random_tree_polymatrix(seed, &[2, 3, 2]).unwrap(),
                _ => gen::random_singleton_congestion(seed, 3, 2).unwrap(),
            };
            let text = game_to_string(&g);
            let back = parse_game(&text).unwrap();
            prop_assert_eq!(game_to_string(&back), text);
            for s in g.enumerate_profiles(1000).unwrap() {
                for p in 0..g.players() {
                    let (a, b) = (g.utility(p, &s).unwrap(), back.utility(p, &s).unwrap());
                    prop_assert!((a - b).abs() <= 1e-11);
                }
            }
        }
    }
}
