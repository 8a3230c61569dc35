//! Seeded random instances. Payoffs are uniform on `[0, 1)`; trees attach player `p > 0` to a
//! uniformly random earlier player.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::game::{GameInstance, Matrix, NormalFormGame, PolymatrixEdge, PolymatrixGame, SingletonCongestionGame};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> Matrix {
    let mut m = Matrix::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m.set(r, c, rng.gen::<f64>());
        }
    }
    m
}

pub fn random_normal_form(seed: u64, action_counts: &[usize]) -> Result<GameInstance> {
    let mut rng = rng(seed);
    let len = action_counts.len() * action_counts.iter().product::<usize>();
    let utilities = (0..len).map(|_| rng.gen::<f64>()).collect();
    Ok(NormalFormGame::new(action_counts.to_vec(), utilities)?.into())
}

pub fn random_tree_polymatrix(seed: u64, action_counts: &[usize]) -> Result<GameInstance> {
    let mut rng = rng(seed);
    let edges = (1..action_counts.len())
        .map(|q| {
            let p = rng.gen_range(0..q);
            PolymatrixEdge {
                p,
                q,
                a_pq: random_matrix(&mut rng, action_counts[p], action_counts[q]),
                a_qp: random_matrix(&mut rng, action_counts[q], action_counts[p]),
            }
        })
        .collect();
    Ok(PolymatrixGame::new(action_counts.to_vec(), edges)?.into())
}

pub fn random_singleton_congestion(seed: u64, players: usize, actions: usize) -> Result<GameInstance> {
    let mut rng = rng(seed);
    let table = (0..actions)
        .map(|_| (0..players).map(|_| rng.gen::<f64>()).collect())
        .collect();
    Ok(SingletonCongestionGame::new(players, table)?.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_are_reproducible() {
        assert_eq!(random_normal_form(3, &[2, 3]).unwrap(), random_normal_form(3, &[2, 3]).unwrap());
        assert_ne!(random_normal_form(3, &[2, 3]).unwrap(), random_normal_form(4, &[2, 3]).unwrap());
        let t = random_tree_polymatrix(7, &[3; 6]).unwrap();
        match t.representation() {
            crate::Representation::Polymatrix(g) => {
                assert_eq!(g.edges().len(), 5);
                assert!(g.is_forest());
            }
            _ => unreachable!(),
        }
    }
}
