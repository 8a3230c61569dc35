use crate::error::{invalid, Result};

/// Dense row-major real matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(invalid("ragged matrix rows"));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(<[f64]>::to_vec).collect()
    }

    fn min_max(&self) -> (f64, f64) {
        self.data
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)))
    }
}

/// A bilateral game between players `p < q`: `a_pq` pays `p` (rows indexed by `p`'s action),
/// `a_qp` pays `q` (rows indexed by `q`'s action).
#[derive(Debug, Clone, PartialEq)]
pub struct PolymatrixEdge {
    pub p: usize,
    pub q: usize,
    pub a_pq: Matrix,
    pub a_qp: Matrix,
}

impl PolymatrixEdge {
    /// The payoff matrix owned by `owner`, oriented as (owner's action, other's action).
    pub fn matrix_for(&self, owner: usize) -> &Matrix {
        if owner == self.p {
            &self.a_pq
        } else {
            &self.a_qp
        }
    }

    pub fn other(&self, owner: usize) -> usize {
        if owner == self.p {
            self.q
        } else {
            self.p
        }
    }
}

/// Each player's utility is the sum of her payoffs in the bilateral games on incident edges.
#[derive(Debug, Clone, PartialEq)]
pub struct PolymatrixGame {
    action_counts: Vec<usize>,
    edges: Vec<PolymatrixEdge>,
    incident: Vec<Vec<usize>>,
}

impl PolymatrixGame {
    /// Validates and normalizes edges so that `p < q`, sorted by `(p, q)`.
    pub fn new(action_counts: Vec<usize>, edges: Vec<PolymatrixEdge>) -> Result<Self> {
        let n = action_counts.len();
        if n == 0 {
            return Err(invalid("a game needs at least one player"));
        }
        if action_counts.contains(&0) {
            return Err(invalid("every player needs at least one action"));
        }
        let mut normalized = Vec::with_capacity(edges.len());
        for e in edges {
            let e = if e.p > e.q {
                PolymatrixEdge {
                    p: e.q,
                    q: e.p,
                    a_pq: e.a_qp,
                    a_qp: e.a_pq,
                }
            } else {
                e
            };
            if e.p == e.q {
                return Err(invalid(format!("self-edge on player {}", e.p)));
            }
            if e.q >= n {
                return Err(invalid(format!("edge ({}, {}) references a missing player", e.p, e.q)));
            }
            let (mp, mq) = (action_counts[e.p], action_counts[e.q]);
            if e.a_pq.rows() != mp || e.a_pq.cols() != mq || e.a_qp.rows() != mq || e.a_qp.cols() != mp {
                return Err(invalid(format!("edge ({}, {}) matrix dimensions do not match action counts", e.p, e.q)));
            }
            if e.a_pq.data.iter().chain(&e.a_qp.data).any(|v| !v.is_finite()) {
                return Err(invalid("edge payoffs must be finite"));
            }
            normalized.push(e);
        }
        normalized.sort_by_key(|e| (e.p, e.q));
        if normalized.windows(2).any(|w| (w[0].p, w[0].q) == (w[1].p, w[1].q)) {
            return Err(invalid("duplicate edge between the same pair of players"));
        }
        let mut incident = vec![Vec::new(); n];
        for (k, e) in normalized.iter().enumerate() {
            incident[e.p].push(k);
            incident[e.q].push(k);
        }
        Ok(PolymatrixGame {
            action_counts,
            edges: normalized,
            incident,
        })
    }

    pub fn action_counts(&self) -> &[usize] {
        &self.action_counts
    }

    pub fn players(&self) -> usize {
        self.action_counts.len()
    }

    pub fn edges(&self) -> &[PolymatrixEdge] {
        &self.edges
    }

    /// Indices into [`edges`](Self::edges) of the edges touching `p`.
    pub fn incident(&self, p: usize) -> &[usize] {
        &self.incident[p]
    }

    pub(crate) fn with_edges(&self, edges: Vec<PolymatrixEdge>) -> Self {
        PolymatrixGame {
            action_counts: self.action_counts.clone(),
            edges,
            incident: self.incident.clone(),
        }
    }

    pub(crate) fn utility(&self, p: usize, s: &[usize]) -> f64 {
        self.incident[p]
            .iter()
            .map(|&k| {
                let e = &self.edges[k];
                e.matrix_for(p).get(s[p], s[e.other(p)])
            })
            .sum()
    }

    pub(crate) fn deviation_utilities(&self, p: usize, s: &[usize], out: &mut [f64]) {
        out.iter_mut().for_each(|o| *o = 0.0);
        for &k in &self.incident[p] {
            let e = &self.edges[k];
            let a = e.matrix_for(p);
            let other = s[e.other(p)];
            for (j, o) in out.iter_mut().enumerate() {
                *o += a.get(j, other);
            }
        }
    }

    /// Lowest and highest utility any player can receive (a bound, not necessarily attained).
    pub(crate) fn utility_range(&self) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for p in 0..self.players() {
            let (l, h) = self.incident[p].iter().fold((0.0, 0.0), |(l, h), &k| {
                let (a, b) = self.edges[k].matrix_for(p).min_max();
                (l + a, h + b)
            });
            lo = lo.min(l);
            hi = hi.max(h);
        }
        (lo, hi)
    }

    /// True iff the edge graph has no cycle.
    pub fn is_forest(&self) -> bool {
        let n = self.players();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.p), find(&mut parent, e.q));
            if a == b {
                return false;
            }
            parent[a] = b;
        }
        true
    }
}
