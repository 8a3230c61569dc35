use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One action index per player; entry `p` lies in `[0, m_p)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PureProfile(Vec<usize>);

impl PureProfile {
    pub fn new(actions: Vec<usize>) -> Self {
        PureProfile(actions)
    }

    pub fn actions(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.0
    }
}

impl From<Vec<usize>> for PureProfile {
    fn from(v: Vec<usize>) -> Self {
        PureProfile(v)
    }
}

impl std::ops::Index<usize> for PureProfile {
    type Output = usize;
    fn index(&self, p: usize) -> &usize {
        &self.0[p]
    }
}

/// Per-action tally of players for symmetric games. Entries sum to the player count.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CountVector(Vec<usize>);

impl CountVector {
    pub fn new(counts: Vec<usize>) -> Self {
        CountVector(counts)
    }

    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// The profile that assigns the first `c(0)` players to action 0, the next `c(1)` to action 1, ...
    pub fn canonical_profile(&self) -> PureProfile {
        let mut actions = Vec::with_capacity(self.total());
        for (a, &c) in self.0.iter().enumerate() {
            actions.extend(std::iter::repeat(a).take(c));
        }
        PureProfile(actions)
    }
}

impl std::ops::Index<usize> for CountVector {
    type Output = usize;
    fn index(&self, a: usize) -> &usize {
        &self.0[a]
    }
}

/// Tallies how many players chose each of `k` actions.
pub fn count_vector(s: &[usize], k: usize) -> Result<CountVector> {
    let mut c = vec![0; k];
    for &a in s {
        if a >= k {
            return Err(Error::InvalidArgument(format!("action {a} out of range for {k} actions")));
        }
        c[a] += 1;
    }
    Ok(CountVector(c))
}

/// Number of profiles realizing the count vector: `n! / prod c(a)!`.
pub fn profiles_with_counts(c: &CountVector) -> u128 {
    // Product of binomials avoids the factorial overflow.
    let mut total: u128 = 1;
    let mut placed: u128 = 0;
    for &ca in c.counts() {
        for i in 1..=ca as u128 {
            placed += 1;
            total = total * placed / i;
        }
    }
    total
}

/// Lexicographic iterator over mixed-radix profiles (player 0 most significant).
#[derive(Debug, Clone)]
pub struct ProfileIter {
    radix: Vec<usize>,
    next: Option<Vec<usize>>,
}

impl ProfileIter {
    pub fn new(action_counts: &[usize]) -> Self {
        let next = if action_counts.iter().all(|&m| m > 0) {
            Some(vec![0; action_counts.len()])
        } else {
            None
        };
        ProfileIter {
            radix: action_counts.to_vec(),
            next,
        }
    }
}

impl Iterator for ProfileIter {
    type Item = PureProfile;

    fn next(&mut self) -> Option<PureProfile> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        let mut pos = succ.len();
        let mut carried_out = true;
        while pos > 0 {
            pos -= 1;
            succ[pos] += 1;
            if succ[pos] < self.radix[pos] {
                carried_out = false;
                break;
            }
            succ[pos] = 0;
        }
        if !carried_out {
            self.next = Some(succ);
        }
        Some(PureProfile(cur))
    }
}

/// All profiles with a given count vector, in lexicographic order.
pub fn profiles_in_class(c: &CountVector) -> Vec<PureProfile> {
    fn rec(remaining: &mut [usize], prefix: &mut Vec<usize>, n: usize, out: &mut Vec<PureProfile>) {
        if prefix.len() == n {
            out.push(PureProfile(prefix.clone()));
            return;
        }
        for a in 0..remaining.len() {
            if remaining[a] > 0 {
                remaining[a] -= 1;
                prefix.push(a);
                rec(remaining, prefix, n, out);
                prefix.pop();
                remaining[a] += 1;
            }
        }
    }
    let mut remaining = c.counts().to_vec();
    let n = c.total();
    let mut out = Vec::new();
    rec(&mut remaining, &mut Vec::with_capacity(n), n, &mut out);
    out
}

/// All count vectors over `k` actions summing to `n`, in lexicographic order.
pub fn count_vectors(n: usize, k: usize) -> Vec<CountVector> {
    fn rec(k: usize, left: usize, prefix: &mut Vec<usize>, out: &mut Vec<CountVector>) {
        if prefix.len() + 1 == k {
            prefix.push(left);
            out.push(CountVector(prefix.clone()));
            prefix.pop();
            return;
        }
        for c in 0..=left {
            prefix.push(c);
            rec(k, left - c, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if k > 0 {
        rec(k, n, &mut Vec::with_capacity(k), &mut out);
    }
    out
}
