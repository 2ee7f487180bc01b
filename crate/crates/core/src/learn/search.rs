//! Greedy score-based structure search.

use std::collections::{HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::counts::CountTable;
use super::score::ScoreKind;
use super::skeleton::learn_skeleton;
use crate::dag::Dag;
use crate::dataset::DataTable;
use crate::error::{Error, Result};

/// Moves must improve the score by more than this to be accepted.
const MIN_IMPROVEMENT: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Move {
    Add(usize, usize),
    Delete(usize, usize),
    Reverse(usize, usize),
}

#[derive(Clone, Debug)]
pub struct HillClimb {
    pub kind: ScoreKind,
    pub max_iter: usize,
    /// Random restarts after the first local optimum. Zero by default.
    pub restarts: usize,
    /// Edges flipped at random at the start of each restart.
    pub perturbation: usize,
    pub seed: u64,
}

impl Default for HillClimb {
    fn default() -> Self {
        HillClimb {
            kind: ScoreKind::Bic,
            max_iter: 1_000,
            restarts: 0,
            perturbation: 3,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub dag: Dag,
    pub score: f64,
    /// Score of the start graph followed by the score after every accepted
    /// move of the winning climb.
    pub trace: Vec<f64>,
    pub moves: Vec<Move>,
}

/// Column pairs `(parent, child)` the search may use.
pub type CandidateEdges = HashSet<(usize, usize)>;

struct Search<'a> {
    data: &'a DataTable,
    kind: ScoreKind,
    allowed: Option<&'a CandidateEdges>,
    cache: HashMap<(usize, Vec<usize>), f64>,
}

impl<'a> Search<'a> {
    fn family(&mut self, child: usize, parents: &[usize]) -> f64 {
        let mut key = parents.to_vec();
        key.sort_unstable();
        if let Some(&s) = self.cache.get(&(child, key.clone())) {
            return s;
        }
        let t = CountTable::from_columns(self.data, child, &key);
        let s = self.kind.family(&t, self.data.n_rows());
        self.cache.insert((child, key), s);
        s
    }

    fn allowed(&self, from: usize, to: usize) -> bool {
        self.allowed.is_none_or(|a| a.contains(&(from, to)))
    }

    fn total(&mut self, parents: &[Vec<usize>]) -> f64 {
        (0..parents.len()).map(|v| self.family(v, &parents[v])).sum()
    }

    /// Best strictly improving single-edge move, first found on ties.
    fn best_move(&mut self, parents: &[Vec<usize>]) -> Option<(Move, f64)> {
        let n = parents.len();
        let mut best: Option<(Move, f64)> = None;
        let consider = |m: Move, delta: f64, best: &mut Option<(Move, f64)>| {
            if delta > MIN_IMPROVEMENT && best.is_none_or(|(_, d)| delta > d) {
                *best = Some((m, delta));
            }
        };
        for u in 0..n {
            for v in 0..n {
                if u == v {
                    continue;
                }
                let current_v = self.family(v, &parents[v]);
                if parents[v].contains(&u) {
                    let without: Vec<usize> = parents[v].iter().copied().filter(|&p| p != u).collect();
                    let delete = self.family(v, &without) - current_v;
                    consider(Move::Delete(u, v), delete, &mut best);
                    if self.allowed(v, u) && !reaches(parents, v, u, Some((u, v))) {
                        let mut with = parents[u].clone();
                        with.push(v);
                        let delta = delete + self.family(u, &with) - self.family(u, &parents[u]);
                        consider(Move::Reverse(u, v), delta, &mut best);
                    }
                } else if !parents[u].contains(&v) && self.allowed(u, v) && !reaches(parents, u, v, None) {
                    let mut with = parents[v].clone();
                    with.push(u);
                    let delta = self.family(v, &with) - current_v;
                    consider(Move::Add(u, v), delta, &mut best);
                }
            }
        }
        best
    }

    fn climb(&mut self, parents: &mut [Vec<usize>], max_iter: usize) -> (Vec<f64>, Vec<Move>) {
        let mut score = self.total(parents);
        let mut trace = vec![score];
        let mut moves = Vec::new();
        for _ in 0..max_iter {
            let Some((m, delta)) = self.best_move(parents) else {
                break;
            };
            apply(parents, m);
            score += delta;
            trace.push(score);
            moves.push(m);
        }
        (trace, moves)
    }
}

/// True if `to` already reaches `from` through directed edges, i.e. adding
/// `from -> to` would close a cycle. `ignore` is an edge treated as absent.
fn reaches(parents: &[Vec<usize>], from: usize, to: usize, ignore: Option<(usize, usize)>) -> bool {
    // Walk parent links upward from `from`, looking for `to`.
    let mut stack = vec![from];
    let mut seen = vec![false; parents.len()];
    while let Some(n) = stack.pop() {
        for &p in &parents[n] {
            if Some((p, n)) == ignore {
                continue;
            }
            if p == to {
                return true;
            }
            if !seen[p] {
                seen[p] = true;
                stack.push(p);
            }
        }
    }
    false
}

fn apply(parents: &mut [Vec<usize>], m: Move) {
    match m {
        Move::Add(u, v) => parents[v].push(u),
        Move::Delete(u, v) => parents[v].retain(|&p| p != u),
        Move::Reverse(u, v) => {
            parents[v].retain(|&p| p != u);
            parents[u].push(v);
        }
    }
}

fn to_dag(data: &DataTable, parents: &[Vec<usize>]) -> Result<Dag> {
    let names: Vec<&str> = data.names().collect();
    let edges: Vec<(&str, &str)> = parents
        .iter()
        .enumerate()
        .flat_map(|(v, ps)| ps.iter().map(move |&p| (p, v)))
        .map(|(p, v)| (names[p], names[v]))
        .collect();
    Dag::new(names.iter().copied(), edges)
}

impl HillClimb {
    pub fn run(&self, data: &DataTable) -> Result<SearchResult> {
        self.run_restricted(data, None)
    }

    /// Search using only the `(parent, child)` column pairs in `allowed`.
    pub fn run_restricted(&self, data: &DataTable, allowed: Option<&CandidateEdges>) -> Result<SearchResult> {
        if data.n_columns() < 2 {
            return Err(Error::SchemaMismatch(
                "structure search needs at least two columns".into(),
            ));
        }
        let mut search = Search {
            data,
            kind: self.kind,
            allowed,
            cache: HashMap::new(),
        };
        if let ScoreKind::Bdeu { ess } = self.kind {
            if !(ess > 0.0 && ess.is_finite()) {
                return Err(Error::NonPositiveEss(ess));
            }
        }

        let n = data.n_columns();
        let mut parents = vec![Vec::new(); n];
        let (trace, moves) = search.climb(&mut parents, self.max_iter);
        let mut best = (parents.clone(), trace, moves);

        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        for _ in 0..self.restarts {
            let mut start = best.0.clone();
            perturb(&mut start, self.perturbation, &mut rng, &search);
            let (trace, moves) = search.climb(&mut start, self.max_iter);
            if trace.last() > best.1.last() {
                best = (start, trace, moves);
            }
        }

        let (parents, trace, moves) = best;
        Ok(SearchResult {
            dag: to_dag(data, &parents)?,
            score: *trace.last().expect("trace has the start score"),
            trace,
            moves,
        })
    }
}

/// Apply up to `k` random legal moves.
fn perturb(parents: &mut [Vec<usize>], k: usize, rng: &mut ChaCha8Rng, search: &Search<'_>) {
    let n = parents.len();
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .filter(|(u, v)| u != v)
        .collect();
    pairs.shuffle(rng);
    let mut applied = 0;
    for (u, v) in pairs {
        if applied == k {
            break;
        }
        let m = if parents[v].contains(&u) {
            if search.allowed(v, u) && !reaches(parents, v, u, Some((u, v))) {
                Move::Reverse(u, v)
            } else {
                Move::Delete(u, v)
            }
        } else if !parents[u].contains(&v) && search.allowed(u, v) && !reaches(parents, u, v, None) {
            Move::Add(u, v)
        } else {
            continue;
        };
        apply(parents, m);
        applied += 1;
    }
}

/// Greedy add/delete/reverse search from the empty graph.
pub fn hill_climb(data: &DataTable, kind: ScoreKind, max_iter: usize, seed: u64) -> Result<Dag> {
    let hc = HillClimb {
        kind,
        max_iter,
        seed,
        ..HillClimb::default()
    };
    Ok(hc.run(data)?.dag)
}

/// Hill climbing restricted to edges of the constraint-based skeleton.
pub fn hybrid_learn(data: &DataTable, alpha: f64, kind: ScoreKind, max_sepset: usize) -> Result<SearchResult> {
    let skeleton = learn_skeleton(data, alpha, max_sepset)?;
    let mut allowed = CandidateEdges::new();
    for (a, b) in skeleton.edges() {
        let a = data.column_index(a)?;
        let b = data.column_index(b)?;
        allowed.insert((a, b));
        allowed.insert((b, a));
    }
    HillClimb {
        kind,
        ..HillClimb::default()
    }
    .run_restricted(data, Some(&allowed))
}
