//! PC-style skeleton discovery.

use std::collections::{BTreeMap, BTreeSet};

use super::citest::ci_test_columns;
use crate::dataset::DataTable;
use crate::error::{Error, Result};

/// Undirected graph plus the separating set that removed each missing edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Skeleton {
    nodes: Vec<String>,
    /// Pairs `(i, j)` with `i < j` in node-index order.
    edges: BTreeSet<(usize, usize)>,
    sepsets: BTreeMap<(usize, usize), BTreeSet<usize>>,
}

fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

impl Skeleton {
    /// Build from names. Every non-adjacent pair must have a sepset and no
    /// adjacent pair may have one.
    pub fn new(nodes: &[&str], edges: &[(&str, &str)], sepsets: &[((&str, &str), &[&str])]) -> Result<Self> {
        let idx = |n: &str| {
            nodes
                .iter()
                .position(|m| *m == n)
                .ok_or_else(|| Error::UnknownNode(n.to_string()))
        };
        let mut s = Skeleton {
            nodes: nodes.iter().map(|n| n.to_string()).collect(),
            edges: BTreeSet::new(),
            sepsets: BTreeMap::new(),
        };
        for (a, b) in edges {
            let (a, b) = (idx(a)?, idx(b)?);
            if a == b {
                return Err(Error::SelfLoop(nodes[a].to_string()));
            }
            s.edges.insert(key(a, b));
        }
        for ((a, b), set) in sepsets {
            let set = set.iter().map(|n| idx(n)).collect::<Result<BTreeSet<_>>>()?;
            s.sepsets.insert(key(idx(a)?, idx(b)?), set);
        }
        for a in 0..nodes.len() {
            for b in a + 1..nodes.len() {
                if s.edges.contains(&(a, b)) == s.sepsets.contains_key(&(a, b)) {
                    return Err(Error::Format(format!(
                        "pair {}-{} needs exactly one of an edge or a sepset",
                        nodes[a], nodes[b]
                    )));
                }
            }
        }
        Ok(s)
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn edges(&self) -> impl Iterator<Item = (&str, &str)> {
        self.edges
            .iter()
            .map(|&(a, b)| (self.nodes[a].as_str(), self.nodes[b].as_str()))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: &str, b: &str) -> bool {
        match (self.index(a), self.index(b)) {
            (Some(a), Some(b)) => self.edges.contains(&key(a, b)),
            _ => false,
        }
    }

    pub fn sepset(&self, a: &str, b: &str) -> Option<BTreeSet<&str>> {
        let k = key(self.index(a)?, self.index(b)?);
        self.sepsets
            .get(&k)
            .map(|s| s.iter().map(|&i| self.nodes[i].as_str()).collect())
    }

    fn index(&self, name: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n == name)
    }

    pub(crate) fn adjacent(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&key(a, b))
    }

    pub(crate) fn neighbors(&self, a: usize) -> Vec<usize> {
        (0..self.nodes.len())
            .filter(|&b| b != a && self.adjacent(a, b))
            .collect()
    }

    pub(crate) fn sepset_indices(&self, a: usize, b: usize) -> Option<&BTreeSet<usize>> {
        self.sepsets.get(&key(a, b))
    }
}

/// Start from the complete graph; for conditioning-set sizes
/// `0..=max_sepset`, drop `x - y` when some subset of the current
/// neighbours of `x` (then of `y`) renders them independent. Pairs and
/// subsets are visited in lexicographic name order.
pub fn learn_skeleton(data: &DataTable, alpha: f64, max_sepset: usize) -> Result<Skeleton> {
    let nodes: Vec<String> = data.names().map(str::to_string).collect();
    let n = nodes.len();
    let mut by_name: Vec<usize> = (0..n).collect();
    by_name.sort_by(|&a, &b| nodes[a].cmp(&nodes[b]));

    let mut skel = Skeleton {
        edges: (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect(),
        sepsets: BTreeMap::new(),
        nodes,
    };

    for size in 0..=max_sepset {
        let mut any_testable = false;
        for (ia, &x) in by_name.iter().enumerate() {
            for &y in &by_name[ia + 1..] {
                if !skel.adjacent(x, y) {
                    continue;
                }
                for (from, other) in [(x, y), (y, x)] {
                    let mut candidates: Vec<usize> = skel.neighbors(from).into_iter().filter(|&c| c != other).collect();
                    candidates.sort_by(|&a, &b| skel.nodes[a].cmp(&skel.nodes[b]));
                    if candidates.len() < size {
                        continue;
                    }
                    any_testable = true;
                    let mut found = None;
                    for subset in combinations(&candidates, size) {
                        if ci_test_columns(data, x, y, &subset, alpha)?.independent {
                            found = Some(subset);
                            break;
                        }
                    }
                    if let Some(subset) = found {
                        skel.edges.remove(&key(x, y));
                        skel.sepsets.insert(key(x, y), subset.into_iter().collect());
                        break;
                    }
                }
            }
        }
        if !any_testable {
            break;
        }
    }
    Ok(skel)
}

/// `k`-subsets of `items` in lexicographic order of positions.
fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let n = items.len();
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        let Some(pos) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[pos] += 1;
        for j in pos + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_are_lexicographic() {
        assert_eq!(combinations(&[1, 2, 3], 2), vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(combinations(&[4, 5], 0), vec![Vec::<usize>::new()]);
        assert!(combinations(&[1], 2).is_empty());
    }

    #[test]
    fn sepset_invariant_enforced() {
        assert!(Skeleton::new(&["A", "B"], &[("A", "B")], &[]).is_ok());
        assert!(Skeleton::new(&["A", "B"], &[], &[]).is_err());
        assert!(Skeleton::new(&["A", "B"], &[("A", "B")], &[(("A", "B"), &[])]).is_err());
    }
}
