//! Turning a skeleton into a DAG: v-structures, Meek rules 1 and 2, then a
//! lexicographic fallback for whatever is left undirected.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use super::skeleton::Skeleton;
use crate::dag::Dag;
use crate::error::Result;

/// The oriented graph plus every edge whose direction was forced both ways.
#[derive(Clone, Debug)]
pub struct Orientation {
    pub dag: Dag,
    /// `(parent, child)` as finally oriented, one entry per conflict.
    pub conflicts: Vec<(String, String)>,
}

struct Pdag<'a> {
    names: &'a [String],
    directed: BTreeSet<(usize, usize)>,
    undirected: BTreeSet<(usize, usize)>,
}

impl Pdag<'_> {
    fn cmp(&self, a: usize, b: usize) -> Ordering {
        self.names[a].cmp(&self.names[b])
    }

    fn undirected_key(&self, a: usize, b: usize) -> (usize, usize) {
        if self.cmp(a, b) == Ordering::Less {
            (a, b)
        } else {
            (b, a)
        }
    }

    fn is_undirected(&self, a: usize, b: usize) -> bool {
        self.undirected.contains(&self.undirected_key(a, b))
    }

    fn adjacent(&self, a: usize, b: usize) -> bool {
        self.is_undirected(a, b) || self.directed.contains(&(a, b)) || self.directed.contains(&(b, a))
    }

    /// Directed path `from ~> to` using directed edges only.
    fn has_path(&self, from: usize, to: usize) -> bool {
        let mut stack = vec![from];
        let mut seen = BTreeSet::new();
        while let Some(n) = stack.pop() {
            if n == to {
                return true;
            }
            if seen.insert(n) {
                stack.extend(self.directed.iter().filter(|(p, _)| *p == n).map(|&(_, c)| c));
            }
        }
        false
    }

    fn set_direction(&mut self, a: usize, b: usize) {
        self.undirected.remove(&self.undirected_key(a, b));
        self.directed.remove(&(b, a));
        self.directed.insert((a, b));
    }

    /// Orient `a -> b` if that keeps the directed part acyclic. Returns
    /// false when it would not.
    fn try_orient(&mut self, a: usize, b: usize) -> bool {
        if self.has_path(b, a) {
            return false;
        }
        self.set_direction(a, b);
        true
    }

    /// Orientation demanded by a v-structure. A clash with an earlier
    /// orientation is a conflict and resolves toward the lexicographically
    /// smaller parent.
    fn force(&mut self, a: usize, b: usize, conflicts: &mut Vec<(usize, usize)>) {
        if self.directed.contains(&(a, b)) {
            return;
        }
        if self.directed.contains(&(b, a)) {
            if self.cmp(a, b) == Ordering::Less {
                self.directed.remove(&(b, a));
                if self.has_path(b, a) {
                    self.directed.insert((b, a));
                    conflicts.push((b, a));
                } else {
                    self.directed.insert((a, b));
                    conflicts.push((a, b));
                }
            } else {
                conflicts.push((b, a));
            }
            return;
        }
        if !self.try_orient(a, b) {
            self.set_direction(b, a);
            conflicts.push((b, a));
        }
    }
}

pub fn orient(skeleton: &Skeleton) -> Result<Orientation> {
    let names = skeleton.nodes();
    let n = names.len();
    let mut by_name: Vec<usize> = (0..n).collect();
    by_name.sort_by(|&a, &b| names[a].cmp(&names[b]));

    let mut g = Pdag {
        names,
        directed: BTreeSet::new(),
        undirected: BTreeSet::new(),
    };
    for a in 0..n {
        for b in a + 1..n {
            if skeleton.adjacent(a, b) {
                let k = g.undirected_key(a, b);
                g.undirected.insert(k);
            }
        }
    }

    let mut conflicts = Vec::new();
    for &c in &by_name {
        let mut nbrs = skeleton.neighbors(c);
        nbrs.sort_by(|&a, &b| names[a].cmp(&names[b]));
        for (i, &x) in nbrs.iter().enumerate() {
            for &y in &nbrs[i + 1..] {
                if skeleton.adjacent(x, y) {
                    continue;
                }
                let separated_by_c = skeleton.sepset_indices(x, y).is_some_and(|s| s.contains(&c));
                if !separated_by_c {
                    g.force(x, c, &mut conflicts);
                    g.force(y, c, &mut conflicts);
                }
            }
        }
    }

    // Meek rules to a fixed point.
    loop {
        let mut changed = false;
        let undirected: Vec<(usize, usize)> = g.undirected.iter().copied().collect();
        for (u, v) in undirected {
            for (b, c) in [(u, v), (v, u)] {
                if !g.is_undirected(b, c) {
                    continue;
                }
                // R1: a -> b - c with a, c non-adjacent gives b -> c.
                let r1 = by_name
                    .iter()
                    .any(|&a| g.directed.contains(&(a, b)) && a != c && !g.adjacent(a, c));
                // R2: b -> a -> c with b - c gives b -> c.
                let r2 = by_name
                    .iter()
                    .any(|&a| g.directed.contains(&(b, a)) && g.directed.contains(&(a, c)));
                if (r1 || r2) && g.try_orient(b, c) {
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }

    // Fallback: lower name -> higher name unless that closes a cycle.
    let rest: Vec<(usize, usize)> = g.undirected.iter().copied().collect();
    for (lo, hi) in rest {
        if !g.try_orient(lo, hi) {
            g.set_direction(hi, lo);
        }
    }

    let edges: Vec<(&str, &str)> = g
        .directed
        .iter()
        .map(|&(a, b)| (names[a].as_str(), names[b].as_str()))
        .collect();
    Ok(Orientation {
        dag: Dag::new(names.iter().cloned(), edges)?,
        conflicts: conflicts
            .into_iter()
            .map(|(a, b)| (names[a].clone(), names[b].clone()))
            .collect(),
    })
}
