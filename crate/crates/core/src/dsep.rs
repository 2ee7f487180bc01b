//! d-separation by reachability ("Bayes ball").
//!
//! A trail is traversed edge by edge, remembering whether each node was
//! entered from a child (moving up) or from a parent (moving down). Serial
//! and diverging connections pass only through unobserved nodes; a
//! converging connection passes only when the collider is observed or has an
//! observed descendant, i.e. when it is an ancestor of the conditioning set.

use std::collections::HashSet;

use crate::dag::Dag;
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Direction {
    /// Entered from a child.
    Up,
    /// Entered from a parent.
    Down,
}

/// True iff every trail between a node of `x` and a node of `y` is blocked
/// given `z`.
pub fn d_separated<S: AsRef<str>>(dag: &Dag, x: &[S], y: &[S], z: &[S]) -> Result<bool> {
    let x = resolve(dag, x)?;
    let y = resolve(dag, y)?;
    let z = resolve(dag, z)?;
    for (a, b) in [(&x, &y), (&x, &z), (&y, &z)] {
        if let Some(&n) = a.intersection(b).next() {
            return Err(Error::OverlappingSets(dag.name(n).to_string()));
        }
    }
    let reachable = reachable_indices(dag, &x, &z);
    Ok(y.iter().all(|n| !reachable.contains(n)))
}

/// Nodes connected to `sources` by an active trail given `observed`.
pub(crate) fn reachable_indices(dag: &Dag, sources: &HashSet<usize>, observed: &HashSet<usize>) -> HashSet<usize> {
    // Observed nodes and their ancestors: colliders in this set are open.
    let mut opens_collider: HashSet<usize> = HashSet::new();
    let mut stack: Vec<usize> = observed.iter().copied().collect();
    while let Some(n) = stack.pop() {
        if opens_collider.insert(n) {
            stack.extend(dag.parent_indices(n).iter().copied());
        }
    }

    let mut visited: HashSet<(usize, Direction)> = HashSet::new();
    let mut reachable = HashSet::new();
    let mut frontier: Vec<(usize, Direction)> = sources.iter().map(|&s| (s, Direction::Up)).collect();

    while let Some((node, dir)) = frontier.pop() {
        if !visited.insert((node, dir)) {
            continue;
        }
        let is_observed = observed.contains(&node);
        if !is_observed {
            reachable.insert(node);
        }
        match dir {
            Direction::Up if !is_observed => {
                frontier.extend(dag.parent_indices(node).iter().map(|&p| (p, Direction::Up)));
                frontier.extend(dag.child_indices(node).iter().map(|&c| (c, Direction::Down)));
            }
            Direction::Up => {}
            Direction::Down => {
                if !is_observed {
                    frontier.extend(dag.child_indices(node).iter().map(|&c| (c, Direction::Down)));
                }
                if opens_collider.contains(&node) {
                    frontier.extend(dag.parent_indices(node).iter().map(|&p| (p, Direction::Up)));
                }
            }
        }
    }
    reachable
}

fn resolve<S: AsRef<str>>(dag: &Dag, names: &[S]) -> Result<HashSet<usize>> {
    names.iter().map(|n| dag.require(n.as_ref())).collect()
}
