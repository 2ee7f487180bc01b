#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use bayesnet::dataset::{clean, discretize, load_raw, CleanTable, CutpointConfig};
use bayesnet::{Cpt, Dag, DataTable, DiscreteBayesNet, Variable};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn data_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/cleveland.data")
}

pub fn cleaned() -> CleanTable {
    clean(&load_raw(data_path()).unwrap()).unwrap()
}

pub fn heart() -> DataTable {
    discretize(&cleaned(), &CutpointConfig::default()).unwrap()
}

pub fn node_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}

/// Random DAG: each forward pair `i < j` (in a shuffled order) becomes an
/// edge with probability `density`.
pub fn random_dag(rng: &mut ChaCha8Rng, n: usize, density: f64) -> Dag {
    let names = node_names(n);
    let mut order: Vec<usize> = (0..n).collect();
    rand::seq::SliceRandom::shuffle(order.as_mut_slice(), rng);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(density) {
                edges.push((names[order[a]].clone(), names[order[b]].clone()));
            }
        }
    }
    Dag::new(names, edges).unwrap()
}

fn random_row(rng: &mut ChaCha8Rng, k: usize) -> Vec<f64> {
    let w: Vec<f64> = (0..k).map(|_| rng.gen_range(0.05..1.0)).collect();
    let s: f64 = w.iter().sum();
    w.into_iter().map(|x| x / s).collect()
}

/// Random CPTs on `dag` with the given per-node cardinalities.
pub fn random_net(rng: &mut ChaCha8Rng, dag: &Dag, cards: &[usize]) -> DiscreteBayesNet {
    let vars: Vec<Variable> = dag
        .names()
        .iter()
        .zip(cards)
        .map(|(n, &k)| Variable::indexed(n.clone(), k).unwrap())
        .collect();
    let cpts = (0..dag.len())
        .map(|i| {
            let parents: Vec<Variable> = dag.parent_indices(i).iter().map(|&p| vars[p].clone()).collect();
            let configs: usize = parents.iter().map(Variable::cardinality).product();
            let table = (0..configs).flat_map(|_| random_row(rng, cards[i])).collect();
            Cpt::new(vars[i].clone(), parents, table).unwrap()
        })
        .collect();
    DiscreteBayesNet::new(dag.clone(), cpts).unwrap()
}

/// Forward sampling in topological order.
pub fn sample(net: &DiscreteBayesNet, n: usize, seed: u64) -> DataTable {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dag = net.dag();
    let order: Vec<usize> = dag
        .topological_order()
        .iter()
        .map(|n| dag.index_of(n).unwrap())
        .collect();
    let rows = (0..n)
        .map(|_| {
            let mut row = vec![0usize; dag.len()];
            for &i in &order {
                let cpt = &net.cpts()[i];
                let pa: Vec<usize> = dag.parent_indices(i).iter().map(|&p| row[p]).collect();
                let probs = cpt.row(cpt.config_index(&pa));
                let u: f64 = rng.gen();
                let mut acc = 0.0;
                row[i] = probs.len() - 1;
                for (s, p) in probs.iter().enumerate() {
                    acc += p;
                    if u < acc {
                        row[i] = s;
                        break;
                    }
                }
            }
            row
        })
        .collect();
    DataTable::new(net.variables().cloned().collect(), rows).unwrap()
}

/// Brute-force d-separation: enumerate every simple path in the skeleton
/// between `x` and `y` and check whether each one is blocked by `z`.
pub fn dsep_by_paths(dag: &Dag, x: usize, y: usize, z: &BTreeSet<usize>) -> bool {
    let n = dag.len();
    let has = |a: usize, b: usize| dag.parent_indices(b).contains(&a);
    let desc_or_self_observed = |c: usize| {
        let mut stack = vec![c];
        let mut seen = vec![false; n];
        while let Some(v) = stack.pop() {
            if z.contains(&v) {
                return true;
            }
            for &ch in dag.child_indices(v) {
                if !seen[ch] {
                    seen[ch] = true;
                    stack.push(ch);
                }
            }
        }
        false
    };
    let blocked = |path: &[usize]| {
        path.windows(3).any(|w| {
            let (a, b, c) = (w[0], w[1], w[2]);
            if has(a, b) && has(c, b) {
                !desc_or_self_observed(b)
            } else {
                z.contains(&b)
            }
        })
    };
    let mut path = vec![x];
    let mut on_path = vec![false; n];
    on_path[x] = true;
    fn walk(
        dag: &Dag,
        y: usize,
        path: &mut Vec<usize>,
        on_path: &mut Vec<bool>,
        open_found: &mut bool,
        blocked: &dyn Fn(&[usize]) -> bool,
    ) {
        if *open_found {
            return;
        }
        let last = *path.last().unwrap();
        if last == y {
            if !blocked(path) {
                *open_found = true;
            }
            return;
        }
        let nbrs: Vec<usize> = dag
            .parent_indices(last)
            .iter()
            .chain(dag.child_indices(last))
            .copied()
            .collect();
        for v in nbrs {
            if !on_path[v] {
                on_path[v] = true;
                path.push(v);
                walk(dag, y, path, on_path, open_found, blocked);
                path.pop();
                on_path[v] = false;
            }
        }
    }
    let mut open = false;
    walk(dag, y, &mut path, &mut on_path, &mut open, &blocked);
    !open
}

/// Two binary columns `A`, `B`; `B` copies `A` with probability `agree`
/// and is otherwise an independent fair coin.
pub fn pair_data(n: usize, agree: f64, seed: u64) -> DataTable {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = (0..n)
        .map(|_| {
            let a = usize::from(rng.gen_bool(0.5));
            let b = if rng.gen_bool(agree) {
                a
            } else {
                usize::from(rng.gen_bool(0.5))
            };
            vec![a, b]
        })
        .collect();
    DataTable::new(
        vec![Variable::indexed("A", 2).unwrap(), Variable::indexed("B", 2).unwrap()],
        rows,
    )
    .unwrap()
}

pub fn independent_pair(n: usize, seed: u64) -> DataTable {
    pair_data(n, 0.0, seed)
}
