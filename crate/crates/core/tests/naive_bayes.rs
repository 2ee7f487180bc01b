mod common;

use bayesnet::naive_bayes::{nb_fit, nb_predict, NbModel};
use bayesnet::{classify, Assignment, DataTable, Variable};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn fitted_on_training_split_is_normalized() {
    let (train, _) = common::heart().split(0.8, 1).unwrap();
    let m = nb_fit(&train, "target", 1.0).unwrap();
    assert!((m.prior().iter().sum::<f64>() - 1.0).abs() < 1e-9);
    for f in m.features() {
        for c in 0..2 {
            let col: f64 = (0..f.cardinality())
                .map(|s| m.conditional(f.name(), s, c).unwrap())
                .sum();
            assert!((col - 1.0).abs() < 1e-9);
        }
    }
    assert_eq!(m.features().len(), 13);
}

#[test]
fn empty_evidence_gives_prior_argmax() {
    let m = nb_fit(&common::heart(), "target", 1.0).unwrap();
    let (c, post) = nb_predict(&m, &Assignment::new()).unwrap();
    assert_eq!(c, 0);
    for (a, b) in post.probabilities.iter().zip(m.prior()) {
        assert!((a - b).abs() < 1e-12);
    }
}

#[test]
fn star_network_is_a_model_file_network() {
    let m = nb_fit(&common::heart(), "target", 1.0).unwrap();
    let net = m.to_network().unwrap();
    assert_eq!(net.dag().edge_count(), 13);
    assert_eq!(net.dag().children("target").unwrap().len(), 13);
    let back = bayesnet::model_file::from_json(&bayesnet::model_file::to_json(&net)).unwrap();
    let again = NbModel::from_network(&back, "target").unwrap();
    assert_eq!(again.prior(), m.prior());
    assert!(NbModel::from_network(&bayesnet::paper::published_network().unwrap(), "target").is_err());
}

#[test]
fn larger_pseudo_count_moves_toward_uniform() {
    let d = common::heart();
    let pseudos = [0.0, 0.5, 1.0, 5.0, 50.0];
    let models: Vec<NbModel> = pseudos.iter().map(|&p| nb_fit(&d, "target", p).unwrap()).collect();
    for f in models[0].features() {
        let k = f.cardinality() as f64;
        for c in 0..2 {
            for s in 0..f.cardinality() {
                let dist: Vec<f64> = models
                    .iter()
                    .map(|m| (m.conditional(f.name(), s, c).unwrap() - 1.0 / k).abs())
                    .collect();
                assert!(
                    dist.windows(2).all(|w| w[1] <= w[0] + 1e-15),
                    "{} {s} {c}: {dist:?}",
                    f.name()
                );
            }
        }
    }
}

#[test]
fn absent_duplicate_feature_changes_nothing() {
    let d = common::heart();
    let idx = d.column_index("cp").unwrap();
    let mut schema = d.schema().to_vec();
    schema.push(Variable::indexed("cp_copy", 4).unwrap());
    let rows = d.rows().iter().map(|r| {
        let mut r = r.clone();
        r.push(r[idx]);
        r
    });
    let dup = DataTable::new(schema, rows.collect()).unwrap();
    let a = nb_fit(&d, "target", 1.0).unwrap();
    let b = nb_fit(&dup, "target", 1.0).unwrap();
    let e = d.row_assignment(0, &["target"]);
    let (_, pa) = nb_predict(&a, &e).unwrap();
    let (_, pb) = nb_predict(&b, &e).unwrap();
    for (x, y) in pa.probabilities.iter().zip(&pb.probabilities) {
        assert!((x - y).abs() < 1e-12);
    }
    let (_, pc) = nb_predict(&b, &e.clone().with("cp_copy", e.get("cp").unwrap())).unwrap();
    assert!((pc.probabilities[1] - pa.probabilities[1]).abs() > 1e-6);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn equals_star_network(seed in any::<u64>(), pseudo in 0.01f64..5.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cards: Vec<usize> = (0..rng.gen_range(2..=6)).map(|_| rng.gen_range(2..=4)).collect();
        let schema: Vec<Variable> = cards.iter().enumerate()
            .map(|(i, &k)| Variable::indexed(format!("v{i}"), k).unwrap())
            .collect();
        let rows = (0..rng.gen_range(5..60))
            .map(|_| cards.iter().map(|&k| rng.gen_range(0..k)).collect())
            .collect();
        let data = DataTable::new(schema.clone(), rows).unwrap();
        let m = nb_fit(&data, "v0", pseudo).unwrap();
        let net = m.to_network().unwrap();
        let mut e = Assignment::new();
        for v in &schema[1..] {
            if rng.gen_bool(0.6) {
                e.set(v.name(), rng.gen_range(0..v.cardinality()));
            }
        }
        let (ca, a) = nb_predict(&m, &e).unwrap();
        let (cb, b) = classify(&net, "v0", &e).unwrap();
        for (x, y) in a.probabilities.iter().zip(&b.probabilities) {
            prop_assert!((x - y).abs() <= 1e-10);
        }
        if (a.probabilities[ca] - a.probabilities[cb]).abs() > 1e-12 {
            prop_assert_eq!(ca, cb);
        }
    }
}
