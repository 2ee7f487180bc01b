//! The published heart-disease network: its structure, recovered from the
//! conditioning sets of the published CPTs, and the printed CPT values.

use crate::cpt::Cpt;
use crate::dag::Dag;
use crate::dataset::{heart_schema, COLUMNS};
use crate::error::Result;
use crate::network::DiscreteBayesNet;

/// Edges as `(parent, child)`. Parent order within each child is the CPT
/// parent order (`thalachC | slope, exang`, `oldpeakC | slope, target`).
pub const PAPER_EDGES: [(&str, &str); 12] = [
    ("target", "cp"),
    ("cp", "exang"),
    ("target", "slope"),
    ("target", "ca"),
    ("sex", "thal"),
    ("thal", "target"),
    ("ca", "ageC"),
    ("ageC", "trestbpsC"),
    ("slope", "thalachC"),
    ("exang", "thalachC"),
    ("slope", "oldpeakC"),
    ("target", "oldpeakC"),
];

/// The 14-node heart-disease structure. `fbs`, `restecg` and `cholC` are
/// isolated.
pub fn paper_network() -> Dag {
    Dag::new(COLUMNS, PAPER_EDGES).expect("fixture is a valid DAG")
}

/// One printed CPT: rows in configuration order, states in index order.
#[derive(Clone, Copy, Debug)]
pub struct PublishedCpt {
    pub node: &'static str,
    pub parents: &'static [&'static str],
    pub rows: &'static [&'static [f64]],
}

pub const PUBLISHED_CPTS: [PublishedCpt; 14] = [
    PublishedCpt {
        node: "sex",
        parents: &[],
        rows: &[&[0.3232323, 0.6767677]],
    },
    PublishedCpt {
        node: "cp",
        parents: &["target"],
        rows: &[
            &[0.10000000, 0.25000000, 0.40625000, 0.24375000],
            &[0.05109489, 0.06569343, 0.1313868, 0.75182482],
        ],
    },
    PublishedCpt {
        node: "fbs",
        parents: &[],
        rows: &[&[0.8552189, 0.1447811]],
    },
    PublishedCpt {
        node: "restecg",
        parents: &[],
        rows: &[&[0.49494949, 0.01346801, 0.49158249]],
    },
    PublishedCpt {
        node: "exang",
        parents: &["cp"],
        rows: &[
            &[0.82608696, 0.17391304],
            &[0.91836735, 0.08163265],
            &[0.86746988, 0.13253012],
            &[0.45070423, 0.54929577],
        ],
    },
    PublishedCpt {
        node: "slope",
        parents: &["target"],
        rows: &[
            &[0.64375000, 0.30000000, 0.05625000],
            &[0.26277372, 0.64963504, 0.08759124],
        ],
    },
    PublishedCpt {
        node: "ca",
        parents: &["target"],
        rows: &[
            &[0.8062500, 0.1312500, 0.0437500, 0.0187500],
            &[0.3284672, 0.3211679, 0.2262774, 0.1240876],
        ],
    },
    PublishedCpt {
        node: "thal",
        parents: &["sex"],
        rows: &[
            &[0.83333333, 0.01041667, 0.15625000],
            &[0.41791045, 0.08457711, 0.49751244],
        ],
    },
    PublishedCpt {
        node: "target",
        parents: &["thal"],
        rows: &[
            &[0.7743902, 0.2256098],
            &[0.3333333, 0.6666667],
            &[0.2347826, 0.7652174],
        ],
    },
    PublishedCpt {
        node: "ageC",
        parents: &["ca"],
        rows: &[
            &[0.31034483, 0.60344828, 0.08620690],
            &[0.07692308, 0.75384615, 0.16923077],
            &[0.02631579, 0.73684211, 0.23684211],
            &[0.05000000, 0.65000000, 0.30000000],
        ],
    },
    PublishedCpt {
        node: "trestbpsC",
        parents: &["ageC"],
        rows: &[
            &[0.54098361, 0.39344262, 0.06557377],
            &[0.25641026, 0.51794872, 0.22564103],
            &[0.34146341, 0.21951220, 0.43902439],
        ],
    },
    PublishedCpt {
        node: "cholC",
        parents: &[],
        rows: &[&[0.1649832, 0.3265993, 0.5084175]],
    },
    PublishedCpt {
        node: "thalachC",
        parents: &["slope", "exang"],
        rows: &[
            &[0.1504425, 0.8495575],
            &[0.3461538, 0.6538462],
            &[0.4133333, 0.5866667],
            &[0.7580645, 0.2419355],
            &[0.1666667, 0.8333333],
            &[0.7777778, 0.2222222],
        ],
    },
    PublishedCpt {
        node: "oldpeakC",
        parents: &["slope", "target"],
        rows: &[
            &[0.990291262, 0.009708738],
            &[0.944444444, 0.055555556],
            &[0.958333333, 0.041666667],
            &[0.651685393, 0.348314607],
            &[0.555555556, 0.444444444],
            &[0.166666667, 0.833333333],
        ],
    },
];

/// The paper network carrying the printed CPT values. Each printed row is
/// divided by its sum so rounding in the last printed digit does not break
/// normalization.
pub fn published_network() -> Result<DiscreteBayesNet> {
    let schema = heart_schema();
    let var = |n: &str| {
        schema
            .iter()
            .find(|v| v.name() == n)
            .expect("schema covers the fixture")
            .clone()
    };
    let cpts = PUBLISHED_CPTS
        .iter()
        .map(|p| {
            let table = p
                .rows
                .iter()
                .flat_map(|row| {
                    let sum: f64 = row.iter().sum();
                    row.iter().map(move |x| x / sum)
                })
                .collect();
            Cpt::new(var(p.node), p.parents.iter().map(|n| var(n)).collect(), table)
        })
        .collect::<Result<Vec<_>>>()?;
    DiscreteBayesNet::new(paper_network(), cpts)
}
