//! Versioned JSON model files.
//!
//! ```json
//! {
//!   "format_version": 1,
//!   "nodes": [
//!     {"name": "A", "states": ["0", "1"], "parents": [], "cpt": ["0.70000000000000007", "..."]}
//!   ]
//! }
//! ```
//!
//! `cpt` is the flat row-major table (configuration-major, last parent
//! fastest). Entries are written as decimal strings with 17 significant
//! digits, which reads back to the identical `f64`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::cpt::Cpt;
use crate::dag::Dag;
use crate::error::{Error, Result};
use crate::network::DiscreteBayesNet;
use crate::variable::Variable;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
struct ModelDocument {
    format_version: u32,
    nodes: Vec<NodeRecord>,
}

#[derive(Debug, Serialize, Deserialize)]
struct NodeRecord {
    name: String,
    states: Vec<String>,
    parents: Vec<String>,
    cpt: Vec<Probability>,
}

/// Accepts either a decimal string or a bare JSON number on input.
#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum Probability {
    Text(String),
    Number(f64),
}

impl Probability {
    fn value(&self) -> Result<f64> {
        match self {
            Probability::Number(x) => Ok(*x),
            Probability::Text(s) => s
                .trim()
                .parse::<f64>()
                .map_err(|_| Error::Format(format!("`{s}` is not a probability"))),
        }
    }
}

/// Positional decimal with 17 significant digits.
pub fn format_probability(p: f64) -> String {
    if p == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{:.16e}", p.abs());
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let mut out = String::new();
    if p < 0.0 {
        out.push('-');
    }
    if exp >= 0 {
        let int_len = exp as usize + 1;
        if digits.len() <= int_len {
            out.push_str(&digits);
            out.push_str(&"0".repeat(int_len - digits.len()));
        } else {
            out.push_str(&digits[..int_len]);
            out.push('.');
            out.push_str(&digits[int_len..]);
        }
    } else {
        out.push_str("0.");
        out.push_str(&"0".repeat((-exp - 1) as usize));
        out.push_str(&digits);
    }
    out
}

pub fn to_json(net: &DiscreteBayesNet) -> String {
    let doc = ModelDocument {
        format_version: FORMAT_VERSION,
        nodes: net
            .cpts()
            .iter()
            .map(|cpt| NodeRecord {
                name: cpt.variable().name().to_string(),
                states: cpt.variable().states().to_vec(),
                parents: cpt.parents().iter().map(|p| p.name().to_string()).collect(),
                cpt: cpt
                    .table()
                    .iter()
                    .map(|&p| Probability::Text(format_probability(p)))
                    .collect(),
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("model serializes");
    s.push('\n');
    s
}

pub fn from_json(text: &str) -> Result<DiscreteBayesNet> {
    let doc: ModelDocument = serde_json::from_str(text)?;
    if doc.format_version != FORMAT_VERSION {
        return Err(Error::UnsupportedVersion(doc.format_version));
    }
    let variables = doc
        .nodes
        .iter()
        .map(|n| Variable::new(n.name.clone(), n.states.clone()))
        .collect::<Result<Vec<_>>>()?;
    let lookup = |name: &str| {
        variables
            .iter()
            .find(|v| v.name() == name)
            .cloned()
            .ok_or_else(|| Error::UnknownNode(name.to_string()))
    };
    let edges: Vec<(&str, &str)> = doc
        .nodes
        .iter()
        .flat_map(|n| n.parents.iter().map(move |p| (p.as_str(), n.name.as_str())))
        .collect();
    let dag = Dag::new(doc.nodes.iter().map(|n| n.name.clone()), edges)?;
    let cpts = doc
        .nodes
        .iter()
        .zip(&variables)
        .map(|(n, v)| {
            let parents = n.parents.iter().map(|p| lookup(p)).collect::<Result<Vec<_>>>()?;
            let table = n.cpt.iter().map(Probability::value).collect::<Result<Vec<_>>>()?;
            Cpt::new(v.clone(), parents, table)
        })
        .collect::<Result<Vec<_>>>()?;
    DiscreteBayesNet::new(dag, cpts)
}

pub fn save_model(net: &DiscreteBayesNet, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, to_json(net)).map_err(|e| Error::io(path, e))
}

pub fn load_model(path: impl AsRef<Path>) -> Result<DiscreteBayesNet> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    from_json(&text)
}

/// Graphviz `digraph` with one statement per node and per edge.
pub fn to_dot(dag: &Dag) -> String {
    fn quote(s: &str) -> String {
        format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
    }
    let mut out = String::from("digraph {\n");
    for n in dag.names() {
        out.push_str(&format!("  {} [label={}];\n", quote(n), quote(n)));
    }
    for (p, c) in dag.edges() {
        out.push_str(&format!("  {} -> {};\n", quote(p), quote(c)));
    }
    out.push_str("}\n");
    out
}
