//! Discrete Bayesian networks over categorical variables: graph queries,
//! exact inference, parameter and structure learning, a naive Bayes
//! baseline, and the Cleveland heart-disease pipeline used to evaluate them.

pub mod cpt;
pub mod dag;
pub mod dataset;
pub mod dsep;
pub mod error;
pub mod evaluation;
pub mod factor;
pub mod inference;
pub mod learn;
pub mod model_file;
pub mod naive_bayes;
pub mod network;
pub mod paper;
pub mod variable;

pub use cpt::Cpt;
pub use dag::{build_dag, Dag};
pub use dataset::DataTable;
pub use dsep::d_separated;
pub use error::{Error, Result};
pub use inference::{classify, posterior_enumeration, posterior_ve, Posterior};
pub use naive_bayes::{nb_fit, nb_predict, NbModel};
pub use network::DiscreteBayesNet;
pub use variable::{Assignment, Variable};
