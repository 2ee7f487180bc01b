//! Parameter estimation and structure learning from complete categorical
//! data.

mod citest;
mod counts;
mod estimate;
mod orient;
mod score;
mod search;
mod skeleton;

pub use citest::{ci_test, CiTestResult};
pub use counts::CountTable;
pub use estimate::{fit_bayesian, fit_mle};
pub use orient::{orient, Orientation};
pub use score::{family_score, score, ScoreKind, DEFAULT_BDEU_ESS};
pub use search::{hill_climb, hybrid_learn, CandidateEdges, HillClimb, Move, SearchResult};
pub use skeleton::{learn_skeleton, Skeleton};

pub const DEFAULT_ALPHA: f64 = 0.05;
