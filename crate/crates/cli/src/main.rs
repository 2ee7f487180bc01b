use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bayesnet::dataset::{clean, discretize, heart_schema, load_raw, CutpointConfig, TARGET};
use bayesnet::evaluation::{run_experiment, Estimator, ExperimentConfig, Learner, ModelKind};
use bayesnet::learn::{hill_climb, hybrid_learn, learn_skeleton, orient, ScoreKind, DEFAULT_ALPHA};
use bayesnet::model_file::{load_model, save_model, to_dot};
use bayesnet::naive_bayes::{nb_fit, DEFAULT_PSEUDO_COUNT};
use bayesnet::paper::paper_network;
use bayesnet::{classify, d_separated, DataTable, DiscreteBayesNet, Error};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "bayesnet",
    version,
    about = "Discrete Bayesian networks for categorical data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Clean and discretize a raw Cleveland data file into a CSV table.
    Preprocess {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        /// JSON cutpoint file; defaults to the built-in cutpoints.
        #[arg(long)]
        cutpoints: Option<PathBuf>,
    },
    /// Learn a model from a table and write it as a model file.
    Learn {
        #[arg(long)]
        data: PathBuf,
        #[command(flatten)]
        opts: ModelOpts,
        #[arg(long)]
        out: PathBuf,
    },
    /// Repeated train/test splits; writes a JSON report.
    Evaluate {
        #[arg(long)]
        data: PathBuf,
        #[command(flatten)]
        opts: ModelOpts,
        /// Fraction of rows used for training.
        #[arg(long, default_value_t = 0.8)]
        ratio: f64,
        #[arg(long, value_delimiter = ',', default_value = "0")]
        seeds: Vec<u64>,
        #[arg(long)]
        report: PathBuf,
    },
    /// Posterior of the class variable given evidence.
    Predict {
        #[arg(long)]
        model: PathBuf,
        /// Comma-separated `name=state` pairs; states are labels or indices.
        #[arg(long, default_value = "")]
        evidence: String,
        #[arg(long, default_value = TARGET)]
        class: String,
    },
    /// Whether X and Y are d-separated given the conditioning set.
    Dsep {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        x: Vec<String>,
        #[arg(long, value_delimiter = ',', required = true)]
        y: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        given: Vec<String>,
    },
    /// Write the model structure as a Graphviz digraph.
    ExportDot {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Paper,
    Hc,
    Pc,
    Hybrid,
    Nb,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScoreArg {
    Bic,
    Bdeu,
}

#[derive(Clone, Copy, ValueEnum)]
enum EstimatorArg {
    Mle,
    Bayes,
}

#[derive(Args)]
struct ModelOpts {
    #[arg(long, value_enum)]
    method: Method,
    #[arg(long, value_enum, default_value = "bic")]
    score: ScoreArg,
    /// Equivalent sample size for the BDeu score and the Bayesian estimator.
    #[arg(long, default_value_t = 10.0)]
    ess: f64,
    /// Significance level for independence tests (pc, hybrid).
    #[arg(long, default_value_t = DEFAULT_ALPHA)]
    alpha: f64,
    /// Largest conditioning set tried by the independence tests.
    #[arg(long, default_value_t = 3)]
    max_sepset: usize,
    #[arg(long, value_enum, default_value = "mle")]
    estimator: EstimatorArg,
    /// Additive smoothing for naive Bayes.
    #[arg(long, default_value_t = DEFAULT_PSEUDO_COUNT)]
    pseudo: f64,
    #[arg(long, default_value = TARGET)]
    class: String,
    /// Seed for hill-climbing restarts.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl ModelOpts {
    fn score(&self) -> ScoreKind {
        match self.score {
            ScoreArg::Bic => ScoreKind::Bic,
            ScoreArg::Bdeu => ScoreKind::Bdeu { ess: self.ess },
        }
    }

    fn estimator(&self) -> Estimator {
        match self.estimator {
            EstimatorArg::Mle => Estimator::Mle,
            EstimatorArg::Bayes => Estimator::Bayes { ess: self.ess },
        }
    }

    fn model_kind(&self) -> ModelKind {
        match self.method {
            Method::Paper => ModelKind::BnPaper,
            Method::Nb => ModelKind::Nb,
            Method::Hc => ModelKind::BnLearned(Learner::HillClimb { score: self.score() }),
            Method::Pc => ModelKind::BnLearned(Learner::Pc {
                alpha: self.alpha,
                max_sepset: self.max_sepset,
            }),
            Method::Hybrid => ModelKind::BnLearned(Learner::Hybrid {
                alpha: self.alpha,
                max_sepset: self.max_sepset,
                score: self.score(),
            }),
        }
    }

    fn fit(&self, data: &DataTable) -> bayesnet::Result<DiscreteBayesNet> {
        let dag = match self.method {
            Method::Nb => return nb_fit(data, &self.class, self.pseudo)?.to_network(),
            Method::Paper => paper_network(),
            Method::Hc => hill_climb(data, self.score(), 1_000, self.seed)?,
            Method::Pc => orient(&learn_skeleton(data, self.alpha, self.max_sepset)?)?.dag,
            Method::Hybrid => hybrid_learn(data, self.alpha, self.score(), self.max_sepset)?.dag,
        };
        self.estimator().fit(&dag, data)
    }
}

fn missing(path: &Path, what: &str) -> Error {
    Error::Io {
        path: path.to_path_buf(),
        source: std::io::Error::new(std::io::ErrorKind::NotFound, format!("no such {what}")),
    }
}

fn require_file(path: &Path) -> bayesnet::Result<()> {
    if path.is_file() {
        Ok(())
    } else {
        Err(missing(path, "file"))
    }
}

fn require_parent(path: &Path) -> bayesnet::Result<()> {
    match path.parent() {
        Some(dir) if !dir.as_os_str().is_empty() && !dir.is_dir() => Err(missing(dir, "directory")),
        _ => Ok(()),
    }
}

fn read_table(path: &Path) -> bayesnet::Result<DataTable> {
    DataTable::read_csv(path, &heart_schema())
}

fn write(path: &Path, text: &str) -> bayesnet::Result<()> {
    std::fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Usage problems exit with 1, data and model problems with 2.
enum Failure {
    Usage(String),
    Data(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Data(e)
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Preprocess {
            input,
            output,
            cutpoints,
        } => {
            require_file(&input)?;
            if let Some(c) = &cutpoints {
                require_file(c)?;
            }
            require_parent(&output)?;
            let cfg = match cutpoints {
                Some(c) => CutpointConfig::load(c)?,
                None => CutpointConfig::default(),
            };
            Ok(discretize(&clean(&load_raw(&input)?)?, &cfg)?.write_csv(&output)?)
        }
        Command::Learn { data, opts, out } => {
            require_file(&data)?;
            require_parent(&out)?;
            Ok(save_model(&opts.fit(&read_table(&data)?)?, &out)?)
        }
        Command::Evaluate {
            data,
            opts,
            ratio,
            seeds,
            report,
        } => {
            require_file(&data)?;
            require_parent(&report)?;
            let mut cfg = ExperimentConfig::new(opts.model_kind(), seeds);
            cfg.ratio = ratio;
            cfg.estimator = opts.estimator();
            cfg.nb_pseudo = opts.pseudo;
            cfg.class_var = opts.class.clone();
            Ok(write(&report, &run_experiment(&read_table(&data)?, &cfg)?.to_json())?)
        }
        Command::Predict { model, evidence, class } => {
            require_file(&model)?;
            let net = load_model(&model)?;
            let pairs = evidence
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.split_once('=')
                        .map(|(n, v)| (n.trim(), v.trim()))
                        .ok_or_else(|| Failure::Usage(format!("evidence `{s}` is not name=state")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let evidence = net.parse_evidence(pairs)?;
            let (label, post) = classify(&net, &class, &evidence)?;
            let states = post.variable.states();
            println!("{class}={}", states[label]);
            let probs: Vec<String> = states
                .iter()
                .zip(&post.probabilities)
                .map(|(s, p)| format!("P({class}={s})={p:.7}"))
                .collect();
            println!("{}", probs.join(" "));
            Ok(())
        }
        Command::Dsep { model, x, y, given } => {
            require_file(&model)?;
            let net = load_model(&model)?;
            let given: Vec<String> = given.into_iter().filter(|g| !g.is_empty()).collect();
            println!("{}", d_separated(net.dag(), &x, &y, &given)?);
            Ok(())
        }
        Command::ExportDot { model, out } => {
            require_file(&model)?;
            require_parent(&out)?;
            Ok(write(&out, &to_dot(load_model(&model)?.dag()))?)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.render().to_string();
            eprintln!("{}", text.lines().next().unwrap_or("error: invalid arguments"));
            return ExitCode::from(1);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Data(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
