use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Parser, Debug)]
#[command(name = "rainbowlab", version, about = "Rainbow connection experiments on random graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Master seed; trial seeds are derived from it.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub trials: usize,
    /// Number of vertices.
    #[arg(long)]
    pub n: Option<usize>,
    /// Output file (or directory for commands that write several files).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads for experiments; output does not depend on it.
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct TwoRoundArgs {
    /// Dangerous-pair threshold on rainbow 2-paths.
    #[arg(long, default_value_t = rainbowlab::DEFAULT_D)]
    pub d: usize,
    #[arg(long, default_value_t = rainbowlab::two_round::DEFAULT_EPS)]
    pub eps: f64,
    /// Round-1 probability; needs --p as well.
    #[arg(long, requires = "p")]
    pub p1: Option<f64>,
    /// Target probability; needs --p1 as well.
    #[arg(long, requires = "p1")]
    pub p: Option<f64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample G(n, p) and write it in graph format.
    Gen {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        p: f64,
    },
    /// Sample edge weights and write the ordered process.
    Process {
        #[command(flatten)]
        common: Common,
    },
    /// Diameter of a graph file.
    Diam {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        graph: PathBuf,
    },
    /// Exact rainbow connection number, or the rc <= 2 decision.
    Rc {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        at_most_2: bool,
        /// Search budget (colourings or search nodes).
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Two-round construction; writes g1/g2 graphs, the colouring and the fix log into --out.
    Color2round {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        two_round: TwoRoundArgs,
    },
    /// Flag-and-recolour on a graph with a coloured spanning subgraph.
    Recolor {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        subgraph: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
        #[arg(long, default_value_t = rainbowlab::DEFAULT_D)]
        d: usize,
        /// Write the recolour trace as JSON here.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Property-M audit of a coloured graph, optionally with the structural lemma audit.
    Audit {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
        #[arg(long, default_value_t = rainbowlab::DEFAULT_D)]
        d: usize,
        /// Also audit the round-1 lemmas with this eps.
        #[arg(long)]
        lemmas_eps: Option<f64>,
    },
    /// One certification trial per --trials; certificates go into --out when it is a directory.
    Certify {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        two_round: TwoRoundArgs,
        #[arg(long, default_value_t = 12)]
        exact_cutoff: usize,
    },
    /// Frequency of diameter <= 2 around the threshold.
    ExpCorollary {
        #[command(flatten)]
        common: Common,
        /// Offsets c (repeatable).
        #[arg(long = "c", allow_negative_numbers = true, default_values_t = vec![0.0])]
        cs: Vec<f64>,
        #[arg(long, default_value_t = 0)]
        certify_trials: usize,
        #[arg(long, default_value_t = rainbowlab::DEFAULT_D)]
        d: usize,
    },
    /// Hitting times of diameter <= 2 and rc <= 2 over process trials.
    ExpHitting {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        two_round: TwoRoundArgs,
        #[arg(long, default_value_t = 12)]
        exact_cutoff: usize,
        /// Directory for per-trial snapshots and certificate colourings.
        #[arg(long)]
        certificates: Option<PathBuf>,
    },
    /// Random k-colourings of G(n, p) checked for rainbow connectivity.
    ExpKcoloring {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        omega: f64,
        /// Use this fixed graph instead of G(n, p).
        #[arg(long)]
        graph: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen { common, p } => commands::gen(&common, p),
        Command::Process { common } => commands::process(&common),
        Command::Diam { common, graph } => commands::diam(&common, &graph),
        Command::Rc {
            common,
            graph,
            at_most_2,
            budget,
        } => commands::rc(&common, &graph, at_most_2, budget),
        Command::Color2round { common, two_round } => commands::color2round(&common, &two_round),
        Command::Recolor {
            common,
            graph,
            subgraph,
            coloring,
            d,
            trace,
        } => commands::recolor(&common, &graph, &subgraph, &coloring, d, trace.as_deref()),
        Command::Audit {
            common,
            graph,
            coloring,
            d,
            lemmas_eps,
        } => commands::audit(&common, &graph, &coloring, d, lemmas_eps),
        Command::Certify {
            common,
            two_round,
            exact_cutoff,
        } => commands::certify(&common, &two_round, exact_cutoff),
        Command::ExpCorollary {
            common,
            cs,
            certify_trials,
            d,
        } => commands::exp_corollary(&common, cs, certify_trials, d),
        Command::ExpHitting {
            common,
            two_round,
            exact_cutoff,
            certificates,
        } => commands::exp_hitting(&common, &two_round, exact_cutoff, certificates),
        Command::ExpKcoloring { common, k, omega, graph } => {
            commands::exp_kcoloring(&common, k, omega, graph.as_deref())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
