mod commands;
mod config;

use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use cir_core::{Language, Mode, Model, Norm, QueryWeighting};
use clap::{Args, Parser, Subcommand};

use crate::config::{FileConfig, Overrides, Settings, STOPWORDS_ENV};

/// Concept-aware retrieval over a term/concept inverted index.
#[derive(Debug, Parser)]
#[command(name = "cir", version, propagate_version = true)]
struct Cli {
    /// TOML settings file; flags override its values.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Directory holding english.txt and/or arabic.txt stop-word lists.
    /// The environment variable overrides the config file, not this flag.
    #[arg(long, global = true, value_name = "DIR", env = STOPWORDS_ENV)]
    stopwords: Option<PathBuf>,

    /// Stemmer selection: auto, en or ar.
    #[arg(long, global = true)]
    language: Option<Language>,

    /// More log output on stderr (-v info, -vv debug, -vvv trace).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build and save an index from a JSON-lines corpus.
    Index {
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long)]
        ontology: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
    },
    /// Run one Boolean or ranked query.
    Search(SearchArgs),
    /// Resolve the reference concept of a set of words.
    Rc {
        #[arg(long)]
        ontology: Option<PathBuf>,
        #[arg(required = true)]
        words: Vec<String>,
    },
    /// Run a query file and report precision and recall.
    Eval {
        #[arg(long)]
        index: Option<PathBuf>,
        #[arg(long)]
        ontology: Option<PathBuf>,
        #[arg(long)]
        queries: PathBuf,
        #[arg(long)]
        qrels: PathBuf,
        /// Also report metrics over the first K results.
        #[arg(long)]
        topk: Option<usize>,
        #[arg(long)]
        hops: Option<u32>,
        #[arg(long, default_value = "text")]
        format: commands::ReportFormat,
    },
    /// Write the built-in collections, ontologies, queries, qrels and
    /// stop-word lists under a directory.
    Fixtures {
        #[arg(long, value_name = "DIR")]
        out: PathBuf,
    },
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[arg(long)]
    index: Option<PathBuf>,
    #[arg(long)]
    ontology: Option<PathBuf>,
    #[arg(long, default_value = "vsm")]
    model: Model,
    #[arg(long, default_value = "traditional")]
    mode: Mode,
    #[arg(long)]
    query: String,
    #[arg(long)]
    topk: Option<usize>,
    /// Hop limit for concept relatedness.
    #[arg(long)]
    hops: Option<u32>,
    #[arg(long)]
    query_weighting: Option<QueryWeighting>,
    #[arg(long)]
    norm: Option<Norm>,
}

/// Bad invocation: missing inputs, malformed queries or settings.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<UsageError>().is_some() {
        return 1;
    }
    match err.downcast_ref::<cir_core::Error>() {
        Some(cir_core::Error::EmptyQuery | cir_core::Error::MixedOperators(..) | cir_core::Error::NotWithoutBase) => 1,
        _ => 2,
    }
}

/// Output closed early, as with `cir ... | head`.
fn is_broken_pipe(err: &anyhow::Error) -> bool {
    err.chain()
        .filter_map(|e| e.downcast_ref::<std::io::Error>())
        .any(|e| e.kind() == std::io::ErrorKind::BrokenPipe)
}

fn init_logging(verbose: u8, configured: Option<&str>) {
    let level = match verbose {
        0 => configured
            .and_then(|l| l.parse().ok())
            .unwrap_or(log::LevelFilter::Warn),
        1 => log::LevelFilter::Info,
        2 => log::LevelFilter::Debug,
        _ => log::LevelFilter::Trace,
    };
    env_logger::Builder::new()
        .filter_level(level)
        .parse_default_env()
        .format_timestamp(None)
        .init();
}

fn run(cli: Cli) -> Result<()> {
    let file = match &cli.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let mut flags = Overrides {
        stopwords: cli.stopwords,
        language: cli.language,
        ..Default::default()
    };
    match &cli.command {
        Command::Index { corpus, ontology, .. } => {
            flags.corpus = corpus.clone();
            flags.ontology = ontology.clone();
        }
        Command::Search(a) => {
            flags.index = a.index.clone();
            flags.ontology = a.ontology.clone();
            flags.topk = a.topk;
            flags.hops = a.hops;
            flags.query_weighting = a.query_weighting;
            flags.norm = a.norm;
        }
        Command::Rc { ontology, .. } => flags.ontology = ontology.clone(),
        Command::Eval {
            index, ontology, hops, ..
        } => {
            flags.index = index.clone();
            flags.ontology = ontology.clone();
            flags.hops = *hops;
        }
        Command::Fixtures { .. } => {}
    }
    let settings = Settings::resolve(flags, file)?;
    dispatch(cli.command, cli.verbose, settings)
}

fn dispatch(command: Command, verbose: u8, settings: Settings) -> Result<()> {
    init_logging(verbose, settings.log.as_deref());
    log::debug!("settings: {settings:?}");
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match command {
        Command::Index { out: path, .. } => commands::index(&settings, &path, &mut out)?,
        Command::Search(a) => commands::search(&settings, a.model, a.mode, &a.query, &mut out)?,
        Command::Rc { words, .. } => commands::rc(&settings, &words, &mut out)?,
        Command::Eval {
            queries,
            qrels,
            topk,
            format,
            ..
        } => commands::eval(&settings, &queries, &qrels, topk, format, &mut out)?,
        Command::Fixtures { out: dir } => commands::fixtures(&dir, &mut out)?,
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) if is_broken_pipe(&err) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
