use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use topoarg::corpus::{self, ArgumentText};
use topoarg::diagram::{bottleneck_distance, diagram_from_json, diagram_to_json, render_svg, SvgOptions};
use topoarg::embeddings::{load_glove_path, EmbeddingTable};
use topoarg::persistence::PersistenceOptions;
use topoarg::pipeline::{analyze, sweep, write_sweep, AnalysisConfig, SweepConfig, SweepPlan};
use topoarg::series::ProjectionSeed;
use topoarg::takens::DelayParams;
use topoarg::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "topoarg", version, about = "Persistent homology of word-embedding time series")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the pipeline on one text.
    Analyze(AnalyzeArgs),
    /// Run a parameter sweep described by a TOML or JSON file.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Inspect the text corpus.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
    /// Bottleneck distance between two diagram JSON files.
    Compare {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(0..=1))]
        hdim: u8,
    },
}

#[derive(Debug, Subcommand)]
enum CorpusAction {
    /// Print `id<TAB>label<TAB>text` for every known text.
    List {
        /// Additional corpus file.
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
}

#[derive(Debug, clap::Args)]
struct AnalyzeArgs {
    /// Text id, or `-` to read the text from stdin.
    #[arg(long)]
    text: String,
    #[arg(long)]
    glove: PathBuf,
    /// Expected embedding dimension.
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 2)]
    takens_dim: usize,
    #[arg(long, default_value_t = 2)]
    takens_delay: usize,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(0..=1))]
    maxdim: u8,
    /// Filtration threshold (default: point-cloud diameter).
    #[arg(long)]
    threshold: Option<f64>,
    #[arg(long)]
    keep_zero_bars: bool,
    /// Additional corpus file.
    #[arg(long)]
    corpus: Option<PathBuf>,
    /// Write the diagram JSON here (stdout if neither --json nor --svg).
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
}

fn load_corpus(extra: Option<&Path>) -> Result<Vec<ArgumentText>> {
    let user = match extra {
        Some(path) => corpus::load_corpus_file(path)?,
        None => Vec::new(),
    };
    corpus::merged_corpus(user)
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).map_err(|e| Error::Io {
        path: path.to_path_buf(),
        source: e,
    })
}

fn stdout_write(bytes: &[u8]) -> Result<()> {
    let mut out = io::stdout().lock();
    out.write_all(bytes)
        .and_then(|_| out.flush())
        .map_err(|e| Error::Io {
            path: "<stdout>".into(),
            source: e,
        })
}

fn run_analyze(args: AnalyzeArgs) -> Result<()> {
    let (text_id, body) = if args.text == "-" {
        let mut body = String::new();
        io::stdin().read_to_string(&mut body).map_err(|e| Error::Io {
            path: "<stdin>".into(),
            source: e,
        })?;
        ("stdin".to_string(), body)
    } else {
        let corpus = load_corpus(args.corpus.as_deref())?;
        let text = corpus::find(&corpus, &args.text)?;
        (text.id.clone(), text.text.clone())
    };

    let table = load_glove_path(&args.glove, args.dim)?;
    let config = AnalysisConfig {
        text_id: text_id.clone(),
        text: body,
        seed: ProjectionSeed(args.seed),
        delay: DelayParams::new(args.takens_dim, args.takens_delay)?,
        persistence: PersistenceOptions {
            max_homology_dim: usize::from(args.maxdim),
            threshold: args.threshold,
            keep_zero_bars: args.keep_zero_bars,
        },
    };
    let diagram = analyze(&table, &config)?;
    for skipped in &diagram.metadata.skipped_tokens {
        eprintln!(
            "warning: skipped out-of-vocabulary token {:?} at position {}",
            skipped.token, skipped.position
        );
    }

    let mut json = diagram_to_json(&diagram);
    json.push(b'\n');
    if let Some(path) = &args.svg {
        let options = SvgOptions {
            title: Some(format!(
                "{} (g:{}, seed:{}, m:{}, tau:{})",
                text_id,
                table.dimension(),
                args.seed,
                args.takens_dim,
                args.takens_delay
            )),
            ..SvgOptions::default()
        };
        write_file(path, render_svg(&diagram, &options).as_bytes())?;
    }
    match &args.json {
        Some(path) => write_file(path, &json),
        None if args.svg.is_none() => stdout_write(&json),
        None => Ok(()),
    }
}

fn run_sweep(config_path: &Path, out: &Path) -> Result<()> {
    let config = SweepConfig::from_path(config_path)?;
    let corpus = load_corpus(config.corpus.as_deref())?;
    let texts: Vec<ArgumentText> = if config.texts.is_empty() {
        corpus
    } else {
        config
            .texts
            .iter()
            .map(|id| corpus::find(&corpus, id).cloned())
            .collect::<Result<_>>()?
    };
    let tables: Vec<EmbeddingTable> = config
        .embeddings
        .iter()
        .map(|source| load_glove_path(&source.path, Some(source.dimension)))
        .collect::<Result<_>>()?;

    let plan = SweepPlan {
        texts: &texts,
        tables: &tables,
        seeds: config.seeds.iter().copied().map(ProjectionSeed).collect(),
        delay_params: config.delay_params.clone(),
        persistence: config.persistence_options(),
        distance_homology_dim: config.distance_homology_dim,
    };
    let report = sweep(&plan);
    for warning in &report.warnings {
        eprintln!("warning: {warning}");
    }
    write_sweep(&report, out, config.svg)?;
    eprintln!(
        "{} cells ({} failed), {} distances written to {}",
        report.cells.len(),
        report.failures.len(),
        report.distances.len(),
        out.display()
    );
    Ok(())
}

fn run_compare(a: &Path, b: &Path, hdim: u8) -> Result<()> {
    let read = |path: &Path| -> Result<_> {
        let bytes = fs::read(path).map_err(|e| Error::Io {
            path: path.to_path_buf(),
            source: e,
        })?;
        diagram_from_json(&bytes)
    };
    let result = bottleneck_distance(&read(a)?, &read(b)?, usize::from(hdim));
    for warning in &result.warnings {
        eprintln!("warning: {warning}");
    }
    let mut json = serde_json::to_vec(&result).map_err(|e| Error::Internal(e.to_string()))?;
    json.push(b'\n');
    stdout_write(&json)
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Analyze(args) => run_analyze(args),
        Command::Sweep { config, out } => run_sweep(&config, &out),
        Command::Corpus {
            action: CorpusAction::List { corpus },
        } => stdout_write(corpus::format_corpus(&load_corpus(corpus.as_deref())?).as_bytes()),
        Command::Compare { a, b, hdim } => run_compare(&a, &b, hdim),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match std::panic::catch_unwind(|| run(cli)) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_input_error() { 1 } else { 2 })
        }
        Err(_) => ExitCode::from(2),
    }
}
