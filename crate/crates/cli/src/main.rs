use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use pa_clique::census::run_census;
use pa_clique::complex::clique_complex;
use pa_clique::estimators::{compute_trace, geometric_checkpoints, TraceOptions, DEFAULT_PROBE_PREFIX};
use pa_clique::harness::{report, run_ensemble, EnsembleSummary, EstimatorMode, ExperimentConfig};
use pa_clique::homology::betti_numbers;
use pa_clique::pa_graph::{read_graph, simplify, write_graph};
use pa_clique::scalar::parse_rational;
use pa_clique::theory::predict;
use pa_clique::{generate, MultiDiGraph, PaParams, PatternGraph};

/// Experiments on clique complexes of preferential attachment graphs.
#[derive(Parser)]
#[command(name = "pa-lab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a preferential attachment graph.
    Generate(GenerateArgs),
    /// Betti numbers of the clique complex of a graph file.
    Betti(BettiArgs),
    /// Per-node link estimators of a graph file as CSV.
    Trace(TraceArgs),
    /// Run a seeded ensemble and write its summary.
    Ensemble(EnsembleArgs),
    /// Growth regime of the expected Betti number.
    Predict(PredictArgs),
    /// Mean pattern counts over an ensemble.
    Census(CensusArgs),
    /// Plot data from an ensemble summary.
    Report(ReportArgs),
}

#[derive(Args)]
struct ModelArgs {
    /// Final node count T.
    #[arg(long, short = 'T', default_value_t = 2000)]
    nodes: u32,
    #[arg(long, short, default_value_t = 7)]
    m: u32,
    #[arg(long, short, default_value_t = -5.0, allow_hyphen_values = true)]
    delta: f64,
    #[arg(long, short, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct GenerateArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Output file; stdout when absent.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BettiArgs {
    graph: PathBuf,
    /// Highest dimension reported.
    #[arg(long, default_value_t = 2)]
    top: usize,
}

#[derive(Args)]
struct TraceArgs {
    graph: PathBuf,
    #[arg(long, short, default_value_t = 2)]
    q: usize,
    #[arg(long, default_value_t = DEFAULT_PROBE_PREFIX)]
    probe: u32,
    /// Skip exact estimators above this many nodes.
    #[arg(long, default_value_t = 2000)]
    exact_cap: u32,
    /// Betti checkpoints per decade; 0 disables them.
    #[arg(long, default_value_t = 20)]
    per_decade: u32,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    Desk,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Hatted,
    Both,
}

#[derive(Args)]
struct EnsembleArgs {
    /// JSON configuration; flags override its fields.
    #[arg(long, short)]
    config: Option<PathBuf>,
    #[arg(long, value_enum, conflicts_with = "config")]
    preset: Option<Preset>,
    #[arg(long, short = 'T')]
    nodes: Option<u32>,
    #[arg(long, short)]
    m: Option<u32>,
    #[arg(long, short, allow_hyphen_values = true)]
    delta: Option<f64>,
    #[arg(long, short)]
    q: Option<usize>,
    #[arg(long, short = 'R')]
    replicates: Option<u32>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    #[arg(long)]
    blocks: Option<usize>,
    #[arg(long)]
    per_decade: Option<u32>,
    #[arg(long, short = 'j')]
    threads: Option<usize>,
    /// Overridden by PA_LAB_OUTPUT_DIR.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PredictArgs {
    #[arg(long, short)]
    q: usize,
    /// Exact value such as `-5`, `-14/3` or `-2.5`.
    #[arg(long, short, allow_hyphen_values = true)]
    delta: String,
    #[arg(long, short)]
    m: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum Builtin {
    SingleEdge,
    Biangle,
    Witness,
}

#[derive(Args)]
struct CensusArgs {
    /// Pattern file (`pattern v=<n>` header, `i j mult` lines).
    #[arg(long, short, conflicts_with = "builtin")]
    pattern: Option<PathBuf>,
    #[arg(long, value_enum)]
    builtin: Option<Builtin>,
    /// Dimension of the sphere witness.
    #[arg(long, default_value_t = 2)]
    q: usize,
    #[arg(long, short, default_value_t = 7)]
    m: u32,
    #[arg(long, short, default_value_t = -5.0, allow_hyphen_values = true)]
    delta: f64,
    #[arg(long, short, default_value_t = 0)]
    seed: u64,
    #[arg(long, short = 'R', default_value_t = 20)]
    replicates: u32,
    /// Graph sizes, comma separated and increasing.
    #[arg(long, value_delimiter = ',', default_values_t = [500, 1000, 2000, 4000])]
    sizes: Vec<u32>,
}

#[derive(Args)]
struct ReportArgs {
    /// `summary.json` written by `ensemble`.
    summary: PathBuf,
    #[arg(long, short)]
    out: PathBuf,
    #[arg(long)]
    svg: bool,
}

fn open_graph(path: &Path) -> Result<MultiDiGraph> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let (_, g) = read_graph(BufReader::new(file)).with_context(|| format!("reading {}", path.display()))?;
    Ok(g)
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn ensemble_config(a: &EnsembleArgs) -> Result<ExperimentConfig> {
    let mut cfg = match (&a.config, a.preset) {
        (Some(path), _) => ExperimentConfig::load(path)?,
        (None, Some(Preset::Full)) => ExperimentConfig::full(),
        (None, _) => ExperimentConfig::desk(),
    };
    if let Some(v) = a.nodes {
        cfg.nodes = v;
        cfg.checkpoints.clear();
    }
    if let Some(v) = a.m {
        cfg.m = v;
    }
    if let Some(v) = a.delta {
        cfg.delta = v;
    }
    if let Some(v) = a.q {
        cfg.q = v;
    }
    if let Some(v) = a.replicates {
        cfg.replicates = v;
    }
    if let Some(v) = a.seed {
        cfg.master_seed = v;
    }
    if let Some(v) = a.mode {
        cfg.mode = match v {
            Mode::Exact => EstimatorMode::Exact,
            Mode::Hatted => EstimatorMode::Hatted,
            Mode::Both => EstimatorMode::Both,
        };
    }
    if let Some(v) = a.blocks {
        cfg.mom_blocks = v;
    }
    if let Some(v) = a.per_decade {
        cfg.checkpoints_per_decade = v;
    }
    if let Some(v) = a.threads {
        cfg.threads = v;
    }
    if let Some(v) = &a.out {
        cfg.output_dir = Some(v.clone());
    }
    Ok(cfg)
}

fn census_pattern(a: &CensusArgs) -> Result<(String, PatternGraph)> {
    if let Some(path) = &a.pattern {
        let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
        let p = PatternGraph::parse(BufReader::new(file))?;
        return Ok((path.display().to_string(), p));
    }
    Ok(match a.builtin.unwrap_or(Builtin::SingleEdge) {
        Builtin::SingleEdge => ("single-edge".into(), PatternGraph::single_edge()),
        Builtin::Biangle => ("biangle".into(), PatternGraph::biangle()),
        Builtin::Witness => (format!("sphere-witness-q{}", a.q), PatternGraph::sphere_witness(a.q, a.m)?),
    })
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Generate(a) => {
            let p = PaParams::new(a.model.nodes, a.model.m, a.model.delta, a.model.seed);
            let g = generate(p)?;
            let mut w = output(a.out.as_deref())?;
            write_graph(&mut w, &p, &g)?;
            w.flush()?;
        }
        Command::Betti(a) => {
            let g = open_graph(&a.graph)?;
            let x = clique_complex(&simplify(&g), a.top + 1);
            let betti = betti_numbers(&x, a.top)?;
            println!("{}", serde_json::json!({ "nodes": g.num_nodes(), "betti": betti }));
        }
        Command::Trace(a) => {
            let g = open_graph(&a.graph)?;
            let opts = TraceOptions {
                probe_prefix: a.probe,
                exact_cap: a.exact_cap,
                checkpoints: if a.per_decade == 0 {
                    Vec::new()
                } else {
                    geometric_checkpoints(g.num_nodes(), a.per_decade)
                },
            };
            let trace = compute_trace(&g, a.q, &opts)?;
            let mut w = output(a.out.as_deref())?;
            trace.write_csv(&mut w)?;
            w.flush()?;
        }
        Command::Ensemble(a) => {
            let cfg = ensemble_config(&a)?;
            let run = run_ensemble(&cfg)?;
            match cfg.resolved_output_dir() {
                Some(dir) => eprintln!(
                    "wrote {} replicate traces and summary.json to {}",
                    run.replicates.len(),
                    dir.display()
                ),
                None => println!("{}", serde_json::to_string_pretty(&run.summary)?),
            }
        }
        Command::Predict(a) => {
            let Some(delta) = parse_rational(&a.delta) else {
                bail!("cannot read `{}` as an exact number", a.delta);
            };
            println!("{}", serde_json::to_string_pretty(&predict(a.q, delta, a.m)?)?);
        }
        Command::Census(a) => {
            let (id, pattern) = census_pattern(&a)?;
            let base = PaParams::new(0, a.m, a.delta, a.seed);
            let result = run_census(&id, &pattern, base, &a.sizes, a.replicates)?;
            println!("{}", serde_json::to_string_pretty(&result)?);
        }
        Command::Report(a) => {
            let text = std::fs::read_to_string(&a.summary)
                .with_context(|| format!("reading {}", a.summary.display()))?;
            let summary: EnsembleSummary = serde_json::from_str(&text)?;
            let files = report(&summary, &a.out, a.svg)?;
            eprintln!("wrote {} and {}", files.csv.display(), files.band.display());
        }
    }
    Ok(())
}

fn main() -> Result<()> {
    run(Cli::parse())
}
