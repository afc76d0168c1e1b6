//! `ghd` — construct, validate, measure, and convert hypergraph
//! decompositions from the command line.
//!
//! Exit codes: 0 success, 1 parse or I/O error, 2 internal invariant
//! failure, 3 invalid decomposition, 4 size guard. Results go to stdout,
//! diagnostics to stderr.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use ghd_core::{
    decide_ghw_le_k, decompose, ghw_exact, lint, parse_ghd, parse_hg, serialize_ghd, stats, to_dot,
    validate, CoverMode, Decomposition, DotInput, ExactError, GhdParseError, Heuristic,
    HgParseError, Hypergraph, DEFAULT_VERTEX_LIMIT,
};

const EXIT_PARSE: u8 = 1;
const EXIT_INTERNAL: u8 = 2;
const EXIT_INVALID: u8 = 3;
const EXIT_TOO_LARGE: u8 = 4;

#[derive(Parser)]
#[command(name = "ghd", version, about = "Generalized hypertree decompositions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose a hypergraph and report the width
    Decompose {
        /// Input .hg file
        input: PathBuf,
        /// Ordering heuristic
        #[arg(long, value_enum, default_value_t = HeuristicArg::MinFill)]
        heuristic: HeuristicArg,
        /// Seed for the random heuristic
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Cover labeling mode
        #[arg(long, value_enum, default_value_t = CoverArg::Auto)]
        cover: CoverArg,
        /// Remove subsumed edges before decomposing
        #[arg(long)]
        preprocess: bool,
        /// Warn about cover edges disjoint from their bag
        #[arg(long)]
        lint: bool,
        /// Write the decomposition to this .ghd file
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also write a DOT rendering of hypergraph and decomposition
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Check a decomposition against a hypergraph
    Validate {
        /// Input .hg file
        hypergraph: PathBuf,
        /// Input .ghd file
        decomposition: PathBuf,
        /// Warn about cover edges disjoint from their bag
        #[arg(long)]
        lint: bool,
    },
    /// Exact width by exhaustive ordering sweep (small inputs only)
    Exact {
        /// Input .hg file
        input: PathBuf,
        /// Maximum vertex count admitted to the sweep
        #[arg(long, default_value_t = DEFAULT_VERTEX_LIMIT)]
        limit: usize,
        /// Decide width <= k instead of computing the exact width
        #[arg(short = 'k', long)]
        k: Option<usize>,
        /// Write the witness decomposition to this .ghd file
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print summary statistics of a hypergraph
    Stats {
        /// Input .hg file
        input: PathBuf,
    },
    /// Render .hg and/or .ghd inputs as a DOT file
    Convert {
        /// One .hg file, one .ghd file, or one of each
        #[arg(num_args = 1..=2, required = true)]
        inputs: Vec<PathBuf>,
        /// Output DOT file
        #[arg(long)]
        dot: PathBuf,
    },
    /// Decompose every .hg file in a directory and emit CSV timings
    Bench {
        /// Directory of .hg files
        directory: PathBuf,
        /// Heuristics to run (default: all)
        #[arg(long, value_enum, value_delimiter = ',')]
        heuristics: Option<Vec<HeuristicArg>>,
        /// Repetitions per instance and heuristic
        #[arg(long, default_value_t = 1)]
        reps: u32,
        /// Cover labeling mode
        #[arg(long, value_enum, default_value_t = CoverArg::Auto)]
        cover: CoverArg,
        /// Seed for the random heuristic
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum HeuristicArg {
    MinDegree,
    MinFill,
    Mcs,
    Random,
}

impl HeuristicArg {
    fn resolve(self, seed: u64) -> Heuristic {
        match self {
            HeuristicArg::MinDegree => Heuristic::MinDegree,
            HeuristicArg::MinFill => Heuristic::MinFill,
            HeuristicArg::Mcs => Heuristic::Mcs,
            HeuristicArg::Random => Heuristic::Random { seed },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CoverArg {
    Greedy,
    Exact,
    Auto,
}

impl From<CoverArg> for CoverMode {
    fn from(arg: CoverArg) -> CoverMode {
        match arg {
            CoverArg::Greedy => CoverMode::Greedy,
            CoverArg::Exact => CoverMode::Exact,
            CoverArg::Auto => CoverMode::Auto,
        }
    }
}

fn read_text(path: &Path) -> Result<String, ExitCode> {
    std::fs::read_to_string(path).map_err(|e| {
        eprintln!("{}: {e}", path.display());
        ExitCode::from(EXIT_PARSE)
    })
}

fn write_text(path: &Path, text: &str) -> Result<(), ExitCode> {
    std::fs::write(path, text).map_err(|e| {
        eprintln!("{}: {e}", path.display());
        ExitCode::from(EXIT_PARSE)
    })
}

fn load_hypergraph(path: &Path) -> Result<Hypergraph, ExitCode> {
    let text = read_text(path)?;
    parse_hg(&text).map_err(|e| {
        match e {
            HgParseError::Syntax(d) => eprintln!("{}:{d}", path.display()),
            other => eprintln!("{}: {other}", path.display()),
        }
        ExitCode::from(EXIT_PARSE)
    })
}

fn load_decomposition(path: &Path) -> Result<Decomposition, ExitCode> {
    let text = read_text(path)?;
    parse_ghd(&text).map_err(|e| {
        match e {
            GhdParseError::Syntax(d) => eprintln!("{}:{d}", path.display()),
            other => eprintln!("{}: {other}", path.display()),
        }
        ExitCode::from(EXIT_PARSE)
    })
}

fn print_lint(h: &Hypergraph, d: &Decomposition) {
    for warning in lint(h, d) {
        eprintln!("lint: {warning}");
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_decompose(
    input: &Path,
    heuristic: Heuristic,
    cover: CoverMode,
    preprocess: bool,
    want_lint: bool,
    output: Option<&Path>,
    dot: Option<&Path>,
) -> Result<(), ExitCode> {
    let h = load_hypergraph(input)?;
    let working = if preprocess {
        h.remove_subsumed_edges()
    } else {
        h.clone()
    };
    let d = decompose(&working, heuristic, cover);
    let report = validate(&h, &d);
    if !report.valid() {
        eprintln!("internal error: decomposition failed validation");
        eprint!("{report}");
        return Err(ExitCode::from(EXIT_INTERNAL));
    }
    if want_lint {
        print_lint(&h, &d);
    }
    if let Some(path) = output {
        write_text(path, &serialize_ghd(&d))?;
    }
    if let Some(path) = dot {
        let text = to_dot(DotInput::Pair {
            hypergraph: &h,
            decomposition: &d,
        })
        .expect("validated above");
        write_text(path, &text)?;
    }
    println!("width={}", d.width());
    Ok(())
}

fn cmd_validate(hg: &Path, ghd: &Path, want_lint: bool) -> Result<(), ExitCode> {
    let h = load_hypergraph(hg)?;
    let d = load_decomposition(ghd)?;
    let report = validate(&h, &d);
    print!("{report}");
    println!("width={}", d.width());
    if want_lint {
        print_lint(&h, &d);
    }
    if report.valid() {
        Ok(())
    } else {
        Err(ExitCode::from(EXIT_INVALID))
    }
}

fn cmd_exact(
    input: &Path,
    limit: usize,
    k: Option<usize>,
    output: Option<&Path>,
) -> Result<(), ExitCode> {
    let h = load_hypergraph(input)?;
    let too_large = |e: ExactError| {
        eprintln!("{e} (raise with --limit)");
        ExitCode::from(EXIT_TOO_LARGE)
    };
    match k {
        Some(k) => {
            let witness = decide_ghw_le_k(&h, k, limit).map_err(too_large)?;
            println!("ghw<={k}: {}", witness.is_some());
            if let (Some(d), Some(path)) = (witness, output) {
                write_text(path, &serialize_ghd(&d))?;
            }
        }
        None => {
            let result = ghw_exact(&h, limit).map_err(too_large)?;
            println!("ghw={}", result.ghw);
            if let Some(path) = output {
                write_text(path, &serialize_ghd(&result.witness))?;
            }
        }
    }
    Ok(())
}

fn cmd_convert(inputs: &[PathBuf], dot: &Path) -> Result<(), ExitCode> {
    let mut h: Option<Hypergraph> = None;
    let mut d: Option<Decomposition> = None;
    for path in inputs {
        match path.extension().and_then(|e| e.to_str()) {
            Some("hg") if h.is_none() => h = Some(load_hypergraph(path)?),
            Some("ghd") if d.is_none() => d = Some(load_decomposition(path)?),
            Some("hg") | Some("ghd") => {
                eprintln!("convert takes at most one .hg and one .ghd input");
                return Err(ExitCode::from(EXIT_PARSE));
            }
            _ => {
                eprintln!("{}: expected a .hg or .ghd file", path.display());
                return Err(ExitCode::from(EXIT_PARSE));
            }
        }
    }
    let text = match (&h, &d) {
        (Some(h), Some(d)) => to_dot(DotInput::Pair {
            hypergraph: h,
            decomposition: d,
        }),
        (Some(h), None) => to_dot(DotInput::Hypergraph(h)),
        (None, Some(d)) => to_dot(DotInput::Decomposition(d)),
        (None, None) => unreachable!("clap requires at least one input"),
    }
    .map_err(|e| {
        let ghd_core::DotError::InvalidDecomposition(report) = &e;
        eprintln!("{e}");
        eprint!("{report}");
        ExitCode::from(EXIT_INVALID)
    })?;
    write_text(dot, &text)
}

struct BenchRecord {
    instance: String,
    heuristic: &'static str,
    cover: &'static str,
    width: usize,
    valid: bool,
    nodes: usize,
    millis: f64,
}

fn cmd_bench(
    directory: &Path,
    heuristics: &[HeuristicArg],
    reps: u32,
    cover: CoverMode,
    seed: u64,
) -> Result<(), ExitCode> {
    let entries = std::fs::read_dir(directory).map_err(|e| {
        eprintln!("{}: {e}", directory.display());
        ExitCode::from(EXIT_PARSE)
    })?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().and_then(|e| e.to_str()) == Some("hg"))
        .collect();
    files.sort();

    let mut records: Vec<BenchRecord> = Vec::new();
    for path in &files {
        let h = load_hypergraph(path)?;
        let instance = path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default();
        for &arg in heuristics {
            let heuristic = arg.resolve(seed);
            for _ in 0..reps {
                let start = Instant::now();
                let d = decompose(&h, heuristic, cover);
                let millis = start.elapsed().as_secs_f64() * 1000.0;
                records.push(BenchRecord {
                    instance: instance.clone(),
                    heuristic: heuristic.tag(),
                    cover: cover.tag(),
                    width: d.width(),
                    valid: validate(&h, &d).valid(),
                    nodes: d.node_count(),
                    millis,
                });
            }
        }
    }
    records.sort_by(|a, b| {
        (a.instance.as_str(), a.heuristic).cmp(&(b.instance.as_str(), b.heuristic))
    });

    println!("instance,heuristic,cover,width,nodes,millis");
    let mut all_valid = true;
    for r in &records {
        println!(
            "{},{},{},{},{},{:.3}",
            r.instance, r.heuristic, r.cover, r.width, r.nodes, r.millis
        );
        if !r.valid {
            eprintln!(
                "internal error: {} with {} produced an invalid decomposition",
                r.instance, r.heuristic
            );
            all_valid = false;
        }
    }
    if all_valid {
        Ok(())
    } else {
        Err(ExitCode::from(EXIT_INTERNAL))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Decompose {
            input,
            heuristic,
            seed,
            cover,
            preprocess,
            lint,
            output,
            dot,
        } => cmd_decompose(
            input,
            heuristic.resolve(*seed),
            (*cover).into(),
            *preprocess,
            *lint,
            output.as_deref(),
            dot.as_deref(),
        ),
        Command::Validate {
            hypergraph,
            decomposition,
            lint,
        } => cmd_validate(hypergraph, decomposition, *lint),
        Command::Exact {
            input,
            limit,
            k,
            output,
        } => cmd_exact(input, *limit, *k, output.as_deref()),
        Command::Stats { input } => load_hypergraph(input).map(|h| println!("{}", stats(&h))),
        Command::Convert { inputs, dot } => cmd_convert(inputs, dot),
        Command::Bench {
            directory,
            heuristics,
            reps,
            cover,
            seed,
        } => {
            let list = heuristics.clone().unwrap_or_else(|| {
                vec![
                    HeuristicArg::MinDegree,
                    HeuristicArg::MinFill,
                    HeuristicArg::Mcs,
                    HeuristicArg::Random,
                ]
            });
            cmd_bench(directory, &list, *reps, (*cover).into(), *seed)
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(code) => code,
    }
}
