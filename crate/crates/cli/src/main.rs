use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use zonotopal::format::{parse_arrangement, parse_graph};
use zonotopal::report::{analyze_arrangement, analyze_graph, render_text, AnalysisOptions, AnalysisReport};
use zonotopal::suite::run_random_suite;
use zonotopal::Error;

const CONVENTIONS: &str = "\
Output conventions:
  Interior points are listed in lexicographic order; every function on them
  (lattice bases, Rees pieces) is a column indexed by that order.
  Cocircuits are signed so their first nonzero coordinate is positive and are
  listed in lexicographic order of covectors.
  Arrows are ordered by id, numerically when ids are integers. The graph route
  coordinatizes the cycle lattice by fundamental cycles of the spanning forest
  chosen greedily in that order.
  Polynomial coefficient lists start at degree 0. Rees pieces carry the
  filtration degree as u-weight and twice it as topological degree.

Exit codes:
  0 all checks pass, 1 usage or I/O error, 2 malformed input,
  3 size limit exceeded, 4 a verification failed, 5 not totally unimodular";

#[derive(Parser)]
#[command(name = "zonotopal", version, about = "Internal zonotopal algebras of graphs and unimodular vector arrangements", after_help = CONVENTIONS)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze the cographical arrangement of a directed graph file
    /// (`vertex <label>` and `arrow <id> <tail> <head>` lines, `#` comments).
    #[command(after_help = CONVENTIONS)]
    AnalyzeGraph {
        path: PathBuf,
        /// Emit the JSON report instead of text tables.
        #[arg(long)]
        json: bool,
        /// Fail if the filtration needs more than this many degrees.
        #[arg(long, value_name = "N")]
        max_degree: Option<usize>,
    },
    /// Analyze a vector arrangement file (`rank <r>` then `col <label> <r integers>` lines).
    #[command(after_help = CONVENTIONS)]
    AnalyzeArrangement {
        path: PathBuf,
        #[arg(long)]
        json: bool,
        /// Skip the brute-force total unimodularity check.
        #[arg(long)]
        assume_tu: bool,
        #[arg(long, value_name = "N")]
        max_degree: Option<usize>,
    },
    /// Run every cross-check on a seeded stream of random connected multigraphs.
    RandomSuite {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        count: usize,
        /// At most 9.
        #[arg(long, default_value_t = 7)]
        max_edges: usize,
        #[arg(long)]
        json: bool,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. }
        | Error::InvalidGraph(_)
        | Error::InvalidArrangement(_)
        | Error::UnknownLabel(_)
        | Error::DimensionMismatch { .. } => 2,
        Error::SizeExceeded { .. } => 3,
        Error::NotTotallyUnimodular(_) => 5,
        _ => 4,
    }
}

fn read(path: &PathBuf) -> Result<String, ExitCode> {
    std::fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        ExitCode::from(1)
    })
}

fn emit(report: AnalysisReport, json: bool) -> ExitCode {
    if json {
        print!("{}", report.to_json());
    } else {
        print!("{}", render_text(&report));
    }
    if report.verdicts.all {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(4)
    }
}

fn fail(e: Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(exit_code(&e))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match cli.command {
        Command::AnalyzeGraph { path, json, max_degree } => {
            let text = match read(&path) {
                Ok(t) => t,
                Err(code) => return code,
            };
            let opts = AnalysisOptions {
                assume_tu: false,
                max_degree,
            };
            match parse_graph(&text).and_then(|g| analyze_graph(&g, &text, opts)) {
                Ok(r) => emit(r, json),
                Err(e) => fail(e),
            }
        }
        Command::AnalyzeArrangement {
            path,
            json,
            assume_tu,
            max_degree,
        } => {
            let text = match read(&path) {
                Ok(t) => t,
                Err(code) => return code,
            };
            let opts = AnalysisOptions { assume_tu, max_degree };
            match parse_arrangement(&text).and_then(|va| analyze_arrangement(&va, &text, opts)) {
                Ok(r) => emit(r, json),
                Err(e) => fail(e),
            }
        }
        Command::RandomSuite {
            seed,
            count,
            max_edges,
            json,
        } => {
            eprintln!("random suite: seed {seed}, count {count}, max edges {max_edges}");
            let summary = match run_random_suite(seed, count, max_edges) {
                Ok(s) => s,
                Err(e) => return fail(e),
            };
            if json {
                println!("{}", serde_json::to_string_pretty(&summary).expect("summary serializes"));
            } else {
                println!("seed {seed}, count {count}, max edges {max_edges}");
                println!("passed {}, failed {}", summary.passed, summary.failed);
                if let Some(f) = &summary.first_failure {
                    println!("first failure: instance {} ({})", f.index, f.reason);
                    print!("{}", f.graph);
                }
            }
            if summary.failed == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(4)
            }
        }
    }
}
