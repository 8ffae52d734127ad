//! Command-line front end for the `c3realize` library.
//!
//! Every command reads a JSON file (or standard input for `-`) and writes
//! JSON to standard output, except `decompose --format dot` and the counts.
//!
//! Exit codes: 0 success, 1 unreadable or malformed input, 2 violated
//! precondition or capacity bound, 3 not realizable.

use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use c3realize::decomposition::{
    decomposition_tree, enumerate_modules, enumerate_usual_modules, module_violation,
    strong_modules, Limits,
};
use c3realize::io::{
    hypergraph_to_json, parse_hypergraph, parse_tournament, tournament_to_json, witness_to_json,
};
use c3realize::oracle::{self, FamilyKind};
use c3realize::{
    count_realizations, enumerate_realizations, realize, CriticalKind, Error, Hypergraph, Outcome,
    Tournament, VertexSet,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "c3realize", version, about = "Realize 3-uniform hypergraphs as tournament 3-cycle structures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the 3-cycle hypergraph of a tournament.
    C3 { input: PathBuf },
    /// Print the decomposition tree of a hypergraph.
    Decompose {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// List modules of a hypergraph.
    Modules {
        input: PathBuf,
        /// Only the strong modules.
        #[arg(long, conflicts_with = "usual")]
        strong: bool,
        /// The usual (classical) modules instead.
        #[arg(long)]
        usual: bool,
    },
    /// Test whether a vertex set is a module.
    IsModule {
        input: PathBuf,
        /// Comma-separated vertices, e.g. 0,1,2.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        set: Vec<usize>,
    },
    /// Find one realization; exit code 3 when there is none.
    Realize { input: PathBuf },
    /// Count the realizations.
    Count { input: PathBuf },
    /// Print every realization, one JSON document per line.
    Enumerate {
        input: PathBuf,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Brute-force counterparts over all tournaments.
    Oracle {
        #[arg(value_enum)]
        action: OracleAction,
        input: PathBuf,
    },
    /// Check the partitive family and modular covering axioms.
    CheckAxioms {
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        samples: usize,
    },
    /// Print a tournament from a standard family.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        order: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleAction {
    Realize,
    Count,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    #[value(name = "T")]
    T,
    #[value(name = "U")]
    U,
    #[value(name = "W")]
    W,
    #[value(name = "L")]
    L,
}

enum Failure {
    Input(String),
    Library(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Input(_) | Failure::Library(Error::Parse { .. }) => 1,
            Failure::Library(_) => 2,
        }
    }
}

fn read_input(path: &PathBuf) -> Result<String, Failure> {
    let mut text = String::new();
    let result = if path.as_os_str() == "-" {
        io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    result.map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    Ok(text)
}

fn read_hypergraph(path: &PathBuf) -> Result<Hypergraph, Failure> {
    Ok(parse_hypergraph(&read_input(path)?)?)
}

fn sets_json(sets: &[VertexSet]) -> Value {
    Value::Array(sets.iter().map(|s| json!(s.to_vec())).collect())
}

fn run(cli: Cli, out: &mut impl Write) -> Result<u8, Failure> {
    let mut emit = |line: String| {
        writeln!(out, "{line}").map_err(|e| Failure::Input(format!("cannot write output: {e}")))
    };
    match cli.command {
        Command::C3 { input } => {
            let t = parse_tournament(&read_input(&input)?)?;
            emit(hypergraph_to_json(&t.c3_structure()).to_string())?;
        }
        Command::Decompose { input, format } => {
            let tree = decomposition_tree(&read_hypergraph(&input)?)?;
            emit(match format {
                Format::Json => tree.to_json().to_string(),
                Format::Dot => tree.to_dot().trim_end().to_string(),
            })?;
        }
        Command::Modules {
            input,
            strong,
            usual,
        } => {
            let h = read_hypergraph(&input)?;
            let limits = Limits::default();
            let list = if strong {
                strong_modules(&h, limits)?
            } else if usual {
                enumerate_usual_modules(&h, limits)?
            } else {
                enumerate_modules(&h, limits)?
            };
            emit(sets_json(&list).to_string())?;
        }
        Command::IsModule { input, set } => {
            let h = read_hypergraph(&input)?;
            if let Some(&v) = set.iter().find(|&&v| v >= h.order()) {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    order: h.order(),
                }
                .into());
            }
            let m: VertexSet = set.iter().collect();
            let violation = module_violation(&h, m);
            emit(
                json!({
                    "is_module": violation.is_none(),
                    "violating_edge": violation.map(|e| e.to_vec()),
                })
                .to_string(),
            )?;
        }
        Command::Realize { input } => {
            let h = read_hypergraph(&input)?;
            match realize(&h)? {
                Outcome::Realized(t) => {
                    if t.c3_structure() != h {
                        return Err(Failure::Input("internal error: realization check failed".into()));
                    }
                    emit(tournament_to_json(&t).to_string())?;
                }
                Outcome::NotRealizable(w) => {
                    emit(witness_to_json(&w).to_string())?;
                    return Ok(3);
                }
            }
        }
        Command::Count { input } => {
            emit(count_realizations(&read_hypergraph(&input)?)?.to_string())?;
        }
        Command::Enumerate { input, limit } => {
            let h = read_hypergraph(&input)?;
            for t in enumerate_realizations(&h)?.take(limit.unwrap_or(usize::MAX)) {
                emit(tournament_to_json(&t).to_string())?;
            }
        }
        Command::Oracle { action, input } => {
            let h = read_hypergraph(&input)?;
            if !h.is_3_uniform() {
                return Err(Error::NotThreeUniform.into());
            }
            let all = oracle::brute_force_realizations(&h)?;
            match action {
                OracleAction::Count => emit(all.len().to_string())?,
                OracleAction::Realize => match all.first() {
                    Some(t) => emit(tournament_to_json(t).to_string())?,
                    None => {
                        emit(json!({ "non_realizable": { "witness": h.vertices().to_vec(), "stage": "oracle" } }).to_string())?;
                        return Ok(3);
                    }
                },
            }
        }
        Command::CheckAxioms {
            input,
            seed,
            samples,
        } => {
            let h = read_hypergraph(&input)?;
            let partitive = oracle::check_partitive(&h)?;
            let covering = oracle::check_covering_axioms(&h, samples, seed, FamilyKind::Partitive)?;
            emit(
                json!({
                    "passed": partitive.passed() && covering.passed(),
                    "partitive": partitive,
                    "covering": covering,
                })
                .to_string(),
            )?;
        }
        Command::Gen { family, order } => {
            let t = match family {
                Family::L => Tournament::linear_order(order)?,
                Family::T => Tournament::critical(CriticalKind::T, order)?,
                Family::U => Tournament::critical(CriticalKind::U, order)?,
                Family::W => Tournament::critical(CriticalKind::W, order)?,
            };
            emit(tournament_to_json(&t).to_string())?;
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            let message = match &failure {
                Failure::Input(m) => m.clone(),
                Failure::Library(e) => e.to_string(),
            };
            eprintln!("error: {message}");
            ExitCode::from(failure.exit_code())
        }
    }
}
