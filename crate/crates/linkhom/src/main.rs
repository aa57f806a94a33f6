use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use linkhom::commands::{self, Family, MoveKind};
use linkhom::search::Budget;
use linkhom::{CliError, Output};

/// Link-homotopy invariants, trivializing numbers, move sequences and
/// extremal weighted graphs.
#[derive(Parser)]
#[command(name = "linkhom", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Where the main input comes from: the argument, `--input`, or stdin.
#[derive(Args)]
struct Input {
    /// Expression or JSON object; read from stdin when absent.
    text: Option<String>,
    /// Read the input from a file.
    #[arg(long, conflicts_with = "text")]
    input: Option<PathBuf>,
}

impl Input {
    fn read(&self) -> Result<String, CliError> {
        if let Some(t) = &self.text {
            return Ok(t.clone());
        }
        if let Some(p) = &self.input {
            return std::fs::read_to_string(p)
                .map_err(|e| CliError::Parse(format!("cannot read {}: {}", p.display(), e)));
        }
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Parse(format!("cannot read stdin: {}", e)))?;
        Ok(s)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the expansion of an expression over x1..xm.
    Expand {
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        input: Input,
    },
    /// Print the four-strand normal form as JSON.
    Normalize4 {
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        input: Input,
    },
    /// Exact trivializing number for up to four strands, bounds beyond.
    Nh {
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        input: Input,
    },
    /// Crossing-change and Delta-move bounds with their sources.
    Bounds {
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        input: Input,
    },
    /// Emit a move sequence that trivializes the input.
    Synthesize {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value = "crossing")]
        moves: MoveKind,
        #[command(flatten)]
        input: Input,
    },
    /// Check a move sequence (as printed by synthesize) against the input.
    Verify {
        #[arg(long)]
        n: Option<usize>,
        /// File holding the move sequence JSON.
        #[arg(long)]
        sequence: PathBuf,
        #[command(flatten)]
        input: Input,
    },
    /// Least total weight of a graph whose every k vertices span weight w.
    Phi {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        w: u64,
        /// Seconds (`30s`), nodes (`1000000`) or `none`; defaults to
        /// LINKHOM_BUDGET_DEFAULT, then 600s.
        #[arg(long)]
        budget: Option<Budget>,
        /// Worker threads; defaults to LINKHOM_THREADS, then 1.
        #[arg(long)]
        threads: Option<usize>,
    },
    /// The explicit minimum-weight graph for four vertices and weight three.
    Witness {
        #[arg(long)]
        n: usize,
        /// Print Graphviz DOT instead of JSON.
        #[arg(long)]
        dot: bool,
    },
    /// Print a named example element as an input object.
    Examples {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: Option<usize>,
    },
}

fn env_parse<T: std::str::FromStr>(name: &str) -> Result<Option<T>, CliError> {
    match std::env::var(name) {
        Ok(v) => v
            .parse()
            .map(Some)
            .map_err(|_| CliError::Parse(format!("{} has an invalid value '{}'", name, v))),
        Err(_) => Ok(None),
    }
}

fn run(cli: Cli) -> Result<Output, CliError> {
    match cli.command {
        Command::Expand { m, input } => commands::expand_cmd(&input.read()?, m),
        Command::Normalize4 { n, input } => commands::normalize4(&input.read()?, n),
        Command::Nh { n, input } => commands::nh(&input.read()?, n),
        Command::Bounds { n, input } => commands::bounds(&input.read()?, n),
        Command::Synthesize { n, moves, input } => commands::synthesize(&input.read()?, n, moves),
        Command::Verify { n, sequence, input } => {
            let seq = std::fs::read_to_string(&sequence).map_err(|e| {
                CliError::Parse(format!("cannot read {}: {}", sequence.display(), e))
            })?;
            commands::verify(&input.read()?, n, &seq)
        }
        Command::Phi {
            n,
            k,
            w,
            budget,
            threads,
        } => {
            let budget = match budget {
                Some(b) => b,
                None => env_parse::<Budget>("LINKHOM_BUDGET_DEFAULT")?
                    .unwrap_or_else(|| "600s".parse().expect("valid default")),
            };
            let threads = match threads {
                Some(t) => t,
                None => env_parse::<usize>("LINKHOM_THREADS")?.unwrap_or(1),
            };
            commands::phi(n, k, w, budget, threads)
        }
        Command::Witness { n, dot } => commands::witness(n, dot),
        Command::Examples { family, n } => commands::examples(family, n),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            let _ = writeln!(std::io::stdout(), "{}", out.text);
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("{}", e);
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
