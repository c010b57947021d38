use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mmes::commands::{self, Builtin, SearchArgs, Source, Suite};

/// Purity-based entanglement analysis of multi-qubit pure states.
#[derive(Parser)]
#[command(name = "mmes", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Marginal purities, invariants and uniformity of one state.
    Analyze {
        #[arg(long, conflicts_with = "state", required_unless_present = "state")]
        builtin: Option<Builtin>,
        /// Qubit count for `zero` and `ghz` (default 9).
        #[arg(long)]
        n: Option<usize>,
        /// State file: `nqubits=<n>` then `<bits> <re> <im>` lines.
        #[arg(long)]
        state: Option<PathBuf>,
        /// Marginal sizes, comma separated (default 1..=n/2).
        #[arg(long, value_delimiter = ',')]
        k: Option<Vec<usize>>,
        /// Report path; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write `<PREFIX>-k<k>.csv` spectra.
        #[arg(long, value_name = "PREFIX")]
        csv: Option<PathBuf>,
    },
    /// Replay reference values or check identities on random states.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 100)]
        seeds: usize,
        /// Negate one amplitude of the built-in nine-qubit state first.
        #[arg(long, value_name = "INDEX")]
        flip: Option<usize>,
    },
    /// Minimize pi_me from random restarts (threads from MMES_THREADS).
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 20)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        max_iters: Option<usize>,
        /// Best-state file (default `search-n<n>-seed<seed>.state`).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Full trace report.
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(4) } else { ExitCode::SUCCESS };
        }
    };
    let result = match &cli.command {
        Command::Analyze { builtin, n, state, k, out, csv } => {
            let source = match (builtin, state) {
                (Some(which), _) => Source::Builtin { which: *which, n: *n },
                (None, Some(path)) => Source::File(path.clone()),
                (None, None) => unreachable!("clap requires one source"),
            };
            commands::analyze(&source, k.as_deref(), out.as_deref(), csv.as_deref())
        }
        Command::Verify { suite, seeds, flip } => commands::verify(*suite, *seeds, *flip),
        Command::Search { n, restarts, seed, max_iters, out, report } => commands::search(&SearchArgs {
            n: *n,
            restarts: *restarts,
            seed: *seed,
            max_iters: *max_iters,
            out: out.as_deref(),
            report: report.as_deref(),
        }),
    };
    match result {
        Ok(line) => {
            // a closed pipe downstream is not an error
            let _ = writeln!(std::io::stdout().lock(), "{line}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("mmes: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
