//! Command bodies; each returns the single stdout summary line.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::ValueEnum;
use mmes_core::optimizer::{known_floor, SearchConfig, MAX_SEARCH_QUBITS};
use mmes_core::state::{ghz_state, nine_qubit_minimizer, product_state, MAX_QUBITS, MIN_QUBITS};
use mmes_core::StateVector;

use crate::error::{CliError, CliResult};
use crate::io::write_atomic;
use crate::numfmt::{annotated, sci};
use crate::report::{render_search, spectrum_csv, AnalysisReport};
use crate::search::{parallel_search, thread_count};
use crate::statefile::{format_state, read_state};
use crate::verify::{first_failure, identity_checks, identity_residuals, reference_suite};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Builtin {
    /// Product state |0...0>.
    Zero,
    Ghz,
    /// The nine-qubit minimizer with pi_me = 1/14.
    #[value(name = "zha9")]
    Minimizer9,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Reference values for product, GHZ and the nine-qubit minimizer.
    #[value(name = "paper")]
    Reference,
    Identities,
}

pub enum Source {
    Builtin { which: Builtin, n: Option<usize> },
    File(PathBuf),
}

pub fn load(source: &Source) -> CliResult<(String, StateVector)> {
    match source {
        Source::File(path) => Ok((path.display().to_string(), read_state(path)?)),
        Source::Builtin { which: Builtin::Minimizer9, n } => match n {
            Some(n) if *n != 9 => Err(CliError::Invalid(format!("builtin zha9 has 9 qubits, --n {n} given"))),
            _ => Ok(("builtin:zha9".into(), nine_qubit_minimizer())),
        },
        Source::Builtin { which, n } => {
            let n = n.unwrap_or(9);
            if !(MIN_QUBITS..=MAX_QUBITS).contains(&n) {
                return Err(CliError::Invalid(format!("--n {n} outside {MIN_QUBITS}..={MAX_QUBITS}")));
            }
            let (name, state) = match which {
                Builtin::Zero => ("zero", product_state(n)?),
                _ => ("ghz", ghz_state(n)?),
            };
            Ok((format!("builtin:{name}:n={n}"), state))
        }
    }
}

fn check_orders(ks: &[usize], n: usize) -> CliResult<()> {
    match ks.iter().find(|&&k| k < 1 || k >= n) {
        Some(k) => Err(CliError::Invalid(format!("marginal size {k} outside 1..={}", n - 1))),
        None => Ok(()),
    }
}

pub fn analyze(source: &Source, ks: Option<&[usize]>, out: Option<&Path>, csv: Option<&Path>) -> CliResult<String> {
    let (descriptor, state) = load(source)?;
    let n = state.n();
    let ks: Vec<usize> = match ks {
        Some(ks) => ks.to_vec(),
        None => (1..=n / 2).collect(),
    };
    check_orders(&ks, n)?;
    let report = AnalysisReport::build(&descriptor, &state, &ks)?;
    if let Some(prefix) = csv {
        for s in &report.spectra {
            let mut name = prefix.as_os_str().to_owned();
            name.push(format!("-k{}.csv", s.k));
            write_atomic(Path::new(&name), &spectrum_csv(s))?;
        }
    }
    let text = report.render();
    match out {
        Some(path) => {
            write_atomic(path, &text)?;
            Ok(path.display().to_string())
        }
        None => Ok(text.trim_end().to_string()),
    }
}

/// Runs a suite, logging every check to stderr.
pub fn verify(suite: Suite, seeds: usize, flip: Option<usize>) -> CliResult<String> {
    let (checks, worst) = match suite {
        Suite::Reference => {
            if let Some(i) = flip {
                if i >= 1 << 9 {
                    return Err(CliError::Invalid(format!("--flip {i} outside 0..512")));
                }
            }
            (reference_suite(flip, thread_count()?)?, None)
        }
        Suite::Identities => {
            if seeds == 0 {
                return Err(CliError::Invalid("--seeds must be at least 1".into()));
            }
            let r = identity_residuals(seeds)?;
            (identity_checks(&r, seeds), Some(r.worst()))
        }
    };
    for c in &checks {
        eprintln!("{}", c.line());
    }
    if let Some(c) = first_failure(&checks) {
        return Err(CliError::VerifyFailed(c.name.to_string()));
    }
    let passed = checks.len();
    Ok(match worst {
        None => format!("reference: {passed}/{passed} checks passed"),
        Some(w) => format!("identities: {passed}/{passed} checks passed over {seeds} states; max residual {}", sci(w)),
    })
}

pub struct SearchArgs<'a> {
    pub n: usize,
    pub restarts: usize,
    pub seed: u64,
    pub max_iters: Option<usize>,
    pub out: Option<&'a Path>,
    pub report: Option<&'a Path>,
}

pub fn search(args: &SearchArgs) -> CliResult<String> {
    if !(2..=MAX_SEARCH_QUBITS).contains(&args.n) {
        return Err(CliError::Invalid(format!("--n {} outside 2..={MAX_SEARCH_QUBITS}", args.n)));
    }
    let mut config = SearchConfig::new(args.n, args.restarts, args.seed);
    if let Some(m) = args.max_iters {
        config.max_iters = m;
    }
    config.validate()?;
    let threads = thread_count()?;
    let clock = Instant::now();
    let trace = parallel_search(&config, threads)?;
    let elapsed = clock.elapsed();
    let default_out = PathBuf::from(format!("search-n{}-seed{}.state", args.n, args.seed));
    let out = args.out.unwrap_or(&default_out);
    let comment =
        [format!("search n={} restarts={} seed={} max_iters={}", args.n, args.restarts, args.seed, config.max_iters)];
    write_atomic(out, &format_state(&trace.best_state, &comment))?;
    if let Some(path) = args.report {
        write_atomic(path, &render_search(&config, &trace, threads, elapsed)?)?;
    }
    let gap = match known_floor(args.n) {
        Some(f) => format!("gap {}", sci(trace.best_value - f)),
        None => "gap n/a".into(),
    };
    Ok(format!("best {} {gap} restart {} state {}", annotated(trace.best_value), trace.best_restart, out.display()))
}
