//! Text state files: a `nqubits=<n>` header, then one `<bits> <re> <im>` line
//! per nonzero amplitude with qubit 1 as the leftmost bit. Lines starting
//! with `#` and blank lines are ignored.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use mmes_core::state::{MAX_QUBITS, MIN_QUBITS};
use mmes_core::{Complex64, StateVector};

use crate::error::{CliError, CliResult};

pub fn parse_state(text: &str) -> CliResult<StateVector> {
    let malformed = |line: usize, reason: String| CliError::Malformed { line, reason };
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or_else(|| malformed(1, "missing nqubits header".into()))?;
    let n: usize = header
        .strip_prefix("nqubits=")
        .and_then(|v| v.trim().parse().ok())
        .ok_or_else(|| malformed(hline, format!("expected `nqubits=<n>`, found `{header}`")))?;
    if !(MIN_QUBITS..=MAX_QUBITS).contains(&n) {
        return Err(malformed(hline, format!("nqubits={n} outside {MIN_QUBITS}..={MAX_QUBITS}")));
    }
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
    let mut seen = vec![false; 1 << n];
    for (ln, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [bits, re, im] = fields[..] else {
            return Err(malformed(ln, format!("expected 3 fields, found {}", fields.len())));
        };
        if bits.len() != n || !bits.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(malformed(ln, format!("basis index `{bits}` is not {n} binary digits")));
        }
        let index = usize::from_str_radix(bits, 2).expect("validated binary string");
        let num = |s: &str| s.parse::<f64>().ok().filter(|v| v.is_finite());
        let (Some(re), Some(im)) = (num(re), num(im)) else {
            return Err(malformed(ln, format!("amplitude `{re} {im}` is not a pair of finite reals")));
        };
        if std::mem::replace(&mut seen[index], true) {
            return Err(malformed(ln, format!("basis index {bits} listed twice")));
        }
        amps[index] = Complex64::new(re, im);
    }
    StateVector::new(n, amps).map_err(|e| malformed(hline, e.to_string()))
}

pub fn read_state(path: &Path) -> CliResult<StateVector> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Unreadable { path: path.to_path_buf(), source })?;
    parse_state(&text)
}

/// Serializes nonzero amplitudes; `comment` lines go first, prefixed with `#`.
pub fn format_state(state: &StateVector, comment: &[String]) -> String {
    let n = state.n();
    let mut out = String::new();
    for c in comment {
        let _ = writeln!(out, "# {c}");
    }
    let _ = writeln!(out, "nqubits={n}");
    for (i, a) in state.amplitudes().iter().enumerate() {
        if a.re != 0.0 || a.im != 0.0 {
            let _ = writeln!(out, "{i:0n$b} {:?} {:?}", a.re, a.im);
        }
    }
    out
}
