//! Acceptance criteria 1-7, one PASS/FAIL line each; exits nonzero on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use mmes::numfmt::{annotated, sci};
use mmes::search::{parallel_search, thread_count};
use mmes::verify::{identity_checks, identity_residuals, reference_checks, reference_state, reference_suite, Check};
use mmes_core::optimizer::{gradient_check, SearchConfig, SearchTrace};
use mmes_core::state::random_state;
use mmes_core::uniformity::{classify_marginals, DEFAULT_BUCKET_TOL};
use mmes_core::{average_balanced_purity, StateVector, NINE_QUBIT_FLOOR};

struct Outcome {
    passed: bool,
    summary: String,
    notes: Vec<String>,
}

impl Outcome {
    fn from_checks(checks: &[Check], extra: Vec<String>) -> Self {
        let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
        let summary = if failed.is_empty() {
            format!("{}/{} checks", checks.len(), checks.len())
        } else {
            format!("failing: {}", failed.join(", "))
        };
        let mut notes: Vec<String> = checks.iter().map(Check::line).collect();
        notes.extend(extra);
        Outcome { passed: failed.is_empty(), summary, notes }
    }
}

fn timed(budget: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let clock = Instant::now();
    let mut out = f();
    let spent = clock.elapsed();
    out.summary = format!("{} [{:.1} s, budget {} s]", out.summary, spent.as_secs_f64(), budget.as_secs());
    if spent > budget {
        out.passed = false;
        out.summary.push_str(" over budget");
    }
    out
}

fn reference_values() -> Outcome {
    let checks = reference_suite(None, 1).expect("reference suite runs");
    let wanted = ["product9-pi-me", "ghz9-pi-me", "product9-inversion-sum", "ghz9-inversion-sum"];
    let checks: Vec<Check> = checks.into_iter().filter(|c| wanted.contains(&c.name)).collect();
    Outcome::from_checks(&checks, vec![])
}

// 128 amplitudes of equal modulus, four coset blocks on qubits 1-4, each a
// product with a factor on qubits 5-9.
fn table_structure(state: &StateVector) -> Check {
    let amps = state.amplitudes();
    let unit = 1.0 / (8.0 * 2f64.sqrt());
    let nonzero: Vec<usize> = (0..512).filter(|&i| amps[i].norm() > 0.0).collect();
    let moduli_ok = nonzero.iter().all(|&i| (amps[i].norm() - unit).abs() < 1e-15 && amps[i].im == 0.0);
    let coset = |x: usize| {
        let (a, b) = (x >> 2, x & 3);
        a ^ b
    };
    let mut product_ok = true;
    for c in 0..4 {
        let rows: Vec<usize> = (0..16).filter(|&h| coset(h) == c).collect();
        let at = |h: usize, t: usize| amps[(h << 5) | t].re;
        let pivot = (0..32).find(|&t| at(rows[0], t) != 0.0);
        let Some(t0) = pivot else {
            product_ok = false;
            continue;
        };
        for &h in &rows {
            for t in 0..32 {
                product_ok &= (at(h, t) * at(rows[0], t0) - at(h, t0) * at(rows[0], t)).abs() < 1e-15;
            }
        }
    }
    Check {
        name: "ref9-table-structure",
        passed: nonzero.len() == 128 && moduli_ok && product_ok,
        detail: format!("{} nonzero amplitudes, equal moduli {moduli_ok}, block products {product_ok}", nonzero.len()),
    }
}

fn reference_state_checks() -> Outcome {
    let state = reference_state(None);
    let mut checks = vec![table_structure(&state)];
    checks.extend(reference_checks(&state).expect("reference checks run"));
    let hist = classify_marginals(&state, 4, DEFAULT_BUCKET_TOL).expect("nine qubits");
    let extra = vec![format!(
        "best-found reconstruction: four-qubit purities {}; pi_me {}",
        mmes::report::histogram_line(&hist),
        annotated(average_balanced_purity(&state))
    )];
    Outcome::from_checks(&checks, extra)
}

fn identities() -> Outcome {
    let r = identity_residuals(100).expect("identity residuals");
    Outcome::from_checks(&identity_checks(&r, 100), vec![])
}

fn lower_bound(nine: &SearchTrace) -> Outcome {
    let min_random = (0..1000u64)
        .map(|i| average_balanced_purity(&random_state(9, 10_000 + i).unwrap()))
        .fold(f64::INFINITY, f64::min);
    let checks = vec![
        Check {
            name: "floor-random-states",
            passed: min_random >= NINE_QUBIT_FLOOR - 1e-10,
            detail: format!("smallest pi_me over 1000 states {}", annotated(min_random)),
        },
        Check {
            name: "floor-search-iterates",
            passed: nine.min_iterate >= NINE_QUBIT_FLOOR - 1e-10,
            detail: format!("smallest n=9 iterate {}", annotated(nine.min_iterate)),
        },
    ];
    Outcome::from_checks(&checks, vec![])
}

fn search(n: usize, restarts: usize, seed: u64, threads: usize) -> (SearchTrace, Duration) {
    let clock = Instant::now();
    let trace = parallel_search(&SearchConfig::new(n, restarts, seed), threads).expect("valid search");
    (trace, clock.elapsed())
}

fn optimizer(runs: &[(usize, f64, &SearchTrace, Duration)]) -> Outcome {
    let budget = Duration::from_secs(300);
    let mut checks = Vec::new();
    for &(n, floor, trace, spent) in runs {
        let reached = trace.best_value <= floor + 1e-3;
        let above = trace.min_iterate >= floor - 1e-9;
        checks.push(Check {
            name: match n {
                5 => "search-n5",
                6 => "search-n6",
                _ => "search-n9",
            },
            passed: reached && above && spent <= budget,
            detail: format!(
                "best {} (target {} + 1e-3), smallest iterate {}, {:.1} s",
                annotated(trace.best_value),
                annotated(floor),
                annotated(trace.min_iterate),
                spent.as_secs_f64()
            ),
        });
    }
    let nine = runs.iter().find(|r| r.0 == 9).map(|r| r.2);
    let extra = nine
        .map(|t| {
            vec![format!(
                "n=9 final values per restart: {}",
                t.final_values.iter().map(|v| format!("{v:.6}")).collect::<Vec<_>>().join(" ")
            )]
        })
        .unwrap_or_default();
    Outcome::from_checks(&checks, extra)
}

fn gradients() -> Outcome {
    let mut checks = Vec::new();
    for n in [6, 9] {
        let worst = (0..10u64)
            .map(|s| gradient_check(&random_state(n, 500 + s).unwrap(), 8, 1e-5, s).unwrap())
            .fold(0.0, f64::max);
        checks.push(Check {
            name: if n == 6 { "gradient-n6" } else { "gradient-n9" },
            passed: worst <= 1e-5,
            detail: format!("worst relative error {} over 10 states", sci(worst)),
        });
    }
    Outcome::from_checks(&checks, vec![])
}

fn negative_control() -> Outcome {
    let base = reference_state(None);
    let base_hist = classify_marginals(&base, 4, DEFAULT_BUCKET_TOL).unwrap();
    let support: Vec<usize> = (0..512).filter(|&i| base.amplitudes()[i].norm() > 0.0).collect();
    let mut undetected = Vec::new();
    for &i in &support {
        let flipped = reference_state(Some(i));
        let hist = classify_marginals(&flipped, 4, DEFAULT_BUCKET_TOL).unwrap();
        let same_as_base = hist.len() == base_hist.len()
            && hist.iter().zip(&base_hist).all(|(a, b)| (a.0 - b.0).abs() <= 1e-9 && a.1 == b.1);
        let spectrum_fails = !reference_checks(&flipped).unwrap()[0].passed;
        if same_as_base || !spectrum_fails {
            undetected.push(i);
        }
    }
    let checks = vec![Check {
        name: "single-sign-flips",
        passed: undetected.is_empty(),
        detail: format!(
            "{} of {} flips change the four-qubit spectrum",
            support.len() - undetected.len(),
            support.len()
        ),
    }];
    Outcome::from_checks(&checks, vec![])
}

fn main() -> ExitCode {
    let threads = thread_count().unwrap_or(1);
    let mut results: Vec<(usize, &str, Outcome)> = Vec::new();
    results.push((1, "reference values", timed(Duration::from_secs(10), reference_values)));
    results.push((2, "nine-qubit state", timed(Duration::from_secs(30), reference_state_checks)));
    results.push((3, "identities", timed(Duration::from_secs(120), identities)));

    let (t5, d5) = search(5, 10, 1, threads);
    let (t6, d6) = search(6, 10, 1, threads);
    let (t9, d9) = search(9, 20, 7, threads);
    results.push((4, "lower bound", timed(Duration::from_secs(300), || lower_bound(&t9))));
    let runs = [(5, 0.25, &t5, d5), (6, 0.125, &t6, d6), (9, NINE_QUBIT_FLOOR, &t9, d9)];
    results.push((5, "optimizer", optimizer(&runs)));
    results.push((6, "gradient check", timed(Duration::from_secs(300), gradients)));
    results.push((7, "negative control", timed(Duration::from_secs(60), negative_control)));

    for (k, name, out) in &results {
        println!("criterion {k} {} {name}: {}", if out.passed { "PASS" } else { "FAIL" }, out.summary);
    }
    for (k, _, out) in results.iter().filter(|r| !r.2.passed) {
        println!();
        println!("criterion {k} details:");
        for note in &out.notes {
            println!("  {note}");
        }
    }
    if results.iter().all(|r| r.2.passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
