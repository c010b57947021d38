//! Named pass/fail checks replaying reference values and identities.

use mmes_core::optimizer::{known_floor, SearchConfig};
use mmes_core::pauli::{inversion_identity_residual_from, inversion_overlaps, pi_me_lower_bound_from};
use mmes_core::state::{ghz_state, nine_qubit_minimizer, product_state, random_state};
use mmes_core::subsets::Combinations;
use mmes_core::uniformity::{histogram, DEFAULT_BUCKET_TOL, DEFAULT_TOL};
use mmes_core::{
    aggregate_invariants, average_balanced_purity, is_k_uniform, pi_me_from_invariants, purity, purity_spectrum,
    QubitSubset, StateVector, NINE_QUBIT_FLOOR,
};

use crate::error::CliResult;
use crate::numfmt::{annotated, sci};
use crate::report::histogram_line;
use crate::search::parallel_search;

pub const VALUE_TOL: f64 = 1e-9;

/// Four-qubit subsets listed with purity `1/8` for the nine-qubit reference state.
pub const EIGHTH_SUBSETS: [&str; 15] = [
    "1278", "1358", "1367", "1379", "1457", "1679", "2368", "2458", "2479", "2489", "2689", "3456", "3478", "3679",
    "4689",
];

/// Expected four-qubit purity histogram of the nine-qubit reference state.
pub const REFERENCE_HISTOGRAM: [(f64, usize); 3] = [(1.0 / 16.0, 110), (1.0 / 8.0, 15), (1.0 / 4.0, 1)];

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, passed: bool, detail: String) -> Self {
        Check { name, passed, detail }
    }

    pub fn line(&self) -> String {
        format!("{} {}: {}", if self.passed { "PASS" } else { "FAIL" }, self.name, self.detail)
    }
}

pub fn first_failure(checks: &[Check]) -> Option<&Check> {
    checks.iter().find(|c| !c.passed)
}

/// The built-in nine-qubit state, optionally with one amplitude negated.
pub fn reference_state(flip: Option<usize>) -> StateVector {
    let s = nine_qubit_minimizer();
    match flip {
        Some(i) => s.with_flipped_sign(i),
        None => s,
    }
}

fn three_forms(state: &StateVector) -> CliResult<[f64; 3]> {
    let inv = aggregate_invariants(state)?;
    let overlaps = inversion_overlaps(state);
    Ok([average_balanced_purity(state), pi_me_from_invariants(&inv)?, pi_me_lower_bound_from(&inv, &overlaps)])
}

fn forms_check(name: &'static str, state: &StateVector, target: f64) -> CliResult<Check> {
    let v = three_forms(state)?;
    let worst = v.iter().map(|x| (x - target).abs()).fold(0.0, f64::max);
    let detail = format!(
        "direct {}, invariants {}, bound form {} (target {})",
        annotated(v[0]),
        annotated(v[1]),
        annotated(v[2]),
        annotated(target)
    );
    Ok(Check::new(name, worst <= VALUE_TOL, detail))
}

fn inversion_check(name: &'static str, state: &StateVector, target: f64) -> Check {
    let sum: f64 = inversion_overlaps(state).iter().sum();
    Check::new(
        name,
        (sum - target).abs() <= VALUE_TOL,
        format!("sum {} (target {})", annotated(sum), annotated(target)),
    )
}

fn close_counts(found: &[(f64, usize)], expected: &[(f64, usize)]) -> bool {
    found.len() == expected.len()
        && found.iter().zip(expected).all(|((v, c), (w, d))| (v - w).abs() <= VALUE_TOL && c == d)
}

/// Purity-spectrum checks on a nine-qubit candidate for the reference state.
pub fn reference_checks(state: &StateVector) -> CliResult<Vec<Check>> {
    let spectrum = purity_spectrum(state, 4)?;
    let hist = histogram(&spectrum.values(), DEFAULT_BUCKET_TOL);
    let mut checks = vec![Check::new(
        "ref9-purity-spectrum",
        close_counts(&hist, &REFERENCE_HISTOGRAM),
        format!("found {}; expected {}", histogram_line(&hist), histogram_line(&REFERENCE_HISTOGRAM)),
    )];
    let near = |target: f64| -> Vec<String> {
        spectrum.entries.iter().filter(|(_, p)| (p - target).abs() <= VALUE_TOL).map(|(s, _)| s.to_string()).collect()
    };
    let quarters = near(0.25);
    checks.push(Check::new(
        "ref9-quarter-subset",
        quarters == ["1234"],
        format!("purity 1/4 on [{}]; expected [1234]", quarters.join(" ")),
    ));
    let eighths = near(0.125);
    let matched = eighths.iter().filter(|s| EIGHTH_SUBSETS.contains(&s.as_str())).count();
    checks.push(Check::new(
        "ref9-eighth-subsets",
        matched == EIGHTH_SUBSETS.len() && eighths.len() == EIGHTH_SUBSETS.len(),
        format!("{} subsets at 1/8, {matched} of the 15 listed ones among them", eighths.len()),
    ));
    checks.push(forms_check("ref9-pi-me", state, NINE_QUBIT_FLOOR)?);
    for (k, name) in [(1, "ref9-1-uniform"), (2, "ref9-2-uniform"), (3, "ref9-3-uniform")] {
        let v = is_k_uniform(state, k, DEFAULT_TOL)?;
        checks.push(Check::new(
            name,
            v.uniform,
            format!("worst deviation {} on {}", sci(v.worst_deviation), v.worst_subset),
        ));
    }
    let v4 = is_k_uniform(state, 4, DEFAULT_TOL)?;
    checks.push(Check::new(
        "ref9-not-4-uniform",
        !v4.uniform,
        format!("worst deviation {} on {}", sci(v4.worst_deviation), v4.worst_subset),
    ));
    Ok(checks)
}

/// Reference values for product, GHZ, the nine-qubit state and small AME searches.
pub fn reference_suite(flip: Option<usize>, threads: usize) -> CliResult<Vec<Check>> {
    let product = product_state(9)?;
    let ghz = ghz_state(9)?;
    let mut checks = vec![
        forms_check("product9-pi-me", &product, 1.0)?,
        forms_check("ghz9-pi-me", &ghz, 0.5)?,
        inversion_check("product9-inversion-sum", &product, 0.0),
        inversion_check("ghz9-inversion-sum", &ghz, 4.5),
    ];
    checks.extend(reference_checks(&reference_state(flip))?);
    for (n, name) in [(5, "search-n5-floor"), (6, "search-n6-floor")] {
        let floor = known_floor(n).expect("floor known for 5 and 6");
        let trace = parallel_search(&SearchConfig::new(n, 5, 1), threads)?;
        checks.push(Check::new(
            name,
            trace.best_value <= floor + 1e-3 && trace.min_iterate >= floor - VALUE_TOL,
            format!("best {} (floor {})", annotated(trace.best_value), annotated(floor)),
        ));
    }
    Ok(checks)
}

/// Worst residuals of the identity checks over `seeds` random nine-qubit states.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct IdentityResiduals {
    pub invariant_form: f64,
    pub bound_form: f64,
    pub inversion: f64,
    pub subset_purity: f64,
    pub min_pi_me: f64,
}

pub const SUBSET_PURITY_STATES: usize = 20;

pub fn identity_residuals(seeds: usize) -> CliResult<IdentityResiduals> {
    let mut r = IdentityResiduals { min_pi_me: f64::INFINITY, ..Default::default() };
    for seed in 0..seeds {
        let state = random_state(9, seed as u64)?;
        let inv = aggregate_invariants(&state)?;
        let overlaps = inversion_overlaps(&state);
        let direct = average_balanced_purity(&state);
        r.invariant_form = r.invariant_form.max((direct - pi_me_from_invariants(&inv)?).abs());
        r.bound_form = r.bound_form.max((direct - pi_me_lower_bound_from(&inv, &overlaps)).abs());
        r.inversion = r.inversion.max(inversion_identity_residual_from(&inv, &overlaps));
        r.min_pi_me = r.min_pi_me.min(direct);
        if seed < SUBSET_PURITY_STATES {
            for s in Combinations::new(9, 4) {
                let rebuilt = four_subset_purity_from(&inv, &s);
                r.subset_purity = r.subset_purity.max((rebuilt - purity(&state, &s)?).abs());
            }
        }
    }
    Ok(r)
}

// Same sum as `purity_from_invariants`, reusing the precomputed invariants.
fn four_subset_purity_from(inv: &mmes_core::InvariantSummary, s: &QubitSubset) -> f64 {
    let labels = s.labels();
    let mut total = 1.0;
    for mask in 1u32..16 {
        let sub: Vec<usize> = (0..4).filter(|b| mask & (1 << b) != 0).map(|b| labels[b]).collect();
        let sub = QubitSubset::new(&sub, 9).expect("labels come from a valid subset");
        total += inv.get(&sub).expect("all supports up to size 4 are present");
    }
    total / 16.0
}

pub fn identities_suite(seeds: usize) -> CliResult<Vec<Check>> {
    Ok(identity_checks(&identity_residuals(seeds)?, seeds))
}

impl IdentityResiduals {
    pub fn worst(&self) -> f64 {
        self.invariant_form.max(self.bound_form).max(self.inversion).max(self.subset_purity)
    }
}

pub fn identity_checks(r: &IdentityResiduals, seeds: usize) -> Vec<Check> {
    let seeds_note = format!("over {seeds} seeded states");
    vec![
        Check::new(
            "identity-invariant-form",
            r.invariant_form <= 1e-10,
            format!("max residual {} {seeds_note}", sci(r.invariant_form)),
        ),
        Check::new(
            "identity-bound-form",
            r.bound_form <= 1e-10,
            format!("max residual {} {seeds_note}", sci(r.bound_form)),
        ),
        Check::new(
            "identity-inversion",
            r.inversion <= 1e-9,
            format!("max residual {} {seeds_note}", sci(r.inversion)),
        ),
        Check::new(
            "identity-subset-purity",
            r.subset_purity <= 1e-10,
            format!(
                "max residual {} over 126 subsets of {} states",
                sci(r.subset_purity),
                seeds.min(SUBSET_PURITY_STATES)
            ),
        ),
        Check::new(
            "identity-floor",
            r.min_pi_me >= NINE_QUBIT_FLOOR - 1e-10,
            format!("smallest pi_me {} {seeds_note}", annotated(r.min_pi_me)),
        ),
    ]
}
