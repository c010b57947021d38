//! Analysis and search reports as `key = value` text with fixed section order.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use mmes_core::optimizer::{known_floor, SearchConfig, SearchTrace};
use mmes_core::pauli::{inversion_identity_residual_from, inversion_overlaps, pi_me_lower_bound_from};
use mmes_core::uniformity::DEFAULT_TOL;
use mmes_core::{
    aggregate_invariants, is_k_uniform, mmes_verdict, pi_me_from_invariants, purity_spectrum, InvariantSummary,
    MmesVerdict, PuritySpectrum, StateVector, UniformityVerdict,
};

use crate::error::CliResult;
use crate::numfmt::{annotated, sci, sig15};

#[derive(Debug, Clone)]
pub struct NineQubitForms {
    pub pi_me_invariants: f64,
    pub pi_me_bound_form: f64,
    pub inversion_overlaps: Vec<f64>,
    pub inversion_residual: f64,
}

#[derive(Debug, Clone)]
pub struct AnalysisReport {
    pub descriptor: String,
    pub n: usize,
    pub spectra: Vec<PuritySpectrum>,
    pub invariants: InvariantSummary,
    pub pi_me_direct: f64,
    pub nine: Option<NineQubitForms>,
    pub uniformity: Vec<UniformityVerdict>,
    pub mmes: Option<MmesVerdict>,
    pub elapsed: Duration,
}

impl AnalysisReport {
    pub fn build(descriptor: &str, state: &StateVector, ks: &[usize]) -> CliResult<Self> {
        let clock = Instant::now();
        let n = state.n();
        let spectra = ks.iter().map(|&k| purity_spectrum(state, k)).collect::<Result<Vec<_>, _>>()?;
        let balanced = purity_spectrum(state, n / 2)?;
        let invariants = aggregate_invariants(state)?;
        let nine = if n == 9 {
            let overlaps = inversion_overlaps(state);
            Some(NineQubitForms {
                pi_me_invariants: pi_me_from_invariants(&invariants)?,
                pi_me_bound_form: pi_me_lower_bound_from(&invariants, &overlaps),
                inversion_residual: inversion_identity_residual_from(&invariants, &overlaps),
                inversion_overlaps: overlaps,
            })
        } else {
            None
        };
        let uniformity = ks
            .iter()
            .filter(|&&k| k <= n / 2)
            .map(|&k| is_k_uniform(state, k, DEFAULT_TOL))
            .collect::<Result<Vec<_>, _>>()?;
        let mmes = if n == 9 { Some(mmes_verdict(state, DEFAULT_TOL)?) } else { None };
        Ok(AnalysisReport {
            descriptor: descriptor.to_string(),
            n,
            spectra,
            invariants,
            pi_me_direct: balanced.mean(),
            nine,
            uniformity,
            mmes,
            elapsed: clock.elapsed(),
        })
    }

    /// Largest pairwise gap among the available `π_ME` forms.
    pub fn pi_me_spread(&self) -> f64 {
        match &self.nine {
            Some(f) => {
                let v = [self.pi_me_direct, f.pi_me_invariants, f.pi_me_bound_form];
                let hi = v.iter().cloned().fold(f64::MIN, f64::max);
                let lo = v.iter().cloned().fold(f64::MAX, f64::min);
                hi - lo
            }
            None => 0.0,
        }
    }

    pub fn render(&self) -> String {
        let mut o = String::new();
        let _ = writeln!(o, "[state]");
        let _ = writeln!(o, "descriptor = {}", self.descriptor);
        let _ = writeln!(o, "n = {}", self.n);
        let _ = writeln!(o);
        let _ = writeln!(o, "[pi_me]");
        let _ = writeln!(o, "direct = {}", annotated(self.pi_me_direct));
        if let Some(f) = &self.nine {
            let _ = writeln!(o, "invariants = {}", annotated(f.pi_me_invariants));
            let _ = writeln!(o, "bound_form = {}", annotated(f.pi_me_bound_form));
            let _ = writeln!(o, "spread = {}", sci(self.pi_me_spread()));
            let sum: f64 = f.inversion_overlaps.iter().sum();
            let _ = writeln!(o, "inversion_overlap_sum = {}", annotated(sum));
            let _ = writeln!(o, "inversion_residual = {}", sci(f.inversion_residual));
        }
        let _ = writeln!(o);
        let _ = writeln!(o, "[invariants]");
        for m in 1..=self.n.min(4) {
            let _ = writeln!(o, "C{m} = {}", annotated(self.invariants.c(m)));
        }
        let _ = writeln!(o, "min_F = {}", sci(self.invariants.min_invariant()));
        if let Some(f) = &self.nine {
            for (m, v) in f.inversion_overlaps.iter().enumerate() {
                let _ = writeln!(o, "inversion_overlap_{} = {}", m + 1, annotated(*v));
            }
        }
        for v in &self.uniformity {
            let _ = writeln!(o);
            let _ = writeln!(o, "[uniformity k={}]", v.k);
            let _ = writeln!(o, "uniform = {}", v.uniform);
            let _ = writeln!(o, "worst_subset = {}", v.worst_subset);
            let _ = writeln!(o, "worst_deviation = {}", sci(v.worst_deviation));
            let _ = writeln!(o, "worst_matrix_deviation = {}", sci(v.worst_matrix_deviation));
            let _ = writeln!(o, "tolerance = {}", sci(v.tolerance));
        }
        if let Some(m) = &self.mmes {
            let _ = writeln!(o);
            let _ = writeln!(o, "[mmes]");
            let _ = writeln!(o, "pi_me = {}", annotated(m.pi_me));
            let _ = writeln!(o, "gap_to_floor = {}", sci(m.gap_to_bound));
            let _ = writeln!(o, "minimizer = {}", m.is_mmes);
            let _ = writeln!(o, "four_uniform = {}", m.is_ame);
            let _ = writeln!(o, "histogram = {}", histogram_line(&m.spectrum_histogram));
        }
        for s in &self.spectra {
            let _ = writeln!(o);
            let _ = writeln!(o, "[purities k={}]", s.k);
            let _ = writeln!(o, "mean = {}", annotated(s.mean()));
            let hist = mmes_core::uniformity::histogram(&s.values(), mmes_core::uniformity::DEFAULT_BUCKET_TOL);
            let _ = writeln!(o, "histogram = {}", histogram_line(&hist));
            for (subset, p) in &s.entries {
                let _ = writeln!(o, "{subset} = {}", annotated(*p));
            }
        }
        let _ = writeln!(o);
        let _ = writeln!(o, "[timing]");
        let _ = writeln!(o, "elapsed_ms = {}", self.elapsed.as_millis());
        o
    }
}

pub fn histogram_line(hist: &[(f64, usize)]) -> String {
    hist.iter().map(|(v, c)| format!("{} x {c}", annotated(*v))).collect::<Vec<_>>().join("; ")
}

/// CSV rows `subset,purity` with comma-free subset labels.
pub fn spectrum_csv(spectrum: &PuritySpectrum) -> String {
    let mut o = String::from("subset,purity\n");
    for (s, p) in &spectrum.entries {
        let _ = writeln!(o, "{s},{p:?}");
    }
    o
}

pub fn render_search(
    config: &SearchConfig,
    trace: &SearchTrace,
    threads: usize,
    elapsed: Duration,
) -> CliResult<String> {
    let mut o = String::new();
    let _ = writeln!(o, "[search]");
    let _ = writeln!(o, "n = {}", config.n);
    let _ = writeln!(o, "restarts = {}", config.restarts);
    let _ = writeln!(o, "seed = {}", config.seed);
    let _ = writeln!(o, "max_iters = {}", config.max_iters);
    let _ = writeln!(o, "step_init = {}", config.step_init);
    let _ = writeln!(o, "step_decay = {}", config.step_decay);
    let _ = writeln!(o, "target = {}", annotated(config.target));
    let _ = writeln!(o, "threads = {threads}");
    let _ = writeln!(o);
    let _ = writeln!(o, "[result]");
    let _ = writeln!(o, "best_value = {}", annotated(trace.best_value));
    match known_floor(config.n) {
        Some(f) => {
            let _ = writeln!(o, "known_floor = {}", annotated(f));
            let _ = writeln!(o, "gap = {}", sci(trace.best_value - f));
        }
        None => {
            let _ = writeln!(o, "known_floor = none");
        }
    }
    let _ = writeln!(o, "best_restart = {}", trace.best_restart);
    let _ = writeln!(o, "converged = {}", trace.converged);
    let _ = writeln!(o, "min_iterate = {}", sig15(trace.min_iterate));
    let inv = aggregate_invariants(&trace.best_state)?;
    for m in 1..=config.n.min(4) {
        let _ = writeln!(o, "best_C{m} = {}", sig15(inv.c(m)));
    }
    let _ = writeln!(o);
    let _ = writeln!(o, "[restarts]");
    for (r, (a, b)) in trace.initial_values.iter().zip(&trace.final_values).enumerate() {
        let last = trace.per_restart_curve[r].last().map_or(0, |c| c.0);
        let _ = writeln!(o, "{r} = {} -> {} after {last} iterations", sig15(*a), sig15(*b));
    }
    let _ = writeln!(o);
    let _ = writeln!(o, "[curve restart={}]", trace.best_restart);
    for (it, v) in &trace.per_restart_curve[trace.best_restart] {
        let _ = writeln!(o, "{it} = {}", sig15(*v));
    }
    let _ = writeln!(o);
    let _ = writeln!(o, "[timing]");
    let _ = writeln!(o, "elapsed_ms = {}", elapsed.as_millis());
    Ok(o)
}
