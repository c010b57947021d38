//! Projected gradient descent for `π_ME` on the unit sphere of amplitudes.
//!
//! Each balanced purity is quartic in the amplitudes: with `ψ` viewed as a
//! `2^|A| × 2^|Ā|` matrix `M`, `π_A = Tr (MM†)²` and its real gradient is
//! `4 ρ_A M`. The search moves along the tangent part of the averaged
//! gradient, renormalizes, and backtracks until the Armijo condition holds.
//! Directions come from a short limited-memory quasi-Newton history of
//! tangent gradients, falling back to the plain gradient when that history
//! does not give a descent direction.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;
use rand_distr::{Distribution, StandardNormal};

use crate::reductions::{gram, Bipartition};
use crate::state::{random_state, StateVector};
use crate::subsets::Combinations;
use crate::summation::pairwise_mean;
use crate::{Error, Result, NINE_QUBIT_FLOOR};

pub const MAX_SEARCH_QUBITS: usize = 10;
const ARMIJO: f64 = 1e-4;
const MAX_HALVINGS: usize = 40;
const CURVE_STRIDE: usize = 10;
const MEMORY: usize = 12;
const GRAD_FLOOR: f64 = 1e-26;
// relative improvement below which a restart is considered settled
const STALL: f64 = 1e-14;

/// Known minimum of `π_ME` for `n` qubits, when one is established:
/// `2^{-⌊n/2⌋}` where AME states exist (n = 2, 3, 5, 6) and `1/14` for n = 9.
pub fn known_floor(n: usize) -> Option<f64> {
    match n {
        2 | 3 | 5 | 6 => Some(1.0 / (1u64 << (n / 2)) as f64),
        9 => Some(NINE_QUBIT_FLOOR),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchConfig {
    pub n: usize,
    pub restarts: usize,
    pub max_iters: usize,
    pub step_init: f64,
    /// Per-iteration geometric decay of the trial step.
    pub step_decay: f64,
    pub seed: u64,
    /// Early-stop threshold; a restart stops once `π_ME ≤ target + 1e-9`.
    pub target: f64,
}

impl SearchConfig {
    /// Defaults tuned for n ≤ 10, with the target at the known floor when there is one.
    pub fn new(n: usize, restarts: usize, seed: u64) -> Self {
        SearchConfig {
            n,
            restarts,
            max_iters: 3000,
            step_init: 1.0,
            step_decay: 1.0,
            seed,
            target: known_floor(n).unwrap_or(0.0),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(2..=MAX_SEARCH_QUBITS).contains(&self.n) {
            return Err(Error::QubitCount(self.n));
        }
        if self.restarts < 1 {
            return Err(Error::InvalidConfig("restarts must be at least 1"));
        }
        if self.max_iters < 1 {
            return Err(Error::InvalidConfig("max_iters must be at least 1"));
        }
        if !(self.step_decay > 0.0 && self.step_decay <= 1.0) {
            return Err(Error::InvalidConfig("step_decay must lie in (0, 1]"));
        }
        if !self.step_init.is_finite() || self.step_init <= 0.0 {
            return Err(Error::InvalidConfig("step_init must be positive"));
        }
        Ok(())
    }

    /// Seed of restart `r`, decorrelated from neighbouring restarts.
    pub fn restart_seed(&self, r: usize) -> u64 {
        let mut z = self.seed.wrapping_add((r as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

/// `π_ME` and its gradient with the subset index tables built once.
#[derive(Debug, Clone)]
pub struct PiMeObjective {
    n: usize,
    splits: Vec<Bipartition>,
}

impl PiMeObjective {
    pub fn new(n: usize) -> Self {
        let splits = Combinations::new(n, n / 2).map(|s| Bipartition::new(n, s.labels())).collect();
        PiMeObjective { n, splits }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Mean balanced purity of `psi`, read as-is (no normalization).
    pub fn value(&self, psi: &[Complex64]) -> f64 {
        let values: Vec<f64> = self
            .splits
            .iter()
            .map(|bp| {
                let m = bp.matrix(psi);
                let rho = gram(&m, bp.dim_a(), bp.dim_b());
                rho.iter().map(|z| z.norm_sqr()).sum::<f64>()
            })
            .collect();
        pairwise_mean(&values)
    }

    /// Value and real gradient; the directional derivative along `d` is
    /// `Re Σ conj(g_x) d_x`.
    pub fn value_and_gradient(&self, psi: &[Complex64]) -> (f64, Vec<Complex64>) {
        let mut grad = vec![Complex64::new(0.0, 0.0); psi.len()];
        let mut values = Vec::with_capacity(self.splits.len());
        let scale = 4.0 / self.splits.len() as f64;
        for bp in &self.splits {
            let (rows, cols) = (bp.dim_a(), bp.dim_b());
            let m = bp.matrix(psi);
            let rho = gram(&m, rows, cols);
            values.push(rho.iter().map(|z| z.norm_sqr()).sum::<f64>());
            for (i, &oa) in bp.offset_a.iter().enumerate() {
                let rho_row = &rho[i * rows..(i + 1) * rows];
                for (j, &ob) in bp.offset_b.iter().enumerate() {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (r, &w) in rho_row.iter().enumerate() {
                        acc += w * m[r * cols + j];
                    }
                    grad[oa | ob] += acc * scale;
                }
            }
        }
        (pairwise_mean(&values), grad)
    }
}

fn real_dot(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x.re * y.re + x.im * y.im).sum()
}

fn normalize(v: &mut [Complex64]) {
    let norm = libm::sqrt(v.iter().map(|z| z.norm_sqr()).sum::<f64>());
    for z in v.iter_mut() {
        *z /= norm;
    }
}

/// Component of `g` tangent to the sphere at unit `psi`.
fn tangent(psi: &[Complex64], g: &[Complex64]) -> Vec<Complex64> {
    let radial = real_dot(psi, g);
    g.iter().zip(psi).map(|(gx, px)| gx - px * radial).collect()
}

/// Outcome of one restart.
#[derive(Debug, Clone, PartialEq)]
pub struct RestartResult {
    pub restart: usize,
    pub initial_value: f64,
    pub final_state: StateVector,
    pub final_value: f64,
    /// `(iteration, best-so-far)` every few iterations and at the end.
    pub curve: Vec<(usize, f64)>,
    /// Smallest value over every accepted iterate.
    pub min_iterate: f64,
    pub iterations: usize,
    pub reached_target: bool,
}

pub fn run_restart(config: &SearchConfig, objective: &PiMeObjective, restart: usize) -> Result<RestartResult> {
    config.validate()?;
    let start = random_state(config.n, config.restart_seed(restart))?;
    let mut psi = start.amplitudes().to_vec();
    let (mut value, grad) = objective.value_and_gradient(&psi);
    let mut grad = tangent(&psi, &grad);
    let initial_value = value;
    let stop = config.target + 1e-9;
    let mut curve = vec![(0, value)];
    let mut min_iterate = value;
    let mut memory = History::default();
    let mut iterations = 0;
    let mut trial = vec![Complex64::new(0.0, 0.0); psi.len()];
    while iterations < config.max_iters && value > stop {
        if real_dot(&grad, &grad) < GRAD_FLOOR {
            break;
        }
        let mut dir = memory.direction(&grad);
        let mut slope = real_dot(&grad, &dir);
        if slope.is_nan() || slope <= 0.0 {
            memory.clear();
            dir = grad.clone();
            slope = real_dot(&grad, &grad);
        }
        dir = tangent(&psi, &dir);
        let mut step = config.step_init * libm::pow(config.step_decay, iterations as f64);
        let mut accepted = None;
        for _ in 0..MAX_HALVINGS {
            for ((t, p), d) in trial.iter_mut().zip(&psi).zip(&dir) {
                *t = p - d * step;
            }
            normalize(&mut trial);
            let v = objective.value(&trial);
            if v <= value - ARMIJO * step * slope {
                accepted = Some(v);
                break;
            }
            step *= 0.5;
        }
        let Some(v) = accepted else { break };
        let (nv, ng) = objective.value_and_gradient(&trial);
        debug_assert!((nv - v).abs() < 1e-12);
        let ng = tangent(&trial, &ng);
        let s: Vec<Complex64> = trial.iter().zip(&psi).map(|(a, b)| a - b).collect();
        let y: Vec<Complex64> = ng.iter().zip(&grad).map(|(a, b)| a - b).collect();
        memory.push(s, y);
        psi.copy_from_slice(&trial);
        iterations += 1;
        let improvement = value - nv;
        value = nv;
        grad = ng;
        min_iterate = min_iterate.min(value);
        if iterations % CURVE_STRIDE == 0 {
            curve.push((iterations, min_iterate));
        }
        if improvement < STALL * value {
            break;
        }
    }
    if curve.last().map(|c| c.0) != Some(iterations) {
        curve.push((iterations, min_iterate));
    }
    let final_state = StateVector::from_normalized_iterate(config.n, psi);
    Ok(RestartResult {
        restart,
        initial_value,
        final_value: value,
        final_state,
        curve,
        min_iterate,
        iterations,
        reached_target: value <= stop,
    })
}

/// Recent step and gradient-change pairs for the two-loop recursion.
#[derive(Debug, Default)]
struct History {
    pairs: VecDeque<(Vec<Complex64>, Vec<Complex64>, f64)>,
}

impl History {
    fn clear(&mut self) {
        self.pairs.clear();
    }

    fn push(&mut self, s: Vec<Complex64>, y: Vec<Complex64>) {
        let sy = real_dot(&s, &y);
        if sy <= 1e-12 * libm::sqrt(real_dot(&s, &s) * real_dot(&y, &y)) {
            return;
        }
        if self.pairs.len() == MEMORY {
            self.pairs.pop_front();
        }
        self.pairs.push_back((s, y, 1.0 / sy));
    }

    /// Approximate inverse Hessian applied to `g`; plain `g` with no history.
    fn direction(&self, g: &[Complex64]) -> Vec<Complex64> {
        let mut q = g.to_vec();
        let mut alpha = Vec::with_capacity(self.pairs.len());
        for (s, y, rho) in self.pairs.iter().rev() {
            let a = rho * real_dot(s, &q);
            for (qx, yx) in q.iter_mut().zip(y) {
                *qx -= yx * a;
            }
            alpha.push(a);
        }
        if let Some((s, y, _)) = self.pairs.back() {
            let gamma = real_dot(s, y) / real_dot(y, y);
            for qx in q.iter_mut() {
                *qx *= gamma;
            }
        }
        for ((s, y, rho), a) in self.pairs.iter().zip(alpha.iter().rev()) {
            let b = rho * real_dot(y, &q);
            for (qx, sx) in q.iter_mut().zip(s) {
                *qx += sx * (a - b);
            }
        }
        q
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchTrace {
    pub best_state: StateVector,
    pub best_value: f64,
    pub best_restart: usize,
    pub per_restart_curve: Vec<Vec<(usize, f64)>>,
    pub initial_values: Vec<f64>,
    pub final_values: Vec<f64>,
    /// Minimum over every iterate of every restart.
    pub min_iterate: f64,
    pub converged: bool,
}

/// Picks the restart with the lowest final value (earliest on ties).
pub fn merge_restarts(mut results: Vec<RestartResult>) -> Option<SearchTrace> {
    results.sort_by_key(|r| r.restart);
    let best = results.iter().enumerate().fold(None::<usize>, |acc, (i, r)| match acc {
        Some(j) if results[j].final_value <= r.final_value => Some(j),
        _ => Some(i),
    })?;
    let best_r = &results[best];
    Some(SearchTrace {
        best_state: best_r.final_state.clone(),
        best_value: best_r.final_value,
        best_restart: best_r.restart,
        per_restart_curve: results.iter().map(|r| r.curve.clone()).collect(),
        initial_values: results.iter().map(|r| r.initial_value).collect(),
        final_values: results.iter().map(|r| r.final_value).collect(),
        min_iterate: results.iter().map(|r| r.min_iterate).fold(f64::INFINITY, f64::min),
        converged: best_r.reached_target,
    })
}

pub fn minimize_pi_me(config: &SearchConfig) -> Result<SearchTrace> {
    config.validate()?;
    let objective = PiMeObjective::new(config.n);
    let results = (0..config.restarts).map(|r| run_restart(config, &objective, r)).collect::<Result<Vec<_>>>()?;
    merge_restarts(results).ok_or(Error::InvalidConfig("no restarts ran"))
}

/// Directional derivative of `π_ME` along `direction` from the analytic gradient.
pub fn directional_derivative(objective: &PiMeObjective, state: &StateVector, direction: &[Complex64]) -> f64 {
    let (_, g) = objective.value_and_gradient(state.amplitudes());
    real_dot(&g, direction)
}

/// Worst relative mismatch `|analytic − central FD| / (1 + |FD|)` over random
/// unit tangent directions.
pub fn gradient_check(state: &StateVector, directions: usize, h: f64, seed: u64) -> Result<f64> {
    if !(1e-7..=1e-3).contains(&h) {
        return Err(Error::StepOutOfRange(h));
    }
    let objective = PiMeObjective::new(state.n());
    let psi = state.amplitudes();
    let (_, grad) = objective.value_and_gradient(psi);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    let mut plus = vec![Complex64::new(0.0, 0.0); psi.len()];
    let mut minus = plus.clone();
    for _ in 0..directions {
        let mut d: Vec<Complex64> = (0..psi.len())
            .map(|_| {
                let re: f64 = StandardNormal.sample(&mut rng);
                let im: f64 = StandardNormal.sample(&mut rng);
                Complex64::new(re, im)
            })
            .collect();
        // drop the component along ψ (both radial and phase parts)
        let overlap: Complex64 = psi.iter().zip(&d).map(|(p, x)| p.conj() * x).sum();
        for (x, p) in d.iter_mut().zip(psi) {
            *x -= p * overlap;
        }
        normalize(&mut d);
        for ((pl, mi), (p, x)) in plus.iter_mut().zip(minus.iter_mut()).zip(psi.iter().zip(&d)) {
            *pl = p + x * h;
            *mi = p - x * h;
        }
        let fd = (objective.value(&plus) - objective.value(&minus)) / (2.0 * h);
        let analytic = real_dot(&grad, &d);
        worst = worst.max((analytic - fd).abs() / (1.0 + fd.abs()));
    }
    Ok(worst)
}
