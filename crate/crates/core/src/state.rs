//! Pure-state vectors, qubit subsets, and the reference states.
//!
//! Basis index convention: qubit 1 is the most significant bit, so for `n`
//! qubits label `q` lives at bit `n - q` of the index and a ket `|q₁q₂…qₙ⟩`
//! reads directly as the binary index.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;
use rand_distr::{Distribution, StandardNormal};

use crate::summation::pairwise_sum;
use crate::{minimizer_table, Error, Result};

pub const MIN_QUBITS: usize = 2;
pub const MAX_QUBITS: usize = 14;

/// Relative norm drift above which a state counts as "renormalized" rather than rounded.
pub const DRIFT_THRESHOLD: f64 = 1e-9;

/// Tolerance on `Σ|ψ_x|² = 1` for a constructed state.
pub const NORM_TOLERANCE: f64 = 1e-12;
const ROUNDING_SLACK: f64 = 1e-14;

/// A normalized pure state of `n` qubits, stored densely.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    amplitudes: Vec<Complex64>,
    renormalized: bool,
}

impl StateVector {
    /// Builds a state from raw amplitudes, dividing by their norm.
    pub fn new(n: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        check_qubits(n)?;
        let expected = 1usize << n;
        if amplitudes.len() != expected {
            return Err(Error::LengthMismatch { expected, got: amplitudes.len() });
        }
        let norm_sq = norm_sqr(&amplitudes);
        if !norm_sq.is_finite() || norm_sq <= 0.0 {
            return Err(Error::ZeroVector);
        }
        let norm = libm::sqrt(norm_sq);
        let renormalized = libm::fabs(norm - 1.0) > DRIFT_THRESHOLD;
        // already unit up to rounding: keep the given bits so files round-trip
        let amplitudes = if libm::fabs(norm_sq - 1.0) <= ROUNDING_SLACK {
            amplitudes
        } else {
            amplitudes.into_iter().map(|a| a / norm).collect()
        };
        Ok(StateVector { n, amplitudes, renormalized })
    }

    /// Real-amplitude convenience constructor.
    pub fn from_real(n: usize, amplitudes: &[f64]) -> Result<Self> {
        Self::new(n, amplitudes.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    /// Re-normalizes an iterate that is already close to the unit sphere.
    pub(crate) fn from_normalized_iterate(n: usize, mut amplitudes: Vec<Complex64>) -> Self {
        let norm = libm::sqrt(norm_sqr(&amplitudes));
        for a in amplitudes.iter_mut() {
            *a /= norm;
        }
        StateVector { n, amplitudes, renormalized: false }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// True when the input to [`StateVector::new`] was off the unit sphere by more
    /// than [`DRIFT_THRESHOLD`].
    pub fn was_renormalized(&self) -> bool {
        self.renormalized
    }

    pub fn norm_sqr(&self) -> f64 {
        norm_sqr(&self.amplitudes)
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum()
    }

    /// Number of amplitudes with modulus above `eps`.
    pub fn support_size(&self, eps: f64) -> usize {
        self.amplitudes.iter().filter(|a| a.norm() > eps).count()
    }

    /// Bit position (from the least significant end) of qubit `label`.
    pub fn bit_of(&self, label: usize) -> usize {
        self.n - label
    }

    /// Returns a copy with the sign of one amplitude flipped.
    pub fn with_flipped_sign(&self, index: usize) -> Self {
        let mut out = self.clone();
        out.amplitudes[index] = -out.amplitudes[index];
        out
    }
}

fn norm_sqr(amplitudes: &[Complex64]) -> f64 {
    let sq: Vec<f64> = amplitudes.iter().map(|a| a.norm_sqr()).collect();
    pairwise_sum(&sq)
}

fn check_qubits(n: usize) -> Result<()> {
    if (MIN_QUBITS..=MAX_QUBITS).contains(&n) {
        Ok(())
    } else {
        Err(Error::QubitCount(n))
    }
}

/// `make_state`: normalize an arbitrary nonzero amplitude vector.
pub fn make_state(n: usize, amplitudes: Vec<Complex64>) -> Result<StateVector> {
    StateVector::new(n, amplitudes)
}

/// `|0…0⟩`.
pub fn product_state(n: usize) -> Result<StateVector> {
    check_qubits(n)?;
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
    amps[0] = Complex64::new(1.0, 0.0);
    StateVector::new(n, amps)
}

/// `(|0…0⟩ + |1…1⟩)/√2`.
pub fn ghz_state(n: usize) -> Result<StateVector> {
    check_qubits(n)?;
    let dim = 1 << n;
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    let h = core::f64::consts::FRAC_1_SQRT_2;
    amps[0] = Complex64::new(h, 0.0);
    amps[dim - 1] = Complex64::new(h, 0.0);
    StateVector::new(n, amps)
}

/// The explicit nine-qubit state with `π_ME = 1/14`: 128 amplitudes `±1/(8√2)`
/// laid out as four 4-qubit Bell-pair factors on qubits 1-4, each tensored
/// with an 8-term factor on qubits 5-9.
pub fn nine_qubit_minimizer() -> StateVector {
    let amp = 1.0 / (8.0 * core::f64::consts::SQRT_2);
    let mut amps = vec![Complex64::new(0.0, 0.0); 512];
    for &(index, sign) in minimizer_table::MINIMIZER_TABLE.iter() {
        amps[index as usize] = Complex64::new(f64::from(sign) * amp, 0.0);
    }
    StateVector { n: 9, amplitudes: amps, renormalized: false }
}

/// Haar-random state: independent standard complex Gaussians, normalized.
/// Deterministic for a fixed `(n, seed)`.
pub fn random_state(n: usize, seed: u64) -> Result<StateVector> {
    check_qubits(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let amps = (0..1usize << n)
        .map(|_| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            Complex64::new(re, im)
        })
        .collect();
    StateVector::new(n, amps)
}

/// An ordered set of distinct qubit labels in `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QubitSubset {
    labels: Vec<usize>,
}

impl QubitSubset {
    /// Validates and sorts the labels.
    pub fn new(labels: &[usize], n: usize) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvalidSubset("empty subset"));
        }
        let mut sorted = labels.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidSubset("duplicate label"));
        }
        if let Some(&bad) = sorted.iter().find(|&&l| l == 0 || l > n) {
            return Err(Error::LabelOutOfRange { label: bad, n });
        }
        Ok(QubitSubset { labels: sorted })
    }

    pub(crate) fn from_sorted_unchecked(labels: Vec<usize>) -> Self {
        QubitSubset { labels }
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn contains(&self, label: usize) -> bool {
        self.labels.binary_search(&label).is_ok()
    }

    /// Labels of `1..=n` not in the subset, ascending.
    pub fn complement(&self, n: usize) -> Vec<usize> {
        (1..=n).filter(|&l| !self.contains(l)).collect()
    }

    /// Bit mask of the subset under the qubit-1-is-MSB convention.
    pub fn mask(&self, n: usize) -> usize {
        self.labels.iter().fold(0, |m, &l| m | 1 << (n - l))
    }

    /// Ensures every label is `≤ n`.
    pub fn check_within(&self, n: usize) -> Result<()> {
        match self.labels.iter().find(|&&l| l > n) {
            Some(&label) => Err(Error::LabelOutOfRange { label, n }),
            None => Ok(()),
        }
    }
}

/// Concatenated labels (`1278`); labels above 9 are separated by `-`.
impl fmt::Display for QubitSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.labels.iter().any(|&l| l > 9);
        for (i, l) in self.labels.iter().enumerate() {
            if wide && i > 0 {
                f.write_str("-")?;
            }
            write!(f, "{}", l)?;
        }
        Ok(())
    }
}
