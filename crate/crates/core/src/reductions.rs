//! Marginals, subsystem purities and the averaged balanced purity `π_ME`.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::state::{QubitSubset, StateVector};
use crate::subsets::Combinations;
use crate::summation::{pairwise_mean, pairwise_sum};
use crate::{Error, Result};

/// Index bookkeeping for viewing `ψ` as a `2^|A| × 2^|Ā|` matrix `M[a, b]`.
///
/// `a` enumerates subset bits with the lowest label most significant, `b`
/// does the same for the complement, so `x = offset_a[a] | offset_b[b]`.
#[derive(Debug, Clone)]
pub(crate) struct Bipartition {
    pub offset_a: Vec<usize>,
    pub offset_b: Vec<usize>,
}

impl Bipartition {
    pub fn new(n: usize, subset: &[usize]) -> Self {
        let complement: Vec<usize> = (1..=n).filter(|l| !subset.contains(l)).collect();
        Bipartition { offset_a: offsets(n, subset), offset_b: offsets(n, &complement) }
    }

    pub fn dim_a(&self) -> usize {
        self.offset_a.len()
    }

    pub fn dim_b(&self) -> usize {
        self.offset_b.len()
    }

    /// Dense `M[a][b]`, row-major.
    pub fn matrix(&self, psi: &[Complex64]) -> Vec<Complex64> {
        let mut m = Vec::with_capacity(self.dim_a() * self.dim_b());
        for &oa in &self.offset_a {
            for &ob in &self.offset_b {
                m.push(psi[oa | ob]);
            }
        }
        m
    }
}

fn offsets(n: usize, labels: &[usize]) -> Vec<usize> {
    let k = labels.len();
    (0..1usize << k)
        .map(|local| {
            labels.iter().enumerate().fold(0, |x, (i, &l)| {
                let bit = (local >> (k - 1 - i)) & 1;
                x | bit << (n - l)
            })
        })
        .collect()
}

/// `G = M M†` for a row-major `rows × cols` matrix.
pub(crate) fn gram(m: &[Complex64], rows: usize, cols: usize) -> Vec<Complex64> {
    let mut g = vec![Complex64::new(0.0, 0.0); rows * rows];
    for i in 0..rows {
        let ri = &m[i * cols..(i + 1) * cols];
        for j in i..rows {
            let rj = &m[j * cols..(j + 1) * cols];
            let v: Complex64 = ri.iter().zip(rj).map(|(x, y)| x * y.conj()).sum();
            g[i * rows + j] = v;
            g[j * rows + i] = v.conj();
        }
    }
    g
}

/// Reduced density matrix of a `k`-qubit marginal, row-major `2^k × 2^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    k: usize,
    entries: Vec<Complex64>,
}

impl DensityMatrix {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        1 << self.k
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim() + col]
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim()).map(|i| self.get(i, i)).sum()
    }

    /// `Tr ρ²` from the explicit entries.
    pub fn purity(&self) -> f64 {
        let sq: Vec<f64> = self.entries.iter().map(|z| z.norm_sqr()).collect();
        pairwise_sum(&sq)
    }

    pub fn hermiticity_error(&self) -> f64 {
        let d = self.dim();
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in i..d {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    /// Largest entrywise deviation from `I / 2^k`.
    pub fn distance_to_maximally_mixed(&self) -> f64 {
        let d = self.dim();
        let target = 1.0 / d as f64;
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                let expect = if i == j { target } else { 0.0 };
                worst = worst.max((self.get(i, j) - expect).norm());
            }
        }
        worst
    }

    /// Eigenvalues, ascending (cyclic Jacobi on the real symmetric embedding).
    pub fn eigenvalues(&self) -> Vec<f64> {
        let d = self.dim();
        let m = 2 * d;
        // [[Re, -Im], [Im, Re]] has each eigenvalue of ρ twice.
        let mut a = vec![0.0; m * m];
        for i in 0..d {
            for j in 0..d {
                let z = self.get(i, j);
                a[i * m + j] = z.re;
                a[(i + d) * m + (j + d)] = z.re;
                a[i * m + (j + d)] = -z.im;
                a[(i + d) * m + j] = z.im;
            }
        }
        jacobi_eigenvalues(&mut a, m);
        let mut diag: Vec<f64> = (0..m).map(|i| a[i * m + i]).collect();
        diag.sort_by(|x, y| x.partial_cmp(y).unwrap_or(core::cmp::Ordering::Equal));
        diag.into_iter().step_by(2).collect()
    }

    /// Checks Hermiticity, unit trace and positivity at the module tolerances.
    pub fn is_valid(&self) -> bool {
        self.hermiticity_error() <= 1e-12
            && (self.trace() - Complex64::new(1.0, 0.0)).norm() <= 1e-12
            && self.eigenvalues().first().is_none_or(|&e| e >= -1e-10)
    }
}

fn jacobi_eigenvalues(a: &mut [f64], m: usize) {
    for _sweep in 0..64 {
        let mut off = 0.0;
        for p in 0..m {
            for q in p + 1..m {
                off += a[p * m + q] * a[p * m + q];
            }
        }
        if off < 1e-30 {
            return;
        }
        for p in 0..m {
            for q in p + 1..m {
                let apq = a[p * m + q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q * m + q] - a[p * m + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + libm::sqrt(theta * theta + 1.0));
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / libm::sqrt(t * t + 1.0);
                let s = t * c;
                for k in 0..m {
                    let akp = a[k * m + p];
                    let akq = a[k * m + q];
                    a[k * m + p] = c * akp - s * akq;
                    a[k * m + q] = s * akp + c * akq;
                }
                for k in 0..m {
                    let apk = a[p * m + k];
                    let aqk = a[q * m + k];
                    a[p * m + k] = c * apk - s * aqk;
                    a[q * m + k] = s * apk + c * aqk;
                }
            }
        }
    }
}

fn check_marginal(state: &StateVector, subset: &QubitSubset) -> Result<()> {
    subset.check_within(state.n())?;
    if subset.len() >= state.n() {
        return Err(Error::FullSystem);
    }
    Ok(())
}

/// `ρ_A = Tr_Ā |ψ⟩⟨ψ|`, indexed with the lowest label of `A` most significant.
pub fn reduced_density(state: &StateVector, subset: &QubitSubset) -> Result<DensityMatrix> {
    check_marginal(state, subset)?;
    let bp = Bipartition::new(state.n(), subset.labels());
    let m = bp.matrix(state.amplitudes());
    Ok(DensityMatrix { k: subset.len(), entries: gram(&m, bp.dim_a(), bp.dim_b()) })
}

/// `Tr ρ_A²`.
///
/// Uses `Tr (MM†)² = Tr (M†M)²` to work with the smaller Gram matrix, and
/// streams its entries instead of storing them.
pub fn purity(state: &StateVector, subset: &QubitSubset) -> Result<f64> {
    check_marginal(state, subset)?;
    let bp = Bipartition::new(state.n(), subset.labels());
    Ok(purity_of_split(state.amplitudes(), &bp))
}

pub(crate) fn purity_of_split(psi: &[Complex64], bp: &Bipartition) -> f64 {
    let (rows, cols) = (bp.dim_a(), bp.dim_b());
    let m = bp.matrix(psi);
    let mut acc = Vec::with_capacity(rows.min(cols) * rows.min(cols));
    if rows <= cols {
        for i in 0..rows {
            let ri = &m[i * cols..(i + 1) * cols];
            for j in 0..rows {
                let rj = &m[j * cols..(j + 1) * cols];
                let v: Complex64 = ri.iter().zip(rj).map(|(x, y)| x * y.conj()).sum();
                acc.push(v.norm_sqr());
            }
        }
    } else {
        for i in 0..cols {
            for j in 0..cols {
                let v: Complex64 = (0..rows).map(|r| m[r * cols + i].conj() * m[r * cols + j]).sum();
                acc.push(v.norm_sqr());
            }
        }
    }
    pairwise_sum(&acc)
}

/// Purities of every `k`-qubit marginal, in lexicographic subset order.
#[derive(Debug, Clone, PartialEq)]
pub struct PuritySpectrum {
    pub k: usize,
    pub entries: Vec<(QubitSubset, f64)>,
}

impl PuritySpectrum {
    pub fn values(&self) -> Vec<f64> {
        self.entries.iter().map(|(_, p)| *p).collect()
    }

    pub fn get(&self, subset: &QubitSubset) -> Option<f64> {
        self.entries.iter().find(|(s, _)| s == subset).map(|(_, p)| *p)
    }

    pub fn mean(&self) -> f64 {
        pairwise_mean(&self.values())
    }

    /// Entry with the largest `|purity − 2^{-k}|`.
    pub fn worst(&self) -> Option<(&QubitSubset, f64)> {
        let floor = 1.0 / (1u64 << self.k) as f64;
        self.entries.iter().map(|(s, p)| (s, (p - floor).abs())).fold(None, |best, cur| match best {
            Some((_, d)) if d >= cur.1 => best,
            _ => Some(cur),
        })
    }
}

pub fn purity_spectrum(state: &StateVector, k: usize) -> Result<PuritySpectrum> {
    let n = state.n();
    if k < 1 || k > n - 1 {
        return Err(Error::OrderOutOfRange { k, min: 1, max: n - 1 });
    }
    let entries = Combinations::new(n, k)
        .map(|s| {
            let bp = Bipartition::new(n, s.labels());
            let p = purity_of_split(state.amplitudes(), &bp);
            (s, p)
        })
        .collect();
    Ok(PuritySpectrum { k, entries })
}

/// `π_ME`: mean purity over all `C(n, ⌊n/2⌋)` balanced marginals.
pub fn average_balanced_purity(state: &StateVector) -> f64 {
    let half = state.n() / 2;
    purity_spectrum(state, half).map(|s| s.mean()).unwrap_or(f64::NAN)
}
