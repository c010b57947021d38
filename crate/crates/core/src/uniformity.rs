//! k-uniformity certificates and the nine-qubit maximal-entanglement verdict.

use alloc::vec::Vec;

use crate::reductions::{purity_spectrum, reduced_density, PuritySpectrum};
use crate::state::{QubitSubset, StateVector};
use crate::{Error, Result, NINE_QUBIT_FLOOR};

pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_BUCKET_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct UniformityVerdict {
    pub k: usize,
    pub uniform: bool,
    pub worst_subset: QubitSubset,
    /// `max_A |π_A − 2^{-k}|` over all `k`-subsets.
    pub worst_deviation: f64,
    /// Entrywise distance of the worst marginal from `I/2^k`.
    pub worst_matrix_deviation: f64,
    pub tolerance: f64,
}

/// Every `k`-qubit marginal is maximally mixed (tested through its purity,
/// which reaches `2^{-k}` only at `I/2^k`).
pub fn is_k_uniform(state: &StateVector, k: usize, tol: f64) -> Result<UniformityVerdict> {
    let max = state.n() / 2;
    if k < 1 || k > max {
        return Err(Error::OrderOutOfRange { k, min: 1, max });
    }
    let spectrum = purity_spectrum(state, k)?;
    verdict_from_spectrum(state, &spectrum, tol)
}

pub(crate) fn verdict_from_spectrum(
    state: &StateVector,
    spectrum: &PuritySpectrum,
    tol: f64,
) -> Result<UniformityVerdict> {
    let (worst, deviation) =
        spectrum.worst().map(|(s, d)| (s.clone(), d)).ok_or(Error::InvalidSubset("empty spectrum"))?;
    let rho = reduced_density(state, &worst)?;
    Ok(UniformityVerdict {
        k: spectrum.k,
        uniform: deviation <= tol,
        worst_subset: worst,
        worst_deviation: deviation,
        worst_matrix_deviation: rho.distance_to_maximally_mixed(),
        tolerance: tol,
    })
}

/// Buckets sorted purities; a new bucket opens when a value is more than
/// `bucket_tol` above the current bucket's first member. Returns
/// `(bucket mean, count)` ascending.
pub fn histogram(values: &[f64], bucket_tol: f64) -> Vec<(f64, usize)> {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap_or(core::cmp::Ordering::Equal));
    let mut out: Vec<(f64, usize)> = Vec::new();
    let mut start = 0;
    for i in 1..=sorted.len() {
        if i == sorted.len() || sorted[i] - sorted[start] > bucket_tol {
            let bucket = &sorted[start..i];
            if !bucket.is_empty() {
                let mean = bucket.iter().sum::<f64>() / bucket.len() as f64;
                out.push((mean, bucket.len()));
            }
            start = i;
        }
    }
    out
}

pub fn classify_marginals(state: &StateVector, k: usize, bucket_tol: f64) -> Result<Vec<(f64, usize)>> {
    let spectrum = purity_spectrum(state, k)?;
    Ok(histogram(&spectrum.values(), bucket_tol))
}

#[derive(Debug, Clone, PartialEq)]
pub struct MmesVerdict {
    pub pi_me: f64,
    /// `π_ME − 1/14`.
    pub gap_to_bound: f64,
    pub is_mmes: bool,
    /// All 126 four-qubit marginals maximally mixed.
    pub is_ame: bool,
    pub spectrum_histogram: Vec<(f64, usize)>,
}

pub fn mmes_verdict(state: &StateVector, tol: f64) -> Result<MmesVerdict> {
    if state.n() != 9 {
        return Err(Error::NotNineQubits(state.n()));
    }
    let spectrum = purity_spectrum(state, 4)?;
    let pi_me = spectrum.mean();
    let gap_to_bound = pi_me - NINE_QUBIT_FLOOR;
    let is_ame = spectrum.values().iter().all(|&p| (p - 1.0 / 16.0).abs() <= tol);
    Ok(MmesVerdict {
        pi_me,
        gap_to_bound,
        is_mmes: gap_to_bound.abs() <= tol,
        is_ame,
        spectrum_histogram: histogram(&spectrum.values(), DEFAULT_BUCKET_TOL),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{ghz_state, nine_qubit_minimizer, product_state, random_state};

    #[test]
    fn ghz_is_one_but_not_two_uniform() {
        let g = ghz_state(9).unwrap();
        let v1 = is_k_uniform(&g, 1, DEFAULT_TOL).unwrap();
        assert!(v1.uniform);
        assert!(v1.worst_matrix_deviation < 1e-15);
        let v2 = is_k_uniform(&g, 2, DEFAULT_TOL).unwrap();
        assert!(!v2.uniform);
        assert!((v2.worst_deviation - 0.25).abs() < 1e-14);
    }

    #[test]
    fn order_range_is_checked() {
        let g = ghz_state(9).unwrap();
        assert!(matches!(is_k_uniform(&g, 5, DEFAULT_TOL), Err(Error::OrderOutOfRange { .. })));
        assert!(matches!(is_k_uniform(&g, 0, DEFAULT_TOL), Err(Error::OrderOutOfRange { .. })));
    }

    #[test]
    fn histogram_buckets() {
        let h = histogram(&[0.125, 0.0625 + 1e-12, 0.0625, 0.25, 0.125 - 1e-10], 1e-6);
        assert_eq!(h.len(), 3);
        assert_eq!(h[0].1, 2);
        assert_eq!(h[1].1, 2);
        assert_eq!(h[2], (0.25, 1));
        assert!(histogram(&[], 1e-6).is_empty());
    }

    #[test]
    fn product_histogram() {
        let h = classify_marginals(&product_state(9).unwrap(), 4, DEFAULT_BUCKET_TOL).unwrap();
        assert_eq!(h, alloc::vec![(1.0, 126)]);
    }

    #[test]
    fn minimizer_pair_marginals() {
        let h = classify_marginals(&nine_qubit_minimizer(), 2, DEFAULT_BUCKET_TOL).unwrap();
        assert_eq!(h.len(), 1);
        assert!((h[0].0 - 0.25).abs() < 1e-12);
        assert_eq!(h[0].1, 36);
    }

    #[test]
    fn verdicts_on_reference_states() {
        let g = mmes_verdict(&ghz_state(9).unwrap(), DEFAULT_TOL).unwrap();
        assert!(!g.is_mmes && !g.is_ame);
        assert!((g.gap_to_bound - 3.0 / 7.0).abs() < 1e-13);
        let p = mmes_verdict(&product_state(9).unwrap(), DEFAULT_TOL).unwrap();
        assert!(!p.is_mmes);
        assert!((p.gap_to_bound - 13.0 / 14.0).abs() < 1e-13);
        let z = mmes_verdict(&nine_qubit_minimizer(), DEFAULT_TOL).unwrap();
        assert!(z.is_mmes && !z.is_ame);
        assert!(z.gap_to_bound.abs() < 1e-12);
        assert_eq!(mmes_verdict(&ghz_state(6).unwrap(), 1e-9).unwrap_err(), Error::NotNineQubits(6));
    }

    #[test]
    fn uniformity_is_monotone_on_random_states() {
        for seed in 0..20 {
            let s = random_state(6, seed).unwrap();
            let flags: alloc::vec::Vec<bool> =
                (1..=3).map(|k| is_k_uniform(&s, k, DEFAULT_TOL).unwrap().uniform).collect();
            for k in 1..3 {
                assert!(!flags[k] || flags[k - 1]);
            }
        }
    }
}
