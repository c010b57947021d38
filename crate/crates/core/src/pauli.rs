//! Pauli correlation invariants and the invariant forms of `π_ME`.
//!
//! For a support `S`, `F_S = Σ ⟨ψ|σ_{α₁} ⊗ … ⊗ σ_{α_|S|}|ψ⟩²` over all
//! `3^|S|` choices of non-identity letters. For a pure state the purity of a
//! four-qubit marginal expands as `π_A = (1 + Σ_{∅≠S⊆A} F_S) / 16`, and
//! summing over the 126 balanced marginals of nine qubits gives
//! `π_ME = 1/16 + (56 C₁ + 21 C₂ + 6 C₃ + C₄) / 2016` with `C_m` the sum of
//! `F_S` over unordered `m`-subsets.
//!
//! The lower-bound form replaces `C₄` using
//! `16 Σ_m tr(ρ_{m̄} ρ̃_{m̄}) = −18 − 8 C₁ − C₂ + C₄`, where `ρ_{m̄}` is the
//! eight-qubit marginal with qubit `m` traced out and `ρ̃` its universal
//! state inversion `σ_y^{⊗8} ρ* σ_y^{⊗8}`. Every bracketed term is then
//! nonnegative and `π_ME ≥ 1/14`.

use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::state::{QubitSubset, StateVector};
use crate::subsets::{binomial, nonempty_subsets_of, Combinations};
use crate::summation::pairwise_sum;
use crate::{Error, Result, NINE_QUBIT_FLOOR};

/// Expectations whose imaginary part exceeds this are treated as a bug.
pub const IMAGINARY_TOLERANCE: f64 = 1e-9;

/// Largest support handled by [`correlation_invariant`].
pub const MAX_INVARIANT_ORDER: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PauliLetter {
    X,
    Y,
    Z,
}

impl PauliLetter {
    /// Enumeration order used for every invariant sweep.
    pub const ALL: [PauliLetter; 3] = [PauliLetter::X, PauliLetter::Y, PauliLetter::Z];

    pub fn symbol(self) -> char {
        match self {
            PauliLetter::X => 'x',
            PauliLetter::Y => 'y',
            PauliLetter::Z => 'z',
        }
    }
}

/// A tensor product of non-identity Pauli letters on a qubit subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PauliString {
    support: QubitSubset,
    letters: Vec<PauliLetter>,
}

impl PauliString {
    pub fn new(support: QubitSubset, letters: Vec<PauliLetter>) -> Result<Self> {
        if letters.len() != support.len() {
            return Err(Error::InvalidSubset("letter count differs from support size"));
        }
        Ok(PauliString { support, letters })
    }

    /// The same letter on every qubit of `support`.
    pub fn uniform(support: QubitSubset, letter: PauliLetter) -> Self {
        let letters = alloc::vec![letter; support.len()];
        PauliString { support, letters }
    }

    pub fn support(&self) -> &QubitSubset {
        &self.support
    }

    pub fn letters(&self) -> &[PauliLetter] {
        &self.letters
    }

    fn masks(&self, n: usize) -> BitPauli {
        let mut p = BitPauli { x: 0, z: 0, y_count: 0 };
        for (&label, &letter) in self.support.labels().iter().zip(&self.letters) {
            let bit = 1usize << (n - label);
            match letter {
                PauliLetter::X => p.x |= bit,
                PauliLetter::Y => {
                    p.x |= bit;
                    p.z |= bit;
                    p.y_count += 1;
                }
                PauliLetter::Z => p.z |= bit,
            }
        }
        p
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (l, p)) in self.support.labels().iter().zip(&self.letters).enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}{}", p.symbol(), l)?;
        }
        Ok(())
    }
}

/// `i^{y_count} X^x Z^z`, using `Y = i X Z`.
#[derive(Debug, Clone, Copy)]
struct BitPauli {
    x: usize,
    z: usize,
    y_count: u32,
}

impl BitPauli {
    fn expectation(self, psi: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (idx, &amp) in psi.iter().enumerate() {
            if amp.re == 0.0 && amp.im == 0.0 {
                continue;
            }
            let term = psi[idx ^ self.x].conj() * amp;
            if (idx & self.z).count_ones() & 1 == 1 {
                acc -= term;
            } else {
                acc += term;
            }
        }
        match self.y_count % 4 {
            0 => acc,
            1 => Complex64::new(-acc.im, acc.re),
            2 => -acc,
            _ => Complex64::new(acc.im, -acc.re),
        }
    }
}

fn real_part(z: Complex64) -> Result<f64> {
    if z.im.abs() > IMAGINARY_TOLERANCE {
        Err(Error::ComplexExpectation(z.im))
    } else {
        Ok(z.re)
    }
}

/// `⟨ψ|P|ψ⟩`, which is real for every Pauli string.
pub fn pauli_expectation(state: &StateVector, pauli: &PauliString) -> Result<f64> {
    pauli.support.check_within(state.n())?;
    real_part(pauli.masks(state.n()).expectation(state.amplitudes()))
}

/// `F_S`: sum of squared expectations over all `3^|S|` letter assignments on `S`.
pub fn correlation_invariant(state: &StateVector, support: &QubitSubset) -> Result<f64> {
    if support.len() > MAX_INVARIANT_ORDER {
        return Err(Error::SupportTooLarge(support.len()));
    }
    support.check_within(state.n())?;
    let n = state.n();
    let bits: Vec<usize> = support.labels().iter().map(|&l| 1usize << (n - l)).collect();
    let count = 3usize.pow(support.len() as u32);
    let mut squares = Vec::with_capacity(count);
    for code in 0..count {
        // base-3 digits, first label most significant, digit order (x, y, z)
        let mut p = BitPauli { x: 0, z: 0, y_count: 0 };
        let mut rest = code;
        for &bit in bits.iter().rev() {
            match rest % 3 {
                0 => p.x |= bit,
                1 => {
                    p.x |= bit;
                    p.z |= bit;
                    p.y_count += 1;
                }
                _ => p.z |= bit,
            }
            rest /= 3;
        }
        let e = real_part(p.expectation(state.amplitudes()))?;
        squares.push(e * e);
    }
    Ok(pairwise_sum(&squares))
}

/// Per-subset invariants for supports of size `1..=4` and their aggregates.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantSummary {
    pub n: usize,
    /// `(S, F_S)` grouped by size, lexicographic within each size.
    pub per_subset: Vec<(QubitSubset, f64)>,
    /// `[C₁, C₂, C₃, C₄]`, each a sum over unordered subsets.
    pub aggregates: [f64; 4],
}

impl InvariantSummary {
    pub fn c(&self, m: usize) -> f64 {
        self.aggregates[m - 1]
    }

    pub fn get(&self, subset: &QubitSubset) -> Option<f64> {
        self.per_subset.iter().find(|(s, _)| s == subset).map(|(_, f)| *f)
    }

    /// Smallest `F_S` seen; nonnegative up to rounding.
    pub fn min_invariant(&self) -> f64 {
        self.per_subset.iter().map(|(_, f)| *f).fold(f64::INFINITY, f64::min)
    }
}

pub fn aggregate_invariants(state: &StateVector) -> Result<InvariantSummary> {
    let n = state.n();
    let max_order = MAX_INVARIANT_ORDER.min(n);
    let mut per_subset = Vec::new();
    let mut aggregates = [0.0; 4];
    for m in 1..=max_order {
        let mut values = Vec::with_capacity(binomial(n, m));
        for s in Combinations::new(n, m) {
            let f = correlation_invariant(state, &s)?;
            values.push(f);
            per_subset.push((s, f));
        }
        aggregates[m - 1] = pairwise_sum(&values);
    }
    Ok(InvariantSummary { n, per_subset, aggregates })
}

/// `π_A` of a four-qubit marginal rebuilt from the invariants on its subsets.
pub fn purity_from_invariants(state: &StateVector, subset: &QubitSubset) -> Result<f64> {
    if subset.len() != 4 {
        return Err(Error::NotFourSubset(subset.len()));
    }
    subset.check_within(state.n())?;
    let mut terms = alloc::vec![1.0];
    for s in nonempty_subsets_of(subset.labels(), 4) {
        terms.push(correlation_invariant(state, &s)?);
    }
    Ok(pairwise_sum(&terms) / 16.0)
}

fn require_nine(n: usize) -> Result<()> {
    if n == 9 {
        Ok(())
    } else {
        Err(Error::NotNineQubits(n))
    }
}

/// `π_ME = 1/16 + (56 C₁ + 21 C₂ + 6 C₃ + C₄) / 2016`.
pub fn pi_me_from_invariants(summary: &InvariantSummary) -> Result<f64> {
    require_nine(summary.n)?;
    let [c1, c2, c3, c4] = summary.aggregates;
    Ok(1.0 / 16.0 + (56.0 * c1 + 21.0 * c2 + 6.0 * c3 + c4) / 2016.0)
}

/// `tr(ρ_{m̄} ρ̃_{m̄})` for the `(n−1)`-qubit marginal with qubit `m` traced out.
///
/// Writing `ψ = Σ_a |a⟩_m ⊗ |φ_a⟩`, the overlap is
/// `Σ_{a,b} |⟨φ_a| σ_y^{⊗(n−1)} |φ_b*⟩|²`; the phase of `σ_y^{⊗r}|y⟩ = i^r (−1)^{|y|} |ȳ⟩`
/// drops out of the modulus.
pub fn inversion_overlap(state: &StateVector, m: usize) -> Result<f64> {
    let n = state.n();
    if m == 0 || m > n {
        return Err(Error::LabelOutOfRange { label: m, n });
    }
    let psi = state.amplitudes();
    let bit = 1usize << (n - m);
    let rest = n - 1;
    let mut branches: [Vec<Complex64>; 2] = [Vec::with_capacity(1 << rest), Vec::with_capacity(1 << rest)];
    for idx in 0..1usize << n {
        if idx & bit == 0 {
            branches[0].push(psi[idx]);
            branches[1].push(psi[idx | bit]);
        }
    }
    let full = (1usize << rest) - 1;
    let mut terms = [0.0; 4];
    for a in 0..2 {
        for b in 0..2 {
            let mut acc = Complex64::new(0.0, 0.0);
            for y in 0..=full {
                let v = branches[a][full ^ y].conj() * branches[b][y].conj();
                if y.count_ones() & 1 == 1 {
                    acc -= v;
                } else {
                    acc += v;
                }
            }
            terms[2 * a + b] = acc.norm_sqr();
        }
    }
    Ok(pairwise_sum(&terms))
}

/// All `n` inversion overlaps, indexed by `m − 1`.
pub fn inversion_overlaps(state: &StateVector) -> Vec<f64> {
    (1..=state.n()).map(|m| inversion_overlap(state, m).unwrap_or(f64::NAN)).collect()
}

/// `|16 Σ_m tr(ρ_{m̄}ρ̃_{m̄}) − (−18 − 8C₁ − C₂ + C₄)|`.
pub fn inversion_identity_residual(state: &StateVector) -> Result<f64> {
    require_nine(state.n())?;
    let summary = aggregate_invariants(state)?;
    Ok(inversion_identity_residual_from(&summary, &inversion_overlaps(state)))
}

pub fn inversion_identity_residual_from(summary: &InvariantSummary, overlaps: &[f64]) -> f64 {
    let [c1, c2, _, c4] = summary.aggregates;
    let lhs = 16.0 * pairwise_sum(overlaps);
    let rhs = -18.0 - 8.0 * c1 - c2 + c4;
    (lhs - rhs).abs()
}

/// `π_ME = 1/14 + (64 C₁ + 22 C₂ + 6 C₃ + 16 Σ_m tr(ρ_{m̄}ρ̃_{m̄})) / 2016`.
pub fn pi_me_lower_bound_form(state: &StateVector) -> Result<f64> {
    require_nine(state.n())?;
    let summary = aggregate_invariants(state)?;
    Ok(pi_me_lower_bound_from(&summary, &inversion_overlaps(state)))
}

pub fn pi_me_lower_bound_from(summary: &InvariantSummary, overlaps: &[f64]) -> f64 {
    let [c1, c2, c3, _] = summary.aggregates;
    let bracket = 64.0 * c1 + 22.0 * c2 + 6.0 * c3 + 16.0 * pairwise_sum(overlaps);
    NINE_QUBIT_FLOOR + bracket / 2016.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{ghz_state, nine_qubit_minimizer, product_state, random_state};
    use alloc::vec;

    fn sub(l: &[usize]) -> QubitSubset {
        QubitSubset::new(l, 9).unwrap()
    }

    // Dense oracle: build the 2^n × 2^n Pauli matrix and take ⟨ψ|P|ψ⟩.
    fn dense_expectation(state: &StateVector, p: &PauliString) -> Complex64 {
        let n = state.n();
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        let mut mat = vec![one];
        let mut dim = 1;
        for q in 1..=n {
            let single: [Complex64; 4] = match p.support().labels().iter().position(|&l| l == q) {
                None => [one, zero, zero, one],
                Some(k) => match p.letters()[k] {
                    PauliLetter::X => [zero, one, one, zero],
                    PauliLetter::Y => [zero, -i, i, zero],
                    PauliLetter::Z => [one, zero, zero, -one],
                },
            };
            let nd = dim * 2;
            let mut next = vec![zero; nd * nd];
            for r in 0..dim {
                for c in 0..dim {
                    for a in 0..2 {
                        for b in 0..2 {
                            next[(2 * r + a) * nd + 2 * c + b] = mat[r * dim + c] * single[2 * a + b];
                        }
                    }
                }
            }
            mat = next;
            dim = nd;
        }
        let psi = state.amplitudes();
        let mut acc = zero;
        for r in 0..dim {
            for c in 0..dim {
                acc += psi[r].conj() * mat[r * dim + c] * psi[c];
            }
        }
        acc
    }

    #[test]
    fn expectation_examples() {
        let p = product_state(9).unwrap();
        let z3 = PauliString::uniform(sub(&[3]), PauliLetter::Z);
        assert_eq!(pauli_expectation(&p, &z3).unwrap(), 1.0);

        let g = ghz_state(5).unwrap();
        let z1 = PauliString::uniform(QubitSubset::new(&[1], 5).unwrap(), PauliLetter::Z);
        assert_eq!(pauli_expectation(&g, &z1).unwrap(), 0.0);
        assert!(dense_expectation(&g, &z1).norm() < 1e-15);

        let all = QubitSubset::new(&[1, 2, 3, 4, 5], 5).unwrap();
        let xs = PauliString::uniform(all, PauliLetter::X);
        assert!((pauli_expectation(&g, &xs).unwrap() - 1.0).abs() < 1e-15);
        assert!((dense_expectation(&g, &xs).re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn ghz9_all_x_is_one() {
        let g = ghz_state(9).unwrap();
        let all = sub(&[1, 2, 3, 4, 5, 6, 7, 8, 9]);
        let xs = PauliString::uniform(all, PauliLetter::X);
        assert!((pauli_expectation(&g, &xs).unwrap() - 1.0).abs() < 1e-15);
        let z1 = PauliString::uniform(sub(&[1]), PauliLetter::Z);
        assert_eq!(pauli_expectation(&g, &z1).unwrap(), 0.0);
    }

    #[test]
    fn bit_expectations_match_dense_on_random_states() {
        let s = random_state(4, 11).unwrap();
        let support = QubitSubset::new(&[1, 2, 4], 4).unwrap();
        for a in PauliLetter::ALL {
            for b in PauliLetter::ALL {
                for c in PauliLetter::ALL {
                    let p = PauliString::new(support.clone(), vec![a, b, c]).unwrap();
                    let fast = pauli_expectation(&s, &p).unwrap();
                    let dense = dense_expectation(&s, &p);
                    assert!(dense.im.abs() < 1e-14);
                    assert!((fast - dense.re).abs() < 1e-14, "{}", p);
                }
            }
        }
    }

    #[test]
    fn invariant_examples() {
        let g = ghz_state(9).unwrap();
        for i in 1..=9 {
            assert!(correlation_invariant(&g, &sub(&[i])).unwrap().abs() < 1e-15);
        }
        for s in Combinations::new(9, 2) {
            assert!((correlation_invariant(&g, &s).unwrap() - 1.0).abs() < 1e-14);
        }
        let p = product_state(9).unwrap();
        for s in [sub(&[4]), sub(&[2, 9]), sub(&[1, 5, 6]), sub(&[3, 4, 7, 8])] {
            // only the all-z string survives; enumerate densely
            let mut oracle = 0.0;
            let k = s.len();
            for code in 0..3usize.pow(k as u32) {
                let mut rest = code;
                let mut letters = vec![PauliLetter::X; k];
                for slot in letters.iter_mut().rev() {
                    *slot = PauliLetter::ALL[rest % 3];
                    rest /= 3;
                }
                let ps = PauliString::new(s.clone(), letters).unwrap();
                oracle += dense_expectation(&product_state(9).unwrap(), &ps).re.powi(2);
            }
            assert_eq!(oracle, 1.0);
            assert_eq!(correlation_invariant(&p, &s).unwrap(), 1.0);
        }
        assert_eq!(correlation_invariant(&p, &sub(&[1, 2, 3, 4, 5])).unwrap_err(), Error::SupportTooLarge(5));
    }

    #[test]
    fn aggregate_examples() {
        let g = aggregate_invariants(&ghz_state(9).unwrap()).unwrap();
        let expect = [0.0, 36.0, 0.0, 126.0];
        for (c, e) in g.aggregates.iter().zip(expect) {
            assert!((c - e).abs() < 1e-12);
        }
        let p = aggregate_invariants(&product_state(9).unwrap()).unwrap();
        assert_eq!(p.aggregates, [9.0, 36.0, 84.0, 126.0]);
        assert_eq!(p.per_subset.len(), 9 + 36 + 84 + 126);
        let z = aggregate_invariants(&nine_qubit_minimizer()).unwrap();
        for m in 1..=3 {
            assert!(z.c(m).abs() < 1e-12, "C{} = {}", m, z.c(m));
        }
    }

    #[test]
    fn purity_from_invariant_examples() {
        let p = product_state(9).unwrap();
        assert!((purity_from_invariants(&p, &sub(&[1, 2, 3, 4])).unwrap() - 1.0).abs() < 1e-15);
        let g = ghz_state(9).unwrap();
        assert!((purity_from_invariants(&g, &sub(&[2, 4, 6, 8])).unwrap() - 0.5).abs() < 1e-14);
        let z = nine_qubit_minimizer();
        assert!((purity_from_invariants(&z, &sub(&[1, 2, 3, 4])).unwrap() - 0.25).abs() < 1e-12);
        assert_eq!(purity_from_invariants(&g, &sub(&[1, 2])).unwrap_err(), Error::NotFourSubset(2));
    }

    #[test]
    fn pi_me_from_aggregates() {
        let mk = |aggregates| InvariantSummary { n: 9, per_subset: vec![], aggregates };
        assert_eq!(pi_me_from_invariants(&mk([0.0; 4])).unwrap(), 1.0 / 16.0);
        assert!((pi_me_from_invariants(&mk([0.0, 36.0, 0.0, 126.0])).unwrap() - 0.5).abs() < 1e-15);
        assert!((pi_me_from_invariants(&mk([9.0, 36.0, 84.0, 126.0])).unwrap() - 1.0).abs() < 1e-15);
        let five = InvariantSummary { n: 5, per_subset: vec![], aggregates: [0.0; 4] };
        assert_eq!(pi_me_from_invariants(&five).unwrap_err(), Error::NotNineQubits(5));
    }

    // Oracle for the inversion overlap: ρ̃ = Σ_{S ⊆ R} (−1)^{|S|} ρ_S ⊗ 1, built densely.
    fn overlap_by_definition(state: &StateVector, m: usize) -> f64 {
        let n = state.n();
        let rest: Vec<usize> = (1..=n).filter(|&l| l != m).collect();
        let r = rest.len();
        let d = 1usize << r;
        let rho = crate::reductions::reduced_density(state, &QubitSubset::new(&rest, n).unwrap()).unwrap();
        let mut tilde = vec![Complex64::new(0.0, 0.0); d * d];
        for mask in 0usize..(1 << r) {
            let sign = if mask.count_ones() & 1 == 1 { -1.0 } else { 1.0 };
            // positions inside the r-qubit register: bit (r-1-i) for rest[i]
            let keep: Vec<usize> = (0..r).filter(|i| mask >> i & 1 == 1).collect();
            let keep_bits: usize = keep.iter().fold(0, |acc, &i| acc | 1 << (r - 1 - i));
            // ρ_S ⊗ 1 entries: sum over traced bits of ρ restricted to S, identity elsewhere
            for row in 0..d {
                for col in 0..d {
                    if row & !keep_bits != col & !keep_bits {
                        continue;
                    }
                    let mut acc = Complex64::new(0.0, 0.0);
                    for t in 0..d {
                        if t & keep_bits != 0 {
                            continue;
                        }
                        acc += rho.get((row & keep_bits) | t, (col & keep_bits) | t);
                    }
                    tilde[row * d + col] += acc * sign;
                }
            }
        }
        let mut tr = Complex64::new(0.0, 0.0);
        for a in 0..d {
            for b in 0..d {
                tr += rho.get(a, b) * tilde[b * d + a];
            }
        }
        tr.re
    }

    #[test]
    fn inversion_overlap_matches_definition() {
        for seed in 0..3 {
            let s = random_state(5, seed).unwrap();
            for m in 1..=5 {
                let fast = inversion_overlap(&s, m).unwrap();
                let oracle = overlap_by_definition(&s, m);
                assert!((fast - oracle).abs() < 1e-12, "m={} {} vs {}", m, fast, oracle);
            }
        }
        // n = 2: the one-qubit marginal, 2·det ρ
        let s = random_state(2, 9).unwrap();
        let rho = crate::reductions::reduced_density(&s, &QubitSubset::new(&[2], 2).unwrap()).unwrap();
        let det = (rho.get(0, 0) * rho.get(1, 1) - rho.get(0, 1) * rho.get(1, 0)).re;
        assert!((inversion_overlap(&s, 1).unwrap() - 2.0 * det).abs() < 1e-14);
    }

    #[test]
    fn inversion_overlap_examples() {
        let p = product_state(9).unwrap();
        let g = ghz_state(9).unwrap();
        let z = nine_qubit_minimizer();
        for m in 1..=9 {
            assert_eq!(inversion_overlap(&p, m).unwrap(), 0.0);
            assert!((inversion_overlap(&g, m).unwrap() - 0.5).abs() < 1e-14);
            assert!(inversion_overlap(&z, m).unwrap().abs() < 1e-14);
        }
        assert!((pairwise_sum(&inversion_overlaps(&g)) - 4.5).abs() < 1e-13);
        assert!(matches!(inversion_overlap(&g, 10), Err(Error::LabelOutOfRange { .. })));
    }

    #[test]
    fn inversion_identity_and_lower_bound_on_references() {
        let g = ghz_state(9).unwrap();
        let p = product_state(9).unwrap();
        assert!(inversion_identity_residual(&g).unwrap() < 1e-12);
        assert!(inversion_identity_residual(&p).unwrap() < 1e-12);
        assert!((pi_me_lower_bound_form(&g).unwrap() - 0.5).abs() < 1e-13);
        assert!((pi_me_lower_bound_form(&p).unwrap() - 1.0).abs() < 1e-13);
        let z = nine_qubit_minimizer();
        assert!((pi_me_lower_bound_form(&z).unwrap() - 1.0 / 14.0).abs() < 1e-13);
        assert_eq!(inversion_identity_residual(&ghz_state(5).unwrap()).unwrap_err(), Error::NotNineQubits(5));
    }

    #[test]
    fn inversion_identity_holds_on_random_state() {
        let s = random_state(9, 2024).unwrap();
        assert!(inversion_identity_residual(&s).unwrap() < 1e-9);
    }
}
