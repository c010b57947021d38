//! Purity-based entanglement analysis of multi-qubit pure states.
//!
//! The crate computes marginal purities over qubit subsets, the averaged
//! balanced-bipartition purity `π_ME`, Pauli correlation invariants `F_S`,
//! and the nine-qubit criterion that pins the minimum of `π_ME` at `1/14`.
//! It also carries a sphere-constrained minimizer for `π_ME`.
//!
//! Everything here is `no_std` with `alloc`; file formats, reports and the
//! command-line front end live in the companion `mmes` crate.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;
mod minimizer_table;
pub mod optimizer;
pub mod pauli;
pub mod reductions;
pub mod state;
pub mod subsets;
pub mod summation;
pub mod uniformity;

pub use error::Error;
pub use num_complex::Complex64;
pub use pauli::{
    aggregate_invariants, correlation_invariant, inversion_identity_residual, inversion_overlap, pauli_expectation,
    pi_me_from_invariants, pi_me_lower_bound_form, purity_from_invariants, InvariantSummary, PauliLetter, PauliString,
};
pub use reductions::{
    average_balanced_purity, purity, purity_spectrum, reduced_density, DensityMatrix, PuritySpectrum,
};
pub use state::{QubitSubset, StateVector};
pub use uniformity::{classify_marginals, is_k_uniform, mmes_verdict, MmesVerdict, UniformityVerdict};

/// The nine-qubit floor of `π_ME`.
pub const NINE_QUBIT_FLOOR: f64 = 1.0 / 14.0;

pub type Result<T> = core::result::Result<T, Error>;
