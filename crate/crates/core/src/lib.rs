//! Generating Hamiltonians of small qubit gates.
//!
//! Given an n-qubit unitary, this crate constructs Hermitian generators
//! through the matrix-logarithm branch ambiguity, decomposes them in the
//! Pauli tensor-product basis, reports their interaction order (Pauli
//! weight), and searches — both by exhaustive branch enumeration and by
//! variational k-local fitting — for lower-weight generators.
//!
//! All matrices are dense, dimensions stay at 2^n with n <= 6, and every
//! operation is a pure function over immutable values.

pub mod coupling;
pub mod error;
pub mod gates;
pub mod matrix;
mod optim;
pub mod pauli;
pub mod report;
pub mod search;
pub mod spectral;

pub use coupling::{
    couplings_to_spectrum, hadamard_matrix, spectrum_to_couplings, z_string, CouplingVector,
    SpectrumVector,
};
pub use error::Error;
pub use gates::{gate_matrix, make_shift, paper_hamiltonian, shifted_hamiltonian, GateSpec, ShiftOperator};
pub use matrix::{ComplexMatrix, C64};
pub use pauli::{
    interaction_order, pauli_decompose, reconstruct, strings_of_weight_at_most, Pauli,
    PauliDecomposition, PauliString,
};
pub use search::{distance, enumerate_branches, variational_fit, BranchReport, LogBranch, VariationalReport};
pub use spectral::{matrix_exp_hermitian, principal_log, spectral_decompose, MatrixKind, SpectralDecomposition};
