//! The ε = Mα relation between the 2^n energy levels of a diagonal
//! Hamiltonian and the coupling strengths of its σ_z-string expansion,
//! with M the ±1 Hadamard matrix (M² = 2^n·1).
//!
//! Index convention: the binary digits of k select σ_z factors with the
//! first digit ν₁ the most significant bit, matching the tensor order in
//! [`crate::pauli`].

use crate::pauli::{Pauli, PauliString};

/// σ_z-string coupling strengths α_k, indexed by the integer k whose binary
/// digits select σ_z factors.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingVector {
    pub n: usize,
    pub alpha: Vec<f64>,
}

/// Energy eigenvalues ε_k in computational-basis order.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumVector {
    pub n: usize,
    pub epsilon: Vec<f64>,
}

impl CouplingVector {
    pub fn new(n: usize, alpha: Vec<f64>) -> Self {
        assert_eq!(alpha.len(), 1 << n, "coupling vector must have length 2^n");
        Self { n, alpha }
    }
}

impl SpectrumVector {
    pub fn new(n: usize, epsilon: Vec<f64>) -> Self {
        assert_eq!(epsilon.len(), 1 << n, "spectrum vector must have length 2^n");
        Self { n, epsilon }
    }
}

/// The 2^n × 2^n Hadamard matrix M_{jk} = (−1)^{popcount(j & k)}, row-major.
pub fn hadamard_matrix(n: usize) -> Vec<Vec<f64>> {
    assert!((1..=6).contains(&n), "qubit count {n} out of range 1..=6");
    let dim = 1usize << n;
    (0..dim)
        .map(|j| {
            (0..dim)
                .map(|k| if (j & k).count_ones() % 2 == 0 { 1.0 } else { -1.0 })
                .collect()
        })
        .collect()
}

/// ε = M·α: the spectrum of Σ_k α_k·(σ_z-string k) in basis order.
pub fn couplings_to_spectrum(a: &CouplingVector) -> SpectrumVector {
    let m = hadamard_matrix(a.n);
    let epsilon = m
        .iter()
        .map(|row| row.iter().zip(&a.alpha).map(|(m, a)| m * a).sum())
        .collect();
    SpectrumVector {
        n: a.n,
        epsilon,
    }
}

/// α = M·ε / 2^n, using M² = 2^n·1.
pub fn spectrum_to_couplings(e: &SpectrumVector) -> CouplingVector {
    let m = hadamard_matrix(e.n);
    let dim = (1usize << e.n) as f64;
    let alpha = m
        .iter()
        .map(|row| row.iter().zip(&e.epsilon).map(|(m, e)| m * e).sum::<f64>() / dim)
        .collect();
    CouplingVector { n: e.n, alpha }
}

/// The σ_z-string selected by index k: letter i is Z when binary digit ν_i
/// of k is 1 (ν₁ = most significant bit).
pub fn z_string(n: usize, k: usize) -> PauliString {
    let letters = (0..n)
        .map(|i| {
            if (k >> (n - 1 - i)) & 1 == 1 {
                Pauli::Z
            } else {
                Pauli::I
            }
        })
        .collect();
    PauliString::new(letters)
}
