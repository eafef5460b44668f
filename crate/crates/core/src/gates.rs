//! Gate library and the constructions around exp(iHt):
//! projector-product Hamiltonians for the multiply-controlled-X family,
//! shift operators N = 2π·A·diag(n)·A†, and branch arithmetic.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::matrix::{C64, ComplexMatrix};
use crate::spectral::SpectralDecomposition;

/// A gate the library knows how to analyze.
#[derive(Debug, Clone)]
pub enum GateSpec {
    Identity { qubits: usize },
    Cnot,
    Toffoli,
    /// Multiply-controlled X on `qubits` qubits (qubits − 1 controls);
    /// `ccx(2)` is CNOT and `ccx(3)` is Toffoli.
    MultiControlledX { qubits: usize },
    Custom {
        label: String,
        matrix: ComplexMatrix,
    },
}

impl GateSpec {
    pub fn qubits(&self) -> Result<usize> {
        match self {
            GateSpec::Identity { qubits } => Ok(*qubits),
            GateSpec::Cnot => Ok(2),
            GateSpec::Toffoli => Ok(3),
            GateSpec::MultiControlledX { qubits } => Ok(*qubits),
            GateSpec::Custom { matrix, .. } => matrix.qubits(),
        }
    }

    /// Stable label used in reports.
    pub fn label(&self) -> String {
        match self {
            GateSpec::Identity { qubits } => format!("identity:{qubits}"),
            GateSpec::Cnot => "cnot".into(),
            GateSpec::Toffoli => "toffoli".into(),
            GateSpec::MultiControlledX { qubits } => format!("ccx:{qubits}"),
            GateSpec::Custom { label, .. } => label.clone(),
        }
    }
}

/// Resolve a gate spec to its unitary matrix. Named gates are exact 0/1
/// permutations; custom matrices must be unitary to 1e-10.
pub fn gate_matrix(g: &GateSpec) -> Result<ComplexMatrix> {
    match g {
        GateSpec::Identity { qubits } => Ok(ComplexMatrix::identity(1usize << qubits)),
        GateSpec::Cnot => Ok(multi_controlled_x(2)),
        GateSpec::Toffoli => Ok(multi_controlled_x(3)),
        GateSpec::MultiControlledX { qubits } => {
            if *qubits < 2 {
                return Err(Error::BadDimension { dim: 1 << qubits });
            }
            Ok(multi_controlled_x(*qubits))
        }
        GateSpec::Custom { matrix, .. } => {
            let residual = matrix.unitarity_residual();
            if residual >= 1e-10 {
                return Err(Error::NotUnitary {
                    residual,
                    tol: 1e-10,
                });
            }
            matrix.qubits()?;
            Ok(matrix.clone())
        }
    }
}

/// Permutation flipping the last qubit when all controls are 1: swaps the
/// two highest basis states 2^n − 2 and 2^n − 1.
fn multi_controlled_x(n: usize) -> ComplexMatrix {
    let dim = 1usize << n;
    let mut m = ComplexMatrix::identity(dim);
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    m[(dim - 2, dim - 2)] = zero;
    m[(dim - 1, dim - 1)] = zero;
    m[(dim - 2, dim - 1)] = one;
    m[(dim - 1, dim - 2)] = one;
    m
}

/// The projector-product generator (1−σ_z)^{⊗(n−1)} ⊗ (1−σ_x) together
/// with its time t = π/2^n, satisfying exp(i·t·h) = gate matrix.
///
/// Defined for the multiply-controlled-X family (CNOT, Toffoli, ccx:n);
/// returns `None` for identity and custom gates.
pub fn paper_hamiltonian(g: &GateSpec) -> Option<(ComplexMatrix, f64)> {
    let n = match g {
        GateSpec::Cnot => 2,
        GateSpec::Toffoli => 3,
        GateSpec::MultiControlledX { qubits } if *qubits >= 2 => *qubits,
        _ => return None,
    };
    let one_minus_z = ComplexMatrix::from_real(2, &[0.0, 0.0, 0.0, 2.0]);
    let one_minus_x = ComplexMatrix::from_real(2, &[1.0, -1.0, -1.0, 1.0]);
    let mut h = one_minus_z.clone();
    for _ in 1..n - 1 {
        h = h.kron(&one_minus_z);
    }
    h = h.kron(&one_minus_x);
    Some((h, PI / (1u64 << n) as f64))
}

/// N = 2π·A·diag(n₁,…,n_d)·A† for integer shifts n_k over the eigenbasis A.
#[derive(Debug, Clone)]
pub struct ShiftOperator {
    pub base: SpectralDecomposition,
    pub integers: Vec<i64>,
    matrix: ComplexMatrix,
}

impl ShiftOperator {
    /// The realized Hermitian matrix N.
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }
}

/// Build the shift operator on the given eigenbasis. Uses exactly the basis
/// the decomposition carries; resampling bases inside degenerate blocks is
/// the branch search's job.
pub fn make_shift(base: &SpectralDecomposition, integers: &[i64]) -> Result<ShiftOperator> {
    if integers.len() != base.dim() {
        return Err(Error::DimensionMismatch {
            left: integers.len(),
            right: base.dim(),
        });
    }
    let diag: Vec<f64> = integers.iter().map(|&k| 2.0 * PI * k as f64).collect();
    let matrix = base.eigenvectors.conjugate_diag(&diag).hermitian_part();
    Ok(ShiftOperator {
        base: base.clone(),
        integers: integers.to_vec(),
        matrix,
    })
}

/// H' = h + N/t, generating the same unitary as h at time t:
/// exp(i·t·H') = exp(i·t·h).
pub fn shifted_hamiltonian(h: &ComplexMatrix, t: f64, s: &ShiftOperator) -> Result<ComplexMatrix> {
    if t == 0.0 {
        return Err(Error::ZeroTime);
    }
    if h.dim() != s.matrix.dim() {
        return Err(Error::DimensionMismatch {
            left: h.dim(),
            right: s.matrix.dim(),
        });
    }
    Ok(h + &s.matrix.scale_re(1.0 / t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::ComplexMatrix;
    use crate::pauli::{interaction_order, pauli_decompose};
    use crate::spectral::{matrix_exp_hermitian, spectral_decompose, MatrixKind};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn cnot_matrix_matches_displayed_permutation() {
        let m = gate_matrix(&GateSpec::Cnot).unwrap();
        let expect = ComplexMatrix::from_real(
            4,
            &[
                1.0, 0.0, 0.0, 0.0, //
                0.0, 1.0, 0.0, 0.0, //
                0.0, 0.0, 0.0, 1.0, //
                0.0, 0.0, 1.0, 0.0,
            ],
        );
        assert!((&m - &expect).frobenius_norm() == 0.0);
    }

    #[test]
    fn toffoli_swaps_states_6_and_7() {
        let m = gate_matrix(&GateSpec::Toffoli).unwrap();
        assert_eq!(m[(6, 7)], C64::new(1.0, 0.0));
        assert_eq!(m[(7, 6)], C64::new(1.0, 0.0));
        assert_eq!(m[(6, 6)], C64::new(0.0, 0.0));
        for i in 0..6 {
            assert_eq!(m[(i, i)], C64::new(1.0, 0.0));
        }
    }

    #[test]
    fn identity_gate() {
        let m = gate_matrix(&GateSpec::Identity { qubits: 1 }).unwrap();
        assert_eq!(m, ComplexMatrix::identity(2));
    }

    #[test]
    fn custom_gate_must_be_unitary() {
        let bad = GateSpec::Custom {
            label: "bad".into(),
            matrix: ComplexMatrix::from_real(2, &[1.0, 1.0, 0.0, 1.0]),
        };
        assert!(matches!(gate_matrix(&bad), Err(Error::NotUnitary { .. })));
    }

    #[test]
    fn paper_hamiltonians_generate_their_gates() {
        for (g, n) in [
            (GateSpec::Cnot, 2usize),
            (GateSpec::Toffoli, 3),
            (GateSpec::MultiControlledX { qubits: 4 }, 4),
        ] {
            let (h, t) = paper_hamiltonian(&g).unwrap();
            assert!((t - PI / (1u64 << n) as f64).abs() < 1e-15);
            let u = matrix_exp_hermitian(&h, t).unwrap();
            let expect = gate_matrix(&g).unwrap();
            assert!(
                (&u - &expect).frobenius_norm() < 1e-10,
                "exp(i t h) != gate for {}",
                g.label()
            );
            assert_eq!(interaction_order(&pauli_decompose(&h).unwrap()), n);
        }
    }

    #[test]
    fn zero_shift_is_zero_matrix() {
        let u = gate_matrix(&GateSpec::Cnot).unwrap();
        let base = spectral_decompose(&u, MatrixKind::Unitary).unwrap();
        let s = make_shift(&base, &[0, 0, 0, 0]).unwrap();
        assert!(s.matrix().frobenius_norm() < 1e-12);
    }

    #[test]
    fn diagonal_shift_on_identity_basis() {
        let base = spectral_decompose(&ComplexMatrix::identity(4), MatrixKind::Hermitian).unwrap();
        let s = make_shift(&base, &[1, 0, 0, 0]).unwrap();
        let mut expect = ComplexMatrix::zeros(4);
        expect[(0, 0)] = C64::new(2.0 * PI, 0.0);
        assert!((s.matrix() - &expect).frobenius_norm() < 1e-12);
    }

    #[test]
    fn shift_operator_laws_on_cnot_basis() {
        let u = gate_matrix(&GateSpec::Cnot).unwrap();
        let base = spectral_decompose(&u, MatrixKind::Unitary).unwrap();
        let s = make_shift(&base, &[1, -1, 2, 0]).unwrap();
        let n = s.matrix();
        assert!(n.is_hermitian(1e-10));
        let exp_n = matrix_exp_hermitian(n, 1.0).unwrap();
        assert!((&exp_n - &ComplexMatrix::identity(4)).frobenius_norm() < 1e-9);
    }

    #[test]
    fn shift_commutes_and_preserves_exponential() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (h, t) = paper_hamiltonian(&GateSpec::Toffoli).unwrap();
        let gate = gate_matrix(&GateSpec::Toffoli).unwrap();
        let base = spectral_decompose(&h, MatrixKind::Hermitian).unwrap();
        for _ in 0..20 {
            let ints: Vec<i64> = (0..8).map(|_| rng.gen_range(-2..=2)).collect();
            let s = make_shift(&base, &ints).unwrap();
            let n = s.matrix();
            let comm = &(&h * n) - &(n * &h);
            assert!(comm.frobenius_norm() < 1e-8);
            let shifted = shifted_hamiltonian(&h, t, &s).unwrap();
            let u = matrix_exp_hermitian(&shifted, t).unwrap();
            assert!((&u - &gate).frobenius_norm() < 1e-9);
        }
    }

    #[test]
    fn uniform_shift_adds_scaled_identity() {
        let (h, t) = paper_hamiltonian(&GateSpec::Cnot).unwrap();
        let base = spectral_decompose(&h, MatrixKind::Hermitian).unwrap();
        let s = make_shift(&base, &[1, 1, 1, 1]).unwrap();
        let shifted = shifted_hamiltonian(&h, t, &s).unwrap();
        // 2π/(π/4) = 8
        let expect = &h + &ComplexMatrix::identity(4).scale_re(8.0);
        assert!((&shifted - &expect).frobenius_norm() < 1e-9);
    }

    #[test]
    fn shift_rejects_wrong_length_and_zero_time() {
        let base = spectral_decompose(&ComplexMatrix::identity(4), MatrixKind::Hermitian).unwrap();
        assert!(matches!(
            make_shift(&base, &[0, 0]),
            Err(Error::DimensionMismatch { .. })
        ));
        let s = make_shift(&base, &[0, 0, 0, 0]).unwrap();
        assert!(matches!(
            shifted_hamiltonian(&ComplexMatrix::zeros(4), 0.0, &s),
            Err(Error::ZeroTime)
        ));
    }

    #[test]
    fn warm_up_identity_exp_of_sum_factorizes() {
        // exp(i(σ_z⊗1 + 1⊗σ_x)) = exp(iσ_z) ⊗ exp(iσ_x)
        let z = ComplexMatrix::from_real(2, &[1.0, 0.0, 0.0, -1.0]);
        let x = ComplexMatrix::from_real(2, &[0.0, 1.0, 1.0, 0.0]);
        let id2 = ComplexMatrix::identity(2);
        let h = &z.kron(&id2) + &id2.kron(&x);
        let lhs = matrix_exp_hermitian(&h, 1.0).unwrap();
        let rhs = matrix_exp_hermitian(&z, 1.0)
            .unwrap()
            .kron(&matrix_exp_hermitian(&x, 1.0).unwrap());
        assert!((&lhs - &rhs).frobenius_norm() < 1e-10);
    }
}
