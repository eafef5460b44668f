//! Pauli tensor-product basis: string construction, Hilbert–Schmidt
//! decomposition of Hermitian operators, interaction order (weight), and
//! reconstruction.
//!
//! Convention: the leftmost letter is qubit 0 and corresponds to the most
//! significant bit of the computational basis index, so `ZX` on two qubits
//! is σ_z ⊗ σ_x and CNOT (control = qubit 0) has generator terms on `ZX`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matrix::{C64, ComplexMatrix};

/// Coefficients below this magnitude are dropped from stored decompositions
/// as numerical noise.
pub const DROP_TOL: f64 = 1e-12;

/// Coefficients below this magnitude do not count toward the interaction
/// order; this is the "is this coupling physically present" threshold.
pub const WEIGHT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    fn from_digit(d: usize) -> Self {
        match d {
            0 => Pauli::I,
            1 => Pauli::X,
            2 => Pauli::Y,
            3 => Pauli::Z,
            _ => unreachable!("base-4 digit"),
        }
    }

    fn digit(self) -> usize {
        match self {
            Pauli::I => 0,
            Pauli::X => 1,
            Pauli::Y => 2,
            Pauli::Z => 3,
        }
    }

    fn letter(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// A word over {I, X, Y, Z}, one letter per qubit.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PauliString(Vec<Pauli>);

impl PauliString {
    pub fn new(letters: Vec<Pauli>) -> Self {
        Self(letters)
    }

    pub fn identity(n: usize) -> Self {
        Self(vec![Pauli::I; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Pauli] {
        &self.0
    }

    /// Number of non-identity letters.
    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&p| p != Pauli::I).count()
    }

    /// Base-4 index of the string, most significant digit leftmost; this is
    /// also its rank in lexicographic order with I < X < Y < Z.
    pub fn index(&self) -> usize {
        self.0.iter().fold(0, |acc, p| acc * 4 + p.digit())
    }

    pub fn from_index(n: usize, mut idx: usize) -> Self {
        let mut letters = vec![Pauli::I; n];
        for i in (0..n).rev() {
            letters[i] = Pauli::from_digit(idx % 4);
            idx /= 4;
        }
        Self(letters)
    }

    /// Sparse row action: for basis row `i`, the single nonzero column of
    /// the string's matrix and the entry there.
    pub(crate) fn row_action(&self, i: usize) -> (usize, C64) {
        let n = self.0.len();
        let mut col = i;
        let mut val = C64::new(1.0, 0.0);
        for (q, &p) in self.0.iter().enumerate() {
            let bit_pos = n - 1 - q; // leftmost letter = most significant bit
            let b = (i >> bit_pos) & 1;
            match p {
                Pauli::I => {}
                Pauli::X => col ^= 1 << bit_pos,
                Pauli::Y => {
                    col ^= 1 << bit_pos;
                    // Y[0][1] = −i, Y[1][0] = +i
                    val *= if b == 0 {
                        C64::new(0.0, -1.0)
                    } else {
                        C64::new(0.0, 1.0)
                    };
                }
                Pauli::Z => {
                    if b == 1 {
                        val = -val;
                    }
                }
            }
        }
        (col, val)
    }

    /// Dense 2^n × 2^n matrix of the string.
    pub fn as_matrix(&self) -> ComplexMatrix {
        let dim = 1usize << self.0.len();
        let mut m = ComplexMatrix::zeros(dim);
        for i in 0..dim {
            let (col, val) = self.row_action(i);
            m[(i, col)] = val;
        }
        m
    }

    /// Tr(P·h), using the one-nonzero-per-row structure of P.
    pub fn trace_against(&self, h: &ComplexMatrix) -> C64 {
        let dim = h.dim();
        (0..dim)
            .map(|i| {
                let (col, val) = self.row_action(i);
                val * h[(col, i)]
            })
            .sum()
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &p in &self.0 {
            write!(f, "{}", p.letter())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                'I' => Ok(Pauli::I),
                'X' => Ok(Pauli::X),
                'Y' => Ok(Pauli::Y),
                'Z' => Ok(Pauli::Z),
                other => Err(Error::Parse(format!("invalid Pauli letter {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(PauliString)
    }
}

/// All 4^n strings of weight ≤ k, in lexicographic order (I < X < Y < Z).
pub fn strings_of_weight_at_most(n: usize, k: usize) -> Vec<PauliString> {
    assert!(k <= n, "weight bound {k} exceeds qubit count {n}");
    (0..1usize << (2 * n))
        .map(|idx| PauliString::from_index(n, idx))
        .filter(|s| s.weight() <= k)
        .collect()
}

/// Map from Pauli string to real coefficient, representing a Hermitian
/// operator on n qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliDecomposition {
    pub n: usize,
    pub coeffs: BTreeMap<PauliString, f64>,
}

impl PauliDecomposition {
    pub fn coeff(&self, s: &PauliString) -> f64 {
        self.coeffs.get(s).copied().unwrap_or(0.0)
    }

    /// Entries as (rendered string, coefficient) in deterministic order.
    pub fn entries(&self) -> Vec<(String, f64)> {
        self.coeffs.iter().map(|(s, &c)| (s.to_string(), c)).collect()
    }
}

/// Hilbert–Schmidt coefficients Tr(P_s·h)/2^n for every string index s, in
/// index order. The real parts are returned; callers needing the Hermitian
/// guarantee go through [`pauli_decompose`].
pub(crate) fn coefficient_vector(h: &ComplexMatrix) -> Result<Vec<f64>> {
    let n = h.qubits()?;
    let dim = h.dim() as f64;
    Ok((0..1usize << (2 * n))
        .map(|idx| PauliString::from_index(n, idx).trace_against(h).re / dim)
        .collect())
}

/// Weights of all 4^n string indices, in index order.
pub(crate) fn index_weights(n: usize) -> Vec<usize> {
    (0..1usize << (2 * n))
        .map(|idx| PauliString::from_index(n, idx).weight())
        .collect()
}

/// Decompose a Hermitian matrix over the Pauli basis.
///
/// Coefficients with |c| < [`DROP_TOL`] are omitted. Fails if the matrix is
/// not Hermitian to 1e-10 or if any coefficient carries imaginary residue
/// above 1e-10.
pub fn pauli_decompose(h: &ComplexMatrix) -> Result<PauliDecomposition> {
    let n = h.qubits()?;
    let residual = h.hermiticity_residual();
    if residual >= 1e-10 {
        return Err(Error::NotHermitian {
            residual,
            tol: 1e-10,
        });
    }
    let dim = h.dim() as f64;
    let mut coeffs = BTreeMap::new();
    for idx in 0..1usize << (2 * n) {
        let s = PauliString::from_index(n, idx);
        let c = s.trace_against(h) / dim;
        if c.im.abs() >= 1e-10 {
            return Err(Error::NotHermitian {
                residual: c.im.abs(),
                tol: 1e-10,
            });
        }
        if c.re.abs() >= DROP_TOL {
            coeffs.insert(s, c.re);
        }
    }
    Ok(PauliDecomposition { n, coeffs })
}

/// Σ_s coeffs[s] · P_s as a dense matrix.
pub fn reconstruct(d: &PauliDecomposition) -> ComplexMatrix {
    let dim = 1usize << d.n;
    let mut m = ComplexMatrix::zeros(dim);
    for (s, &c) in &d.coeffs {
        for i in 0..dim {
            let (col, val) = s.row_action(i);
            m[(i, col)] += val * c;
        }
    }
    m
}

/// Maximum weight among strings with |coeff| ≥ [`WEIGHT_TOL`]; 0 for the
/// zero operator.
pub fn interaction_order(d: &PauliDecomposition) -> usize {
    d.coeffs
        .iter()
        .filter(|(_, &c)| c.abs() >= WEIGHT_TOL)
        .map(|(s, _)| s.weight())
        .max()
        .unwrap_or(0)
}
