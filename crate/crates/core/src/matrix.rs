//! Dense square complex matrices.
//!
//! Row-major storage over `num_complex::Complex<f64>`. This is the carrier
//! for all unitaries and Hamiltonians in the library; dimensions are small
//! (at most 64) so nothing here tries to be clever.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};

pub type C64 = num_complex::Complex<f64>;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Dense square matrix of complex values, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    /// Build from a closure over (row, col).
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    /// Build from row-major real entries.
    pub fn from_real(dim: usize, entries: &[f64]) -> Self {
        assert_eq!(entries.len(), dim * dim);
        Self {
            dim,
            data: entries.iter().map(|&x| C64::new(x, 0.0)).collect(),
        }
    }

    pub fn from_rows(rows: Vec<Vec<C64>>) -> Self {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            assert_eq!(row.len(), dim, "rows must form a square matrix");
            data.extend(row);
        }
        Self { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of qubits if the dimension is a power of two.
    pub fn qubits(&self) -> Result<usize> {
        let dim = self.dim;
        if dim == 0 || !dim.is_power_of_two() {
            return Err(Error::BadDimension { dim });
        }
        Ok(dim.trailing_zeros() as usize)
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)])
    }

    pub fn scale(&self, c: C64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&x| x * c).collect(),
        }
    }

    pub fn scale_re(&self, c: f64) -> Self {
        self.scale(C64::new(c, 0.0))
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Kronecker (tensor) product, `self` as the leftmost factor.
    pub fn kron(&self, other: &Self) -> Self {
        let (a, b) = (self.dim, other.dim);
        ComplexMatrix::from_fn(a * b, |i, j| self[(i / b, j / b)] * other[(i % b, j % b)])
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.re.is_finite() && x.im.is_finite())
    }

    /// ‖M − M†‖_F
    pub fn hermiticity_residual(&self) -> f64 {
        (self - &self.adjoint()).frobenius_norm()
    }

    /// ‖M·M† − 1‖_F
    pub fn unitarity_residual(&self) -> f64 {
        (&(self * &self.adjoint()) - &Self::identity(self.dim)).frobenius_norm()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_residual() < tol
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_residual() < tol
    }

    /// (M + M†)/2 — removes numerical anti-Hermitian noise.
    pub fn hermitian_part(&self) -> Self {
        let adj = self.adjoint();
        Self::from_fn(self.dim, |i, j| (self[(i, j)] + adj[(i, j)]) * 0.5)
    }

    /// Column `j` as a vector.
    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }

    /// Replace column `j`.
    pub fn set_column(&mut self, j: usize, col: &[C64]) {
        assert_eq!(col.len(), self.dim);
        for i in 0..self.dim {
            self[(i, j)] = col[i];
        }
    }

    /// A · diag(d) · A† for real diagonal d, with `self` as A.
    pub fn conjugate_diag(&self, diag: &[f64]) -> Self {
        self.conjugate_cdiag(&diag.iter().map(|&x| C64::new(x, 0.0)).collect::<Vec<_>>())
    }

    /// A · diag(d) · A† for complex diagonal d, with `self` as A.
    pub fn conjugate_cdiag(&self, diag: &[C64]) -> Self {
        assert_eq!(diag.len(), self.dim);
        let n = self.dim;
        ComplexMatrix::from_fn(n, |i, j| {
            (0..n).map(|k| self[(i, k)] * diag[k] * self[(j, k)].conj()).sum()
        })
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim);
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim);
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl fmt::Display for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            for j in 0..self.dim {
                if j > 0 {
                    write!(f, "  ")?;
                }
                let z = self[(i, j)];
                write!(f, "{:+.4}{:+.4}i", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Parse the matrix text format: line 1 is the qubit count n, then 2^n
/// lines each holding 2^n whitespace-separated `re,im` tokens.
pub fn parse_matrix_text(text: &str) -> Result<ComplexMatrix> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty input".into()))?;
    let n: usize = header
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad qubit count line: {header:?}")))?;
    if n == 0 || n > 6 {
        return Err(Error::Parse(format!("qubit count {n} out of range 1..=6")));
    }
    let dim = 1usize << n;
    let mut m = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        let line = lines
            .next()
            .ok_or_else(|| Error::Parse(format!("expected {dim} matrix rows, got {i}")))?;
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != dim {
            return Err(Error::Parse(format!(
                "row {i} has {} entries, expected {dim}",
                tokens.len()
            )));
        }
        for (j, tok) in tokens.iter().enumerate() {
            let (re, im) = tok
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("entry {tok:?} is not of the form re,im")))?;
            let re: f64 = re
                .parse()
                .map_err(|_| Error::Parse(format!("bad real part in {tok:?}")))?;
            let im: f64 = im
                .parse()
                .map_err(|_| Error::Parse(format!("bad imaginary part in {tok:?}")))?;
            m[(i, j)] = C64::new(re, im);
        }
    }
    if !m.is_finite() {
        return Err(Error::Parse("matrix contains non-finite entries".into()));
    }
    Ok(m)
}

/// Render a matrix in the text format accepted by [`parse_matrix_text`].
pub fn render_matrix_text(m: &ComplexMatrix) -> Result<String> {
    let n = m.qubits()?;
    let mut out = format!("{n}\n");
    for i in 0..m.dim() {
        let row: Vec<String> = m.row(i).iter().map(|z| format!("{},{}", z.re, z.im)).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    Ok(out)
}
