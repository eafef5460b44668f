//! Spectral decomposition of Hermitian and unitary matrices, the matrix
//! exponential exp(i·s·H), and the principal logarithm.
//!
//! The eigensolver is a cyclic Jacobi iteration for complex Hermitian
//! matrices. Unitary input is handled by jointly diagonalizing its
//! commuting Hermitian part (U+U†)/2 and anti-Hermitian part (U−U†)/(2i):
//! the first fixes the eigenspaces up to cosine degeneracy, the second
//! splits those inside each degenerate cluster.
//!
//! Branch convention for the principal logarithm: eigenphases lie in
//! (−π, π], with eigenvalue −1 mapped to +π.

use crate::error::{Error, Result};
use crate::matrix::{C64, ComplexMatrix};

/// Classification of the input handed to [`spectral_decompose`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixKind {
    Hermitian,
    Unitary,
}

/// Eigenvalues plus the unitary eigenvector matrix A with M = A·diag(λ)·A†.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<C64>,
    /// Columns are orthonormal eigenvectors.
    pub eigenvectors: ComplexMatrix,
}

/// Tolerance below which the classification predicate must hold.
pub const CLASS_TOL: f64 = 1e-10;

/// Eigenvalues closer than this (relative to the 2π phase scale) are
/// treated as one degenerate block.
pub const CLUSTER_TOL: f64 = 1e-8;

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvectors.dim()
    }

    /// A · diag(λ) · A†
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.eigenvectors.conjugate_cdiag(&self.eigenvalues)
    }

    /// Indices grouped into degenerate blocks: |λ_i − λ_j| < `tol` chains
    /// indices into one block. The blocks partition 0..dim.
    pub fn degenerate_blocks(&self, tol: f64) -> Vec<Vec<usize>> {
        let n = self.eigenvalues.len();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for i in 0..n {
            let mut placed = false;
            for block in blocks.iter_mut() {
                if block
                    .iter()
                    .any(|&j| (self.eigenvalues[i] - self.eigenvalues[j]).norm() < tol)
                {
                    block.push(i);
                    placed = true;
                    break;
                }
            }
            if !placed {
                blocks.push(vec![i]);
            }
        }
        blocks
    }

    /// Eigenphases arg(λ_k) in (−π, π], with −1 mapped to +π.
    pub fn eigenphases(&self) -> Vec<f64> {
        self.eigenvalues.iter().map(|l| principal_phase(*l)).collect()
    }
}

/// arg(λ) normalized into (−π, π].
pub fn principal_phase(lambda: C64) -> f64 {
    let theta = lambda.arg();
    // atan2 returns [−π, π]; fold the closed lower endpoint onto +π.
    if theta <= -std::f64::consts::PI {
        theta + 2.0 * std::f64::consts::PI
    } else {
        theta
    }
}

/// Cyclic Jacobi eigensolver for a complex Hermitian matrix.
///
/// Returns unsorted (eigenvalues, eigenvector matrix V) with
/// M ≈ V·diag(λ)·V†. Capped at 100·dim² sweeps.
fn jacobi_hermitian(m: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    let n = m.dim();
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    if n == 1 {
        return Ok((vec![a[(0, 0)].re], v));
    }

    let scale = a.frobenius_norm().max(1.0);
    let target = 1e-15 * scale;
    let max_sweeps = 100 * n * n;

    for _sweep in 0..max_sweeps {
        let off: f64 = (0..n)
            .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
            .map(|(p, q)| a[(p, q)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off < target {
            let eigenvalues = (0..n).map(|i| a[(i, i)].re).collect();
            return Ok((eigenvalues, v));
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r < 1e-300 {
                    continue;
                }
                let phase = apq / r; // e^{iφ}
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let tau = (aqq - app) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // Rotation R: R[p][p]=c, R[p][q]=s·e^{iφ}, R[q][p]=−s·e^{−iφ}, R[q][q]=c.
                // A ← R†·A·R; V ← V·R.
                let sp = phase * s; // s·e^{iφ}
                // Column update B = A·R.
                for i in 0..n {
                    let aip = a[(i, p)];
                    let aiq = a[(i, q)];
                    a[(i, p)] = aip * c - aiq * sp.conj();
                    a[(i, q)] = aip * sp + aiq * c;
                }
                // Row update A ← R†·B.
                for j in 0..n {
                    let apj = a[(p, j)];
                    let aqj = a[(q, j)];
                    a[(p, j)] = apj * c - aqj * sp;
                    a[(q, j)] = apj * sp.conj() + aqj * c;
                }
                for i in 0..n {
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = vip * c - viq * sp.conj();
                    v[(i, q)] = vip * sp + viq * c;
                }
            }
        }
    }

    let off: f64 = (0..n)
        .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
        .map(|(p, q)| a[(p, q)].norm_sqr())
        .sum::<f64>()
        .sqrt();
    Err(Error::ConvergenceFailure { max_sweeps, off })
}

/// Spectrally decompose a Hermitian or unitary matrix.
///
/// Eigenvalues come back in a deterministic total order: ascending value
/// for Hermitian input, ascending principal phase for unitary input, ties
/// by pre-sort index. The reconstruction residual ‖A·diag(λ)·A† − m‖_F is
/// verified to be below 1e-9.
pub fn spectral_decompose(m: &ComplexMatrix, kind: MatrixKind) -> Result<SpectralDecomposition> {
    match kind {
        MatrixKind::Hermitian => {
            let residual = m.hermiticity_residual();
            if residual >= CLASS_TOL {
                return Err(Error::NotNormal {
                    expected: "Hermitian",
                    residual,
                    tol: CLASS_TOL,
                });
            }
            let (evals, vecs) = jacobi_hermitian(m)?;
            let mut order: Vec<usize> = (0..evals.len()).collect();
            order.sort_by(|&i, &j| evals[i].partial_cmp(&evals[j]).unwrap().then(i.cmp(&j)));
            let decomp = reorder(
                order.iter().map(|&i| C64::new(evals[i], 0.0)).collect(),
                &vecs,
                &order,
            );
            check_residual(&decomp, m)?;
            Ok(decomp)
        }
        MatrixKind::Unitary => {
            let residual = m.unitarity_residual();
            if residual >= CLASS_TOL {
                return Err(Error::NotNormal {
                    expected: "unitary",
                    residual,
                    tol: CLASS_TOL,
                });
            }
            let decomp = decompose_unitary(m)?;
            check_residual(&decomp, m)?;
            Ok(decomp)
        }
    }
}

fn check_residual(decomp: &SpectralDecomposition, m: &ComplexMatrix) -> Result<()> {
    let residual = (&decomp.reconstruct() - m).frobenius_norm();
    if residual >= 1e-9 {
        return Err(Error::ConvergenceFailure {
            max_sweeps: 0,
            off: residual,
        });
    }
    Ok(())
}

fn reorder(evals: Vec<C64>, vecs: &ComplexMatrix, order: &[usize]) -> SpectralDecomposition {
    let n = vecs.dim();
    let mut a = ComplexMatrix::zeros(n);
    for (new_j, &old_j) in order.iter().enumerate() {
        for i in 0..n {
            a[(i, new_j)] = vecs[(i, old_j)];
        }
    }
    SpectralDecomposition {
        eigenvalues: evals,
        eigenvectors: a,
    }
}

fn decompose_unitary(u: &ComplexMatrix) -> Result<SpectralDecomposition> {
    let n = u.dim();
    let uh = u.adjoint();
    let half = C64::new(0.5, 0.0);
    let cos_part = (u + &uh).scale(half);
    let sin_part = (u - &uh).scale(C64::new(0.0, -0.5));

    let (cos_evals, mut vecs) = jacobi_hermitian(&cos_part)?;

    // Cluster the cosine eigenvalues; inside each cluster diagonalize the
    // projected sine part to split eigenphases ±θ that share a cosine.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| cos_evals[i].partial_cmp(&cos_evals[j]).unwrap().then(i.cmp(&j)));
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for &i in &order {
        match clusters.last_mut() {
            Some(cluster)
                if (cos_evals[i] - cos_evals[*cluster.last().unwrap()]).abs() < CLUSTER_TOL =>
            {
                cluster.push(i)
            }
            _ => clusters.push(vec![i]),
        }
    }
    for cluster in &clusters {
        if cluster.len() < 2 {
            continue;
        }
        let m = cluster.len();
        // B = V_c† · S · V_c, Hermitian of size m.
        let cols: Vec<Vec<C64>> = cluster.iter().map(|&j| vecs.column(j)).collect();
        let b = ComplexMatrix::from_fn(m, |r, c| {
            let mut acc = C64::new(0.0, 0.0);
            for i in 0..n {
                for l in 0..n {
                    acc += cols[r][i].conj() * sin_part[(i, l)] * cols[c][l];
                }
            }
            acc
        });
        let (_, w) = jacobi_hermitian(&b)?;
        // V_c ← V_c · W
        for (c_new, &j) in cluster.iter().enumerate() {
            let mut col = vec![C64::new(0.0, 0.0); n];
            for (c_old, old_col) in cols.iter().enumerate() {
                let wc = w[(c_old, c_new)];
                for i in 0..n {
                    col[i] += old_col[i] * wc;
                }
            }
            vecs.set_column(j, &col);
        }
    }

    // Rayleigh quotients give the unitary eigenvalues; renormalize onto
    // the unit circle to strip second-order noise.
    let mut evals: Vec<C64> = (0..n)
        .map(|j| {
            let col = vecs.column(j);
            let mut acc = C64::new(0.0, 0.0);
            for i in 0..n {
                for l in 0..n {
                    acc += col[i].conj() * u[(i, l)] * col[l];
                }
            }
            acc / acc.norm()
        })
        .collect();

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        principal_phase(evals[i])
            .partial_cmp(&principal_phase(evals[j]))
            .unwrap()
            .then(i.cmp(&j))
    });
    evals = order.iter().map(|&i| evals[i]).collect();
    Ok(reorder(evals, &vecs, &order))
}

/// exp(i·scale·h) for Hermitian h, via the spectral decomposition.
pub fn matrix_exp_hermitian(h: &ComplexMatrix, scale: f64) -> Result<ComplexMatrix> {
    let decomp = spectral_decompose(h, MatrixKind::Hermitian)?;
    let phases: Vec<C64> = decomp
        .eigenvalues
        .iter()
        .map(|l| C64::from_polar(1.0, scale * l.re))
        .collect();
    Ok(decomp.eigenvectors.conjugate_cdiag(&phases))
}

/// Hermitian H with exp(iH) = u and all eigenvalues of H in (−π, π].
pub fn principal_log(u: &ComplexMatrix) -> Result<ComplexMatrix> {
    let decomp = spectral_decompose(u, MatrixKind::Unitary)?;
    let phases = decomp.eigenphases();
    Ok(decomp.eigenvectors.conjugate_diag(&phases).hermitian_part())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn random_hermitian(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
        let g = ComplexMatrix::from_fn(dim, |_, _| {
            C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
        });
        (&g + &g.adjoint()).scale_re(0.5)
    }

    pub(crate) fn random_unitary(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
        let h = random_hermitian(rng, dim);
        matrix_exp_hermitian(&h, 1.3).unwrap()
    }

    #[test]
    fn identity_decomposes_trivially() {
        let id = ComplexMatrix::identity(4);
        let d = spectral_decompose(&id, MatrixKind::Unitary).unwrap();
        for l in &d.eigenvalues {
            assert!((l - C64::new(1.0, 0.0)).norm() < 1e-12);
        }
        assert!((&d.eigenvectors * &d.eigenvectors.adjoint())
            .is_unitary(1e-12));
    }

    #[test]
    fn sigma_z_already_diagonal() {
        let z = ComplexMatrix::from_real(2, &[1.0, 0.0, 0.0, -1.0]);
        let d = spectral_decompose(&z, MatrixKind::Hermitian).unwrap();
        // Hermitian ordering is ascending value.
        assert!((d.eigenvalues[0].re + 1.0).abs() < 1e-14);
        assert!((d.eigenvalues[1].re - 1.0).abs() < 1e-14);
    }

    #[test]
    fn toffoli_eigenphases() {
        // Permutation swapping basis states 6 and 7: eigenphase 0 with
        // multiplicity 7 and π with multiplicity 1.
        let mut t = ComplexMatrix::identity(8);
        t[(6, 6)] = C64::new(0.0, 0.0);
        t[(7, 7)] = C64::new(0.0, 0.0);
        t[(6, 7)] = C64::new(1.0, 0.0);
        t[(7, 6)] = C64::new(1.0, 0.0);
        let d = spectral_decompose(&t, MatrixKind::Unitary).unwrap();
        let phases = d.eigenphases();
        let zeros = phases.iter().filter(|p| p.abs() < 1e-9).count();
        let pis = phases
            .iter()
            .filter(|p| (p.abs() - std::f64::consts::PI).abs() < 1e-9)
            .count();
        assert_eq!((zeros, pis), (7, 1));
        let blocks = d.degenerate_blocks(CLUSTER_TOL);
        let mut sizes: Vec<usize> = blocks.iter().map(|b| b.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 7]);
    }

    #[test]
    fn spectral_reconstruction_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for dim in [2usize, 4, 8] {
            for _ in 0..100 {
                let h = random_hermitian(&mut rng, dim);
                let d = spectral_decompose(&h, MatrixKind::Hermitian).unwrap();
                assert!((&d.reconstruct() - &h).frobenius_norm() < 1e-9);
                for l in &d.eigenvalues {
                    assert!(l.im.abs() < 1e-10);
                }
                let u = random_unitary(&mut rng, dim);
                let du = spectral_decompose(&u, MatrixKind::Unitary).unwrap();
                assert!((&du.reconstruct() - &u).frobenius_norm() < 1e-9);
            }
        }
    }

    #[test]
    fn exp_of_zero_is_identity() {
        let z = ComplexMatrix::zeros(4);
        let e = matrix_exp_hermitian(&z, 0.7).unwrap();
        assert!((&e - &ComplexMatrix::identity(4)).frobenius_norm() < 1e-12);
    }

    #[test]
    fn exp_is_unitary_on_random_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let h = random_hermitian(&mut rng, 4);
            let e = matrix_exp_hermitian(&h, 2.1).unwrap();
            assert!(e.is_unitary(1e-10));
        }
    }

    #[test]
    fn principal_log_of_identity_is_zero() {
        let h = principal_log(&ComplexMatrix::identity(8)).unwrap();
        assert!(h.frobenius_norm() < 1e-10);
    }

    #[test]
    fn branch_convention_maps_minus_one_to_pi() {
        let u = ComplexMatrix::from_real(2, &[1.0, 0.0, 0.0, -1.0]);
        let h = principal_log(&u).unwrap();
        let expect = ComplexMatrix::from_real(2, &[0.0, 0.0, 0.0, std::f64::consts::PI]);
        assert!((&h - &expect).frobenius_norm() < 1e-12);
    }

    #[test]
    fn log_exp_roundtrip_inside_principal_strip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for dim in [2usize, 4, 8] {
            for _ in 0..40 {
                // Spectrum strictly inside (−π, π).
                let h = random_hermitian(&mut rng, dim).scale_re(1.5);
                let d = spectral_decompose(&h, MatrixKind::Hermitian).unwrap();
                if d.eigenvalues
                    .iter()
                    .any(|l| l.re.abs() > std::f64::consts::PI - 1e-3)
                {
                    continue;
                }
                let u = matrix_exp_hermitian(&h, 1.0).unwrap();
                let back = principal_log(&u).unwrap();
                assert!((&back - &h).frobenius_norm() < 1e-8);
            }
        }
    }

    #[test]
    fn rejects_misclassified_input() {
        let z = ComplexMatrix::from_real(2, &[1.0, 0.3, 0.3, -1.0]);
        assert!(matches!(
            spectral_decompose(&z, MatrixKind::Unitary),
            Err(Error::NotNormal { .. })
        ));
        let mut skew = ComplexMatrix::zeros(2);
        skew[(0, 1)] = C64::new(1.0, 0.0);
        assert!(matches!(
            spectral_decompose(&skew, MatrixKind::Hermitian),
            Err(Error::NotNormal { .. })
        ));
    }
}
