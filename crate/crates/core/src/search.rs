//! Numerical probes of the lowest reachable interaction order for a gate:
//! exhaustive enumeration of logarithm branches (integer eigenphase shifts,
//! with seeded Haar resampling of degenerate eigenbases) and variational
//! fitting of a k-local generator by multi-start L-BFGS on the Frobenius
//! distance.

use std::f64::consts::PI;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gates::{gate_matrix, GateSpec};
use crate::matrix::{C64, ComplexMatrix};
use crate::optim;
use crate::pauli::{
    coefficient_vector, index_weights, interaction_order, pauli_decompose,
    strings_of_weight_at_most, PauliDecomposition, PauliString, WEIGHT_TOL,
};
use crate::spectral::{matrix_exp_hermitian, spectral_decompose, MatrixKind, CLUSTER_TOL};

/// Hard cap on the number of integer vectors a single enumeration may visit.
pub const BRANCH_GUARD: u128 = 100_000_000;

/// One examined logarithm branch: the integer shift vector and the
/// Hamiltonian H + 2π·A·diag(n)·A† it induces.
#[derive(Debug, Clone)]
pub struct LogBranch {
    pub integers: Vec<i64>,
    /// Index of the degenerate-basis resample the branch was found in
    /// (0 = the eigenbasis returned by the spectral decomposition).
    pub basis_sample: usize,
    pub hamiltonian: ComplexMatrix,
    pub decomposition: PauliDecomposition,
}

/// Result of an exhaustive branch enumeration.
#[derive(Debug, Clone)]
pub struct BranchReport {
    pub gate: GateSpec,
    pub bound: i64,
    pub basis_samples: usize,
    pub branches_examined: u64,
    pub min_weight: usize,
    pub argmin: LogBranch,
    pub seed: u64,
}

impl BranchReport {
    pub fn to_json(&self) -> Value {
        json!({
            "gate": self.gate.label(),
            "bound": self.bound,
            "basis_samples": self.basis_samples,
            "branches_examined": self.branches_examined,
            "min_weight": self.min_weight,
            "argmin_integers": self.argmin.integers,
            "argmin_basis_sample": self.argmin.basis_sample,
            "argmin_pauli": pauli_json(&self.argmin.decomposition),
            "seed": self.seed,
            "wall_parameters": {
                "weight_tol": WEIGHT_TOL,
                "cluster_tol": CLUSTER_TOL,
                "exp_check_tol": 1e-8,
            },
        })
    }
}

/// Result of a variational k-local fit.
#[derive(Debug, Clone)]
pub struct VariationalReport {
    pub gate: GateSpec,
    pub locality: usize,
    pub parameter_count: usize,
    pub restarts: usize,
    pub best_theta: Vec<f64>,
    pub best_distance: f64,
    /// Best distance reached by each restart, in restart order.
    pub history: Vec<f64>,
    pub seed: u64,
    pub max_iters: usize,
    pub optimizer: &'static str,
}

impl VariationalReport {
    pub fn to_json(&self) -> Value {
        json!({
            "gate": self.gate.label(),
            "locality": self.locality,
            "parameter_count": self.parameter_count,
            "restarts": self.restarts,
            "best_distance": self.best_distance,
            "history": self.history,
            "best_theta": self.best_theta,
            "seed": self.seed,
            "wall_parameters": {
                "optimizer": self.optimizer,
                "max_iters": self.max_iters,
            },
        })
    }
}

pub(crate) fn pauli_json(d: &PauliDecomposition) -> Value {
    Value::Array(
        d.entries()
            .into_iter()
            .map(|(s, c)| json!({"string": s, "coeff": c}))
            .collect(),
    )
}

/// Frobenius norm ‖u − v‖_F.
pub fn distance(u: &ComplexMatrix, v: &ComplexMatrix) -> Result<f64> {
    if u.dim() != v.dim() {
        return Err(Error::DimensionMismatch {
            left: u.dim(),
            right: v.dim(),
        });
    }
    Ok((u - v).frobenius_norm())
}

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the
/// R-diagonal phase convention.
fn haar_unitary(dim: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let g = ComplexMatrix::from_fn(dim, |_, _| {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    // Modified Gram-Schmidt on columns.
    let mut cols: Vec<Vec<C64>> = (0..dim).map(|j| g.column(j)).collect();
    for j in 0..dim {
        for _pass in 0..2 {
            for i in 0..j {
                let proj: C64 = (0..dim).map(|r| cols[i][r].conj() * cols[j][r]).sum();
                for r in 0..dim {
                    let c = cols[i][r];
                    cols[j][r] -= proj * c;
                }
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in cols[j].iter_mut() {
            *z /= norm;
        }
    }
    let mut q = ComplexMatrix::zeros(dim);
    for (j, col) in cols.iter().enumerate() {
        q.set_column(j, col);
    }
    q
}

/// Deterministic per-unit RNG stream derived from the run seed.
fn stream_rng(seed: u64, unit: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (unit.wrapping_add(1)).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Decode branch index `m` into the integer vector in [−B, B]^dim, most
/// significant digit first; ascending `m` is ascending lexicographic order.
fn decode_branch(mut m: u64, dim: usize, radix: u64, bound: i64) -> Vec<i64> {
    let mut digits = vec![0i64; dim];
    for k in (0..dim).rev() {
        digits[k] = (m % radix) as i64 - bound;
        m /= radix;
    }
    digits
}

/// Exhaustively enumerate all integer shift vectors in [−B, B]^{2^n} (and,
/// when the gate spectrum is degenerate, `basis_samples` seeded Haar
/// resamplings of each degenerate block basis), minimizing the Pauli weight
/// of the shifted Hamiltonian A·diag(θ_k + 2π·n_k)·A†.
///
/// Ties break to the lexicographically smallest integer vector, then the
/// lowest basis-sample index, so reports are reproducible given the seed.
pub fn enumerate_branches(
    g: &GateSpec,
    bound: i64,
    basis_samples: usize,
    seed: u64,
) -> Result<BranchReport> {
    assert!(bound >= 0, "bound must be nonnegative");
    let u = gate_matrix(g)?;
    let n = u.qubits()?;
    let dim = u.dim();
    let radix = (2 * bound + 1) as u128;
    let per_basis = radix.checked_pow(dim as u32).unwrap_or(u128::MAX);
    let total = per_basis.saturating_mul(basis_samples as u128 + 1);
    if n > 4 || total > BRANCH_GUARD {
        return Err(Error::SearchSpaceTooLarge {
            size: total,
            guard: BRANCH_GUARD,
        });
    }
    let per_basis = per_basis as u64;
    let radix = radix as u64;

    let decomp = spectral_decompose(&u, MatrixKind::Unitary)?;
    let theta = decomp.eigenphases();
    let blocks = decomp.degenerate_blocks(CLUSTER_TOL);
    let has_degeneracy = blocks.iter().any(|b| b.len() > 1);
    let effective_samples = if has_degeneracy { basis_samples } else { 0 };

    // Basis 0 is the eigenbasis as returned; each further sample rotates
    // every degenerate block by an independent Haar unitary.
    let mut bases: Vec<ComplexMatrix> = vec![decomp.eigenvectors.clone()];
    for sample in 1..=effective_samples {
        let mut rng = stream_rng(seed, sample as u64);
        let mut basis = decomp.eigenvectors.clone();
        for block in &blocks {
            if block.len() < 2 {
                continue;
            }
            let q = haar_unitary(block.len(), &mut rng);
            let old: Vec<Vec<C64>> = block.iter().map(|&j| basis.column(j)).collect();
            for (c_new, &j) in block.iter().enumerate() {
                let mut col = vec![C64::new(0.0, 0.0); dim];
                for (c_old, old_col) in old.iter().enumerate() {
                    let w = q[(c_old, c_new)];
                    for r in 0..dim {
                        col[r] += old_col[r] * w;
                    }
                }
                basis.set_column(j, &col);
            }
        }
        bases.push(basis);
    }

    // Strings scanned in descending weight: a branch's weight is the first
    // nonzero coefficient met, so high-weight branches exit early.
    let weights = index_weights(n);
    let mut scan_order: Vec<usize> = (0..weights.len()).collect();
    scan_order.sort_by(|&a, &b| weights[b].cmp(&weights[a]).then(a.cmp(&b)));

    // Global argmin under the total order (weight, vector, sample).
    let mut best: Option<(usize, u64, usize)> = None;
    for (sample, basis) in bases.iter().enumerate() {
        // Pauli coefficients are linear in the shift integers:
        // coeffs(H') = coeffs(H0) + Σ_k n_k · coeffs(2π·a_k·a_k†).
        let h0 = basis.conjugate_diag(&theta).hermitian_part();
        let c0 = coefficient_vector(&h0)?;
        let rank_one: Vec<Vec<f64>> = (0..dim)
            .map(|k| {
                let col = basis.column(k);
                let r = ComplexMatrix::from_fn(dim, |i, j| {
                    col[i] * col[j].conj() * 2.0 * PI
                });
                coefficient_vector(&r.hermitian_part())
            })
            .collect::<Result<_>>()?;

        let local = (0..per_basis)
            .into_par_iter()
            .map(|m| {
                let digits = decode_branch(m, dim, radix, bound);
                let mut w = 0usize;
                for &s in &scan_order {
                    if weights[s] <= w {
                        break; // scan_order is weight-descending
                    }
                    let mut val = c0[s];
                    for (k, &nk) in digits.iter().enumerate() {
                        val += nk as f64 * rank_one[k][s];
                    }
                    if val.abs() >= WEIGHT_TOL {
                        w = weights[s];
                        break;
                    }
                }
                (w, m)
            })
            .min()
            .expect("per_basis >= 1");
        let candidate = (local.0, local.1, sample);
        if best.map_or(true, |b| candidate < b) {
            best = Some(candidate);
        }
    }
    let (min_weight, argmin_m, argmin_sample) = best.expect("at least one basis");

    let integers = decode_branch(argmin_m, dim, radix, bound);
    let basis = &bases[argmin_sample];
    let shifted: Vec<f64> = theta
        .iter()
        .zip(&integers)
        .map(|(&t, &nk)| t + 2.0 * PI * nk as f64)
        .collect();
    let hamiltonian = basis.conjugate_diag(&shifted).hermitian_part();
    let decomposition = pauli_decompose(&hamiltonian)?;
    debug_assert_eq!(interaction_order(&decomposition), min_weight);

    // Every reported branch must still generate the gate.
    let regenerated = matrix_exp_hermitian(&hamiltonian, 1.0)?;
    let residual = distance(&regenerated, &u)?;
    if residual >= 1e-8 {
        return Err(Error::ConvergenceFailure {
            max_sweeps: 0,
            off: residual,
        });
    }

    Ok(BranchReport {
        gate: g.clone(),
        bound,
        basis_samples,
        branches_examined: per_basis * (effective_samples as u64 + 1),
        min_weight,
        argmin: LogBranch {
            integers,
            basis_sample: argmin_sample,
            hamiltonian,
            decomposition,
        },
        seed,
    })
}

/// Value and gradient of ‖exp(i·Σθ_s·P_s) − U‖²_F.
///
/// The gradient uses the divided-difference (Daleckii–Krein) form of the
/// exponential differential in the eigenbasis of h(θ).
fn fit_objective(theta: &[f64], strings: &[PauliString], u: &ComplexMatrix) -> (f64, Vec<f64>) {
    let dim = u.dim();
    let mut h = ComplexMatrix::zeros(dim);
    for (s, &c) in strings.iter().zip(theta) {
        for i in 0..dim {
            let (col, val) = s.row_action(i);
            h[(i, col)] += val * c;
        }
    }
    let decomp = spectral_decompose(&h, MatrixKind::Hermitian)
        .expect("h(θ) is Hermitian by construction");
    let lam: Vec<f64> = decomp.eigenvalues.iter().map(|l| l.re).collect();
    let phases: Vec<C64> = lam.iter().map(|&l| C64::from_polar(1.0, l)).collect();
    let a = &decomp.eigenvectors;
    let e = a.conjugate_cdiag(&phases);
    let diff = &e - u;
    let f = diff.frobenius_norm().powi(2);

    let w = &(&a.adjoint() * &diff) * a;
    // T_{jk} = conj(W_{jk}) · Φ_{jk} with Φ the divided difference of e^{ix}.
    let t = ComplexMatrix::from_fn(dim, |j, k| {
        let phi = if (lam[j] - lam[k]).abs() > 1e-9 {
            (phases[j] - phases[k]) / (lam[j] - lam[k])
        } else {
            C64::new(0.0, 1.0) * C64::from_polar(1.0, 0.5 * (lam[j] + lam[k]))
        };
        w[(j, k)].conj() * phi
    });
    // grad_s = 2·Re Tr(P_s · A·Tᵀ·A†)
    let kmat = &(a * &t.transpose()) * &a.adjoint();
    let grad = strings
        .iter()
        .map(|s| 2.0 * s.trace_against(&kmat).re)
        .collect();
    (f, grad)
}

/// Multi-start variational fit of a weight-≤k generator for the gate,
/// minimizing f(θ) = ‖exp(i·h(θ)) − U‖_F with h(θ) = Σ θ_s·P_s over all
/// Pauli strings of weight ≤ k.
///
/// Initial points are drawn uniformly from [−π, π]^d per restart from a
/// seeded generator, so the report is deterministic given the seed.
pub fn variational_fit(
    g: &GateSpec,
    locality: usize,
    restarts: usize,
    max_iters: usize,
    seed: u64,
) -> Result<VariationalReport> {
    let u = gate_matrix(g)?;
    let n = u.qubits()?;
    assert!(locality <= n, "locality {locality} exceeds qubit count {n}");
    assert!(restarts >= 1, "need at least one restart");
    let strings = strings_of_weight_at_most(n, locality);
    let d = strings.len();

    let runs: Vec<(Vec<f64>, f64)> = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = stream_rng(seed, r as u64);
            let x0: Vec<f64> = (0..d).map(|_| rng.gen_range(-PI..=PI)).collect();
            let (x, f) = optim::minimize(x0, max_iters, |theta| fit_objective(theta, &strings, &u));
            (x, f.max(0.0).sqrt())
        })
        .collect();

    let history: Vec<f64> = runs.iter().map(|(_, f)| *f).collect();
    let best_idx = (0..restarts)
        .min_by(|&a, &b| history[a].partial_cmp(&history[b]).unwrap().then(a.cmp(&b)))
        .unwrap();
    let best_theta = runs[best_idx].0.clone();

    // Recompute the distance through the matrix-exponential path rather
    // than trusting the optimizer's last objective value.
    let mut h = ComplexMatrix::zeros(u.dim());
    for (s, &c) in strings.iter().zip(&best_theta) {
        h = &h + &s.as_matrix().scale_re(c);
    }
    let best_distance = distance(&matrix_exp_hermitian(&h, 1.0)?, &u)?;

    Ok(VariationalReport {
        gate: g.clone(),
        locality,
        parameter_count: d,
        restarts,
        best_theta,
        best_distance,
        history,
        seed,
        max_iters,
        optimizer: "lbfgs",
    })
}
