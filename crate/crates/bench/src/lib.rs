//! Shared fixtures for the benchmark suite.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use hamlog::{ComplexMatrix, C64};

/// Seeded random Hermitian matrix with entries of order one.
pub fn random_hermitian(seed: u64, dim: usize) -> ComplexMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = ComplexMatrix::from_fn(dim, |_, _| {
        C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
    });
    (&g + &g.adjoint()).scale_re(0.5)
}
