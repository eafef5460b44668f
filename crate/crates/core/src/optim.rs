//! Limited-memory BFGS with Armijo backtracking line search.
//!
//! The objective callback returns value and gradient together; every
//! line-search trial pays for a gradient too, which is acceptable here
//! because the gradient costs about as much as the value.

use std::collections::VecDeque;

const MEMORY: usize = 10;
const ARMIJO_C1: f64 = 1e-4;
const GRAD_TOL: f64 = 1e-13;
const F_TOL: f64 = 1e-20;

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn inf_norm(a: &[f64]) -> f64 {
    a.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Minimize `fg` starting from `x0`, capped at `max_iters` outer iterations.
/// Returns the best point and value seen; non-convergence is not an error.
pub(crate) fn minimize(
    x0: Vec<f64>,
    max_iters: usize,
    mut fg: impl FnMut(&[f64]) -> (f64, Vec<f64>),
) -> (Vec<f64>, f64) {
    let mut x = x0;
    let (mut f, mut g) = fg(&x);
    let mut best_x = x.clone();
    let mut best_f = f;
    // (s, y, 1/(s·y)) pairs, oldest first.
    let mut memory: VecDeque<(Vec<f64>, Vec<f64>, f64)> = VecDeque::new();
    let mut stalled = 0usize;

    for _ in 0..max_iters {
        if inf_norm(&g) < GRAD_TOL || f < F_TOL {
            break;
        }

        // Two-loop recursion for d = −H·g.
        let mut d: Vec<f64> = g.iter().map(|v| -v).collect();
        let mut alphas = Vec::with_capacity(memory.len());
        for (s, y, rho) in memory.iter().rev() {
            let a = rho * dot(s, &d);
            for (di, yi) in d.iter_mut().zip(y) {
                *di -= a * yi;
            }
            alphas.push(a);
        }
        if let Some((s, y, _)) = memory.back() {
            let gamma = dot(s, y) / dot(y, y);
            for di in d.iter_mut() {
                *di *= gamma;
            }
        }
        for ((s, y, rho), a) in memory.iter().zip(alphas.iter().rev()) {
            let b = rho * dot(y, &d);
            for (di, si) in d.iter_mut().zip(s) {
                *di += (a - b) * si;
            }
        }

        let mut dg = dot(&d, &g);
        if !(dg < 0.0) {
            // Not a descent direction; fall back to steepest descent.
            d = g.iter().map(|v| -v).collect();
            dg = -dot(&g, &g);
            memory.clear();
        }

        let mut step = if memory.is_empty() {
            (1.0 / inf_norm(&g).max(1.0)).min(1.0)
        } else {
            1.0
        };
        let mut accepted = None;
        for _ in 0..50 {
            let xt: Vec<f64> = x.iter().zip(&d).map(|(xi, di)| xi + step * di).collect();
            let (ft, gt) = fg(&xt);
            if ft <= f + ARMIJO_C1 * step * dg {
                accepted = Some((xt, ft, gt));
                break;
            }
            step *= 0.5;
        }
        let Some((xt, ft, gt)) = accepted else {
            if memory.is_empty() {
                break; // steepest descent made no progress
            }
            memory.clear();
            continue;
        };

        let s: Vec<f64> = xt.iter().zip(&x).map(|(a, b)| a - b).collect();
        let y: Vec<f64> = gt.iter().zip(&g).map(|(a, b)| a - b).collect();
        let sy = dot(&s, &y);
        if sy > 1e-12 * dot(&s, &s).sqrt() * dot(&y, &y).sqrt() {
            memory.push_back((s, y, 1.0 / sy));
            if memory.len() > MEMORY {
                memory.pop_front();
            }
        }
        // Give up once decrease is at machine-noise level for a while.
        if f - ft <= 1e-15 * f.abs().max(1e-30) {
            stalled += 1;
            if stalled >= 10 {
                x = xt;
                f = ft;
                if f < best_f {
                    best_f = f;
                    best_x = x;
                }
                break;
            }
        } else {
            stalled = 0;
        }
        x = xt;
        f = ft;
        g = gt;
        if f < best_f {
            best_f = f;
            best_x = x.clone();
        }
    }
    (best_x, best_f)
}
