//! L2-normalized Hermite functions `h_n(x) = H_n(x) e^{-x^2/2} / sqrt(2^n n! sqrt(pi))`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::grid::{Grid, WaveFunction};

/// `h_0(x), ..., h_{n_max}(x)` by the three-term recurrence on the
/// normalized functions themselves, which stays finite for large `n`.
pub fn hermite_functions(n_max: usize, x: f64) -> Vec<f64> {
    let mut out = vec![0.0; n_max + 1];
    out[0] = libm::pow(PI, -0.25) * libm::exp(-0.5 * x * x);
    if n_max >= 1 {
        out[1] = core::f64::consts::SQRT_2 * x * out[0];
    }
    for n in 1..n_max {
        let k = n as f64;
        out[n + 1] = libm::sqrt(2.0 / (k + 1.0)) * x * out[n] - libm::sqrt(k / (k + 1.0)) * out[n - 1];
    }
    out
}

pub fn hermite_function(n: usize, x: f64) -> f64 {
    hermite_functions(n, x)[n]
}

/// Samples of `h_0 .. h_{n_max}` on the grid, one row per order.
pub fn sample_hermite_basis(grid: &Grid, n_max: usize) -> Vec<Vec<f64>> {
    let mut rows = vec![Vec::with_capacity(grid.len()); n_max + 1];
    for x in grid.nodes() {
        for (row, v) in rows.iter_mut().zip(hermite_functions(n_max, x)) {
            row.push(v);
        }
    }
    rows
}

/// `h_n` sampled as a position-space wave function.
pub fn hermite_wavefunction(grid: Grid, n: usize) -> WaveFunction {
    WaveFunction::from_real_fn(grid, |x| hermite_function(n, x))
}
