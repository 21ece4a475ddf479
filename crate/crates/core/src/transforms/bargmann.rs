//! Segal-Bargmann transform and the Bargmann space of entire functions
//! with Gaussian measure `pi^{-1} e^{-|z|^2}`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{PI, SQRT_2};

use super::hermite::sample_hermite_basis;
use crate::grid::{trapezoid_c, Space, WaveFunction};
use crate::{Error, Result, C64};

/// Largest acceptable `|int h_n^2 - 1|` over the requested orders.
pub const RESOLUTION_TOLERANCE: f64 = 1e-8;

/// `f(z) = sum_n c_n z^n / sqrt(n!)`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct BargmannFunction {
    coeffs: Vec<C64>,
}

impl BargmannFunction {
    pub fn new(coeffs: Vec<C64>) -> Self {
        Self { coeffs }
    }

    /// The orthonormal monomial `z^n / sqrt(n!)`.
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![C64::new(0.0, 0.0); n + 1];
        coeffs[n] = C64::new(1.0, 0.0);
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C64> {
        self.coeffs
    }

    /// Highest order carried (`len - 1`).
    pub fn n_max(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, n: usize) -> C64 {
        self.coeffs.get(n).copied().unwrap_or(C64::new(0.0, 0.0))
    }

    /// Point evaluation.
    pub fn eval(&self, z: C64) -> C64 {
        let mut term = C64::new(1.0, 0.0);
        let mut acc = C64::new(0.0, 0.0);
        for (n, c) in self.coeffs.iter().enumerate() {
            if n > 0 {
                term = term * z / libm::sqrt(n as f64);
            }
            acc += c * term;
        }
        acc
    }

    pub fn norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// `d/dz`: `z^n / sqrt(n!) -> sqrt(n) z^{n-1} / sqrt((n-1)!)`.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, c)| c * libm::sqrt(n as f64))
            .collect();
        Self { coeffs }
    }

    /// Multiplication by `z`: `z^n / sqrt(n!) -> sqrt(n + 1) z^{n+1} / sqrt((n+1)!)`.
    pub fn times_z(&self) -> Self {
        let mut coeffs = vec![C64::new(0.0, 0.0); self.coeffs.len() + 1];
        for (n, c) in self.coeffs.iter().enumerate() {
            coeffs[n + 1] = c * libm::sqrt(n as f64 + 1.0);
        }
        Self { coeffs }
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self {
            coeffs: (0..len).map(|n| self.coeff(n) + other.coeff(n)).collect(),
        }
    }
}

/// Segal-Bargmann transform through the Hermite expansion:
/// `c_n = <h_n, f>` so that `B h_n = z^n / sqrt(n!)`.
pub fn segal_bargmann(f: &WaveFunction, n_max: usize) -> Result<BargmannFunction> {
    f.expect_space(Space::Position)?;
    let grid = f.grid();
    let basis = sample_hermite_basis(grid, n_max);
    let mut defect: f64 = 0.0;
    let mut coeffs = Vec::with_capacity(n_max + 1);
    let mut prod = vec![C64::new(0.0, 0.0); grid.len()];
    for row in &basis {
        let sq: Vec<f64> = row.iter().map(|v| v * v).collect();
        let edge = row[0].abs().max(row[row.len() - 1].abs());
        defect = defect.max((grid.trapezoid(&sq) - 1.0).abs()).max(edge);
        for ((p, h), s) in prod.iter_mut().zip(row).zip(f.samples()) {
            *p = s * *h;
        }
        coeffs.push(trapezoid_c(&prod, grid.h()));
    }
    if defect > RESOLUTION_TOLERANCE {
        return Err(Error::UnresolvedBasis { n_max, defect });
    }
    Ok(BargmannFunction::new(coeffs))
}

/// Direct quadrature of the kernel
/// `pi^{-1/4} exp(-z^2/2 + sqrt(2) z x - x^2/2)` against `f` at one point.
pub fn segal_bargmann_kernel(f: &WaveFunction, z: C64) -> Result<C64> {
    f.expect_space(Space::Position)?;
    let norm = libm::pow(PI, -0.25);
    let values: Vec<C64> = f
        .coordinates()
        .zip(f.samples())
        .map(|(x, s)| (-z * z * 0.5 + z * (SQRT_2 * x) - 0.5 * x * x).exp() * norm * s)
        .collect();
    Ok(trapezoid_c(&values, f.spacing()))
}

/// `<f, g>_mu = sum_n conj(c_n) d_n`.
pub fn bargmann_inner(f: &BargmannFunction, g: &BargmannFunction) -> C64 {
    f.coeffs.iter().zip(&g.coeffs).map(|(a, b)| a.conj() * b).sum()
}

/// The oscillator `omega (z d/dz + 1/2)`, diagonal on monomials.
pub fn bargmann_number_apply(f: &BargmannFunction, omega: f64) -> BargmannFunction {
    BargmannFunction::new(
        f.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c * (omega * (n as f64 + 0.5)))
            .collect(),
    )
}
