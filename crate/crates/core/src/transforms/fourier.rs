//! Centered discrete Fourier operator on an origin-symmetric grid.
//!
//! With `c = (n - 1) / 2` the operator is
//! `F_kl = exp(-2 pi i (k - c)(l - c) / n) / sqrt(n)`. Because the phase only
//! depends on `(k - c)(l - c) mod n`, every entry is looked up from a table
//! of `n` roots of unity, so `F` is symmetric to the last bit and `F^2` is
//! the index reversal up to rounding.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::grid::{trapezoid_c, Grid, Space, WaveFunction};
use crate::linalg::Matrix;
use crate::{Error, Result, C64};

/// Normalization of the continuum transform pair being discretized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum FourierConvention {
    /// `(2 pi)^(-1/2)` in both directions; preserves the L2 norm.
    #[default]
    Unitary,
    /// Prefactor 1 forward and `1 / (2 pi)` inverse.
    Analyst,
}

impl FourierConvention {
    pub fn name(self) -> &'static str {
        match self {
            FourierConvention::Unitary => "unitary",
            FourierConvention::Analyst => "analyst",
        }
    }
}

/// The centered unitary DFT of a given dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryFourierMatrix {
    n: usize,
    roots: Vec<C64>,
}

impl UnitaryFourierMatrix {
    pub fn new(n: usize) -> Self {
        let scale = 1.0 / libm::sqrt(n as f64);
        let roots = (0..n)
            .map(|m| {
                let phase = -2.0 * PI * m as f64 / n as f64;
                C64::new(libm::cos(phase), libm::sin(phase)) * scale
            })
            .collect();
        Self { n, roots }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    fn phase_index(&self, k: usize, l: usize) -> usize {
        let c = (self.n as i64 - 1) / 2;
        ((k as i64 - c) * (l as i64 - c)).rem_euclid(self.n as i64) as usize
    }

    pub fn entry(&self, k: usize, l: usize) -> C64 {
        self.roots[self.phase_index(k, l)]
    }

    /// `F x`.
    pub fn apply(&self, x: &[C64]) -> Vec<C64> {
        self.apply_with(x, false)
    }

    /// `F^H x`.
    pub fn apply_adjoint(&self, x: &[C64]) -> Vec<C64> {
        self.apply_with(x, true)
    }

    fn apply_with(&self, x: &[C64], adjoint: bool) -> Vec<C64> {
        let n = self.n;
        let c = (n as i64 - 1) / 2;
        let mut out = vec![C64::new(0.0, 0.0); n];
        for (k, o) in out.iter_mut().enumerate() {
            let kc = k as i64 - c;
            let mut idx = (kc * -c).rem_euclid(n as i64) as usize;
            let step = kc.rem_euclid(n as i64) as usize;
            let mut acc = C64::new(0.0, 0.0);
            for xl in x {
                let w = self.roots[idx];
                acc += if adjoint { w.conj() } else { w } * xl;
                idx += step;
                if idx >= n {
                    idx -= n;
                }
            }
            *o = acc;
        }
        out
    }

    /// Dense matrix form.
    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_fn(self.n, self.n, |k, l| self.entry(k, l))
    }
}

fn forward_scale(grid: &Grid, conv: FourierConvention) -> f64 {
    let n = grid.len() as f64;
    match conv {
        FourierConvention::Unitary => libm::sqrt(grid.h() / grid.momentum_spacing()),
        FourierConvention::Analyst => grid.h() * libm::sqrt(n),
    }
}

fn inverse_scale(grid: &Grid, conv: FourierConvention) -> f64 {
    let n = grid.len() as f64;
    match conv {
        FourierConvention::Unitary => libm::sqrt(grid.momentum_spacing() / grid.h()),
        FourierConvention::Analyst => grid.momentum_spacing() * libm::sqrt(n) / (2.0 * PI),
    }
}

/// Position-space samples to momentum-space samples on the conjugate grid
/// `p_k = (k - c) 2 pi / (n h)`.
pub fn fourier(f: &WaveFunction, conv: FourierConvention) -> Result<WaveFunction> {
    f.expect_space(Space::Position)?;
    let op = UnitaryFourierMatrix::new(f.len());
    let s = forward_scale(f.grid(), conv);
    let out = op.apply(f.samples()).into_iter().map(|z| z * s).collect();
    Ok(f.with_samples(Space::Momentum, out))
}

/// Momentum-space samples back to position space.
pub fn inverse_fourier(f: &WaveFunction, conv: FourierConvention) -> Result<WaveFunction> {
    f.expect_space(Space::Momentum)?;
    let op = UnitaryFourierMatrix::new(f.len());
    let s = inverse_scale(f.grid(), conv);
    let out = op.apply_adjoint(f.samples()).into_iter().map(|z| z * s).collect();
    Ok(f.with_samples(Space::Position, out))
}

/// `F^k` of the discrete unitary operator acting on the raw samples,
/// `0 <= k <= 3`. Odd powers switch the space tag.
///
/// No grid-dependent scaling is applied, so this agrees with
/// [`fourier`]/[`inverse_fourier`] in the unitary convention exactly when
/// the grid is self-dual (`h` equal to the momentum spacing).
pub fn fourier_power(f: &WaveFunction, k: i64) -> Result<WaveFunction> {
    if !(0..=3).contains(&k) {
        return Err(Error::FourierPowerOutOfRange(k));
    }
    let op = UnitaryFourierMatrix::new(f.len());
    let mut samples = f.samples().to_vec();
    let mut space = f.space();
    match k {
        0 => {}
        2 => samples.reverse(),
        _ => {
            samples = if k == 1 {
                op.apply(&samples)
            } else {
                op.apply_adjoint(&samples)
            };
            space = space.dual();
        }
    }
    Ok(f.with_samples(space, samples))
}

/// `f(-x)`: reversal of the samples, no arithmetic.
pub fn parity(f: &WaveFunction) -> WaveFunction {
    let mut samples = f.samples().to_vec();
    samples.reverse();
    f.with_samples(f.space(), samples)
}

/// Trapezoid discretization of `(f * g)(x) = int f(x - y) g(y) dy` on the
/// common grid, with `f` taken as zero outside it.
pub fn convolve(f: &WaveFunction, g: &WaveFunction) -> Result<WaveFunction> {
    f.expect_compatible(g)?;
    let n = f.len();
    let c = (n - 1) / 2;
    let h = f.spacing();
    let (fs, gs) = (f.samples(), g.samples());
    let mut out = vec![C64::new(0.0, 0.0); n];
    let mut terms = vec![C64::new(0.0, 0.0); n];
    for (i, o) in out.iter_mut().enumerate() {
        for (j, t) in terms.iter_mut().enumerate() {
            // x_i - x_j sits at index i - j + c.
            let idx = i as i64 - j as i64 + c as i64;
            *t = if (0..n as i64).contains(&idx) {
                fs[idx as usize] * gs[j]
            } else {
                C64::new(0.0, 0.0)
            };
        }
        *o = trapezoid_c(&terms, h);
    }
    Ok(f.with_samples(f.space(), out))
}

/// Both sides of the Parseval relation for a pair of position-space
/// functions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Parseval {
    /// `<f, g>` in position space.
    pub lhs: C64,
    /// `<F f, F g>` in momentum space under the chosen convention.
    pub rhs: C64,
    /// Factor with `lhs = factor * rhs`: 1 (unitary) or `1 / (2 pi)`
    /// (analyst).
    pub factor: f64,
}

impl Parseval {
    pub fn mismatch(&self) -> f64 {
        (self.lhs - self.rhs * self.factor).norm()
    }
}

/// Evaluates both inner products with the discrete rule `h sum conj(f) g`,
/// the one the discrete operator preserves exactly.
pub fn parseval(f: &WaveFunction, g: &WaveFunction, conv: FourierConvention) -> Result<Parseval> {
    f.expect_space(Space::Position)?;
    let lhs = f.discrete_inner(g)?;
    let rhs = fourier(f, conv)?.discrete_inner(&fourier(g, conv)?)?;
    let factor = match conv {
        FourierConvention::Unitary => 1.0,
        FourierConvention::Analyst => 1.0 / (2.0 * PI),
    };
    Ok(Parseval { lhs, rhs, factor })
}
