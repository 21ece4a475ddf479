//! The Swanson Hamiltonian `H = hbar omega (a^dagger a + 1/2) + hbar alpha a^2
//! + hbar beta a^dagger^2`: Fock and position representations, the mapping
//! to a complex-frequency oscillator `P^2/2m + m Omega^2 X^2/2`, its
//! Bogoliubov structure, ladder operators and the weak-form Fourier
//! transform of the quadratic potential.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use crate::grid::{trapezoid_c, Grid};
use crate::hamiltonian::{Basis, OperatorMatrix};
use crate::linalg::{real_eigenvalues, Matrix, RealMatrix};
use crate::spectra::{pt_phase_scan, sort_eigenvalues, PhaseScan, ScanSettings};
use crate::transforms::BargmannFunction;
use crate::{Error, Result, C64};

/// Smallest accepted Fock truncation.
pub const MIN_TRUNCATION: usize = 10;

/// Lowest levels compared by the truncation convergence rule.
pub const CONVERGENCE_LEVELS: usize = 10;

/// Tolerance of the truncation convergence rule.
pub const CONVERGENCE_TOLERANCE: f64 = 1e-8;

/// Truncation increment of the convergence rule.
pub const CONVERGENCE_STEP: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SwansonParams {
    pub omega: f64,
    pub alpha: f64,
    pub beta: f64,
    pub xi0: f64,
    pub hbar: f64,
}

impl SwansonParams {
    /// `xi0 = hbar = 1`.
    pub fn new(omega: f64, alpha: f64, beta: f64) -> Result<Self> {
        Self::with_scales(omega, alpha, beta, 1.0, 1.0)
    }

    pub fn with_scales(omega: f64, alpha: f64, beta: f64, xi0: f64, hbar: f64) -> Result<Self> {
        if !(omega.is_finite() && alpha.is_finite() && beta.is_finite()) {
            return Err(Error::InvalidParameters("omega, alpha and beta must be finite"));
        }
        if !(xi0 > 0.0 && xi0.is_finite()) {
            return Err(Error::InvalidParameters("xi0 must be positive"));
        }
        if !(hbar > 0.0 && hbar.is_finite()) {
            return Err(Error::InvalidParameters("hbar must be positive"));
        }
        Ok(Self {
            omega,
            alpha,
            beta,
            xi0,
            hbar,
        })
    }

    /// `omega^2 - 4 alpha beta`; the spectrum is real iff it is non-negative.
    pub fn discriminant(&self) -> f64 {
        self.omega * self.omega - 4.0 * self.alpha * self.beta
    }

    /// Principal `sqrt(omega^2 - 4 alpha beta)`.
    pub fn frequency(&self) -> C64 {
        C64::new(self.discriminant(), 0.0).sqrt()
    }
}

/// Fock matrix on `|0>, ..., |n_trunc - 1>`.
pub fn fock_matrix(p: &SwansonParams, n_trunc: usize) -> Result<OperatorMatrix> {
    Ok(OperatorMatrix::new(Basis::Fock, fock_real(p, n_trunc)?.to_complex())?)
}

fn fock_real(p: &SwansonParams, n_trunc: usize) -> Result<RealMatrix> {
    if n_trunc < MIN_TRUNCATION {
        return Err(Error::TruncationTooSmall(n_trunc));
    }
    let mut m = RealMatrix::zeros(n_trunc);
    for n in 0..n_trunc {
        let k = n as f64;
        m[(n, n)] = p.hbar * p.omega * (k + 0.5);
        if n >= 2 {
            m[(n - 2, n)] = p.hbar * p.alpha * libm::sqrt(k * (k - 1.0));
        }
        if n + 2 < n_trunc {
            m[(n + 2, n)] = p.hbar * p.beta * libm::sqrt((k + 1.0) * (k + 2.0));
        }
    }
    Ok(m)
}

/// Sorted eigenvalues of the truncated Fock matrix.
pub fn fock_spectrum(p: &SwansonParams, n_trunc: usize) -> Result<Vec<C64>> {
    let mut values = real_eigenvalues(&fock_real(p, n_trunc)?)?;
    sort_eigenvalues(&mut values);
    Ok(values)
}

/// Smallest `n_trunc = start + k * 50` whose lowest ten eigenvalues move by
/// less than `1e-8` when the truncation grows by 50, with that spectrum.
pub fn converged_spectrum(p: &SwansonParams, start: usize, max_trunc: usize) -> Result<(usize, Vec<C64>)> {
    let mut n = start.max(MIN_TRUNCATION);
    let mut current = fock_spectrum(p, n)?;
    while n + CONVERGENCE_STEP <= max_trunc {
        let next = fock_spectrum(p, n + CONVERGENCE_STEP)?;
        let moved = current
            .iter()
            .zip(&next)
            .take(CONVERGENCE_LEVELS)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        if moved < CONVERGENCE_TOLERANCE {
            return Ok((n, current));
        }
        n += CONVERGENCE_STEP;
        current = next;
    }
    Err(Error::TruncationNotConverged(max_trunc))
}

/// `hbar Omega (n + 1/2)`.
pub fn analytic_spectrum(p: &SwansonParams, n: usize) -> C64 {
    p.frequency() * (p.hbar * (n as f64 + 0.5))
}

/// Sorted analytic levels `0..count`.
pub fn analytic_levels(p: &SwansonParams, count: usize) -> Vec<C64> {
    let mut v: Vec<C64> = (0..count).map(|n| analytic_spectrum(p, n)).collect();
    sort_eigenvalues(&mut v);
    v
}

/// `H = c_xx x^2 + c_pp p^2 + c_xp x p + c_const`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XpCoefficients {
    pub xx: C64,
    pub pp: C64,
    pub xp: C64,
    pub constant: C64,
}

pub fn xp_coefficients(p: &SwansonParams) -> XpCoefficients {
    let xi2 = p.xi0 * p.xi0;
    XpCoefficients {
        xx: C64::new(p.hbar * (p.omega + p.alpha + p.beta) / (2.0 * xi2), 0.0),
        pp: C64::new((p.omega - p.alpha - p.beta) * xi2 / (2.0 * p.hbar), 0.0),
        xp: C64::new(0.0, p.alpha - p.beta),
        constant: C64::new(p.hbar * (p.alpha - p.beta) / 2.0, 0.0),
    }
}

/// The `x, p` form on a grid with `p = -i hbar d/dx` by fourth-order
/// central differences and Dirichlet walls beyond the grid. The operator
/// `-c_pp hbar^2 D2 + c_xx x^2 + hbar (alpha - beta) x D1 + c_const` is real.
pub fn xp_grid_operator(p: &SwansonParams, grid: &Grid) -> OperatorMatrix {
    let real = xp_grid_real(p, grid);
    OperatorMatrix::new(Basis::Position, real.to_complex()).expect("square")
}

const D2_STENCIL: [f64; 5] = [-1.0 / 12.0, 16.0 / 12.0, -30.0 / 12.0, 16.0 / 12.0, -1.0 / 12.0];
const D1_STENCIL: [f64; 5] = [1.0 / 12.0, -8.0 / 12.0, 0.0, 8.0 / 12.0, -1.0 / 12.0];

fn xp_grid_real(p: &SwansonParams, grid: &Grid) -> RealMatrix {
    let c = xp_coefficients(p);
    let n = grid.len();
    let h = grid.h();
    let kin = -c.pp.re * p.hbar * p.hbar / (h * h);
    let drift = p.hbar * (p.alpha - p.beta) / h;
    let mut m = RealMatrix::zeros(n);
    for i in 0..n {
        let x = grid.node(i);
        for (k, (d2, d1)) in D2_STENCIL.iter().zip(&D1_STENCIL).enumerate() {
            let j = i as isize + k as isize - 2;
            if j >= 0 && (j as usize) < n {
                m[(i, j as usize)] += kin * d2 + drift * x * d1;
            }
        }
        m[(i, i)] += c.xx.re * x * x + c.constant.re;
    }
    m
}

/// Sorted eigenvalues of [`xp_grid_operator`].
pub fn xp_grid_spectrum(p: &SwansonParams, grid: &Grid) -> Result<Vec<C64>> {
    let mut values = real_eigenvalues(&xp_grid_real(p, grid))?;
    sort_eigenvalues(&mut values);
    Ok(values)
}

/// Quantities of the oscillator mapping `X = x`,
/// `P = p + i hbar kappa x`, `H = P^2/2m + k X^2/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SwansonDerived {
    pub mass: f64,
    pub frequency: C64,
    pub theta: f64,
    /// `m Omega^2`.
    pub k: C64,
    /// `(alpha - beta) / ((omega - alpha - beta) xi0^2)`.
    pub kappa: f64,
    /// `e^{i theta/2} - hbar kappa e^{-i theta/2} / (m |Omega|)`.
    pub s: C64,
}

pub fn map_to_harmonic(p: &SwansonParams) -> Result<SwansonDerived> {
    let gap = p.omega - p.alpha - p.beta;
    let scale = p.omega.abs().max(p.alpha.abs()).max(p.beta.abs());
    if gap.abs() <= 4.0 * f64::EPSILON * scale {
        return Err(Error::FreeParticleLimit);
    }
    let xi2 = p.xi0 * p.xi0;
    let mass = p.hbar / (gap * xi2);
    let frequency = p.frequency();
    let theta = frequency.arg();
    let kappa = (p.alpha - p.beta) / (gap * xi2);
    let half = C64::from_polar(1.0, theta / 2.0);
    let s = half - half.conj() * (p.hbar * kappa / (mass * frequency.norm()));
    Ok(SwansonDerived {
        mass,
        frequency,
        theta,
        k: frequency * frequency * mass,
        kappa,
        s,
    })
}

/// `(A, A^dagger)^T = M (b, b^dagger)^T`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BogoliubovMatrix {
    pub theta: f64,
    pub m: [[C64; 2]; 2],
}

impl BogoliubovMatrix {
    pub fn det(&self) -> C64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }
}

pub fn bogoliubov(theta: f64) -> BogoliubovMatrix {
    let c = libm::cos(theta / 2.0);
    let s = libm::sin(theta / 2.0);
    BogoliubovMatrix {
        theta,
        m: [[C64::new(c, 0.0), C64::new(0.0, s)], [C64::new(0.0, -s), C64::new(c, 0.0)]],
    }
}

/// Coefficients of `A|n> = a_down |n-1> + a_up |n+1>` and
/// `A^dagger|n> = adag_up |n+1> + adag_down |n-1>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LadderAction {
    pub a_down: C64,
    pub a_up: C64,
    pub adag_up: C64,
    pub adag_down: C64,
}

pub fn ladder_action(n: usize, theta: f64) -> LadderAction {
    let c = libm::cos(theta / 2.0);
    let s = libm::sin(theta / 2.0);
    let k = n as f64;
    let down = libm::sqrt(k);
    let up = libm::sqrt(k + 1.0);
    LadderAction {
        a_down: C64::new(c * down, 0.0),
        a_up: C64::new(0.0, s * up),
        adag_up: C64::new(c * up, 0.0),
        adag_down: C64::new(0.0, -s * down),
    }
}

/// `A` and `A^dagger` on `|0>, ..., |dim - 1>` from [`ladder_action`].
/// Their commutator is `cos(theta)` on rows away from the truncation edge.
pub fn ladder_matrices(theta: f64, dim: usize) -> (OperatorMatrix, OperatorMatrix) {
    let mut a = Matrix::zeros(dim, dim);
    let mut adag = Matrix::zeros(dim, dim);
    for n in 0..dim {
        let act = ladder_action(n, theta);
        if n >= 1 {
            a[(n - 1, n)] = act.a_down;
            adag[(n - 1, n)] = act.adag_down;
        }
        if n + 1 < dim {
            a[(n + 1, n)] = act.a_up;
            adag[(n + 1, n)] = act.adag_up;
        }
    }
    (
        OperatorMatrix::new(Basis::Fock, a).expect("square"),
        OperatorMatrix::new(Basis::Fock, adag).expect("square"),
    )
}

/// Coefficients of a pseudo-boson pair in terms of `a`, `a^dagger`:
/// `A = a_a a + a_adag a^dagger`, `A^dagger = b_adag a^dagger + b_a a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PseudoBosonCoefficients {
    pub a_a: C64,
    pub a_adag: C64,
    pub b_adag: C64,
    pub b_a: C64,
}

impl PseudoBosonCoefficients {
    /// `[A, A^dagger]` as a multiple of the identity.
    pub fn commutator(&self) -> C64 {
        self.a_a * self.b_adag - self.a_adag * self.b_a
    }
}

/// `A = sqrt(m Omega / 2 hbar) (X + i P / (m Omega))` and its partner
/// `sqrt(m Omega / 2 hbar) (X - i P / (m Omega))` expanded in `a, a^dagger`.
/// With `u = hbar e^{-i theta/2} / (m |Omega| xi0)`:
///
/// `A = 1/2 sqrt(m|Omega|/hbar) [(s xi0 + u) a + (s xi0 - u) a^dagger]`,
/// `A^dagger = 1/2 sqrt(m|Omega|/hbar) [(t xi0 + u) a^dagger + (t xi0 - u) a]`,
///
/// where `t = e^{i theta/2} + hbar kappa e^{-i theta/2} / (m |Omega|)`.
/// `[A, A^dagger] = 1` and `H = hbar Omega (A^dagger A + 1/2)`.
pub fn pseudo_boson_coefficients(p: &SwansonParams) -> Result<PseudoBosonCoefficients> {
    let d = map_to_harmonic(p)?;
    let (pref, u, half) = pseudo_boson_parts(p, &d);
    let t = half + half.conj() * (p.hbar * d.kappa / (d.mass * d.frequency.norm()));
    Ok(PseudoBosonCoefficients {
        a_a: pref * (d.s * p.xi0 + u),
        a_adag: pref * (d.s * p.xi0 - u),
        b_adag: pref * (t * p.xi0 + u),
        b_a: pref * (t * p.xi0 - u),
    })
}

/// The same `A`, with the partner taken verbatim as
/// `1/2 sqrt(m|Omega|/hbar) [(s xi0 + v) a^dagger + (s xi0 - v) a]`,
/// `v = hbar e^{i theta/2} / (m |Omega| xi0)`. Its commutator with `A` is
/// `s cos(theta/2)` rather than one.
pub fn pseudo_boson_coefficients_literal(p: &SwansonParams) -> Result<PseudoBosonCoefficients> {
    let d = map_to_harmonic(p)?;
    let (pref, u, _) = pseudo_boson_parts(p, &d);
    let v = u.conj();
    Ok(PseudoBosonCoefficients {
        a_a: pref * (d.s * p.xi0 + u),
        a_adag: pref * (d.s * p.xi0 - u),
        b_adag: pref * (d.s * p.xi0 + v),
        b_a: pref * (d.s * p.xi0 - v),
    })
}

fn pseudo_boson_parts(p: &SwansonParams, d: &SwansonDerived) -> (C64, C64, C64) {
    let abs_freq = d.frequency.norm();
    let pref = C64::new(d.mass * abs_freq / p.hbar, 0.0).sqrt() * 0.5;
    let half = C64::from_polar(1.0, d.theta / 2.0);
    let u = half.conj() * (p.hbar / (d.mass * abs_freq * p.xi0));
    (pref, u, half)
}

/// The `a^dagger` coefficient of `A`; zero makes `A` a pure annihilator.
pub fn annihilator_creation_coefficient(p: &SwansonParams) -> Result<C64> {
    Ok(pseudo_boson_coefficients(p)?.a_adag)
}

/// Truncated Fock matrices of `a` and `a^dagger`.
pub fn fock_ladder(dim: usize) -> (Matrix, Matrix) {
    let mut a = Matrix::zeros(dim, dim);
    for n in 1..dim {
        a[(n - 1, n)] = C64::new(libm::sqrt(n as f64), 0.0);
    }
    let adag = a.transpose();
    (a, adag)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PseudoBosonOps {
    pub a: OperatorMatrix,
    pub adag: OperatorMatrix,
}

/// Truncated Fock matrices of a coefficient pair.
pub fn pseudo_boson_matrices(c: &PseudoBosonCoefficients, n_trunc: usize) -> PseudoBosonOps {
    let (a, adag) = fock_ladder(n_trunc);
    let build = |x: C64, on_a: C64| {
        let m = a.scale(on_a).add(&adag.scale(x)).expect("same shape");
        OperatorMatrix::new(Basis::Fock, m).expect("square")
    };
    PseudoBosonOps {
        a: build(c.a_adag, c.a_a),
        adag: build(c.b_adag, c.b_a),
    }
}

pub fn pseudo_boson_ops(p: &SwansonParams, n_trunc: usize) -> Result<PseudoBosonOps> {
    if n_trunc < MIN_TRUNCATION {
        return Err(Error::TruncationTooSmall(n_trunc));
    }
    Ok(pseudo_boson_matrices(&pseudo_boson_coefficients(p)?, n_trunc))
}

/// `A f` and `A^dagger f` with `a -> d/dz`, `a^dagger -> z` on a Bargmann
/// function.
pub fn pseudo_boson_bargmann(c: &PseudoBosonCoefficients, f: &BargmannFunction) -> (BargmannFunction, BargmannFunction) {
    let df = f.derivative();
    let zf = f.times_z();
    (
        df.scale(c.a_a).add(&zf.scale(c.a_adag)),
        zf.scale(c.b_adag).add(&df.scale(c.b_a)),
    )
}

/// A test function for the weak-form identity together with its second
/// derivative at the origin.
pub struct TestFunction {
    value: Box<dyn Fn(f64) -> C64 + Send + Sync>,
    second_derivative_at_zero: Option<C64>,
}

impl fmt::Debug for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TestFunction")
            .field("second_derivative_at_zero", &self.second_derivative_at_zero)
            .finish_non_exhaustive()
    }
}

impl TestFunction {
    pub fn new<F>(value: F, second_derivative_at_zero: Option<C64>) -> Self
    where
        F: Fn(f64) -> C64 + Send + Sync + 'static,
    {
        Self {
            value: Box::new(value),
            second_derivative_at_zero,
        }
    }

    /// `exp(-P^2)`.
    pub fn gaussian() -> Self {
        Self::new(|p| C64::new(libm::exp(-p * p), 0.0), Some(C64::new(-2.0, 0.0)))
    }

    /// `P^2 exp(-P^2)`.
    pub fn quadratic_gaussian() -> Self {
        Self::new(|p| C64::new(p * p * libm::exp(-p * p), 0.0), Some(C64::new(2.0, 0.0)))
    }

    pub fn eval(&self, p: f64) -> C64 {
        (self.value)(p)
    }

    pub fn second_derivative_at_zero(&self) -> Option<C64> {
        self.second_derivative_at_zero
    }
}

/// Both sides of `<V~, t> = -pi C t''(0)` with `C = m |Omega|^2 e^{2i theta}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeakForm {
    pub lhs: C64,
    pub rhs: C64,
}

impl WeakForm {
    pub fn mismatch(&self) -> f64 {
        (self.lhs - self.rhs).norm()
    }
}

/// Quadrature grids of [`potential_ft_weak`]: the test function is
/// transformed on `[-10, 10]` and the second moment integrated on
/// `[-14, 14]`.
pub fn weak_form_grids() -> (Grid, Grid) {
    (
        Grid::new(10.0, 401).expect("valid grid"),
        Grid::new(14.0, 561).expect("valid grid"),
    )
}

/// `lhs = C/2 int X^2 t^(X) dX` with the analyst transform
/// `t^(X) = int t(P) e^{-iPX} dP`, both by the trapezoid rule, against
/// `rhs = -pi C t''(0)`.
pub fn potential_ft_weak(p: &SwansonParams, test: &TestFunction) -> Result<WeakForm> {
    let d = map_to_harmonic(p)?;
    let c = C64::from_polar(d.mass * d.frequency.norm_sqr(), 2.0 * d.theta);
    weak_form_with_constant(c, test)
}

/// [`potential_ft_weak`] for a given prefactor `C`.
pub fn weak_form_with_constant(c: C64, test: &TestFunction) -> Result<WeakForm> {
    let t2 = test.second_derivative_at_zero.ok_or(Error::MissingSecondDerivative)?;
    let (pg, xg) = weak_form_grids();
    let samples: Vec<C64> = pg.nodes().map(|p| test.eval(p)).collect();
    let moment: Vec<C64> = xg
        .nodes()
        .map(|x| {
            let kernel: Vec<C64> = pg
                .nodes()
                .zip(&samples)
                .map(|(p, t)| t * C64::new(libm::cos(p * x), -libm::sin(p * x)))
                .collect();
            trapezoid_c(&kernel, pg.h()) * (x * x)
        })
        .collect();
    Ok(WeakForm {
        lhs: c * 0.5 * trapezoid_c(&moment, xg.h()),
        rhs: -c * PI * t2,
    })
}

/// Threshold scan of the analytic levels in `beta` at fixed `omega`,
/// `alpha`; reality is lost at `beta = omega^2 / (4 alpha)`.
pub fn beta_phase_scan(omega: f64, alpha: f64, betas: &[f64], settings: &ScanSettings) -> Result<PhaseScan> {
    let levels = settings.window;
    pt_phase_scan(
        &|beta| Ok(analytic_levels(&SwansonParams::new(omega, alpha, beta)?, levels)),
        betas,
        settings,
    )
}
