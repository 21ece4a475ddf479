//! Operator matrices for `H = p^2 + V_Re(x) + i V_Im(x)` (units with
//! `hbar = 2m = 1`) in position and momentum representations, and the
//! pseudo-Hermiticity check `H^dagger = eta H eta`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::grid::Grid;
use crate::linalg::Matrix;
use crate::potential::{sample_potential, PotentialSpec};
use crate::transforms::UnitaryFourierMatrix;
use crate::{Error, Result, C64};

/// Default tolerance on `max |H^dagger - eta H eta|`.
pub const PSEUDO_HERMITIAN_TOLERANCE: f64 = 1e-10;

/// Which basis the rows and columns of an [`OperatorMatrix`] refer to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    Position,
    Momentum,
    Fock,
    SpinProduct,
    BargmannMonomial,
}

impl Basis {
    pub fn name(self) -> &'static str {
        match self {
            Basis::Position => "position",
            Basis::Momentum => "momentum",
            Basis::Fock => "fock",
            Basis::SpinProduct => "spin_product",
            Basis::BargmannMonomial => "bargmann_monomial",
        }
    }
}

/// Square complex matrix tagged with its basis. Binary operations refuse
/// to mix bases.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    basis: Basis,
    matrix: Matrix,
}

impl OperatorMatrix {
    pub fn new(basis: Basis, matrix: Matrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch {
                expected: matrix.rows(),
                found: matrix.cols(),
            });
        }
        if matrix.as_slice().iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::InvalidParameters("operator has non-finite entries"));
        }
        Ok(Self { basis, matrix })
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> C64 {
        self.matrix[(i, j)]
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch);
        }
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        Ok(Self {
            basis: self.basis,
            matrix: self.matrix.add(&other.matrix)?,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        Ok(Self {
            basis: self.basis,
            matrix: self.matrix.sub(&other.matrix)?,
        })
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        Ok(Self {
            basis: self.basis,
            matrix: self.matrix.matmul(&other.matrix)?,
        })
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        Ok(Self {
            basis: self.basis,
            matrix: self.matrix.commutator(&other.matrix)?,
        })
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            basis: self.basis,
            matrix: self.matrix.scale(s),
        }
    }

    pub fn adjoint(&self) -> Self {
        Self {
            basis: self.basis,
            matrix: self.matrix.adjoint(),
        }
    }

    pub fn identity(basis: Basis, n: usize) -> Self {
        Self {
            basis,
            matrix: Matrix::identity(n),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.matrix.max_abs()
    }
}

/// Index reversal `i -> n - 1 - i`, the discrete parity on a symmetric grid.
pub fn reversal(n: usize) -> Vec<usize> {
    (0..n).rev().collect()
}

/// Parity as a permutation metric in the given basis.
pub fn parity_metric(basis: Basis, n: usize) -> OperatorMatrix {
    OperatorMatrix {
        basis,
        matrix: Matrix::permutation(&reversal(n)),
    }
}

/// `-d^2/dx^2` by the three-point stencil with Dirichlet walls one step
/// outside the grid, plus `diag(V(x_i))`.
pub fn assemble_position(spec: &PotentialSpec, grid: &Grid) -> Result<OperatorMatrix> {
    let v = sample_potential(spec, grid)?;
    Ok(OperatorMatrix {
        basis: Basis::Position,
        matrix: position_matrix(&v, grid.h()),
    })
}

/// Finite-difference Hamiltonian for already sampled potential values.
pub fn position_matrix(v: &[C64], h: f64) -> Matrix {
    let n = v.len();
    let inv_h2 = 1.0 / (h * h);
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = C64::new(2.0 * inv_h2, 0.0) + v[i];
        if i + 1 < n {
            m[(i, i + 1)] = C64::new(-inv_h2, 0.0);
            m[(i + 1, i)] = C64::new(-inv_h2, 0.0);
        }
    }
    m
}

/// `V~(q) = int V(x) e^{-iqx} dx` over the grid extent: trapezoid rule for
/// the smooth terms, closed forms for deltas. For a PT-symmetric potential
/// this equals `2 int_0 (V_Re cos qx + V_Im sin qx) dx` and is real.
///
/// Polynomial terms have only distributional transforms and are refused.
pub fn momentum_kernel(spec: &PotentialSpec, grid: &Grid, q: f64) -> Result<C64> {
    if spec.has_polynomial() {
        return Err(Error::NonIntegrablePotential);
    }
    let n = grid.len();
    let c = grid.center();
    let h = grid.h();
    let smooth: Vec<C64> = grid.sample(|x| spec.smooth_value(x));
    // Pair x and -x so that the imaginary parts of PT-symmetric integrands
    // cancel term by term.
    let mut acc = smooth[c];
    for k in 1..=c {
        let x = grid.node(c + k);
        let w = if k == c { 0.5 } else { 1.0 };
        let e = C64::new(libm::cos(q * x), -libm::sin(q * x));
        acc += (smooth[c + k] * e + smooth[c - k] * e.conj()) * w;
    }
    let mut out = acc * h;
    debug_assert_eq!(n, 2 * c + 1);
    for pm in spec.point_masses() {
        if pm.location.abs() > grid.x_max() * (1.0 + 1e-12) {
            return Err(Error::DeltaOutsideGrid {
                location: pm.location,
                x_max: grid.x_max(),
            });
        }
        out += pm.strength * C64::new(libm::cos(q * pm.location), -libm::sin(q * pm.location));
    }
    Ok(out)
}

/// `sum_j h V_j e^{-iqx_j}` for samples on a symmetric grid, paired as in
/// [`momentum_kernel`].
pub fn sampled_kernel(v: &[C64], grid: &Grid, q: f64) -> C64 {
    let c = grid.center();
    let mut acc = v[c];
    for k in 1..=c {
        let x = grid.node(c + k);
        let e = C64::new(libm::cos(q * x), -libm::sin(q * x));
        acc += v[c + k] * e + v[c - k] * e.conj();
    }
    acc * grid.h()
}

/// How [`assemble_momentum`] builds the momentum-space operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MomentumMethod {
    /// `F H_pos F^dagger` with the centered unitary DFT; exactly isospectral
    /// to the position operator.
    Conjugation,
    /// Kinetic term `k^2` on the box's standing-wave momenta plus the
    /// potential through its Fourier kernel `V~(k - k')`.
    KernelQuadrature,
}

/// Momentum-space Hamiltonian.
///
/// The kernel path works in the Dirichlet box's own momentum basis:
/// `k_m = m pi / L` for `m = 1..n`, with `L = (n + 1) h` the wall
/// separation and `dk = pi / L`. In that basis (after the phase change
/// `i^m`) the matrix is
///
/// `k_m^2 delta_mm' + dk/(2 pi) [V~(k_m - k_m') + (-1)^(m-m') V~(k_m' - k_m)
///  - (-1)^m V~(-k_m - k_m') - (-1)^m' V~(k_m + k_m')]`
///
/// with `V~` the sampled kernel. Every entry is real for PT-symmetric
/// potentials. The reflected terms are what the walls add to the plain
/// `dp/(2 pi) V~(p - p')` convolution of a periodic grid.
pub fn assemble_momentum(spec: &PotentialSpec, grid: &Grid, method: MomentumMethod) -> Result<OperatorMatrix> {
    match method {
        MomentumMethod::Conjugation => {
            let v = sample_potential(spec, grid)?;
            Ok(OperatorMatrix {
                basis: Basis::Momentum,
                matrix: conjugated_position(&v, grid.h()),
            })
        }
        MomentumMethod::KernelQuadrature => {
            if spec.has_polynomial() {
                return Err(Error::NonIntegrablePotential);
            }
            let v = sample_potential(spec, grid)?;
            Ok(OperatorMatrix {
                basis: Basis::Momentum,
                matrix: kernel_matrix(&v, grid),
            })
        }
    }
}

/// `F M F^dagger` with the centered unitary DFT.
pub fn fourier_conjugate(m: &Matrix) -> Result<Matrix> {
    let n = m.rows();
    let f = UnitaryFourierMatrix::new(n).to_matrix();
    f.matmul(m)?.matmul(&f.adjoint())
}

/// `F H F^dagger` for the finite-difference Hamiltonian without dense
/// products. The periodic stencil is diagonal, `4 sin^2(pi (k - c)/n) / h^2`;
/// the Dirichlet walls remove its two corner entries, a rank-two term; and
/// the potential becomes the Toeplitz matrix
/// `(1/n) sum_j V_j w^{(k - l)(j - c)}`, `w = e^{-2 pi i / n}`.
pub fn conjugated_position(v: &[C64], h: f64) -> Matrix {
    let n = v.len();
    let c = (n as i64 - 1) / 2;
    let nn = n as i64;
    let roots: Vec<C64> = (0..n)
        .map(|m| {
            let phase = -2.0 * PI * m as f64 / n as f64;
            C64::new(libm::cos(phase), libm::sin(phase))
        })
        .collect();
    let toeplitz: Vec<C64> = (-(nn - 1)..nn)
        .map(|d| {
            let mut acc = C64::new(0.0, 0.0);
            for (j, vj) in v.iter().enumerate() {
                acc += vj * roots[(d * (j as i64 - c)).rem_euclid(nn) as usize];
            }
            acc / n as f64
        })
        .collect();
    let f = UnitaryFourierMatrix::new(n);
    let inv_h2 = 1.0 / (h * h);
    let mut out = Matrix::zeros(n, n);
    for k in 0..n {
        for l in 0..n {
            let wall = f.entry(k, 0) * f.entry(l, n - 1).conj() + f.entry(k, n - 1) * f.entry(l, 0).conj();
            out[(k, l)] = toeplitz[(k as i64 - l as i64 + nn - 1) as usize] + wall * inv_h2;
        }
        let s = libm::sin(PI * (k as i64 - c) as f64 / n as f64);
        out[(k, k)] += C64::new(4.0 * s * s * inv_h2, 0.0);
    }
    out
}

fn kernel_matrix(v: &[C64], grid: &Grid) -> Matrix {
    let n = grid.len();
    let wall = (n + 1) as f64 * grid.h();
    let dk = PI / wall;
    // table[r + 2n] = V~(r dk) for r in -2n..=2n.
    let table: Vec<C64> = (-(2 * n as i64)..=2 * n as i64)
        .map(|r| sampled_kernel(v, grid, r as f64 * dk))
        .collect();
    let at = |r: i64| table[(r + 2 * n as i64) as usize];
    let sign = |r: i64| if r.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let pref = dk / (2.0 * PI);
    let mut out = Matrix::zeros(n, n);
    for a in 0..n {
        let m = a as i64 + 1;
        for b in 0..n {
            let mp = b as i64 + 1;
            let val = at(m - mp) + at(mp - m) * sign(m - mp) - at(-m - mp) * sign(m) - at(m + mp) * sign(mp);
            out[(a, b)] = val * pref;
        }
        let k = m as f64 * dk;
        out[(a, a)] += C64::new(k * k, 0.0);
    }
    out
}

/// Outcome of [`pseudo_hermiticity_check`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermiticityReport {
    pub residual: f64,
    pub is_pseudo_hermitian: bool,
}

/// `max |H^dagger - eta H eta|`. The metric must be Hermitian; permutation
/// metrics must also be involutions and are applied by index lookup.
pub fn pseudo_hermiticity_check(h: &OperatorMatrix, eta: &OperatorMatrix) -> Result<HermiticityReport> {
    h.compatible(eta)?;
    let defect = eta.matrix.hermiticity_defect();
    if defect > PSEUDO_HERMITIAN_TOLERANCE {
        return Err(Error::NonHermitianMetric(defect));
    }
    let n = h.dim();
    let residual = match as_permutation(&eta.matrix) {
        Some(perm) => {
            if (0..n).any(|i| perm[perm[i]] != i) {
                return Err(Error::MetricNotInvolutive);
            }
            let mut worst: f64 = 0.0;
            for i in 0..n {
                for j in 0..n {
                    let lhs = h.matrix[(j, i)].conj();
                    let rhs = h.matrix[(perm[i], perm[j])];
                    worst = worst.max((lhs - rhs).norm());
                }
            }
            worst
        }
        None => {
            let ehe = eta.matrix.matmul(&h.matrix)?.matmul(&eta.matrix)?;
            h.matrix.adjoint().max_abs_diff(&ehe)?
        }
    };
    Ok(HermiticityReport {
        residual,
        is_pseudo_hermitian: residual <= PSEUDO_HERMITIAN_TOLERANCE,
    })
}

/// `perm` with `eta e_j = e_{perm[j]}` when `eta` is a permutation matrix.
fn as_permutation(m: &Matrix) -> Option<Vec<usize>> {
    let n = m.rows();
    let mut perm = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    for i in 0..n {
        for j in 0..n {
            let z = m[(i, j)];
            if z == C64::new(1.0, 0.0) {
                if perm[j] != usize::MAX || seen[i] {
                    return None;
                }
                perm[j] = i;
                seen[i] = true;
            } else if z != C64::new(0.0, 0.0) {
                return None;
            }
        }
    }
    if perm.iter().any(|p| *p == usize::MAX) {
        return None;
    }
    Some(perm)
}
