//! Spin-1/2 operators in the two-mode Bargmann (Jordan-Schwinger)
//! representation and the open non-Hermitian XX chain
//! `H = 1/2 sum_j [Sx_j Sx_{j+1} + Sy_j Sy_{j+1} + i g (Sz_j - Sz_{j+1})]`
//! with `hbar = 1`.
//!
//! Each site carries one boson shared between modes `z` (spin up) and `w`
//! (spin down). Site 1 is the slowest tensor factor: in a basis index, site
//! `j` (0-based) is bit `J - 1 - j`, and a cleared bit means up.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::hamiltonian::{Basis, OperatorMatrix};
use crate::linalg::Matrix;
use crate::spectra::{eigenvalues_pt, pt_phase_scan, PhaseScan, ScanSettings};
use crate::{Error, Result, C64};

pub const MAX_SITES: usize = 12;

/// Validated chain parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainSpec {
    sites: usize,
    g: f64,
}

impl ChainSpec {
    pub fn new(sites: usize, g: f64) -> Result<Self> {
        if sites < 2 {
            return Err(Error::TooFewSites(sites));
        }
        if sites > MAX_SITES {
            return Err(Error::ChainTooLarge(sites));
        }
        if !g.is_finite() {
            return Err(Error::InvalidParameters("coupling must be finite"));
        }
        Ok(Self { sites, g })
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn dim(&self) -> usize {
        1 << self.sites
    }

    pub fn with_g(&self, g: f64) -> Result<Self> {
        Self::new(self.sites, g)
    }
}

/// Occupations `(n_z, n_w)` per site for the spin-1/2 sector of `J` sites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwoModeBasis {
    sites: usize,
}

impl TwoModeBasis {
    pub fn new(sites: usize) -> Self {
        Self { sites }
    }

    pub fn dim(&self) -> usize {
        1 << self.sites
    }

    pub fn occupations(&self, index: usize) -> Vec<(u32, u32)> {
        (0..self.sites)
            .map(|j| {
                if (index >> (self.sites - 1 - j)) & 1 == 0 {
                    (1, 0)
                } else {
                    (0, 1)
                }
            })
            .collect()
    }

    /// Inverse of [`Self::occupations`]; `None` outside the sector.
    pub fn index(&self, occ: &[(u32, u32)]) -> Option<usize> {
        let mut index = 0;
        for &(nz, nw) in occ {
            index <<= 1;
            match (nz, nw) {
                (1, 0) => {}
                (0, 1) => index |= 1,
                _ => return None,
            }
        }
        Some(index)
    }
}

/// `<z^a w^b, z^c w^d>` for unnormalized monomials under the measure
/// `exp(-|z|^2 - |w|^2) d^2z d^2w`: `pi^2 a! b!` on the diagonal.
pub fn monomial_overlap(a: u32, b: u32, c: u32, d: u32) -> f64 {
    if a != c || b != d {
        return 0.0;
    }
    let fact = |k: u32| (1..=k).map(f64::from).product::<f64>();
    PI * PI * fact(a) * fact(b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    Z,
    W,
}

/// Creation (`z` or `w` multiplication) or annihilation (derivative).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Ladder {
    Raise(Mode),
    Lower(Mode),
}

/// Applies a word of single-mode ladder operators (rightmost first) at the
/// given sites to a normalized monomial, returning the amplitude and the
/// resulting occupations.
fn apply_word(occ: &[(u32, u32)], word: &[(usize, Ladder)]) -> Option<(f64, Vec<(u32, u32)>)> {
    let mut occ = occ.to_vec();
    let mut amp = 1.0;
    for &(site, op) in word.iter().rev() {
        let (nz, nw) = &mut occ[site];
        let n = match op {
            Ladder::Raise(Mode::Z) | Ladder::Lower(Mode::Z) => nz,
            Ladder::Raise(Mode::W) | Ladder::Lower(Mode::W) => nw,
        };
        match op {
            Ladder::Raise(_) => {
                *n += 1;
                amp *= libm::sqrt(f64::from(*n));
            }
            Ladder::Lower(_) => {
                if *n == 0 {
                    return None;
                }
                amp *= libm::sqrt(f64::from(*n));
                *n -= 1;
            }
        }
    }
    Some((amp, occ))
}

/// Sum of weighted ladder words as a matrix on the spin-1/2 sector.
fn sector_matrix(basis: &TwoModeBasis, terms: &[(C64, Vec<(usize, Ladder)>)]) -> Matrix {
    let n = basis.dim();
    let mut m = Matrix::zeros(n, n);
    for col in 0..n {
        let occ = basis.occupations(col);
        for (weight, word) in terms {
            if let Some((amp, out)) = apply_word(&occ, word) {
                let row = basis.index(&out).expect("number-conserving word leaves the sector");
                m[(row, col)] += *weight * amp;
            }
        }
    }
    m
}

use Ladder::{Lower, Raise};
use Mode::{W, Z};

/// One-site spin operators and the number operator.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinOps {
    pub sx: OperatorMatrix,
    pub sy: OperatorMatrix,
    pub sz: OperatorMatrix,
    pub number: OperatorMatrix,
}

/// `Sx = (z d_w + w d_z)/2`, `Sy = (z d_w - w d_z)/(2i)`,
/// `Sz = (z d_z - w d_w)/2`, `N = z d_z + w d_w` on the one-boson sector
/// `{z, w}`.
pub fn spin_ops_bargmann() -> SpinOps {
    let basis = TwoModeBasis::new(1);
    let half = C64::new(0.5, 0.0);
    let half_i = C64::new(0.0, -0.5);
    let one = C64::new(1.0, 0.0);
    let zdw = vec![(0, Raise(Z)), (0, Lower(W))];
    let wdz = vec![(0, Raise(W)), (0, Lower(Z))];
    let zdz = vec![(0, Raise(Z)), (0, Lower(Z))];
    let wdw = vec![(0, Raise(W)), (0, Lower(W))];
    let build = |terms: &[(C64, Vec<(usize, Ladder)>)]| OperatorMatrix::new(Basis::BargmannMonomial, sector_matrix(&basis, terms)).expect("square");
    SpinOps {
        sx: build(&[(half, zdw.clone()), (half, wdz.clone())]),
        sy: build(&[(half_i, zdw), (-half_i, wdz)]),
        sz: build(&[(half, zdz.clone()), (-half, wdw.clone())]),
        number: build(&[(one, zdz), (one, wdw)]),
    }
}

/// Tensor-product build from the Pauli matrices.
pub fn build_xx_pauli(spec: &ChainSpec) -> OperatorMatrix {
    let j = spec.sites;
    let c = |re: f64, im: f64| C64::new(re, im);
    let sx = Matrix::from_vec(2, 2, vec![c(0.0, 0.0), c(0.5, 0.0), c(0.5, 0.0), c(0.0, 0.0)]).expect("2x2");
    let sy = Matrix::from_vec(2, 2, vec![c(0.0, 0.0), c(0.0, -0.5), c(0.0, 0.5), c(0.0, 0.0)]).expect("2x2");
    let sz = Matrix::from_vec(2, 2, vec![c(0.5, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-0.5, 0.0)]).expect("2x2");
    let id = Matrix::identity(2);
    let at = |site: usize, op: &Matrix| {
        let mut out = Matrix::identity(1);
        for k in 0..j {
            out = out.kron(if k == site { op } else { &id });
        }
        out
    };
    let dim = spec.dim();
    let mut h = Matrix::zeros(dim, dim);
    let ig = c(0.0, spec.g);
    for site in 0..j - 1 {
        let bond = at(site, &sx)
            .matmul(&at(site + 1, &sx))
            .and_then(|xx| xx.add(&at(site, &sy).matmul(&at(site + 1, &sy))?))
            .and_then(|xy| xy.add(&at(site, &sz).sub(&at(site + 1, &sz))?.scale(ig)))
            .expect("matching dimensions");
        h = h.add(&bond.scale(c(0.5, 0.0))).expect("matching dimensions");
    }
    OperatorMatrix::new(Basis::SpinProduct, h).expect("square")
}

/// Build from the Bargmann differential form
/// `1/4 sum_j (z_j w_{j+1} d_{w_j} d_{z_{j+1}} + w_j z_{j+1} d_{z_j} d_{w_{j+1}})
///  + ig/4 sum_j (z_j d_{z_j} - w_j d_{w_j} - z_{j+1} d_{z_{j+1}} + w_{j+1} d_{w_{j+1}})`
/// acting on normalized monomials.
pub fn build_xx_bargmann(spec: &ChainSpec) -> OperatorMatrix {
    let basis = TwoModeBasis::new(spec.sites);
    let quarter = C64::new(0.25, 0.0);
    let ig4 = C64::new(0.0, spec.g / 4.0);
    let mut terms = Vec::new();
    for j in 0..spec.sites - 1 {
        let k = j + 1;
        terms.push((quarter, vec![(j, Raise(Z)), (k, Raise(W)), (j, Lower(W)), (k, Lower(Z))]));
        terms.push((quarter, vec![(j, Raise(W)), (k, Raise(Z)), (j, Lower(Z)), (k, Lower(W))]));
        terms.push((ig4, vec![(j, Raise(Z)), (j, Lower(Z))]));
        terms.push((-ig4, vec![(j, Raise(W)), (j, Lower(W))]));
        terms.push((-ig4, vec![(k, Raise(Z)), (k, Lower(Z))]));
        terms.push((ig4, vec![(k, Raise(W)), (k, Lower(W))]));
    }
    OperatorMatrix::new(Basis::SpinProduct, sector_matrix(&basis, &terms)).expect("square")
}

/// Site reversal as a permutation of basis indices (bit reversal). The
/// chain is symmetric under site reversal combined with complex
/// conjugation.
pub fn site_reversal(sites: usize) -> Vec<usize> {
    (0..1usize << sites)
        .map(|i| i.reverse_bits() >> (usize::BITS as usize - sites))
        .collect()
}

/// Sorted eigenvalues of the chain, through its real PT form.
pub fn chain_spectrum(spec: &ChainSpec) -> Result<Vec<C64>> {
    eigenvalues_pt(&build_xx_pauli(spec), &site_reversal(spec.sites))
}

/// Per-`g` scan over the whole chain spectrum; the threshold is where the
/// first conjugate pair appears, refined by bisection to `bisection_tol`.
pub fn chain_phase_diagram(sites: usize, gs: &[f64], indicator_tol: f64, bisection_tol: f64) -> Result<PhaseScan> {
    let base = ChainSpec::new(sites, 0.0)?;
    let settings = ScanSettings {
        window: base.dim(),
        indicator_tol,
        bisection_tol,
    };
    pt_phase_scan(&|g| chain_spectrum(&base.with_g(g)?), gs, &settings)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::{eigensolve, linspace};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn su2_algebra_is_exact() {
        let ops = spin_ops_bargmann();
        let (x, y, z) = (&ops.sx, &ops.sy, &ops.sz);
        let i = c(0.0, 1.0);
        assert_eq!(x.commutator(y).unwrap(), z.scale(i));
        assert_eq!(y.commutator(z).unwrap(), x.scale(i));
        assert_eq!(z.commutator(x).unwrap(), y.scale(i));
        let casimir = x.matmul(x).unwrap().add(&y.matmul(y).unwrap()).unwrap().add(&z.matmul(z).unwrap()).unwrap();
        assert_eq!(casimir, OperatorMatrix::identity(Basis::BargmannMonomial, 2).scale(c(0.75, 0.0)));
        assert_eq!(ops.number, OperatorMatrix::identity(Basis::BargmannMonomial, 2));
        for s in [x, y, z] {
            assert_eq!(ops.number.commutator(s).unwrap().max_abs(), 0.0);
        }
        assert_eq!(z.matrix().diag(), vec![c(0.5, 0.0), c(-0.5, 0.0)]);
    }

    #[test]
    fn site_count_limits() {
        assert_eq!(ChainSpec::new(1, 0.0), Err(Error::TooFewSites(1)));
        assert_eq!(ChainSpec::new(13, 0.0), Err(Error::ChainTooLarge(13)));
        assert!(ChainSpec::new(12, 0.0).is_ok());
    }

    #[test]
    fn builds_agree_entrywise() {
        for sites in [2, 3, 4] {
            for g in [0.0, 0.1, 0.2, 0.4] {
                let spec = ChainSpec::new(sites, g).unwrap();
                let d = build_xx_pauli(&spec).matrix().max_abs_diff(build_xx_bargmann(&spec).matrix()).unwrap();
                assert!(d < 1e-12, "J = {sites}, g = {g}: {d}");
            }
        }
        let h = build_xx_bargmann(&ChainSpec::new(2, 0.0).unwrap());
        assert_eq!(h.adjoint(), h);
    }

    #[test]
    fn two_site_closed_form() {
        for g in [0.0, 0.4, 1.0] {
            let values = chain_spectrum(&ChainSpec::new(2, g).unwrap()).unwrap();
            let r = c(1.0 / 16.0 - g * g / 4.0, 0.0).sqrt();
            let mut expected = vec![-r, c(0.0, 0.0), c(0.0, 0.0), r];
            crate::spectra::sort_eigenvalues(&mut expected);
            for (a, b) in values.iter().zip(&expected) {
                assert!((a - b).norm() < 1e-12, "g = {g}: {a} vs {b}");
            }
        }
        let s = eigensolve(&build_xx_pauli(&ChainSpec::new(2, 0.4).unwrap())).unwrap();
        assert!((s.eigenvalues[3].re - 0.15).abs() < 1e-12);
    }

    #[test]
    fn site_reversal_is_bit_reversal() {
        assert_eq!(site_reversal(2), vec![0, 2, 1, 3]);
        assert_eq!(site_reversal(3)[1], 4);
    }

    #[test]
    fn two_site_threshold() {
        let scan = chain_phase_diagram(2, &linspace(0.0, 1.0, 20).unwrap(), 1e-8, 1e-5).unwrap();
        assert!((scan.threshold.unwrap() - 0.5).abs() < 1e-4);
    }

    #[test]
    fn monomial_norms() {
        assert_eq!(monomial_overlap(0, 0, 0, 0), PI * PI);
        assert_eq!(monomial_overlap(3, 2, 3, 2), PI * PI * 12.0);
        assert_eq!(monomial_overlap(1, 0, 0, 1), 0.0);
    }
}
