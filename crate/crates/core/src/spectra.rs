//! Certified non-Hermitian eigensolution, PT-phase classification and
//! symmetry-breaking threshold scans.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::f64::consts::FRAC_1_SQRT_2;

use crate::grid::Grid;
use crate::hamiltonian::{assemble_position, reversal, OperatorMatrix};
use crate::linalg::{eig, eig_real, eigenvalues as complex_eigenvalues, real_eigenvalues, vec_norm, Matrix, RealMatrix};
use crate::potential::PotentialSpec;
use crate::{Error, Result, C64};

/// Relative residual bound: `||Hv - lv|| <= CERTIFICATION * ||H||_max * dim * ||v||`.
pub const CERTIFICATION: f64 = 1e-8;

/// Eigenvalues are treated as real below this `|Im|` in scans.
pub const INDICATOR_TOLERANCE: f64 = 1e-8;

/// Number of lowest eigenvalues inspected by the breaking indicator.
pub const INDICATOR_WINDOW: usize = 10;

/// Smallest `|u_i^H v_i|` (unit vectors) accepted as non-defective.
pub const DEFECT_TOLERANCE: f64 = 1e-7;

/// Eigenvalues sorted by real part then imaginary part, with the largest
/// certified residual and the matching unit eigenvector columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<C64>,
    pub max_residual: f64,
    pub right: Option<Matrix>,
    pub left: Option<Matrix>,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// Drops the eigenvectors, keeping values and the residual.
    pub fn without_vectors(mut self) -> Self {
        self.right = None;
        self.left = None;
        self
    }
}

pub fn compare_eigenvalues(a: &C64, b: &C64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

pub fn sort_eigenvalues(values: &mut [C64]) {
    values.sort_by(compare_eigenvalues);
}

fn check_finite(m: &Matrix) -> Result<()> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            found: m.cols(),
        });
    }
    if m.as_slice().iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(Error::InvalidParameters("matrix has non-finite entries"));
    }
    Ok(())
}

fn certify(h: &Matrix, values: Vec<C64>, right: Matrix, left: Matrix) -> Result<Spectrum> {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| compare_eigenvalues(&values[a], &values[b]));
    let mut residual: f64 = 0.0;
    let mut sorted_right = Matrix::zeros(n, n);
    let mut sorted_left = Matrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        let v = right.column(src);
        let hv = h.matvec(&v)?;
        let lambda = values[src];
        let r: Vec<C64> = hv.iter().zip(&v).map(|(a, b)| a - b * lambda).collect();
        let norm = vec_norm(&v);
        residual = residual.max(if norm > 0.0 { vec_norm(&r) / norm } else { f64::INFINITY });
        sorted_right.set_column(dst, &v);
        sorted_left.set_column(dst, &left.column(src));
    }
    let bound = CERTIFICATION * h.max_abs().max(f64::MIN_POSITIVE) * n as f64;
    if !(residual <= bound) {
        return Err(Error::ResidualCertification { residual, bound });
    }
    Ok(Spectrum {
        eigenvalues: order.iter().map(|&i| values[i]).collect(),
        max_residual: residual,
        right: Some(sorted_right),
        left: Some(sorted_left),
    })
}

/// Full spectrum of a general complex operator with right and left
/// eigenvectors and residual certification.
pub fn eigensolve(h: &OperatorMatrix) -> Result<Spectrum> {
    eigensolve_matrix(h.matrix())
}

pub fn eigensolve_matrix(h: &Matrix) -> Result<Spectrum> {
    check_finite(h)?;
    let d = eig(h)?;
    certify(h, d.values, d.right, d.left)
}

/// Sorted eigenvalues without eigenvectors or certification, for scans.
pub fn eigenvalues(h: &OperatorMatrix) -> Result<Vec<C64>> {
    check_finite(h.matrix())?;
    let mut values = complex_eigenvalues(h.matrix())?;
    sort_eigenvalues(&mut values);
    Ok(values)
}

/// Real form `U^dagger H U` of a matrix obeying `H[perm i][perm j] = conj(H[i][j])`
/// for an involutive permutation. `U` pairs each orbit `{j, perm j}` into
/// `(e_j + e_pj)/sqrt2` and `i(e_j - e_pj)/sqrt2` and keeps fixed points.
/// Returns the real matrix and the columns of `U` as sparse pairs.
pub fn pt_real_form(h: &Matrix, perm: &[usize]) -> Result<(RealMatrix, PtBasis)> {
    check_finite(h)?;
    let n = h.rows();
    if perm.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: perm.len(),
        });
    }
    if (0..n).any(|i| perm[i] >= n || perm[perm[i]] != i) {
        return Err(Error::MetricNotInvolutive);
    }
    let basis = PtBasis::new(perm);
    let mut out = RealMatrix::zeros(n);
    let mut worst_imag: f64 = 0.0;
    for a in 0..n {
        for b in 0..n {
            let mut acc = C64::new(0.0, 0.0);
            for &(i, ui) in basis.column(a) {
                for &(j, uj) in basis.column(b) {
                    acc += ui.conj() * h[(i, j)] * uj;
                }
            }
            worst_imag = worst_imag.max(acc.im.abs());
            out[(a, b)] = acc.re;
        }
    }
    let scale = h.max_abs().max(1.0);
    if worst_imag > 1e-12 * scale {
        return Err(Error::NotPtSymmetric(worst_imag));
    }
    Ok((out, basis))
}

/// The unitary of [`pt_real_form`], one column per basis vector with at
/// most two nonzero entries.
#[derive(Debug, Clone, PartialEq)]
pub struct PtBasis {
    columns: Vec<Vec<(usize, C64)>>,
}

impl PtBasis {
    fn new(perm: &[usize]) -> Self {
        let n = perm.len();
        let s = FRAC_1_SQRT_2;
        let mut columns = Vec::with_capacity(n);
        for j in 0..n {
            let p = perm[j];
            match j.cmp(&p) {
                Ordering::Equal => columns.push(vec![(j, C64::new(1.0, 0.0))]),
                Ordering::Less => {
                    columns.push(vec![(j, C64::new(s, 0.0)), (p, C64::new(s, 0.0))]);
                    columns.push(vec![(j, C64::new(0.0, s)), (p, C64::new(0.0, -s))]);
                }
                Ordering::Greater => {}
            }
        }
        Self { columns }
    }

    pub fn dim(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, a: usize) -> &[(usize, C64)] {
        &self.columns[a]
    }

    /// `U w` for a coefficient vector in the real basis.
    pub fn apply(&self, w: &[C64]) -> Vec<C64> {
        let mut out = vec![C64::new(0.0, 0.0); self.dim()];
        for (col, &c) in self.columns.iter().zip(w) {
            for &(i, u) in col {
                out[i] += u * c;
            }
        }
        out
    }

    pub fn to_matrix(&self) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for (a, col) in self.columns.iter().enumerate() {
            for &(i, u) in col {
                m[(i, a)] = u;
            }
        }
        m
    }
}

fn lift(basis: &PtBasis, m: &Matrix) -> Matrix {
    let n = m.rows();
    let mut out = Matrix::zeros(n, n);
    for j in 0..n {
        out.set_column(j, &basis.apply(&m.column(j)));
    }
    out
}

/// Certified spectrum of a PT-symmetric operator through its real form.
/// Complex eigenvalues come out in exact conjugate pairs.
pub fn eigensolve_pt(h: &OperatorMatrix, perm: &[usize]) -> Result<Spectrum> {
    let (real, basis) = pt_real_form(h.matrix(), perm)?;
    let d = eig_real(&real)?;
    let right = lift(&basis, &d.right);
    let left = lift(&basis, &d.left);
    certify(h.matrix(), d.values, right, left)
}

/// Sorted eigenvalues through the real form, without certification.
pub fn eigenvalues_pt(h: &OperatorMatrix, perm: &[usize]) -> Result<Vec<C64>> {
    let (real, _) = pt_real_form(h.matrix(), perm)?;
    let mut values = real_eigenvalues(&real)?;
    sort_eigenvalues(&mut values);
    Ok(values)
}

/// Uses the real-form solver when the operator is PT-symmetric under index
/// reversal, or real, and the general solver otherwise. In momentum space
/// PT acts as plain complex conjugation, so PT-symmetric momentum operators
/// take the real branch.
pub fn eigensolve_auto(h: &OperatorMatrix) -> Result<Spectrum> {
    structured(h, eigensolve_pt, eigensolve)
}

pub fn eigenvalues_auto(h: &OperatorMatrix) -> Result<Vec<C64>> {
    structured(h, eigenvalues_pt, eigenvalues)
}

fn structured<T>(
    h: &OperatorMatrix,
    pt: fn(&OperatorMatrix, &[usize]) -> Result<T>,
    general: fn(&OperatorMatrix) -> Result<T>,
) -> Result<T> {
    let n = h.dim();
    for perm in [reversal(n), (0..n).collect()] {
        match pt(h, &perm) {
            Err(Error::NotPtSymmetric(_)) => continue,
            other => return other,
        }
    }
    general(h)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PtPhase {
    Unbroken,
    Broken,
}

impl PtPhase {
    pub fn name(self) -> &'static str {
        match self {
            PtPhase::Unbroken => "unbroken",
            PtPhase::Broken => "broken",
        }
    }
}

/// Partition of a spectrum into real values, conjugate pairs (indices into
/// the sorted eigenvalue list, positive imaginary part first) and complex
/// values left without a partner.
#[derive(Debug, Clone, PartialEq)]
pub struct PtClassification {
    pub phase: PtPhase,
    pub n_real: usize,
    pub conjugate_pairs: Vec<(usize, usize)>,
    pub unpaired_complex: Vec<usize>,
}

pub fn classify(spectrum: &Spectrum, tol: f64) -> Result<PtClassification> {
    classify_values(&spectrum.eigenvalues, tol)
}

/// Greedy nearest matching of `l_i` against `conj(l_j)` within `tol`.
pub fn classify_values(values: &[C64], tol: f64) -> Result<PtClassification> {
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::InvalidTolerance(tol));
    }
    let complex: Vec<usize> = (0..values.len()).filter(|&i| values[i].im.abs() > tol).collect();
    let n_real = values.len() - complex.len();
    let mut used = vec![false; values.len()];
    let mut conjugate_pairs = Vec::new();
    let mut unpaired_complex = Vec::new();
    for &i in complex.iter().filter(|&&i| values[i].im > 0.0) {
        let target = values[i].conj();
        let best = complex
            .iter()
            .copied()
            .filter(|&j| !used[j] && values[j].im < 0.0)
            .map(|j| (j, (values[j] - target).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1));
        match best {
            Some((j, d)) if d <= tol => {
                used[i] = true;
                used[j] = true;
                conjugate_pairs.push((i, j));
            }
            _ => {}
        }
    }
    for &i in &complex {
        if !used[i] {
            unpaired_complex.push(i);
        }
    }
    Ok(PtClassification {
        phase: if complex.is_empty() { PtPhase::Unbroken } else { PtPhase::Broken },
        n_real,
        conjugate_pairs,
        unpaired_complex,
    })
}

/// Largest distance from `conj(l_i)` to its greedily matched partner in the
/// same multiset; zero for a conjugation-closed spectrum.
pub fn conjugation_closure(values: &[C64]) -> f64 {
    let mut used = vec![false; values.len()];
    let mut worst: f64 = 0.0;
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[b].im.abs().total_cmp(&values[a].im.abs()));
    for &i in &order {
        if used[i] {
            continue;
        }
        let target = values[i].conj();
        let best = (0..values.len())
            .filter(|&j| !used[j] && j != i)
            .map(|j| (j, (values[j] - target).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1));
        let self_gap = (values[i] - target).norm();
        match best {
            Some((j, d)) if d < self_gap => {
                used[i] = true;
                used[j] = true;
                worst = worst.max(d);
            }
            _ => {
                used[i] = true;
                worst = worst.max(self_gap);
            }
        }
    }
    worst
}

/// Max off-diagonal modulus of `L^H R` after normalizing the diagonal,
/// `|u_i^H v_j| / sqrt(|u_i^H v_i| |u_j^H v_j|)`.
pub fn biorthogonality(spectrum: &Spectrum) -> Result<f64> {
    let (right, left) = match (&spectrum.right, &spectrum.left) {
        (Some(r), Some(l)) => (r, l),
        _ => return Err(Error::MissingEigenvectors),
    };
    let overlap = left.adjoint().matmul(right)?;
    let n = overlap.rows();
    let diag: Vec<f64> = (0..n).map(|i| overlap[(i, i)].norm()).collect();
    if let Some(i) = diag.iter().position(|&d| d < DEFECT_TOLERANCE) {
        return Err(Error::Defective(i));
    }
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                worst = worst.max(overlap[(i, j)].norm() / libm::sqrt(diag[i] * diag[j]));
            }
        }
    }
    Ok(worst)
}

/// Breaking-indicator settings for threshold scans.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanSettings {
    pub window: usize,
    pub indicator_tol: f64,
    pub bisection_tol: f64,
}

impl Default for ScanSettings {
    fn default() -> Self {
        Self {
            window: INDICATOR_WINDOW,
            indicator_tol: INDICATOR_TOLERANCE,
            bisection_tol: 1e-4,
        }
    }
}

/// One scan point: the largest `|Im E|` and the number of real values
/// among the lowest `window` eigenvalues, and whether that counts as broken.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRow {
    pub lambda: f64,
    pub max_im: f64,
    pub n_real: usize,
    pub broken: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseScan {
    pub threshold: Option<f64>,
    pub rows: Vec<ScanRow>,
}

/// `steps + 1` equally spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, steps: usize) -> Result<Vec<f64>> {
    if !(lo <= hi) || !lo.is_finite() || !hi.is_finite() || (steps == 0 && lo != hi) {
        return Err(Error::EmptyRange);
    }
    if steps == 0 {
        return Ok(vec![lo]);
    }
    Ok((0..=steps).map(|k| lo + (hi - lo) * k as f64 / steps as f64).collect())
}

/// Indicator on sorted eigenvalues.
pub fn scan_row(lambda: f64, values: &[C64], settings: &ScanSettings) -> ScanRow {
    let window = &values[..values.len().min(settings.window)];
    let max_im = window.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    let n_real = window.iter().filter(|z| z.im.abs() <= settings.indicator_tol).count();
    ScanRow {
        lambda,
        max_im,
        n_real,
        broken: max_im > settings.indicator_tol,
    }
}

/// Evaluates the indicator at each parameter value in order.
pub fn scan_table<F>(spectrum_at: &F, lambdas: &[f64], settings: &ScanSettings) -> Result<Vec<ScanRow>>
where
    F: Fn(f64) -> Result<Vec<C64>>,
{
    lambdas
        .iter()
        .map(|&l| Ok(scan_row(l, &spectrum_at(l)?, settings)))
        .collect()
}

/// First adjacent pair of rows where the indicator switches on.
pub fn onset_bracket(rows: &[ScanRow]) -> Option<(f64, f64)> {
    if rows.first().map_or(true, |r| r.broken) {
        return None;
    }
    rows.windows(2).find(|w| !w[0].broken && w[1].broken).map(|w| (w[0].lambda, w[1].lambda))
}

/// Bisects an unbroken/broken bracket down to `bisection_tol` and returns
/// its midpoint.
pub fn bisect_threshold<F>(spectrum_at: &F, lo: f64, hi: f64, settings: &ScanSettings) -> Result<f64>
where
    F: Fn(f64) -> Result<Vec<C64>>,
{
    if !(settings.bisection_tol > 0.0) {
        return Err(Error::InvalidTolerance(settings.bisection_tol));
    }
    let (mut lo, mut hi) = (lo, hi);
    while hi - lo > settings.bisection_tol {
        let mid = 0.5 * (lo + hi);
        if scan_row(mid, &spectrum_at(mid)?, settings).broken {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Coarse scan over `lambdas` followed by bisection of the first onset.
/// The threshold is `None` when the indicator never switches on, or is
/// already on at the first point.
pub fn pt_phase_scan<F>(spectrum_at: &F, lambdas: &[f64], settings: &ScanSettings) -> Result<PhaseScan>
where
    F: Fn(f64) -> Result<Vec<C64>>,
{
    if lambdas.is_empty() {
        return Err(Error::EmptyRange);
    }
    let rows = scan_table(spectrum_at, lambdas, settings)?;
    let threshold = match onset_bracket(&rows) {
        Some((lo, hi)) => Some(bisect_threshold(spectrum_at, lo, hi, settings)?),
        None => None,
    };
    Ok(PhaseScan { threshold, rows })
}

/// Sorted eigenvalues of the position-space operator for one member of a
/// PT-symmetric potential family.
pub fn family_spectrum<F>(family: &F, grid: &Grid, lambda: f64) -> Result<Vec<C64>>
where
    F: Fn(f64) -> PotentialSpec,
{
    let h = assemble_position(&family(lambda), grid)?;
    eigenvalues_pt(&h, &reversal(grid.len()))
}

/// [`pt_phase_scan`] over a potential family on a fixed grid.
pub fn potential_phase_scan<F>(family: &F, grid: &Grid, lambdas: &[f64], settings: &ScanSettings) -> Result<PhaseScan>
where
    F: Fn(f64) -> PotentialSpec,
{
    pt_phase_scan(&|l| family_spectrum(family, grid, l), lambdas, settings)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::Basis;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn op(rows: usize, data: &[f64]) -> OperatorMatrix {
        OperatorMatrix::new(Basis::Position, Matrix::from_real(rows, rows, data).unwrap()).unwrap()
    }

    #[test]
    fn trivial_spectra() {
        let s = eigensolve(&op(3, &[3.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 2.0])).unwrap();
        assert_eq!(s.eigenvalues, vec![c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)]);
        assert_eq!(s.max_residual, 0.0);
        let s = eigensolve(&op(2, &[0.0, 1.0, 1.0, 0.0])).unwrap();
        assert!((s.eigenvalues[0] - c(-1.0, 0.0)).norm() < 1e-14);
        assert!((s.eigenvalues[1] - c(1.0, 0.0)).norm() < 1e-14);
        assert!(biorthogonality(&s).unwrap() < 1e-10);
    }

    #[test]
    fn classification_examples() {
        let r = classify_values(&[c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)], 1e-8).unwrap();
        assert_eq!(r.phase, PtPhase::Unbroken);
        assert_eq!(r.n_real, 3);
        let r = classify_values(&[c(1.0, 0.0), c(2.0, -0.5), c(2.0, 0.5)], 1e-8).unwrap();
        assert_eq!(r.phase, PtPhase::Broken);
        assert_eq!(r.conjugate_pairs, vec![(2, 1)]);
        assert!(r.unpaired_complex.is_empty());
        let r = classify_values(&[c(1.0, 0.3)], 1e-8).unwrap();
        assert_eq!(r.unpaired_complex, vec![0]);
        assert_eq!(classify_values(&[], 0.0), Err(Error::InvalidTolerance(0.0)));
    }

    #[test]
    fn defective_block_is_reported() {
        let s = eigensolve(&op(2, &[0.0, 1.0, 0.0, 0.0])).unwrap();
        assert!(matches!(biorthogonality(&s), Err(Error::Defective(_))));
        assert_eq!(biorthogonality(&s.without_vectors()), Err(Error::MissingEigenvectors));
    }

    #[test]
    fn real_form_matches_general_solver() {
        // [[a, b], [conj b, conj a]]-type PT matrix under index reversal.
        let m = Matrix::from_vec(
            3,
            3,
            vec![c(1.0, 2.0), c(0.5, 0.0), c(0.0, 0.3), c(0.5, 0.0), c(4.0, 0.0), c(0.5, 0.0), c(0.0, -0.3), c(0.5, 0.0), c(1.0, -2.0)],
        )
        .unwrap();
        let h = OperatorMatrix::new(Basis::Position, m).unwrap();
        let a = eigensolve(&h).unwrap();
        let b = eigensolve_pt(&h, &reversal(3)).unwrap();
        for x in &a.eigenvalues {
            let d = b.eigenvalues.iter().map(|y| (x - y).norm()).fold(f64::INFINITY, f64::min);
            assert!(d < 1e-12, "{x}");
        }
        assert_eq!(conjugation_closure(&b.eigenvalues), 0.0);
        let u = pt_real_form(h.matrix(), &reversal(3)).unwrap().1.to_matrix();
        assert!(u.adjoint().matmul(&u).unwrap().max_abs_diff(&Matrix::identity(3)).unwrap() < 1e-15);
    }

    #[test]
    fn non_pt_matrix_is_rejected() {
        let h = OperatorMatrix::new(Basis::Position, Matrix::diagonal(&[c(0.0, 1.0), c(0.0, 1.0)])).unwrap();
        assert!(matches!(eigensolve_pt(&h, &reversal(2)), Err(Error::NotPtSymmetric(_))));
        let s = eigensolve_auto(&h).unwrap();
        assert_eq!(s.eigenvalues, vec![c(0.0, 1.0), c(0.0, 1.0)]);
        let real = op(2, &[1.0, 2.0, 0.0, 3.0]);
        assert_eq!(eigenvalues_auto(&real).unwrap(), vec![c(1.0, 0.0), c(3.0, 0.0)]);
    }

    #[test]
    fn onset_bisection() {
        // Eigenvalues +-sqrt(1 - l): real for l <= 1.
        let f = |l: f64| -> Result<Vec<C64>> {
            let r = c(1.0 - l, 0.0).sqrt();
            let mut v = vec![-r, r];
            sort_eigenvalues(&mut v);
            Ok(v)
        };
        let grid = linspace(0.0, 2.0, 20).unwrap();
        let scan = pt_phase_scan(&f, &grid, &ScanSettings::default()).unwrap();
        assert!((scan.threshold.unwrap() - 1.0).abs() < 1e-4);
        assert_eq!(scan.rows.len(), 21);
        let none = pt_phase_scan(&f, &linspace(0.0, 0.5, 5).unwrap(), &ScanSettings::default()).unwrap();
        assert_eq!(none.threshold, None);
        assert_eq!(linspace(1.0, 0.0, 3), Err(Error::EmptyRange));
    }

    proptest! {
        #[test]
        fn closure_of_conjugate_sets(re in prop::collection::vec(-5.0f64..5.0, 1..6), im in prop::collection::vec(0.0f64..3.0, 6)) {
            let mut values = Vec::new();
            for (k, r) in re.iter().enumerate() {
                values.push(c(*r, im[k]));
                values.push(c(*r, -im[k]));
            }
            prop_assert!(conjugation_closure(&values) < 1e-15);
            let cls = classify_values(&values, 1e-8).unwrap();
            prop_assert!(cls.unpaired_complex.is_empty());
        }

        #[test]
        fn sorting_is_lexicographic(vals in prop::collection::vec((-3i32..3, -3i32..3), 0..12)) {
            let mut v: Vec<C64> = vals.iter().map(|(a, b)| c(*a as f64, *b as f64)).collect();
            sort_eigenvalues(&mut v);
            for w in v.windows(2) {
                prop_assert!(w[0].re < w[1].re || (w[0].re == w[1].re && w[0].im <= w[1].im));
            }
        }
    }
}
