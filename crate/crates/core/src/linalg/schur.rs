//! Complex Schur decomposition: Householder reduction to Hessenberg form
//! followed by implicitly shifted single-shift QR sweeps.

use alloc::vec;
use alloc::vec::Vec;

use super::Matrix;
use crate::{Error, Result, C64};

const ZERO: C64 = C64::new(0.0, 0.0);

/// Iterations allowed per eigenvalue before giving up.
const MAX_SWEEPS: usize = 60;

/// Reduces `a` to upper Hessenberg form in place. When `q` is given it is
/// overwritten by `q * Q` so that `A_original = Q H Q^H`.
pub fn hessenberg(a: &mut Matrix, mut q: Option<&mut Matrix>) {
    let n = a.rows();
    if n < 3 {
        return;
    }
    let mut v = vec![ZERO; n];
    let mut s = vec![ZERO; n];
    for k in 0..n - 2 {
        let tail: f64 = (k + 2..n).map(|i| a[(i, k)].norm_sqr()).sum();
        if tail == 0.0 {
            continue;
        }
        let x0 = a[(k + 1, k)];
        let norm = libm::sqrt(tail + x0.norm_sqr());
        let phase = if x0 == ZERO { C64::new(1.0, 0.0) } else { x0 / x0.norm() };
        let alpha = -phase * norm;
        v[k + 1] = x0 - alpha;
        for i in k + 2..n {
            v[i] = a[(i, k)];
        }
        let vv: f64 = (k + 1..n).map(|i| v[i].norm_sqr()).sum();
        let beta = 2.0 / vv;

        // A <- P A on rows k+1.., columns k..
        s[k..n].fill(ZERO);
        for i in k + 1..n {
            let vi = v[i].conj();
            let row = &a.row(i)[k..n];
            for (sj, aij) in s[k..n].iter_mut().zip(row) {
                *sj += vi * aij;
            }
        }
        for i in k + 1..n {
            let f = v[i] * beta;
            let row = &mut a.row_mut(i)[k..n];
            for (aij, sj) in row.iter_mut().zip(&s[k..n]) {
                *aij -= f * sj;
            }
        }
        // A <- A P on all rows, columns k+1..
        apply_reflector_right(a, &v, k + 1, beta);
        if let Some(q) = q.as_deref_mut() {
            apply_reflector_right(q, &v, k + 1, beta);
        }
        a[(k + 1, k)] = alpha;
        for i in k + 2..n {
            a[(i, k)] = ZERO;
        }
    }
}

fn apply_reflector_right(m: &mut Matrix, v: &[C64], start: usize, beta: f64) {
    let n = v.len();
    for i in 0..m.rows() {
        let row = &mut m.row_mut(i)[start..n];
        let t: C64 = row.iter().zip(&v[start..n]).map(|(x, vj)| x * vj).sum::<C64>() * beta;
        for (x, vj) in row.iter_mut().zip(&v[start..n]) {
            *x -= t * vj.conj();
        }
    }
}

/// Rotation `[[c, s], [-conj(s), c]]` mapping `(a, b)` to `(r, 0)`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Givens {
    pub c: f64,
    pub s: C64,
}

impl Givens {
    pub fn zeroing(a: C64, b: C64) -> Self {
        if b == ZERO {
            return Self { c: 1.0, s: ZERO };
        }
        let an = a.norm();
        if an == 0.0 {
            return Self {
                c: 0.0,
                s: C64::new(1.0, 0.0),
            };
        }
        let rho = libm::hypot(an, b.norm());
        Self {
            c: an / rho,
            s: (a / an) * b.conj() / rho,
        }
    }

    /// Applies the rotation to rows `k, k+1` over columns `cols`.
    pub fn rows(&self, m: &mut Matrix, k: usize, cols: core::ops::Range<usize>) {
        let n = m.cols();
        let data = m.as_mut_slice();
        let (top, bottom) = data.split_at_mut((k + 1) * n);
        let r1 = &mut top[k * n..];
        let r2 = &mut bottom[..n];
        for j in cols {
            let (x, y) = (r1[j], r2[j]);
            r1[j] = x * self.c + self.s * y;
            r2[j] = y * self.c - self.s.conj() * x;
        }
    }

    /// Applies the adjoint rotation from the right to columns `k, k+1` over
    /// rows `rows`.
    pub fn cols(&self, m: &mut Matrix, k: usize, rows: core::ops::Range<usize>) {
        let sc = self.s.conj();
        for i in rows {
            let row = m.row_mut(i);
            let (x, y) = (row[k], row[k + 1]);
            row[k] = x * self.c + y * sc;
            row[k + 1] = y * self.c - x * self.s;
        }
    }
}

/// Wilkinson shift: eigenvalue of `[[a, b], [c, d]]` nearest `d`.
fn wilkinson(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let p = (a - d) * 0.5;
    let bc = b * c;
    let disc = (p * p + bc).sqrt();
    let t = if (p + disc).norm() >= (p - disc).norm() {
        p + disc
    } else {
        p - disc
    };
    if t == ZERO {
        d
    } else {
        d - bc / t
    }
}

/// Reduces an upper Hessenberg matrix to upper triangular Schur form in
/// place. With `z` present the rotations are accumulated into it and the
/// full triangle is kept up to date; without it only the eigenvalues on the
/// diagonal are meaningful.
pub fn hessenberg_qr(h: &mut Matrix, mut z: Option<&mut Matrix>) -> Result<()> {
    let n = h.rows();
    if n == 0 {
        return Ok(());
    }
    let full = z.is_some();
    let eps = f64::EPSILON;
    let mut hi = n - 1;
    let mut iter = 0usize;
    while hi > 0 {
        // Locate the top of the active unreduced block.
        let mut lo = hi;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].norm();
            let mut scale = h[(lo, lo)].norm() + h[(lo - 1, lo - 1)].norm();
            if scale == 0.0 {
                scale = (lo - 1..=hi)
                    .flat_map(|i| (i.saturating_sub(1)..=hi).map(move |j| (i, j)))
                    .map(|(i, j)| h[(i, j)].norm())
                    .fold(0.0, f64::max);
            }
            if sub <= eps * scale || sub < f64::MIN_POSITIVE {
                h[(lo, lo - 1)] = ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        if iter > MAX_SWEEPS {
            return Err(Error::NoConvergence { iterations: iter });
        }
        let mu = if iter == 10 || iter == 20 {
            h[(hi, hi)] + 0.75 * h[(hi, hi - 1)].norm()
        } else {
            wilkinson(
                h[(hi - 1, hi - 1)],
                h[(hi - 1, hi)],
                h[(hi, hi - 1)],
                h[(hi, hi)],
            )
        };
        let col_end = if full { n } else { hi + 1 };
        let row_start = if full { 0 } else { lo };
        for k in lo..hi {
            let g = if k == lo {
                Givens::zeroing(h[(lo, lo)] - mu, h[(lo + 1, lo)])
            } else {
                Givens::zeroing(h[(k, k - 1)], h[(k + 1, k - 1)])
            };
            let first = if k == lo { lo } else { k - 1 };
            g.rows(h, k, first..col_end);
            if k > lo {
                h[(k + 1, k - 1)] = ZERO;
            }
            g.cols(h, k, row_start..(k + 3).min(hi + 1));
            if let Some(z) = z.as_deref_mut() {
                g.cols(z, k, 0..n);
            }
        }
    }
    Ok(())
}

/// Eigenvalues of an arbitrary square complex matrix (diagonal of the
/// Schur form, unordered).
pub fn eigenvalues(a: &Matrix) -> Result<Vec<C64>> {
    let mut h = a.clone();
    hessenberg(&mut h, None);
    hessenberg_qr(&mut h, None)?;
    Ok(h.diag())
}

/// Complex Schur decomposition `A = Z T Z^H`; returns `(T, Z)`.
pub fn schur(a: &Matrix) -> Result<(Matrix, Matrix)> {
    let n = a.rows();
    let mut t = a.clone();
    let mut z = Matrix::identity(n);
    hessenberg(&mut t, Some(&mut z));
    hessenberg_qr(&mut t, Some(&mut z))?;
    for i in 1..n {
        for j in 0..i {
            t[(i, j)] = ZERO;
        }
    }
    Ok((t, z))
}
