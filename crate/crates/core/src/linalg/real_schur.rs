//! Real Schur decomposition by Householder reduction and Francis
//! double-shift QR, after the EISPACK `orthes`/`hqr2` pair.
//!
//! Complex eigenvalues of a real matrix come out of a 2x2 block as
//! `x +- i y` computed once, so the spectrum is closed under conjugation
//! exactly rather than to within rounding.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use super::schur::Givens;
use super::Matrix;
use crate::{Error, Result, C64};

const MAX_SWEEPS: usize = 100;

/// Dense real matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct RealMatrix {
    n: usize,
    data: Vec<f64>,
}

impl RealMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_fn<F: FnMut(usize, usize) -> f64>(n: usize, mut f: F) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)])
    }

    pub fn to_complex(&self) -> Matrix {
        Matrix::from_fn(self.n, self.n, |i, j| C64::new(self[(i, j)], 0.0))
    }
}

impl Index<(usize, usize)> for RealMatrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for RealMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }
}

/// Householder reduction to upper Hessenberg form, `A = V H V^T`.
fn orthes(h: &mut RealMatrix, v: Option<&mut RealMatrix>) {
    let n = h.n;
    if n < 3 {
        return;
    }
    let high = n - 1;
    let mut ort = vec![0.0; n];
    let mut f_row = vec![0.0; n];
    // Householder vectors are kept in the eliminated part of each column
    // until the transformation has been accumulated.
    let mut kept = vec![0.0; n];
    for m in 1..high {
        let scale: f64 = (m..=high).map(|i| h[(i, m - 1)].abs()).sum();
        if scale == 0.0 {
            continue;
        }
        let mut hh = 0.0;
        for i in (m..=high).rev() {
            ort[i] = h[(i, m - 1)] / scale;
            hh += ort[i] * ort[i];
        }
        let mut g = libm::sqrt(hh);
        if ort[m] > 0.0 {
            g = -g;
        }
        hh -= ort[m] * g;
        ort[m] -= g;

        // H <- (I - u u^T / hh) H
        f_row[m..n].fill(0.0);
        for i in m..=high {
            let oi = ort[i];
            let row = &h.data[i * n + m..i * n + n];
            for (f, x) in f_row[m..n].iter_mut().zip(row) {
                *f += oi * x;
            }
        }
        for i in m..=high {
            let oi = ort[i] / hh;
            let row = &mut h.data[i * n + m..i * n + n];
            for (x, f) in row.iter_mut().zip(&f_row[m..n]) {
                *x -= f * oi;
            }
        }
        // H <- H (I - u u^T / hh)
        for i in 0..=high {
            let row = &mut h.data[i * n + m..i * n + high + 1];
            let f: f64 = row.iter().zip(&ort[m..=high]).map(|(x, o)| x * o).sum::<f64>() / hh;
            for (x, o) in row.iter_mut().zip(&ort[m..=high]) {
                *x -= f * o;
            }
        }
        ort[m] *= scale;
        h[(m, m - 1)] = scale * g;
        kept[m] = ort[m];
        for i in m + 1..=high {
            h[(i, m - 1)] = ort[i] * scale;
        }
    }

    if let Some(v) = v {
        *v = RealMatrix::identity(n);
        let mut u = vec![0.0; n];
        let mut gcol = vec![0.0; n];
        for m in (1..high).rev() {
            if h[(m, m - 1)] == 0.0 || kept[m] == 0.0 {
                continue;
            }
            u[m] = kept[m];
            for i in m + 1..=high {
                u[i] = h[(i, m - 1)];
            }
            gcol[m..=high].fill(0.0);
            for i in m..=high {
                let ui = u[i];
                let row = &v.data[i * n + m..i * n + high + 1];
                for (gj, x) in gcol[m..=high].iter_mut().zip(row) {
                    *gj += ui * x;
                }
            }
            let denom = u[m] * h[(m, m - 1)];
            for i in m..=high {
                let ui = u[i];
                let row = &mut v.data[i * n + m..i * n + high + 1];
                for (x, gj) in row.iter_mut().zip(&gcol[m..=high]) {
                    *x += gj / denom * ui;
                }
            }
        }
    }
    for j in 0..n {
        for i in j + 2..n {
            h[(i, j)] = 0.0;
        }
    }
}

/// Result of [`hqr`]: eigenvalues as `re + i im` with conjugate pairs
/// adjacent (positive imaginary part first).
struct Hqr {
    re: Vec<f64>,
    im: Vec<f64>,
}

/// Francis double-shift QR on a Hessenberg matrix. With `v` present the
/// full quasi-triangular Schur form is maintained and the orthogonal
/// transformations are accumulated into `v`, which holds the transpose of
/// the accumulated factor so that column updates run along rows.
fn hqr(h: &mut RealMatrix, mut v: Option<&mut RealMatrix>) -> Result<Hqr> {
    let nn = h.n;
    let full = v.is_some();
    let mut d = vec![0.0; nn];
    let mut e = vec![0.0; nn];
    if nn == 0 {
        return Ok(Hqr { re: d, im: e });
    }
    let eps = f64::EPSILON;
    let low = 0usize;
    let high = nn - 1;
    let mut exshift = 0.0;
    let (mut p, mut q, mut r, mut s, mut z): (f64, f64, f64, f64, f64);
    let (mut w, mut x, mut y);

    let mut norm = 0.0;
    for i in 0..nn {
        for j in i.saturating_sub(1)..nn {
            norm += h[(i, j)].abs();
        }
    }

    let mut n = nn as isize - 1;
    let mut iter = 0usize;
    while n >= low as isize {
        let nu = n as usize;
        let mut l = nu;
        while l > low {
            s = h[(l - 1, l - 1)].abs() + h[(l, l)].abs();
            if s == 0.0 {
                s = norm;
            }
            if h[(l, l - 1)].abs() < eps * s {
                break;
            }
            l -= 1;
        }
        if l > low {
            h[(l, l - 1)] = 0.0;
        }

        if l == nu {
            h[(nu, nu)] += exshift;
            d[nu] = h[(nu, nu)];
            e[nu] = 0.0;
            n -= 1;
            iter = 0;
        } else if l + 1 == nu {
            w = h[(nu, nu - 1)] * h[(nu - 1, nu)];
            p = (h[(nu - 1, nu - 1)] - h[(nu, nu)]) / 2.0;
            q = p * p + w;
            z = libm::sqrt(q.abs());
            h[(nu, nu)] += exshift;
            h[(nu - 1, nu - 1)] += exshift;
            x = h[(nu, nu)];
            if q >= 0.0 {
                z = if p >= 0.0 { p + z } else { p - z };
                d[nu - 1] = x + z;
                d[nu] = d[nu - 1];
                if z != 0.0 {
                    d[nu] = x - w / z;
                }
                e[nu - 1] = 0.0;
                e[nu] = 0.0;
                if full {
                    x = h[(nu, nu - 1)];
                    s = x.abs() + z.abs();
                    p = x / s;
                    q = z / s;
                    r = libm::sqrt(p * p + q * q);
                    p /= r;
                    q /= r;
                    for j in nu - 1..nn {
                        z = h[(nu - 1, j)];
                        h[(nu - 1, j)] = q * z + p * h[(nu, j)];
                        h[(nu, j)] = q * h[(nu, j)] - p * z;
                    }
                    for i in 0..=nu {
                        z = h[(i, nu - 1)];
                        h[(i, nu - 1)] = q * z + p * h[(i, nu)];
                        h[(i, nu)] = q * h[(i, nu)] - p * z;
                    }
                    if let Some(v) = v.as_deref_mut() {
                        for i in low..=high {
                            z = v[(nu - 1, i)];
                            v[(nu - 1, i)] = q * z + p * v[(nu, i)];
                            v[(nu, i)] = q * v[(nu, i)] - p * z;
                        }
                    }
                    h[(nu, nu - 1)] = 0.0;
                }
            } else {
                d[nu - 1] = x + p;
                d[nu] = x + p;
                e[nu - 1] = z;
                e[nu] = -z;
            }
            n -= 2;
            iter = 0;
        } else {
            x = h[(nu, nu)];
            y = 0.0;
            w = 0.0;
            if l < nu {
                y = h[(nu - 1, nu - 1)];
                w = h[(nu, nu - 1)] * h[(nu - 1, nu)];
            }
            if iter == 10 {
                exshift += x;
                for i in low..=nu {
                    h[(i, i)] -= x;
                }
                s = h[(nu, nu - 1)].abs() + h[(nu - 1, nu - 2)].abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            if iter == 30 {
                s = (y - x) / 2.0;
                s = s * s + w;
                if s > 0.0 {
                    s = libm::sqrt(s);
                    if y < x {
                        s = -s;
                    }
                    s = x - w / ((y - x) / 2.0 + s);
                    for i in low..=nu {
                        h[(i, i)] -= s;
                    }
                    exshift += s;
                    x = 0.964;
                    y = x;
                    w = x;
                }
            }
            iter += 1;
            if iter > MAX_SWEEPS {
                return Err(Error::NoConvergence { iterations: iter });
            }

            // Look for two consecutive small subdiagonal elements.
            let mut m = nu - 2;
            loop {
                z = h[(m, m)];
                r = x - z;
                s = y - z;
                p = (r * s - w) / h[(m + 1, m)] + h[(m, m + 1)];
                q = h[(m + 1, m + 1)] - z - r - s;
                r = h[(m + 2, m + 1)];
                s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                if h[(m, m - 1)].abs() * (q.abs() + r.abs())
                    < eps * (p.abs() * (h[(m - 1, m - 1)].abs() + z.abs() + h[(m + 1, m + 1)].abs()))
                {
                    break;
                }
                m -= 1;
            }
            for i in m + 2..=nu {
                h[(i, i - 2)] = 0.0;
                if i > m + 2 {
                    h[(i, i - 3)] = 0.0;
                }
            }

            let col_end = if full { nn } else { nu + 1 };
            let row_start = if full { 0 } else { l };
            for k in m..nu {
                let notlast = k != nu - 1;
                if k != m {
                    p = h[(k, k - 1)];
                    q = h[(k + 1, k - 1)];
                    r = if notlast { h[(k + 2, k - 1)] } else { 0.0 };
                    x = p.abs() + q.abs() + r.abs();
                    if x == 0.0 {
                        continue;
                    }
                    p /= x;
                    q /= x;
                    r /= x;
                }
                s = libm::sqrt(p * p + q * q + r * r);
                if p < 0.0 {
                    s = -s;
                }
                if s == 0.0 {
                    continue;
                }
                if k != m {
                    h[(k, k - 1)] = -s * x;
                    h[(k + 1, k - 1)] = 0.0;
                    if notlast {
                        h[(k + 2, k - 1)] = 0.0;
                    }
                } else if l != m {
                    h[(k, k - 1)] = -h[(k, k - 1)];
                }
                p += s;
                x = p / s;
                y = q / s;
                z = r / s;
                q /= p;
                r /= p;

                for j in k..col_end {
                    p = h[(k, j)] + q * h[(k + 1, j)];
                    if notlast {
                        p += r * h[(k + 2, j)];
                        h[(k + 2, j)] -= p * z;
                    }
                    h[(k, j)] -= p * x;
                    h[(k + 1, j)] -= p * y;
                }
                for i in row_start..=nu.min(k + 3) {
                    p = x * h[(i, k)] + y * h[(i, k + 1)];
                    if notlast {
                        p += z * h[(i, k + 2)];
                        h[(i, k + 2)] -= p * r;
                    }
                    h[(i, k)] -= p;
                    h[(i, k + 1)] -= p * q;
                }
                if let Some(v) = v.as_deref_mut() {
                    for i in low..=high {
                        p = x * v[(k, i)] + y * v[(k + 1, i)];
                        if notlast {
                            p += z * v[(k + 2, i)];
                            v[(k + 2, i)] -= p * r;
                        }
                        v[(k, i)] -= p;
                        v[(k + 1, i)] -= p * q;
                    }
                }
            }
        }
    }
    Ok(Hqr { re: d, im: e })
}

/// Eigenvalues of a real matrix. Complex ones come in exact conjugate
/// pairs.
pub fn real_eigenvalues(a: &RealMatrix) -> Result<Vec<C64>> {
    let mut h = a.clone();
    orthes(&mut h, None);
    let out = hqr(&mut h, None)?;
    Ok(out
        .re
        .iter()
        .zip(&out.im)
        .map(|(re, im)| C64::new(*re, *im))
        .collect())
}

/// Complex Schur form of a real matrix, `A = Z T Z^H`, obtained from the
/// real quasi-triangular form by rotating each 2x2 block to triangular
/// shape. The diagonal of `T` holds the eigenvalues with conjugate pairs
/// set exactly.
pub fn real_schur_complex(a: &RealMatrix) -> Result<(Matrix, Matrix, Vec<C64>)> {
    let n = a.n;
    let mut h = a.clone();
    let mut v = RealMatrix::identity(n);
    orthes(&mut h, Some(&mut v));
    let mut vt = v.transpose();
    let out = hqr(&mut h, Some(&mut vt))?;
    let v = vt.transpose();
    let mut t = h.to_complex();
    // Real eigenvalues are read off the standardized diagonal; complex ones
    // keep the exactly conjugate values of their 2x2 blocks.
    let values: Vec<C64> = (0..n)
        .map(|i| {
            if out.im[i] == 0.0 {
                C64::new(h[(i, i)], 0.0)
            } else {
                C64::new(out.re[i], out.im[i])
            }
        })
        .collect();
    let mut z = v.to_complex();
    let mut k = 0;
    while k < n {
        if out.im[k] != 0.0 && k + 1 < n {
            let lambda = values[k];
            let (a11, a12, a21, a22) = (t[(k, k)], t[(k, k + 1)], t[(k + 1, k)], t[(k + 1, k + 1)]);
            // Eigenvector of the block for `lambda`; the rotation that maps
            // it to e_1 triangularizes the block.
            let (u1, u2) = if a12.norm() >= a21.norm() {
                (a12, lambda - a11)
            } else {
                (lambda - a22, a21)
            };
            let g = Givens::zeroing(u1, u2);
            g.rows(&mut t, k, 0..n);
            g.cols(&mut t, k, 0..n);
            g.cols(&mut z, k, 0..n);
            t[(k + 1, k)] = C64::new(0.0, 0.0);
            t[(k, k)] = lambda;
            t[(k + 1, k + 1)] = values[k + 1];
            k += 2;
        } else {
            k += 1;
        }
    }
    for i in 1..n {
        for j in 0..i {
            t[(i, j)] = C64::new(0.0, 0.0);
        }
    }
    Ok((t, z, values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random(n: usize, seed: u64) -> RealMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        RealMatrix::from_fn(n, |_, _| rng.gen_range(-1.0..1.0))
    }

    #[test]
    fn orthes_is_orthogonal_similarity() {
        let a = random(15, 2);
        let mut h = a.clone();
        let mut v = RealMatrix::identity(15);
        orthes(&mut h, Some(&mut v));
        let (hc, vc) = (h.to_complex(), v.to_complex());
        let back = vc.matmul(&hc).unwrap().matmul(&vc.adjoint()).unwrap();
        assert!(back.max_abs_diff(&a.to_complex()).unwrap() < 1e-13);
    }

    #[test]
    fn rotation_has_conjugate_pairs() {
        let a = RealMatrix::from_fn(2, |i, j| match (i, j) {
            (0, 1) => -1.0,
            (1, 0) => 1.0,
            _ => 0.0,
        });
        let mut vals = real_eigenvalues(&a).unwrap();
        vals.sort_by(|x, y| x.im.partial_cmp(&y.im).unwrap());
        assert_eq!(vals[0], C64::new(0.0, -1.0));
        assert_eq!(vals[1], C64::new(0.0, 1.0));
    }

    #[test]
    fn complex_schur_of_real_matrix_reconstructs() {
        for (n, seed) in [(1, 1), (2, 7), (3, 8), (10, 9), (40, 10)] {
            let a = random(n, seed);
            let (t, z, vals) = real_schur_complex(&a).unwrap();
            let back = z.matmul(&t).unwrap().matmul(&z.adjoint()).unwrap();
            assert!(back.max_abs_diff(&a.to_complex()).unwrap() < 1e-12, "n = {n}");
            for (i, v) in vals.iter().enumerate() {
                assert_eq!(t[(i, i)], *v);
                if v.im != 0.0 {
                    assert!(vals.iter().any(|w| *w == v.conj()));
                }
            }
        }
    }
}
