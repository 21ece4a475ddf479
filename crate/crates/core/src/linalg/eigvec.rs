//! Eigenvectors of an upper triangular Schur factor.

use alloc::vec;
use alloc::vec::Vec;

use super::Matrix;
use crate::C64;

const ZERO: C64 = C64::new(0.0, 0.0);
const RESCALE: f64 = 1e100;

fn smallest_pivot(t: &Matrix) -> f64 {
    (f64::EPSILON * t.max_abs()).max(f64::MIN_POSITIVE * 1e10)
}

fn clamp_pivot(d: C64, smin: f64) -> C64 {
    if d.norm() < smin {
        C64::new(smin, 0.0)
    } else {
        d
    }
}

fn normalize(x: &mut [C64]) {
    let norm = super::vec_norm(x);
    if norm > 0.0 {
        for v in x {
            *v /= norm;
        }
    }
}

/// Right eigenvectors of `A = Z T Z^H`, one unit-norm column per diagonal
/// entry of `T`.
pub fn right_eigenvectors(t: &Matrix, z: &Matrix) -> Matrix {
    let n = t.rows();
    let smin = smallest_pivot(t);
    let mut y = Matrix::zeros(n, n);
    let mut col = vec![ZERO; n];
    for k in 0..n {
        let lambda = t[(k, k)];
        col.fill(ZERO);
        col[k] = C64::new(1.0, 0.0);
        for j in (0..k).rev() {
            let row = &t.row(j)[j + 1..=k];
            let s: C64 = row.iter().zip(&col[j + 1..=k]).map(|(a, b)| a * b).sum();
            col[j] = -s / clamp_pivot(t[(j, j)] - lambda, smin);
            if col[j].norm() > RESCALE {
                let f = 1.0 / col[j].norm();
                for v in &mut col[j..=k] {
                    *v *= f;
                }
            }
        }
        for (j, v) in col.iter().enumerate().take(k + 1) {
            y[(j, k)] = *v;
        }
    }
    let mut v = z.matmul(&y).expect("square factors");
    normalize_columns(&mut v);
    v
}

/// Left eigenvectors `u` with `u^H A = lambda u^H`, returned as unit-norm
/// columns aligned with the diagonal of `T`.
pub fn left_eigenvectors(t: &Matrix, z: &Matrix) -> Matrix {
    let n = t.rows();
    let smin = smallest_pivot(t);
    let mut w = Matrix::zeros(n, n);
    let mut col = vec![ZERO; n];
    let mut acc = vec![ZERO; n];
    for k in 0..n {
        let lambda = t[(k, k)].conj();
        col.fill(ZERO);
        acc.fill(ZERO);
        col[k] = C64::new(1.0, 0.0);
        // Row-oriented forward substitution: once col[i] is known, its
        // contribution conj(T[i][j]) col[i] is pushed to every later j.
        for i in k..n {
            if i > k {
                col[i] = -acc[i] / clamp_pivot(t[(i, i)].conj() - lambda, smin);
                if col[i].norm() > RESCALE {
                    let f = 1.0 / col[i].norm();
                    for v in col[k..=i].iter_mut().chain(acc[i + 1..].iter_mut()) {
                        *v *= f;
                    }
                }
            }
            let ci = col[i];
            for (a, tij) in acc[i + 1..].iter_mut().zip(&t.row(i)[i + 1..]) {
                *a += tij.conj() * ci;
            }
        }
        for (j, v) in col.iter().enumerate().skip(k) {
            w[(j, k)] = *v;
        }
    }
    let mut u = z.matmul(&w).expect("square factors");
    normalize_columns(&mut u);
    u
}

fn normalize_columns(m: &mut Matrix) {
    let n = m.cols();
    let mut norms = vec![0.0; n];
    for i in 0..m.rows() {
        for (acc, v) in norms.iter_mut().zip(m.row(i)) {
            *acc += v.norm_sqr();
        }
    }
    let inv: Vec<f64> = norms
        .iter()
        .map(|s| if *s > 0.0 { 1.0 / libm::sqrt(*s) } else { 0.0 })
        .collect();
    for i in 0..m.rows() {
        for (v, f) in m.row_mut(i).iter_mut().zip(&inv) {
            *v *= *f;
        }
    }
}

/// Unit-normalizes a single vector in place.
pub fn normalize_vector(x: &mut [C64]) {
    normalize(x)
}
