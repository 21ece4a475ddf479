use std::f64::consts::PI;

use proptest::prelude::*;
use ptxform_core::spinchain::monomial_overlap;
use ptxform_core::transforms::*;
use ptxform_core::{Complex64 as C64, Grid, Matrix, Space, WaveFunction};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn max_diff(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Gauss-Laguerre nodes and weights for `int_0^inf e^{-t} f(t) dt` by Newton
/// iteration on `L_n`, started from the usual asymptotic guesses.
fn gauss_laguerre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let mut z: f64 = 0.0;
    for i in 0..n {
        z = match i {
            0 => 3.0 / (1.0 + 2.4 * n as f64),
            1 => z + 15.0 / (1.0 + 2.5 * n as f64),
            _ => {
                let ai = (i - 1) as f64;
                z + (1.0 + 2.55 * ai) / (1.9 * ai) * (z - x[i - 2])
            }
        };
        let mut pp = 0.0;
        let mut p2 = 0.0;
        for _ in 0..100 {
            let (mut p1, mut p3);
            p1 = 1.0;
            p2 = 0.0;
            for j in 1..=n {
                p3 = p2;
                p2 = p1;
                p1 = ((2 * j - 1) as f64 - z) * p2 / j as f64 - (j - 1) as f64 * p3 / j as f64;
            }
            pp = (n as f64 * p1 - n as f64 * p2) / z;
            let z1 = z;
            z = z1 - p1 / pp;
            if (z - z1).abs() <= 1e-15 * z.abs() {
                break;
            }
        }
        x[i] = z;
        w[i] = -1.0 / (pp * n as f64 * p2);
    }
    (x, w)
}

/// `<F, G>_mu = pi^{-1} int conj(F) G e^{-|z|^2} d^2z` in polar form: an
/// equispaced angular rule and Gauss-Laguerre in `t = |z|^2`.
fn bargmann_quadrature(f: &BargmannFunction, g: &BargmannFunction) -> C64 {
    let (t, w) = gauss_laguerre(40);
    let angles = 96;
    let mut acc = c(0.0, 0.0);
    for (ti, wi) in t.iter().zip(&w) {
        let r = ti.sqrt();
        for k in 0..angles {
            let z = C64::from_polar(r, 2.0 * PI * k as f64 / angles as f64);
            acc += f.eval(z).conj() * g.eval(z) * *wi;
        }
    }
    acc / angles as f64
}

#[test]
fn gauss_laguerre_moments() {
    let (t, w) = gauss_laguerre(20);
    for k in 0..20u32 {
        let m: f64 = t.iter().zip(&w).map(|(ti, wi)| wi * ti.powi(k as i32)).sum();
        let fact: f64 = (1..=k).map(f64::from).product();
        assert!((m - fact).abs() < 1e-11 * fact.max(1.0), "moment {k}");
    }
}

#[test]
fn fourier_matrix_structure() {
    for n in [3usize, 65, 801] {
        let f = UnitaryFourierMatrix::new(n).to_matrix();
        let id = Matrix::identity(n);
        assert!(f.adjoint().matmul(&f).unwrap().max_abs_diff(&id).unwrap() <= 1e-12);
        let f2 = f.matmul(&f).unwrap();
        let reversal: Vec<usize> = (0..n).rev().collect();
        assert!(f2.max_abs_diff(&Matrix::permutation(&reversal)).unwrap() <= 1e-12);
        let f4 = f2.matmul(&f2).unwrap();
        assert!(f4.max_abs_diff(&id).unwrap() <= 1e-12);
    }
}

#[test]
fn hermite_functions_pick_up_powers_of_minus_i() {
    let grid = Grid::new(10.0, 801).unwrap();
    let mut phase = c(1.0, 0.0);
    for n in 0..=10 {
        let out = fourier(&hermite_wavefunction(grid, n), FourierConvention::Unitary).unwrap();
        assert_eq!(out.space(), Space::Momentum);
        let expected: Vec<C64> = grid.momenta().map(|p| phase * hermite_function(n, p)).collect();
        assert!(max_diff(out.samples(), &expected) < 1e-8, "n = {n}");
        phase *= c(0.0, -1.0);
    }
}

#[test]
fn first_hermite_function_in_unnormalized_form() {
    let grid = Grid::new(10.0, 801).unwrap();
    let f = WaveFunction::from_real_fn(grid, |x| (-x * x / 2.0).exp() * 2.0 * x);
    let out = fourier(&f, FourierConvention::Unitary).unwrap();
    let expected: Vec<C64> = grid.momenta().map(|k| c(0.0, -1.0) * ((-k * k / 2.0).exp() * 2.0 * k)).collect();
    assert!(max_diff(out.samples(), &expected) < 1e-8);
}

#[test]
fn powers_on_an_asymmetric_vector() {
    let grid = Grid::new(5.0, 65).unwrap();
    let f = WaveFunction::from_fn(grid, |x| c(x + 0.3 * x * x, (x - 1.0).sin()));
    let two = fourier_power(&f, 2).unwrap();
    let mut reversed = f.samples().to_vec();
    reversed.reverse();
    assert!(max_diff(two.samples(), &reversed) < 1e-12);
    let mut four = f.clone();
    for _ in 0..4 {
        four = fourier_power(&four, 1).unwrap();
    }
    assert!(max_diff(four.samples(), f.samples()) < 1e-12);
    assert_eq!(fourier_power(&f, 4).unwrap_err(), ptxform_core::Error::FourierPowerOutOfRange(4));
}

#[test]
fn third_power_is_inverse_on_self_dual_grid() {
    // h = dp when n h^2 = 2 pi.
    let n = 101usize;
    let h = (2.0 * PI / n as f64).sqrt();
    let grid = Grid::new(h * 50.0, n).unwrap();
    let f = WaveFunction::from_fn(grid, |x| c((-x * x).exp(), 0.2 * x * (-x * x).exp()));
    let forward = fourier(&f, FourierConvention::Unitary).unwrap();
    let three = fourier_power(&forward, 3).unwrap();
    let inverse = inverse_fourier(&forward, FourierConvention::Unitary).unwrap();
    assert!(max_diff(three.samples(), inverse.samples()) < 1e-12);
}

#[test]
fn round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let grid = Grid::new(8.0, 201).unwrap();
    let samples: Vec<C64> = (0..201).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    let f = WaveFunction::new(grid, Space::Position, samples).unwrap();
    for conv in [FourierConvention::Unitary, FourierConvention::Analyst] {
        let back = inverse_fourier(&fourier(&f, conv).unwrap(), conv).unwrap();
        assert!(back.max_abs_diff(&f).unwrap() < 1e-12);
    }
}

#[test]
fn parseval_examples() {
    let grid = Grid::new(10.0, 401).unwrap();
    let gauss = WaveFunction::from_real_fn(grid, |x| (-x * x / 2.0).exp());
    let p = parseval(&gauss, &gauss, FourierConvention::Analyst).unwrap();
    assert!((p.lhs - p.rhs / (2.0 * PI)).norm() < 1e-10);
    let odd = WaveFunction::from_real_fn(grid, |x| x * (-x * x / 2.0).exp());
    let p = parseval(&gauss, &odd, FourierConvention::Unitary).unwrap();
    assert!(p.lhs.norm() < 1e-12 && p.rhs.norm() < 1e-12);
}

#[test]
fn convolution_theorem_for_gaussians() {
    let grid = Grid::new(15.0, 301).unwrap();
    let f = WaveFunction::from_real_fn(grid, |x| (-x * x).exp());
    let g = WaveFunction::from_real_fn(grid, |x| (-2.0 * (x - 0.5) * (x - 0.5)).exp());
    let conv = FourierConvention::Analyst;
    let lhs = fourier(&convolve(&f, &g).unwrap(), conv).unwrap();
    let (ff, fg) = (fourier(&f, conv).unwrap(), fourier(&g, conv).unwrap());
    let rhs: Vec<C64> = ff.samples().iter().zip(fg.samples()).map(|(a, b)| a * b).collect();
    assert!(max_diff(lhs.samples(), &rhs) < 1e-6);

    // F^{-1}[F f * F g] = 2 pi f g under the analyst pair.
    let mom = convolve(&ff, &fg).unwrap().scale(c(1.0 / (2.0 * PI), 0.0));
    let back = inverse_fourier(&mom, conv).unwrap();
    let product: Vec<C64> = f.samples().iter().zip(g.samples()).map(|(a, b)| a * b).collect();
    assert!(max_diff(back.samples(), &product) < 1e-6);
}

#[test]
fn convolution_with_a_spike() {
    let grid = Grid::new(10.0, 401).unwrap();
    let f = WaveFunction::from_real_fn(grid, |x| (-(x - 1.0) * (x - 1.0)).exp());
    let mut spike = vec![c(0.0, 0.0); 401];
    spike[200] = c(1.0 / grid.h(), 0.0);
    let delta = WaveFunction::new(grid, Space::Position, spike).unwrap();
    let out = convolve(&f, &delta).unwrap();
    assert!(out.max_abs_diff(&f).unwrap() < 1e-12);
}

#[test]
fn bargmann_images_of_hermite_functions() {
    let grid = Grid::new(10.0, 801).unwrap();
    for n in 0..=10 {
        let b = segal_bargmann(&hermite_wavefunction(grid, n), 10).unwrap();
        let unit: Vec<C64> = (0..=10).map(|k| c(if k == n { 1.0 } else { 0.0 }, 0.0)).collect();
        assert!(max_diff(b.coeffs(), &unit) < 1e-8, "n = {n}");
    }
    let mix = WaveFunction::from_real_fn(grid, |x| (hermite_function(0, x) + hermite_function(2, x)) / 2f64.sqrt());
    let b = segal_bargmann(&mix, 4).unwrap();
    let s = 1.0 / 2f64.sqrt();
    assert!(max_diff(b.coeffs(), &[c(s, 0.0), c(0.0, 0.0), c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0)]) < 1e-10);
    // B h_0 = 1 and B h_1 = z pointwise through the kernel.
    for z in [c(0.3, -0.2), c(-1.0, 0.5)] {
        let k0 = segal_bargmann_kernel(&hermite_wavefunction(grid, 0), z).unwrap();
        let k1 = segal_bargmann_kernel(&hermite_wavefunction(grid, 1), z).unwrap();
        assert!((k0 - c(1.0, 0.0)).norm() < 1e-10);
        assert!((k1 - z).norm() < 1e-10);
    }
}

#[test]
fn bargmann_transform_is_unitary_on_band_limited_pairs() {
    let grid = Grid::new(14.0, 1121).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let band = 15;
    let random_state = |rng: &mut ChaCha8Rng| {
        let coeffs: Vec<C64> = (0..=band).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        WaveFunction::from_fn(grid, move |x| {
            hermite_functions(band, x).iter().zip(&coeffs).map(|(h, c)| c * *h).sum()
        })
    };
    for _ in 0..20 {
        let f = random_state(&mut rng);
        let g = random_state(&mut rng);
        let position = f.inner(&g).unwrap();
        let (bf, bg) = (segal_bargmann(&f, 30).unwrap(), segal_bargmann(&g, 30).unwrap());
        assert!((position - bargmann_inner(&bf, &bg)).norm() <= 1e-8);
        assert!((position - bargmann_quadrature(&bf, &bg)).norm() <= 1e-8);
    }
}

#[test]
fn two_mode_monomial_norms_by_quadrature() {
    // int |z|^{2a} e^{-|z|^2} d^2z = pi int_0^inf t^a e^{-t} dt.
    let (t, w) = gauss_laguerre(20);
    let radial = |a: u32| PI * t.iter().zip(&w).map(|(ti, wi)| wi * ti.powi(a as i32)).sum::<f64>();
    for a in 0..5 {
        for b in 0..5 {
            let q = radial(a) * radial(b);
            assert!((q - monomial_overlap(a, b, a, b)).abs() < 1e-10 * q);
        }
    }
}

#[test]
fn bargmann_number_operator_examples() {
    let z2 = BargmannFunction::monomial(2);
    assert_eq!(bargmann_number_apply(&z2, 1.0), z2.scale(c(2.5, 0.0)));
    let one = BargmannFunction::monomial(0);
    assert_eq!(bargmann_number_apply(&one, 2.0), one);
}

proptest! {
    #[test]
    fn unitary_transform_preserves_discrete_norm(seed in any::<u64>(), n in (1usize..40).prop_map(|k| 2 * k + 1)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let grid = Grid::new(3.0, n).unwrap();
        let samples: Vec<C64> = (0..n).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        let f = WaveFunction::new(grid, Space::Position, samples).unwrap();
        let g = fourier(&f, FourierConvention::Unitary).unwrap();
        let p = parseval(&f, &f, FourierConvention::Unitary).unwrap();
        prop_assert!(p.mismatch() < 1e-12 * p.lhs.norm().max(1.0));
        prop_assert!((parity(&parity(&f)).samples() == f.samples()));
        prop_assert_eq!(g.space(), Space::Momentum);
    }
}
