//! Uniform grids symmetric about the origin and sampled wave functions.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::{Error, Result, C64};

/// A uniform grid on `[-x_max, x_max]` with an odd number of nodes.
///
/// Nodes are generated as `x_i = (i - c) h` with `c = (n - 1) / 2`, so the
/// reversal `i -> n - 1 - i` maps every node to its exact negative and the
/// center node is exactly zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    x_max: f64,
    n: usize,
    h: f64,
}

impl Grid {
    pub fn new(x_max: f64, n: usize) -> Result<Self> {
        if !(x_max > 0.0 && x_max.is_finite()) {
            return Err(Error::NonPositiveExtent(x_max));
        }
        if n % 2 == 0 {
            return Err(Error::EvenNodeCount(n));
        }
        if n < 3 {
            return Err(Error::TooFewNodes(n));
        }
        let h = x_max / ((n - 1) / 2) as f64;
        Ok(Self { x_max, n, h })
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn x_min(&self) -> f64 {
        -self.x_max
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Node spacing.
    pub fn h(&self) -> f64 {
        self.h
    }

    /// Index of the node at the origin.
    pub fn center(&self) -> usize {
        (self.n - 1) / 2
    }

    pub fn node(&self, i: usize) -> f64 {
        (i as f64 - self.center() as f64) * self.h
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |i| self.node(i))
    }

    /// Image of node `i` under `x -> -x`.
    pub fn mirror(&self, i: usize) -> usize {
        self.n - 1 - i
    }

    /// Spacing of the conjugate (momentum) grid, `2 pi / (n h)`.
    pub fn momentum_spacing(&self) -> f64 {
        2.0 * PI / (self.n as f64 * self.h)
    }

    pub fn momentum(&self, k: usize) -> f64 {
        (k as f64 - self.center() as f64) * self.momentum_spacing()
    }

    pub fn momenta(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |k| self.momentum(k))
    }

    /// Index of the node nearest to `x`, chosen symmetrically so that
    /// `nearest(-x) == mirror(nearest(x))`.
    pub fn nearest(&self, x: f64) -> Result<usize> {
        if !(x.abs() <= self.x_max * (1.0 + 1e-12)) {
            return Err(Error::DeltaOutsideGrid {
                location: x,
                x_max: self.x_max,
            });
        }
        let offset = libm::round(x.abs() / self.h) as usize;
        let offset = offset.min(self.center());
        Ok(if x < 0.0 {
            self.center() - offset
        } else {
            self.center() + offset
        })
    }

    /// Samples `f` at every node.
    pub fn sample<F: Fn(f64) -> C64>(&self, f: F) -> Vec<C64> {
        self.nodes().map(f).collect()
    }

    /// Trapezoid rule over the whole grid.
    pub fn trapezoid(&self, values: &[f64]) -> f64 {
        trapezoid(values, self.h)
    }
}

/// Trapezoid rule with uniform spacing.
pub fn trapezoid(values: &[f64], h: f64) -> f64 {
    match values.len() {
        0 | 1 => 0.0,
        n => {
            let inner: f64 = values[1..n - 1].iter().sum();
            h * (inner + 0.5 * (values[0] + values[n - 1]))
        }
    }
}

/// Complex trapezoid rule with uniform spacing.
pub fn trapezoid_c(values: &[C64], h: f64) -> C64 {
    match values.len() {
        0 | 1 => C64::new(0.0, 0.0),
        n => {
            let inner: C64 = values[1..n - 1].iter().sum();
            (inner + (values[0] + values[n - 1]) * 0.5) * h
        }
    }
}

/// Which representation a set of samples lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Space {
    Position,
    Momentum,
}

impl Space {
    pub fn name(self) -> &'static str {
        match self {
            Space::Position => "position",
            Space::Momentum => "momentum",
        }
    }

    pub fn dual(self) -> Self {
        match self {
            Space::Position => Space::Momentum,
            Space::Momentum => Space::Position,
        }
    }
}

/// Samples of a wave function on a grid (position space) or on its
/// conjugate momentum grid.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveFunction {
    grid: Grid,
    space: Space,
    samples: Vec<C64>,
}

impl WaveFunction {
    pub fn new(grid: Grid, space: Space, samples: Vec<C64>) -> Result<Self> {
        if samples.len() != grid.len() {
            return Err(Error::DimensionMismatch {
                expected: grid.len(),
                found: samples.len(),
            });
        }
        Ok(Self {
            grid,
            space,
            samples,
        })
    }

    /// Samples `f` at the position nodes.
    pub fn from_fn<F: Fn(f64) -> C64>(grid: Grid, f: F) -> Self {
        Self {
            grid,
            space: Space::Position,
            samples: grid.sample(f),
        }
    }

    /// Real-valued convenience wrapper around [`WaveFunction::from_fn`].
    pub fn from_real_fn<F: Fn(f64) -> f64>(grid: Grid, f: F) -> Self {
        Self::from_fn(grid, |x| C64::new(f(x), 0.0))
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn samples(&self) -> &[C64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<C64> {
        self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Node spacing of the space the samples live in.
    pub fn spacing(&self) -> f64 {
        match self.space {
            Space::Position => self.grid.h(),
            Space::Momentum => self.grid.momentum_spacing(),
        }
    }

    /// Coordinate (x or p) of sample `i`.
    pub fn coordinate(&self, i: usize) -> f64 {
        match self.space {
            Space::Position => self.grid.node(i),
            Space::Momentum => self.grid.momentum(i),
        }
    }

    pub fn coordinates(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len()).map(move |i| self.coordinate(i))
    }

    pub(crate) fn with_samples(&self, space: Space, samples: Vec<C64>) -> Self {
        Self {
            grid: self.grid,
            space,
            samples,
        }
    }

    pub fn expect_space(&self, space: Space) -> Result<()> {
        if self.space == space {
            Ok(())
        } else {
            Err(Error::SpaceMismatch {
                expected: space.name(),
                found: self.space.name(),
            })
        }
    }

    pub(crate) fn expect_compatible(&self, other: &Self) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        other.expect_space(self.space)
    }

    /// `||f||^2` by the trapezoid rule.
    pub fn norm_sq(&self) -> f64 {
        let dens: Vec<f64> = self.samples.iter().map(|s| s.norm_sqr()).collect();
        trapezoid(&dens, self.spacing())
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.norm_sq())
    }

    /// `<self|other>` by the trapezoid rule (antilinear in `self`).
    pub fn inner(&self, other: &Self) -> Result<C64> {
        self.expect_compatible(other)?;
        let prod: Vec<C64> = self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| a.conj() * b)
            .collect();
        Ok(trapezoid_c(&prod, self.spacing()))
    }

    /// Discrete inner product `h * sum conj(f_i) g_i`.
    ///
    /// This is the quantity the unitary discrete Fourier operator preserves
    /// exactly; it agrees with [`WaveFunction::inner`] whenever the samples
    /// vanish at the box edges.
    pub fn discrete_inner(&self, other: &Self) -> Result<C64> {
        self.expect_compatible(other)?;
        let s: C64 = self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| a.conj() * b)
            .sum();
        Ok(s * self.spacing())
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.expect_compatible(other)?;
        Ok(self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn scale(&self, factor: C64) -> Self {
        self.with_samples(self.space, self.samples.iter().map(|s| s * factor).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_node_grid() {
        let g = Grid::new(1.0, 3).unwrap();
        let xs: Vec<f64> = g.nodes().collect();
        assert_eq!(xs, [-1.0, 0.0, 1.0]);
        assert_eq!(g.h(), 1.0);
    }

    #[test]
    fn standard_grid_spacing_and_center() {
        let g = Grid::new(10.0, 801).unwrap();
        assert!((g.h() - 0.025).abs() < 1e-15);
        assert_eq!(g.node(400), 0.0);
        assert_eq!(g.center(), 400);
    }

    #[test]
    fn rejects_bad_grids() {
        assert_eq!(Grid::new(5.0, 4), Err(Error::EvenNodeCount(4)));
        assert_eq!(Grid::new(5.0, 1), Err(Error::TooFewNodes(1)));
        assert!(matches!(Grid::new(0.0, 5), Err(Error::NonPositiveExtent(_))));
        assert!(matches!(Grid::new(-1.0, 5), Err(Error::NonPositiveExtent(_))));
        assert!(matches!(Grid::new(f64::NAN, 5), Err(Error::NonPositiveExtent(_))));
    }

    #[test]
    fn reversal_is_exact_involution() {
        let g = Grid::new(7.3, 129).unwrap();
        for i in 0..g.len() {
            assert_eq!(g.mirror(g.mirror(i)), i);
            assert_eq!(g.node(g.mirror(i)), -g.node(i));
        }
        assert_eq!(g.mirror(g.center()), g.center());
    }

    #[test]
    fn nearest_node_is_mirror_symmetric() {
        let g = Grid::new(10.0, 801).unwrap();
        for &a in &[0.0, 0.3, 1.0, 1.0125, 9.99, 10.0] {
            let p = g.nearest(a).unwrap();
            let m = g.nearest(-a).unwrap();
            assert_eq!(g.mirror(p), m);
            assert!((g.node(p) - a).abs() <= 0.5 * g.h() + 1e-12);
        }
        assert!(matches!(g.nearest(10.5), Err(Error::DeltaOutsideGrid { .. })));
    }

    #[test]
    fn gaussian_trapezoid_norm() {
        let g = Grid::new(10.0, 801).unwrap();
        let c = libm::pow(PI, -0.25);
        let f = WaveFunction::from_real_fn(g, |x| c * libm::exp(-0.5 * x * x));
        assert!((f.norm_sq() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn inner_rejects_mixed_spaces() {
        let g = Grid::new(1.0, 5).unwrap();
        let f = WaveFunction::from_real_fn(g, |x| x);
        let p = WaveFunction::new(g, Space::Momentum, f.samples().to_vec()).unwrap();
        assert!(matches!(f.inner(&p), Err(Error::SpaceMismatch { .. })));
        let other = WaveFunction::from_real_fn(Grid::new(2.0, 5).unwrap(), |x| x);
        assert_eq!(f.inner(&other), Err(Error::GridMismatch));
    }
}
