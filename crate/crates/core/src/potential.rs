//! Potentials `V(x) = V_Re(x) + i V_Im(x)` built from polynomial, Gaussian,
//! tabulated and Dirac-delta terms.
//!
//! The typed constructors produce an even `V_Re` and an odd `V_Im`, which is
//! exactly the PT-symmetry condition `V(-x) = conj(V(x))`. Raw polynomials
//! of arbitrary parity are accepted too so that symmetry-breaking potentials
//! can be studied; [`check_pt_symmetry`] reports the violation.

use alloc::vec::Vec;

use crate::grid::Grid;
use crate::{Error, Result, C64};

/// Samples whose mirror images differ from their conjugates by at most this
/// much count as PT-symmetric.
pub const PT_TOLERANCE: f64 = 1e-12;

/// Polynomial `sum_k c_k x^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<f64>) -> Self {
        Self { coeffs }
    }

    /// `sum_k c_k x^(2k)`.
    pub fn even(even_coeffs: &[f64]) -> Self {
        let mut coeffs = alloc::vec![0.0; 2 * even_coeffs.len()];
        for (k, c) in even_coeffs.iter().enumerate() {
            coeffs[2 * k] = *c;
        }
        Self { coeffs }
    }

    /// `sum_k c_k x^(2k+1)`.
    pub fn odd(odd_coeffs: &[f64]) -> Self {
        let mut coeffs = alloc::vec![0.0; 2 * odd_coeffs.len()];
        for (k, c) in odd_coeffs.iter().enumerate() {
            coeffs[2 * k + 1] = *c;
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Horner evaluation. Zero coefficients contribute exact zeros, so a
    /// polynomial with only even (odd) powers is exactly even (odd) in
    /// floating point too.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    fn scaled(&self, s: f64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }
}

/// Samples on the half line `x >= 0`, linearly interpolated at `|x|` and
/// zero beyond the last knot. Used as an even (real part) or odd (imaginary
/// part) extension.
#[derive(Debug, Clone, PartialEq)]
pub struct Tabulated {
    abscissae: Vec<f64>,
    values: Vec<f64>,
}

impl Tabulated {
    pub fn new(abscissae: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if abscissae.len() != values.len() {
            return Err(Error::TabulatedLengthMismatch {
                abscissae: abscissae.len(),
                values: values.len(),
            });
        }
        if abscissae.is_empty() {
            return Err(Error::InvalidTerm("tabulated term has no samples"));
        }
        let monotone = abscissae.first().is_some_and(|x| *x >= 0.0)
            && abscissae.windows(2).all(|w| w[1] > w[0]);
        if !monotone {
            return Err(Error::TabulatedNotMonotone);
        }
        Ok(Self { abscissae, values })
    }

    pub fn abscissae(&self) -> &[f64] {
        &self.abscissae
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Interpolated value at `r >= 0`.
    pub fn eval_radial(&self, r: f64) -> f64 {
        let xs = &self.abscissae;
        let last = xs.len() - 1;
        if r > xs[last] {
            return 0.0;
        }
        if r <= xs[0] {
            return self.values[0];
        }
        let k = xs.partition_point(|x| *x <= r).min(last);
        let (x0, x1) = (xs[k - 1], xs[k]);
        let t = (r - x0) / (x1 - x0);
        self.values[k - 1] * (1.0 - t) + self.values[k] * t
    }

    fn scaled(&self, s: f64) -> Self {
        Self {
            abscissae: self.abscissae.clone(),
            values: self.values.iter().map(|v| v * s).collect(),
        }
    }
}

/// A term of the real part `V_Re`.
#[derive(Debug, Clone, PartialEq)]
pub enum RealTerm {
    Polynomial(Polynomial),
    /// `strength * [delta(x + a) + delta(x - a)]`.
    MirroredDelta { strength: f64, location: f64 },
    /// `amplitude * exp(-(x / width)^2)`.
    Gaussian { amplitude: f64, width: f64 },
    /// Even extension of tabulated half-line samples.
    Tabulated(Tabulated),
}

/// A term of the imaginary part `V_Im`.
#[derive(Debug, Clone, PartialEq)]
pub enum ImagTerm {
    Polynomial(Polynomial),
    /// `strength * [delta(x + a) - delta(x - a)]`.
    AntisymmetricDelta { strength: f64, location: f64 },
    /// `amplitude * (x / width) * exp(-(x / width)^2)`.
    OddGaussian { amplitude: f64, width: f64 },
    /// Odd extension of tabulated half-line samples.
    Tabulated(Tabulated),
}

/// `c delta(x + a) + conj(c) delta(x - a)`, PT-symmetric by construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaPair {
    pub strength: C64,
    pub location: f64,
}

/// A point mass `strength * delta(x - location)` of the full potential.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointMass {
    pub location: f64,
    pub strength: C64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct PotentialSpec {
    pub re_terms: Vec<RealTerm>,
    pub im_terms: Vec<ImagTerm>,
    pub delta_pairs: Vec<DeltaPair>,
}

impl PotentialSpec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_real(mut self, term: RealTerm) -> Self {
        self.re_terms.push(term);
        self
    }

    pub fn with_imag(mut self, term: ImagTerm) -> Self {
        self.im_terms.push(term);
        self
    }

    pub fn with_delta_pair(mut self, strength: C64, location: f64) -> Self {
        self.delta_pairs.push(DeltaPair { strength, location });
        self
    }

    /// `x^2`.
    pub fn harmonic() -> Self {
        Self::new().with_real(RealTerm::Polynomial(Polynomial::even(&[0.0, 1.0])))
    }

    /// `x^2 + i lambda x`, whose spectrum is `2n + 1 + lambda^2 / 4`.
    pub fn shifted_harmonic(lambda: f64) -> Self {
        Self::harmonic().with_imag(ImagTerm::Polynomial(Polynomial::odd(&[lambda])))
    }

    /// `i x^3`.
    pub fn imaginary_cubic() -> Self {
        Self::new().with_imag(ImagTerm::Polynomial(Polynomial::odd(&[0.0, 1.0])))
    }

    /// `(1 + i gamma) delta(x + a) + (1 - i gamma) delta(x - a)`.
    pub fn double_delta(gamma: f64, a: f64) -> Self {
        Self::new().with_delta_pair(C64::new(1.0, gamma), a)
    }

    pub fn has_polynomial(&self) -> bool {
        self.re_terms
            .iter()
            .any(|t| matches!(t, RealTerm::Polynomial(_)))
            || self
                .im_terms
                .iter()
                .any(|t| matches!(t, ImagTerm::Polynomial(_)))
    }

    /// All terms scaled by `s`.
    pub fn scaled(&self, s: f64) -> Self {
        let re_terms = self
            .re_terms
            .iter()
            .map(|t| match t {
                RealTerm::Polynomial(p) => RealTerm::Polynomial(p.scaled(s)),
                RealTerm::MirroredDelta { strength, location } => RealTerm::MirroredDelta {
                    strength: strength * s,
                    location: *location,
                },
                RealTerm::Gaussian { amplitude, width } => RealTerm::Gaussian {
                    amplitude: amplitude * s,
                    width: *width,
                },
                RealTerm::Tabulated(t) => RealTerm::Tabulated(t.scaled(s)),
            })
            .collect();
        let im_terms = self
            .im_terms
            .iter()
            .map(|t| match t {
                ImagTerm::Polynomial(p) => ImagTerm::Polynomial(p.scaled(s)),
                ImagTerm::AntisymmetricDelta { strength, location } => {
                    ImagTerm::AntisymmetricDelta {
                        strength: strength * s,
                        location: *location,
                    }
                }
                ImagTerm::OddGaussian { amplitude, width } => ImagTerm::OddGaussian {
                    amplitude: amplitude * s,
                    width: *width,
                },
                ImagTerm::Tabulated(t) => ImagTerm::Tabulated(t.scaled(s)),
            })
            .collect();
        let delta_pairs = self
            .delta_pairs
            .iter()
            .map(|d| DeltaPair {
                strength: d.strength * s,
                location: d.location,
            })
            .collect();
        Self {
            re_terms,
            im_terms,
            delta_pairs,
        }
    }

    /// Sum of two potentials.
    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.re_terms.extend(other.re_terms.iter().cloned());
        out.im_terms.extend(other.im_terms.iter().cloned());
        out.delta_pairs.extend(other.delta_pairs.iter().cloned());
        out
    }

    /// Value of the non-delta part at `x`.
    pub fn smooth_value(&self, x: f64) -> C64 {
        let re: f64 = self
            .re_terms
            .iter()
            .map(|t| match t {
                RealTerm::Polynomial(p) => p.eval(x),
                RealTerm::MirroredDelta { .. } => 0.0,
                RealTerm::Gaussian { amplitude, width } => {
                    let u = x / width;
                    amplitude * libm::exp(-u * u)
                }
                RealTerm::Tabulated(t) => t.eval_radial(x.abs()),
            })
            .sum();
        let im: f64 = self
            .im_terms
            .iter()
            .map(|t| match t {
                ImagTerm::Polynomial(p) => p.eval(x),
                ImagTerm::AntisymmetricDelta { .. } => 0.0,
                ImagTerm::OddGaussian { amplitude, width } => {
                    let u = x / width;
                    amplitude * u * libm::exp(-u * u)
                }
                ImagTerm::Tabulated(t) => {
                    let v = t.eval_radial(x.abs());
                    if x < 0.0 {
                        -v
                    } else {
                        v
                    }
                }
            })
            .sum();
        C64::new(re, im)
    }

    /// Every delta function in the potential as a point mass.
    pub fn point_masses(&self) -> Vec<PointMass> {
        let mut out = Vec::new();
        let mut push = |location: f64, strength: C64| out.push(PointMass { location, strength });
        for t in &self.re_terms {
            if let RealTerm::MirroredDelta { strength, location } = *t {
                push(-location, C64::new(strength, 0.0));
                push(location, C64::new(strength, 0.0));
            }
        }
        for t in &self.im_terms {
            if let ImagTerm::AntisymmetricDelta { strength, location } = *t {
                push(-location, C64::new(0.0, strength));
                push(location, C64::new(0.0, -strength));
            }
        }
        for d in &self.delta_pairs {
            push(-d.location, d.strength);
            push(d.location, d.strength.conj());
        }
        out
    }

    fn validate(&self) -> Result<()> {
        for t in &self.re_terms {
            match t {
                RealTerm::Gaussian { width, .. } if !(*width > 0.0) => {
                    return Err(Error::InvalidTerm("Gaussian width must be positive"))
                }
                RealTerm::MirroredDelta { location, .. } if *location < 0.0 => {
                    return Err(Error::InvalidTerm("delta location must be non-negative"))
                }
                _ => {}
            }
        }
        for t in &self.im_terms {
            match t {
                ImagTerm::OddGaussian { width, .. } if !(*width > 0.0) => {
                    return Err(Error::InvalidTerm("Gaussian width must be positive"))
                }
                ImagTerm::AntisymmetricDelta { location, .. } if *location < 0.0 => {
                    return Err(Error::InvalidTerm("delta location must be non-negative"))
                }
                _ => {}
            }
        }
        if self.delta_pairs.iter().any(|d| d.location < 0.0) {
            return Err(Error::InvalidTerm("delta location must be non-negative"));
        }
        Ok(())
    }
}

/// Samples `V(x_i)` on the grid. A delta `c delta(x - a)` becomes a
/// Kronecker spike of height `c / h` at the node nearest `a`.
pub fn sample_potential(spec: &PotentialSpec, grid: &Grid) -> Result<Vec<C64>> {
    spec.validate()?;
    let mut v: Vec<C64> = grid.sample(|x| spec.smooth_value(x));
    let inv_h = 1.0 / grid.h();
    for pm in spec.point_masses() {
        let i = grid.nearest(pm.location)?;
        v[i] += pm.strength * inv_h;
    }
    Ok(v)
}

/// Outcome of [`check_pt_symmetry`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PtCheck {
    pub is_pt: bool,
    pub max_violation: f64,
}

/// `max_i |V(-x_i) - conj(V(x_i))|` over the grid.
pub fn check_pt_symmetry(spec: &PotentialSpec, grid: &Grid) -> Result<PtCheck> {
    let v = sample_potential(spec, grid)?;
    let max_violation = pt_violation(&v);
    Ok(PtCheck {
        is_pt: max_violation <= PT_TOLERANCE,
        max_violation,
    })
}

/// PT violation of samples on a symmetric grid.
pub fn pt_violation(samples: &[C64]) -> f64 {
    let n = samples.len();
    (0..n)
        .map(|i| (samples[n - 1 - i] - samples[i].conj()).norm())
        .fold(0.0, f64::max)
}
