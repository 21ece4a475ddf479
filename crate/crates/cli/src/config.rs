//! TOML run configuration.
//!
//! ```toml
//! [grid]
//! x_max = 10.0
//! n = 801
//!
//! [potential]
//! re_poly = [0.0, 0.0, 1.0]          # ascending powers of x
//! deltas = [{ re = 1.0, im = 0.3, location = 1.0 }]
//!
//! [spectrum]
//! basis = "momentum"
//! method = "conjugation"
//! ```

use std::path::{Path, PathBuf};

use ptxform_core::potential::{ImagTerm, Polynomial, RealTerm, Tabulated};
use ptxform_core::spectra::INDICATOR_TOLERANCE;
use ptxform_core::{Complex64, Grid, PotentialSpec};
use serde::Deserialize;

use crate::error::{CliError, Result};
use crate::io::read_tabulated;

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub grid: Option<GridSection>,
    #[serde(default)]
    pub potential: PotentialSection,
    pub spectrum: Option<SpectrumSection>,
    pub transform: Option<TransformSection>,
    pub scan: Option<ScanSection>,
    pub chain: Option<ChainSection>,
    pub swanson: Option<SwansonSection>,
    /// Directory relative paths are resolved against.
    #[serde(skip)]
    pub base_dir: PathBuf,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    pub x_max: f64,
    pub n: usize,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeltaEntry {
    pub re: f64,
    #[serde(default)]
    pub im: f64,
    pub location: f64,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaussianEntry {
    pub amplitude: f64,
    pub width: f64,
}

/// `V = V_Re + i V_Im`. Each delta entry is the pair
/// `c delta(x + a) + conj(c) delta(x - a)` with `c = re + i im`.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PotentialSection {
    #[serde(default)]
    pub re_poly: Vec<f64>,
    #[serde(default)]
    pub im_poly: Vec<f64>,
    #[serde(default)]
    pub deltas: Vec<DeltaEntry>,
    #[serde(default)]
    pub gaussians: Vec<GaussianEntry>,
    #[serde(default)]
    pub odd_gaussians: Vec<GaussianEntry>,
    pub tabulated_re: Option<PathBuf>,
    pub tabulated_im: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisChoice {
    #[default]
    Position,
    Momentum,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MethodChoice {
    #[default]
    Conjugation,
    Kernel,
}

#[derive(Debug, Clone, Copy, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumSection {
    #[serde(default)]
    pub basis: BasisChoice,
    #[serde(default)]
    pub method: MethodChoice,
    /// Also compute eigenvectors and report biorthogonality.
    #[serde(default)]
    pub vectors: bool,
    /// Write the assembled matrix in the dense binary format.
    #[serde(default)]
    pub export_matrix: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TransformKind {
    Fourier,
    InverseFourier,
    SegalBargmann,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConventionChoice {
    #[default]
    Unitary,
    Analyst,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FunctionChoice {
    /// `pi^{-1/4} e^{-x^2/2}`.
    Gaussian,
    /// Normalized Hermite function of the given `order`.
    Hermite,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransformSection {
    pub kind: TransformKind,
    #[serde(default)]
    pub convention: ConventionChoice,
    /// CSV with columns `x,re,im` on the configured grid.
    pub input: Option<PathBuf>,
    pub function: Option<FunctionChoice>,
    #[serde(default)]
    pub order: usize,
    #[serde(default = "default_n_max")]
    pub n_max: usize,
}

fn default_n_max() -> usize {
    20
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanFamily {
    /// `(1 + i lambda) delta(x + a) + (1 - i lambda) delta(x - a)`.
    DoubleDelta,
    /// `x^2 + i lambda x`.
    ShiftedHarmonic,
    /// Analytic Swanson levels with `beta = lambda`.
    SwansonBeta,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanSection {
    pub family: ScanFamily,
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
    #[serde(default = "default_location")]
    pub location: f64,
    pub omega: Option<f64>,
    pub alpha: Option<f64>,
    #[serde(default = "default_window")]
    pub window: usize,
    pub indicator_tol: Option<f64>,
    #[serde(default = "default_bisection")]
    pub bisection_tol: f64,
}

fn default_location() -> f64 {
    1.0
}

fn default_window() -> usize {
    ptxform_core::spectra::INDICATOR_WINDOW
}

fn default_bisection() -> f64 {
    1e-4
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainSection {
    pub sites: usize,
    /// Explicit coupling values; otherwise `g_lo..=g_hi` in `steps` steps.
    pub g: Option<Vec<f64>>,
    pub g_lo: Option<f64>,
    pub g_hi: Option<f64>,
    pub steps: Option<usize>,
    pub indicator_tol: Option<f64>,
    #[serde(default = "default_bisection")]
    pub bisection_tol: f64,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SwansonSection {
    pub omega: f64,
    pub alpha: f64,
    pub beta: f64,
    #[serde(default = "one")]
    pub xi0: f64,
    #[serde(default = "one")]
    pub hbar: f64,
    /// Fixed truncation; when absent the truncation is grown until the
    /// lowest levels settle.
    pub n_trunc: Option<usize>,
    /// Cap for the automatic truncation.
    #[serde(default = "default_max_trunc")]
    pub max_trunc: usize,
    #[serde(default = "default_levels")]
    pub levels: usize,
}

fn one() -> f64 {
    1.0
}

fn default_max_trunc() -> usize {
    1000
}

fn default_levels() -> usize {
    10
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let mut cfg = Self::parse(&text)?;
        cfg.base_dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| CliError::config(e.to_string()))
    }

    pub fn resolve(&self, p: &Path) -> PathBuf {
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base_dir.join(p)
        }
    }

    /// Referenced files must exist and tolerances must be positive.
    pub fn validate(&self) -> Result<()> {
        let pot = &self.potential;
        let transform_input = self.transform.as_ref().and_then(|t| t.input.as_ref());
        for p in [&pot.tabulated_re, &pot.tabulated_im].into_iter().flatten().chain(transform_input) {
            let full = self.resolve(p);
            if !full.is_file() {
                return Err(CliError::config(format!("referenced file {} does not exist", full.display())));
            }
        }
        let tols = [
            self.scan.and_then(|s| s.indicator_tol),
            self.scan.map(|s| s.bisection_tol),
            self.chain.as_ref().and_then(|c| c.indicator_tol),
            self.chain.as_ref().map(|c| c.bisection_tol),
        ];
        for t in tols.into_iter().flatten() {
            check_tolerance(t)?;
        }
        if let Some(t) = &self.transform {
            if t.input.is_some() == t.function.is_some() {
                return Err(CliError::config("[transform] needs exactly one of `input` and `function`"));
            }
        }
        Ok(())
    }

    pub fn grid(&self) -> Result<Grid> {
        let g = self.grid.ok_or_else(|| CliError::config("missing [grid] section"))?;
        Ok(Grid::new(g.x_max, g.n)?)
    }

    pub fn potential(&self) -> Result<PotentialSpec> {
        let p = &self.potential;
        let mut spec = PotentialSpec::new();
        if p.re_poly.iter().any(|c| *c != 0.0) {
            spec = spec.with_real(RealTerm::Polynomial(Polynomial::new(p.re_poly.clone())));
        }
        if p.im_poly.iter().any(|c| *c != 0.0) {
            spec = spec.with_imag(ImagTerm::Polynomial(Polynomial::new(p.im_poly.clone())));
        }
        for g in &p.gaussians {
            spec = spec.with_real(RealTerm::Gaussian {
                amplitude: g.amplitude,
                width: g.width,
            });
        }
        for g in &p.odd_gaussians {
            spec = spec.with_imag(ImagTerm::OddGaussian {
                amplitude: g.amplitude,
                width: g.width,
            });
        }
        for d in &p.deltas {
            spec = spec.with_delta_pair(Complex64::new(d.re, d.im), d.location);
        }
        if let Some(path) = &p.tabulated_re {
            let (r, v) = read_tabulated(&self.resolve(path))?;
            spec = spec.with_real(RealTerm::Tabulated(Tabulated::new(r, v)?));
        }
        if let Some(path) = &p.tabulated_im {
            let (r, v) = read_tabulated(&self.resolve(path))?;
            spec = spec.with_imag(ImagTerm::Tabulated(Tabulated::new(r, v)?));
        }
        Ok(spec)
    }
}

pub fn check_tolerance(t: f64) -> Result<f64> {
    if t > 0.0 && t.is_finite() {
        Ok(t)
    } else {
        Err(CliError::config(format!("tolerance must be positive, got {t}")))
    }
}

/// The indicator tolerance: command line first, then the section, then the
/// library default.
pub fn indicator_tolerance(cli: Option<f64>, section: Option<f64>) -> Result<f64> {
    check_tolerance(cli.or(section).unwrap_or(INDICATOR_TOLERANCE))
}
