//! One function per subcommand. Each writes its tables into the output
//! directory and returns the report summary.

use std::fs;
use std::path::{Path, PathBuf};

use ptxform_core::hamiltonian::{
    assemble_momentum, assemble_position, parity_metric, pseudo_hermiticity_check, MomentumMethod,
};
use ptxform_core::spectra::{
    biorthogonality, bisect_threshold, classify, conjugation_closure, eigensolve, eigensolve_auto, family_spectrum,
    linspace, onset_bracket, scan_row, ScanRow, ScanSettings,
};
use ptxform_core::spinchain::{build_xx_pauli, chain_spectrum, ChainSpec};
use ptxform_core::swanson::{
    analytic_spectrum, bogoliubov, converged_spectrum, fock_matrix, map_to_harmonic, pseudo_boson_coefficients,
    SwansonParams,
};
use ptxform_core::transforms::{
    fourier, hermite_wavefunction, inverse_fourier, parseval, segal_bargmann, FourierConvention,
};
use ptxform_core::{Basis, Complex64, Error as CoreError, Grid, PotentialSpec, Space, WaveFunction};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::config::{
    indicator_tolerance, BasisChoice, ConventionChoice, FunctionChoice, MethodChoice, RunConfig, ScanFamily,
    TransformKind,
};
use crate::error::{CliError, Result};
use crate::io::{fmt_real, read_wavefunction, write_csv, write_matrix};
use crate::report::{complex, emit_report, number, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Spectrum,
    Transform,
    Scan,
    Chain,
    Swanson,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Spectrum => "spectrum",
            Command::Transform => "transform",
            Command::Scan => "scan",
            Command::Chain => "chain",
            Command::Swanson => "swanson",
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub out: PathBuf,
    /// Overrides the breaking-indicator tolerance.
    pub tol: Option<f64>,
}

/// Runs `cmd`, writes its tables and `report.json` into `opts.out`.
pub fn run(cmd: Command, cfg: &RunConfig, opts: &RunOptions) -> Result<Report> {
    fs::create_dir_all(&opts.out).map_err(|e| CliError::io(&opts.out, e))?;
    let report = match cmd {
        Command::Spectrum => spectrum(cfg, opts)?,
        Command::Transform => transform(cfg, &opts.out)?,
        Command::Scan => scan(cfg, opts)?,
        Command::Chain => chain(cfg, opts)?,
        Command::Swanson => swanson(cfg, opts)?,
    };
    emit_report(&opts.out, &report)?;
    Ok(report)
}

fn complex_row(prefix: Vec<String>, z: Complex64) -> Vec<String> {
    let mut row = prefix;
    row.push(fmt_real(z.re));
    row.push(fmt_real(z.im));
    row
}

fn grid_json(grid: &Grid) -> Value {
    json!({ "x_max": number(grid.x_max()), "n": grid.len(), "h": number(grid.h()) })
}

fn spectrum(cfg: &RunConfig, opts: &RunOptions) -> Result<Report> {
    let section = cfg.spectrum.unwrap_or_default();
    let grid = cfg.grid()?;
    let spec = cfg.potential()?;
    let tol = indicator_tolerance(opts.tol, None)?;
    let (h, basis) = match section.basis {
        BasisChoice::Position => (assemble_position(&spec, &grid)?, Basis::Position),
        BasisChoice::Momentum => {
            let method = match section.method {
                MethodChoice::Conjugation => MomentumMethod::Conjugation,
                MethodChoice::Kernel => MomentumMethod::KernelQuadrature,
            };
            (assemble_momentum(&spec, &grid, method)?, Basis::Momentum)
        }
    };
    let spectrum = eigensolve_auto(&h)?;
    let class = classify(&spectrum, tol)?;
    let hermiticity = pseudo_hermiticity_check(&h, &parity_metric(basis, h.dim()))?;

    let mut report = Report::new("spectrum");
    write_csv(
        &opts.out.join("eigenvalues.csv"),
        &["index", "re", "im"],
        spectrum.eigenvalues.iter().enumerate().map(|(i, z)| complex_row(vec![i.to_string()], *z)),
    )?;
    report.add_table("eigenvalues.csv");
    if section.export_matrix {
        write_matrix(&opts.out.join("hamiltonian.ptxm"), h.matrix())?;
        report.add_table("hamiltonian.ptxm");
    }
    report.set("grid", grid_json(&grid));
    report.set("basis", basis.name());
    report.set("dim", h.dim());
    report.set("max_residual", number(spectrum.max_residual));
    report.set("phase", class.phase.name());
    report.set("n_real", class.n_real);
    report.set("conjugate_pairs", class.conjugate_pairs.len());
    report.set("conjugation_closure", number(conjugation_closure(&spectrum.eigenvalues)));
    report.set("pseudo_hermiticity_residual", number(hermiticity.residual));
    report.set("ground", complex(spectrum.eigenvalues[0]));
    if section.vectors {
        let b = match biorthogonality(&spectrum) {
            Ok(b) => number(b),
            Err(CoreError::Defective(_)) => Value::from("defective"),
            Err(e) => return Err(e.into()),
        };
        report.set("biorthogonality", b);
    }
    Ok(report)
}

fn transform_input(cfg: &RunConfig, grid: Grid, space: Space) -> Result<WaveFunction> {
    let t = cfg.transform.as_ref().ok_or_else(|| CliError::config("missing [transform] section"))?;
    if let Some(path) = &t.input {
        return read_wavefunction(&cfg.resolve(path), grid, space);
    }
    let f = match t.function {
        Some(FunctionChoice::Gaussian) => hermite_wavefunction(grid, 0),
        Some(FunctionChoice::Hermite) => hermite_wavefunction(grid, t.order),
        None => return Err(CliError::config("[transform] needs `input` or `function`")),
    };
    // Hermite functions are Fourier eigenfunctions, so the same samples
    // serve as momentum-space input.
    Ok(match space {
        Space::Position => f,
        Space::Momentum => WaveFunction::new(grid, Space::Momentum, f.into_samples())?,
    })
}

fn transform(cfg: &RunConfig, out: &Path) -> Result<Report> {
    let t = cfg.transform.as_ref().ok_or_else(|| CliError::config("missing [transform] section"))?;
    let grid = cfg.grid()?;
    let conv = match t.convention {
        ConventionChoice::Unitary => FourierConvention::Unitary,
        ConventionChoice::Analyst => FourierConvention::Analyst,
    };
    let mut report = Report::new("transform");
    report.set("grid", grid_json(&grid));
    match t.kind {
        TransformKind::Fourier | TransformKind::InverseFourier => {
            let forward = t.kind == TransformKind::Fourier;
            let space = if forward { Space::Position } else { Space::Momentum };
            let input = transform_input(cfg, grid, space)?;
            let output = if forward {
                fourier(&input, conv)?
            } else {
                inverse_fourier(&input, conv)?
            };
            write_csv(
                &out.join("transform.csv"),
                &["coordinate", "re", "im"],
                output
                    .coordinates()
                    .zip(output.samples())
                    .map(|(x, z)| complex_row(vec![fmt_real(x)], *z)),
            )?;
            report.add_table("transform.csv");
            report.set("convention", conv.name());
            report.set("output_space", output.space().name());
            let position = if forward { &input } else { &output };
            report.set("parseval_mismatch", number(parseval(position, position, conv)?.mismatch()));
        }
        TransformKind::SegalBargmann => {
            let input = transform_input(cfg, grid, Space::Position)?;
            let b = segal_bargmann(&input, t.n_max)?;
            write_csv(
                &out.join("coefficients.csv"),
                &["n", "re", "im"],
                b.coeffs().iter().enumerate().map(|(n, z)| complex_row(vec![n.to_string()], *z)),
            )?;
            report.add_table("coefficients.csv");
            report.set("n_max", t.n_max);
            report.set("norm_position", number(input.norm()));
            report.set("norm_bargmann", number(b.norm_sq().sqrt()));
        }
    }
    Ok(report)
}

/// Coarse indicator rows in parallel, then bisection of the first onset.
fn parallel_scan<F>(spectrum_at: &F, lambdas: &[f64], settings: &ScanSettings) -> Result<(Vec<ScanRow>, Option<f64>)>
where
    F: Fn(f64) -> ptxform_core::Result<Vec<Complex64>> + Sync,
{
    let rows = lambdas
        .par_iter()
        .map(|&l| Ok(scan_row(l, &spectrum_at(l)?, settings)))
        .collect::<ptxform_core::Result<Vec<_>>>()?;
    let threshold = match onset_bracket(&rows) {
        Some((lo, hi)) => Some(bisect_threshold(spectrum_at, lo, hi, settings)?),
        None => None,
    };
    Ok((rows, threshold))
}

fn onset_index(rows: &[ScanRow]) -> Option<usize> {
    let (_, hi) = onset_bracket(rows)?;
    rows.iter().position(|r| r.lambda == hi)
}

fn scan(cfg: &RunConfig, opts: &RunOptions) -> Result<Report> {
    let s = cfg.scan.ok_or_else(|| CliError::config("missing [scan] section"))?;
    let settings = ScanSettings {
        window: s.window,
        indicator_tol: indicator_tolerance(opts.tol, s.indicator_tol)?,
        bisection_tol: s.bisection_tol,
    };
    let lambdas = linspace(s.lo, s.hi, s.steps)?;
    let (rows, threshold) = match s.family {
        ScanFamily::DoubleDelta => {
            let grid = cfg.grid()?;
            let family = |g: f64| PotentialSpec::double_delta(g, s.location);
            parallel_scan(&|l| family_spectrum(&family, &grid, l), &lambdas, &settings)?
        }
        ScanFamily::ShiftedHarmonic => {
            let grid = cfg.grid()?;
            parallel_scan(&|l| family_spectrum(&PotentialSpec::shifted_harmonic, &grid, l), &lambdas, &settings)?
        }
        ScanFamily::SwansonBeta => {
            let omega = s.omega.ok_or_else(|| CliError::config("swanson_beta scan needs `omega`"))?;
            let alpha = s.alpha.ok_or_else(|| CliError::config("swanson_beta scan needs `alpha`"))?;
            let levels = |beta: f64| {
                let p = SwansonParams::new(omega, alpha, beta)?;
                Ok(ptxform_core::swanson::analytic_levels(&p, settings.window))
            };
            parallel_scan(&levels, &lambdas, &settings)?
        }
    };
    let onset = onset_index(&rows);
    write_csv(
        &opts.out.join("scan.csv"),
        &["lambda", "max_im", "n_real", "threshold_flag"],
        rows.iter().enumerate().map(|(i, r)| {
            vec![
                fmt_real(r.lambda),
                fmt_real(r.max_im),
                r.n_real.to_string(),
                u8::from(onset == Some(i)).to_string(),
            ]
        }),
    )?;
    let mut report = Report::new("scan");
    report.add_table("scan.csv");
    report.set("points", rows.len());
    report.set("window", settings.window);
    report.set("indicator_tol", number(settings.indicator_tol));
    report.set("threshold", threshold.map_or(Value::Null, number));
    Ok(report)
}

/// Whether the chain's eigenvectors are numerically defective at `spec`.
fn is_defective(spec: &ChainSpec) -> Result<bool> {
    match biorthogonality(&eigensolve(&build_xx_pauli(spec))?) {
        Ok(_) => Ok(false),
        Err(CoreError::Defective(_)) => Ok(true),
        Err(e) => Err(e.into()),
    }
}

fn chain(cfg: &RunConfig, opts: &RunOptions) -> Result<Report> {
    let c = cfg.chain.as_ref().ok_or_else(|| CliError::config("missing [chain] section"))?;
    let gs = match (&c.g, c.g_lo, c.g_hi, c.steps) {
        (Some(g), None, None, None) if !g.is_empty() => g.clone(),
        (None, Some(lo), Some(hi), Some(steps)) => linspace(lo, hi, steps)?,
        _ => return Err(CliError::config("[chain] needs either `g` or all of `g_lo`, `g_hi`, `steps`")),
    };
    let base = ChainSpec::new(c.sites, 0.0)?;
    let settings = ScanSettings {
        window: base.dim(),
        indicator_tol: indicator_tolerance(opts.tol, c.indicator_tol)?,
        bisection_tol: c.bisection_tol,
    };
    let per_g = gs
        .par_iter()
        .map(|&g| {
            let spec = base.with_g(g)?;
            let values = chain_spectrum(&spec)?;
            let defective = is_defective(&spec)?;
            Ok((values, defective))
        })
        .collect::<Result<Vec<_>>>()?;
    let rows: Vec<ScanRow> = gs.iter().zip(&per_g).map(|(&g, (v, _))| scan_row(g, v, &settings)).collect();
    let threshold = match onset_bracket(&rows) {
        Some((lo, hi)) => Some(bisect_threshold(&|g| chain_spectrum(&base.with_g(g)?), lo, hi, &settings)?),
        None => None,
    };
    let onset = onset_index(&rows);

    write_csv(
        &opts.out.join("chain.csv"),
        &["g", "index", "re", "im"],
        gs.iter().zip(&per_g).flat_map(|(&g, (values, _))| {
            values
                .iter()
                .enumerate()
                .map(move |(i, z)| complex_row(vec![fmt_real(g), i.to_string()], *z))
        }),
    )?;
    write_csv(
        &opts.out.join("phase.csv"),
        &["g", "max_im", "n_real", "threshold_flag"],
        rows.iter().zip(&per_g).enumerate().map(|(i, (r, (_, defective)))| {
            let flag = onset == Some(i) || *defective;
            vec![fmt_real(r.lambda), fmt_real(r.max_im), r.n_real.to_string(), u8::from(flag).to_string()]
        }),
    )?;
    let mut report = Report::new("chain");
    report.add_table("chain.csv");
    report.add_table("phase.csv");
    report.set("sites", c.sites);
    report.set("dim", base.dim());
    report.set("threshold", threshold.map_or(Value::Null, number));
    let exceptional: Vec<Value> = gs
        .iter()
        .zip(&per_g)
        .filter(|(_, (_, d))| *d)
        .map(|(g, _)| number(*g))
        .collect();
    report.set("defective_at", exceptional);
    Ok(report)
}

fn swanson(cfg: &RunConfig, opts: &RunOptions) -> Result<Report> {
    let s = cfg.swanson.ok_or_else(|| CliError::config("missing [swanson] section"))?;
    let p = SwansonParams::with_scales(s.omega, s.alpha, s.beta, s.xi0, s.hbar)?;
    let tol = indicator_tolerance(opts.tol, None)?;
    let n_trunc = match s.n_trunc {
        Some(n) => n,
        None => converged_spectrum(&p, 50, s.max_trunc)?.0,
    };
    let spectrum = eigensolve_auto(&fock_matrix(&p, n_trunc)?)?;
    let class = classify(&spectrum, tol)?;
    let levels = s.levels.min(spectrum.len());
    write_csv(
        &opts.out.join("eigenvalues.csv"),
        &["index", "re", "im", "analytic_re", "analytic_im"],
        spectrum.eigenvalues.iter().take(levels).enumerate().map(|(n, z)| {
            let a = analytic_spectrum(&p, n);
            let mut row = complex_row(vec![n.to_string()], *z);
            row.push(fmt_real(a.re));
            row.push(fmt_real(a.im));
            row
        }),
    )?;
    let mut report = Report::new("swanson");
    report.add_table("eigenvalues.csv");
    report.set("n_trunc", n_trunc);
    report.set("max_residual", number(spectrum.max_residual));
    report.set("discriminant", number(p.discriminant()));
    report.set("phase", class.phase.name());
    report.set("n_real", class.n_real);
    report.set("conjugate_pairs", class.conjugate_pairs.len());
    match map_to_harmonic(&p) {
        Ok(d) => {
            report.set("m", number(d.mass));
            report.set("omega_cap", complex(d.frequency));
            report.set("theta", number(d.theta));
            report.set("k", complex(d.k));
            report.set("kappa", number(d.kappa));
            report.set("s", complex(d.s));
            report.set("det_m", complex(bogoliubov(d.theta).det()));
            report.set("pseudo_boson_commutator", complex(pseudo_boson_coefficients(&p)?.commutator()));
        }
        Err(CoreError::FreeParticleLimit) => report.set("mapping", "free_particle_limit"),
        Err(e) => return Err(e.into()),
    }
    Ok(report)
}
