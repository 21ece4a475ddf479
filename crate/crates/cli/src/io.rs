//! CSV tables and the dense matrix binary format.
//!
//! Matrix files are `b"PTXM"`, the dimension as a little-endian `u32`, then
//! the entries row by row as little-endian `f64` pairs `(re, im)`.

use std::fs;
use std::path::Path;

use ptxform_core::{Complex64, Grid, Matrix, Space, WaveFunction};
use serde::Deserialize;

use crate::error::{CliError, Result};

pub const MATRIX_MAGIC: &[u8; 4] = b"PTXM";

/// 12 significant digits.
pub fn fmt_real(x: f64) -> String {
    format!("{x:.11e}")
}

/// Writes a header row and data rows.
pub fn write_csv<I>(path: &Path, header: &[&str], rows: I) -> Result<()>
where
    I: IntoIterator<Item = Vec<String>>,
{
    let mut w = csv::Writer::from_path(path).map_err(|e| csv_error(path, e))?;
    w.write_record(header).map_err(|e| csv_error(path, e))?;
    for row in rows {
        w.write_record(&row).map_err(|e| csv_error(path, e))?;
    }
    w.flush().map_err(|e| CliError::io(path, e))
}

fn csv_error(path: &Path, e: csv::Error) -> CliError {
    if e.is_io_error() {
        match e.into_kind() {
            csv::ErrorKind::Io(io) => CliError::io(path, io),
            _ => unreachable!(),
        }
    } else {
        CliError::Format {
            path: path.to_path_buf(),
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Deserialize)]
struct TabulatedRow {
    r: f64,
    value: f64,
}

/// Half-line samples from a CSV with columns `r,value`.
pub fn read_tabulated(path: &Path) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut rd = csv::Reader::from_path(path).map_err(|e| csv_error(path, e))?;
    let mut r = Vec::new();
    let mut v = Vec::new();
    for row in rd.deserialize::<TabulatedRow>() {
        let row = row.map_err(|e| csv_error(path, e))?;
        r.push(row.r);
        v.push(row.value);
    }
    Ok((r, v))
}

#[derive(Debug, Deserialize)]
struct SampleRow {
    x: f64,
    re: f64,
    im: f64,
}

/// Samples from a CSV with columns `x,re,im`; the first column must hold
/// the nodes of `grid` (position space) or its momenta (momentum space).
pub fn read_wavefunction(path: &Path, grid: Grid, space: Space) -> Result<WaveFunction> {
    let mut rd = csv::Reader::from_path(path).map_err(|e| csv_error(path, e))?;
    let mut samples = Vec::new();
    for (i, row) in rd.deserialize::<SampleRow>().enumerate() {
        let row = row.map_err(|e| csv_error(path, e))?;
        let expected = |i: usize| match space {
            Space::Position => grid.node(i),
            Space::Momentum => grid.momentum(i),
        };
        if i >= grid.len() || (row.x - expected(i)).abs() > 1e-9 * expected(grid.len() - 1) {
            return Err(CliError::config(format!(
                "{}: row {i} does not sit on the configured grid",
                path.display()
            )));
        }
        samples.push(Complex64::new(row.re, row.im));
    }
    if samples.len() != grid.len() {
        return Err(CliError::config(format!(
            "{}: expected {} samples, found {}",
            path.display(),
            grid.len(),
            samples.len()
        )));
    }
    Ok(WaveFunction::new(grid, space, samples)?)
}

pub fn encode_matrix(m: &Matrix) -> Vec<u8> {
    let n = m.rows();
    let mut out = Vec::with_capacity(8 + 16 * n * n);
    out.extend_from_slice(MATRIX_MAGIC);
    out.extend_from_slice(&(n as u32).to_le_bytes());
    for z in m.as_slice() {
        out.extend_from_slice(&z.re.to_le_bytes());
        out.extend_from_slice(&z.im.to_le_bytes());
    }
    out
}

pub fn decode_matrix(bytes: &[u8]) -> std::result::Result<Matrix, String> {
    if bytes.len() < 8 || &bytes[..4] != MATRIX_MAGIC {
        return Err("missing PTXM header".into());
    }
    let n = u32::from_le_bytes(bytes[4..8].try_into().expect("4 bytes")) as usize;
    let body = &bytes[8..];
    if body.len() != 16 * n * n {
        return Err(format!("expected {} payload bytes for dim {n}, found {}", 16 * n * n, body.len()));
    }
    let f = |k: usize| f64::from_le_bytes(body[8 * k..8 * k + 8].try_into().expect("8 bytes"));
    let data = (0..n * n).map(|k| Complex64::new(f(2 * k), f(2 * k + 1))).collect();
    Matrix::from_vec(n, n, data).map_err(|e| e.to_string())
}

pub fn write_matrix(path: &Path, m: &Matrix) -> Result<()> {
    fs::write(path, encode_matrix(m)).map_err(|e| CliError::io(path, e))
}

pub fn read_matrix(path: &Path) -> Result<Matrix> {
    let bytes = fs::read(path).map_err(|e| CliError::io(path, e))?;
    decode_matrix(&bytes).map_err(|message| CliError::Format {
        path: path.to_path_buf(),
        message,
    })
}
