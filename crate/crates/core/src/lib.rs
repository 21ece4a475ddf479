//! Numerical toolkit for PT-symmetric Hamiltonians seen through integral
//! transforms.
//!
//! The crate is `no_std` (it needs `alloc`) and contains only the pure
//! numerical machinery:
//!
//! * [`grid`] – origin-symmetric uniform grids and sampled wave functions,
//! * [`potential`] – the potential library (`V_Re + i V_Im`) with PT checks,
//! * [`transforms`] – the centered Fourier operator, Hermite functions and
//!   the Segal-Bargmann transform,
//! * [`hamiltonian`] – position and momentum space operator assembly and the
//!   pseudo-Hermiticity check,
//! * [`spectra`] – residual-certified dense eigensolution, PT phase
//!   classification and threshold scans,
//! * [`spinchain`] – Jordan-Schwinger spin operators and the non-Hermitian
//!   XX chain,
//! * [`swanson`] – the Swanson oscillator end to end.
//!
//! File formats, configuration and the command line live in the `ptxform`
//! companion crate.
#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod error;
pub mod grid;
pub mod hamiltonian;
pub mod linalg;
pub mod potential;
pub mod spectra;
pub mod spinchain;
pub mod swanson;
pub mod transforms;

pub use error::{Error, Result};
pub use grid::{Grid, Space, WaveFunction};
pub use hamiltonian::{Basis, OperatorMatrix};
pub use linalg::Matrix;
pub use num_complex::Complex64;
pub use potential::PotentialSpec;
pub use spectra::Spectrum;

/// Shorthand used throughout the crate.
pub type C64 = Complex64;
