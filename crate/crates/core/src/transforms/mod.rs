//! Integral transforms: the centered Fourier operator, Hermite functions
//! and the Segal-Bargmann transform.

pub mod bargmann;
pub mod fourier;
pub mod hermite;

pub use bargmann::{
    bargmann_inner, bargmann_number_apply, segal_bargmann, segal_bargmann_kernel, BargmannFunction,
};
pub use fourier::{
    convolve, fourier, fourier_power, inverse_fourier, parity, parseval, FourierConvention, Parseval,
    UnitaryFourierMatrix,
};
pub use hermite::{hermite_function, hermite_functions, hermite_wavefunction, sample_hermite_basis};
