//! Diffraction and dynamical-spectrum estimates.

mod bragg;
mod eigen;
mod fourier;
mod periodogram;

pub use bragg::{
    bragg_probe, bragg_scan, dyadic_and_generic_probes, fit_exponent, BraggPeak, BraggReport,
    ClassificationBands, SpectralClass, ZERO_FLOOR,
};
pub use eigen::{dynamical_eigenvalue, EigenvalueReport};
pub use fourier::{fourier_bohr, fourier_sum, fourier_sum_bin};
pub use periodogram::{periodogram, SpectralEstimate};
