//! Computable quantities for aperiodic order on the integer lattice:
//! generators for substitution, Sturmian, automatic and random-dimer
//! sequences; pair correlations and diffraction estimates; Parisi overlap
//! distributions; and Gibbs kernels with a Metropolis sampler.

pub mod correlation;
mod error;
pub mod export;
pub mod gibbs;
pub mod overlap;
pub mod seeds;
pub mod spectra;
pub mod symbolic;

pub use error::{Error, Result};
pub use symbolic::{Alphabet, GeneratorSpec, SequenceWindow, System};
