//! Finite windows of aperiodic and stochastic symbolic systems, sliding-block
//! factors, and word complexity.

mod alphabet;
mod complexity;
mod dimer;
mod factor;
mod sequences;
mod sturmian;
mod substitution;
mod system;
mod window;

pub use alphabet::Alphabet;
pub use complexity::{entropy_estimate, word_complexity, EntropyPoint, EntropyProfile, Trend};
pub use dimer::{
    dimer_alphabet, dimer_sample, DimerParams, Parity, FIRST_MINUS, FIRST_PLUS, SECOND_MINUS,
    SECOND_PLUS,
};
pub use factor::{factor_map, BlockMap};
pub use sequences::{
    iid_sample, paperfolding, paperfolding_range, paperfolding_term, periodic, rudin_shapiro,
    rudin_shapiro_range, rudin_shapiro_sign,
};
pub use sturmian::{
    sturmian_alphabet, sturmian_range, sturmian_word, RotationNumber, RotationTable,
    SturmianParams,
};
pub use substitution::{iterate_substitution, SubstitutionSystem};
pub use system::System;
pub use window::{GeneratorSpec, SequenceWindow};
