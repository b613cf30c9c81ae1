//! Lattice interactions, finite-volume Gibbs kernels, Metropolis sampling
//! and matching-rule energies.

mod chain;
mod estimate;
mod interaction;
mod lattice;
mod matching;
mod summability;

pub use chain::{acceptance_probability, metropolis_sweep, GibbsChain, InitialState, SweepOrder};
pub use estimate::{
    batch_means, magnetization_mc, pair_correlation_mc, symmetric_mixture_correlation, Estimate,
    MixtureReport, PairCorrelation, PairMode, RunLength,
};
pub use interaction::{Decay, InteractionSpec, Offset, PairTail, Term};
pub use lattice::{
    conditional_probability, local_hamiltonian, Boundary, FrameFill, Geometry, LatticeBox,
    ENUMERATION_LIMIT,
};
pub use matching::{matching_rule_energy, matching_rule_energy_2d, MatchingRuleSpec, TileArray};
pub use summability::{summability_norm, SummabilityReport, Verdict, WeightFunction};
