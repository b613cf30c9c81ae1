//! Parisi overlaps between independent replicas, their empirical laws, and
//! ultrametricity checks.

mod distribution;
mod sampler;
mod ultrametric;

pub use distribution::{
    overlap, sample_overlap_distribution, Atom, EmpiricalOverlapDistribution, OverlapSample,
};
pub use sampler::{
    sampler_for, DimerSampler, FixedSampler, IidSampler, ReplicaSampler, ShiftSampler,
    SturmianSampler,
};
pub use ultrametric::{
    sample_triples, synthetic_uniform_triples, ultrametricity_from_triples, ultrametricity_test,
    UltrametricityReport,
};
