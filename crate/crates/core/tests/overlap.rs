use aperiodic::overlap::{
    overlap, sample_overlap_distribution, sample_triples, ultrametricity_from_triples, DimerSampler,
    EmpiricalOverlapDistribution, FixedSampler, IidSampler, ReplicaSampler, SturmianSampler,
};
use aperiodic::symbolic::{iid_sample, Alphabet, RotationNumber, RotationTable};
use aperiodic::System;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn overlap_symmetries(s1 in any::<u64>(), s2 in any::<u64>(), n in 1usize..2000) {
        let a = iid_sample(Alphabet::plus_minus(), s1, n).unwrap();
        let b = iid_sample(Alphabet::plus_minus(), s2, n).unwrap();
        prop_assert_eq!(overlap(&a, &b).unwrap(), overlap(&b, &a).unwrap());
        prop_assert_eq!(overlap(&a.negated().unwrap(), &b).unwrap(), -overlap(&a, &b).unwrap());
        prop_assert_eq!(overlap(&a, &a).unwrap(), 1.0);
        prop_assert_eq!(overlap(&a, &a.negated().unwrap()).unwrap(), -1.0);
    }
}

#[test]
fn length_mismatch_is_an_error() {
    let a = iid_sample(Alphabet::plus_minus(), 1, 10).unwrap();
    let b = iid_sample(Alphabet::plus_minus(), 1, 11).unwrap();
    assert!(overlap(&a, &b).is_err());
}

#[test]
fn independent_iid_overlaps_obey_the_clt_bound() {
    let n = 10_000;
    let dist = sample_overlap_distribution(&IidSampler::new(n).unwrap(), 1000, 77).unwrap();
    let bound = 3.0 / (n as f64).sqrt();
    let inside = dist.sorted().iter().filter(|q| q.abs() <= bound).count();
    assert!(inside >= 990, "{inside} of 1000 within 3/sqrt(N)");
}

#[test]
fn mixture_atom_is_recovered() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let samples: Vec<f64> = (0..10_000)
        .map(|i| if i % 2 == 0 { 0.2 } else { rng.gen_range(-1.0..=1.0) })
        .collect();
    let atoms = EmpiricalOverlapDistribution::from_samples(samples, 1).unwrap().atom_scan(0.01, 0.05);
    assert_eq!(atoms.len(), 1, "{atoms:?}");
    assert!((atoms[0].location - 0.2).abs() <= 0.01);
    assert!((atoms[0].weight - 0.5).abs() <= 0.03);
}

#[test]
fn identical_replicas_are_ultrametric() {
    let w = System::ThueMorse.window(1024, None).unwrap();
    let triples = sample_triples(&FixedSampler::new(w), 100, 0).unwrap();
    assert!(triples.iter().all(|t| *t == [1.0; 3]));
    assert_eq!(ultrametricity_from_triples(&triples, 0.02).unwrap().violation_fraction, 0.0);
}

#[test]
fn sturmian_overlaps_converge_in_window_length() {
    let alpha = RotationNumber::golden();
    let n = 100_000;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let (b1, b2): (f64, f64) = (rng.gen(), rng.gen());
        let at = |len: usize| {
            let t = RotationTable::new(alpha, -((len / 2) as i64), len);
            let (x, y) = (t.word(b1), t.word(b2));
            x.iter().zip(&y).map(|(a, b)| if a == b { 1.0 } else { -1.0 }).sum::<f64>() / len as f64
        };
        let (short, long) = (at(n), at(2 * n));
        assert!((short - long).abs() <= 5e-3, "{short} vs {long}");
    }
}

#[test]
fn ecdfs_from_disjoint_seeds_agree() {
    let sampler = SturmianSampler::new(RotationNumber::golden(), 10_000).unwrap();
    let a = sample_overlap_distribution(&sampler, 10_000, 1).unwrap();
    let b = sample_overlap_distribution(&sampler, 10_000, 2).unwrap();
    let d = a.ks_distance(&b);
    assert!(d <= 0.03, "KS distance {d}");
}

/// Exact law of q for parity-mixed dimer replicas by enumerating every
/// configuration of both parities.
fn dimer_overlap_moments(n: usize) -> (f64, f64) {
    let mut configs: Vec<(f64, Vec<f64>)> = Vec::new();
    let blocks = n / 2;
    for bits in 0..1u32 << blocks {
        let s = |i: usize| if bits >> i & 1 == 1 { 1.0 } else { -1.0 };
        let even: Vec<f64> = (0..blocks).flat_map(|i| [s(i), -s(i)]).collect();
        configs.push((0.5 / (1u64 << blocks) as f64, even));
    }
    for bits in 0..1u32 << (blocks + 1) {
        let s = |i: usize| if bits >> i & 1 == 1 { 1.0 } else { -1.0 };
        let mut odd = vec![-s(0)];
        for i in 1..blocks {
            odd.extend([s(i), -s(i)]);
        }
        odd.push(s(blocks));
        configs.push((0.5 / (1u64 << (blocks + 1)) as f64, odd));
    }
    let (mut mean, mut second) = (0.0, 0.0);
    for (p, x) in &configs {
        for (r, y) in &configs {
            let q = x.iter().zip(y).map(|(a, b)| a * b).sum::<f64>() / n as f64;
            mean += p * r * q;
            second += p * r * q * q;
        }
    }
    (mean, second)
}

#[test]
fn dimer_overlaps_match_enumeration() {
    let n = 8;
    let (mean, second) = dimer_overlap_moments(n);
    assert!(mean.abs() < 1e-15);
    let dist = sample_overlap_distribution(&DimerSampler::new(n).unwrap(), 40_000, 99).unwrap();
    let empirical = dist.sorted().iter().map(|q| q * q).sum::<f64>() / dist.m() as f64;
    assert!((empirical - second).abs() / second < 0.05, "{empirical} vs {second}");
    assert!(dist.mean().abs() < 4.0 * (second / dist.m() as f64).sqrt());
}

#[test]
fn dimer_replicas_mix_parities() {
    let sampler = DimerSampler::new(64).unwrap();
    let parities: Vec<bool> = (0..200u64)
        .map(|s| {
            let w = sampler.draw(s).unwrap();
            w.symbols()[0] == 1 || w.symbols()[0] == 3
        })
        .collect();
    let odd = parities.iter().filter(|&&p| p).count();
    assert!((60..=140).contains(&odd), "{odd} odd of 200");
}
