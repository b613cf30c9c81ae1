use std::hint::black_box;

use aperiodic::correlation::autocorrelation;
use aperiodic::gibbs::{Boundary, GibbsChain, InitialState, InteractionSpec, LatticeBox};
use aperiodic::overlap::{overlap, ReplicaSampler, ShiftSampler};
use aperiodic::spectra::periodogram;
use aperiodic::System;
use criterion::{criterion_group, criterion_main, Criterion};

fn spectra(c: &mut Criterion) {
    let tm = System::ThueMorse.window(1 << 16, None).unwrap();
    c.bench_function("periodogram 2^16", |b| b.iter(|| periodogram(black_box(&tm), 1 << 16).unwrap()));
    c.bench_function("autocorrelation 2^16 lag 64", |b| b.iter(|| autocorrelation(black_box(&tm), 64).unwrap()));
    c.bench_function("autocorrelation 2^16 lag 4096", |b| {
        b.iter(|| autocorrelation(black_box(&tm), 4096).unwrap())
    });
}

fn overlaps(c: &mut Criterion) {
    let sampler = ShiftSampler::new(&System::PeriodDoubling, 1 << 16).unwrap();
    let (a, b) = (sampler.draw(1).unwrap(), sampler.draw(2).unwrap());
    c.bench_function("overlap 2^16", |bench| bench.iter(|| overlap(black_box(&a), black_box(&b)).unwrap()));
    c.bench_function("shift replica draw 2^16", |bench| bench.iter(|| sampler.draw(black_box(3)).unwrap()));
}

fn metropolis(c: &mut Criterion) {
    let ising = InteractionSpec::ising(2, 1.0, 0.0).unwrap();
    let mut chain = GibbsChain::new(
        &ising,
        LatticeBox::square(32),
        &Boundary::uniform(0, 1),
        0.6,
        7,
        &InitialState::Random,
    )
    .unwrap();
    c.bench_function("metropolis sweep 32x32", |b| b.iter(|| chain.sweep()));
}

criterion_group!(kernels, spectra, overlaps, metropolis);
criterion_main!(kernels);
