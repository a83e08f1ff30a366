use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use obsinfer_core::montecarlo::samplers::ZoneDraw;
use obsinfer_core::montecarlo::{estimate_halfer, Philox, TwoZoneSampler};
use obsinfer_core::principles::{check, CheckOptions};
use obsinfer_core::rational::ratio;
use obsinfer_core::scenarios::{hartle_srednicki, sequential};
use obsinfer_core::{build_halfer, build_thirder, compile, solve, Principle};

fn measures(c: &mut Criterion) {
    let mut g = c.benchmark_group("build_thirder");
    for n in [4usize, 6, 8] {
        let hs = hartle_srednicki(n, n / 2, &ratio(1, 2)).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(n), &hs, |b, hs| {
            b.iter(|| build_thirder(black_box(&hs.ext)).unwrap())
        });
    }
    g.finish();
}

fn principles(c: &mut Criterion) {
    let hs = hartle_srednicki(6, 3, &ratio(1, 2)).unwrap();
    let halfer = build_halfer(&hs.ext).unwrap();
    let opts = CheckOptions::default();
    c.bench_function("check_all/hartle-srednicki-6", |b| {
        b.iter(|| {
            for p in [
                Principle::PN,
                Principle::PI,
                Principle::PIst,
                Principle::PEI,
                Principle::PP,
            ] {
                black_box(check(&hs.ext, &halfer, p, &opts).unwrap());
            }
        })
    });
}

fn feasibility(c: &mut Criterion) {
    let mut g = c.benchmark_group("solve_pn_pei");
    g.sample_size(20);
    for m in [2usize, 3, 4] {
        let mut hazards = vec![ratio(1, 3); m];
        hazards.push(ratio(1, 1));
        let sc = sequential(&hazards, 2).unwrap();
        let cs = compile(&sc.ext, &[Principle::PN, Principle::PEI]).unwrap();
        g.bench_with_input(BenchmarkId::new("sequential", m), &cs, |b, cs| {
            b.iter(|| solve(black_box(cs)))
        });
    }
    g.finish();
}

fn monte_carlo(c: &mut Criterion) {
    c.bench_function("philox/next_u64", |b| {
        let mut rng = Philox::new(1, 0);
        b.iter(|| rand::RngCore::next_u64(black_box(&mut rng)))
    });
    let sampler = TwoZoneSampler::new(10_000, 0.01, 0.01, 0.5).unwrap();
    c.bench_function("estimate_halfer/two-zone-10k-samples", |b| {
        b.iter(|| estimate_halfer(&sampler, |d: &ZoneDraw| !d.w, Some(0), 10_000, 7, 1).unwrap())
    });
}

criterion_group!(benches, measures, principles, feasibility, monte_carlo);
criterion_main!(benches);
