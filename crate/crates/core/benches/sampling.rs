use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use slemma_kit::certify::{inclusion_check, SamplingConfig};
use slemma_kit::counterforge::lookup;
use slemma_kit::par::ExecMode;
use slemma_kit::stability::{default_z_candidates, sign_flip_witness_search, FlipSearchConfig};

const MODES: [(&str, ExecMode); 2] = [
    ("parallel", ExecMode::Parallel),
    ("sequential", ExecMode::Sequential),
];

fn inclusion(c: &mut Criterion) {
    // The inclusion holds for this pair, so every sample is evaluated.
    let inst = lookup("ternary-counterexample").unwrap();
    let mut group = c.benchmark_group("inclusion_check");
    group.sample_size(10);
    for (name, mode) in MODES {
        let cfg = SamplingConfig::with_seed(1)
            .with_budget(2000)
            .with_mode(mode);
        group.bench_with_input(BenchmarkId::from_parameter(name), &cfg, |b, cfg| {
            b.iter(|| inclusion_check(&inst.g, &inst.f, cfg))
        });
    }
    group.finish();
}

fn flip_search(c: &mut Criterion) {
    let inst = lookup("counter2-swapped").unwrap();
    let zs = default_z_candidates(&inst.g, &inst.f);
    let mut group = c.benchmark_group("sign_flip_search");
    group.sample_size(10);
    for (name, mode) in MODES {
        let cfg = FlipSearchConfig {
            mode,
            ..Default::default()
        };
        group.bench_with_input(BenchmarkId::from_parameter(name), &cfg, |b, cfg| {
            b.iter(|| sign_flip_witness_search(&inst.g, &inst.f, &zs, cfg).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, inclusion, flip_search);
criterion_main!(benches);
