//! Parallel vs sequential throughput for the trial driver and the stripe
//! pipeline, plus the generic vs Vandermonde decode paths.
//!
//! Run with `cargo bench -p mdsa-core`.

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use mdsa_core::code::presets;
use mdsa_core::decoder::{DoubleErrorDecoder, RStrategy};
use mdsa_core::field::Symbol;
use mdsa_core::harness::{run_trials, run_trials_sequential, DecodePath, TrialConfig};
use mdsa_core::stripe::{
    decode_stripes, decode_stripes_sequential, encode_stripes, par_encode_stripes,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn bench_trials(c: &mut Criterion) {
    let params = presets::code_10_5_6();
    let mut group = c.benchmark_group("trials_10_5_6_t2");
    group.sample_size(10);
    for (name, path) in [
        ("generic", DecodePath::Generic),
        ("fast", DecodePath::VandermondeFast),
    ] {
        let cfg = TrialConfig {
            params: &params,
            t: 2,
            trials: 256,
            seed: 7,
            path,
        };
        group.bench_function(format!("sequential_{name}"), |b| {
            b.iter(|| run_trials_sequential(black_box(&cfg)).unwrap())
        });
        group.bench_function(format!("parallel_{name}"), |b| {
            b.iter(|| run_trials(black_box(&cfg)).unwrap())
        });
    }
    group.finish();
}

fn bench_stripes(c: &mut Criterion) {
    let params = presets::code_10_5_6();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let data: Vec<u8> = (0..256 * 1024).map(|_| rng.gen()).collect();
    let mut group = c.benchmark_group("stripe_256KiB");
    group.sample_size(10);
    group.bench_function("encode_sequential", |b| {
        b.iter(|| encode_stripes(black_box(&params), black_box(&data)))
    });
    group.bench_function("encode_parallel", |b| {
        b.iter(|| par_encode_stripes(black_box(&params), black_box(&data)))
    });

    let mut set = encode_stripes(&params, &data);
    // two corrupted symbols per row keeps every decode on the two-error path
    let rows = set.manifest.stripe_rows;
    for r in 0..rows {
        for pos in rand::seq::index::sample(&mut rng, 10, 2).iter() {
            let mag = rng.gen_range(1u32..32);
            for bit in 0..5u64 {
                if (mag >> bit) & 1 == 1 {
                    let idx = r * 5 + bit;
                    set.shards[pos][(idx / 8) as usize] ^= 1 << (idx % 8);
                }
            }
        }
    }
    group.bench_function("repair_sequential", |b| {
        b.iter(|| decode_stripes_sequential(&params, &set.manifest, &set.shards, 2, false).unwrap())
    });
    group.bench_function("repair_parallel", |b| {
        b.iter(|| decode_stripes(&params, &set.manifest, &set.shards, 2, false).unwrap())
    });
    group.finish();
}

fn bench_decode_paths(c: &mut Criterion) {
    let params = presets::code_10_5_6();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let words: Vec<_> = (0..64)
        .map(|_| {
            let info: Vec<Symbol> = (0..5).map(|_| Symbol(rng.gen_range(0..32))).collect();
            let mut v = params.encode(&info);
            for pos in rand::seq::index::sample(&mut rng, 5, 2).iter() {
                v.xor_at(pos + 1, Symbol(rng.gen_range(1..32)));
            }
            v
        })
        .collect();
    let mut group = c.benchmark_group("decode_two_info_errors");
    for (name, strat) in [
        ("generic", RStrategy::Generic),
        ("vandermonde_fast", RStrategy::VandermondeFast),
    ] {
        let d = DoubleErrorDecoder::with_strategy(&params, strat).unwrap();
        group.bench_function(name, |b| {
            b.iter(|| {
                for w in &words {
                    black_box(d.decode(black_box(w)));
                }
            })
        });
    }
    group.finish();
}

criterion_group!(benches, bench_trials, bench_stripes, bench_decode_paths);
criterion_main!(benches);
