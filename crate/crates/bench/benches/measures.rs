// SPDX-License-Identifier: Apache-2.0

use criterion::{black_box, criterion_group, criterion_main, BatchSize, Criterion};
use pdt_core::boolfn::RestrictedFunction;
use pdt_core::construct::{self, zoo};
use pdt_core::gf2;
use pdt_core::parity::{self, ParityAnalyzer};
use pdt_core::{comm, BooleanFunction, Mode};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random(n: usize, count: usize) -> Vec<BooleanFunction> {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    (0..count).map(|_| BooleanFunction::random(n, &mut rng)).collect()
}

fn parity_depth(c: &mut Criterion) {
    let fs = random(4, 64);
    c.bench_function("parity_depth n=4 x64, cold memo", |b| {
        b.iter(|| {
            let mut an = ParityAnalyzer::new();
            for f in &fs {
                black_box(an.parity_depth(&RestrictedFunction::whole(f)).unwrap());
            }
        })
    });
    let maj5 = zoo("maj", 5).unwrap();
    c.bench_function("parity_depth maj5", |b| {
        b.iter(|| parity::parity_depth(&RestrictedFunction::whole(black_box(&maj5))).unwrap())
    });
}

fn certificates(c: &mut Criterion) {
    let fs = random(5, 16);
    c.bench_function("parity_certificate_profile n=5 x16", |b| {
        b.iter(|| {
            for f in &fs {
                black_box(parity::parity_certificate_profile(&RestrictedFunction::whole(f)).unwrap());
            }
        })
    });
}

fn block_sensitivity(c: &mut Criterion) {
    let fs = random(4, 8);
    c.bench_function("parity_bs n=4 x8, cold memo", |b| {
        b.iter_batched(
            ParityAnalyzer::new,
            |mut an| {
                for f in &fs {
                    black_box(an.parity_bs(f, Mode::Exact).unwrap());
                }
            },
            BatchSize::SmallInput,
        )
    });
}

fn enumeration(c: &mut Criterion) {
    c.bench_function("enumerate GL(4,2)", |b| b.iter(|| gf2::enumerate_gl(4).unwrap().count()));
    c.bench_function("enumerate cosets of F2^6", |b| b.iter(|| gf2::enumerate_cosets(6).unwrap().count()));
}

fn rank(c: &mut Criterion) {
    let f = random(6, 1).pop().unwrap();
    c.bench_function("xor_matrix_rank n=6", |b| b.iter(|| comm::xor_matrix_rank(black_box(&f)).unwrap()));
}

fn gap_instance(c: &mut Criterion) {
    c.bench_function("sample and check k=3", |b| {
        b.iter(|| construct::sample_thm_exp(3, black_box(5)).unwrap().check().unwrap())
    });
}

criterion_group!(benches, parity_depth, certificates, block_sensitivity, enumeration, rank, gap_instance);
criterion_main!(benches);
