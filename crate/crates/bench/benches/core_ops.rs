use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use std::hint::black_box;

use liftmcg::census::{orbit_e1, verify_self_normalizing};
use liftmcg::factor::factor_stab_e1;
use liftmcg::gamma1::CosetTable;
use liftmcg::matrix::IntMatrix;
use liftmcg::verify::random_twist_word;
use liftmcg_bench::{bench_cover, stab_corpus};
use rand::rngs::StdRng;
use rand::SeedableRng;

fn bench_word_evaluation(c: &mut Criterion) {
    let mut rng = StdRng::seed_from_u64(1);
    let words: Vec<_> = (0..32).map(|_| random_twist_word(3, 60, &mut rng)).collect();
    c.bench_function("evaluate_len60_g3", |b| {
        let mut i = 0;
        b.iter(|| {
            let w = &words[i % words.len()];
            i += 1;
            black_box(w.evaluate().unwrap())
        })
    });
}

fn bench_factor_g2(c: &mut Criterion) {
    let cover = bench_cover(2, 3);
    let corpus = stab_corpus(2, 3, 24, 99);
    c.bench_function("factor_stab_g2_k3", |b| {
        let mut i = 0;
        b.iter_batched(
            || {
                let m = corpus[i % corpus.len()].1.clone();
                i += 1;
                m
            },
            |m| black_box(factor_stab_e1(&m, &cover).unwrap()),
            BatchSize::SmallInput,
        )
    });
}

fn bench_factor_g3(c: &mut Criterion) {
    let cover = bench_cover(3, 2);
    let corpus = stab_corpus(3, 2, 12, 7);
    c.bench_function("factor_stab_g3_k2", |b| {
        let mut i = 0;
        b.iter_batched(
            || {
                let m = corpus[i % corpus.len()].1.clone();
                i += 1;
                m
            },
            |m| black_box(factor_stab_e1(&m, &cover).unwrap()),
            BatchSize::SmallInput,
        )
    });
}

fn bench_orbit(c: &mut Criterion) {
    c.bench_function("orbit_e1_g3_k2", |b| b.iter(|| black_box(orbit_e1(3, 2).unwrap())));
    c.bench_function("orbit_e1_g2_k5", |b| b.iter(|| black_box(orbit_e1(2, 5).unwrap())));
}

fn bench_gamma1_rewrite(c: &mut Criterion) {
    let table = CosetTable::new(12).unwrap();
    let member = IntMatrix::from_rows(&[&[25, 2], &[12, 1]]);
    c.bench_function("gamma1_rewrite_k12", |b| {
        b.iter(|| black_box(table.rewrite(&member).unwrap()))
    });
}

fn bench_selfnorm(c: &mut Criterion) {
    c.bench_function("selfnorm_exhaustive_g2_k3", |b| {
        b.iter(|| black_box(verify_self_normalizing(2, 3, 4).unwrap()))
    });
}

criterion_group!(
    benches,
    bench_word_evaluation,
    bench_factor_g2,
    bench_factor_g3,
    bench_orbit,
    bench_gamma1_rewrite,
    bench_selfnorm
);
criterion_main!(benches);
