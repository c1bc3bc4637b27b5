use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};
use wallform_core::linalg::smith_normal_form;
use wallform_core::{
    form_complex, rank_certificate, BigInt, FgAbGroup, FormParameter, IntMatrix, SearchBudget, WallForm,
};

fn standard(g: usize, h: &[i64]) -> Arc<WallForm> {
    let p = FormParameter::trivial(&FgAbGroup::from_i64(h).unwrap(), -1);
    Arc::new(WallForm::standard(g, &p).unwrap())
}

fn snf(c: &mut Criterion) {
    let mut state = 12345u64;
    let mut next = move || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((state >> 33) % 41) as i64 - 20
    };
    let data: Vec<BigInt> = (0..64).map(|_| BigInt::from(next())).collect();
    let a = IntMatrix::from_vec(8, 8, data);
    c.bench_function("snf 8x8", |b| b.iter(|| smith_normal_form(black_box(&a))));
}

fn validation(c: &mut Criterion) {
    let w = standard(4, &[2, 4]);
    c.bench_function("validate W^4 over Z/2+Z/4", |b| b.iter(|| black_box(&w).validate().unwrap()));
    c.bench_function("nonsingularity W^3 over Z/6", |b| {
        let w = standard(3, &[6]);
        b.iter(|| black_box(&w).is_nonsingular())
    });
}

fn rank(c: &mut Criterion) {
    let w = standard(4, &[2]);
    let budget = SearchBudget::default();
    c.bench_function("rank W^4 over Z/2", |b| b.iter(|| rank_certificate(black_box(&w), &budget).unwrap()));
}

fn complex(c: &mut Criterion) {
    let mut group = c.benchmark_group("complex");
    group.sample_size(10);
    let w3 = standard(3, &[]);
    group.bench_function("W^3 bound 1", |b| b.iter(|| form_complex(black_box(&w3), 1, 2).unwrap()));
    let w2 = standard(2, &[2]);
    group.bench_function("W^2 over Z/2 bound 1", |b| b.iter(|| form_complex(black_box(&w2), 1, 2).unwrap()));
    group.finish();
}

criterion_group!(benches, snf, validation, rank, complex);
criterion_main!(benches);
