use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use centraliser::idempotents::{exhaustive_idempotent_scan, verify_complete_set};
use centraliser::{AlgebraContext, AlgebraExt, PrimeField};

fn multiply(c: &mut Criterion) {
    let mut group = c.benchmark_group("multiply");
    for lambda2 in [16usize, 32, 64] {
        let ctx = AlgebraContext::new(PrimeField::new(3).unwrap(), 5, lambda2).unwrap();
        let coeffs: Vec<u32> = (0..=lambda2 as u32).map(|a| a % 3).collect();
        let x = ctx.element(coeffs.clone()).unwrap();
        let y = ctx.element(coeffs.into_iter().rev().collect()).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(lambda2), &lambda2, |b, _| {
            b.iter(|| black_box(&x * &y))
        });
    }
    group.finish();
}

fn context(c: &mut Criterion) {
    c.bench_function("context_new/lambda2=64", |b| {
        b.iter(|| AlgebraContext::new(PrimeField::new(2).unwrap(), black_box(16), 64).unwrap())
    });
}

fn verify(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_complete_set");
    for (m, lambda2) in [(1u64, 16usize), (5, 64), (16, 64)] {
        let ctx = AlgebraContext::new(PrimeField::new(2).unwrap(), m, lambda2).unwrap();
        group.bench_function(format!("m={m},lambda2={lambda2}"), |b| {
            b.iter(|| verify_complete_set(&ctx).unwrap())
        });
    }
    group.finish();
}

fn scan(c: &mut Criterion) {
    let ctx = AlgebraContext::new(PrimeField::new(2).unwrap(), 3, 10).unwrap();
    c.bench_function("exhaustive_scan/lambda2=10", |b| {
        b.iter(|| exhaustive_idempotent_scan(&ctx).unwrap())
    });
}

criterion_group!(benches, multiply, context, verify, scan);
criterion_main!(benches);
