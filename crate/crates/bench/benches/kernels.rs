//! Criterion benchmarks for the hot kernels: extension-field arithmetic,
//! univariate factorization, the exact singular-locus solver, and the
//! pair-graph construction behind the good-k counts.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use planefill_core::poly::factor;
use planefill_core::{
    build_curve, build_pair_graph, exact_singular_locus, verify_claims, CurveSpec, Field,
    FieldElement,
};
use std::hint::black_box;

fn field_elements(field: &Field) -> Vec<FieldElement> {
    field.elements().collect()
}

fn bench_field_arithmetic(c: &mut Criterion) {
    let f81 = Field::new(3, 4).expect("F_81");
    let elems = field_elements(&f81);
    c.bench_function("f81_full_multiplication_table", |b| {
        b.iter(|| {
            let mut acc = f81.zero();
            for x in &elems {
                for y in &elems {
                    acc = &acc + &(x * y);
                }
            }
            black_box(acc)
        })
    });
    c.bench_function("f81_invert_all_units", |b| {
        b.iter(|| {
            for x in &elems {
                if !x.is_zero() {
                    black_box(x.inv().expect("unit"));
                }
            }
        })
    });
}

fn bench_factorization(c: &mut Criterion) {
    // the degree-31 root-test polynomial of the (q=11, r=5) member:
    // irreducible, so this exercises the full distinct-degree ladder
    let f11 = Field::new(11, 1).expect("F_11");
    let spec = CurveSpec::parse(&f11, "ckr:9,5").expect("spec");
    let crit = spec.criterion_poly().expect("criterion");
    c.bench_function("factor_degree31_criterion", |b| {
        b.iter_batched(
            || crit.clone(),
            |p| black_box(factor(&p).expect("factors")),
            BatchSize::SmallInput,
        )
    });
}

fn bench_exact_solver(c: &mut Criterion) {
    let f11 = Field::new(11, 1).expect("F_11");
    let smooth = build_curve(&CurveSpec::parse(&f11, "ck:3").expect("spec")).expect("curve");
    c.bench_function("exact_locus_smooth_q11", |b| {
        b.iter(|| black_box(exact_singular_locus(&smooth).expect("report")))
    });
    let singular = build_curve(&CurveSpec::parse(&f11, "ckr:9,5").expect("spec")).expect("curve");
    c.bench_function("exact_locus_conjugate_pair_q11", |b| {
        b.iter(|| black_box(exact_singular_locus(&singular).expect("report")))
    });
}

fn bench_pair_graph(c: &mut Criterion) {
    let field = Field::new(4099, 1).expect("F_4099");
    let mut group = c.benchmark_group("pair_graph");
    group.sample_size(10);
    group.bench_function("build_q4099", |b| {
        b.iter(|| black_box(build_pair_graph(&field).expect("graph")))
    });
    let graph = build_pair_graph(&field).expect("graph");
    group.bench_function("verify_claims_q4099", |b| {
        b.iter(|| black_box(verify_claims(&graph).expect("claims")))
    });
    group.finish();
}

criterion_group!(
    kernels,
    bench_field_arithmetic,
    bench_factorization,
    bench_exact_solver,
    bench_pair_graph
);
criterion_main!(kernels);
