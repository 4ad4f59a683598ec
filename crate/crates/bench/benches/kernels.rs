use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};
use fed_core::algebra::{build_quantum_ci, build_truncated_polynomial};
use fed_core::ext::ext_dims;
use fed_core::linalg::rref;
use fed_core::module::cyclic_quotient;
use fed_core::resolution::{CoverStrategy, Resolution};
use fed_core::{FieldSpec, Mat};

fn q() -> FieldSpec {
    FieldSpec::Rational
}

fn rref_dense(c: &mut Criterion) {
    let n = 24;
    let rows = (0..n)
        .map(|i| (0..n).map(|j| q().from_i64(((i * 7 + j * 13) % 11) as i64 - 5)).collect())
        .collect();
    let m = Mat::from_rows(q(), rows, n);
    c.bench_function("rref 24x24 over Q", |b| b.iter(|| rref(black_box(&m))));
}

fn resolve_residue_field(c: &mut Criterion) {
    let a = Arc::new(build_truncated_polynomial(q(), &[2, 2]).unwrap());
    let mut x = a.zero_element();
    x[1] = q().one();
    let mut y = a.zero_element();
    y[2] = q().one();
    let k = cyclic_quotient(&a, &[x, y]).unwrap();
    c.bench_function("minimal resolution of k over k[x,y]/(x^2,y^2) to step 10", |b| {
        b.iter(|| {
            let mut r = Resolution::new(k.clone(), CoverStrategy::Minimal).unwrap();
            r.extend_to(10).unwrap();
            black_box(r.betti())
        })
    });
}

fn schulz_profile(c: &mut Criterion) {
    let a = Arc::new(build_quantum_ci(q(), &q().from_i64(2)).unwrap());
    let mut g = a.zero_element();
    g[1] = q().one();
    g[2] = q().one();
    let m = cyclic_quotient(&a, &[g]).unwrap();
    c.bench_function("Ext(M, M) to degree 20 over quantum_ci(2)", |b| {
        b.iter(|| ext_dims(black_box(&m), &m, 20).unwrap())
    });
}

criterion_group!(benches, rref_dense, resolve_residue_field, schulz_profile);
criterion_main!(benches);
