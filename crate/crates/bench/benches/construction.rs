use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use portrait_core::{
    assemble_tree, certify, enumerate_portraits, enumerate_rotation_sets, parse_portrait,
    recover_portrait, validate_portrait, Degree,
};

const DEGREE5: &str = "degree 5\nset 0 3/4\nset 1/8 5/8\nset 1/4\nset 1/2\n";

fn rotation_sets(c: &mut Criterion) {
    let d = Degree::new(4).unwrap();
    c.bench_function("enumerate rotation sets d=4 p<=4", |b| {
        b.iter(|| enumerate_rotation_sets(black_box(d), 12, 4).unwrap())
    });
}

fn degree5(c: &mut Criterion) {
    let p = parse_portrait(DEGREE5).unwrap();
    let valid = validate_portrait(&p).unwrap();
    c.bench_function("assemble degree 5 tree", |b| b.iter(|| assemble_tree(black_box(&valid)).unwrap()));
    let ct = assemble_tree(&valid).unwrap();
    c.bench_function("recover degree 5 portrait", |b| b.iter(|| recover_portrait(black_box(&ct)).unwrap()));
    c.bench_function("certify degree 5 portrait", |b| b.iter(|| certify(black_box(&p))));
}

fn exhaustive(c: &mut Criterion) {
    let d = Degree::new(3).unwrap();
    let mut group = c.benchmark_group("exhaustive");
    group.sample_size(10);
    group.bench_function("certify all d=3 portraits p<=3", |b| {
        b.iter(|| {
            for p in enumerate_portraits(d, 3).unwrap() {
                assert!(certify(&p).passed());
            }
        })
    });
    group.finish();
}

criterion_group!(benches, rotation_sets, degree5, exhaustive);
criterion_main!(benches);
