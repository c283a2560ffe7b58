use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use dqkin::{c_space_from_line, classify, common_lines, null_cone, reconstruct_quadrilateral, study_quadric, trajectory};
use dqkin_bench::*;

fn bench_classify(c: &mut Criterion) {
    let u = rr_space();
    c.bench_function("classify rr", |b| b.iter(|| classify(black_box(&u)).unwrap()));
    let moved = moved_rr_space();
    c.bench_function("classify moved rr", |b| b.iter(|| classify(black_box(&moved)).unwrap()));
}

fn bench_common_lines(c: &mut Criterion) {
    let u = rr_space();
    let (s, n) = (study_quadric().restrict(&u), null_cone().restrict(&u));
    c.bench_function("common lines rr", |b| b.iter(|| common_lines(black_box(&s), black_box(&n)).unwrap()));
}

fn bench_trajectory(c: &mut Criterion) {
    let (m, x) = (darboux_motion(), sample_point());
    c.bench_function("darboux trajectory", |b| b.iter(|| trajectory(black_box(&m), black_box(&x)).unwrap()));
    let l = generic_line();
    c.bench_function("c space from line", |b| b.iter(|| c_space_from_line(black_box(&l)).unwrap()));
}

fn bench_reconstruct(c: &mut Criterion) {
    let p = reconstruction_problem();
    c.bench_function("reconstruct quadrilateral", |b| b.iter(|| reconstruct_quadrilateral(black_box(&p)).unwrap()));
}

criterion_group!(benches, bench_classify, bench_common_lines, bench_trajectory, bench_reconstruct);
criterion_main!(benches);
