use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use cyclohedra::census::census_bruteforce;
use cyclohedra::equivariant::{character_table_bruteforce, theorem_series};
use cyclohedra::{cycle_graph, f_vector, DihedralGroup};
use std::hint::black_box;

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("f_vector");
    for m in [7, 9, 10] {
        let g = cycle_graph(m).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(m), &g, |b, g| b.iter(|| f_vector(black_box(g))));
    }
    group.finish();
}

fn census(c: &mut Criterion) {
    let mut group = c.benchmark_group("census");
    group.sample_size(10);
    for m in [7, 9] {
        group.bench_with_input(BenchmarkId::from_parameter(m), &m, |b, &m| b.iter(|| census_bruteforce(m, 12).unwrap()));
    }
    group.finish();
}

fn series(c: &mut Criterion) {
    let mut group = c.benchmark_group("theorem_series");
    group.sample_size(10);
    for m in [6, 8] {
        group.bench_with_input(BenchmarkId::from_parameter(m), &m, |b, &m| b.iter(|| theorem_series(m, 12).unwrap()));
    }
    group.finish();
}

fn character(c: &mut Criterion) {
    let elements = DihedralGroup::new(7).unwrap().elements();
    c.bench_function("character_scan/7/deg8", |b| {
        b.iter(|| character_table_bruteforce(7, black_box(&elements), 8, 12).unwrap())
    });
}

criterion_group!(benches, enumeration, census, series, character);
criterion_main!(benches);
