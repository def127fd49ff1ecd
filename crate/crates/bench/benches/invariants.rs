use criterion::{black_box, criterion_group, criterion_main, Criterion};

use hess_gkm::cohomology::DEFAULT_LA_BUDGET;
use hess_gkm::{betti, cohomology, gkm, rep};
use hess_gkm_bench::{sample_n5, sample_n6, sample_n7};

fn poincare(c: &mut Criterion) {
    let h7 = sample_n7();
    c.bench_function("poincare_bruteforce_n7", |b| {
        b.iter(|| betti::poincare_bruteforce(black_box(&h7)).unwrap())
    });
    c.bench_function("poincare_inductive_n7", |b| {
        b.iter(|| betti::poincare_inductive(black_box(&h7)).unwrap())
    });
}

fn graphs(c: &mut Criterion) {
    let h6 = sample_n6();
    c.bench_function("build_graph_n6", |b| {
        b.iter(|| gkm::build_graph(black_box(&h6)).unwrap())
    });
    let h7 = sample_n7();
    c.bench_function("component_count_n7", |b| {
        b.iter(|| betti::component_count(black_box(&h7)).unwrap())
    });
}

fn degree_one(c: &mut Criterion) {
    let h5 = sample_n5();
    let mut group = c.benchmark_group("degree_one");
    group.sample_size(20);
    group.bench_function("h2_rank_n5", |b| {
        b.iter(|| cohomology::h2_rank(black_box(&h5), DEFAULT_LA_BUDGET).unwrap())
    });
    group.bench_function("dot_character_decompose_n5", |b| {
        b.iter(|| {
            let chi = rep::dot_action_character(black_box(&h5), 1, DEFAULT_LA_BUDGET).unwrap();
            rep::decompose(&chi).unwrap()
        })
    });
    group.finish();
}

criterion_group!(benches, poincare, graphs, degree_one);
criterion_main!(benches);
