use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use graphshare::analysis::{census, connected_count_recurrence};
use graphshare::codec::{decode_graph, digits_to_integer, encode_graph, integer_to_digits};
use graphshare::protocol::{reconstruct_and_verify, share_colored_graph, SchemeSpec};
use graphshare::{Predicate, RandomSource};
use graphshare_bench::random_colored_graph;

fn codec(c: &mut Criterion) {
    let mut group = c.benchmark_group("codec");
    for n in [8usize, 32, 128] {
        let cg = random_colored_graph(n, 8, 1);
        group.bench_with_input(BenchmarkId::new("encode_to_integer", n), &cg, |b, cg| {
            b.iter(|| digits_to_integer(&encode_graph(black_box(cg))))
        });
        let v = digits_to_integer(&encode_graph(&cg));
        group.bench_with_input(BenchmarkId::new("integer_to_graph", n), &v, |b, v| {
            b.iter(|| decode_graph(&integer_to_digits(black_box(v), n, 8).unwrap()).unwrap())
        });
    }
    group.finish();
}

fn sharing(c: &mut Criterion) {
    let mut group = c.benchmark_group("sharing");
    let cg = random_colored_graph(64, 4, 2);
    for (name, spec) in [
        ("shamir_3_of_5", SchemeSpec::shamir(3, 5)),
        ("kgh_5", SchemeSpec::kgh(5)),
    ] {
        group.bench_function(BenchmarkId::new("split", name), |b| {
            let mut rng = RandomSource::from_u64(7);
            b.iter(|| share_colored_graph(&cg, spec, Predicate::Any, &mut rng).unwrap())
        });
        let dealing =
            share_colored_graph(&cg, spec, Predicate::Any, &mut RandomSource::from_u64(7)).unwrap();
        group.bench_function(BenchmarkId::new("reconstruct_and_verify", name), |b| {
            b.iter(|| reconstruct_and_verify(black_box(&dealing.shares)))
        });
    }
    group.finish();
}

fn analysis(c: &mut Criterion) {
    c.bench_function("census_6_connected", |b| {
        b.iter(|| census(black_box(6), &Predicate::Connected).unwrap())
    });
    c.bench_function("connected_recurrence_40", |b| {
        b.iter(|| connected_count_recurrence(black_box(40)))
    });
}

criterion_group!(benches, codec, sharing, analysis);
criterion_main!(benches);
