use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rtlink::braid::braid_to_diagram;
use rtlink::rt_engine::evaluate_rt_with;
use rtlink::shadow_engine::evaluate_shadow_with;
use rtlink::skein_oracle::kauffman_bracket_with;
use rtlink::{ColoredBraidWord, Spin, Strategy};

fn strategies() -> [(&'static str, Strategy); 2] {
    [("sequential", Strategy::Sequential), ("parallel", Strategy::Parallel)]
}

fn bench(c: &mut Criterion) {
    let torus = ColoredBraidWord::uniform(4, Spin::HALF, [1, 2, 3].repeat(4)).unwrap();
    let colored = ColoredBraidWord::uniform(3, Spin::ONE, vec![1, -2, 1, -2, 1, 2]).unwrap();
    let diagram = braid_to_diagram(&ColoredBraidWord::uniform(3, Spin::HALF, [1, -2].repeat(8)).unwrap()).unwrap();

    let mut group = c.benchmark_group("evaluate_rt");
    for (name, s) in strategies() {
        group.bench_with_input(BenchmarkId::new(name, "T(4,4) spin 1/2"), &torus, |b, w| {
            b.iter(|| evaluate_rt_with(w, s).unwrap())
        });
    }
    group.finish();

    let mut group = c.benchmark_group("evaluate_shadow");
    for (name, s) in strategies() {
        group.bench_with_input(BenchmarkId::new(name, "3 strands spin 1"), &colored, |b, w| {
            b.iter(|| evaluate_shadow_with(w, Spin::ZERO, s).unwrap())
        });
    }
    group.finish();

    let mut group = c.benchmark_group("kauffman_bracket");
    for (name, s) in strategies() {
        group.bench_with_input(BenchmarkId::new(name, "16 crossings"), &diagram, |b, d| {
            b.iter(|| kauffman_bracket_with(d, s).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
