use criterion::{criterion_group, criterion_main, Criterion};
use orbifolder::isometry::Fixture;
use orbifolder::search::{find_short, Execution, SearchOptions};

fn bench_find_short(c: &mut Criterion) {
    let mut group = c.benchmark_group("find_short");
    group.sample_size(10);
    for name in ["e8x3_swap", "leech_f"] {
        let fixture = Fixture::load(name).unwrap();
        for (label, execution) in [("sequential", Execution::Sequential), ("parallel", Execution::Parallel { jobs: 0 })] {
            let options = SearchOptions { execution, ..SearchOptions::default() };
            group.bench_function(format!("{name}/{label}"), |b| b.iter(|| find_short(&fixture, &options).unwrap()));
        }
    }
    group.finish();
}

criterion_group!(benches, bench_find_short);
criterion_main!(benches);
