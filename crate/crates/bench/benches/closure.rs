use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use equilog::vcat::quotient_closure;
use equilog::Quantale;
use equilog_bench::{halving, object};

fn closure(c: &mut Criterion) {
    let mut group = c.benchmark_group("quotient_closure");
    for q in [Quantale::Two, Quantale::PlusReversed, Quantale::MaxReversed] {
        for n in [4, 8, 16, 32] {
            let x = object(q, n, 7);
            let p = halving(n);
            group.bench_with_input(BenchmarkId::new(q.name(), n), &n, |b, _| {
                b.iter(|| quotient_closure(&x, p.labels(), p.num_blocks()).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, closure);
criterion_main!(benches);
