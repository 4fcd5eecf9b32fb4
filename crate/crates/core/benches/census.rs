use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use ree_core::census::{census, ree_input, sl2_char2_input, unipotent_matrix_histogram};
use ree_core::ree::{CensusMode, ReeContext};
use ree_core::Execution;

fn group_census(c: &mut Criterion) {
    let ctx = ReeContext::new(0).unwrap();
    let inputs = [
        ("sl2_8", sl2_char2_input(3).unwrap()),
        ("sl2_32", sl2_char2_input(5).unwrap()),
        ("ree_3", ree_input(&ctx).unwrap()),
    ];
    let mut g = c.benchmark_group("census");
    g.sample_size(10);
    for (name, input) in &inputs {
        for exec in Execution::available() {
            g.bench_with_input(BenchmarkId::new(*name, exec.name()), input, |b, input| {
                b.iter(|| census(input, exec).unwrap())
            });
        }
    }
    g.finish();
}

fn unipotent(c: &mut Criterion) {
    let ctx = ReeContext::new(1).unwrap();
    let mut g = c.benchmark_group("unipotent_q27");
    g.sample_size(10);
    for exec in Execution::available() {
        g.bench_function(BenchmarkId::new("triples", exec.name()), |b| {
            b.iter(|| ctx.unipotent_census(CensusMode::Exhaustive(exec)).unwrap())
        });
        g.bench_function(BenchmarkId::new("matrices", exec.name()), |b| {
            b.iter(|| unipotent_matrix_histogram(&ctx, exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, group_census, unipotent);
criterion_main!(benches);
