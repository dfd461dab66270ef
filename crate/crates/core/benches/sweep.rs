use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use gradid_core::algebras::ThinAlgebra;
use gradid_core::exec::Execution;
use gradid_core::field::FieldSpec;
use gradid_core::tideal::{sweep, FamilySet, SweepConfig};

fn basis_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("u1_basis_sweep");
    group.sample_size(10);
    for (label, field) in [("char0", FieldSpec::Rational), ("char3", FieldSpec::prime(3).unwrap())] {
        for exec in [Execution::Sequential, Execution::Parallel] {
            let mut cfg = SweepConfig::integer(ThinAlgebra::u1(field), FamilySet::u1(), 5, -2, 2);
            cfg.execution = exec;
            group.bench_with_input(BenchmarkId::new(label, format!("{exec:?}")), &cfg, |b, cfg| {
                b.iter(|| sweep(cfg).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, basis_sweep);
criterion_main!(benches);
