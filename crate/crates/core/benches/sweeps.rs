use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use drlab::geometry::{mean_curvature_numeric, point_on_level};
use drlab::htype::SpaceSignature;
use drlab::par::{map_indexed, Execution};
use drlab::rational::q;
use drlab::verify::{completeness_sweep, FamilySpec, SweepConfig};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn sweep(c: &mut Criterion) {
    let sig = SpaceSignature::build(1, 1).unwrap();
    let mut group = c.benchmark_group("completeness_sweep");
    group.sample_size(10);
    for (name, exec) in MODES {
        let mut cfg = SweepConfig::new(2000, 7);
        cfg.execution = exec;
        group.bench_with_input(BenchmarkId::new(name, 2000), &cfg, |b, cfg| {
            b.iter(|| completeness_sweep(&sig, cfg).unwrap())
        });
    }
    group.finish();
}

fn curvature_grid(c: &mut Criterion) {
    let sig = SpaceSignature::build(1, 2).unwrap();
    let spec = FamilySpec::spherelike_normalized(&sig, q(1, 4), 1).unwrap();
    let mut group = c.benchmark_group("mean_curvature_grid");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| {
                map_indexed(exec, 256, |i| {
                    let level = 3.0 + 0.1 * (i % 16) as f64;
                    let x = 0.03 * (i / 16) as f64 - 0.24;
                    let p = point_on_level(&sig, &spec, level, &[x, 0.0, 0.1, -x], &[0.05]).unwrap();
                    mean_curvature_numeric(&sig, &spec, &p).unwrap()
                })
            })
        });
    }
    group.finish();
}

criterion_group!(benches, sweep, curvature_grid);
criterion_main!(benches);
