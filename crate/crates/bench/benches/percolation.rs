use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use crossing_core::percsim::{run_with_workers, sample, Workspace};
use crossing_core::{Geometry, LatticeRun};

fn single_trial(c: &mut Criterion) {
    let mut g = c.benchmark_group("trial");
    for (name, geometry) in [
        ("rectangle", Geometry::Rectangle { aspect: 1.0 }),
        ("triangle", Geometry::EquilateralTriangle { t: 0.5 }),
        ("schramm", Geometry::IsoscelesSchramm { t: 0.5 }),
    ] {
        for side in [64, 128] {
            let layout = LatticeRun::new(geometry, side, 1, 0).layout().unwrap();
            g.throughput(Throughput::Elements(layout.sites() as u64));
            let mut ws = Workspace::new();
            let mut trial = 0u64;
            g.bench_with_input(BenchmarkId::new(name, side), &layout, |b, layout| {
                b.iter(|| {
                    trial += 1;
                    let config = sample(layout, 0.5, 1, trial);
                    ws.observe(layout, &config)
                })
            });
        }
    }
    g.finish();
}

fn batch(c: &mut Criterion) {
    let cfg = LatticeRun::new(Geometry::Rectangle { aspect: 1.0 }, 64, 1_000, 3);
    let mut g = c.benchmark_group("run");
    g.sample_size(10);
    g.bench_function("rectangle L=64 1000 trials", |b| b.iter(|| run_with_workers(&cfg, 1).unwrap()));
    g.finish();
}

criterion_group!(benches, single_trial, batch);
criterion_main!(benches);
