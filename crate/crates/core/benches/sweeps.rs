//! Sequential against rayon-parallel execution of the heavier sweeps.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use swclass::exec::Exec;
use swclass::steenrod::{verify_recur3, verify_recur5, VerificationRange};
use swclass::wallcross::{TorusContext, TorusWallInput};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn identity_sweeps(c: &mut Criterion) {
    let mut g = c.benchmark_group("identity_sweeps");
    g.sample_size(10);
    let r3 = VerificationRange::recur3_default();
    let r5 = VerificationRange::recur5_default();
    for (name, mode) in MODES {
        g.bench_with_input(BenchmarkId::new("recur3", name), &mode, |b, &m| b.iter(|| verify_recur3(&r3, m).unwrap()));
        g.bench_with_input(BenchmarkId::new("recur5", name), &mode, |b, &m| b.iter(|| verify_recur5(&r5, m).unwrap()));
    }
    g.finish();
}

fn torus_inputs() -> Vec<TorusWallInput> {
    // Entries in -2..=2 above the diagonal of a 4 x 4 antisymmetric matrix.
    (0..5usize.pow(6))
        .map(|mut code| {
            let mut m = vec![vec![0i64; 4]; 4];
            for (i, j) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
                let x = (code % 5) as i64 - 2;
                code /= 5;
                m[i][j] = x;
                m[j][i] = -x;
            }
            TorusWallInput { b1: 4, d: 1, m }
        })
        .collect()
}

fn torus_sweep(c: &mut Criterion) {
    let mut g = c.benchmark_group("torus_wall_b1_4");
    g.sample_size(10);
    let ctx = TorusContext::new(4).unwrap();
    let inputs = torus_inputs();
    for (name, mode) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &m| {
            b.iter(|| m.map(&inputs, |inp| ctx.evaluate(inp).unwrap().jump))
        });
    }
    g.finish();
}

criterion_group!(benches, identity_sweeps, torus_sweep);
criterion_main!(benches);
