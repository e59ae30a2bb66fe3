//! Timings for the sweep entry points against plain sequential folds over
//! the same public per-item calls.
//!
//! Built with the default features the library side runs on rayon, so the
//! gap here is the parallel speedup. Built with `--no-default-features`
//! both sides are sequential and the gap collapses to dispatch noise:
//!
//! ```text
//! cargo bench -p trisep
//! cargo bench -p trisep --no-default-features
//! ```

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use trisep::faces::{decompose, TenStateBasis, FACE_TOL};
use trisep::linalg::partial_transpose;
use trisep::sampling;
use trisep::sweeps;
use trisep::witness::{make_witness, Triple, WitnessLabel};
use trisep::Party;

const U: f64 = 2.0;
const SEED: u64 = 42;

fn positivity_scan(c: &mut Criterion) {
    let count = 10_000;
    let mut group = c.benchmark_group("positivity_scan_10k");
    group.sample_size(10);

    group.bench_function("sweep", |b| {
        b.iter(|| black_box(sweeps::positivity_sampling(count, SEED, U).unwrap()))
    });

    group.bench_function("sequential_fold", |b| {
        let witnesses: Vec<_> = WitnessLabel::ALL
            .iter()
            .map(|&l| make_witness(l, U).unwrap())
            .collect();
        b.iter(|| {
            let mut rng = sampling::rng(SEED);
            let mut min = f64::INFINITY;
            for _ in 0..count {
                let t = sampling::product_vector(&mut rng).tensor();
                for w in &witnesses {
                    min = min.min(w.kill_value(&t).unwrap());
                }
            }
            black_box(min)
        })
    });

    group.finish();
}

fn xstate_cross_check(c: &mut Criterion) {
    let count = 2_000;
    let mut group = c.benchmark_group("xstate_cross_check_2k");
    group.sample_size(10);

    group.bench_function("sweep", |b| {
        b.iter(|| black_box(sweeps::xstate_cross_check(count, SEED)))
    });

    group.bench_function("sequential_fold", |b| {
        b.iter(|| {
            let mut rng = sampling::rng(SEED);
            let mut worst: f64 = 0.0;
            for _ in 0..count {
                let x = sampling::xstate(&mut rng);
                let dense = x.to_dense();
                for party in Party::ALL {
                    let pt = x.partial_transpose(party).to_dense();
                    let pt_dense = partial_transpose(&dense, party).unwrap();
                    worst = worst.max(pt.max_abs_diff(&pt_dense));
                }
            }
            black_box(worst)
        })
    });

    group.finish();
}

fn decompose_batch(c: &mut Criterion) {
    let count = 200;
    let mut group = c.benchmark_group("decompose_batch_200");
    group.sample_size(10);

    group.bench_function("sweep", |b| {
        b.iter(|| {
            black_box(sweeps::decompose_roundtrip(Triple::WAB, U, count, SEED).unwrap())
        })
    });

    group.bench_function("sequential_fold", |b| {
        let basis = TenStateBasis::new(Triple::WAB, U).unwrap();
        b.iter(|| {
            let mut rng = sampling::rng(SEED);
            let mut worst: f64 = 0.0;
            for _ in 0..count {
                let weights = sampling::interior_weights(&mut rng, 10, 0.001);
                let rho = basis.mix(&weights).unwrap();
                let cert = decompose(&rho, &basis, FACE_TOL).unwrap();
                worst = worst.max(cert.residual);
            }
            black_box(worst)
        })
    });

    group.finish();
}

criterion_group!(benches, positivity_scan, xstate_cross_check, decompose_batch);
criterion_main!(benches);
