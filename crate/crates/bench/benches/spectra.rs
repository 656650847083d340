// SPDX-License-Identifier: Apache-2.0

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use mlspec::spectroscopy::fit_dunham;
use mlspec::{Deformation, FitBasis, Molecule, PotentialKind};

fn spectra(c: &mut Criterion) {
    let m = Molecule::with_gamma(200.0).unwrap();
    let d = Deformation::new(1e-6).unwrap();
    let mut group = c.benchmark_group("spectrum");
    for kind in PotentialKind::ALL {
        group.bench_with_input(BenchmarkId::new("closed_form_20x20", kind), &kind, |b, &kind| {
            b.iter(|| kind.spectrum(black_box(&m), d, 19, 19).unwrap())
        });
    }
    group.finish();
}

fn dunham(c: &mut Criterion) {
    let m = Molecule::with_gamma(200.0).unwrap();
    let d = Deformation::new(1e-6).unwrap();
    let table = PotentialKind::Kratzer.level_table(&m, d, 5, 5).unwrap();
    for basis in [FitBasis::Standard, FitBasis::Extended] {
        c.bench_function(&format!("dunham_fit_{basis:?}"), |b| {
            b.iter(|| fit_dunham(black_box(&table), basis).unwrap())
        });
    }
}

criterion_group!(benches, spectra, dunham);
criterion_main!(benches);
