use criterion::{black_box, criterion_group, criterion_main, Criterion};

use curvecount::invariants::{dt_reduced_to_gv, gv_to_dt_reduced, gv_to_gw, gw_to_gv};
use curvecount::partitions::{mcmahon_series, QSign};
use curvecount::QWindow;
use curvecount_bench::sample_table;

fn macmahon(c: &mut Criterion) {
    c.bench_function("mcmahon_series order 60", |b| {
        b.iter(|| mcmahon_series(black_box(60), QSign::Minus))
    });
}

fn product_formula(c: &mut Criterion) {
    let gv = sample_table(4, 3, 7);
    let window = QWindow::for_inversion(gv.max_genus().unwrap_or(0), 4);
    c.bench_function("gv_to_dt_reduced deg 4 genus 3", |b| {
        b.iter(|| gv_to_dt_reduced(black_box(&gv), window, 4).unwrap())
    });
    let z = gv_to_dt_reduced(&gv, window, 4).unwrap();
    c.bench_function("dt_reduced_to_gv deg 4 genus 3", |b| {
        b.iter(|| dt_reduced_to_gv(black_box(&z)).unwrap())
    });
}

fn lambda_expansion(c: &mut Criterion) {
    let gv = sample_table(6, 3, 11);
    let gw = gv_to_gw(&gv, 3, 6);
    c.bench_function("gv_to_gw deg 6 genus 3", |b| {
        b.iter(|| gv_to_gw(black_box(&gv), 3, 6))
    });
    c.bench_function("gw_to_gv deg 6 genus 3", |b| {
        b.iter(|| gw_to_gv(black_box(&gw), 3).unwrap())
    });
}

criterion_group!(benches, macmahon, product_formula, lambda_expansion);
criterion_main!(benches);
