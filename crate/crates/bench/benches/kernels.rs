use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use flopwin::bott::{k_resolution, s_resolution};
use flopwin::closure::standard_closure;
use flopwin::git::semistable;
use flopwin::koszul::{tor_weights, z1_plus};
use flopwin::potential::{grad_w, Cubic6};
use flopwin::windows::{WindowSet, DEFAULT_BOX};
use flopwin::{LaurentChar, PointV, Side};

fn characters(c: &mut Criterion) {
    let std = LaurentChar::from_weights([(1, 0), (0, 1)]);
    c.bench_function("sym_powers_upto_12", |b| b.iter(|| black_box(&std).sym_powers_upto(12).unwrap()));
}

fn resolutions(c: &mut Criterion) {
    c.bench_function("s_resolution", |b| b.iter(s_resolution));
    c.bench_function("k_resolution", |b| b.iter(k_resolution));
}

fn windows(c: &mut Criterion) {
    let w = WindowSet::standard(Side::Minus);
    c.bench_function("window_enumerate", |b| b.iter(|| w.enumerate(black_box(DEFAULT_BOX))));
}

fn closure(c: &mut Criterion) {
    c.bench_function("closure_with_k", |b| b.iter(|| standard_closure(true, DEFAULT_BOX).unwrap()));
}

fn git(c: &mut Criterion) {
    let p = PointV::from_ints([[1, 2, 0, -1, 3, 1], [0, 1, 1, 2, -1, 4]], [1, 0, 2, -1]);
    c.bench_function("semistable_plus", |b| b.iter(|| semistable(black_box(&p), Side::Plus)));
}

fn koszul(c: &mut Criterion) {
    let p = z1_plus();
    c.bench_function("koszul_z1_plus_t6", |b| b.iter(|| tor_weights(black_box(&p), 6)));
}

fn potential(c: &mut Criterion) {
    let f = Cubic6::fermat();
    let p = PointV::from_ints([[1, 2, 0, -1, 3, 1], [0, 1, 1, 2, -1, 4]], [1, 0, 2, -1]);
    c.bench_function("grad_w_fermat", |b| b.iter(|| grad_w(black_box(&f), black_box(&p))));
}

criterion_group!(benches, characters, resolutions, windows, closure, git, koszul, potential);
criterion_main!(benches);
