use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use subshift_core::robinson::{Quadrant, SupertileGenerator};
use subshift_core::space::forbid_run;
use subshift_core::times23::verify_diagonal_determinism;
use subshift_core::{window_language, ShiftSpec, SupertileId, Window};

fn languages(c: &mut Criterion) {
    let run3 = forbid_run(3);
    c.bench_function("window_language forbid 111 radius 6", |b| {
        b.iter(|| window_language(black_box(&run3), &Window::centered(1, 6), 2).unwrap().len())
    });
    let full = ShiftSpec::full(2, vec![0, 1]).unwrap();
    c.bench_function("window_language full 2D 3x3", |b| {
        b.iter(|| window_language(black_box(&full), &Window::corner(2, 3), 1).unwrap().len())
    });
}

fn supertiles(c: &mut Criterion) {
    for order in [3, 5] {
        c.bench_function(&format!("supertile order {order}"), |b| {
            b.iter(|| {
                SupertileGenerator::new(order)
                    .get(SupertileId { quadrant: Quadrant::Sw, order })
                    .unwrap()
            })
        });
    }
}

fn determinism(c: &mut Criterion) {
    c.bench_function("diagonal determinism m=3", |b| b.iter(|| verify_diagonal_determinism(black_box(3)).unwrap()));
}

criterion_group!(benches, languages, supertiles, determinism);
criterion_main!(benches);
