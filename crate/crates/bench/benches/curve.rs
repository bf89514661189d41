use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use sheafcalc_core::dlp::{classify, delta, sample_curve};
use sheafcalc_core::exceptional::ExceptionalTable;
use sheafcalc_core::extremal::{extremal_triple, Variant};
use sheafcalc_core::kernel::CharP2;
use sheafcalc_core::rational::{int, rat};

fn curve(c: &mut Criterion) {
    let mut group = c.benchmark_group("delta");
    for (name, mu) in [("1/3", rat(1, 3)), ("2/5", rat(2, 5)), ("191/500", rat(191, 500))] {
        for depth in [6, 10] {
            group.bench_with_input(BenchmarkId::new(name, depth), &depth, |b, &d| {
                b.iter(|| delta(black_box(&mu), d))
            });
        }
    }
    group.finish();
    c.bench_function("sample_curve_0_1_step_1_100", |b| {
        b.iter(|| sample_curve(&int(0), &int(1), &rat(1, 100), 10).unwrap())
    });
}

fn table(c: &mut Criterion) {
    let mut group = c.benchmark_group("table_build");
    group.sample_size(10);
    for q in [6, 10] {
        group.bench_with_input(BenchmarkId::from_parameter(q), &q, |b, &q| {
            b.iter(|| ExceptionalTable::build(q).unwrap())
        });
    }
    group.finish();
}

fn characters(c: &mut Criterion) {
    let v = CharP2::new(3, 2, int(-11));
    c.bench_function("classify_v10", |b| b.iter(|| classify(black_box(&v), 10).unwrap()));
    for variant in [Variant::Paper, Variant::Ch] {
        c.bench_function(&format!("extremal_{variant}_v10"), |b| {
            b.iter(|| extremal_triple(black_box(&v), variant, 10).unwrap())
        });
    }
}

criterion_group!(benches, curve, table, characters);
criterion_main!(benches);
