use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

use pdhyper::ideal::canonical_ideal;
use pdhyper::oracle::{build_taylor, minimize};
use pdhyper::pd::{all_cycle_flags, all_string_flags, cycle_algorithm_flags, formula_flags, string_algorithm_flags};
use pdhyper::ShapeKind;

const STRING: &str = "cocooocccoooooccoocooococ";
const CYCLE: &str = "cocoooocccocoocoooccococo";

fn flags(pattern: &str) -> Vec<bool> {
    pattern.chars().map(|c| c == 'c').collect()
}

fn bench_formula(c: &mut Criterion) {
    let s = flags(STRING);
    let y = flags(CYCLE);
    c.bench_function("formula/string-25", |b| {
        b.iter(|| formula_flags(ShapeKind::String, std::hint::black_box(&s)).value)
    });
    c.bench_function("formula/cycle-25", |b| {
        b.iter(|| formula_flags(ShapeKind::Cycle, std::hint::black_box(&y)).value)
    });
}

fn bench_algorithm(c: &mut Criterion) {
    let s = flags(STRING);
    let y = flags(CYCLE);
    c.bench_function("algorithm/string-25", |b| {
        b.iter(|| string_algorithm_flags(std::hint::black_box(&s)).value)
    });
    c.bench_function("algorithm/cycle-25", |b| {
        b.iter(|| cycle_algorithm_flags(std::hint::black_box(&y)).value)
    });
}

fn bench_exhaustive_sweep(c: &mut Criterion) {
    c.bench_function("sweep/strings-mu-10", |b| {
        b.iter_batched(
            || all_string_flags(10),
            |all| {
                all.iter()
                    .map(|f| formula_flags(ShapeKind::String, f).value)
                    .sum::<usize>()
            },
            BatchSize::SmallInput,
        )
    });
    c.bench_function("sweep/cycles-mu-10", |b| {
        b.iter_batched(
            || all_cycle_flags(10),
            |all| {
                all.iter()
                    .map(|f| formula_flags(ShapeKind::Cycle, f).value)
                    .sum::<usize>()
            },
            BatchSize::SmallInput,
        )
    });
}

fn bench_oracle(c: &mut Criterion) {
    let h = pdhyper::Hypergraph::parse_pattern("cocococ").unwrap();
    let ideal = canonical_ideal(&h).unwrap();
    c.bench_function("oracle/minimize-string-7", |b| {
        b.iter_batched(
            || build_taylor(&ideal).unwrap(),
            |complex| minimize(complex).pd(),
            BatchSize::SmallInput,
        )
    });
}

criterion_group!(benches, bench_formula, bench_algorithm, bench_exhaustive_sweep, bench_oracle);
criterion_main!(benches);
