use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use kobstruct::catalog::{builtin, catalog, Atom};
use kobstruct::kinv::KInvariant;
use kobstruct::obstruct::{section_exists_k, Mode};
use kobstruct::sweep::{self, classify_catalog, Strategy};

const STRATEGIES: [(&str, Strategy); 2] = [
    ("sequential", Strategy::Sequential),
    ("parallel", Strategy::Parallel),
];

fn catalog_classify(c: &mut Criterion) {
    let mut g = c.benchmark_group("classify_catalog");
    for (name, s) in STRATEGIES {
        g.bench_function(name, |b| {
            b.iter(|| black_box(classify_catalog(black_box(s))))
        });
    }
    g.finish();
}

fn section_sweep(c: &mut Criterion) {
    let mut invariants: Vec<KInvariant> = catalog().iter().map(|e| e.invariant()).collect();
    invariants.extend((2..=16).map(|n| builtin(Atom::Cuntz(n)).unwrap()));
    invariants.extend((2..=8).map(|n| builtin(Atom::Matrix(n)).unwrap()));
    let pairs = sweep::pairs(&invariants);
    let mut g = c.benchmark_group("section_sweep");
    g.sample_size(20);
    for mode in [Mode::Unital, Mode::Full] {
        for (name, s) in STRATEGIES {
            g.bench_with_input(
                BenchmarkId::new(name, format!("{mode:?}")),
                &pairs,
                |b, ps| b.iter(|| sweep::map(s, ps, |(x, y)| section_exists_k(x, y, mode).both())),
            );
        }
    }
    g.finish();
}

criterion_group!(benches, catalog_classify, section_sweep);
criterion_main!(benches);
