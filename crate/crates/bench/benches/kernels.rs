use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use gradhom::dcat::from_module;
use gradhom::invariants::{bass_table, Object};
use gradhom::modops::{canonical_module, ModulePresentation};
use gradhom::oracle::{oracle_minimal_resolution, realize, FiniteModule};
use gradhom_bench::{ring, FIXTURES};

fn resolution_of_k(c: &mut Criterion) {
    let mut g = c.benchmark_group("resolve_k");
    for f in FIXTURES {
        let r = ring(f);
        let k = ModulePresentation::residue_field(r.clone());
        g.bench_with_input(BenchmarkId::new(f.name, 6), &k, |b, k| b.iter(|| from_module(black_box(k), 6)));
    }
    g.finish();
}

fn bass_of_ring(c: &mut Criterion) {
    let mut g = c.benchmark_group("bass_R");
    g.sample_size(10);
    for f in FIXTURES {
        let x = Object::Module(ModulePresentation::ring_module(ring(f)));
        g.bench_with_input(BenchmarkId::new(f.name, 5), &x, |b, x| b.iter(|| bass_table(black_box(x), 5)));
    }
    g.finish();
}

fn canonical(c: &mut Criterion) {
    let mut g = c.benchmark_group("canonical_module");
    for f in FIXTURES {
        let r = ring(f);
        g.bench_function(f.name, |b| b.iter(|| canonical_module(black_box(&r)).unwrap()));
    }
    g.finish();
}

fn oracle_resolution(c: &mut Criterion) {
    let mut g = c.benchmark_group("oracle_resolve_k");
    for f in FIXTURES.iter().filter(|f| f.artinian) {
        let alg = realize(&ring(f)).unwrap();
        let k = FiniteModule::residue_field(&alg);
        g.bench_with_input(BenchmarkId::new(f.name, 6), &k, |b, k| b.iter(|| oracle_minimal_resolution(black_box(k), 6)));
    }
    g.finish();
}

criterion_group!(benches, resolution_of_k, bass_of_ring, canonical, oracle_resolution);
criterion_main!(benches);
