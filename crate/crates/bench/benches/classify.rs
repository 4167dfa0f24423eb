use arrlog::corpus::{fixtures, random_corpus};
use arrlog::criteria::{property_p, verify};
use arrlog::derivation::classify;
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

fn fixture_classification(c: &mut Criterion) {
    let mut group = c.benchmark_group("classify");
    for f in fixtures() {
        group.bench_with_input(BenchmarkId::from_parameter(f.name), &f.arrangement, |b, a| {
            b.iter(|| classify(black_box(a)).unwrap())
        });
    }
    group.finish();
}

fn random_classification(c: &mut Criterion) {
    let mut group = c.benchmark_group("classify_random");
    group.sample_size(10);
    for n in [6, 8] {
        let batch: Vec<_> = random_corpus(20, n, 1).unwrap().into_iter().filter(|a| a.len() == n).take(3).collect();
        group.bench_with_input(BenchmarkId::from_parameter(n), &batch, |b, batch| {
            b.iter(|| batch.iter().map(|a| classify(a).unwrap()).collect::<Vec<_>>())
        });
    }
    group.finish();
}

fn witnesses(c: &mut Criterion) {
    let a = arrlog::corpus::fixture("necsufcond2").unwrap().arrangement;
    c.bench_function("property_p/necsufcond2", |b| b.iter(|| property_p(black_box(&a), 2).unwrap()));
    c.bench_function("verify/necsufcond2", |b| b.iter(|| verify(black_box(&a)).unwrap()));
}

criterion_group!(benches, fixture_classification, random_classification, witnesses);
criterion_main!(benches);
