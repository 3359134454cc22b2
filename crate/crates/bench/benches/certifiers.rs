//! Benchmarks for the exhaustive certifiers on the built-in five-point map.

use criterion::{criterion_group, criterion_main, Criterion};

use frtlab_core::dybm::builtin_q5_map;
use frtlab_core::frt::{basic_rep, certify_kills_ideal, Channel};
use frtlab_core::lop::{boxtimes, check_rll, sigma_loperator, SigmaContext};
use frtlab_core::wgroup::generate_group;

fn bench_certifiers(c: &mut Criterion) {
    let map = builtin_q5_map();
    let ctx = SigmaContext::from_map(&map).unwrap();
    let sigma = sigma_loperator(&ctx);

    c.bench_function("braid relation (625 cases)", |b| {
        b.iter(|| assert!(map.check_qdybe().pass))
    });

    c.bench_function("group closure (order 120)", |b| {
        b.iter(|| assert_eq!(generate_group(&map.action, 100_000).unwrap().order(), 120))
    });

    c.bench_function("operator braid relation", |b| {
        b.iter(|| assert!(ctx.check_yb_operator().pass))
    });

    c.bench_function("exchange relation (basic operator)", |b| {
        b.iter(|| assert!(check_rll(&ctx, &sigma).pass))
    });

    c.bench_function("operator product", |b| b.iter(|| boxtimes(&ctx, &sigma, &sigma)));

    let mut group = c.benchmark_group("ideal");
    group.sample_size(10);
    group.bench_function("counit channel kills relations", |b| {
        b.iter(|| assert!(certify_kills_ideal(&ctx, "counit", &Channel::Counit).pass))
    });
    group.bench_function("basic channel kills relations", |b| {
        let channel = Channel::Rep(basic_rep(&ctx));
        b.iter(|| assert!(certify_kills_ideal(&ctx, "basic", &channel).pass))
    });
    group.finish();
}

criterion_group!(benches, bench_certifiers);
criterion_main!(benches);
