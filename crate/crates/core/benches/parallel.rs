use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use locdet::corpus;
use locdet::geometric::{monte_carlo_solid_angle, phi_all_with, AngleOptions};
use locdet::solver::{identity_suite_with, LinkClassTable};
use locdet::functionals::LinearFunctional;
use locdet::{Execution, Simplex};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn monte_carlo(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let e = corpus::four_simplex_boundary(&mut rng);
    let sigma = e.complex().facets()[0].clone();
    let eta = Simplex::new([sigma.vertices()[0]]).unwrap();
    let mut group = c.benchmark_group("monte_carlo_angle");
    group.sample_size(10);
    for (name, exec) in MODES {
        let opts = AngleOptions { samples: 1_000_000, seed: 0, exec };
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| monte_carlo_solid_angle(&e, &eta, &sigma, &opts).unwrap())
        });
    }
    group.finish();
}

fn identities(c: &mut Criterion) {
    let mut group = c.benchmark_group("identity_suite");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| identity_suite_with(3, exec)));
    }
    group.finish();
}

fn link_classes(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let family = corpus::mixed_corpus(&mut rng, 50);
    let mut group = c.benchmark_group("link_class_table");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| LinkClassTable::build_with(&family, exec)));
    }
    group.finish();
}

fn phi(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let sphere = corpus::irregular_sphere(&mut rng);
    let f = LinearFunctional::charney_davis(2);
    let mut group = c.benchmark_group("phi_all");
    for (name, exec) in MODES {
        let opts = AngleOptions { exec, ..AngleOptions::default() };
        group.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| phi_all_with(&sphere, &f, &opts).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, monte_carlo, identities, link_classes, phi);
criterion_main!(benches);
