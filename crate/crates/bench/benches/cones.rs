use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use strata_cones::verify::{analyze_stratum, explore};
use strata_cones::weights::{cone_d, minimal_cone, Family};
use strata_cones::{Cone, MinimalVariant, QVector};
use strata_cones_bench::all_strata;

fn random_cone(rng: &mut ChaCha8Rng, dim: usize, rays: usize) -> Cone {
    let rays = (0..rays)
        .map(|_| {
            let xs: Vec<i64> = (0..dim).map(|_| rng.gen_range(-5..=5)).collect();
            QVector::from_ints(&xs)
        })
        .collect();
    Cone::from_generators(dim, rays, Vec::new()).unwrap()
}

fn conversion(c: &mut Criterion) {
    let mut group = c.benchmark_group("double_description");
    for dim in [3usize, 4, 5] {
        let mut rng = ChaCha8Rng::seed_from_u64(dim as u64);
        let cones: Vec<Cone> = (0..16).map(|_| random_cone(&mut rng, dim, 2 * dim)).collect();
        group.bench_with_input(BenchmarkId::from_parameter(dim), &cones, |b, cones| {
            b.iter(|| {
                for cone in cones {
                    black_box(cone.complete());
                }
            })
        });
    }
    group.finish();
}

fn membership(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let cone = random_cone(&mut rng, 5, 10).complete();
    let queries: Vec<QVector> = (0..32)
        .map(|_| {
            let xs: Vec<i64> = (0..5).map(|_| rng.gen_range(-9..=9)).collect();
            QVector::from_ints(&xs)
        })
        .collect();
    c.bench_function("membership_dim5", |b| {
        b.iter(|| {
            for q in &queries {
                black_box(cone.member(q).unwrap());
            }
        })
    });
}

fn strata(c: &mut Criterion) {
    let strata = all_strata(3, &[4]);
    c.bench_function("cone_d_p3_f4", |b| {
        b.iter(|| {
            for t in &strata {
                black_box(cone_d(t, Family::GPrime).complete());
            }
        })
    });
    c.bench_function("minimal_cone_p3_f4", |b| {
        b.iter(|| {
            for t in &strata {
                black_box(minimal_cone(t, MinimalVariant::Min).unwrap());
            }
        })
    });
    let mixed = all_strata(2, &[2, 2]);
    c.bench_function("analyze_p2_2x2", |b| {
        b.iter(|| {
            for t in &mixed {
                black_box(analyze_stratum(t));
            }
        })
    });
}

fn sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("explore");
    group.sample_size(10);
    group.bench_function("p2_3_d3", |b| b.iter(|| black_box(explore(&[2, 3], 3, None).unwrap())));
    group.finish();
}

criterion_group!(benches, conversion, membership, strata, sweep);
criterion_main!(benches);
