use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use num::complex::Complex64;

use qhecke::certify::{certify, oracle_check, Relation};
use qhecke::hecke::HeckeElement;
use qhecke::projector::build_tower_t;
use qhecke::qarith::{qint, RatFunc};
use qhecke::tl::jones_wenzl;

fn bench_qarith(c: &mut Criterion) {
    c.bench_function("ratfunc_rho_chain", |b| {
        b.iter(|| {
            // rho_1 * rho_2 * ... * rho_9, canonicalized at each step.
            let mut acc = RatFunc::one();
            for k in 1..=9i64 {
                let rho = RatFunc::new(qint(k), qint(k + 1)).unwrap();
                acc = &acc * &rho;
            }
            acc
        })
    });
}

fn bench_hecke_mul(c: &mut Criterion) {
    let tower = build_tower_t(5, 5).unwrap();
    let p5 = tower.level(5).clone();
    c.bench_function("hecke_mul_p5_squared_rank5", |b| {
        b.iter(|| p5.mul(&p5).unwrap())
    });
    let t2 = HeckeElement::generator_t(5, 2).unwrap();
    c.bench_function("hecke_mul_p5_generator", |b| b.iter(|| p5.mul(&t2).unwrap()));
}

fn bench_tower_build(c: &mut Criterion) {
    c.bench_function("tower_build_rank5", |b| {
        b.iter(|| build_tower_t(5, 5).unwrap())
    });
    c.bench_function("jones_wenzl_rank7", |b| {
        b.iter(|| jones_wenzl(7, 7).unwrap())
    });
}

fn bench_certify(c: &mut Criterion) {
    c.bench_function("certify_ppp1_n3", |b| {
        b.iter_batched(
            || (),
            |_| certify(Relation::Ppp1, 3).unwrap(),
            BatchSize::PerIteration,
        )
    });
    c.bench_function("oracle_ppp1_n3", |b| {
        b.iter(|| oracle_check(Relation::Ppp1, 3, 42, 5).unwrap())
    });
}

fn bench_numeric(c: &mut Criterion) {
    let q = Complex64::new(2.0, 0.0);
    let t = qhecke::rep::standard_r_seed(3, q);
    c.bench_function("projector_tower_numeric_n3_strands4", |b| {
        b.iter(|| qhecke::rep::projector_tower_numeric(&t, 3, 4, q, 4, 0).unwrap())
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = bench_qarith, bench_hecke_mul, bench_tower_build, bench_certify, bench_numeric
}
criterion_main!(benches);
