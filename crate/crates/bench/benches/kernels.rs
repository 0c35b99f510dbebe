use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use modulus_bench::{cyclic4, fill_square, poly, product_square, roof_pair};
use modulus_core::affine::Presentation;
use modulus_core::exactalg::macaulay::macaulay_member;
use modulus_core::msch::compose_roofs;
use modulus_core::products::{ambient_product, build_aisoc, fibre_fill_in, FillStrategy};
use modulus_core::{Ideal, Ring};

fn groebner(c: &mut Criterion) {
    let i = cyclic4();
    c.bench_function("groebner cyclic4", |b| b.iter(|| Ideal::new(i.ring(), i.gens().to_vec()).groebner_basis()));
    let r = i.ring().clone();
    let f = poly(&r, "(a + b + c + d)*a*b - (a*b*c*d - 1)*c");
    c.bench_function("macaulay member cyclic4", |b| b.iter(|| macaulay_member(black_box(&f), i.gens(), 6)));
}

fn products(c: &mut Criterion) {
    let r = Ring::new(["x", "y"]);
    let cusp = Presentation::new(Ideal::new(&r, vec![poly(&r, "y^2 - x^3")]));
    let d = poly(&r, "x^2");
    c.bench_function("aisoc cusp", |b| b.iter(|| build_aisoc(&cusp, black_box(&d)).unwrap()));

    let (f, g) = product_square();
    c.bench_function("ambient product", |b| b.iter(|| ambient_product(&f, &g).unwrap()));
    let prod = ambient_product(&f, &g).unwrap();
    let (ax, at) = fill_square();
    c.bench_function("fibre fill-in", |b| b.iter(|| fibre_fill_in(&prod, &ax, &at, FillStrategy::Auto).unwrap()));
}

fn roofs(c: &mut Criterion) {
    let ((r1, r2), _) = roof_pair();
    c.bench_function("compose roofs", |b| b.iter(|| compose_roofs(&r1, &r2).unwrap()));
}

criterion_group! {
    name = kernels;
    config = Criterion::default().sample_size(10);
    targets = groebner, products, roofs
}
criterion_main!(kernels);
