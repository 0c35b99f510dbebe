//! Workloads shared by the criterion benches and their smoke test.

use std::sync::Arc;

use modulus_core::affine::Presentation;
use modulus_core::exactalg::parse_poly;
use modulus_core::modpair::{blowup_in_divisor, AmbientMorphism, ModulusPair, SigmaLeg};
use modulus_core::msch::Roof;
use modulus_core::{Ideal, Poly, Ring};

pub fn poly(r: &Ring, s: &str) -> Poly {
    parse_poly(r, s).unwrap_or_else(|e| panic!("`{s}`: {e}"))
}

pub fn pair(vars: &[&str], gens: &[&str], d: &str) -> Arc<ModulusPair> {
    let r = Ring::new(vars.iter().copied());
    let i = Ideal::new(&r, gens.iter().map(|g| poly(&r, g)).collect());
    Arc::new(ModulusPair::single(Presentation::new(i), poly(&r, d)).unwrap())
}

pub fn map(src: &Arc<ModulusPair>, tgt: &Arc<ModulusPair>, images: &[&str]) -> AmbientMorphism {
    let r = src.chart(0).pres.ring();
    let images = images.iter().map(|s| poly(r, s)).collect();
    AmbientMorphism::check_admissible(src.clone(), tgt.clone(), vec![(0, images)]).unwrap()
}

/// The cyclic 4-roots system, a standard Groebner-basis workload.
pub fn cyclic4() -> Ideal {
    let r = Ring::new(["a", "b", "c", "d"]);
    let gens = ["a + b + c + d", "a*b + b*c + c*d + d*a", "a*b*c + b*c*d + c*d*a + d*a*b", "a*b*c*d - 1"];
    Ideal::new(&r, gens.iter().map(|g| poly(&r, g)).collect())
}

/// `X = (Q[s, x], s*x^2)` and `T = (Q[s, t], s^2*t)` over `S = (Q[s], s)`.
pub fn product_square() -> (AmbientMorphism, AmbientMorphism) {
    let s = pair(&["s"], &[], "s");
    let x = pair(&["s", "x"], &[], "s*x^2");
    let t = pair(&["s", "t"], &[], "s^2*t");
    (map(&x, &s, &["s"]), map(&t, &s, &["s"]))
}

/// A commuting square `A -> X`, `A -> T` over [`product_square`].
pub fn fill_square() -> (AmbientMorphism, AmbientMorphism) {
    let (f, g) = product_square();
    let a = pair(&["s", "a"], &[], "s^3*a^2*(a + s)");
    (map(&a, f.source(), &["s", "a"]), map(&a, g.source(), &["s", "a + s"]))
}

/// Two composable roofs on planes, each with a blow-up at the origin, and the
/// plain morphisms they stand for.
pub fn roof_pair() -> ((Roof, Roof), (AmbientMorphism, AmbientMorphism)) {
    let p1 = pair(&["x", "y"], &[], "x^2*y");
    let p2 = pair(&["x", "y"], &[], "x*y");
    let p3 = pair(&["x", "y"], &[], "x");
    let roof = |src: &Arc<ModulusPair>, m: AmbientMorphism| {
        let r = src.chart(0).pres.ring();
        let sigma: SigmaLeg = blowup_in_divisor(src, vec![Some(vec![poly(r, "x"), poly(r, "y")])]).unwrap();
        let ambient = sigma.morphism().then(&m).unwrap();
        Roof::new(sigma, ambient).unwrap()
    };
    let (m1, m2) = (map(&p1, &p2, &["x", "x*y"]), map(&p2, &p3, &["x*y", "y"]));
    ((roof(&p1, m1.clone()), roof(&p2, m2.clone())), (m1, m2))
}
