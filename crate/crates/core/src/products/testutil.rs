use std::sync::Arc;

use crate::affine::Presentation;
use crate::exactalg::{parse_poly, Ideal, Poly, Ring};
use crate::modpair::{AmbientMorphism, ModulusPair};

pub fn pair(vars: &[&str], gens: &[&str], d: &str) -> Arc<ModulusPair> {
    let r = Ring::new(vars.iter().copied());
    let i = Ideal::new(&r, gens.iter().map(|g| parse_poly(&r, g).unwrap()).collect());
    Arc::new(ModulusPair::single(Presentation::new(i), parse_poly(&r, d).unwrap()).unwrap())
}

pub fn to(src: &Arc<ModulusPair>, tgt: &Arc<ModulusPair>, images: &[&str]) -> AmbientMorphism {
    let r = src.chart(0).pres.ring();
    let imgs = images.iter().map(|s| parse_poly(r, s).unwrap()).collect();
    AmbientMorphism::check_admissible(src.clone(), tgt.clone(), vec![(0, imgs)]).unwrap()
}

pub fn poly(p: &Presentation, s: &str) -> Poly {
    parse_poly(p.ring(), s).unwrap()
}
