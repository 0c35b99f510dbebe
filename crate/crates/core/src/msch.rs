//! Roofs `X <- X' -> Y` with a certified blow-up as the left leg, their
//! composition through Ore squares, and equality through interiors.

use std::sync::Arc;

use thiserror::Error;

use crate::affine::{AffineError, RingMap};
use crate::exactalg::{Ideal, Poly};
use crate::modpair::{
    blowup_in_divisor, center_is_principal, decompose_interior, AmbientMorphism, ChartMap, ModPairError, ModulusPair,
    SigmaKind, SigmaLeg,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MschError {
    #[error("roof legs start from different pairs")]
    ApexMismatch,
    #[error("roofs do not compose: {0}")]
    NotComposable(String),
    #[error("completed square does not commute on the interior")]
    SquareDoesNotCommute,
    #[error(transparent)]
    Pair(#[from] ModPairError),
    #[error(transparent)]
    Affine(#[from] AffineError),
}

fn same(a: &Arc<ModulusPair>, b: &Arc<ModulusPair>) -> bool {
    Arc::ptr_eq(a, b) || a.same_as(b)
}

/// A morphism `X => Y`: `sigma: X' -> X` certified, `ambient: X' -> Y`.
#[derive(Clone, Debug)]
pub struct Roof {
    pub sigma: SigmaLeg,
    pub ambient: AmbientMorphism,
}

impl Roof {
    pub fn new(sigma: SigmaLeg, ambient: AmbientMorphism) -> Result<Roof, MschError> {
        if !same(sigma.source(), ambient.source()) {
            return Err(MschError::ApexMismatch);
        }
        Ok(Roof { sigma, ambient })
    }

    pub fn from_morphism(f: AmbientMorphism) -> Roof {
        Roof { sigma: SigmaLeg::identity(f.source()), ambient: f }
    }

    pub fn identity(pair: &Arc<ModulusPair>) -> Roof {
        Roof::from_morphism(AmbientMorphism::identity(pair))
    }

    /// The inverse `X => X'` of a certified `s: X' -> X`.
    pub fn inverse_of(s: &SigmaLeg) -> Roof {
        Roof { sigma: s.clone(), ambient: AmbientMorphism::identity(s.source()) }
    }

    pub fn apex(&self) -> &Arc<ModulusPair> {
        self.sigma.source()
    }

    pub fn source(&self) -> &Arc<ModulusPair> {
        self.sigma.target()
    }

    pub fn target(&self) -> &Arc<ModulusPair> {
        self.ambient.target()
    }
}

/// `t: Y' -> Y` certified and `f': Y' -> X'` with `s ∘ f' = f ∘ t` on the
/// interior.
#[derive(Clone, Debug)]
pub struct OreSquare {
    pub t: SigmaLeg,
    pub f_prime: AmbientMorphism,
}

/// Position of the ratio `a_j / a_i` among the variables of blow-up chart `i`.
fn ratio_slot(nbase: usize, i: usize, j: usize) -> usize {
    nbase + if j < i { j } else { j - 1 }
}

/// Source charts of `s` lying over each target chart, in order.
fn charts_over(s: &SigmaLeg) -> Vec<Vec<usize>> {
    let mut over = vec![Vec::new(); s.target().charts().len()];
    for (k, cm) in s.morphism().charts().iter().enumerate() {
        over[cm.target_chart].push(k);
    }
    over
}

fn complete_identity(s: &SigmaLeg, f: &AmbientMorphism) -> Result<OreSquare, MschError> {
    let xp = s.source();
    let charts = f
        .charts()
        .iter()
        .map(|cm| {
            let map = RingMap::new(xp.chart(cm.target_chart).pres.clone(), cm.map.target().clone(), cm.map.images().to_vec())?;
            Ok(ChartMap { target_chart: cm.target_chart, map })
        })
        .collect::<Result<Vec<_>, MschError>>()?;
    let f_prime = AmbientMorphism::from_chart_maps(f.source().clone(), xp.clone(), charts)?;
    Ok(OreSquare { t: SigmaLeg::identity(f.source()), f_prime })
}

enum BlowPlan {
    Kept { target: usize },
    Shortcut { target: usize, images: Vec<Poly> },
    BlowUp { c: usize },
}

fn complete_blowup(s: &SigmaLeg, centers: &[Option<Vec<Poly>>], f: &AmbientMorphism) -> Result<OreSquare, MschError> {
    let x = s.target();
    let xp = s.source();
    let y = f.source();
    let over = charts_over(s);
    let mut plans = Vec::with_capacity(y.charts().len());
    let mut y_centers = Vec::with_capacity(y.charts().len());
    for (k, cm) in f.charts().iter().enumerate() {
        let c = cm.target_chart;
        let yc = y.chart(k);
        let Some(center) = &centers[c] else {
            plans.push(BlowPlan::Kept { target: over[c][0] });
            y_centers.push(None);
            continue;
        };
        let pulled: Vec<Poly> = center.iter().map(|g| yc.pres.reduce(&cm.map.apply(g))).collect();
        match center_is_principal(&yc.pres, &pulled) {
            Some(i) => {
                let nb = x.chart(c).pres.ring().nvars();
                let mut images = cm.map.images().to_vec();
                images.resize(nb + pulled.len() - 1, Poly::zero(yc.pres.ring()));
                for (j, pj) in pulled.iter().enumerate().filter(|(j, _)| *j != i) {
                    let q = yc.pres.ideal().cofactor(pj, &pulled[i]).expect("principal center divides");
                    images[ratio_slot(nb, i, j)] = yc.pres.reduce(&q);
                }
                plans.push(BlowPlan::Shortcut { target: over[c][i], images });
                y_centers.push(None);
            }
            None => {
                plans.push(BlowPlan::BlowUp { c });
                y_centers.push(Some(pulled));
            }
        }
    }
    let t = if y_centers.iter().all(Option::is_none) {
        SigmaLeg::identity(y)
    } else {
        blowup_in_divisor(y, y_centers)?
    };
    let yp = t.source();
    let mut seen = vec![0usize; y.charts().len()];
    let mut charts = Vec::with_capacity(yp.charts().len());
    for k2 in 0..yp.charts().len() {
        let tm = t.morphism().chart_map(k2);
        let k = tm.target_chart;
        let down = &tm.map;
        let phi = &f.chart_map(k).map;
        let (target, images) = match &plans[k] {
            BlowPlan::Kept { target } => (*target, phi.images().iter().map(|p| down.apply(p)).collect()),
            BlowPlan::Shortcut { target, images } => (*target, images.iter().map(|p| down.apply(p)).collect()),
            BlowPlan::BlowUp { c } => {
                let i = seen[k];
                seen[k] += 1;
                let nb = x.chart(*c).pres.ring().nvars();
                let ny = y.chart(k).pres.ring().nvars();
                let m = centers[*c].as_ref().map_or(0, Vec::len);
                let mut images: Vec<Poly> = phi.images().iter().map(|p| down.apply(p)).collect();
                let here = yp.chart(k2);
                images.resize(nb + m - 1, Poly::zero(here.pres.ring()));
                for j in (0..m).filter(|&j| j != i) {
                    images[ratio_slot(nb, i, j)] = here.pres.var(ratio_slot(ny, i, j));
                }
                (over[*c][i], images)
            }
        };
        let map = RingMap::new(xp.chart(target).pres.clone(), yp.chart(k2).pres.clone(), images)?;
        charts.push(ChartMap { target_chart: target, map });
    }
    let f_prime = AmbientMorphism::from_chart_maps(yp.clone(), xp.clone(), charts)?;
    Ok(OreSquare { t, f_prime })
}

fn complete_components(s: &SigmaLeg, components: &[Vec<Ideal>], f: &AmbientMorphism) -> Result<OreSquare, MschError> {
    let x = s.target();
    let xp = s.source();
    let y = f.source();
    let over = charts_over(s);
    let pulled: Vec<Vec<Ideal>> = f
        .charts()
        .iter()
        .enumerate()
        .map(|(k, cm)| {
            let yr = y.chart(k).pres.ring();
            components[cm.target_chart]
                .iter()
                .map(|j| Ideal::new(yr, j.gens().iter().map(|g| cm.map.apply(g)).collect()))
                .collect()
        })
        .collect();
    let dec = decompose_interior(y, pulled.clone())?;
    let t = dec.leg;
    let yp = t.source().clone();
    let mut charts = Vec::with_capacity(yp.charts().len());
    let mut k2 = 0;
    for (k, cm) in f.charts().iter().enumerate() {
        let c = cm.target_chart;
        let xr = x.chart(c).pres.ring();
        for a in 0..pulled[k].len() {
            let down = &t.morphism().chart_map(k2).map;
            let target = over[c][a];
            let tp = &xp.chart(target).pres;
            let images = tp
                .ring()
                .vars()
                .iter()
                .map(|n| down.apply(&cm.map.images()[xr.index_of(n).expect("component charts keep target names")]))
                .collect();
            let map = RingMap::new(tp.clone(), yp.chart(k2).pres.clone(), images)?;
            charts.push(ChartMap { target_chart: target, map });
            k2 += 1;
        }
    }
    let f_prime = AmbientMorphism::from_chart_maps(yp, xp.clone(), charts)?;
    Ok(OreSquare { t, f_prime })
}

/// Completes `Y -f-> X <-s- X'` to a commuting square with a certified
/// `t: Y' -> Y`.
pub fn ore_complete(s: &SigmaLeg, f: &AmbientMorphism) -> Result<OreSquare, MschError> {
    if !same(f.target(), s.target()) {
        return Err(MschError::NotComposable("the morphism does not land in the blow-up's target".into()));
    }
    let sq = match s.kind() {
        SigmaKind::Identity => complete_identity(s, f)?,
        SigmaKind::BlowupInDivisor { centers } => complete_blowup(s, centers, f)?,
        SigmaKind::ComponentClosure { components } => complete_components(s, components, f)?,
        SigmaKind::Composite(legs) => {
            let mut g = f.clone();
            let mut ts = Vec::with_capacity(legs.len());
            for leg in legs.iter().rev() {
                let sq = ore_complete(leg, &g)?;
                ts.push(sq.t);
                g = sq.f_prime;
            }
            ts.reverse();
            OreSquare { t: SigmaLeg::composite(ts)?, f_prime: g }
        }
    };
    let left = sq.f_prime.then(s.morphism())?;
    let right = sq.t.morphism().then(f)?;
    if !left.equal_on_interior(&right) {
        return Err(MschError::SquareDoesNotCommute);
    }
    Ok(sq)
}

/// `r2 ∘ r1`.
pub fn compose_roofs(r1: &Roof, r2: &Roof) -> Result<Roof, MschError> {
    if !same(r1.target(), r2.source()) {
        return Err(MschError::NotComposable("target of the first roof is not the source of the second".into()));
    }
    let sq = ore_complete(&r2.sigma, &r1.ambient)?;
    let sigma = SigmaLeg::composite(vec![sq.t, r1.sigma.clone()])?;
    let ambient = sq.f_prime.then(&r2.ambient)?;
    Roof::new(sigma, ambient)
}

/// Whether two roofs with the same endpoints induce the same map of
/// interiors.
pub fn roofs_equal(r1: &Roof, r2: &Roof) -> bool {
    if !same(r1.source(), r2.source()) || !same(r1.target(), r2.target()) {
        return false;
    }
    let Ok(sq) = ore_complete(&r2.sigma, r1.sigma.morphism()) else {
        return false;
    };
    match (sq.t.morphism().then(&r1.ambient), sq.f_prime.then(&r2.ambient)) {
        (Ok(a), Ok(b)) => a.equal_on_interior(&b),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::Presentation;
    use crate::exactalg::{parse_poly, Ring};

    fn pair(vars: &[&str], gens: &[&str], d: &str) -> Arc<ModulusPair> {
        let r = Ring::new(vars.iter().copied());
        let i = Ideal::new(&r, gens.iter().map(|g| parse_poly(&r, g).unwrap()).collect());
        Arc::new(ModulusPair::single(Presentation::new(i), parse_poly(&r, d).unwrap()).unwrap())
    }

    fn to(src: &Arc<ModulusPair>, tgt: &Arc<ModulusPair>, images: &[&str]) -> AmbientMorphism {
        let r = src.chart(0).pres.ring();
        let imgs = images.iter().map(|s| parse_poly(r, s).unwrap()).collect();
        AmbientMorphism::check_admissible(src.clone(), tgt.clone(), vec![(0, imgs)]).unwrap()
    }

    fn plane_blowup() -> (Arc<ModulusPair>, SigmaLeg) {
        let x = pair(&["x", "t"], &[], "x*t");
        let r = x.chart(0).pres.ring().clone();
        let center = vec![Poly::var(&r, 0), Poly::var(&r, 1)];
        let s = blowup_in_divisor(&x, vec![Some(center)]).unwrap();
        (x, s)
    }

    #[test]
    fn identity_leg_completes_trivially() {
        let x = pair(&["x"], &[], "x");
        let y = pair(&["a"], &[], "a^2");
        let f = to(&y, &x, &["a"]);
        let sq = ore_complete(&SigmaLeg::identity(&x), &f).unwrap();
        assert!(matches!(sq.t.kind(), SigmaKind::Identity));
        assert!(sq.f_prime.equal_on_interior(&f));
    }

    #[test]
    fn diagonal_line_into_blown_up_plane() {
        let (x, s) = plane_blowup();
        let y = pair(&["a"], &[], "a^2");
        let f = to(&y, &x, &["a", "a"]);
        let sq = ore_complete(&s, &f).unwrap();
        assert_eq!(sq.t.source().charts().len(), 1);
        let img = sq.f_prime.chart_map(0).map.images().last().unwrap();
        assert!(img.is_one());
    }

    #[test]
    fn plane_into_blown_up_plane() {
        let (x, s) = plane_blowup();
        let y = pair(&["a", "b"], &[], "a^2*b");
        let f = to(&y, &x, &["a", "a*b"]);
        let sq = ore_complete(&s, &f).unwrap();
        assert_eq!(sq.t.source().charts().len(), 1);

        let y2 = pair(&["a", "b"], &[], "a*b");
        let f2 = to(&y2, &x, &["a", "b"]);
        let sq2 = ore_complete(&s, &f2).unwrap();
        assert_eq!(sq2.t.source().charts().len(), 2);
        assert!(matches!(sq2.t.kind(), SigmaKind::BlowupInDivisor { .. }));
    }

    #[test]
    fn morphism_through_the_interior() {
        let (x, s) = plane_blowup();
        let y = pair(&["a"], &[], "1");
        let f = to(&y, &x, &["1", "1"]);
        let sq = ore_complete(&s, &f).unwrap();
        assert!(sq.t.source().same_as(&y));
    }

    #[test]
    fn components_pull_back() {
        let x = pair(&["x", "y"], &["x*y"], "x + y");
        let r = x.chart(0).pres.ring().clone();
        let comps = vec![vec![
            Ideal::new(&r, vec![Poly::var(&r, 0)]),
            Ideal::new(&r, vec![Poly::var(&r, 1)]),
        ]];
        let s = decompose_interior(&x, comps).unwrap().leg;
        let y = pair(&["a", "b"], &["a*b"], "(a + b)^2");
        let f = to(&y, &x, &["a", "b"]);
        let sq = ore_complete(&s, &f).unwrap();
        assert_eq!(sq.t.source().charts().len(), 2);
    }

    #[test]
    fn sigma_legs_invert() {
        let (x, s) = plane_blowup();
        let inv = Roof::inverse_of(&s);
        let fwd = Roof::from_morphism(s.morphism().clone());
        let there_and_back = compose_roofs(&fwd, &inv).unwrap();
        assert!(roofs_equal(&there_and_back, &Roof::identity(s.source())));
        let back_and_there = compose_roofs(&inv, &fwd).unwrap();
        assert!(roofs_equal(&back_and_there, &Roof::identity(&x)));
    }

    #[test]
    fn roof_after_plain_morphism_is_post_composition() {
        let x = pair(&["x"], &[], "x^3");
        let y = pair(&["a"], &[], "a^6");
        let z = pair(&["u"], &[], "u");
        let f = to(&y, &x, &["a^2"]);
        let g = to(&x, &z, &["x^3"]);
        let r = compose_roofs(&Roof::from_morphism(f.clone()), &Roof::from_morphism(g.clone())).unwrap();
        assert!(roofs_equal(&r, &Roof::from_morphism(f.then(&g).unwrap())));
    }

    #[test]
    fn different_graphs_differ() {
        let x = pair(&["x"], &[], "x^2");
        let y = pair(&["y"], &[], "y");
        let r1 = Roof::from_morphism(to(&x, &y, &["x"]));
        let r2 = Roof::from_morphism(to(&x, &y, &["x^2"]));
        assert!(roofs_equal(&r1, &r1));
        assert!(!roofs_equal(&r1, &r2));
    }

    #[test]
    fn blowups_of_the_same_center_agree() {
        let (x, s) = plane_blowup();
        let r = x.chart(0).pres.ring().clone();
        let swapped = blowup_in_divisor(&x, vec![Some(vec![Poly::var(&r, 1), Poly::var(&r, 0)])]).unwrap();
        let z = pair(&["u"], &[], "u");
        let g = to(&x, &z, &["x*t"]);
        let r1 = Roof::new(s.clone(), s.morphism().then(&g).unwrap()).unwrap();
        let r2 = Roof::new(swapped.clone(), swapped.morphism().then(&g).unwrap()).unwrap();
        assert!(roofs_equal(&r1, &r2));
    }
}
