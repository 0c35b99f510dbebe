//! Effective Cartier divisors on a single ring and the modulus condition for
//! relative cycles on `X̄ × Ȳ`.

use std::sync::Arc;

use thiserror::Error;

use crate::affine::{tensor_over, AffineError, Presentation, RingMap, TensorProduct};
use crate::exactalg::{Ideal, Poly, Ring, VDim};
use crate::modpair::{is_monic_in_last, AmbientMorphism, Chart, IntegralityWitness, ModPairError, ModulusPair};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycleError {
    #[error("`{0}` is a zero-divisor")]
    NotNonzerodivisor(String),
    #[error("divisors live on different rings")]
    DifferentRings,
    #[error("the intersection of the two divisors is not an effective Cartier divisor")]
    IntersectionNotCartier,
    #[error("invalid witness: {0}")]
    WitnessInvalid(String),
    #[error("the fibre is not finite")]
    FiberNotFinite,
    #[error("component multiplicity is zero")]
    ZeroMultiplicity,
    #[error("component {component} fails the modulus condition")]
    NotAdmissible { component: usize },
    #[error("cycles are only supported on single-chart pairs")]
    MultiChart,
    #[error(transparent)]
    Affine(#[from] AffineError),
    #[error(transparent)]
    Pair(#[from] ModPairError),
}

/// An effective Cartier divisor `(g)` on `Q[x]/I`.
#[derive(Clone, Debug)]
pub struct DivisorOnRing {
    pres: Presentation,
    generator: Poly,
}

impl DivisorOnRing {
    pub fn new(pres: Presentation, generator: Poly) -> Result<Self, CycleError> {
        if !generator.ring().same_as(pres.ring()) {
            return Err(CycleError::DifferentRings);
        }
        if !pres.is_empty() && (pres.is_zero(&generator) || !pres.ideal().is_nonzerodivisor(&generator)) {
            return Err(CycleError::NotNonzerodivisor(generator.to_string()));
        }
        Ok(DivisorOnRing { pres, generator })
    }

    pub fn pres(&self) -> &Presentation {
        &self.pres
    }

    pub fn generator(&self) -> &Poly {
        &self.generator
    }

    /// `<g> + I`.
    pub fn ideal(&self) -> Ideal {
        self.pres.ideal().add_gens([self.generator.clone()])
    }

    fn check_same(&self, other: &DivisorOnRing) -> Result<(), CycleError> {
        if self.pres.ring().same_as(other.pres.ring()) && self.pres.same_as(&other.pres) {
            Ok(())
        } else {
            Err(CycleError::DifferentRings)
        }
    }
}

/// `D1 >= D2`: a cofactor `c` with `d1 ≡ c * d2`, if one exists.
pub fn divisor_geq(d1: &DivisorOnRing, d2: &DivisorOnRing) -> Result<Option<Poly>, CycleError> {
    d1.check_same(d2)?;
    Ok(d1.pres.ideal().cofactor(&d1.generator, &d2.generator).map(|c| d1.pres.reduce(&c)))
}

/// A nonzerodivisor generating `<d1, d2> + I`, if there is one among the
/// natural candidates: `d1`, `d2`, their polynomial gcd and the Groebner
/// basis elements of the sum.
fn intersection_generator(d1: &DivisorOnRing, d2: &DivisorOnRing) -> Result<Poly, CycleError> {
    d1.check_same(d2)?;
    let pres = &d1.pres;
    let i = pres.ideal();
    let target = i.add_gens([d1.generator.clone(), d2.generator.clone()]);
    let mut candidates = vec![d2.generator.clone(), d1.generator.clone()];
    let free = Ideal::principal(&d1.generator).intersect(&Ideal::principal(&d2.generator));
    if let [lcm] = free.groebner_basis().as_slice() {
        if let Some(g) = (&d1.generator * &d2.generator).div_exact(lcm) {
            candidates.push(g);
        }
    }
    candidates.extend(target.groebner_basis().into_iter().filter(|g| !i.contains(g)));
    candidates
        .into_iter()
        .find(|e| {
            !pres.is_zero(e) && i.is_nonzerodivisor(e) && i.add_gens([e.clone()]).equals(&target)
        })
        .ok_or(CycleError::IntersectionNotCartier)
}

/// Both sides of: `D1 ×_X D2 = D2` iff `D1 - D2` is effective.
#[derive(Clone, Debug)]
pub struct RephrasingReport {
    /// Generator of `D1 ×_X D2`.
    pub e: Poly,
    pub intersection_is_d2: bool,
    pub geq_cofactor: Option<Poly>,
}

impl RephrasingReport {
    pub fn equivalence_holds(&self) -> bool {
        self.intersection_is_d2 == self.geq_cofactor.is_some()
    }
}

pub fn rephrasing_check(d1: &DivisorOnRing, d2: &DivisorOnRing) -> Result<RephrasingReport, CycleError> {
    let e = intersection_generator(d1, d2)?;
    let i = d1.pres.ideal();
    let intersection_is_d2 = i.add_gens([e.clone()]).equals(&d2.ideal());
    let geq_cofactor = divisor_geq(d1, d2)?;
    Ok(RephrasingReport { e, intersection_is_d2, geq_cofactor })
}

/// `(D1 + H) ×_X (D2 + H) = E + H`.
#[derive(Clone, Debug)]
pub struct DdhReport {
    pub e: Poly,
    pub holds: bool,
}

pub fn ddh_check(d1: &DivisorOnRing, d2: &DivisorOnRing, h: &DivisorOnRing) -> Result<DdhReport, CycleError> {
    d1.check_same(h)?;
    let e = intersection_generator(d1, d2)?;
    let i = d1.pres.ideal();
    let hh = &h.generator;
    let lhs = i.add_gens([&d1.generator * hh, &d2.generator * hh]);
    let rhs = i.add_gens([&e * hh]);
    Ok(DdhReport { holds: lhs.equals(&rhs), e })
}

/// Properness of a component closure over the first factor.
#[derive(Clone, Debug)]
pub enum Properness {
    Asserted,
    /// One monic relation over the first factor per variable of the second.
    Finite(Vec<IntegralityWitness>),
}

/// A normal scheme `Z̃` with the images of the product variables, which
/// define `ν: Z̃ -> closure`. Normality is asserted by whoever supplies it.
#[derive(Clone, Debug)]
pub struct Normalization {
    pub pres: Presentation,
    pub images: Vec<Poly>,
}

/// A prime component on `X° × Y°` given by an ideal of the product ring
/// (first-factor variables, then second-factor variables). Primality is
/// asserted by whoever supplies it.
#[derive(Clone, Debug)]
pub struct CycleComponent {
    pub ideal: Ideal,
    pub multiplicity: i64,
    pub properness: Properness,
    pub normalization: Normalization,
}

/// `X̄ × Ȳ` over `Q`, the first factor's variables first.
pub fn product_ring(x: &Presentation, y: &Presentation) -> TensorProduct {
    let point = Presentation::free(&Ring::constants());
    let to_x = RingMap::new(point.clone(), x.clone(), Vec::new()).expect("the point maps anywhere");
    let to_y = RingMap::new(point, y.clone(), Vec::new()).expect("the point maps anywhere");
    tensor_over(&to_x, &to_y)
}

fn single(p: &ModulusPair) -> Result<&Chart, CycleError> {
    if p.is_single_chart() {
        Ok(p.chart(0))
    } else {
        Err(CycleError::MultiChart)
    }
}

/// Both pulled-back divisors on `Z̃` and the cofactor witnessing
/// `ν*(X∞ × Ȳ) >= ν*(X̄ × Y∞)`.
#[derive(Clone, Debug)]
pub struct ModulusConditionReport {
    pub closure: Presentation,
    pub pulled_x: Poly,
    pub pulled_y: Poly,
    pub cofactor: Option<Poly>,
}

impl ModulusConditionReport {
    pub fn holds(&self) -> bool {
        self.cofactor.is_some()
    }
}

impl CycleComponent {
    /// `(I_X + I_Y + P) : (d_X d_Y)^∞` in the product ring.
    pub fn closure(&self, x: &Chart, y: &Chart) -> Result<(TensorProduct, Presentation), CycleError> {
        let prod = product_ring(&x.pres, &y.pres);
        if !self.ideal.ring().same_as(prod.pres.ring()) {
            return Err(CycleError::WitnessInvalid("component ideal is not in the product ring".into()));
        }
        let dx = prod.left.apply(&x.divisor);
        let dy = prod.right.apply(&y.divisor);
        let closure = prod.pres.ideal().sum(&self.ideal).saturate(&(&dx * &dy));
        Ok((prod, Presentation::new(closure)))
    }

    /// `ν`, validated against the closure.
    pub fn nu(&self, closure: &Presentation) -> Result<RingMap, CycleError> {
        RingMap::new(closure.clone(), self.normalization.pres.clone(), self.normalization.images.clone())
            .map_err(|e| CycleError::WitnessInvalid(format!("normalization map: {e}")))
    }

    fn check_properness(&self, x: &Chart, y: &Chart, closure: &Presentation) -> Result<(), CycleError> {
        let Properness::Finite(ws) = &self.properness else {
            return Ok(());
        };
        let nx = x.pres.ring().nvars();
        for v in 0..y.pres.ring().nvars() {
            let w = ws
                .iter()
                .find(|w| w.var == v)
                .ok_or_else(|| CycleError::WitnessInvalid(format!("no integral relation for variable {v}")))?;
            if w.poly.ring().nvars() != nx + 1 || !is_monic_in_last(&w.poly) {
                return Err(CycleError::WitnessInvalid(format!("relation for variable {v} is not monic")));
            }
            let mut images: Vec<Poly> = (0..nx).map(|i| closure.var(i)).collect();
            images.push(closure.var(nx + v));
            if !closure.is_zero(&w.poly.substitute(&images, closure.ring())) {
                return Err(CycleError::WitnessInvalid(format!("relation for variable {v} does not hold")));
            }
        }
        Ok(())
    }
}

pub fn modulus_condition_check(c: &CycleComponent, x: &ModulusPair, y: &ModulusPair) -> Result<ModulusConditionReport, CycleError> {
    let (xc, yc) = (single(x)?, single(y)?);
    let (prod, closure) = c.closure(xc, yc)?;
    let nu = c.nu(&closure)?;
    let z = &c.normalization.pres;
    let pulled_x = z.reduce(&nu.apply(&prod.left.apply(&xc.divisor)));
    let pulled_y = z.reduce(&nu.apply(&prod.right.apply(&yc.divisor)));
    let cofactor = z.ideal().cofactor(&pulled_x, &pulled_y).map(|q| z.reduce(&q));
    Ok(ModulusConditionReport { closure, pulled_x, pulled_y, cofactor })
}

/// A finite sum of components, each satisfying the modulus condition.
#[derive(Clone, Debug)]
pub struct ModulusCorrespondence {
    pub source: Arc<ModulusPair>,
    pub target: Arc<ModulusPair>,
    pub components: Vec<CycleComponent>,
    pub reports: Vec<ModulusConditionReport>,
}

impl ModulusCorrespondence {
    pub fn new(
        source: Arc<ModulusPair>,
        target: Arc<ModulusPair>,
        components: Vec<CycleComponent>,
    ) -> Result<Self, CycleError> {
        let (xc, yc) = (single(&source)?, single(&target)?);
        let mut reports = Vec::with_capacity(components.len());
        for (k, c) in components.iter().enumerate() {
            if c.multiplicity == 0 {
                return Err(CycleError::ZeroMultiplicity);
            }
            let rep = modulus_condition_check(c, &source, &target)?;
            c.check_properness(xc, yc, &rep.closure)?;
            if !rep.holds() {
                return Err(CycleError::NotAdmissible { component: k });
            }
            reports.push(rep);
        }
        Ok(ModulusCorrespondence { source, target, components, reports })
    }
}

/// The graph of `f: X -> Y` as a correspondence from `X` to `Y`, with `X̄`
/// as the normalization of the graph closure.
pub fn graph_cycle(f: &AmbientMorphism) -> Result<ModulusCorrespondence, CycleError> {
    let (x, y) = (f.source(), f.target());
    let (xc, yc) = (single(x)?, single(y)?);
    let phi = &f.chart_map(0).map;
    let prod = product_ring(&xc.pres, &yc.pres);
    let ring = prod.pres.ring();
    let nx = xc.pres.ring().nvars();
    let graph: Vec<Poly> = (0..yc.pres.ring().nvars())
        .map(|v| prod.right.apply(&yc.pres.var(v)) - prod.left.apply(&phi.images()[v]))
        .collect();
    let (tring, _) = xc.pres.ring().extend(&["T"]);
    let witnesses = phi
        .images()
        .iter()
        .enumerate()
        .map(|(v, img)| {
            let lifted = img.to_ring(&tring).expect("ring extension");
            IntegralityWitness { var: v, poly: Poly::var(&tring, nx) - lifted }
        })
        .collect();
    let mut images: Vec<Poly> = (0..nx).map(|i| xc.pres.var(i)).collect();
    images.extend(phi.images().iter().cloned());
    let component = CycleComponent {
        ideal: Ideal::new(ring, graph),
        multiplicity: 1,
        properness: Properness::Finite(witnesses),
        normalization: Normalization { pres: xc.pres.clone(), images },
    };
    ModulusCorrespondence::new(x.clone(), y.clone(), vec![component])
}

/// `[k(z) : k(w)]` for a closed point `z` over the closed point `w`, as a
/// ratio of dimensions over `Q`; zero when `z` is not a closed point.
pub fn pushforward_degree(z: &Ideal, w: &Ideal) -> u64 {
    match (z.vspace_dim(), w.vspace_dim()) {
        (VDim::Finite(a), VDim::Finite(b)) if b > 0 => a / b,
        _ => 0,
    }
}

/// `F = <f(m)> + I` for a point `m` of the source of `f`.
pub fn fiber_ideal(f: &RingMap, point: &Ideal) -> Ideal {
    f.target().ideal().add_gens(point.gens().iter().map(|g| f.apply(g)))
}

/// Length at `component` of the fibre of `f: B -> R` over `point`:
/// `dim R/Q / dim R/P` with `Q = F : (F : P^∞)` the `P`-primary part of the
/// fibre ideal `F`.
pub fn flat_fiber_multiplicity(f: &RingMap, point: &Ideal, component: &Ideal) -> Result<u64, CycleError> {
    let fiber = fiber_ideal(f, point);
    if fiber.vspace_dim() == VDim::Infinite {
        return Err(CycleError::FiberNotFinite);
    }
    let p = f.target().ideal().sum(component);
    if !p.contains_ideal(&fiber) {
        return Err(CycleError::WitnessInvalid("component does not lie over the point".into()));
    }
    let away = fiber.saturate_ideal(&p);
    let primary = fiber.colon_ideal(&away);
    match (primary.vspace_dim(), p.vspace_dim()) {
        (VDim::Finite(a), VDim::Finite(b)) if b > 0 => Ok(a / b),
        _ => Err(CycleError::FiberNotFinite),
    }
}
