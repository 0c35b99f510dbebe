use std::sync::Arc;

use num_traits::One;

use crate::exactalg::{Ideal, Poly};

use super::{AmbientMorphism, ModPairError, ModulusPair};

/// `U -> X` claimed to be the principal open `D(element)` of a single-chart
/// `X`.
#[derive(Clone, Debug)]
pub struct ZarMember {
    pub morphism: AmbientMorphism,
    pub element: Poly,
}

/// Monic relation `T^n + c_{n-1} T^{n-1} + ... + c_0` (coefficients in the
/// target chart ring) satisfied by source variable `var`. The polynomial
/// lives in the target chart ring extended by one last variable `T`.
#[derive(Clone, Debug)]
pub struct IntegralityWitness {
    pub var: usize,
    pub poly: Poly,
}

#[derive(Clone, Debug)]
pub struct FinMember {
    pub morphism: AmbientMorphism,
    pub witnesses: Vec<IntegralityWitness>,
}

#[derive(Clone, Debug)]
pub enum CoverCertificate {
    Zar(Vec<ZarMember>),
    Fin(Vec<FinMember>),
    /// Covers of the members of `outer`, where present.
    Compose { outer: Box<CoverCertificate>, inner: Vec<Option<CoverCertificate>> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverReport {
    /// One line per verified fact.
    pub lines: Vec<String>,
}

impl CoverCertificate {
    fn target(&self) -> Option<Arc<ModulusPair>> {
        match self {
            CoverCertificate::Zar(m) => m.first().map(|z| z.morphism.target().clone()),
            CoverCertificate::Fin(m) => m.first().map(|f| f.morphism.target().clone()),
            CoverCertificate::Compose { outer, .. } => outer.target(),
        }
    }

    fn member_sources(&self) -> Vec<Arc<ModulusPair>> {
        match self {
            CoverCertificate::Zar(m) => m.iter().map(|z| z.morphism.source().clone()).collect(),
            CoverCertificate::Fin(m) => m.iter().map(|f| f.morphism.source().clone()).collect(),
            CoverCertificate::Compose { outer, .. } => outer.member_sources(),
        }
    }
}

fn common_target<'a>(ms: impl Iterator<Item = &'a AmbientMorphism>) -> Result<Arc<ModulusPair>, ModPairError> {
    let mut target: Option<Arc<ModulusPair>> = None;
    for (i, m) in ms.enumerate() {
        if !m.is_minimal() {
            return Err(ModPairError::MemberNotMinimal { member: i });
        }
        match &target {
            None => target = Some(m.target().clone()),
            Some(t) if Arc::ptr_eq(t, m.target()) || t.same_as(m.target()) => {}
            Some(_) => return Err(ModPairError::NotComposable(format!("member {i} has a different target"))),
        }
    }
    let t = target.ok_or(ModPairError::NotJointlySurjective)?;
    if !t.is_single_chart() {
        return Err(ModPairError::NotComposable("covers are checked over single-chart pairs".into()));
    }
    Ok(t)
}

fn check_zar(members: &[ZarMember], out: &mut Vec<String>) -> Result<(), ModPairError> {
    let x = common_target(members.iter().map(|m| &m.morphism))?;
    let xc = x.chart(0);
    let n = xc.pres.ring().nvars();
    for (i, m) in members.iter().enumerate() {
        let bad = |reason: &str| ModPairError::NotPrincipalOpen { member: i, reason: reason.to_string() };
        let src = m.morphism.source();
        if !src.is_single_chart() {
            return Err(bad("source has several charts"));
        }
        let u = src.chart(0);
        if u.pres.ring().nvars() != n + 1 {
            return Err(bad("source must add exactly one variable"));
        }
        let map = &m.morphism.chart_map(0).map;
        for k in 0..n {
            if !u.pres.eq_elements(&map.images()[k], &u.pres.var(k)) {
                return Err(bad("variables are not mapped to themselves"));
            }
        }
        let f = m.element.to_ring(xc.pres.ring()).ok_or_else(|| bad("element outside the target ring"))?;
        let ident: Vec<usize> = (0..n).collect();
        let w = u.pres.var(n);
        let mut gens: Vec<Poly> = xc.pres.ideal().gens().iter().map(|g| g.remap(u.pres.ring(), &ident)).collect();
        gens.push(&w * &f.remap(u.pres.ring(), &ident) - Poly::one(u.pres.ring()));
        if !Ideal::new(u.pres.ring(), gens).equals(u.pres.ideal()) {
            return Err(bad("source ideal is not I + <w*f - 1>"));
        }
        out.push(format!("member {i}: principal open D({f})"));
    }
    let elems: Vec<Poly> = members.iter().map(|m| m.element.to_ring(xc.pres.ring()).unwrap()).collect();
    let mut gens = elems.clone();
    gens.extend(xc.pres.ideal().gens().iter().cloned());
    let w = Ideal::new(xc.pres.ring(), gens)
        .membership_witness(&Poly::one(xc.pres.ring()))
        .ok_or(ModPairError::NotJointlySurjective)?;
    let terms: Vec<String> = w.iter().zip(&elems).map(|(c, e)| format!("({c})*({e})")).collect();
    out.push(format!("unit ideal: 1 = {} mod I", terms.join(" + ")));
    Ok(())
}

pub(crate) fn is_monic_in_last(p: &Poly) -> bool {
    let t = p.ring().nvars() - 1;
    let deg = p.terms().map(|(m, _)| m.exponents()[t]).max().unwrap_or(0);
    deg > 0 && {
        let top: Vec<_> = p.terms().filter(|(m, _)| m.exponents()[t] == deg).collect();
        top.len() == 1 && top[0].0.degree() == deg && top[0].1.is_one()
    }
}

fn check_fin(members: &[FinMember], out: &mut Vec<String>) -> Result<(), ModPairError> {
    let x = common_target(members.iter().map(|m| &m.morphism))?;
    let xc = x.chart(0);
    let n = xc.pres.ring().nvars();
    let mut meet: Option<Ideal> = None;
    for (i, m) in members.iter().enumerate() {
        let src = m.morphism.source();
        for (k, u) in src.charts().iter().enumerate() {
            let map = &m.morphism.chart_map(k).map;
            for (v, name) in u.pres.ring().vars().iter().enumerate() {
                let missing = || ModPairError::MissingIntegralityWitness { member: i, var: name.clone() };
                let w = m.witnesses.iter().find(|w| w.var == v).ok_or_else(missing)?;
                if w.poly.ring().nvars() != n + 1 || !is_monic_in_last(&w.poly) {
                    return Err(missing());
                }
                let mut images: Vec<Poly> = map.images().to_vec();
                images.push(u.pres.var(v));
                if !u.pres.is_zero(&w.poly.substitute(&images, u.pres.ring())) {
                    return Err(missing());
                }
                out.push(format!("member {i}: `{name}` is integral via {}", w.poly));
            }
            let k_ideal = map.kernel();
            meet = Some(match meet {
                None => k_ideal,
                Some(acc) => acc.intersect(&k_ideal),
            });
        }
    }
    let meet = meet.ok_or(ModPairError::NotJointlySurjective)?;
    if !meet.gens().iter().all(|g| xc.pres.ideal().radical_contains(g)) {
        return Err(ModPairError::NotJointlySurjective);
    }
    out.push(format!("intersection of kernels {meet} lies in the nilradical"));
    Ok(())
}

fn check(cert: &CoverCertificate, out: &mut Vec<String>, depth: usize) -> Result<(), ModPairError> {
    match cert {
        CoverCertificate::Zar(m) => check_zar(m, out),
        CoverCertificate::Fin(m) => check_fin(m, out),
        CoverCertificate::Compose { outer, inner } => {
            check(outer, out, depth)?;
            let sources = outer.member_sources();
            if inner.len() != sources.len() {
                return Err(ModPairError::NotComposable("one inner entry per outer member expected".into()));
            }
            for (i, (src, c)) in sources.iter().zip(inner).enumerate() {
                let Some(c) = c else { continue };
                let t = c.target().ok_or(ModPairError::NotJointlySurjective)?;
                if !(Arc::ptr_eq(&t, src) || t.same_as(src)) {
                    return Err(ModPairError::NotComposable(format!("inner cover {i} is not over outer member {i}")));
                }
                out.push(format!("{}refining member {i}:", "  ".repeat(depth + 1)));
                check(c, out, depth + 1)?;
            }
            Ok(())
        }
    }
}

/// Verifies a Zariski, finite, or composed covering certificate.
pub fn check_cover(cert: &CoverCertificate) -> Result<CoverReport, ModPairError> {
    let mut lines = Vec::new();
    check(cert, &mut lines, 0)?;
    Ok(CoverReport { lines })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::Presentation;
    use crate::exactalg::{parse_poly, Ring};

    fn line() -> Arc<ModulusPair> {
        let r = Ring::new(["x"]);
        Arc::new(ModulusPair::single(Presentation::free(&r), Poly::one(&r)).unwrap())
    }

    fn open(x: &Arc<ModulusPair>, f: &str) -> ZarMember {
        let pres = &x.chart(0).pres;
        let f = parse_poly(pres.ring(), f).unwrap();
        let (loc, map) = pres.localize(&f).unwrap();
        let src = Arc::new(ModulusPair::single(loc.clone(), Poly::one(loc.ring())).unwrap());
        let morphism = AmbientMorphism::check_admissible(src, x.clone(), vec![(0, map.images().to_vec())]).unwrap();
        ZarMember { morphism, element: f }
    }

    #[test]
    fn zariski_covers() {
        let x = line();
        let cov = CoverCertificate::Zar(vec![open(&x, "x"), open(&x, "1 - x")]);
        assert!(check_cover(&cov).is_ok());
        let bad = CoverCertificate::Zar(vec![open(&x, "x")]);
        assert_eq!(check_cover(&bad).unwrap_err(), ModPairError::NotJointlySurjective);
    }

    #[test]
    fn finite_cover_of_the_line() {
        let ry = Ring::new(["y"]);
        let base = Arc::new(ModulusPair::single(Presentation::free(&ry), Poly::one(&ry)).unwrap());
        let rx = Ring::new(["x"]);
        let src = Arc::new(ModulusPair::single(Presentation::free(&rx), Poly::one(&rx)).unwrap());
        let m = AmbientMorphism::check_admissible(src, base, vec![(0, vec![parse_poly(&rx, "x^2").unwrap()])]).unwrap();
        let rt = Ring::new(["y", "T"]);
        let good = IntegralityWitness { var: 0, poly: parse_poly(&rt, "T^2 - y").unwrap() };
        let cov = CoverCertificate::Fin(vec![FinMember { morphism: m.clone(), witnesses: vec![good] }]);
        assert!(check_cover(&cov).is_ok());
        let nonmonic = IntegralityWitness { var: 0, poly: parse_poly(&rt, "y*T^2 - y^2").unwrap() };
        let cov = CoverCertificate::Fin(vec![FinMember { morphism: m.clone(), witnesses: vec![nonmonic] }]);
        assert!(matches!(check_cover(&cov), Err(ModPairError::MissingIntegralityWitness { .. })));
        let cov = CoverCertificate::Fin(vec![FinMember { morphism: m, witnesses: vec![] }]);
        assert!(matches!(check_cover(&cov), Err(ModPairError::MissingIntegralityWitness { .. })));
    }

    #[test]
    fn composed_cover() {
        let x = line();
        let a = open(&x, "x");
        let b = open(&x, "1 - x");
        // refine D(x) by D(x*(x+1)) and D(x*(x-1)) ... here simply by its own principal opens
        let u = a.morphism.source().clone();
        let pres = &u.chart(0).pres;
        let mk = |f: &str| {
            let f = parse_poly(pres.ring(), f).unwrap();
            let (loc, map) = pres.localize_named(&f, "w").unwrap();
            let src = Arc::new(ModulusPair::single(loc.clone(), Poly::one(loc.ring())).unwrap());
            let m = AmbientMorphism::check_admissible(src, u.clone(), vec![(0, map.images().to_vec())]).unwrap();
            ZarMember { morphism: m, element: f }
        };
        let inner = CoverCertificate::Zar(vec![mk("x + 1"), mk("x - 1")]);
        let cert = CoverCertificate::Compose {
            outer: Box::new(CoverCertificate::Zar(vec![a, b])),
            inner: vec![Some(inner), None],
        };
        let rep = check_cover(&cert).unwrap();
        assert!(rep.lines.iter().any(|l| l.contains("refining member 0")));
    }
}
