use std::fmt;
use std::sync::Arc;

use crate::affine::{blowup_charts, eliminate_linear_vars, Presentation, RingMap};
use crate::exactalg::{Ideal, Poly, Ring};

use super::{AmbientMorphism, Chart, ChartMap, ChartWitness, ModPairError, Model, ModulusPair, Overlap};

/// Evidence that one source chart's interior is the open subset `D(opening)`
/// of the target chart's interior.
#[derive(Clone, Debug)]
pub struct InteriorWitness {
    /// Target chart variables followed by `u` (inverse of the divisor) and
    /// `v` (inverse of `opening`).
    pub ring: Ring,
    /// Element of `ring` not involving `v`.
    pub opening: Poly,
    /// Inverse images of the source chart variables, in `ring`.
    pub inverse: Vec<Poly>,
}

/// The shape of an abstract admissible blow-up.
#[derive(Clone, Debug)]
pub enum SigmaKind {
    Identity,
    /// Per target chart: `None` keeps the chart, `Some(center)` replaces it by
    /// the standard charts of the blow-up along `center`.
    BlowupInDivisor { centers: Vec<Option<Vec<Poly>>> },
    /// Per target chart, the ideals whose interior closures are the source
    /// charts over it.
    ComponentClosure { components: Vec<Vec<Ideal>> },
    /// Legs listed from the apex towards the final target.
    Composite(Vec<SigmaLeg>),
}

/// Data a caller supplies to [`SigmaLeg::certify`].
pub type SigmaData = SigmaKind;

/// A minimal morphism together with a verified certificate that it is an
/// abstract admissible blow-up.
#[derive(Clone, Debug)]
pub struct SigmaLeg {
    morphism: AmbientMorphism,
    kind: SigmaKind,
    witnesses: Vec<InteriorWitness>,
}

fn interior_ring(chart: &Chart) -> Ring {
    chart.pres.ring().extend(&["u", "v"]).0
}

fn lift(p: &Poly, ring: &Ring) -> Poly {
    p.to_ring(ring).expect("ring extension")
}

/// Checks that the localization of `src` at its divisor is isomorphic to
/// the localization of `tgt` at its divisor and at the witness opening.
fn verify_interior_iso(
    src: &Chart,
    tgt: &Chart,
    map: &RingMap,
    cw: &ChartWitness,
    w: &InteriorWitness,
) -> Result<(), String> {
    let kcof = cw.minimal_cofactor.as_ref().ok_or("morphism is not minimal on this chart")?;
    let nt = tgt.pres.ring().nvars();
    let rt = &w.ring;
    let u = Poly::var(rt, nt);
    let v = Poly::var(rt, nt + 1);
    if w.opening.uses_var(nt + 1) {
        return Err("opening element uses its own inverse".into());
    }
    let mut lt_gens: Vec<Poly> = tgt.pres.ideal().gens().iter().map(|g| lift(g, rt)).collect();
    lt_gens.push(&u * &lift(&tgt.divisor, rt) - Poly::one(rt));
    lt_gens.push(&v * &w.opening - Poly::one(rt));
    let lt = Presentation::new(Ideal::new(rt, lt_gens));

    let ns = src.pres.ring().nvars();
    let rs = src.pres.ring().extend(&["u", "v"]).0;
    let us = Poly::var(&rs, ns);
    let vs = Poly::var(&rs, ns + 1);
    let mut alpha: Vec<Poly> = map.images().iter().map(|p| lift(p, &rs)).collect();
    alpha.push(&lift(&cw.admissible_cofactor, &rs) * &us);
    alpha.push(Poly::zero(&rs));
    let opening_s = w.opening.substitute(&alpha, &rs);
    alpha[nt + 1] = vs.clone();
    let mut ls_gens: Vec<Poly> = src.pres.ideal().gens().iter().map(|g| lift(g, &rs)).collect();
    ls_gens.push(&us * &lift(&src.divisor, &rs) - Poly::one(&rs));
    ls_gens.push(&vs * &opening_s - Poly::one(&rs));
    let ls = Presentation::new(Ideal::new(&rs, ls_gens));

    if w.inverse.len() != ns {
        return Err(format!("{} inverse images for {} variables", w.inverse.len(), ns));
    }
    let mut beta = w.inverse.clone();
    beta.push(&kcof.substitute(&w.inverse, rt) * &u);
    beta.push(v.clone());

    let a = RingMap::new(lt.clone(), ls.clone(), alpha).map_err(|e| format!("forward map invalid: {e}"))?;
    let b = RingMap::new(ls.clone(), lt.clone(), beta).map_err(|e| format!("inverse map invalid: {e}"))?;
    let ab = a.then(&b);
    if !ab.agrees_with(&RingMap::identity(&lt), lt.ideal()) {
        return Err("inverse is not a left inverse".into());
    }
    let ba = b.then(&a);
    if !ba.agrees_with(&RingMap::identity(&ls), ls.ideal()) {
        return Err("inverse is not a right inverse".into());
    }
    Ok(())
}

/// `Some(i)` if `center[i]` is a nonzerodivisor that divides every other
/// center generator modulo the chart ideal (the blow-up is then trivial).
pub fn center_is_principal(chart: &Presentation, center: &[Poly]) -> Option<usize> {
    (0..center.len()).find(|&i| {
        let a = &center[i];
        !chart.is_zero(a)
            && chart.ideal().is_nonzerodivisor(a)
            && center.iter().all(|b| chart.ideal().cofactor(b, a).is_some())
    })
}

fn same_names_inverse(src: &Presentation, ring: &Ring) -> Option<Vec<Poly>> {
    src.ring().vars().iter().map(|n| ring.index_of(n).map(|i| Poly::var(ring, i))).collect()
}

impl SigmaLeg {
    pub fn morphism(&self) -> &AmbientMorphism {
        &self.morphism
    }

    pub fn source(&self) -> &Arc<ModulusPair> {
        self.morphism.source()
    }

    pub fn target(&self) -> &Arc<ModulusPair> {
        self.morphism.target()
    }

    pub fn kind(&self) -> &SigmaKind {
        &self.kind
    }

    pub fn interior_witnesses(&self) -> &[InteriorWitness] {
        &self.witnesses
    }

    pub fn identity(pair: &Arc<ModulusPair>) -> SigmaLeg {
        SigmaLeg::certify(AmbientMorphism::identity(pair), SigmaKind::Identity).expect("identity is a blow-up")
    }

    /// Composite of legs listed from the apex.
    pub fn composite(legs: Vec<SigmaLeg>) -> Result<SigmaLeg, ModPairError> {
        let Some(first) = legs.first() else {
            return Err(ModPairError::CertificateMismatch("empty composite".into()));
        };
        let mut m = first.morphism.clone();
        for l in &legs[1..] {
            m = m.then(&l.morphism)?;
        }
        if legs.len() == 1 {
            return Ok(legs.into_iter().next().unwrap());
        }
        SigmaLeg::certify(m, SigmaKind::Composite(legs))
    }

    /// Verifies that `morphism` is an abstract admissible blow-up of the
    /// given shape.
    pub fn certify(morphism: AmbientMorphism, kind: SigmaKind) -> Result<SigmaLeg, ModPairError> {
        morphism.require_minimal()?;
        let witnesses = match &kind {
            SigmaKind::Identity => certify_identity(&morphism)?,
            SigmaKind::BlowupInDivisor { centers } => certify_blowup(&morphism, centers)?,
            SigmaKind::ComponentClosure { components } => certify_components(&morphism, components)?,
            SigmaKind::Composite(legs) => {
                certify_composite(&morphism, legs)?;
                Vec::new()
            }
        };
        Ok(SigmaLeg { morphism, kind, witnesses })
    }
}

fn check_iso_and_cover(
    m: &AmbientMorphism,
    witnesses: &[InteriorWitness],
    disjoint: bool,
) -> Result<(), ModPairError> {
    let src = m.source();
    let tgt = m.target();
    for (k, w) in witnesses.iter().enumerate() {
        let cm = m.chart_map(k);
        verify_interior_iso(src.chart(k), tgt.chart(cm.target_chart), &cm.map, &m.witnesses()[k], w)
            .map_err(|reason| ModPairError::InteriorNotIso { chart: k, reason })?;
    }
    for (c, chart) in tgt.charts().iter().enumerate() {
        let over: Vec<usize> = (0..witnesses.len()).filter(|&k| m.chart_map(k).target_chart == c).collect();
        let ring = interior_ring(chart);
        let nt = chart.pres.ring().nvars();
        let u = Poly::var(&ring, nt);
        let mut gens: Vec<Poly> = chart.pres.ideal().gens().iter().map(|g| lift(g, &ring)).collect();
        gens.push(&u * &lift(&chart.divisor, &ring) - Poly::one(&ring));
        let interior = Ideal::new(&ring, gens);
        let cover = interior.add_gens(over.iter().map(|&k| witnesses[k].opening.clone()));
        if !cover.is_unit() {
            return Err(ModPairError::NotCoveringInterior { chart: c });
        }
        if disjoint {
            for (x, &a) in over.iter().enumerate() {
                for &b in &over[x + 1..] {
                    let prod = &witnesses[a].opening * &witnesses[b].opening;
                    if !interior.radical_contains(&prod) {
                        return Err(ModPairError::NotDisjointOnInterior { a, b });
                    }
                }
            }
        }
    }
    Ok(())
}

fn certify_identity(m: &AmbientMorphism) -> Result<Vec<InteriorWitness>, ModPairError> {
    let src = m.source();
    let tgt = m.target();
    if src.charts().len() != tgt.charts().len() {
        return Err(ModPairError::CertificateMismatch("identity between pairs with different chart counts".into()));
    }
    let mut out = Vec::new();
    for (k, cm) in m.charts().iter().enumerate() {
        let (s, t) = (src.chart(k), tgt.chart(k));
        let ok = cm.target_chart == k
            && s.pres.same_as(&t.pres)
            && cm.map.agrees_with(&RingMap::identity(&s.pres), s.pres.ideal());
        if !ok {
            return Err(ModPairError::CertificateMismatch(format!("chart {k} is not mapped identically")));
        }
        let ring = interior_ring(t);
        out.push(InteriorWitness {
            opening: Poly::one(&ring),
            inverse: same_names_inverse(&s.pres, &ring).unwrap(),
            ring,
        });
    }
    check_iso_and_cover(m, &out, true)?;
    Ok(out)
}

fn certify_blowup(m: &AmbientMorphism, centers: &[Option<Vec<Poly>>]) -> Result<Vec<InteriorWitness>, ModPairError> {
    let src = m.source();
    let tgt = m.target();
    if centers.len() != tgt.charts().len() {
        return Err(ModPairError::CertificateMismatch("one center entry per target chart expected".into()));
    }
    let mut out = Vec::new();
    let mut pos = 0;
    let next = |pos: &mut usize, c: usize| -> Result<usize, ModPairError> {
        let k = *pos;
        if k >= src.charts().len() || m.chart_map(k).target_chart != c {
            return Err(ModPairError::CertificateMismatch(format!("source chart {k} does not lie over target chart {c}")));
        }
        *pos += 1;
        Ok(k)
    };
    for (c, center) in centers.iter().enumerate() {
        let t = tgt.chart(c);
        let ring = interior_ring(t);
        match center {
            None => {
                let k = next(&mut pos, c)?;
                let s = src.chart(k);
                let cm = m.chart_map(k);
                let same = s.pres.ring().same_as(t.pres.ring())
                    && s.pres.same_as(&t.pres)
                    && cm.map.agrees_with(&RingMap::identity(&t.pres), s.pres.ideal());
                if !same {
                    return Err(ModPairError::CertificateMismatch(format!("kept chart {k} differs from target chart {c}")));
                }
                out.push(InteriorWitness {
                    opening: Poly::one(&ring),
                    inverse: same_names_inverse(&s.pres, &ring).unwrap(),
                    ring,
                });
            }
            Some(gens) => {
                let joined = t.pres.ideal().add_gens(gens.iter().cloned());
                if !joined.radical_contains(&t.divisor) {
                    return Err(ModPairError::CenterNotInDivisor { chart: c, divisor: t.divisor.to_string() });
                }
                let set = blowup_charts(&t.pres, gens)?;
                let nb = t.pres.ring().nvars();
                for bc in &set.charts {
                    let k = next(&mut pos, c)?;
                    let s = src.chart(k);
                    if s.pres.ring().nvars() != bc.pres.ring().nvars() {
                        return Err(ModPairError::CertificateMismatch(format!("chart {k} has the wrong number of variables")));
                    }
                    let ident: Vec<usize> = (0..s.pres.ring().nvars()).collect();
                    let moved = Ideal::new(
                        bc.pres.ring(),
                        s.pres.ideal().gens().iter().map(|g| g.remap(bc.pres.ring(), &ident)).collect(),
                    );
                    if !moved.equals(bc.pres.ideal()) {
                        return Err(ModPairError::CertificateMismatch(format!(
                            "chart {k} is not blow-up chart {} of target chart {c}",
                            bc.index
                        )));
                    }
                    let cm = m.chart_map(k);
                    for b in 0..nb {
                        if !s.pres.eq_elements(&cm.map.images()[b], &s.pres.var(b)) {
                            return Err(ModPairError::CertificateMismatch(format!(
                                "chart {k} does not map base variables to themselves"
                            )));
                        }
                    }
                    let v = Poly::var(&ring, nb + 1);
                    let mut inverse: Vec<Poly> = (0..nb).map(|b| Poly::var(&ring, b)).collect();
                    for j in 0..gens.len() {
                        if bc.ratio_vars[j].is_some() {
                            inverse.push(&lift(&gens[j], &ring) * &v);
                        }
                    }
                    out.push(InteriorWitness { opening: lift(&gens[bc.index], &ring), inverse, ring: ring.clone() });
                }
            }
        }
    }
    if pos != src.charts().len() {
        return Err(ModPairError::CertificateMismatch("source has charts over no center".into()));
    }
    check_iso_and_cover(m, &out, false)?;
    Ok(out)
}

fn component_opening(t: &Chart, comps: &[Ideal], k: usize, ring: &Ring) -> Option<Poly> {
    let nt = t.pres.ring().nvars();
    let u = Poly::var(ring, nt);
    let others: Vec<&Ideal> = comps.iter().enumerate().filter(|(l, _)| *l != k).map(|(_, j)| j).collect();
    let mut prod: Vec<Poly> = vec![Poly::one(ring)];
    for j in others {
        let mut next = Vec::new();
        for a in &prod {
            for g in j.gens() {
                next.push(a * &lift(g, ring));
            }
        }
        prod = next;
    }
    let mut gens: Vec<Poly> = prod.clone();
    let np = gens.len();
    gens.extend(comps[k].gens().iter().map(|g| lift(g, ring)));
    gens.extend(t.pres.ideal().gens().iter().map(|g| lift(g, ring)));
    gens.push(&u * &lift(&t.divisor, ring) - Poly::one(ring));
    let keep: Vec<usize> = (0..gens.len()).filter(|&i| !gens[i].is_zero()).collect();
    let nonzero: Vec<Poly> = keep.iter().map(|&i| gens[i].clone()).collect();
    let w = Ideal::new(ring, nonzero).membership_witness(&Poly::one(ring))?;
    let mut e = Poly::zero(ring);
    for (c, &i) in w.iter().zip(&keep) {
        if i < np {
            e = e + c * &gens[i];
        }
    }
    Some(e)
}

fn certify_components(m: &AmbientMorphism, components: &[Vec<Ideal>]) -> Result<Vec<InteriorWitness>, ModPairError> {
    let src = m.source();
    let tgt = m.target();
    if components.len() != tgt.charts().len() {
        return Err(ModPairError::CertificateMismatch("one component list per target chart expected".into()));
    }
    let mut out = Vec::new();
    let mut pos = 0;
    for (c, comps) in components.iter().enumerate() {
        let t = tgt.chart(c);
        let ring = interior_ring(t);
        for (a, ja) in comps.iter().enumerate() {
            for jb in &comps[a + 1..] {
                if !t.pres.ideal().sum(ja).sum(jb).saturate(&t.divisor).is_unit() {
                    return Err(ModPairError::NotDisjointOnInterior { a, b: a + 1 });
                }
            }
        }
        let closure = t.interior_closure();
        let mut prod = Ideal::unit(t.pres.ring());
        for j in comps {
            prod = prod.product(j);
        }
        if !closure.contains_ideal(&prod) {
            return Err(ModPairError::NotCoveringInterior { chart: c });
        }
        for k in 0..comps.len() {
            let idx = pos;
            pos += 1;
            if idx >= src.charts().len() || m.chart_map(idx).target_chart != c {
                return Err(ModPairError::CertificateMismatch(format!("source chart {idx} does not lie over chart {c}")));
            }
            let s = src.chart(idx);
            let cm = m.chart_map(idx);
            let expected = t.pres.ideal().sum(&comps[k]).saturate(&t.divisor);
            if !cm.map.kernel().equals(&expected) {
                return Err(ModPairError::CertificateMismatch(format!(
                    "chart {idx} is not the closure of component {k}"
                )));
            }
            let inverse = same_names_inverse(&s.pres, &ring).ok_or_else(|| {
                ModPairError::CertificateMismatch(format!("chart {idx} has variables outside target chart {c}"))
            })?;
            for (i, name) in s.pres.ring().vars().iter().enumerate() {
                let tv = t.pres.ring().index_of(name).unwrap();
                if !s.pres.eq_elements(&cm.map.images()[tv], &s.pres.var(i)) {
                    return Err(ModPairError::CertificateMismatch(format!("chart {idx} is not a closed immersion")));
                }
            }
            let opening = component_opening(t, comps, k, &ring).ok_or(ModPairError::NotDisjointOnInterior { a: k, b: k })?;
            out.push(InteriorWitness { ring: ring.clone(), opening, inverse });
        }
    }
    if pos != src.charts().len() {
        return Err(ModPairError::CertificateMismatch("source has charts over no component".into()));
    }
    check_iso_and_cover(m, &out, true)?;
    Ok(out)
}

fn certify_composite(m: &AmbientMorphism, legs: &[SigmaLeg]) -> Result<(), ModPairError> {
    let first = legs.first().ok_or_else(|| ModPairError::CertificateMismatch("empty composite".into()))?;
    let mut acc = first.morphism.clone();
    for l in &legs[1..] {
        acc = acc.then(&l.morphism)?;
    }
    let same_ends = m.source().same_as(acc.source()) && m.target().same_as(acc.target());
    let same_maps = acc.charts().iter().zip(m.charts()).enumerate().all(|(k, (a, b))| {
        a.target_chart == b.target_chart && {
            let b2 = b.map.retarget(a.map.target().clone()).ok();
            b2.is_some_and(|b2| a.map.agrees_with(&b2, m.source().chart(k).pres.ideal()))
        }
    });
    if !same_ends || !same_maps {
        return Err(ModPairError::CertificateMismatch("composite legs do not compose to the morphism".into()));
    }
    Ok(())
}

/// Blows up the charts of `pair` that have a center (each center must lie
/// in the divisor) and certifies the blow-down.
pub fn blowup_in_divisor(pair: &Arc<ModulusPair>, centers: Vec<Option<Vec<Poly>>>) -> Result<SigmaLeg, ModPairError> {
    if centers.len() != pair.charts().len() {
        return Err(ModPairError::CertificateMismatch("one center entry per chart expected".into()));
    }
    let mut charts = Vec::new();
    let mut overlaps = Vec::new();
    let mut model = Vec::new();
    let mut maps = Vec::new();
    for (c, center) in centers.iter().enumerate() {
        let t = pair.chart(c);
        match center {
            None => {
                charts.push(t.clone());
                model.push((c, RingMap::identity(&t.pres)));
                maps.push(ChartMap { target_chart: c, map: RingMap::identity(&t.pres) });
            }
            Some(gens) => {
                let set = blowup_charts(&t.pres, gens)?;
                let base = charts.len();
                for (i, bc) in set.charts.iter().enumerate() {
                    for j in 0..set.charts.len() {
                        if i != j {
                            overlaps.push(Overlap { i: base + i, j: base + j, map: set.gluing(i, j)? });
                        }
                    }
                    charts.push(Chart::new(bc.pres.clone(), bc.projection.apply(&t.divisor)));
                    model.push((c, bc.projection.clone()));
                    maps.push(ChartMap { target_chart: c, map: bc.projection.clone() });
                }
            }
        }
    }
    let blown = Arc::new(
        ModulusPair::new(charts, overlaps)?.with_model(Model { base: pair.clone(), charts: model }),
    );
    let morphism = AmbientMorphism::from_chart_maps(blown, pair.clone(), maps)?;
    SigmaLeg::certify(morphism, SigmaKind::BlowupInDivisor { centers })
}

/// Result of splitting a pair along components of its interior.
#[derive(Clone, Debug)]
pub struct Decomposition {
    /// One single-chart pair per component (in chart, then component order).
    pub pieces: Vec<ModulusPair>,
    /// The certified morphism from the disjoint union of the pieces.
    pub leg: SigmaLeg,
}

/// Splits each chart of `pair` into the closures of the given interior
/// components and certifies the morphism from their disjoint union.
pub fn decompose_interior(pair: &Arc<ModulusPair>, components: Vec<Vec<Ideal>>) -> Result<Decomposition, ModPairError> {
    if components.len() != pair.charts().len() {
        return Err(ModPairError::CertificateMismatch("one component list per chart expected".into()));
    }
    let mut charts = Vec::new();
    let mut maps = Vec::new();
    for (c, comps) in components.iter().enumerate() {
        let t = pair.chart(c);
        for (a, ja) in comps.iter().enumerate() {
            for (b, jb) in comps.iter().enumerate().skip(a + 1) {
                if !t.pres.ideal().sum(ja).sum(jb).saturate(&t.divisor).is_unit() {
                    return Err(ModPairError::NotDisjointOnInterior { a, b });
                }
            }
        }
        for j in comps {
            let closure = Presentation::new(t.pres.ideal().sum(j).saturate(&t.divisor));
            let (small, images) = eliminate_linear_vars(&closure, |_| true);
            let divisor = t.divisor.substitute(&images, small.ring());
            let divisor = if small.is_empty() { Poly::one(small.ring()) } else { divisor };
            let map = RingMap::new(t.pres.clone(), small.clone(), images)?;
            charts.push(Chart::new(small, divisor));
            maps.push(ChartMap { target_chart: c, map });
        }
    }
    let pieces = charts
        .iter()
        .map(|ch| ModulusPair::new(vec![ch.clone()], Vec::new()))
        .collect::<Result<Vec<_>, _>>()?;
    let union = Arc::new(ModulusPair::new(charts, Vec::new())?);
    let morphism = AmbientMorphism::from_chart_maps(union, pair.clone(), maps)?;
    let leg = SigmaLeg::certify(morphism, SigmaKind::ComponentClosure { components })?;
    Ok(Decomposition { pieces, leg })
}

impl fmt::Display for SigmaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SigmaKind::Identity => f.write_str("identity"),
            SigmaKind::BlowupInDivisor { centers } => {
                f.write_str("blow-up in divisor")?;
                for (c, center) in centers.iter().enumerate() {
                    match center {
                        None => write!(f, "; chart {c} kept")?,
                        Some(g) => {
                            let s: Vec<String> = g.iter().map(ToString::to_string).collect();
                            write!(f, "; chart {c} center <{}>", s.join(", "))?
                        }
                    }
                }
                Ok(())
            }
            SigmaKind::ComponentClosure { components } => {
                f.write_str("component closure")?;
                for (c, comps) in components.iter().enumerate() {
                    let s: Vec<String> = comps.iter().map(ToString::to_string).collect();
                    write!(f, "; chart {c} components {}", s.join(" | "))?;
                }
                Ok(())
            }
            SigmaKind::Composite(legs) => {
                write!(f, "composite of {} legs [", legs.len())?;
                for (i, l) in legs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{}", l.kind)?;
                }
                f.write_str("]")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_poly;

    fn pair(vars: &[&str], gens: &[&str], d: &str) -> Arc<ModulusPair> {
        let r = Ring::new(vars.iter().copied());
        let i = Ideal::new(&r, gens.iter().map(|g| parse_poly(&r, g).unwrap()).collect());
        Arc::new(ModulusPair::single(Presentation::new(i), parse_poly(&r, d).unwrap()).unwrap())
    }

    fn ps(p: &Arc<ModulusPair>, s: &[&str]) -> Vec<Poly> {
        s.iter().map(|g| parse_poly(p.chart(0).pres.ring(), g).unwrap()).collect()
    }

    #[test]
    fn blowup_of_corner_is_certified() {
        let p = pair(&["x", "t"], &[], "x*t");
        let leg = blowup_in_divisor(&p, vec![Some(ps(&p, &["x", "t"]))]).unwrap();
        assert_eq!(leg.source().charts().len(), 2);
        assert!(leg.morphism().is_minimal());
        assert_eq!(leg.interior_witnesses().len(), 2);
    }

    #[test]
    fn center_outside_divisor_is_rejected() {
        let p = pair(&["x", "t"], &[], "t");
        let err = blowup_in_divisor(&p, vec![Some(ps(&p, &["x"]))]).unwrap_err();
        assert!(matches!(err, ModPairError::CenterNotInDivisor { chart: 0, .. }));
    }

    #[test]
    fn identity_is_certified() {
        let p = pair(&["x", "y"], &["y^2 - x^3"], "x");
        let leg = SigmaLeg::identity(&p);
        assert!(matches!(leg.kind(), SigmaKind::Identity));
    }

    #[test]
    fn non_blowup_maps_are_rejected() {
        // x -> x^2 on the line is finite of degree 2, not a blow-up
        let src = pair(&["x"], &[], "x^2");
        let tgt = pair(&["y"], &[], "y");
        let m = AmbientMorphism::check_admissible(src.clone(), tgt, vec![(0, ps(&src, &["x^2"]))]).unwrap();
        assert!(SigmaLeg::certify(m, SigmaKind::BlowupInDivisor { centers: vec![None] }).is_err());
    }

    #[test]
    fn cusp_blowup() {
        let p = pair(&["x", "y"], &["y^2 - x^3"], "x");
        let leg = blowup_in_divisor(&p, vec![Some(ps(&p, &["x", "y"]))]).unwrap();
        let c0 = leg.source().chart(0);
        let z = Ideal::new(c0.pres.ring(), vec![parse_poly(c0.pres.ring(), "z^2 - x").unwrap(), parse_poly(c0.pres.ring(), "y - x*z").unwrap()]);
        assert!(c0.pres.ideal().equals(&z));
    }

    #[test]
    fn decomposition_of_crossing_lines() {
        let p = pair(&["x", "y"], &["x*y"], "x + y");
        let r = p.chart(0).pres.ring().clone();
        let jx = Ideal::new(&r, vec![parse_poly(&r, "x").unwrap()]);
        let jy = Ideal::new(&r, vec![parse_poly(&r, "y").unwrap()]);
        let d = decompose_interior(&p, vec![vec![jx.clone(), jy]]).unwrap();
        assert_eq!(d.pieces.len(), 2);
        let a = d.pieces[0].chart(0);
        assert_eq!(a.pres.ring().vars(), &["y".to_string()]);
        assert!(a.pres.ideal().is_zero());
        assert_eq!(a.divisor.to_string(), "y");
        let b = d.pieces[1].chart(0);
        assert_eq!(b.pres.ring().vars(), &["x".to_string()]);
        assert_eq!(b.divisor.to_string(), "x");
        assert!(matches!(d.leg.kind(), SigmaKind::ComponentClosure { .. }));

        let err = decompose_interior(&p, vec![vec![jx.clone(), jx]]).unwrap_err();
        assert!(matches!(err, ModPairError::NotDisjointOnInterior { .. }));
    }

    #[test]
    fn trivial_decomposition() {
        let p = pair(&["x"], &[], "x");
        let r = p.chart(0).pres.ring().clone();
        let d = decompose_interior(&p, vec![vec![Ideal::zero(&r), Ideal::unit(&r)]]).unwrap();
        assert!(d.pieces[0].same_as(&p));
        assert!(d.pieces[1].is_empty());
        let line = pair(&["x"], &[], "1");
        let jx = Ideal::new(&r, vec![Poly::var(&r, 0)]);
        let jx = jx.to_ring(line.chart(0).pres.ring()).unwrap();
        assert!(matches!(
            decompose_interior(&line, vec![vec![jx.clone(), jx]]),
            Err(ModPairError::NotDisjointOnInterior { .. })
        ));
    }
}
