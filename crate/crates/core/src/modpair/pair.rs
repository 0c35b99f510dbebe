use std::fmt;
use std::sync::Arc;

use crate::affine::{Presentation, RingMap};
use crate::exactalg::{Ideal, Poly};

use super::ModPairError;

/// One affine chart with the local generator of the divisor.
#[derive(Clone, Debug)]
pub struct Chart {
    pub pres: Presentation,
    pub divisor: Poly,
}

impl Chart {
    pub fn new(pres: Presentation, divisor: Poly) -> Self {
        assert!(divisor.ring().same_as(pres.ring()), "divisor outside chart ring");
        Chart { pres, divisor }
    }

    pub fn is_empty(&self) -> bool {
        self.pres.is_empty()
    }

    /// `A[u] / (I, u*g - 1)`.
    pub fn interior(&self) -> (Presentation, RingMap) {
        self.pres
            .localize(&self.divisor)
            .expect("a Cartier divisor generator is never zero on a nonempty chart")
    }

    /// Ideal of the closure of the interior, `I : g^∞`.
    pub fn interior_closure(&self) -> Ideal {
        self.pres.ideal().saturate(&self.divisor)
    }

    /// Whether the interior is empty.
    pub fn interior_is_empty(&self) -> bool {
        self.interior_closure().is_unit()
    }

    /// `<g> + I`.
    pub fn divisor_ideal(&self) -> Ideal {
        self.pres.ideal().add_gens([self.divisor.clone()])
    }
}

/// Chart `j` mapped into chart `i` localized at an element of chart `i`.
#[derive(Clone, Debug)]
pub struct Overlap {
    pub i: usize,
    pub j: usize,
    pub map: RingMap,
}

/// A blow-down to another pair that is injective on interiors. Chart `k`
/// lies over `base` chart `charts[k].0` via the ring map `charts[k].1`.
#[derive(Clone, Debug)]
pub struct Model {
    pub base: Arc<ModulusPair>,
    pub charts: Vec<(usize, RingMap)>,
}

/// `X = (X̄, X∞)` covered by affine charts. Pairs without overlaps are
/// disjoint unions of their charts.
#[derive(Clone, Debug)]
pub struct ModulusPair {
    charts: Vec<Chart>,
    overlaps: Vec<Overlap>,
    model: Option<Model>,
}

impl ModulusPair {
    /// Checks that each divisor generator is a nonzerodivisor and that
    /// generators agree up to units on every overlap.
    pub fn new(charts: Vec<Chart>, overlaps: Vec<Overlap>) -> Result<ModulusPair, ModPairError> {
        if charts.is_empty() {
            return Err(ModPairError::NoCharts);
        }
        for (k, c) in charts.iter().enumerate() {
            if !c.pres.ideal().is_nonzerodivisor(&c.divisor) {
                return Err(ModPairError::DivisorNotCartier { chart: k, divisor: c.divisor.to_string() });
            }
        }
        for o in &overlaps {
            let tgt = o.map.target();
            let gi = charts[o.i].divisor.to_ring(tgt.ring()).expect("overlap ring extends chart i");
            let gj = o.map.apply(&charts[o.j].divisor);
            let a = tgt.ideal().add_gens([gi.clone()]);
            let b = tgt.ideal().add_gens([gj.clone()]);
            if !(a.contains(&gj) && b.contains(&gi)) {
                return Err(ModPairError::DivisorsDisagreeOnOverlap { i: o.i, j: o.j });
            }
        }
        Ok(ModulusPair { charts, overlaps, model: None })
    }

    pub fn single(pres: Presentation, divisor: Poly) -> Result<ModulusPair, ModPairError> {
        ModulusPair::new(vec![Chart::new(pres, divisor)], Vec::new())
    }

    pub(crate) fn with_model(mut self, model: Model) -> Self {
        assert_eq!(model.charts.len(), self.charts.len());
        self.model = Some(model);
        self
    }

    pub fn charts(&self) -> &[Chart] {
        &self.charts
    }

    pub fn chart(&self, k: usize) -> &Chart {
        &self.charts[k]
    }

    pub fn overlaps(&self) -> &[Overlap] {
        &self.overlaps
    }

    pub fn model(&self) -> Option<&Model> {
        self.model.as_ref()
    }

    pub fn is_single_chart(&self) -> bool {
        self.charts.len() == 1
    }

    /// Chart-wise interiors with their localization maps.
    pub fn interior(&self) -> Vec<(Presentation, RingMap)> {
        self.charts.iter().map(Chart::interior).collect()
    }

    /// The empty pair: one chart with the zero ring.
    pub fn empty() -> ModulusPair {
        let ring = crate::exactalg::Ring::constants();
        let chart = Chart::new(Presentation::new(Ideal::unit(&ring)), Poly::one(&ring));
        ModulusPair { charts: vec![chart], overlaps: Vec::new(), model: None }
    }

    pub fn is_empty(&self) -> bool {
        self.charts.iter().all(Chart::is_empty)
    }

    /// Chart-list concatenation without gluing. Empty charts are dropped
    /// (the coproduct of empty pairs is [`ModulusPair::empty`]).
    pub fn coproduct(&self, other: &ModulusPair) -> ModulusPair {
        let mut charts = Vec::new();
        let mut overlaps = Vec::new();
        for p in [self, other] {
            let mut index = vec![usize::MAX; p.charts.len()];
            for (k, c) in p.charts.iter().enumerate() {
                if !c.is_empty() {
                    index[k] = charts.len();
                    charts.push(c.clone());
                }
            }
            for o in &p.overlaps {
                if index[o.i] != usize::MAX && index[o.j] != usize::MAX {
                    overlaps.push(Overlap { i: index[o.i], j: index[o.j], map: o.map.clone() });
                }
            }
        }
        if charts.is_empty() {
            return ModulusPair::empty();
        }
        ModulusPair { charts, overlaps, model: None }
    }

    /// Structural equality: same chart rings, equal ideals, divisors
    /// generating the same ideal modulo the chart ideal.
    pub fn same_as(&self, other: &ModulusPair) -> bool {
        self.charts.len() == other.charts.len()
            && self.charts.iter().zip(&other.charts).all(|(a, b)| {
                a.pres.same_as(&b.pres) && {
                    let da = a.divisor_ideal();
                    let db = b.divisor_ideal();
                    da.equals(&db)
                }
            })
    }

    /// Follows blow-down models to the root: the root pair, the root chart
    /// under chart `k`, and the composite ring map root chart -> chart `k`.
    pub fn root_of(self: &Arc<Self>, k: usize) -> (Arc<ModulusPair>, usize, RingMap) {
        let mut pair = self.clone();
        let mut chart = k;
        let mut map = RingMap::identity(&self.charts[k].pres);
        while let Some(m) = pair.model.clone() {
            let (bk, down) = &m.charts[chart];
            map = down.then(&map);
            chart = *bk;
            pair = m.base.clone();
        }
        (pair, chart, map)
    }
}

impl fmt::Display for ModulusPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.charts.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "chart {k}: {} ; divisor {}", c.pres, c.divisor)?;
            if c.is_empty() {
                f.write_str(" (empty)")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{parse_poly, Ring};

    fn chart(vars: &[&str], gens: &[&str], d: &str) -> Chart {
        let r = Ring::new(vars.iter().copied());
        let i = Ideal::new(&r, gens.iter().map(|g| parse_poly(&r, g).unwrap()).collect());
        Chart::new(Presentation::new(i), parse_poly(&r, d).unwrap())
    }

    #[test]
    fn cartier_checks() {
        assert!(ModulusPair::new(vec![chart(&["x"], &[], "x")], vec![]).is_ok());
        assert!(ModulusPair::new(vec![chart(&["x", "y"], &["x*y"], "x + y")], vec![]).is_ok());
        let err = ModulusPair::new(vec![chart(&["x", "y"], &["x*y"], "x")], vec![]).unwrap_err();
        assert!(matches!(err, ModPairError::DivisorNotCartier { chart: 0, .. }));
    }

    #[test]
    fn interiors() {
        let c = chart(&["x", "y"], &["x*y"], "x + y");
        let (loc, _) = c.interior();
        let e = parse_poly(loc.ring(), "u*x").unwrap();
        assert!(loc.eq_elements(&e.pow(2), &e));
        assert!(!loc.is_zero(&e));
        assert!(!loc.eq_elements(&e, &Poly::one(loc.ring())));
        let empty_modulus = chart(&["x"], &[], "1");
        assert!(!empty_modulus.interior_is_empty());
    }

    #[test]
    fn coproduct_concatenates() {
        let p = ModulusPair::new(vec![chart(&["x"], &[], "x")], vec![]).unwrap();
        let c = p.coproduct(&p);
        assert_eq!(c.charts().len(), 2);
        assert!(!c.same_as(&p));
        assert!(p.coproduct(&ModulusPair::empty()).same_as(&p));
        assert!(ModulusPair::empty().coproduct(&ModulusPair::empty()).is_empty());
    }
}
