use std::fmt;
use std::sync::Arc;

use crate::affine::RingMap;
use crate::exactalg::Poly;

use super::{ModPairError, ModulusPair};

/// Source chart `k` maps into `target_chart`; `map` is the pullback from the
/// target chart ring to the source chart ring.
#[derive(Clone, Debug)]
pub struct ChartMap {
    pub target_chart: usize,
    pub map: RingMap,
}

/// Membership witnesses behind the verdicts on one source chart.
#[derive(Clone, Debug)]
pub struct ChartWitness {
    /// `c` with `g_X ≡ c * φ(g_Y)` modulo the source ideal.
    pub admissible_cofactor: Poly,
    /// `k` with `φ(g_Y) ≡ k * g_X`, present iff minimal on this chart.
    pub minimal_cofactor: Option<Poly>,
}

/// Admissible morphism of modulus pairs given chart by chart.
#[derive(Clone, Debug)]
pub struct AmbientMorphism {
    source: Arc<ModulusPair>,
    target: Arc<ModulusPair>,
    charts: Vec<ChartMap>,
    witnesses: Vec<ChartWitness>,
}

impl AmbientMorphism {
    /// Builds the chart maps from variable images (one list of images of the
    /// target chart variables per source chart) and verifies admissibility.
    pub fn check_admissible(
        source: Arc<ModulusPair>,
        target: Arc<ModulusPair>,
        maps: Vec<(usize, Vec<Poly>)>,
    ) -> Result<AmbientMorphism, ModPairError> {
        if maps.len() != source.charts().len() {
            return Err(ModPairError::ChartCount { expected: source.charts().len(), got: maps.len() });
        }
        let mut charts = Vec::with_capacity(maps.len());
        for (k, (t, images)) in maps.into_iter().enumerate() {
            if t >= target.charts().len() {
                return Err(ModPairError::BadChartIndex { chart: k, target: t });
            }
            let map = RingMap::new(target.chart(t).pres.clone(), source.chart(k).pres.clone(), images)?;
            charts.push(ChartMap { target_chart: t, map });
        }
        AmbientMorphism::from_chart_maps(source, target, charts)
    }

    /// Verifies admissibility of already validated chart maps.
    pub fn from_chart_maps(
        source: Arc<ModulusPair>,
        target: Arc<ModulusPair>,
        charts: Vec<ChartMap>,
    ) -> Result<AmbientMorphism, ModPairError> {
        if charts.len() != source.charts().len() {
            return Err(ModPairError::ChartCount { expected: source.charts().len(), got: charts.len() });
        }
        let mut witnesses = Vec::with_capacity(charts.len());
        for (k, cm) in charts.iter().enumerate() {
            if cm.target_chart >= target.charts().len() {
                return Err(ModPairError::BadChartIndex { chart: k, target: cm.target_chart });
            }
            let src = source.chart(k);
            let pulled = cm.map.apply(&target.chart(cm.target_chart).divisor);
            let ideal = src.pres.ideal();
            let admissible_cofactor =
                ideal.cofactor(&src.divisor, &pulled).ok_or_else(|| ModPairError::NotAdmissible {
                    chart: k,
                    divisor: src.divisor.to_string(),
                    pulled: pulled.to_string(),
                })?;
            let minimal_cofactor = ideal.cofactor(&pulled, &src.divisor);
            witnesses.push(ChartWitness { admissible_cofactor, minimal_cofactor });
        }
        Ok(AmbientMorphism { source, target, charts, witnesses })
    }

    pub fn identity(pair: &Arc<ModulusPair>) -> AmbientMorphism {
        let charts = pair
            .charts()
            .iter()
            .enumerate()
            .map(|(k, c)| ChartMap { target_chart: k, map: RingMap::identity(&c.pres) })
            .collect();
        AmbientMorphism::from_chart_maps(pair.clone(), pair.clone(), charts).expect("identity is minimal")
    }

    pub fn source(&self) -> &Arc<ModulusPair> {
        &self.source
    }

    pub fn target(&self) -> &Arc<ModulusPair> {
        &self.target
    }

    pub fn charts(&self) -> &[ChartMap] {
        &self.charts
    }

    pub fn chart_map(&self, k: usize) -> &ChartMap {
        &self.charts[k]
    }

    pub fn witnesses(&self) -> &[ChartWitness] {
        &self.witnesses
    }

    pub fn is_minimal(&self) -> bool {
        self.witnesses.iter().all(|w| w.minimal_cofactor.is_some())
    }

    /// Fails with [`ModPairError::NotMinimal`] naming the first bad chart.
    pub fn require_minimal(&self) -> Result<(), ModPairError> {
        for (k, w) in self.witnesses.iter().enumerate() {
            if w.minimal_cofactor.is_none() {
                return Err(ModPairError::NotMinimal {
                    chart: k,
                    divisor: self.source.chart(k).divisor.to_string(),
                    pulled: self.pulled_divisor(k).to_string(),
                });
            }
        }
        Ok(())
    }

    /// `φ(g_Y)` on source chart `k`.
    pub fn pulled_divisor(&self, k: usize) -> Poly {
        let cm = &self.charts[k];
        cm.map.apply(&self.target.chart(cm.target_chart).divisor)
    }

    /// `g ∘ self` for `self: X -> Y`, `g: Y -> Z`.
    pub fn then(&self, g: &AmbientMorphism) -> Result<AmbientMorphism, ModPairError> {
        if !(Arc::ptr_eq(&self.target, &g.source) || self.target.same_as(&g.source)) {
            return Err(ModPairError::NotComposable("target of the first is not the source of the second".into()));
        }
        let charts = self
            .charts
            .iter()
            .map(|cm| {
                let gm = &g.charts[cm.target_chart];
                let images = gm.map.images().iter().map(|p| cm.map.apply(p)).collect();
                let map = RingMap::new(g.target.chart(gm.target_chart).pres.clone(), cm.map.target().clone(), images)?;
                Ok(ChartMap { target_chart: gm.target_chart, map })
            })
            .collect::<Result<Vec<_>, ModPairError>>()?;
        AmbientMorphism::from_chart_maps(self.source.clone(), g.target.clone(), charts)
    }

    /// Whether the two morphisms agree on the interior of the source. Charts
    /// mapped to different target charts are compared through the target's
    /// blow-down model, which is injective on interiors.
    pub fn equal_on_interior(&self, other: &AmbientMorphism) -> bool {
        let same_src = Arc::ptr_eq(&self.source, &other.source) || self.source.same_as(&other.source);
        let same_tgt = Arc::ptr_eq(&self.target, &other.target) || self.target.same_as(&other.target);
        if !same_src || !same_tgt {
            return false;
        }
        for (i, (a, b)) in self.charts.iter().zip(&other.charts).enumerate() {
            let closure = self.source.chart(i).interior_closure();
            if closure.is_unit() {
                continue;
            }
            let bmap = b.map.retarget(a.map.target().clone()).expect("same source chart ring");
            if a.target_chart == b.target_chart {
                if !a.map.agrees_with(&bmap, &closure) {
                    return false;
                }
                continue;
            }
            let (ra, ca, ma) = self.target.root_of(a.target_chart);
            let (rb, cb, mb) = self.target.root_of(b.target_chart);
            if !Arc::ptr_eq(&ra, &rb) || ca != cb {
                return false;
            }
            if !ma.then(&a.map).agrees_with(&mb.then(&bmap), &closure) {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for AmbientMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, cm) in self.charts.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            let vars = cm.map.source().ring().vars();
            let body: Vec<String> = vars.iter().zip(cm.map.images()).map(|(v, p)| format!("{v} -> {p}")).collect();
            write!(f, "chart {k} -> {}: {{ {} }}", cm.target_chart, body.join("; "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::Presentation;
    use crate::exactalg::{parse_poly, Ideal, Ring};

    fn line(var: &str, d: &str) -> Arc<ModulusPair> {
        let r = Ring::new([var]);
        Arc::new(ModulusPair::single(Presentation::free(&r), parse_poly(&r, d).unwrap()).unwrap())
    }

    fn map(src: &Arc<ModulusPair>, tgt: &Arc<ModulusPair>, img: &str) -> Result<AmbientMorphism, ModPairError> {
        let p = parse_poly(src.chart(0).pres.ring(), img).unwrap();
        AmbientMorphism::check_admissible(src.clone(), tgt.clone(), vec![(0, vec![p])])
    }

    #[test]
    fn admissibility_examples() {
        let m = map(&line("x", "x^2"), &line("y", "y"), "x^2").unwrap();
        assert!(m.is_minimal());
        let err = map(&line("x", "x"), &line("y", "y"), "x^2").unwrap_err();
        assert!(matches!(err, ModPairError::NotAdmissible { chart: 0, .. }));
        let m = map(&line("x", "x^2"), &line("y", "y"), "x").unwrap();
        assert!(!m.is_minimal());
        assert_eq!(m.witnesses()[0].admissible_cofactor.to_string(), "x");
    }

    #[test]
    fn unit_rescaling_keeps_verdicts() {
        let a = map(&line("x", "x^2"), &line("y", "y"), "x").unwrap();
        let b = map(&line("x", "-3*x^2"), &line("y", "2*y"), "x").unwrap();
        assert_eq!(a.is_minimal(), b.is_minimal());
    }

    #[test]
    fn composition_and_interior_equality() {
        let x = line("x", "x^3");
        let y = line("y", "y^2");
        let z = line("z", "z");
        let f = map(&x, &y, "x").unwrap();
        let g = map(&y, &z, "y^2").unwrap();
        let gf = f.then(&g).unwrap();
        assert_eq!(gf.chart_map(0).map.images()[0].to_string(), "x^2");
        assert!(!gf.is_minimal());
        assert!(f.equal_on_interior(&f));
        assert!(!f.equal_on_interior(&map(&x, &y, "-x").unwrap()));
        assert!(AmbientMorphism::identity(&x).is_minimal());
    }

    #[test]
    fn interior_equality_ignores_boundary_components() {
        let r = Ring::new(["x", "y"]);
        let i = Ideal::new(&r, vec![parse_poly(&r, "x*y").unwrap()]);
        let src = Arc::new(ModulusPair::single(Presentation::new(i), parse_poly(&r, "x + y").unwrap()).unwrap());
        let tgt = line("w", "1");
        let f = AmbientMorphism::check_admissible(src.clone(), tgt.clone(), vec![(0, vec![parse_poly(&r, "x").unwrap()])]).unwrap();
        let g = AmbientMorphism::check_admissible(src.clone(), tgt.clone(), vec![(0, vec![parse_poly(&r, "x + y").unwrap()])]).unwrap();
        // they agree on the x-axis component only
        assert!(!f.equal_on_interior(&g));
        let h = AmbientMorphism::check_admissible(src.clone(), tgt, vec![(0, vec![parse_poly(&r, "x + 0*x*y").unwrap()])]).unwrap();
        assert!(f.equal_on_interior(&h));
    }
}
