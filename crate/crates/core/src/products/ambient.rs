use std::sync::Arc;

use crate::affine::{Presentation, RingMap};
use crate::exactalg::Poly;
use crate::modpair::{blowup_in_divisor, AmbientMorphism, Chart, ChartMap, Model, ModulusPair};

use super::base::{blocks, ProductBlock};
use super::ProductError;

/// Divisor data on one chart of an ambient product.
#[derive(Clone, Debug)]
pub struct ProductChart {
    pub block: usize,
    /// Index among the blow-up charts of the block, `None` if the block was
    /// not blown up.
    pub blowup_chart: Option<usize>,
    /// The two pulled-back divisors.
    pub d_x: Poly,
    pub d_t: Poly,
    /// Generator of the exceptional divisor (of `<d_x, d_t>` on this chart).
    pub e: Poly,
    /// `d_x * d_t / e`, the divisor of the product.
    pub y_inf: Poly,
}

/// `T ×ᵖ_S X`: the blow-up of the interior closure along the intersection of
/// the two pulled-back divisors.
#[derive(Clone, Debug)]
pub struct AmbientProduct {
    pub pair: Arc<ModulusPair>,
    /// The blocks with divisor `d_x * d_t`; the blow-down model of `pair`.
    pub base: Arc<ModulusPair>,
    pub blocks: Vec<ProductBlock>,
    /// Blow-up center `[d_x, d_t]` per block, `None` where it is principal.
    pub centers: Vec<Option<Vec<Poly>>>,
    pub charts: Vec<ProductChart>,
    pub to_x: AmbientMorphism,
    pub to_t: AmbientMorphism,
    pub f: AmbientMorphism,
    pub g: AmbientMorphism,
}

/// The identities behind the divisor `D_1 + D_2 - E` on one chart.
#[derive(Clone, Debug)]
pub struct KeyIdentities {
    /// `<d1, d2> + I = <e> + I`.
    pub intersection_is_e: bool,
    /// `<d1/e, d2/e> + I` is the unit ideal.
    pub residuals_coprime: bool,
    /// `d1 * d2 / e`, when `e` divides `d1 * d2`.
    pub d3: Option<Poly>,
}

impl KeyIdentities {
    pub fn holds(&self) -> bool {
        self.intersection_is_e && self.residuals_coprime && self.d3.is_some()
    }
}

pub(crate) fn quotient(pres: &Presentation, f: &Poly, g: &Poly) -> Option<Poly> {
    f.div_exact(g).or_else(|| pres.ideal().cofactor(f, g).map(|c| pres.reduce(&c)))
}

/// Checks the intersection and coprimality identities for two divisors
/// `d1`, `d2` whose intersection is claimed to be cut out by `e`.
pub fn key_identities(pres: &Presentation, d1: &Poly, d2: &Poly, e: &Poly) -> KeyIdentities {
    let i = pres.ideal();
    let both = i.add_gens([d1.clone(), d2.clone()]);
    let inter = i.add_gens([e.clone()]);
    let intersection_is_e = both.equals(&inter);
    let residuals_coprime = match (quotient(pres, d1, e), quotient(pres, d2, e)) {
        (Some(a), Some(b)) => i.add_gens([a, b]).is_unit(),
        _ => false,
    };
    let d3 = quotient(pres, &(d1 * d2), e);
    KeyIdentities { intersection_is_e, residuals_coprime, d3 }
}

/// Whether `d` bounds both `d1` and `d2` (`d ∈ <d1> ∩ <d2>` modulo the
/// ideal) and, if so, whether it also bounds `d3`.
pub fn common_bound_check(pres: &Presentation, d1: &Poly, d2: &Poly, d3: &Poly, d: &Poly) -> Option<bool> {
    let i = pres.ideal();
    let bounds = i.cofactor(d, d1).is_some() && i.cofactor(d, d2).is_some();
    bounds.then(|| i.cofactor(d, d3).is_some())
}

impl AmbientProduct {
    /// The identities for chart `k` with `D_1 = d_t`, `D_2 = d_x`.
    pub fn key_identities(&self, k: usize) -> KeyIdentities {
        let c = &self.charts[k];
        key_identities(&self.pair.chart(k).pres, &c.d_t, &c.d_x, &c.e)
    }

    /// `None` if `d` is not a common bound of `d_t` and `d_x` on chart `k`,
    /// otherwise whether it also bounds the product divisor.
    pub fn bound_check(&self, k: usize, d: &Poly) -> Option<bool> {
        let c = &self.charts[k];
        common_bound_check(&self.pair.chart(k).pres, &c.d_t, &c.d_x, &c.y_inf, d)
    }

    /// Model chart map from block `b` to chart `k`.
    pub fn blowdown(&self, k: usize) -> &RingMap {
        &self.pair.model().expect("ambient products carry their blow-down").charts[k].1
    }
}

/// The ambient product of `f: X -> S` and `g: T -> S`, chart pair by chart
/// pair. Blocks where one pulled-back divisor divides the other are not
/// blown up.
pub fn ambient_product(f: &AmbientMorphism, g: &AmbientMorphism) -> Result<AmbientProduct, ProductError> {
    let blocks = blocks(f, g)?;
    if blocks.is_empty() {
        return Err(ProductError::Invariant("no chart pairs over a common base chart".into()));
    }
    let base_charts: Vec<Chart> = blocks.iter().map(|b| Chart::new(b.pres.clone(), &b.d_x * &b.d_t)).collect();
    let base = Arc::new(ModulusPair::new(base_charts, Vec::new())?);
    let centers: Vec<Option<Vec<Poly>>> = blocks
        .iter()
        .map(|b| {
            let i = b.pres.ideal();
            let principal = b.pres.is_empty() || i.cofactor(&b.d_x, &b.d_t).is_some() || i.cofactor(&b.d_t, &b.d_x).is_some();
            (!principal).then(|| vec![b.d_x.clone(), b.d_t.clone()])
        })
        .collect();

    let (charts, overlaps, model): (Vec<Chart>, _, Vec<(usize, RingMap)>) = if centers.iter().all(Option::is_none) {
        let charts = base.charts().to_vec();
        let model = base.charts().iter().enumerate().map(|(b, c)| (b, RingMap::identity(&c.pres))).collect();
        (charts, Vec::new(), model)
    } else {
        let leg = blowup_in_divisor(&base, centers.clone())?;
        let src = leg.source();
        let model = src.model().expect("blow-ups carry their model").charts.clone();
        (src.charts().to_vec(), src.overlaps().to_vec(), model)
    };

    let mut data = Vec::with_capacity(charts.len());
    let mut seen = vec![0usize; blocks.len()];
    let mut out_charts = Vec::with_capacity(charts.len());
    for (chart, (b, down)) in charts.iter().zip(&model) {
        let blk = &blocks[*b];
        let d_x = down.apply(&blk.d_x);
        let d_t = down.apply(&blk.d_t);
        let i = chart.pres.ideal();
        let (blowup_chart, e) = match &centers[*b] {
            None => {
                let e = if chart.pres.is_empty() || i.cofactor(&d_x, &d_t).is_some() { d_t.clone() } else { d_x.clone() };
                (None, e)
            }
            Some(center) => {
                let idx = seen[*b];
                seen[*b] += 1;
                (Some(idx), down.apply(&center[idx]))
            }
        };
        let y_inf = if chart.pres.is_empty() {
            Poly::one(chart.pres.ring())
        } else {
            quotient(&chart.pres, &(&d_x * &d_t), &e)
                .ok_or_else(|| ProductError::Invariant("exceptional generator does not divide d_x * d_t".into()))?
        };
        out_charts.push(Chart::new(chart.pres.clone(), y_inf.clone()));
        data.push(ProductChart { block: *b, blowup_chart, d_x, d_t, e, y_inf });
    }

    let pair = Arc::new(ModulusPair::new(out_charts, overlaps)?.with_model(Model { base: base.clone(), charts: model.clone() }));
    let proj = |side: fn(&ProductBlock) -> (&RingMap, usize)| -> Vec<ChartMap> {
        model
            .iter()
            .map(|(b, down)| {
                let (m, target_chart) = side(&blocks[*b]);
                ChartMap { target_chart, map: m.then(down) }
            })
            .collect()
    };
    let to_x = AmbientMorphism::from_chart_maps(pair.clone(), f.source().clone(), proj(|b| (&b.from_x, b.x_chart)))?;
    let to_t = AmbientMorphism::from_chart_maps(pair.clone(), g.source().clone(), proj(|b| (&b.from_t, b.t_chart)))?;
    Ok(AmbientProduct { pair, base, blocks, centers, charts: data, to_x, to_t, f: f.clone(), g: g.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_poly;
    use crate::products::testutil::{pair, to};

    fn p(pres: &Presentation, s: &str) -> Poly {
        parse_poly(pres.ring(), s).unwrap()
    }

    #[test]
    fn lines_over_a_point() {
        let s = pair(&[], &[], "1");
        let x = pair(&["x"], &[], "x");
        let t = pair(&["t"], &[], "t");
        let prod = ambient_product(&to(&x, &s, &[]), &to(&t, &s, &[])).unwrap();
        assert_eq!(prod.pair.charts().len(), 2);
        let c0 = prod.pair.chart(0);
        // chart 0: e = x, t = x*z, divisor t
        assert!(c0.pres.eq_elements(&p(&c0.pres, "t"), &p(&c0.pres, "x*z")));
        assert_eq!(prod.charts[0].e.to_string(), "x");
        assert!(c0.pres.eq_elements(&c0.divisor, &p(&c0.pres, "x*z")));
        let c1 = prod.pair.chart(1);
        assert!(c1.pres.eq_elements(&p(&c1.pres, "x"), &p(&c1.pres, "t*z")));
        assert_eq!(prod.charts[1].e.to_string(), "t");
        assert!(c1.pres.eq_elements(&c1.divisor, &p(&c1.pres, "x")));
        for k in 0..2 {
            assert!(prod.key_identities(k).holds());
            let d = &prod.charts[k].d_x * &prod.charts[k].d_t;
            assert_eq!(prod.bound_check(k, &d), Some(true));
        }
    }

    #[test]
    fn minimal_factor_needs_no_blowup() {
        let s = pair(&["s"], &[], "s");
        let x = pair(&["s", "x"], &[], "s");
        let prod = ambient_product(&to(&x, &s, &["s"]), &AmbientMorphism::identity(&s)).unwrap();
        assert_eq!(prod.pair.charts().len(), 1);
        assert!(prod.centers[0].is_none());
        let c = prod.pair.chart(0);
        assert_eq!(c.pres.ring().vars(), &["s".to_string(), "x".to_string()]);
        assert!(c.pres.ideal().is_zero());
        assert_eq!(c.divisor.to_string(), "s");
    }

    #[test]
    fn principal_intersection_gives_one_chart() {
        let s = pair(&["s"], &[], "s");
        let x = pair(&["x"], &[], "x^2");
        let t = pair(&["t"], &[], "t");
        // X∞ pulled back contains T∞: x^2 against t = x on the closure
        let prod = ambient_product(&to(&x, &s, &["x"]), &to(&t, &s, &["t"])).unwrap();
        assert_eq!(prod.pair.charts().len(), 1);
        assert!(prod.key_identities(0).holds());
    }

    #[test]
    fn projections_are_admissible_and_interior_is_the_product() {
        let s = pair(&["s"], &[], "s");
        let x = pair(&["s", "x"], &[], "s*x");
        let t = pair(&["s", "t"], &[], "s*t");
        let prod = ambient_product(&to(&x, &s, &["s"]), &to(&t, &s, &["s"])).unwrap();
        assert!(prod.pair.charts().len() >= 2);
        for k in 0..prod.pair.charts().len() {
            assert!(prod.key_identities(k).holds(), "chart {k}");
        }
        let fx = prod.to_x.then(&prod.f).unwrap();
        let gt = prod.to_t.then(&prod.g).unwrap();
        assert!(fx.equal_on_interior(&gt));
    }
}
