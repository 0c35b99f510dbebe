use std::sync::Arc;

use crate::affine::RingMap;
use crate::exactalg::Poly;
use crate::modpair::{blowup_in_divisor, AmbientMorphism, ChartMap, ModulusPair, SigmaLeg};

use super::ambient::AmbientProduct;
use super::ProductError;

/// How [`fibre_fill_in`] treats source charts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum FillStrategy {
    /// Lift directly where one pulled-back divisor divides the other, blow
    /// up the remaining charts.
    #[default]
    Auto,
    /// Fail unless every chart lifts directly.
    Direct,
    /// Blow up every chart lying over a blown-up block.
    ForceBlowup,
}

/// A morphism into the ambient product from a certified blow-up of the
/// source of a commuting square.
#[derive(Clone, Debug)]
pub struct FillIn {
    /// `A' -> A`; the identity when every chart lifts directly.
    pub sigma: SigmaLeg,
    /// `A' -> T ×ᵖ_S X`.
    pub lift: AmbientMorphism,
}

enum Plan {
    /// Lift into the given product chart, with the ratio image if it is a
    /// blow-up chart.
    Direct { chart: usize, ratio: Option<Poly> },
    BlowUp { block: usize },
}

fn same(a: &Arc<ModulusPair>, b: &Arc<ModulusPair>) -> bool {
    Arc::ptr_eq(a, b) || a.same_as(b)
}

fn product_chart(prod: &AmbientProduct, block: usize, blowup_chart: Option<usize>) -> usize {
    prod.charts
        .iter()
        .position(|c| c.block == block && c.blowup_chart == blowup_chart)
        .expect("every block has its charts")
}

/// Factors the square `A -> X`, `A -> T` over `S` through the ambient
/// product, blowing up `A` along the pulled-back intersection where no
/// single product chart receives a source chart.
pub fn fibre_fill_in(
    prod: &AmbientProduct,
    a_to_x: &AmbientMorphism,
    a_to_t: &AmbientMorphism,
    strategy: FillStrategy,
) -> Result<FillIn, ProductError> {
    if !same(a_to_x.source(), a_to_t.source())
        || !same(a_to_x.target(), prod.f.source())
        || !same(a_to_t.target(), prod.g.source())
    {
        return Err(ProductError::SquareDoesNotCommute);
    }
    let via_x = a_to_x.then(&prod.f)?;
    let via_t = a_to_t.then(&prod.g)?;
    if !via_x.equal_on_interior(&via_t) {
        return Err(ProductError::SquareDoesNotCommute);
    }
    let a = a_to_x.source().clone();

    let mut psis = Vec::with_capacity(a.charts().len());
    let mut plans = Vec::with_capacity(a.charts().len());
    let mut centers = Vec::with_capacity(a.charts().len());
    for k in 0..a.charts().len() {
        let (cx, ct) = (a_to_x.chart_map(k), a_to_t.chart_map(k));
        let b = prod
            .blocks
            .iter()
            .position(|blk| blk.x_chart == cx.target_chart && blk.t_chart == ct.target_chart)
            .ok_or(ProductError::SquareDoesNotCommute)?;
        let blk = &prod.blocks[b];
        let chart = a.chart(k);
        let images = blk.images_from_factors(cx.map.images(), ct.map.images());
        let psi = RingMap::new(blk.pres.clone(), chart.pres.clone(), images)?;
        let px = psi.apply(&blk.d_x);
        let pt = psi.apply(&blk.d_t);
        let ideal = chart.pres.ideal();
        let plan = match &prod.centers[b] {
            None => Plan::Direct { chart: product_chart(prod, b, None), ratio: None },
            Some(_) if strategy == FillStrategy::ForceBlowup && !chart.is_empty() => Plan::BlowUp { block: b },
            Some(_) => {
                if let Some(c) = ideal.cofactor(&pt, &px) {
                    Plan::Direct { chart: product_chart(prod, b, Some(0)), ratio: Some(chart.pres.reduce(&c)) }
                } else if let Some(c) = ideal.cofactor(&px, &pt) {
                    Plan::Direct { chart: product_chart(prod, b, Some(1)), ratio: Some(chart.pres.reduce(&c)) }
                } else if strategy == FillStrategy::Direct {
                    return Err(ProductError::NoDirectLift { chart: k });
                } else {
                    Plan::BlowUp { block: b }
                }
            }
        };
        centers.push(matches!(plan, Plan::BlowUp { .. }).then(|| vec![px.clone(), pt.clone()]));
        psis.push(psi);
        plans.push(plan);
    }

    let sigma = if centers.iter().all(Option::is_none) {
        SigmaLeg::identity(&a)
    } else {
        blowup_in_divisor(&a, centers)?
    };
    let src = sigma.source().clone();
    let mut seen = vec![0usize; a.charts().len()];
    let mut charts = Vec::with_capacity(src.charts().len());
    for k2 in 0..src.charts().len() {
        let cm = sigma.morphism().chart_map(k2);
        let k = cm.target_chart;
        let down = &cm.map;
        let here = src.chart(k2);
        let base_images: Vec<Poly> = psis[k].images().iter().map(|p| down.apply(p)).collect();
        let (target, extra) = match &plans[k] {
            Plan::Direct { chart, ratio } => (*chart, ratio.as_ref().map(|r| down.apply(r))),
            Plan::BlowUp { block } => {
                let idx = seen[k];
                seen[k] += 1;
                // the blow-up chart `idx` of A has the other ratio as its last variable
                let ratio = here.pres.var(here.pres.ring().nvars() - 1);
                (product_chart(prod, *block, Some(idx)), Some(ratio))
            }
        };
        let mut images = base_images;
        images.extend(extra);
        let map = RingMap::new(prod.pair.chart(target).pres.clone(), here.pres.clone(), images)?;
        charts.push(ChartMap { target_chart: target, map });
    }
    let lift = AmbientMorphism::from_chart_maps(src, prod.pair.clone(), charts)?;
    Ok(FillIn { sigma, lift })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::products::ambient_product;
    use crate::products::testutil::{pair, to};

    fn lines() -> AmbientProduct {
        let s = pair(&[], &[], "1");
        let x = pair(&["x"], &[], "x");
        let t = pair(&["t"], &[], "t");
        ambient_product(&to(&x, &s, &[]), &to(&t, &s, &[])).unwrap()
    }

    fn check(prod: &AmbientProduct, ax: &AmbientMorphism, at: &AmbientMorphism, fill: &FillIn) {
        let lx = fill.lift.then(&prod.to_x).unwrap();
        let lt = fill.lift.then(&prod.to_t).unwrap();
        assert!(lx.equal_on_interior(&fill.sigma.morphism().then(ax).unwrap()));
        assert!(lt.equal_on_interior(&fill.sigma.morphism().then(at).unwrap()));
    }

    #[test]
    fn diagonal_lifts_directly() {
        let prod = lines();
        let a = pair(&["a"], &[], "a");
        let ax = to(&a, prod.f.source(), &["a"]);
        let at = to(&a, prod.g.source(), &["a"]);
        let fill = fibre_fill_in(&prod, &ax, &at, FillStrategy::Auto).unwrap();
        assert!(matches!(fill.sigma.kind(), crate::modpair::SigmaKind::Identity));
        let img = fill.lift.chart_map(0).map.images().last().unwrap().clone();
        assert!(img.is_one());
        check(&prod, &ax, &at, &fill);

        let forced = fibre_fill_in(&prod, &ax, &at, FillStrategy::ForceBlowup).unwrap();
        check(&prod, &ax, &at, &forced);
        let pre = forced.sigma.morphism().then(&fill.lift).unwrap();
        assert!(pre.equal_on_interior(&forced.lift));
    }

    #[test]
    fn product_lifts_to_identity() {
        let prod = lines();
        let fill = fibre_fill_in(&prod, &prod.to_x, &prod.to_t, FillStrategy::Direct).unwrap();
        assert!(fill.lift.equal_on_interior(&AmbientMorphism::identity(&prod.pair)));
    }

    #[test]
    fn coprime_legs_need_a_cover() {
        let prod = lines();
        let a = pair(&["a"], &[], "a*(a - 1)");
        let ax = to(&a, prod.f.source(), &["a"]);
        let at = to(&a, prod.g.source(), &["a - 1"]);
        assert!(matches!(
            fibre_fill_in(&prod, &ax, &at, FillStrategy::Direct),
            Err(ProductError::NoDirectLift { chart: 0 })
        ));
        let fill = fibre_fill_in(&prod, &ax, &at, FillStrategy::Auto).unwrap();
        assert_eq!(fill.sigma.source().charts().len(), 2);
        check(&prod, &ax, &at, &fill);
    }

    #[test]
    fn non_commuting_square_is_rejected() {
        let s = pair(&["s"], &[], "s");
        let x = pair(&["x"], &[], "x");
        let t = pair(&["t"], &[], "t");
        let prod = ambient_product(&to(&x, &s, &["x"]), &to(&t, &s, &["t"])).unwrap();
        let a = pair(&["a"], &[], "a^2");
        let ax = to(&a, &x, &["a"]);
        let at = to(&a, &t, &["a^2"]);
        assert!(matches!(fibre_fill_in(&prod, &ax, &at, FillStrategy::Auto), Err(ProductError::SquareDoesNotCommute)));
    }
}
