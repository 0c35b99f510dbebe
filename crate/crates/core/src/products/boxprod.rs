use std::sync::Arc;

use crate::affine::RingMap;
use crate::exactalg::Poly;
use crate::modpair::{blowup_in_divisor, AmbientMorphism, Chart, ChartMap, ModulusPair, SigmaLeg};

use super::ambient::{ambient_product, AmbientProduct};
use super::base::{blocks, ProductBlock};
use super::ProductError;

/// `X ⊠_S T`: the interior closure with divisor `X∞ + T∞ - S∞`.
#[derive(Clone, Debug)]
pub struct BoxProduct {
    pub pair: Arc<ModulusPair>,
    pub blocks: Vec<ProductBlock>,
    /// Per block, `h_x` with `d_x ≡ h_x * d_s`.
    pub h_x: Vec<Poly>,
    pub to_x: AmbientMorphism,
    pub to_t: AmbientMorphism,
}

impl BoxProduct {
    /// Whether `divisor * d_s ≡ d_x * d_t` on block `b`.
    pub fn divisor_identity_holds(&self, b: usize) -> bool {
        let blk = &self.blocks[b];
        let lhs = &self.pair.chart(b).divisor * &blk.d_s;
        blk.pres.eq_elements(&lhs, &(&blk.d_x * &blk.d_t))
    }
}

/// The box product of `f: X -> S` and `g: T -> S`; no blow-up is performed.
pub fn box_product(f: &AmbientMorphism, g: &AmbientMorphism) -> Result<BoxProduct, ProductError> {
    let blocks = blocks(f, g)?;
    if blocks.is_empty() {
        return Err(ProductError::Invariant("no chart pairs over a common base chart".into()));
    }
    let mut charts = Vec::with_capacity(blocks.len());
    let mut h_x = Vec::with_capacity(blocks.len());
    for b in &blocks {
        let h = b.from_x.apply(&f.witnesses()[b.x_chart].admissible_cofactor);
        let h = b.pres.reduce(&h);
        let divisor = if b.pres.is_empty() { Poly::one(b.pres.ring()) } else { &h * &b.d_t };
        charts.push(Chart::new(b.pres.clone(), divisor));
        h_x.push(h);
    }
    let pair = Arc::new(ModulusPair::new(charts, Vec::new())?);
    let proj = |side: fn(&ProductBlock) -> (&RingMap, usize)| -> Vec<ChartMap> {
        blocks
            .iter()
            .map(|b| {
                let (m, target_chart) = side(b);
                ChartMap { target_chart, map: m.clone() }
            })
            .collect()
    };
    let to_x = AmbientMorphism::from_chart_maps(pair.clone(), f.source().clone(), proj(|b| (&b.from_x, b.x_chart)))?;
    let to_t = AmbientMorphism::from_chart_maps(pair.clone(), g.source().clone(), proj(|b| (&b.from_t, b.t_chart)))?;
    Ok(BoxProduct { pair, blocks, h_x, to_x, to_t })
}

/// The comparison `X ⊠_S T -> X × T` as a roof: a certified blow-up of the
/// box product and an ambient map from it to the ambient product, both the
/// identity on the interior.
#[derive(Clone, Debug)]
pub struct RoofComparison {
    pub box_product: BoxProduct,
    pub times: AmbientProduct,
    /// `(Q̄, q*P∞) -> X ⊠ T`.
    pub sigma: SigmaLeg,
    /// `(Q̄, q*P∞) -> X × T`, the identity on total spaces.
    pub ambient: AmbientMorphism,
}

pub fn box_to_times(f: &AmbientMorphism, g: &AmbientMorphism) -> Result<RoofComparison, ProductError> {
    let box_product = box_product(f, g)?;
    let times = ambient_product(f, g)?;
    let sigma = blowup_in_divisor(&box_product.pair, times.centers.clone())?;
    let src = sigma.source().clone();
    if src.charts().len() != times.pair.charts().len() {
        return Err(ProductError::Invariant("blown-up box and ambient product have different charts".into()));
    }
    let charts = src
        .charts()
        .iter()
        .zip(times.pair.charts())
        .enumerate()
        .map(|(k, (s, t))| {
            let images = (0..s.pres.ring().nvars()).map(|v| s.pres.var(v)).collect();
            let map = RingMap::new(t.pres.clone(), s.pres.clone(), images)?;
            Ok(ChartMap { target_chart: k, map })
        })
        .collect::<Result<Vec<_>, ProductError>>()?;
    let ambient = AmbientMorphism::from_chart_maps(src, times.pair.clone(), charts)
        .map_err(|e| ProductError::Invariant(format!("pulled-back box divisor does not bound the product divisor: {e}")))?;
    Ok(RoofComparison { box_product, times, sigma, ambient })
}
