use crate::affine::RingMap;
use crate::exactalg::Poly;
use crate::modpair::{AmbientMorphism, Chart, ChartMap};

use super::ambient::{ambient_product, quotient, AmbientProduct};
use super::boxprod::{box_product, BoxProduct};
use super::ProductError;

/// On one chart of `(Y ×ᵖ_X Z) ⊠_S T`: the ideal generated by the pulled-back
/// divisors of `Y ⊠ T` and `Z ⊠ T` against the one claimed from the
/// exceptional divisor.
#[derive(Clone, Debug)]
pub struct TensorFiberClaim {
    pub chart: usize,
    pub f_gens: Vec<Poly>,
    pub e_gen: Poly,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct TensorFiberReport {
    /// `Y ×ᵖ_X Z`.
    pub fibre: AmbientProduct,
    /// `(Y ×ᵖ_X Z) ⊠_S T`.
    pub lhs: BoxProduct,
    /// `(Y ⊠_S T) ×ᵖ_{X ⊠_S T} (Z ⊠_S T)`.
    pub rhs: AmbientProduct,
    pub claims: Vec<TensorFiberClaim>,
    /// Mutually inverse interior maps between the blow-down models.
    pub interior_iso: Result<(), String>,
}

impl TensorFiberReport {
    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.holds) && self.interior_iso.is_ok()
    }
}

/// The map `Y ⊠ T -> X ⊠ T` induced by `Y -> X` and the identity of `T`.
fn induced(src: &BoxProduct, f: &AmbientMorphism, dst: &BoxProduct) -> Result<AmbientMorphism, ProductError> {
    let mut charts = Vec::with_capacity(src.blocks.len());
    for blk in &src.blocks {
        let fx = f.chart_map(blk.x_chart);
        let target = dst
            .blocks
            .iter()
            .position(|d| d.x_chart == fx.target_chart && d.t_chart == blk.t_chart)
            .ok_or_else(|| ProductError::Invariant("no target block for an induced chart".into()))?;
        let x_images: Vec<Poly> = fx.map.images().iter().map(|p| blk.from_x.apply(p)).collect();
        let images = dst.blocks[target].images_from_factors(&x_images, blk.from_t.images());
        let map = RingMap::new(dst.blocks[target].pres.clone(), blk.pres.clone(), images)?;
        charts.push(ChartMap { target_chart: target, map });
    }
    Ok(AmbientMorphism::from_chart_maps(src.pair.clone(), dst.pair.clone(), charts)?)
}

/// Checks that `alpha` (images of `a`'s variables in `b`) and `beta` give
/// mutually inverse isomorphisms of the interiors of `a` and `b`.
fn interior_iso(a: &Chart, b: &Chart, alpha: &[Poly], beta: &[Poly]) -> Result<(), String> {
    let (ai, a_in) = a.interior();
    let (bi, b_in) = b.interior();
    let extend = |src: &Chart, tgt_int: &crate::affine::Presentation, tgt_in: &RingMap, images: &[Poly]| {
        let mut imgs: Vec<Poly> = images.iter().map(|p| tgt_in.apply(p)).collect();
        let g = tgt_in.apply(&src.divisor.substitute(images, tgt_in.source().ring()));
        let inv = tgt_int
            .ideal()
            .cofactor(&Poly::one(tgt_int.ring()), &g)
            .ok_or_else(|| format!("`{g}` is not invertible on the interior"))?;
        imgs.push(tgt_int.reduce(&inv));
        Ok::<_, String>(imgs)
    };
    let fwd = RingMap::new(ai.clone(), bi.clone(), extend(a, &bi, &b_in, alpha)?).map_err(|e| e.to_string())?;
    let back = RingMap::new(bi.clone(), ai.clone(), extend(b, &ai, &a_in, beta)?).map_err(|e| e.to_string())?;
    if !fwd.then(&back).agrees_with(&RingMap::identity(&ai), ai.ideal()) {
        return Err("round trip on the first interior is not the identity".into());
    }
    if !back.then(&fwd).agrees_with(&RingMap::identity(&bi), bi.ideal()) {
        return Err("round trip on the second interior is not the identity".into());
    }
    Ok(())
}

/// Compares `(Y ×ᵖ_X Z) ⊠_S T` with `(Y ⊠_S T) ×ᵖ_{X ⊠_S T} (Z ⊠_S T)`:
/// the divisor claim chart by chart, and the interiors of their blow-down
/// models. The interior comparison needs single-chart factors.
pub fn tensor_fiber_check(
    y_to_x: &AmbientMorphism,
    z_to_x: &AmbientMorphism,
    x_to_s: &AmbientMorphism,
    t_to_s: &AmbientMorphism,
) -> Result<TensorFiberReport, ProductError> {
    let fibre = ambient_product(y_to_x, z_to_x)?;
    let w_to_s = fibre.to_x.then(y_to_x)?.then(x_to_s)?;
    let lhs = box_product(&w_to_s, t_to_s)?;

    let mut claims = Vec::with_capacity(lhs.blocks.len());
    for (k, blk) in lhs.blocks.iter().enumerate() {
        let wc = &fibre.charts[blk.x_chart];
        let pres = &blk.pres;
        let over_s = |d: &Poly| quotient(pres, &(&blk.from_x.apply(d) * &blk.d_t), &blk.d_s);
        let (Some(a), Some(b), Some(e)) = (over_s(&wc.d_x), over_s(&wc.d_t), over_s(&wc.e)) else {
            claims.push(TensorFiberClaim { chart: k, f_gens: Vec::new(), e_gen: Poly::zero(pres.ring()), holds: false });
            continue;
        };
        let i = pres.ideal();
        let holds = i.add_gens([a.clone(), b.clone()]).equals(&i.add_gens([e.clone()]));
        claims.push(TensorFiberClaim { chart: k, f_gens: vec![a, b], e_gen: e, holds });
    }

    let yt = box_product(&y_to_x.then(x_to_s)?, t_to_s)?;
    let zt = box_product(&z_to_x.then(x_to_s)?, t_to_s)?;
    let xt = box_product(x_to_s, t_to_s)?;
    let rhs = ambient_product(&induced(&yt, y_to_x, &xt)?, &induced(&zt, z_to_x, &xt)?)?;

    let single = [y_to_x.source(), z_to_x.source(), x_to_s.source(), t_to_s.source(), x_to_s.target()]
        .iter()
        .all(|p| p.is_single_chart());
    let interior_iso = if single {
        compare_interiors(&fibre, y_to_x, x_to_s, t_to_s, &yt, &zt, &rhs)
    } else {
        Err("interior comparison needs single-chart factors".into())
    };
    Ok(TensorFiberReport { fibre, lhs, rhs, claims, interior_iso })
}

fn compare_interiors(
    fibre: &AmbientProduct,
    y_to_x: &AmbientMorphism,
    x_to_s: &AmbientMorphism,
    t_to_s: &AmbientMorphism,
    yt: &BoxProduct,
    zt: &BoxProduct,
    rhs: &AmbientProduct,
) -> Result<(), String> {
    let wb = &fibre.blocks[0];
    let w0_to_y = AmbientMorphism::from_chart_maps(
        fibre.base.clone(),
        y_to_x.source().clone(),
        vec![ChartMap { target_chart: wb.x_chart, map: wb.from_x.clone() }],
    )
    .map_err(|e| e.to_string())?;
    let w0_to_s = w0_to_y.then(y_to_x).and_then(|m| m.then(x_to_s)).map_err(|e| e.to_string())?;
    let lhs0 = box_product(&w0_to_s, t_to_s).map_err(|e| e.to_string())?;
    let lb = &lhs0.blocks[0];
    let rb = &rhs.blocks[0];
    let (ytb, ztb) = (&yt.blocks[0], &zt.blocks[0]);

    let y_in_r = ytb.from_x.then(&rb.from_x);
    let z_in_r = ztb.from_x.then(&rb.from_t);
    let t_in_r = ytb.from_t.then(&rb.from_x);
    let w_in_r = wb.images_from_factors(y_in_r.images(), z_in_r.images());
    let alpha = lb.images_from_factors(&w_in_r, t_in_r.images());

    let y_in_l = wb.from_x.then(&lb.from_x);
    let z_in_l = wb.from_t.then(&lb.from_x);
    let t_in_l = lb.from_t.images();
    let yt_in_l = ytb.images_from_factors(y_in_l.images(), t_in_l);
    let zt_in_l = ztb.images_from_factors(z_in_l.images(), t_in_l);
    let beta = rb.images_from_factors(&yt_in_l, &zt_in_l);

    interior_iso(lhs0.pair.chart(0), rhs.base.chart(0), &alpha, &beta)
}
