use std::collections::HashSet;
use std::sync::Arc;

use crate::affine::{eliminate_linear_vars, tensor_over, Presentation, RingMap};
use crate::exactalg::Poly;
use crate::modpair::AmbientMorphism;

use super::ProductError;

/// Which factor of a product a variable comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Factor {
    X,
    T,
}

/// Closure of the interior product of one chart of each factor inside their
/// tensor product over a common base chart.
#[derive(Clone, Debug)]
pub struct ProductBlock {
    pub x_chart: usize,
    pub t_chart: usize,
    pub s_chart: usize,
    /// The tensor product saturated by `d_x * d_t`.
    pub pres: Presentation,
    pub from_x: RingMap,
    pub from_t: RingMap,
    pub d_x: Poly,
    pub d_t: Poly,
    /// The base divisor pulled back to the block.
    pub d_s: Poly,
    /// For each variable of `pres`, the factor variable it is the image of.
    pub var_source: Vec<(Factor, usize)>,
}

impl ProductBlock {
    /// Images of the block variables under the maps out of the factors.
    pub fn images_from_factors(&self, x_images: &[Poly], t_images: &[Poly]) -> Vec<Poly> {
        self.var_source
            .iter()
            .map(|&(f, i)| match f {
                Factor::X => x_images[i].clone(),
                Factor::T => t_images[i].clone(),
            })
            .collect()
    }
}

pub(crate) fn same_base(f: &AmbientMorphism, g: &AmbientMorphism) -> Result<(), ProductError> {
    if Arc::ptr_eq(f.target(), g.target()) || f.target().same_as(g.target()) {
        Ok(())
    } else {
        Err(ProductError::DifferentBases)
    }
}

/// One block per pair of source charts of `f` and `g` over the same base
/// chart, in `(x, t)` lexicographic order.
pub(crate) fn blocks(f: &AmbientMorphism, g: &AmbientMorphism) -> Result<Vec<ProductBlock>, ProductError> {
    same_base(f, g)?;
    let mut out = Vec::new();
    for kx in 0..f.source().charts().len() {
        for kt in 0..g.source().charts().len() {
            let c = f.chart_map(kx).target_chart;
            if g.chart_map(kt).target_chart == c {
                out.push(block(f, g, kx, kt)?);
            }
        }
    }
    Ok(out)
}

fn block(f: &AmbientMorphism, g: &AmbientMorphism, kx: usize, kt: usize) -> Result<ProductBlock, ProductError> {
    let fm = &f.chart_map(kx).map;
    let gm = &g.chart_map(kt).map;
    let s_chart = f.chart_map(kx).target_chart;
    let tp = tensor_over(fm, gm);
    let right: HashSet<&str> = tp.right_names.iter().map(String::as_str).collect();
    let (small, subst) = eliminate_linear_vars(&tp.pres, |n| right.contains(n));
    let ring = small.ring().clone();
    let xi: Vec<Poly> = tp.left.images().iter().map(|p| p.substitute(&subst, &ring)).collect();
    let ti: Vec<Poly> = tp.right.images().iter().map(|p| p.substitute(&subst, &ring)).collect();
    let xc = f.source().chart(kx);
    let tc = g.source().chart(kt);
    let d_x = xc.divisor.substitute(&xi, &ring);
    let d_t = tc.divisor.substitute(&ti, &ring);
    let d_s = f.pulled_divisor(kx).substitute(&xi, &ring);
    let pres = small.closure_of_principal_open(&(&d_x * &d_t));
    let var_source = (0..ring.nvars())
        .map(|v| {
            let var = Poly::var(&ring, v);
            if let Some(i) = xi.iter().position(|p| *p == var) {
                (Factor::X, i)
            } else {
                let j = ti.iter().position(|p| *p == var).expect("every product variable comes from a factor");
                (Factor::T, j)
            }
        })
        .collect();
    let from_x = RingMap::new(xc.pres.clone(), pres.clone(), xi)?;
    let from_t = RingMap::new(tc.pres.clone(), pres.clone(), ti)?;
    Ok(ProductBlock { x_chart: kx, t_chart: kt, s_chart, pres, from_x, from_t, d_x, d_t, d_s, var_source })
}
