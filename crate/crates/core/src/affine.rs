//! Finitely presented affine schemes and their ring maps.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::exactalg::{Ideal, Poly, Ring};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AffineError {
    #[error("relation {index} (`{relation}`) does not map into the target ideal")]
    RelationNotPreserved { index: usize, relation: String },
    #[error("expected {expected} images, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("image `{0}` does not live in the target ring")]
    ImageOutsideTarget(String),
    #[error("localizing element is zero in the ring")]
    DivisorIsZero,
    #[error("blow-up center has no generators")]
    EmptyCenter,
}

/// `Q[x_1..x_n] / I`.
#[derive(Clone)]
pub struct Presentation {
    ideal: Arc<Ideal>,
}

impl Presentation {
    pub fn new(ideal: Ideal) -> Self {
        Presentation { ideal: Arc::new(ideal) }
    }

    pub fn free(ring: &Ring) -> Self {
        Presentation::new(Ideal::zero(ring))
    }

    pub fn ring(&self) -> &Ring {
        self.ideal.ring()
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    /// True when the defining ideal is the unit ideal.
    pub fn is_empty(&self) -> bool {
        self.ideal.is_unit()
    }

    pub fn reduce(&self, f: &Poly) -> Poly {
        self.ideal.normal_form(f)
    }

    pub fn is_zero(&self, f: &Poly) -> bool {
        self.ideal.contains(f)
    }

    pub fn eq_elements(&self, a: &Poly, b: &Poly) -> bool {
        self.ideal.contains(&(a - b))
    }

    /// Same ring and equal ideals.
    pub fn same_as(&self, other: &Presentation) -> bool {
        self.ring().same_as(other.ring()) && self.ideal.equals(&other.ideal)
    }

    pub fn var(&self, i: usize) -> Poly {
        Poly::var(self.ring(), i)
    }

    /// Adjoins `u` with `u*f - 1`, returning the localization and the
    /// canonical map into it.
    pub fn localize(&self, f: &Poly) -> Result<(Presentation, RingMap), AffineError> {
        self.localize_named(f, "u")
    }

    pub fn localize_named(&self, f: &Poly, var: &str) -> Result<(Presentation, RingMap), AffineError> {
        if self.is_zero(f) && !self.is_empty() {
            return Err(AffineError::DivisorIsZero);
        }
        let (ring, names) = self.ring().extend(&[var]);
        let u = Poly::var_named(&ring, &names[0]);
        let lifted = f.to_ring(&ring).unwrap();
        let ideal = self.ideal.to_ring(&ring).unwrap().add_gens([&u * &lifted - Poly::one(&ring)]);
        let loc = Presentation::new(ideal);
        let images = (0..self.ring().nvars()).map(|i| loc.var(i)).collect();
        let map = RingMap::new_unchecked(self.clone(), loc.clone(), images);
        Ok((loc, map))
    }

    /// Scheme-theoretic closure of the principal open `D(f)`: `I : f^∞`.
    pub fn closure_of_principal_open(&self, f: &Poly) -> Presentation {
        Presentation::new(self.ideal.saturate(f))
    }

    pub fn with_extra(&self, gens: impl IntoIterator<Item = Poly>) -> Presentation {
        Presentation::new(self.ideal.add_gens(gens))
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ideal.is_zero() {
            write!(f, "{}", self.ring())
        } else {
            write!(f, "{} / {}", self.ring(), self.ideal)
        }
    }
}

impl fmt::Debug for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Ring homomorphism `source -> target`, given by the image of each
/// source variable.
#[derive(Clone, Debug)]
pub struct RingMap {
    source: Presentation,
    target: Presentation,
    images: Vec<Poly>,
}

impl RingMap {
    pub fn new(source: Presentation, target: Presentation, images: Vec<Poly>) -> Result<RingMap, AffineError> {
        if images.len() != source.ring().nvars() {
            return Err(AffineError::ArityMismatch { expected: source.ring().nvars(), got: images.len() });
        }
        if let Some(bad) = images.iter().find(|p| !p.ring().same_as(target.ring())) {
            return Err(AffineError::ImageOutsideTarget(bad.to_string()));
        }
        let map = RingMap::new_unchecked(source, target, images);
        for (index, g) in map.source.ideal().gens().iter().enumerate() {
            if !map.target.is_zero(&map.apply(g)) {
                return Err(AffineError::RelationNotPreserved { index, relation: g.to_string() });
            }
        }
        Ok(map)
    }

    pub(crate) fn new_unchecked(source: Presentation, target: Presentation, images: Vec<Poly>) -> RingMap {
        debug_assert_eq!(images.len(), source.ring().nvars());
        RingMap { source, target, images }
    }

    pub fn identity(p: &Presentation) -> RingMap {
        let images = (0..p.ring().nvars()).map(|i| p.var(i)).collect();
        RingMap::new_unchecked(p.clone(), p.clone(), images)
    }

    pub fn source(&self) -> &Presentation {
        &self.source
    }

    pub fn target(&self) -> &Presentation {
        &self.target
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    /// Image of a source polynomial (not reduced).
    pub fn apply(&self, f: &Poly) -> Poly {
        f.substitute(&self.images, self.target.ring())
    }

    /// `other ∘ self`: first `self`, then `other`.
    pub fn then(&self, other: &RingMap) -> RingMap {
        assert!(self.target.ring().same_as(other.source.ring()), "ring maps not composable");
        let images = self.images.iter().map(|p| other.apply(p)).collect();
        RingMap::new_unchecked(self.source.clone(), other.target.clone(), images)
    }

    /// Same source, target presentation replaced by a ring with the same
    /// variables (for example a quotient or localization of the old target).
    pub fn retarget(&self, target: Presentation) -> Result<RingMap, AffineError> {
        let images = self
            .images
            .iter()
            .map(|p| p.to_ring(target.ring()).ok_or_else(|| AffineError::ImageOutsideTarget(p.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        RingMap::new(self.source.clone(), target, images)
    }

    /// Whether two maps with the same source agree on every variable modulo
    /// the ideal of `modulo` (whose ring must be the common target ring).
    pub fn agrees_with(&self, other: &RingMap, modulo: &Ideal) -> bool {
        self.images.iter().zip(&other.images).all(|(a, b)| modulo.contains(&(a - b)))
    }

    /// Kernel, as an ideal of the source polynomial ring (it contains the
    /// source ideal).
    pub fn kernel(&self) -> Ideal {
        let tgt = self.target.ring();
        let src_names: Vec<&str> = self.source.ring().vars().iter().map(String::as_str).collect();
        let (big, renamed) = tgt.extend(&src_names);
        let nt = tgt.nvars();
        let mut gens: Vec<Poly> = self.target.ideal().gens().iter().map(|g| g.to_ring(&big).unwrap()).collect();
        for (j, img) in self.images.iter().enumerate() {
            let y = Poly::var_named(&big, &renamed[j]);
            gens.push(y - img.to_ring(&big).unwrap());
        }
        let drop: Vec<usize> = (0..nt).collect();
        let elim = Ideal::new(&big, gens).eliminate(&drop);
        let back: Vec<usize> = (0..self.source.ring().nvars()).collect();
        let kept = elim.ring().clone();
        let gens = elim
            .gens()
            .iter()
            .map(|g| {
                debug_assert_eq!(kept.nvars(), back.len());
                g.remap(self.source.ring(), &back)
            })
            .collect();
        Ideal::new(self.source.ring(), gens).with_order(self.source.ideal().order())
    }

    pub fn is_injective(&self) -> bool {
        self.source.ideal().contains_ideal(&self.kernel())
    }
}

/// `L ⊗_B R` with its two coprojections.
#[derive(Clone, Debug)]
pub struct TensorProduct {
    pub pres: Presentation,
    pub left: RingMap,
    pub right: RingMap,
    /// Names used for the right factor's variables inside the product.
    pub right_names: Vec<String>,
}

/// Tensor product of `left: B -> L` and `right: B -> R`. Variables of `L`
/// keep their names; clashing variables of `R` are renamed.
pub fn tensor_over(left: &RingMap, right: &RingMap) -> TensorProduct {
    assert!(left.source().ring().same_as(right.source().ring()), "tensor over different bases");
    let l = left.target();
    let r = right.target();
    let rnames: Vec<&str> = r.ring().vars().iter().map(String::as_str).collect();
    let (ring, right_names) = l.ring().extend(&rnames);
    let lmap: Vec<usize> = (0..l.ring().nvars()).collect();
    let rmap: Vec<usize> = (0..r.ring().nvars()).map(|j| l.ring().nvars() + j).collect();
    let mut gens: Vec<Poly> = l.ideal().gens().iter().map(|g| g.remap(&ring, &lmap)).collect();
    gens.extend(r.ideal().gens().iter().map(|g| g.remap(&ring, &rmap)));
    for (a, b) in left.images().iter().zip(right.images()) {
        gens.push(a.remap(&ring, &lmap) - b.remap(&ring, &rmap));
    }
    let order = l.ideal().order();
    let pres = Presentation::new(Ideal::new(&ring, gens).with_order(order));
    let lin = RingMap::new_unchecked(l.clone(), pres.clone(), lmap.iter().map(|&i| pres.var(i)).collect());
    let rin = RingMap::new_unchecked(r.clone(), pres.clone(), rmap.iter().map(|&i| pres.var(i)).collect());
    TensorProduct { pres, left: lin, right: rin, right_names }
}

/// One standard chart `A[J / a_i]` of a blow-up.
#[derive(Clone, Debug)]
pub struct BlowupChart {
    pub index: usize,
    pub pres: Presentation,
    /// Image of `a_i`; it generates the pulled-back center on this chart.
    pub exceptional: Poly,
    /// `A -> chart`, each base variable to itself.
    pub projection: RingMap,
    /// For each center generator `j`, the chart variable `z_j = a_j / a_i`
    /// (`None` for `j = i`).
    pub ratio_vars: Vec<Option<usize>>,
    pub empty: bool,
}

impl BlowupChart {
    /// `a_j / a_i` as an element of this chart.
    pub fn ratio(&self, j: usize) -> Poly {
        match self.ratio_vars[j] {
            Some(v) => self.pres.var(v),
            None => Poly::one(self.pres.ring()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct BlowupChartSet {
    pub base: Presentation,
    pub center: Vec<Poly>,
    pub charts: Vec<BlowupChart>,
}

fn ratio_names(base: &Ring, k: usize, prefix: &str) -> Vec<String> {
    if k == 2 {
        vec![prefix.to_string(); 2]
    } else {
        (1..=k).map(|j| format!("{prefix}{j}")).collect()
    }
    .into_iter()
    .map(|n| base.fresh_name(&n))
    .collect()
}

/// Standard charts of the blow-up of `base` along the ideal generated by
/// `center`, one chart per generator in input order. Chart `i` is
/// `A[z_j : j != i] / ((I + <a_i z_j - a_j>) : a_i^∞)`.
pub fn blowup_charts(base: &Presentation, center: &[Poly]) -> Result<BlowupChartSet, AffineError> {
    blowup_charts_named(base, center, "z")
}

pub fn blowup_charts_named(base: &Presentation, center: &[Poly], prefix: &str) -> Result<BlowupChartSet, AffineError> {
    if center.is_empty() {
        return Err(AffineError::EmptyCenter);
    }
    let k = center.len();
    let names = ratio_names(base.ring(), k, prefix);
    let mut charts = Vec::with_capacity(k);
    for i in 0..k {
        let extra: Vec<&str> = (0..k).filter(|&j| j != i).map(|j| names[j].as_str()).collect();
        let (ring, used) = base.ring().extend(&extra);
        let mut ratio_vars = vec![None; k];
        let mut n = 0;
        for (j, slot) in ratio_vars.iter_mut().enumerate() {
            if j != i {
                *slot = ring.index_of(&used[n]);
                n += 1;
            }
        }
        let ai = center[i].to_ring(&ring).unwrap();
        let mut gens: Vec<Poly> = base.ideal().gens().iter().map(|g| g.to_ring(&ring).unwrap()).collect();
        for j in (0..k).filter(|&j| j != i) {
            let z = Poly::var(&ring, ratio_vars[j].unwrap());
            gens.push(&ai * &z - center[j].to_ring(&ring).unwrap());
        }
        let ideal = Ideal::new(&ring, gens).with_order(base.ideal().order()).saturate(&ai);
        let pres = Presentation::new(ideal);
        let projection = RingMap::new_unchecked(
            base.clone(),
            pres.clone(),
            (0..base.ring().nvars()).map(|v| pres.var(v)).collect(),
        );
        let empty = pres.is_empty();
        charts.push(BlowupChart { index: i, pres, exceptional: ai, projection, ratio_vars, empty });
    }
    Ok(BlowupChartSet { base: base.clone(), center: center.to_vec(), charts })
}

impl BlowupChartSet {
    /// Chart `j` glued into chart `i` over `D(z_j)`: the map from chart `j`
    /// to chart `i` localized at `a_j / a_i`.
    pub fn gluing(&self, i: usize, j: usize) -> Result<RingMap, AffineError> {
        let ci = &self.charts[i];
        let cj = &self.charts[j];
        let (loc, _) = ci.pres.localize_named(&ci.ratio(j), "v").or_else(|_| {
            // the overlap is empty; glue through the zero ring
            let ring = ci.pres.ring().extend(&["v"]).0;
            Ok::<_, AffineError>((Presentation::new(Ideal::unit(&ring)), RingMap::identity(&ci.pres)))
        })?;
        let v = Poly::var(loc.ring(), loc.ring().nvars() - 1);
        let nb = self.base.ring().nvars();
        let mut images: Vec<Poly> = (0..cj.pres.ring().nvars()).map(|_| Poly::zero(loc.ring())).collect();
        for (b, img) in images.iter_mut().enumerate().take(nb) {
            *img = loc.var(b);
        }
        for (m, slot) in cj.ratio_vars.iter().enumerate() {
            if let Some(var) = *slot {
                // a_m / a_j = (a_m / a_i) / (a_j / a_i)
                images[var] = &ci.ratio(m).to_ring(loc.ring()).unwrap() * &v;
            }
        }
        RingMap::new(cj.pres.clone(), loc, images)
    }

    /// `(J·chart + I_chart) : exceptional^∞` on every chart.
    pub fn strict_transform(&self, j: &Ideal) -> Vec<Ideal> {
        self.charts
            .iter()
            .map(|c| {
                let pulled = j.gens().iter().map(|g| c.projection.apply(g));
                c.pres.ideal().add_gens(pulled).saturate(&c.exceptional)
            })
            .collect()
    }
}

/// Removes variables (among those `allowed` by name) that some relation
/// expresses linearly in the others.
/// Returns the smaller presentation and the images of the old variables.
pub fn eliminate_linear_vars(pres: &Presentation, allowed: impl Fn(&str) -> bool) -> (Presentation, Vec<Poly>) {
    let mut cur = pres.clone();
    let mut images: Vec<Poly> = (0..pres.ring().nvars()).map(|i| pres.var(i)).collect();
    if pres.is_empty() {
        return (cur, images);
    }
    loop {
        let gb = cur.ideal().groebner_basis();
        let n = cur.ring().nvars();
        let found = gb.iter().find_map(|g| {
            (0..n).filter(|&i| allowed(&cur.ring().vars()[i])).find_map(|i| {
                let xi = Poly::var(cur.ring(), i);
                let rest = Poly::from_terms(
                    cur.ring(),
                    g.terms().filter(|(m, _)| !m.uses_var(i)).map(|(m, c)| (m.clone(), c.clone())),
                );
                let lin = g - &rest;
                let coeff = lin.div_exact(&xi)?.constant_value()?;
                if num_traits::Zero::is_zero(&coeff) {
                    return None;
                }
                Some((i, rest.scale(&(-coeff.recip()))))
            })
        });
        let Some((i, sol)) = found else { break };
        let keep: Vec<String> = cur.ring().vars().iter().enumerate().filter(|(k, _)| *k != i).map(|(_, v)| v.clone()).collect();
        let ring = Ring::new(keep);
        let sub: Vec<Poly> = (0..n)
            .map(|k| if k == i { sol.to_ring(&ring).unwrap() } else { Poly::var_named(&ring, &cur.ring().vars()[k]) })
            .collect();
        let gens: Vec<Poly> = cur.ideal().gens().iter().map(|g| g.substitute(&sub, &ring)).collect();
        images = images.iter().map(|p| p.substitute(&sub, &ring)).collect();
        cur = Presentation::new(Ideal::new(&ring, gens).with_order(pres.ideal().order()));
    }
    (cur, images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_poly;

    fn pres(vars: &[&str], gens: &[&str]) -> Presentation {
        let r = Ring::new(vars.iter().copied());
        Presentation::new(Ideal::new(&r, gens.iter().map(|g| parse_poly(&r, g).unwrap()).collect()))
    }

    fn polys(p: &Presentation, s: &[&str]) -> Vec<Poly> {
        s.iter().map(|g| parse_poly(p.ring(), g).unwrap()).collect()
    }

    #[test]
    fn ring_map_validation() {
        let line = pres(&["x"], &[]);
        let free = pres(&["y"], &[]);
        assert!(RingMap::new(free, line.clone(), polys(&line, &["x^2"])).is_ok());
        let cusp = pres(&["a", "b"], &["a^3 - b^2"]);
        let t = pres(&["t"], &[]);
        assert!(RingMap::new(cusp, t.clone(), polys(&t, &["t^2", "t^3"])).is_ok());
        let dual = pres(&["a"], &["a^2"]);
        let err = RingMap::new(dual, line.clone(), polys(&line, &["x"])).unwrap_err();
        assert!(matches!(err, AffineError::RelationNotPreserved { index: 0, .. }));
    }

    #[test]
    fn kernels() {
        let plane = pres(&["a", "b"], &[]);
        let t = pres(&["t"], &[]);
        let m = RingMap::new(plane.clone(), t.clone(), polys(&t, &["t^2", "t^3"])).unwrap();
        let k = m.kernel();
        assert!(k.equals(&Ideal::new(plane.ring(), polys(&plane, &["a^3 - b^2"]))));
        assert!(RingMap::identity(&plane).kernel().is_zero());
        let line = pres(&["a"], &[]);
        let lx = pres(&["x"], &[]);
        let (loc, _) = lx.localize(&parse_poly(lx.ring(), "x").unwrap()).unwrap();
        let into = RingMap::new(line, loc.clone(), vec![loc.var(0)]).unwrap();
        assert!(into.kernel().gens().is_empty());
        assert!(into.is_injective());
    }

    #[test]
    fn localization_and_closure() {
        let p = pres(&["x", "y"], &["x*y"]);
        let f = parse_poly(p.ring(), "x + y").unwrap();
        let (loc, _) = p.localize(&f).unwrap();
        let ux = parse_poly(loc.ring(), "u*x").unwrap();
        assert!(loc.eq_elements(&ux.pow(2), &ux));
        assert!(!loc.is_zero(&ux));
        let c = p.closure_of_principal_open(&parse_poly(p.ring(), "x").unwrap());
        assert!(c.ideal().equals(&Ideal::new(p.ring(), polys(&p, &["y"]))));
        let point = pres(&["x"], &["x"]);
        assert_eq!(point.localize(&point.var(0)).unwrap_err(), AffineError::DivisorIsZero);
        assert!(point.closure_of_principal_open(&point.var(0)).is_empty());
    }

    #[test]
    fn tensor_products() {
        let s = pres(&["s"], &[]);
        let x = pres(&["x"], &[]);
        let t = pres(&["t"], &[]);
        let l = RingMap::new(s.clone(), x.clone(), polys(&x, &["x^2"])).unwrap();
        let r = RingMap::new(s, t.clone(), polys(&t, &["t^2"])).unwrap();
        let tp = tensor_over(&l, &r);
        let expect = Ideal::new(tp.pres.ring(), vec![parse_poly(tp.pres.ring(), "x^2 - t^2").unwrap()]);
        assert!(tp.pres.ideal().equals(&expect));
        // clashing names get renamed
        let q = pres(&[], &[]);
        let a = RingMap::new(q.clone(), x.clone(), vec![]).unwrap();
        let tp = tensor_over(&a, &a);
        assert_eq!(tp.right_names, vec!["x1"]);
    }

    #[test]
    fn blowup_of_plane_and_cusp() {
        let plane = pres(&["x", "t"], &[]);
        let set = blowup_charts(&plane, &polys(&plane, &["x", "t"])).unwrap();
        assert_eq!(set.charts.len(), 2);
        let c0 = &set.charts[0];
        let expect = Ideal::new(c0.pres.ring(), vec![parse_poly(c0.pres.ring(), "x*z - t").unwrap()]);
        assert!(c0.pres.ideal().equals(&expect));
        for i in 0..2 {
            for j in 0..2 {
                if i != j {
                    set.gluing(i, j).unwrap();
                }
            }
        }
        let tr = set.strict_transform(&Ideal::new(plane.ring(), polys(&plane, &["t"])));
        let z = Ideal::new(c0.pres.ring(), polys(&c0.pres, &["z", "t"]));
        assert!(tr[0].equals(&z));
        let center = Ideal::new(plane.ring(), polys(&plane, &["x", "t"]));
        assert!(set.strict_transform(&center).iter().all(Ideal::is_unit));

        let cusp = pres(&["x", "y"], &["y^2 - x^3"]);
        let set = blowup_charts(&cusp, &polys(&cusp, &["x", "y"])).unwrap();
        let c0 = &set.charts[0];
        let want = Ideal::new(c0.pres.ring(), polys(&c0.pres, &["z^2 - x", "y - x*z"]));
        assert!(c0.pres.ideal().equals(&want));
    }

    #[test]
    fn principal_center_is_trivial() {
        let line = pres(&["x"], &[]);
        let set = blowup_charts(&line, &polys(&line, &["x"])).unwrap();
        assert_eq!(set.charts.len(), 1);
        assert!(set.charts[0].pres.same_as(&line));
        assert!(matches!(blowup_charts(&line, &[]), Err(AffineError::EmptyCenter)));
    }
}
