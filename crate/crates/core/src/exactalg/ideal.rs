use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use super::groebner::{from_dense, groebner, reduce, to_dense, Dense};
use super::monomial::{Monomial, MonomialOrder};
use super::poly::Poly;
use super::ring::Ring;
use super::Q;

/// Dimension of a quotient ring as a rational vector space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VDim {
    Finite(u64),
    Infinite,
}

impl fmt::Display for VDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VDim::Finite(n) => write!(f, "{n}"),
            VDim::Infinite => f.write_str("infinite"),
        }
    }
}

#[derive(Debug)]
pub(crate) struct Basis {
    pub polys: Vec<Poly>,
    pub dense: Vec<Dense>,
}

#[derive(Debug)]
struct Tracked {
    dense: Vec<Dense>,
    transforms: Vec<Vec<Poly>>,
}

/// Ideal of a polynomial ring given by generators. Groebner bases are
/// computed lazily and cached per monomial order.
pub struct Ideal {
    ring: Ring,
    gens: Vec<Poly>,
    order: MonomialOrder,
    cache: Mutex<HashMap<MonomialOrder, Arc<Basis>>>,
    tracked: OnceLock<Arc<Tracked>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let cache = self.cache.lock().unwrap().clone();
        let tracked = OnceLock::new();
        if let Some(t) = self.tracked.get() {
            let _ = tracked.set(t.clone());
        }
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            order: self.order,
            cache: Mutex::new(cache),
            tracked,
        }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {}", self.ring)
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", g.display_with(self.order))?;
        }
        f.write_str(">")
    }
}

fn extend_front(ring: &Ring, base: &str) -> (Ring, String) {
    let name = ring.fresh_name(base);
    let mut vars = vec![name.clone()];
    vars.extend(ring.vars().iter().cloned());
    (Ring::new(vars), name)
}

impl Ideal {
    pub fn new(ring: &Ring, gens: Vec<Poly>) -> Self {
        for g in &gens {
            assert!(g.ring().same_as(ring), "generator {g:?} not in {ring}");
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal {
            ring: ring.clone(),
            gens,
            order: MonomialOrder::GrevLex,
            cache: Mutex::new(HashMap::new()),
            tracked: OnceLock::new(),
        }
    }

    pub fn zero(ring: &Ring) -> Self {
        Ideal::new(ring, Vec::new())
    }

    pub fn unit(ring: &Ring) -> Self {
        Ideal::new(ring, vec![Poly::one(ring)])
    }

    pub fn principal(f: &Poly) -> Self {
        Ideal::new(f.ring(), vec![f.clone()])
    }

    /// Sets the order used for printing and for the default Groebner basis.
    pub fn with_order(mut self, order: MonomialOrder) -> Self {
        self.order = order;
        self
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    fn derived(&self, gens: Vec<Poly>) -> Ideal {
        Ideal::new(&self.ring, gens).with_order(self.order)
    }

    pub(crate) fn basis_in(&self, order: MonomialOrder) -> Arc<Basis> {
        if let Some(b) = self.cache.lock().unwrap().get(&order) {
            return b.clone();
        }
        let res = groebner(&self.ring, &self.gens, order, false);
        let polys = res.basis.iter().map(|d| from_dense(&self.ring, d)).collect();
        let b = Arc::new(Basis { polys, dense: res.basis });
        self.cache.lock().unwrap().insert(order, b.clone());
        b
    }

    /// Reduced Groebner basis (monic, sorted by leading monomial, largest
    /// first) with respect to `order`.
    pub fn groebner_basis_in(&self, order: MonomialOrder) -> Vec<Poly> {
        self.basis_in(order).polys.clone()
    }

    pub fn groebner_basis(&self) -> Vec<Poly> {
        self.groebner_basis_in(self.order)
    }

    pub fn normal_form(&self, f: &Poly) -> Poly {
        assert!(f.ring().same_as(&self.ring), "normal form across rings");
        let b = self.basis_in(self.order);
        let r = reduce(to_dense(f, self.order), &b.dense, self.order, None);
        from_dense(&self.ring, &r)
    }

    pub fn contains(&self, f: &Poly) -> bool {
        f.is_zero() || self.normal_form(f).is_zero()
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn equals(&self, other: &Ideal) -> bool {
        self.ring.same_as(&other.ring) && self.contains_ideal(other) && other.contains_ideal(self)
    }

    pub fn is_unit(&self) -> bool {
        let b = self.basis_in(self.order);
        b.polys.len() == 1 && b.polys[0].is_constant()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// Cofactors `c` with `f = sum c_i * gens[i]`, or `None` if `f` is not in
    /// the ideal. The returned combination is checked before it is returned.
    pub fn membership_witness(&self, f: &Poly) -> Option<Vec<Poly>> {
        assert!(f.ring().same_as(&self.ring));
        let order = MonomialOrder::GrevLex;
        let t = self.tracked.get_or_init(|| {
            let res = groebner(&self.ring, &self.gens, order, true);
            Arc::new(Tracked { dense: res.basis, transforms: res.transforms.unwrap() })
        });
        let mut quot: Vec<Dense> = vec![Vec::new(); t.dense.len()];
        let r = reduce(to_dense(f, order), &t.dense, order, Some(&mut quot));
        if !r.is_empty() {
            return None;
        }
        let mut cof: Vec<Poly> = self.gens.iter().map(|_| Poly::zero(&self.ring)).collect();
        for (q, tr) in quot.iter().zip(&t.transforms) {
            if q.is_empty() {
                continue;
            }
            let qp = from_dense(&self.ring, q);
            for (c, x) in cof.iter_mut().zip(tr) {
                if !x.is_zero() {
                    *c = &*c + &(&qp * x);
                }
            }
        }
        let mut check = Poly::zero(&self.ring);
        for (c, g) in cof.iter().zip(&self.gens) {
            check = check + c * g;
        }
        assert_eq!(&check, f, "membership witness failed to reproduce the element");
        Some(cof)
    }

    /// A cofactor `c` with `f ≡ c*g` modulo this ideal, if one exists.
    pub fn cofactor(&self, f: &Poly, g: &Poly) -> Option<Poly> {
        if g.is_zero() {
            return self.contains(f).then(|| Poly::zero(&self.ring));
        }
        let mut gens = vec![g.clone()];
        gens.extend(self.gens.iter().cloned());
        let w = Ideal::new(&self.ring, gens).membership_witness(f)?;
        Some(w.into_iter().next().unwrap())
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        assert!(self.ring.same_as(&other.ring));
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        self.derived(g)
    }

    pub fn add_gens(&self, extra: impl IntoIterator<Item = Poly>) -> Ideal {
        let mut g = self.gens.clone();
        g.extend(extra);
        self.derived(g)
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        let mut g = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                g.push(a * b);
            }
        }
        self.derived(g)
    }

    pub fn scale_by(&self, f: &Poly) -> Ideal {
        self.derived(self.gens.iter().map(|g| g * f).collect())
    }

    /// The same generators read in `target` (variables matched by name).
    pub fn to_ring(&self, target: &Ring) -> Option<Ideal> {
        let g = self.gens.iter().map(|p| p.to_ring(target)).collect::<Option<Vec<_>>>()?;
        Some(Ideal::new(target, g).with_order(self.order))
    }

    /// `I ∩ Q[remaining variables]`, as an ideal of the ring without the
    /// eliminated variables.
    pub fn eliminate(&self, drop: &[usize]) -> Ideal {
        let n = self.ring.nvars();
        let keep: Vec<usize> = (0..n).filter(|i| !drop.contains(i)).collect();
        let kept_ring = Ring::new(keep.iter().map(|&i| self.ring.vars()[i].clone()));
        if drop.is_empty() {
            return Ideal::new(&kept_ring, self.gens.iter().map(|g| g.to_ring(&kept_ring).unwrap()).collect())
                .with_order(self.order);
        }
        let mut perm_order: Vec<usize> = drop.to_vec();
        perm_order.extend(&keep);
        let perm_ring = Ring::new(perm_order.iter().map(|&i| self.ring.vars()[i].clone()));
        let mut map = vec![0; n];
        for (new, &old) in perm_order.iter().enumerate() {
            map[old] = new;
        }
        let gens: Vec<Poly> = self.gens.iter().map(|g| g.remap(&perm_ring, &map)).collect();
        let gb = Ideal::new(&perm_ring, gens).groebner_basis_in(MonomialOrder::Elim(drop.len()));
        let k = drop.len();
        let out: Vec<Poly> = gb
            .into_iter()
            .filter(|g| (0..k).all(|i| !g.uses_var(i)))
            .map(|g| g.to_ring(&kept_ring).unwrap())
            .collect();
        Ideal::new(&kept_ring, out).with_order(self.order)
    }

    /// Eliminates the variables called `names`.
    pub fn eliminate_named(&self, names: &[&str]) -> Ideal {
        let idx: Vec<usize> = names
            .iter()
            .map(|n| self.ring.index_of(n).unwrap_or_else(|| panic!("no variable `{n}`")))
            .collect();
        self.eliminate(&idx)
    }

    /// `I : f^∞`.
    pub fn saturate(&self, f: &Poly) -> Ideal {
        assert!(f.ring().same_as(&self.ring));
        if f.is_zero() {
            return Ideal::unit(&self.ring).with_order(self.order);
        }
        if f.is_constant() {
            return self.clone();
        }
        let (big, _) = extend_front(&self.ring, "t");
        let map: Vec<usize> = (1..=self.ring.nvars()).collect();
        let t = Poly::var(&big, 0);
        let mut g: Vec<Poly> = self.gens.iter().map(|p| p.remap(&big, &map)).collect();
        g.push(Poly::one(&big) - &t * &f.remap(&big, &map));
        let sat = Ideal::new(&big, g).eliminate(&[0]);
        Ideal::new(&self.ring, sat.gens.iter().map(|p| p.to_ring(&self.ring).unwrap()).collect())
            .with_order(self.order)
    }

    /// `I : J^∞`, computed as the intersection of saturations by the
    /// generators of `J`.
    pub fn saturate_ideal(&self, j: &Ideal) -> Ideal {
        let mut acc: Option<Ideal> = None;
        for g in &j.gens {
            let s = self.saturate(g);
            acc = Some(match acc {
                None => s,
                Some(a) => a.intersect(&s),
            });
        }
        acc.unwrap_or_else(|| Ideal::unit(&self.ring).with_order(self.order))
    }

    pub fn intersect(&self, other: &Ideal) -> Ideal {
        assert!(self.ring.same_as(&other.ring));
        if self.is_unit() {
            return other.clone().with_order(self.order);
        }
        if other.is_unit() {
            return self.clone();
        }
        let (big, _) = extend_front(&self.ring, "t");
        let map: Vec<usize> = (1..=self.ring.nvars()).collect();
        let t = Poly::var(&big, 0);
        let one_minus_t = Poly::one(&big) - &t;
        let mut g: Vec<Poly> = self.gens.iter().map(|p| &t * &p.remap(&big, &map)).collect();
        g.extend(other.gens.iter().map(|p| &one_minus_t * &p.remap(&big, &map)));
        let e = Ideal::new(&big, g).eliminate(&[0]);
        Ideal::new(&self.ring, e.gens.iter().map(|p| p.to_ring(&self.ring).unwrap()).collect())
            .with_order(self.order)
    }

    /// `I : f`.
    pub fn colon(&self, f: &Poly) -> Ideal {
        if f.is_zero() || self.contains(f) {
            return Ideal::unit(&self.ring).with_order(self.order);
        }
        let meet = self.intersect(&Ideal::principal(f));
        let g = meet
            .gens
            .iter()
            .map(|p| p.div_exact(f).expect("element of <f> divisible by f"))
            .collect();
        self.derived(g)
    }

    /// `I : J`.
    pub fn colon_ideal(&self, j: &Ideal) -> Ideal {
        let mut acc: Option<Ideal> = None;
        for g in &j.gens {
            let c = self.colon(g);
            acc = Some(match acc {
                None => c,
                Some(a) => a.intersect(&c),
            });
        }
        acc.unwrap_or_else(|| Ideal::unit(&self.ring).with_order(self.order))
    }

    /// Whether `f` is a non-zero-divisor modulo `I` (that is `I : f = I`).
    pub fn is_nonzerodivisor(&self, f: &Poly) -> bool {
        if self.is_unit() {
            return true;
        }
        self.colon(f).equals(self)
    }

    /// Whether `g` lies in the radical of `I`.
    pub fn radical_contains(&self, g: &Poly) -> bool {
        if self.contains(g) {
            return true;
        }
        let (big, _) = extend_front(&self.ring, "t");
        let map: Vec<usize> = (1..=self.ring.nvars()).collect();
        let t = Poly::var(&big, 0);
        let mut gens: Vec<Poly> = self.gens.iter().map(|p| p.remap(&big, &map)).collect();
        gens.push(Poly::one(&big) - &t * &g.remap(&big, &map));
        Ideal::new(&big, gens).is_unit()
    }

    /// `dim_Q Q[x]/I`.
    pub fn vspace_dim(&self) -> VDim {
        let b = self.basis_in(MonomialOrder::GrevLex);
        if b.polys.iter().any(Poly::is_constant) {
            return VDim::Finite(0);
        }
        let lms: Vec<Monomial> = b
            .polys
            .iter()
            .map(|p| p.leading_monomial(MonomialOrder::GrevLex).unwrap().clone())
            .collect();
        let n = self.ring.nvars();
        let mut bounds = Vec::with_capacity(n);
        for i in 0..n {
            let pure = lms
                .iter()
                .filter(|m| m.exponents().iter().enumerate().all(|(k, &e)| k == i || e == 0))
                .map(|m| m.exponents()[i])
                .min();
            match pure {
                Some(a) => bounds.push(a),
                None => return VDim::Infinite,
            }
        }
        let mut count = 0u64;
        let mut e = vec![0u32; n];
        loop {
            let m = Monomial::from_exponents(e.clone());
            if !lms.iter().any(|l| l.divides(&m)) {
                count += 1;
            }
            let mut k = 0;
            loop {
                if k == n {
                    return VDim::Finite(count);
                }
                e[k] += 1;
                if e[k] < bounds[k] {
                    break;
                }
                e[k] = 0;
                k += 1;
            }
        }
    }
}

/// Convenience: rational constant.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}
