use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, MonomialOrder};
use super::ring::Ring;
use super::Q;

/// Polynomial with rational coefficients in a fixed ring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    ring: Ring,
    terms: BTreeMap<Monomial, Q>,
}

impl Poly {
    pub fn zero(ring: &Ring) -> Self {
        Poly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &Ring) -> Self {
        Poly::constant(ring, Q::one())
    }

    pub fn constant(ring: &Ring, c: Q) -> Self {
        Poly::term(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn from_int(ring: &Ring, c: i64) -> Self {
        Poly::constant(ring, Q::from_integer(c.into()))
    }

    pub fn term(ring: &Ring, m: Monomial, c: Q) -> Self {
        assert_eq!(m.nvars(), ring.nvars());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { ring: ring.clone(), terms }
    }

    pub fn var(ring: &Ring, i: usize) -> Self {
        Poly::term(ring, Monomial::var(ring.nvars(), i), Q::one())
    }

    /// The variable called `name`; panics if the ring has no such variable.
    pub fn var_named(ring: &Ring, name: &str) -> Self {
        let i = ring
            .index_of(name)
            .unwrap_or_else(|| panic!("variable `{name}` not in {ring}"));
        Poly::var(ring, i)
    }

    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (Monomial, Q)>) -> Self {
        let mut p = Poly::zero(ring);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_value(&self) -> Option<Q> {
        if self.is_zero() {
            Some(Q::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn leading(&self, order: MonomialOrder) -> Option<(&Monomial, &Q)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn leading_monomial(&self, order: MonomialOrder) -> Option<&Monomial> {
        self.leading(order).map(|(m, _)| m)
    }

    /// Terms sorted from largest to smallest monomial.
    pub fn sorted_terms(&self, order: MonomialOrder) -> Vec<(&Monomial, &Q)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }

    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.uses_var(i))
    }

    pub fn vars_used(&self) -> Vec<usize> {
        (0..self.ring.nvars()).filter(|&i| self.uses_var(i)).collect()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.nvars(), self.ring.nvars());
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_ring(&self, other: &Poly) {
        assert!(
            self.ring.same_as(&other.ring),
            "ring mismatch: {} vs {}",
            self.ring,
            other.ring
        );
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(n, a)| (n.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self, order: MonomialOrder) -> Poly {
        match self.leading(order) {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }

    /// Substitutes `images[i]` for variable `i`; every image lives in `target`.
    pub fn substitute(&self, images: &[Poly], target: &Ring) -> Poly {
        assert_eq!(images.len(), self.ring.nvars(), "substitution arity");
        for im in images {
            assert!(im.ring.same_as(target), "substitution image outside target ring");
        }
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(target), p.clone()]).collect();
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                while cache.len() <= e as usize {
                    let next = &cache[cache.len() - 1] * &cache[1];
                    cache.push(next);
                }
                t = &t * &cache[e as usize];
            }
            out = out + t;
        }
        out
    }

    /// Moves the polynomial into `target`, sending variable `i` to variable
    /// `map[i]` of `target`.
    pub fn remap(&self, target: &Ring, map: &[usize]) -> Poly {
        assert_eq!(map.len(), self.ring.nvars());
        let n = target.nvars();
        let mut p = Poly::zero(target);
        for (m, c) in &self.terms {
            p.add_term(m.remap(map, n), c.clone());
        }
        p
    }

    /// Reinterprets the polynomial in a ring that contains every variable it
    /// uses (matched by name). Returns `None` if a used variable is missing.
    pub fn to_ring(&self, target: &Ring) -> Option<Poly> {
        if self.ring.same_as(target) {
            return Some(self.clone());
        }
        let mut map = Vec::with_capacity(self.ring.nvars());
        for (i, v) in self.ring.vars().iter().enumerate() {
            match target.index_of(v) {
                Some(j) => map.push(j),
                None if !self.uses_var(i) => map.push(usize::MAX),
                None => return None,
            }
        }
        let n = target.nvars();
        let mut p = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; n];
            for (i, &x) in m.exponents().iter().enumerate() {
                if x > 0 {
                    e[map[i]] += x;
                }
            }
            p.add_term(Monomial::from_exponents(e), c.clone());
        }
        Some(p)
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        self.check_ring(d);
        if d.is_zero() {
            return if self.is_zero() { Some(self.clone()) } else { None };
        }
        let order = MonomialOrder::GrevLex;
        let (lm, lc) = d.leading(order).map(|(m, c)| (m.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut quo = Poly::zero(&self.ring);
        while let Some((m, c)) = rem.leading(order).map(|(m, c)| (m.clone(), c.clone())) {
            if !lm.divides(&m) {
                return None;
            }
            let qm = m.div(&lm);
            let qc = c / &lc;
            rem = rem - d.mul_term(&qm, &qc);
            quo.add_term(qm, qc);
        }
        Some(quo)
    }

    pub fn display_with(&self, order: MonomialOrder) -> PolyDisplay<'_> {
        PolyDisplay { poly: self, order }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.check_ring(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.check_ring(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.check_ring(rhs);
        let mut out = Poly::zero(&self.ring);
        for (m, c) in &self.terms {
            for (n, d) in &rhs.terms {
                out.add_term(m.mul(n), c * d);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly { (&self).$f(&rhs) }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: &Poly) -> Poly { (&self).$f(rhs) }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly { self.$f(&rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    order: MonomialOrder,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.poly.sorted_terms(self.order);
        if terms.is_empty() {
            return f.write_str("0");
        }
        let vars = self.poly.ring.vars();
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if m.is_one() || !abs.is_one() {
                factors.push(abs.to_string());
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(vars[i].clone()),
                    _ => factors.push(format!("{}^{e}", vars[i])),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_with(MonomialOrder::GrevLex).fmt(f)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.ring)
    }
}
