//! Ideal membership by linear algebra on Macaulay matrices.
//!
//! This path shares nothing with the Groebner kernel beyond polynomial
//! arithmetic: it spans all products `m * g_i` up to a degree bound and asks
//! whether `f` lies in their rational span. A positive answer is a proof of
//! membership; a negative answer is only conclusive up to the bound.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use super::monomial::Monomial;
use super::poly::Poly;
use super::Q;

type Key = (u32, Monomial);
type Row = BTreeMap<Key, Q>;

/// The default degree bound: `deg f + max deg g_i + 4`.
pub fn default_degree_bound(f: &Poly, gens: &[Poly]) -> u32 {
    let df = f.total_degree().unwrap_or(0);
    let dg = gens.iter().filter_map(Poly::total_degree).max().unwrap_or(0);
    df + dg + 4
}

fn row_of(p: &Poly) -> Row {
    p.terms().map(|(m, c)| ((m.degree(), m.clone()), c.clone())).collect()
}

fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut e = vec![0u32; nvars];
    fn rec(i: usize, left: u32, e: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == e.len() {
            e[i] = left;
            out.push(Monomial::from_exponents(e.clone()));
            return;
        }
        for k in 0..=left {
            e[i] = k;
            rec(i + 1, left - k, e, out);
        }
        e[i] = 0;
    }
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(0, d, &mut e, &mut out);
    out
}

#[derive(Default)]
struct Echelon {
    pivots: HashMap<Key, Row>,
}

impl Echelon {
    /// Top-reduces `row`; returns the leftover (empty if in the span).
    fn reduce(&self, mut row: Row) -> Row {
        while let Some((k, c)) = row.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) {
            let Some(p) = self.pivots.get(&k) else { break };
            for (pk, pc) in p {
                let v = row.entry(pk.clone()).or_insert_with(Q::zero);
                *v -= &c * pc;
                if v.is_zero() {
                    row.remove(pk);
                }
            }
        }
        row
    }

    fn insert(&mut self, row: Row) {
        let row = self.reduce(row);
        if let Some((k, c)) = row.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) {
            let inv = c.recip();
            let norm: Row = row.into_iter().map(|(k, v)| (k, v * &inv)).collect();
            self.pivots.insert(k, norm);
        }
    }
}

/// Whether `f` is a rational combination of products `m * g` with
/// `deg(m * g) <= bound`. Rows are added degree by degree so members are
/// usually detected well before the bound.
pub fn macaulay_member(f: &Poly, gens: &[Poly], bound: u32) -> bool {
    if f.is_zero() {
        return true;
    }
    let n = f.ring().nvars();
    let gens: Vec<&Poly> = gens.iter().filter(|g| !g.is_zero()).collect();
    let df = f.total_degree().unwrap();
    let target = row_of(f);
    let mut ech = Echelon::default();
    for d in 0..=bound {
        for g in &gens {
            let dg = g.total_degree().unwrap();
            if dg > d {
                continue;
            }
            for m in monomials_of_degree(n, d - dg) {
                let shifted = g.mul_term(&m, &num_traits::One::one());
                ech.insert(row_of(&shifted));
            }
        }
        if d >= df && ech.reduce(target.clone()).is_empty() {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::expr::parse_poly;
    use crate::exactalg::ring::Ring;

    #[test]
    fn detects_members_with_cancellation() {
        let r = Ring::new(["x", "y"]);
        let g = vec![parse_poly(&r, "x*y - 1").unwrap(), parse_poly(&r, "x^2 - y").unwrap()];
        // y*(x^2 - y) - x*(x*y - 1) = x - y^2, degree lower than the products
        let f = parse_poly(&r, "x - y^2").unwrap();
        assert!(macaulay_member(&f, &g, default_degree_bound(&f, &g)));
        let h = parse_poly(&r, "x").unwrap();
        assert!(!macaulay_member(&h, &g, 6));
    }

    #[test]
    fn monomial_enumeration_counts() {
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(1, 4).len(), 1);
        assert_eq!(monomials_of_degree(0, 0).len(), 1);
    }
}
