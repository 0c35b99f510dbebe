//! Buchberger's algorithm over the rationals with the normal selection
//! strategy, the product criterion and the chain criterion.

use std::cmp::Ordering;
use std::collections::HashSet;

use num_traits::{One, Zero};

use super::monomial::{Monomial, MonomialOrder};
use super::poly::Poly;
use super::ring::Ring;
use super::Q;

pub(crate) type Term = (Monomial, Q);

/// Terms sorted ascending by the active order; the leading term is last.
pub(crate) type Dense = Vec<Term>;

pub(crate) fn to_dense(p: &Poly, order: MonomialOrder) -> Dense {
    let mut v: Dense = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
    v.sort_by(|a, b| order.cmp(&a.0, &b.0));
    v
}

pub(crate) fn from_dense(ring: &Ring, d: &Dense) -> Poly {
    Poly::from_terms(ring, d.iter().cloned())
}

fn lead(d: &Dense) -> &Term {
    d.last().expect("leading term of zero polynomial")
}

fn make_monic(d: &mut Dense) -> Q {
    let inv = lead(d).1.recip();
    if !inv.is_one() {
        for t in d.iter_mut() {
            t.1 *= &inv;
        }
    }
    inv
}

/// `p - c * m * g`, merging two ascending term lists.
fn sub_scaled(p: &[Term], c: &Q, m: &Monomial, g: &[Term], order: MonomialOrder) -> Dense {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let mut i = 0;
    let mut shifted = g.iter().map(|(gm, gc)| (gm.mul(m), gc * c)).peekable();
    while i < p.len() || shifted.peek().is_some() {
        let ord = match (p.get(i), shifted.peek()) {
            (Some(a), Some(b)) => order.cmp(&a.0, &b.0),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => unreachable!(),
        };
        match ord {
            Ordering::Less => {
                out.push(p[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                let (bm, bc) = shifted.next().unwrap();
                out.push((bm, -bc));
            }
            Ordering::Equal => {
                let (bm, bc) = shifted.next().unwrap();
                let v = &p[i].1 - bc;
                if !v.is_zero() {
                    out.push((bm, v));
                }
                i += 1;
            }
        }
    }
    out
}

/// Full reduction of `p` modulo `basis` (every element monic). When
/// `quotients` is given, the quotient terms for each basis element are
/// appended there (in descending order).
pub(crate) fn reduce(
    mut p: Dense,
    basis: &[Dense],
    order: MonomialOrder,
    mut quotients: Option<&mut Vec<Dense>>,
) -> Dense {
    let mut rem: Dense = Vec::new();
    while let Some((m, c)) = p.last() {
        let hit = basis.iter().position(|g| lead(g).0.divides(m));
        match hit {
            Some(k) => {
                let g = &basis[k];
                let qm = m.div(&lead(g).0);
                let qc = c.clone();
                p = sub_scaled(&p, &qc, &qm, g, order);
                if let Some(q) = quotients.as_deref_mut() {
                    q[k].push((qm, qc));
                }
            }
            None => rem.push(p.pop().unwrap()),
        }
    }
    rem.reverse();
    rem
}

pub(crate) struct GbResult {
    /// Reduced monic basis sorted by leading monomial, largest first.
    pub basis: Vec<Dense>,
    /// For each basis element, its coefficients with respect to the input
    /// generators (only when tracking was requested).
    pub transforms: Option<Vec<Vec<Poly>>>,
}

struct Builder<'a> {
    ring: &'a Ring,
    polys: Vec<Dense>,
    transforms: Option<Vec<Vec<Poly>>>,
    ngens: usize,
}

impl Builder<'_> {
    fn combine(&self, base: &[Poly], quotients: &[Dense], sign: &Q) -> Vec<Poly> {
        let mut out = base.to_vec();
        let ts = self.transforms.as_ref().unwrap();
        for (k, q) in quotients.iter().enumerate() {
            if q.is_empty() {
                continue;
            }
            let qp = from_dense(self.ring, q).scale(sign);
            for (g, t) in out.iter_mut().zip(&ts[k]) {
                if !t.is_zero() {
                    *g = &*g + &(&qp * t);
                }
            }
        }
        out
    }

    fn scale_transform(v: &mut [Poly], c: &Q) {
        for t in v.iter_mut() {
            *t = t.scale(c);
        }
    }
}

fn spoly(a: &Dense, b: &Dense, order: MonomialOrder) -> (Dense, Monomial, Monomial) {
    let la = &lead(a).0;
    let lb = &lead(b).0;
    let l = la.lcm(lb);
    let ma = l.div(la);
    let mb = l.div(lb);
    let shifted: Dense = a.iter().map(|(m, c)| (m.mul(&ma), c.clone())).collect();
    (sub_scaled(&shifted, &Q::one(), &mb, b, order), ma, mb)
}

pub(crate) fn groebner(ring: &Ring, gens: &[Poly], order: MonomialOrder, track: bool) -> GbResult {
    let ngens = gens.len();
    let mut b = Builder {
        ring,
        polys: Vec::new(),
        transforms: track.then(Vec::new),
        ngens,
    };
    let mut pending: HashSet<(usize, usize)> = HashSet::new();

    let unit_result = |b: &Builder, idx: usize| GbResult {
        basis: vec![vec![(Monomial::one(ring.nvars()), Q::one())]],
        transforms: b.transforms.as_ref().map(|t| vec![t[idx].clone()]),
    };

    for (i, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let mut d = to_dense(g, order);
        let inv = make_monic(&mut d);
        if let Some(ts) = b.transforms.as_mut() {
            let mut e: Vec<Poly> = (0..ngens).map(|_| Poly::zero(ring)).collect();
            e[i] = Poly::constant(ring, inv);
            ts.push(e);
        }
        let n = b.polys.len();
        let is_unit = lead(&d).0.is_one();
        b.polys.push(d);
        if is_unit {
            return unit_result(&b, n);
        }
        for k in 0..n {
            pending.insert((k, n));
        }
    }

    while !pending.is_empty() {
        let &(i, j) = pending
            .iter()
            .min_by(|x, y| {
                let lx = lead(&b.polys[x.0]).0.lcm(&lead(&b.polys[x.1]).0);
                let ly = lead(&b.polys[y.0]).0.lcm(&lead(&b.polys[y.1]).0);
                order.cmp(&lx, &ly).then_with(|| x.cmp(y))
            })
            .unwrap();
        pending.remove(&(i, j));

        let li = &lead(&b.polys[i]).0;
        let lj = &lead(&b.polys[j]).0;
        if li.is_coprime(lj) {
            continue;
        }
        let l = li.lcm(lj);
        let chain = (0..b.polys.len()).any(|k| {
            k != i
                && k != j
                && lead(&b.polys[k]).0.divides(&l)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }

        let (s, ma, mb) = spoly(&b.polys[i], &b.polys[j], order);
        let mut quot: Vec<Dense> = vec![Vec::new(); b.polys.len()];
        let mut r = reduce(s, &b.polys, order, b.transforms.is_some().then_some(&mut quot));
        if r.is_empty() {
            continue;
        }
        let inv = make_monic(&mut r);
        if b.transforms.is_some() {
            let ts = b.transforms.as_ref().unwrap();
            let base: Vec<Poly> = (0..b.ngens)
                .map(|g| {
                    let a = &Poly::term(ring, ma.clone(), Q::one()) * &ts[i][g];
                    let c = &Poly::term(ring, mb.clone(), Q::one()) * &ts[j][g];
                    a - c
                })
                .collect();
            let mut t = b.combine(&base, &quot, &-Q::one());
            Builder::scale_transform(&mut t, &inv);
            b.transforms.as_mut().unwrap().push(t);
        }
        let n = b.polys.len();
        let is_unit = lead(&r).0.is_one();
        b.polys.push(r);
        if is_unit {
            return unit_result(&b, n);
        }
        for k in 0..n {
            pending.insert((k, n));
        }
    }

    // minimal basis
    let n = b.polys.len();
    let keep: Vec<usize> = (0..n)
        .filter(|&i| {
            let li = &lead(&b.polys[i]).0;
            !(0..n).any(|j| {
                j != i && {
                    let lj = &lead(&b.polys[j]).0;
                    lj.divides(li) && (lj != li || j < i)
                }
            })
        })
        .collect();
    let mut polys: Vec<Dense> = keep.iter().map(|&i| b.polys[i].clone()).collect();
    let mut transforms: Option<Vec<Vec<Poly>>> =
        b.transforms.as_ref().map(|ts| keep.iter().map(|&i| ts[i].clone()).collect());

    // interreduction
    for i in 0..polys.len() {
        let others: Vec<Dense> = polys
            .iter()
            .enumerate()
            .map(|(k, p)| if k == i { Vec::new() } else { p.clone() })
            .collect();
        let head = polys[i].last().unwrap().clone();
        let tail = polys[i][..polys[i].len() - 1].to_vec();
        let active: Vec<Dense> = others.iter().filter(|p| !p.is_empty()).cloned().collect();
        let index: Vec<usize> = (0..others.len()).filter(|&k| !others[k].is_empty()).collect();
        let mut quot: Vec<Dense> = vec![Vec::new(); active.len()];
        let mut r = reduce(tail, &active, order, transforms.is_some().then_some(&mut quot));
        r.push(head);
        polys[i] = r;
        if let Some(ts) = transforms.as_mut() {
            let mut t = ts[i].clone();
            for (a, q) in quot.iter().enumerate() {
                if q.is_empty() {
                    continue;
                }
                let qp = from_dense(ring, q);
                for (g, tg) in t.iter_mut().zip(&ts[index[a]]) {
                    if !tg.is_zero() {
                        *g = &*g - &(&qp * tg);
                    }
                }
            }
            ts[i] = t;
        }
    }

    let mut idx: Vec<usize> = (0..polys.len()).collect();
    idx.sort_by(|&a, &b| order.cmp(&lead(&polys[b]).0, &lead(&polys[a]).0));
    GbResult {
        basis: idx.iter().map(|&i| polys[i].clone()).collect(),
        transforms: transforms.map(|ts| idx.iter().map(|&i| ts[i].clone()).collect()),
    }
}
