use crate::affine::{blowup_charts, AffineError, Presentation, RingMap};
use crate::exactalg::{Ideal, MonomialOrder, Poly, Ring};

use super::ProductError;

/// One chart of the comparison: the same subring of the common ambient ring
/// reached from both sides.
#[derive(Clone, Debug)]
pub struct AisocChart {
    pub label: &'static str,
    pub a_chart: Presentation,
    pub a_divisor: Poly,
    pub a_embedding: RingMap,
    pub c_chart: Presentation,
    pub c_divisor: Poly,
    pub c_embedding: RingMap,
    pub a_injective: bool,
    pub c_injective: bool,
    /// The two images generate the same subring.
    pub rings_equal: bool,
    /// The two divisors generate the same ideal of that subring.
    pub divisors_equal: bool,
    /// The `A`-side divisor in the ambient ring.
    pub divisor_in_ambient: Poly,
}

impl AisocChart {
    pub fn passed(&self) -> bool {
        self.a_injective && self.c_injective && self.rings_equal && self.divisors_equal
    }
}

/// Comparison of `A = Bl_{X∞×∞}(X̄ × P¹)` with the blow-up `C` of
/// `B̄ = X̄ × P¹` along `X∞ × {0}`, inside `W = R[t, s, w] / (I, ts - 1, fw - 1)`.
#[derive(Clone, Debug)]
pub struct AisocReport {
    pub ambient: Presentation,
    /// Names of `t = 1/s` and `w = 1/f` in the ambient ring.
    pub t: String,
    pub s: String,
    pub w: String,
    pub charts: Vec<AisocChart>,
}

impl AisocReport {
    pub fn passed(&self) -> bool {
        self.charts.iter().all(AisocChart::passed) && self.divisor_triple_holds()
    }

    /// The `A` divisors are `f`, `f`, `1/t` on the three charts.
    pub fn divisor_triple_holds(&self) -> bool {
        let r = self.ambient.ring();
        let f_img = &self.charts[0].divisor_in_ambient;
        let expected = [f_img.clone(), f_img.clone(), Poly::var_named(r, &self.s)];
        self.charts.iter().zip(&expected).all(|(c, e)| self.ambient.eq_elements(&c.divisor_in_ambient, e))
    }
}

struct Subalgebra<'a> {
    ambient: &'a Presentation,
    /// Ambient variables that lie in the subring.
    fixed: Vec<usize>,
}

impl Subalgebra<'_> {
    /// Whether each `h` lies in the subring generated by the fixed variables
    /// and `gens`, by reduction against `I + (y_i - g_i)` in an order that
    /// eliminates the remaining ambient variables.
    fn contains_all(&self, gens: &[Poly], hs: &[Poly]) -> bool {
        let r = self.ambient.ring();
        let elim: Vec<usize> = (0..r.nvars()).filter(|v| !self.fixed.contains(v)).collect();
        let mut names: Vec<String> = elim.iter().chain(&self.fixed).map(|&v| r.vars()[v].clone()).collect();
        let ys: Vec<String> = (0..gens.len()).map(|i| format!("y{i}")).collect();
        let (ring, _) = Ring::new(names.drain(..)).extend(&ys);
        let mut map = vec![0; r.nvars()];
        for (pos, &v) in elim.iter().chain(&self.fixed).enumerate() {
            map[v] = pos;
        }
        let mut rel: Vec<Poly> = self.ambient.ideal().gens().iter().map(|g| g.remap(&ring, &map)).collect();
        for (i, g) in gens.iter().enumerate() {
            rel.push(Poly::var(&ring, r.nvars() + i) - g.remap(&ring, &map));
        }
        let ideal = Ideal::new(&ring, rel).with_order(MonomialOrder::Elim(elim.len()));
        hs.iter().all(|h| {
            let nf = ideal.normal_form(&h.remap(&ring, &map));
            (0..elim.len()).all(|v| !nf.uses_var(v))
        })
    }
}

/// Builds both three-chart covers for the divisor `f` on `R = Q[x]/I` and
/// checks that they define the same subrings and divisors of the ambient ring.
pub fn build_aisoc(r: &Presentation, f: &Poly) -> Result<AisocReport, ProductError> {
    if r.is_empty() || r.is_zero(f) || !r.ideal().is_nonzerodivisor(f) {
        return Err(AffineError::DivisorIsZero.into());
    }
    let n = r.ring().nvars();
    let base_ring = r.ring();
    let (wring, names) = base_ring.extend(&["t", "s", "w"]);
    let (t, s, w) = (n, n + 1, n + 2);
    let lift = |p: &Poly| p.remap(&wring, &(0..n).collect::<Vec<_>>());
    let fw = lift(f);
    let mut gens: Vec<Poly> = r.ideal().gens().iter().map(lift).collect();
    gens.push(Poly::var(&wring, t) * Poly::var(&wring, s) - Poly::one(&wring));
    gens.push(&fw * &Poly::var(&wring, w) - Poly::one(&wring));
    let ambient = Presentation::new(Ideal::new(&wring, gens).with_order(r.ideal().order()));
    let wv = |i: usize| Poly::var(&wring, i);
    let base_images: Vec<Poly> = (0..n).map(wv).collect();

    let with_var = |name: &str| -> (Presentation, usize) {
        let (ring, _) = base_ring.extend(&[name]);
        let gens = r.ideal().gens().iter().map(|g| g.remap(&ring, &(0..n).collect::<Vec<_>>())).collect();
        (Presentation::new(Ideal::new(&ring, gens).with_order(r.ideal().order())), n)
    };
    let embed = |src: &Presentation, extra: Vec<Poly>| -> Result<RingMap, ProductError> {
        let mut images = base_images.clone();
        images.extend(extra);
        Ok(RingMap::new(src.clone(), ambient.clone(), images)?)
    };
    let lift_to = |p: &Presentation, g: &Poly| p.reduce(&g.remap(p.ring(), &(0..n).collect::<Vec<_>>()));

    // A side: R[t], and the blow-up of R[s] along (f, s)
    let (a1, _) = with_var("t");
    let a1_div = lift_to(&a1, f);
    let (rs, sv) = with_var("s");
    let a_blow = blowup_charts(&rs, &[lift_to(&rs, f), rs.var(sv)])?;
    // chart 1 inverts s: ratio f/s = f*t; chart 0 inverts f: ratio s/f = s*w
    let a2 = &a_blow.charts[1];
    let a3 = &a_blow.charts[0];
    let a_divisor = |c: &crate::affine::BlowupChart| -> Result<Poly, ProductError> {
        let fs = lift_to(&c.pres, f) * c.pres.var(sv);
        fs.div_exact(&c.exceptional)
            .or_else(|| c.pres.ideal().cofactor(&fs, &c.exceptional).map(|q| c.pres.reduce(&q)))
            .ok_or_else(|| ProductError::Invariant("exceptional generator does not divide f*s".into()))
    };

    // C side: the blow-up of R[y] along (y, f) with y = f*t, and R[u] with u = 1/(f*t)
    let (ry, yv) = with_var("y");
    let c_blow = blowup_charts(&ry, &[ry.var(yv), lift_to(&ry, f)])?;
    let c1 = &c_blow.charts[1];
    let c2 = &c_blow.charts[0];
    let (c3, _) = with_var("u");

    let ft = &fw * &wv(t);
    let ws = wv(w) * wv(s);
    let entries = [
        (
            "R[t]",
            a1.clone(),
            a1_div,
            vec![wv(t)],
            c1.pres.clone(),
            lift_to(&c1.pres, f),
            vec![ft.clone(), wv(t)],
        ),
        (
            "R[1/t, ft]",
            a2.pres.clone(),
            a_divisor(a2)?,
            vec![wv(s), ft.clone()],
            c2.pres.clone(),
            lift_to(&c2.pres, f),
            vec![ft.clone(), wv(s)],
        ),
        (
            "R[1/t, 1/(ft)]",
            a3.pres.clone(),
            a_divisor(a3)?,
            vec![wv(s), ws.clone()],
            c3.clone(),
            lift_to(&c3, f) * c3.var(n),
            vec![ws.clone()],
        ),
    ];

    let sub = Subalgebra { ambient: &ambient, fixed: (0..n).collect() };
    let mut charts = Vec::with_capacity(3);
    for (label, a_chart, a_div, a_extra, c_chart, c_div, c_extra) in entries {
        let a_embedding = embed(&a_chart, a_extra.clone())?;
        let c_embedding = embed(&c_chart, c_extra.clone())?;
        let rings_equal = sub.contains_all(&c_extra, &a_extra) && sub.contains_all(&a_extra, &c_extra);
        let da = ambient.reduce(&a_embedding.apply(&a_div));
        let dc = ambient.reduce(&c_embedding.apply(&c_div));
        let ideal = ambient.ideal();
        let divisors_equal = match (ideal.cofactor(&da, &dc), ideal.cofactor(&dc, &da)) {
            (Some(u), Some(v)) => sub.contains_all(&a_extra, &[u, v]),
            _ => false,
        };
        charts.push(AisocChart {
            label,
            a_injective: a_embedding.is_injective(),
            c_injective: c_embedding.is_injective(),
            a_chart,
            a_divisor: a_div,
            a_embedding,
            c_chart,
            c_divisor: c_div,
            c_embedding,
            rings_equal,
            divisors_equal,
            divisor_in_ambient: da,
        });
    }
    let [tn, sn, wn] = [names[0].clone(), names[1].clone(), names[2].clone()];
    Ok(AisocReport { ambient, t: tn, s: sn, w: wn, charts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_poly;

    fn run(vars: &[&str], gens: &[&str], f: &str) -> AisocReport {
        let ring = Ring::new(vars.iter().copied());
        let i = Ideal::new(&ring, gens.iter().map(|g| parse_poly(&ring, g).unwrap()).collect());
        build_aisoc(&Presentation::new(i), &parse_poly(&ring, f).unwrap()).unwrap()
    }

    #[test]
    fn affine_line_with_origin() {
        let rep = run(&["x"], &[], "x");
        for c in &rep.charts {
            assert!(c.passed(), "{}", c.label);
        }
        assert!(rep.divisor_triple_holds());
    }

    #[test]
    fn cusp_with_a_nonreduced_divisor() {
        let rep = run(&["x", "y"], &["y^2 - x^3"], "x^2");
        assert!(rep.passed());
    }

    #[test]
    fn unit_divisor() {
        let rep = run(&["x"], &[], "1");
        assert!(rep.passed());
    }

    #[test]
    fn zero_divisor_is_rejected() {
        let ring = Ring::new(["x", "y"]);
        let i = Ideal::new(&ring, vec![parse_poly(&ring, "x*y").unwrap()]);
        let err = build_aisoc(&Presentation::new(i), &parse_poly(&ring, "x").unwrap());
        assert!(matches!(err, Err(ProductError::Affine(AffineError::DivisorIsZero))));
    }

    #[test]
    fn different_subrings_are_told_apart() {
        let rep = run(&["x"], &[], "x");
        let sub = Subalgebra { ambient: &rep.ambient, fixed: vec![0] };
        let r = rep.ambient.ring();
        let t = Poly::var_named(r, &rep.t);
        let s = Poly::var_named(r, &rep.s);
        assert!(!sub.contains_all(&[t.clone()], &[s.clone()]));
        assert!(sub.contains_all(&[t.clone(), s], &[t.pow(3)]));
    }
}
