//! Executes a parsed script item by item against the core library.

use std::collections::HashMap;
use std::sync::Arc;
use std::time::Instant;

use modulus_core::affine::Presentation;
use modulus_core::cycles::{
    ddh_check, divisor_geq, graph_cycle, modulus_condition_check, product_ring, rephrasing_check, CycleComponent,
    DivisorOnRing, ModulusCorrespondence, Normalization, Properness as CycleProperness,
};
use modulus_core::exactalg::macaulay::{default_degree_bound, macaulay_member};
use modulus_core::modpair::{
    blowup_in_divisor, check_cover, decompose_interior, AmbientMorphism, Chart, CoverCertificate, FinMember,
    IntegralityWitness, ModPairError, ModulusPair, SigmaLeg, ZarMember,
};
use modulus_core::msch::{compose_roofs, ore_complete, roofs_equal, Roof};
use modulus_core::products::{
    ambient_product, box_product, box_to_times, build_aisoc, fibre_fill_in, tensor_fiber_check, AmbientProduct,
    BoxProduct, FillStrategy,
};
use modulus_core::{Expr, Ideal, MonomialOrder, Poly, Ring};

use crate::ast::*;
use crate::report::{CommandError, Entry, Report};

#[derive(Clone, Copy, Debug)]
pub struct Options {
    /// Order for every ideal built from the script.
    pub order: MonomialOrder,
    /// Degree bound for the Macaulay-matrix cross-check of `verify member`;
    /// derived from the inputs when absent.
    pub max_degree: Option<u32>,
}

impl Default for Options {
    fn default() -> Self {
        Options { order: MonomialOrder::GrevLex, max_degree: None }
    }
}

struct MorphismObj {
    result: Result<AmbientMorphism, ModPairError>,
}

struct Correspondence {
    source: Arc<ModulusPair>,
    target: Arc<ModulusPair>,
    components: Vec<CycleComponent>,
}

enum Object {
    Ring(Ring),
    Ideal(Ideal),
    Pair(Arc<ModulusPair>),
    Morphism(MorphismObj),
    Sigma(SigmaLeg),
    Roof(Roof),
    Correspondence(Correspondence),
    Ambient(Box<AmbientProduct>),
    Box(Box<BoxProduct>),
}

impl Object {
    fn kind(&self) -> &'static str {
        match self {
            Object::Ring(_) => "ring",
            Object::Ideal(_) => "ideal",
            Object::Pair(_) => "pair",
            Object::Morphism(_) => "morphism",
            Object::Sigma(_) => "sigma",
            Object::Roof(_) => "roof",
            Object::Correspondence(_) => "correspondence",
            Object::Ambient(_) => "ambient product",
            Object::Box(_) => "box product",
        }
    }
}

type Out = Result<(Option<bool>, Vec<String>), String>;

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn lines_of(text: impl ToString) -> Vec<String> {
    text.to_string().lines().map(str::to_string).collect()
}

fn poly_list(ps: &[Poly]) -> String {
    ps.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn err(e: impl ToString) -> String {
    e.to_string()
}

pub fn run(script: &Script, opts: &Options) -> Report {
    let mut env = Env { objects: HashMap::new(), opts: *opts };
    let mut report = Report::default();
    for item in &script.items {
        let start = Instant::now();
        match env.item(&item.kind) {
            Ok((verdict, lines)) => report.entries.push(Entry {
                command: item.header(),
                verdict,
                lines,
                elapsed: start.elapsed(),
            }),
            Err(message) => {
                report.error = Some(CommandError {
                    line: item.pos.line,
                    col: item.pos.col,
                    command: item.header(),
                    message,
                });
                break;
            }
        }
    }
    report
}

struct Env {
    objects: HashMap<String, Object>,
    opts: Options,
}

impl Env {
    fn define(&mut self, name: &str, obj: Object) -> Result<(), String> {
        if self.objects.contains_key(name) {
            return Err(format!("`{name}` is already defined"));
        }
        self.objects.insert(name.to_string(), obj);
        Ok(())
    }

    fn get(&self, name: &str) -> Result<&Object, String> {
        self.objects.get(name).ok_or_else(|| format!("`{name}` is not defined"))
    }

    fn wrong(&self, name: &str, want: &str) -> String {
        match self.objects.get(name) {
            Some(o) => format!("`{name}` is a {}, not a {want}", o.kind()),
            None => format!("`{name}` is not defined"),
        }
    }

    fn ideal_of(&self, ring: &Ring, gens: Vec<Poly>) -> Ideal {
        Ideal::new(ring, gens).with_order(self.opts.order)
    }

    fn eval(&self, e: &Expr, ring: &Ring) -> Result<Poly, String> {
        e.eval(ring).map_err(|x| format!("`{e}`: {x}"))
    }

    fn eval_all(&self, es: &[Expr], ring: &Ring) -> Result<Vec<Poly>, String> {
        es.iter().map(|e| self.eval(e, ring)).collect()
    }

    fn ring(&self, r: &RingRef) -> Result<Ring, String> {
        match r {
            RingRef::Inline(vars) => {
                for (i, v) in vars.iter().enumerate() {
                    if vars[..i].contains(v) {
                        return Err(format!("variable `{v}` is listed twice"));
                    }
                }
                Ok(Ring::new(vars.iter()))
            }
            RingRef::Named(n) => match self.get(n)? {
                Object::Ring(r) => Ok(r.clone()),
                _ => Err(self.wrong(n, "ring")),
            },
        }
    }

    fn ideal(&self, i: &IdealRef, ring: &Ring) -> Result<Ideal, String> {
        match i {
            IdealRef::Zero => Ok(self.ideal_of(ring, Vec::new())),
            IdealRef::Gens(g) => Ok(self.ideal_of(ring, self.eval_all(g, ring)?)),
            IdealRef::Named(n) => match self.get(n)? {
                Object::Ideal(id) if id.ring().same_as(ring) => Ok(id.clone().with_order(self.opts.order)),
                Object::Ideal(id) => Err(format!("ideal `{n}` lives in {}, not {ring}", id.ring())),
                _ => Err(self.wrong(n, "ideal")),
            },
        }
    }

    fn pres(&self, spec: &RingSpec) -> Result<Presentation, String> {
        let ring = self.ring(&spec.ring)?;
        let ideal = match &spec.quotient {
            Some(q) => self.ideal(q, &ring)?,
            None => self.ideal_of(&ring, Vec::new()),
        };
        Ok(Presentation::new(ideal))
    }

    fn pair(&self, name: &str) -> Result<Arc<ModulusPair>, String> {
        match self.get(name)? {
            Object::Pair(p) => Ok(p.clone()),
            Object::Ambient(p) => Ok(p.pair.clone()),
            Object::Box(p) => Ok(p.pair.clone()),
            _ => Err(self.wrong(name, "pair")),
        }
    }

    fn morphism(&self, name: &str) -> Result<AmbientMorphism, String> {
        if let Some((base, side)) = name.split_once('.') {
            let (x, t) = match self.get(base)? {
                Object::Ambient(p) => (&p.to_x, &p.to_t),
                Object::Box(p) => (&p.to_x, &p.to_t),
                _ => return Err(self.wrong(base, "product")),
            };
            return match side {
                "x" => Ok(x.clone()),
                "t" => Ok(t.clone()),
                _ => Err(format!("`{name}`: products have projections `.x` and `.t`")),
            };
        }
        match self.get(name)? {
            Object::Morphism(m) => m.result.clone().map_err(|e| format!("morphism `{name}` is not admissible: {e}")),
            Object::Sigma(s) => Ok(s.morphism().clone()),
            _ => Err(self.wrong(name, "morphism")),
        }
    }

    fn sigma(&self, name: &str) -> Result<SigmaLeg, String> {
        match self.get(name)? {
            Object::Sigma(s) => Ok(s.clone()),
            _ => Err(self.wrong(name, "sigma")),
        }
    }

    fn roof(&self, name: &str) -> Result<Roof, String> {
        if let Some(Object::Roof(r)) = self.objects.get(name) {
            return Ok(r.clone());
        }
        match self.morphism(name) {
            Ok(m) => Ok(Roof::from_morphism(m)),
            Err(_) if !name.contains('.') && !matches!(self.objects.get(name), Some(Object::Morphism(_))) => {
                Err(self.wrong(name, "roof"))
            }
            Err(e) => Err(e),
        }
    }

    fn ambient(&self, name: &str) -> Result<&AmbientProduct, String> {
        match self.get(name)? {
            Object::Ambient(p) => Ok(p),
            _ => Err(self.wrong(name, "ambient product")),
        }
    }

    fn item(&mut self, item: &ItemKind) -> Out {
        match item {
            ItemKind::Ring { name, vars } => {
                let ring = self.ring(&RingRef::Inline(vars.clone()))?;
                self.define(name, Object::Ring(ring))?;
                Ok((None, Vec::new()))
            }
            ItemKind::Ideal { name, gens, ring } => {
                let r = self.ring(&RingRef::Named(ring.clone()))?;
                let ideal = self.ideal(&IdealRef::Gens(gens.clone()), &r)?;
                let lines = vec![format!("groebner basis: <{}>", poly_list(&ideal.groebner_basis()))];
                self.define(name, Object::Ideal(ideal))?;
                Ok((None, lines))
            }
            ItemKind::Pair { name, charts } => self.pair_decl(name, charts),
            ItemKind::Morphism { name, source, target, body } => self.morphism_decl(name, source, target, body),
            ItemKind::Sigma { name, def } => self.sigma_decl(name, def),
            ItemKind::Roof { name, def } => self.roof_decl(name, def),
            ItemKind::Correspondence { name, source, target, components } => {
                self.correspondence_decl(name, source, target, components)
            }
            ItemKind::Product { kind, name, f, g } => self.product_decl(*kind, name, f, g),
            ItemKind::Command(c) => self.command(c),
        }
    }

    fn pair_decl(&mut self, name: &str, charts: &[ChartDecl]) -> Out {
        let mut built = Vec::with_capacity(charts.len());
        for c in charts {
            let pres = self.pres(&RingSpec { ring: c.ring.clone(), quotient: Some(c.ideal.clone()) })?;
            let d = self.eval(&c.divisor, pres.ring())?;
            built.push(Chart::new(pres, d));
        }
        let pair = ModulusPair::new(built, Vec::new()).map_err(err)?;
        let lines = lines_of(&pair);
        self.define(name, Object::Pair(Arc::new(pair)))?;
        Ok((None, lines))
    }

    fn images(&self, src: &Chart, tgt: &Chart, assigns: &[Assignment]) -> Result<Vec<Poly>, String> {
        let (sr, tr) = (src.pres.ring(), tgt.pres.ring());
        for (i, (v, _)) in assigns.iter().enumerate() {
            if tr.index_of(v).is_none() {
                return Err(format!("`{v}` is not a variable of the target chart {tr}"));
            }
            if assigns[..i].iter().any(|(w, _)| w == v) {
                return Err(format!("`{v}` is assigned twice"));
            }
        }
        tr.vars()
            .iter()
            .map(|v| match assigns.iter().find(|(w, _)| w == v) {
                Some((_, e)) => self.eval(e, sr),
                None if sr.index_of(v).is_some() => Ok(Poly::var_named(sr, v)),
                None => Err(format!("no image given for `{v}`")),
            })
            .collect()
    }

    fn morphism_decl(&mut self, name: &str, source: &str, target: &str, body: &MorphismBody) -> Out {
        let (src, tgt) = (self.pair(source)?, self.pair(target)?);
        let decls: Vec<(usize, usize, &[Assignment])> = match body {
            MorphismBody::Single(a) => {
                if !src.is_single_chart() || !tgt.is_single_chart() {
                    return Err("multi-chart pairs need `chart i -> j { ... }` blocks".into());
                }
                vec![(0, 0, a.as_slice())]
            }
            MorphismBody::Charts(cs) => cs.iter().map(|c| (c.source, c.target, c.images.as_slice())).collect(),
        };
        let mut maps: Vec<Option<(usize, Vec<Poly>)>> = vec![None; src.charts().len()];
        for (s, t, assigns) in decls {
            if s >= src.charts().len() || t >= tgt.charts().len() {
                return Err(format!("chart {s} -> {t} is out of range"));
            }
            if maps[s].is_some() {
                return Err(format!("source chart {s} is mapped twice"));
            }
            maps[s] = Some((t, self.images(src.chart(s), tgt.chart(t), assigns)?));
        }
        let maps = maps
            .into_iter()
            .enumerate()
            .map(|(k, m)| m.ok_or_else(|| format!("source chart {k} has no map")))
            .collect::<Result<Vec<_>, _>>()?;
        let result = AmbientMorphism::check_admissible(src, tgt, maps);
        let lines = match &result {
            Ok(m) => vec![format!("admissible: yes; minimal: {}", yes(m.is_minimal()))],
            Err(e @ ModPairError::NotAdmissible { .. }) => vec![format!("admissible: no ({e})")],
            Err(e) => return Err(e.to_string()),
        };
        self.define(name, Object::Morphism(MorphismObj { result }))?;
        Ok((None, lines))
    }

    fn component_ideals(
        &self,
        pair: &ModulusPair,
        comps: &[(usize, Vec<Vec<Expr>>)],
    ) -> Result<Vec<Vec<Ideal>>, String> {
        let mut out: Vec<Vec<Ideal>> =
            pair.charts().iter().map(|c| vec![self.ideal_of(c.pres.ring(), Vec::new())]).collect();
        let mut seen = vec![false; out.len()];
        for (c, ideals) in comps {
            if *c >= out.len() || seen[*c] {
                return Err(format!("chart {c} is out of range or listed twice"));
            }
            seen[*c] = true;
            let ring = pair.chart(*c).pres.ring();
            out[*c] = ideals.iter().map(|g| Ok(self.ideal_of(ring, self.eval_all(g, ring)?))).collect::<Result<_, String>>()?;
        }
        Ok(out)
    }

    fn sigma_decl(&mut self, name: &str, def: &SigmaDef) -> Out {
        let leg = match def {
            SigmaDef::Identity(p) => SigmaLeg::identity(&self.pair(p)?),
            SigmaDef::Blowup { pair, centers } => {
                let p = self.pair(pair)?;
                let mut cs: Vec<Option<Vec<Poly>>> = vec![None; p.charts().len()];
                for (c, g) in centers {
                    if *c >= cs.len() || cs[*c].is_some() {
                        return Err(format!("chart {c} is out of range or listed twice"));
                    }
                    cs[*c] = Some(self.eval_all(g, p.chart(*c).pres.ring())?);
                }
                blowup_in_divisor(&p, cs).map_err(err)?
            }
            SigmaDef::Components { pair, components } => {
                let p = self.pair(pair)?;
                decompose_interior(&p, self.component_ideals(&p, components)?).map_err(err)?.leg
            }
            SigmaDef::Compose(names) => {
                let legs = names.iter().map(|n| self.sigma(n)).collect::<Result<Vec<_>, _>>()?;
                SigmaLeg::composite(legs).map_err(err)?
            }
        };
        let mut lines = vec![format!("certificate: {}", leg.kind())];
        lines.push("source:".into());
        lines.extend(lines_of(leg.source()).into_iter().map(|l| format!("  {l}")));
        self.define(name, Object::Sigma(leg))?;
        Ok((None, lines))
    }

    fn roof_lines(r: &Roof) -> Vec<String> {
        let mut lines = vec![format!("sigma leg: {}", r.sigma.kind())];
        lines.extend(lines_of(r.sigma.morphism()).into_iter().map(|l| format!("  {l}")));
        lines.push("ambient leg:".into());
        lines.extend(lines_of(&r.ambient).into_iter().map(|l| format!("  {l}")));
        lines
    }

    fn roof_decl(&mut self, name: &str, def: &RoofDef) -> Out {
        let roof = match def {
            RoofDef::Legs { sigma, ambient } => Roof::new(self.sigma(sigma)?, self.morphism(ambient)?).map_err(err)?,
            RoofDef::Plain(m) => Roof::from_morphism(self.morphism(m)?),
            RoofDef::Inverse(s) => Roof::inverse_of(&self.sigma(s)?),
            RoofDef::Compose(a, b) => compose_roofs(&self.roof(a)?, &self.roof(b)?).map_err(err)?,
        };
        let lines = Self::roof_lines(&roof);
        self.define(name, Object::Roof(roof))?;
        Ok((None, lines))
    }

    fn correspondence_decl(&mut self, name: &str, source: &str, target: &str, comps: &[ComponentDecl]) -> Out {
        let (src, tgt) = (self.pair(source)?, self.pair(target)?);
        if !src.is_single_chart() || !tgt.is_single_chart() {
            return Err("correspondences need single-chart pairs".into());
        }
        let (xc, yc) = (src.chart(0), tgt.chart(0));
        let prod = product_ring(&xc.pres, &yc.pres);
        let ring = prod.pres.ring().clone();
        let (tring, _) = xc.pres.ring().extend(&["T"]);
        let mut components = Vec::with_capacity(comps.len());
        for c in comps {
            let ideal = self.ideal_of(&ring, self.eval_all(&c.gens, &ring)?);
            let npres = self.pres(&c.normal)?;
            let images = self.eval_all(&c.images, npres.ring())?;
            let properness = match &c.properness {
                Properness::Asserted => CycleProperness::Asserted,
                Properness::Finite(ws) => CycleProperness::Finite(
                    ws.iter()
                        .map(|(v, e)| {
                            let var = yc
                                .pres
                                .ring()
                                .index_of(v)
                                .ok_or_else(|| format!("`{v}` is not a variable of {}", yc.pres.ring()))?;
                            Ok(IntegralityWitness { var, poly: self.eval(e, &tring)? })
                        })
                        .collect::<Result<_, String>>()?,
                ),
            };
            components.push(CycleComponent {
                ideal,
                multiplicity: c.multiplicity,
                properness,
                normalization: Normalization { pres: npres, images },
            });
        }
        let lines = vec![format!("product ring: {ring}"), format!("components: {}", components.len())];
        self.define(name, Object::Correspondence(Correspondence { source: src, target: tgt, components }))?;
        Ok((None, lines))
    }

    fn product_decl(&mut self, kind: ProductKind, name: &str, f: &str, g: &str) -> Out {
        let (f, g) = (self.morphism(f)?, self.morphism(g)?);
        let mut lines = Vec::new();
        let obj = match kind {
            ProductKind::Ambient | ProductKind::Fibre => {
                let p = ambient_product(&f, &g).map_err(err)?;
                for (k, c) in p.charts.iter().enumerate() {
                    let pres = &p.pair.chart(k).pres;
                    let mut head = format!("chart {k}: block {}", c.block);
                    if let Some(i) = c.blowup_chart {
                        head.push_str(&format!(", blow-up chart {i}"));
                    }
                    lines.push(format!("{head}; ring {pres}"));
                    lines.push(format!("  d_x = {}; d_t = {}", c.d_x, c.d_t));
                    let id = p.key_identities(k);
                    lines.push(format!("  E-ideal: <d_t, d_x> + I = <{}> + I: {}", c.e, yes(id.intersection_is_e)));
                    lines.push(format!("  divisor d_t*d_x/e = {}", c.y_inf));
                }
                Object::Ambient(Box::new(p))
            }
            ProductKind::Box => {
                let p = box_product(&f, &g).map_err(err)?;
                for (k, c) in p.pair.charts().iter().enumerate() {
                    lines.push(format!("chart {k}: ring {}", c.pres));
                    lines.push(format!(
                        "  divisor {} (h_x = {}); divisor * d_s = d_x * d_t: {}",
                        c.divisor,
                        p.h_x[k],
                        yes(p.divisor_identity_holds(k))
                    ));
                }
                Object::Box(Box::new(p))
            }
        };
        self.define(name, obj)?;
        Ok((None, lines))
    }

    fn divisors(&self, ring: &RingSpec, ds: &[&Expr]) -> Result<Vec<DivisorOnRing>, String> {
        let pres = self.pres(ring)?;
        ds.iter()
            .map(|d| DivisorOnRing::new(pres.clone(), self.eval(d, pres.ring())?).map_err(|e| format!("`{d}`: {e}")))
            .collect()
    }

    fn command(&mut self, c: &Command) -> Out {
        match c {
            Command::VerifyAisoc { ring, divisor } => {
                let pres = self.pres(ring)?;
                let f = self.eval(divisor, pres.ring())?;
                let rep = build_aisoc(&pres, &f).map_err(err)?;
                let mut lines = vec![format!("ambient: {}", rep.ambient)];
                for ch in &rep.charts {
                    lines.push(format!("chart {}:", ch.label));
                    lines.push(format!("  A: {} ; divisor {} ; embedding ({})", ch.a_chart, ch.a_divisor, poly_list(ch.a_embedding.images())));
                    lines.push(format!("  C: {} ; divisor {} ; embedding ({})", ch.c_chart, ch.c_divisor, poly_list(ch.c_embedding.images())));
                    lines.push(format!(
                        "  injective: {}/{}; same subring: {}; same divisor: {}",
                        yes(ch.a_injective),
                        yes(ch.c_injective),
                        yes(ch.rings_equal),
                        yes(ch.divisors_equal)
                    ));
                }
                let triple: Vec<String> = rep.charts.iter().map(|c| c.divisor_in_ambient.to_string()).collect();
                lines.push(format!(
                    "divisor triple: ({}); expected (f, f, 1/{} = {}): {}",
                    triple.join(", "),
                    rep.t,
                    rep.s,
                    yes(rep.divisor_triple_holds())
                ));
                Ok((Some(rep.passed()), lines))
            }
            Command::VerifyAdmissible(name) => match self.get(name)? {
                Object::Morphism(MorphismObj { result: Err(e) }) => Ok((Some(false), vec![e.to_string()])),
                _ => {
                    let m = self.morphism(name)?;
                    let lines = m
                        .witnesses()
                        .iter()
                        .enumerate()
                        .map(|(k, w)| format!("chart {k}: d_src = ({}) * f*(d_tgt)", w.admissible_cofactor))
                        .collect();
                    Ok((Some(true), lines))
                }
            },
            Command::VerifyMinimal(name) => {
                if let Object::Morphism(MorphismObj { result: Err(e) }) = self.get(name)? {
                    return Ok((Some(false), vec![e.to_string()]));
                }
                let m = self.morphism(name)?;
                let lines = m
                    .witnesses()
                    .iter()
                    .enumerate()
                    .map(|(k, w)| match &w.minimal_cofactor {
                        Some(c) => format!("chart {k}: f*(d_tgt) = ({c}) * d_src"),
                        None => format!("chart {k}: f*(d_tgt) is not in <d_src> + I"),
                    })
                    .collect();
                Ok((Some(m.is_minimal()), lines))
            }
            Command::VerifyMember { ring, element } => {
                let pres = self.pres(ring)?;
                let f = self.eval(element, pres.ring())?;
                let ideal = pres.ideal();
                let gens = ideal.gens().to_vec();
                let witness = ideal.membership_witness(&f);
                let mut lines = vec![format!("groebner basis: <{}>", poly_list(&ideal.groebner_basis()))];
                let bound = match self.opts.max_degree {
                    Some(b) => b,
                    None => {
                        let mut b = default_degree_bound(&f, &gens);
                        for (c, g) in witness.iter().flatten().zip(&gens) {
                            b = b.max((c * g).total_degree().unwrap_or(0));
                        }
                        b
                    }
                };
                let oracle = macaulay_member(&f, &gens, bound);
                match &witness {
                    Some(w) => lines.push(format!("member: yes; cofactors ({})", poly_list(w))),
                    None => lines.push("member: no".into()),
                }
                let gb = witness.is_some();
                lines.push(format!(
                    "macaulay oracle at degree {bound}: {}{}",
                    if oracle { "member" } else { "no certificate" },
                    if oracle == gb { "" } else { " (disagrees)" }
                ));
                Ok((Some(gb && (oracle || self.opts.max_degree.is_some())), lines))
            }
            Command::VerifyEqual(a, b) => {
                let (ra, rb) = (self.roof(a)?, self.roof(b)?);
                let same_ends = ra.source().same_as(rb.source()) && ra.target().same_as(rb.target());
                let eq = same_ends && roofs_equal(&ra, &rb);
                Ok((Some(eq), vec![format!("same source and target: {}; equal on the interior: {}", yes(same_ends), yes(eq))]))
            }
            Command::VerifyKey(name) => {
                let p = self.ambient(name)?;
                let mut ok = true;
                let mut lines = Vec::new();
                for k in 0..p.charts.len() {
                    let id = p.key_identities(k);
                    ok &= id.holds();
                    lines.push(format!(
                        "chart {k}: <d_t, d_x> + I = <{}> + I: {}; residuals coprime: {}; d_3 = {}",
                        p.charts[k].e,
                        yes(id.intersection_is_e),
                        yes(id.residuals_coprime),
                        id.d3.map_or("none".to_string(), |d| d.to_string())
                    ));
                }
                Ok((Some(ok), lines))
            }
            Command::VerifyBound { product, chart, bound } => {
                let p = self.ambient(product)?;
                if *chart >= p.charts.len() {
                    return Err(format!("chart {chart} is out of range"));
                }
                let d = self.eval(bound, p.pair.chart(*chart).pres.ring())?;
                Ok(match p.bound_check(*chart, &d) {
                    None => (Some(false), vec![format!("`{d}` does not bound both d_t and d_x")]),
                    Some(b) => (Some(b), vec![format!("`{d}` bounds d_t and d_x; bounds d_3: {}", yes(b))]),
                })
            }
            Command::VerifySigma(name) => {
                let s = self.sigma(name)?;
                Ok(match SigmaLeg::certify(s.morphism().clone(), s.kind().clone()) {
                    Ok(leg) => (
                        Some(true),
                        vec![format!("certificate: {}", leg.kind()), format!("interior witnesses: {}", leg.interior_witnesses().len())],
                    ),
                    Err(e) => (Some(false), vec![e.to_string()]),
                })
            }
            Command::VerifyOre { sigma, morphism } => {
                let (s, f) = (self.sigma(sigma)?, self.morphism(morphism)?);
                Ok(match ore_complete(&s, &f) {
                    Ok(sq) => {
                        let mut lines = vec![format!("t: {}", sq.t.kind())];
                        lines.push("f':".into());
                        lines.extend(lines_of(&sq.f_prime).into_iter().map(|l| format!("  {l}")));
                        (Some(true), lines)
                    }
                    Err(e) => (Some(false), vec![e.to_string()]),
                })
            }
            Command::VerifyTensor { y, z, x, t } => {
                let rep = tensor_fiber_check(&self.morphism(y)?, &self.morphism(z)?, &self.morphism(x)?, &self.morphism(t)?)
                    .map_err(err)?;
                let mut lines: Vec<String> = rep
                    .claims
                    .iter()
                    .map(|c| format!("chart {}: <{}> + I = <{}> + I: {}", c.chart, poly_list(&c.f_gens), c.e_gen, yes(c.holds)))
                    .collect();
                lines.push(match &rep.interior_iso {
                    Ok(()) => "interiors: mutually inverse maps verified".into(),
                    Err(e) => format!("interiors: {e}"),
                });
                Ok((Some(rep.passed()), lines))
            }
            Command::Decompose { pair, components } => {
                let p = self.pair(pair)?;
                let comps = self.component_ideals(&p, components)?;
                Ok(match decompose_interior(&p, comps) {
                    Ok(d) => {
                        let mut lines: Vec<String> = d
                            .pieces
                            .iter()
                            .enumerate()
                            .map(|(i, piece)| {
                                let c = piece.chart(0);
                                format!("piece {i}: {} ; divisor {}", c.pres, c.divisor)
                            })
                            .collect();
                        lines.push(format!("certificate: {}", d.leg.kind()));
                        (Some(true), lines)
                    }
                    Err(e) => (Some(false), vec![e.to_string()]),
                })
            }
            Command::CompareBoxTimes(a, b) => {
                let (f, g) = (self.morphism(a)?, self.morphism(b)?);
                Ok(match box_to_times(&f, &g) {
                    Ok(cmp) => {
                        let mut lines = vec!["box product:".to_string()];
                        lines.extend(lines_of(&cmp.box_product.pair).into_iter().map(|l| format!("  {l}")));
                        lines.push("ambient product:".into());
                        lines.extend(lines_of(&cmp.times.pair).into_iter().map(|l| format!("  {l}")));
                        lines.push(format!("sigma: {}", cmp.sigma.kind()));
                        lines.push(format!("chart-wise identical: {}", yes(cmp.box_product.pair.same_as(&cmp.times.pair))));
                        (Some(true), lines)
                    }
                    Err(e) => (Some(false), vec![e.to_string()]),
                })
            }
            Command::Fill { product, a, b, mode } => {
                let strategy = match mode {
                    FillMode::Auto => FillStrategy::Auto,
                    FillMode::Direct => FillStrategy::Direct,
                    FillMode::Blowup => FillStrategy::ForceBlowup,
                };
                let (fa, fb) = (self.morphism(a)?, self.morphism(b)?);
                let p = self.ambient(product)?;
                Ok(match fibre_fill_in(p, &fa, &fb, strategy) {
                    Ok(fill) => {
                        let mut lines = vec![format!("sigma: {}", fill.sigma.kind()), "lift:".into()];
                        lines.extend(lines_of(&fill.lift).into_iter().map(|l| format!("  {l}")));
                        (Some(true), lines)
                    }
                    Err(e) => (Some(false), vec![e.to_string()]),
                })
            }
            Command::Cover(decl) => {
                let cert = match decl {
                    CoverDecl::Zar(members) => CoverCertificate::Zar(
                        members
                            .iter()
                            .map(|(m, e)| {
                                let morphism = self.morphism(m)?;
                                let ring = morphism.target().chart(0).pres.ring().clone();
                                Ok(ZarMember { element: self.eval(e, &ring)?, morphism })
                            })
                            .collect::<Result<_, String>>()?,
                    ),
                    CoverDecl::Fin(members) => CoverCertificate::Fin(
                        members
                            .iter()
                            .map(|(m, ws)| {
                                let morphism = self.morphism(m)?;
                                let sring = morphism.source().chart(0).pres.ring().clone();
                                let tchart = morphism.chart_map(0).target_chart;
                                let (tring, _) = morphism.target().chart(tchart).pres.ring().extend(&["T"]);
                                let witnesses = ws
                                    .iter()
                                    .map(|(v, e)| {
                                        let var = sring.index_of(v).ok_or_else(|| format!("`{v}` is not a variable of {sring}"))?;
                                        Ok(IntegralityWitness { var, poly: self.eval(e, &tring)? })
                                    })
                                    .collect::<Result<_, String>>()?;
                                Ok(FinMember { morphism, witnesses })
                            })
                            .collect::<Result<_, String>>()?,
                    ),
                };
                Ok(match check_cover(&cert) {
                    Ok(rep) => (Some(true), rep.lines),
                    Err(e) => (Some(false), vec![e.to_string()]),
                })
            }
            Command::DivisorGeq { ring, d1, d2 } => {
                let ds = self.divisors(ring, &[d1, d2])?;
                Ok(match divisor_geq(&ds[0], &ds[1]).map_err(err)? {
                    Some(c) => (Some(true), vec![format!("{} = ({c}) * ({}) modulo the ideal", ds[0].generator(), ds[1].generator())]),
                    None => (Some(false), vec![format!("{} is not in <{}> + I", ds[0].generator(), ds[1].generator())]),
                })
            }
            Command::DivisorRephrase { ring, d1, d2 } => {
                let ds = self.divisors(ring, &[d1, d2])?;
                Ok(match rephrasing_check(&ds[0], &ds[1]) {
                    Ok(r) => (
                        Some(r.equivalence_holds()),
                        vec![
                            format!("intersection generator e = {}", r.e),
                            format!("<e> + I = <d2> + I: {}", yes(r.intersection_is_d2)),
                            format!("d1 >= d2: {}", r.geq_cofactor.map_or("no".to_string(), |c| format!("yes, cofactor {c}"))),
                        ],
                    ),
                    Err(e) => (Some(false), vec![e.to_string()]),
                })
            }
            Command::DivisorDdh { ring, d1, d2, h } => {
                let ds = self.divisors(ring, &[d1, d2, h])?;
                Ok(match ddh_check(&ds[0], &ds[1], &ds[2]) {
                    Ok(r) => (
                        Some(r.holds),
                        vec![format!("e = {}; <d1*h, d2*h> + I = <e*h> + I: {}", r.e, yes(r.holds))],
                    ),
                    Err(e) => (Some(false), vec![e.to_string()]),
                })
            }
            Command::CycleGraph(m) => {
                let f = self.morphism(m)?;
                Ok(match graph_cycle(&f) {
                    Ok(corr) => {
                        let c = &corr.components[0];
                        let rep = &corr.reports[0];
                        (
                            Some(true),
                            vec![
                                format!("graph ideal: {}", c.ideal),
                                format!(
                                    "nu*(X_inf x Y) = {}; nu*(X x Y_inf) = {}; cofactor {}",
                                    rep.pulled_x,
                                    rep.pulled_y,
                                    rep.cofactor.as_ref().map_or("none".to_string(), ToString::to_string)
                                ),
                            ],
                        )
                    }
                    Err(e) => (Some(false), vec![e.to_string()]),
                })
            }
            Command::CycleCheck(name) => {
                let Object::Correspondence(corr) = self.get(name)? else {
                    return Err(self.wrong(name, "correspondence"));
                };
                let mut lines = Vec::new();
                for (k, c) in corr.components.iter().enumerate() {
                    let note = match c.properness {
                        CycleProperness::Asserted => "properness asserted",
                        CycleProperness::Finite(_) => "finite over the source",
                    };
                    match modulus_condition_check(c, &corr.source, &corr.target) {
                        Ok(rep) => lines.push(format!(
                            "component {k} (mult {}, {note}): nu*(X_inf x Y) = {}; nu*(X x Y_inf) = {}; cofactor {}",
                            c.multiplicity,
                            rep.pulled_x,
                            rep.pulled_y,
                            rep.cofactor.as_ref().map_or("none".to_string(), ToString::to_string)
                        )),
                        Err(e) => lines.push(format!("component {k}: {e}")),
                    }
                }
                let verdict =
                    match ModulusCorrespondence::new(corr.source.clone(), corr.target.clone(), corr.components.clone()) {
                        Ok(_) => true,
                        Err(e) => {
                            lines.push(e.to_string());
                            false
                        }
                    };
                Ok((Some(verdict), lines))
            }
            Command::Show(name) => {
                let lines = match self.get(name) {
                    Ok(Object::Ring(r)) => vec![r.to_string()],
                    Ok(Object::Ideal(i)) => vec![format!("{i} in {}", i.ring())],
                    Ok(Object::Pair(p)) => lines_of(p),
                    Ok(Object::Morphism(MorphismObj { result: Err(e) })) => vec![format!("not admissible: {e}")],
                    Ok(Object::Sigma(s)) => {
                        let mut l = vec![format!("certificate: {}", s.kind())];
                        l.extend(lines_of(s.morphism()));
                        l
                    }
                    Ok(Object::Roof(r)) => Self::roof_lines(r),
                    Ok(Object::Correspondence(c)) => {
                        c.components.iter().map(|k| format!("{} mult {}", k.ideal, k.multiplicity)).collect()
                    }
                    Ok(Object::Ambient(p)) => lines_of(&p.pair),
                    Ok(Object::Box(p)) => lines_of(&p.pair),
                    Ok(Object::Morphism(_)) | Err(_) => lines_of(self.morphism(name)?),
                };
                Ok((None, lines))
            }
        }
    }
}
