//! Canonical text form of a script. Parsing the output gives back the same
//! syntax tree.

use std::fmt::{self, Display, Formatter, Write};

use modulus_core::Expr;

use crate::ast::*;

fn list<T: Display>(items: &[T]) -> String {
    let mut out = String::new();
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        write!(out, "{x}").unwrap();
    }
    out
}

fn gens(g: &[Expr]) -> String {
    format!("<{}>", list(g))
}

fn assignments(a: &[Assignment], arrow: &str) -> String {
    a.iter().map(|(v, e)| format!("{v}{arrow}{e};")).collect::<Vec<_>>().join(" ")
}

impl Display for RingRef {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            RingRef::Named(n) => f.write_str(n),
            RingRef::Inline(vars) => write!(f, "Q[{}]", vars.join(", ")),
        }
    }
}

impl Display for IdealRef {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            IdealRef::Zero => f.write_str("0"),
            IdealRef::Gens(g) => f.write_str(&gens(g)),
            IdealRef::Named(n) => f.write_str(n),
        }
    }
}

impl Display for RingSpec {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ring)?;
        if let Some(q) = &self.quotient {
            write!(f, " / {q}")?;
        }
        Ok(())
    }
}

impl Display for ProductKind {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProductKind::Ambient => "ambient",
            ProductKind::Fibre => "fibre",
            ProductKind::Box => "box",
        })
    }
}

fn chart_lists(f: &mut Formatter<'_>, comps: &[(usize, Vec<Vec<Expr>>)]) -> fmt::Result {
    f.write_str(" {\n")?;
    for (c, ideals) in comps {
        let parts: Vec<String> = ideals.iter().map(|g| gens(g)).collect();
        writeln!(f, "  chart {c} {};", parts.join(" "))?;
    }
    f.write_str("}")
}

impl Display for Item {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        self.kind.fmt(f)
    }
}

impl Display for ItemKind {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            ItemKind::Ring { name, vars } => write!(f, "ring {name} = Q[{}];", vars.join(", ")),
            ItemKind::Ideal { name, gens: g, ring } => write!(f, "ideal {name} = {} in {ring};", gens(g)),
            ItemKind::Pair { name, charts } => {
                writeln!(f, "pair {name} {{")?;
                for c in charts {
                    writeln!(f, "  chart {{ ring {}; ideal {}; divisor {}; }}", c.ring, c.ideal, c.divisor)?;
                }
                f.write_str("}")
            }
            ItemKind::Morphism { name, source, target, body } => {
                writeln!(f, "morphism {name} : {source} -> {target} {{")?;
                match body {
                    MorphismBody::Single(a) => {
                        for (v, e) in a {
                            writeln!(f, "  {v} -> {e};")?;
                        }
                    }
                    MorphismBody::Charts(cs) => {
                        for c in cs {
                            writeln!(f, "  chart {} -> {} {{ {} }}", c.source, c.target, assignments(&c.images, " -> "))?;
                        }
                    }
                }
                f.write_str("}")
            }
            ItemKind::Sigma { name, def } => {
                write!(f, "sigma {name} = ")?;
                match def {
                    SigmaDef::Identity(p) => write!(f, "identity {p};"),
                    SigmaDef::Blowup { pair, centers } => {
                        writeln!(f, "blowup {pair} {{")?;
                        for (c, g) in centers {
                            writeln!(f, "  chart {c} {};", gens(g))?;
                        }
                        f.write_str("}")
                    }
                    SigmaDef::Components { pair, components } => {
                        write!(f, "components {pair}")?;
                        chart_lists(f, components)
                    }
                    SigmaDef::Compose(legs) => write!(f, "compose {};", legs.join(", ")),
                }
            }
            ItemKind::Roof { name, def } => {
                write!(f, "roof {name} = ")?;
                match def {
                    RoofDef::Legs { sigma, ambient } => write!(f, "{sigma}, {ambient};"),
                    RoofDef::Plain(m) => write!(f, "plain {m};"),
                    RoofDef::Inverse(s) => write!(f, "inverse {s};"),
                    RoofDef::Compose(a, b) => write!(f, "compose {a}, {b};"),
                }
            }
            ItemKind::Correspondence { name, source, target, components } => {
                writeln!(f, "correspondence {name} : {source} -> {target} {{")?;
                for c in components {
                    write!(f, "  component {} mult {} normal {} ({}) ", gens(&c.gens), c.multiplicity, c.normal, list(&c.images))?;
                    match &c.properness {
                        Properness::Asserted => f.write_str("asserted;\n")?,
                        Properness::Finite(w) => writeln!(f, "finite {{ {} }};", assignments(w, ": "))?,
                    }
                }
                f.write_str("}")
            }
            ItemKind::Product { kind, name, f: a, g } => write!(f, "product {kind} {name} = {a}, {g};"),
            ItemKind::Command(c) => c.fmt(f),
        }
    }
}

impl Display for Command {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Command::VerifyAisoc { ring, divisor } => write!(f, "verify aisoc {ring} {divisor};"),
            Command::VerifyAdmissible(m) => write!(f, "verify admissible {m};"),
            Command::VerifyMinimal(m) => write!(f, "verify minimal {m};"),
            Command::VerifyMember { ring, element } => write!(f, "verify member {ring} : {element};"),
            Command::VerifyEqual(a, b) => write!(f, "verify equal {a}, {b};"),
            Command::VerifyKey(p) => write!(f, "verify key {p};"),
            Command::VerifyBound { product, chart, bound } => write!(f, "verify bound {product} chart {chart} : {bound};"),
            Command::VerifySigma(s) => write!(f, "verify sigma {s};"),
            Command::VerifyOre { sigma, morphism } => write!(f, "verify ore {sigma}, {morphism};"),
            Command::VerifyTensor { y, z, x, t } => write!(f, "verify tensor {y}, {z} over {x}, {t};"),
            Command::Decompose { pair, components } => {
                write!(f, "verify decompose {pair}")?;
                chart_lists(f, components)
            }
            Command::CompareBoxTimes(a, b) => write!(f, "compare box-times {a}, {b};"),
            Command::Fill { product, a, b, mode } => {
                write!(f, "product fill {product} with {a}, {b}")?;
                match mode {
                    FillMode::Auto => f.write_str(";"),
                    FillMode::Direct => f.write_str(" direct;"),
                    FillMode::Blowup => f.write_str(" blowup;"),
                }
            }
            Command::Cover(CoverDecl::Zar(members)) => {
                f.write_str("cover zar {\n")?;
                for (m, e) in members {
                    writeln!(f, "  member {m} at {e};")?;
                }
                f.write_str("}")
            }
            Command::Cover(CoverDecl::Fin(members)) => {
                f.write_str("cover fin {\n")?;
                for (m, w) in members {
                    writeln!(f, "  member {m} {{ {} }}", assignments(w, ": "))?;
                }
                f.write_str("}")
            }
            Command::DivisorGeq { ring, d1, d2 } => write!(f, "divisor geq {ring} : {d1} >= {d2};"),
            Command::DivisorRephrase { ring, d1, d2 } => write!(f, "divisor rephrase {ring} : {d1}, {d2};"),
            Command::DivisorDdh { ring, d1, d2, h } => write!(f, "divisor ddh {ring} : {d1}, {d2}, {h};"),
            Command::CycleGraph(m) => write!(f, "cycle graph {m};"),
            Command::CycleCheck(c) => write!(f, "cycle check {c};"),
            Command::Show(n) => write!(f, "show {n};"),
        }
    }
}

impl Display for Script {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        for item in &self.items {
            writeln!(f, "{item}")?;
        }
        Ok(())
    }
}

impl Item {
    /// One-line label used in reports: the first printed line without its
    /// opening brace.
    pub fn header(&self) -> String {
        let text = self.to_string();
        let first = text.lines().next().unwrap_or_default();
        first.strip_suffix(" {").unwrap_or(first).to_string()
    }
}
