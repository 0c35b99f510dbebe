//! Recursive-descent parser for modulus scripts. Polynomial expressions are
//! handed to [`Expr::parse_prefix`]; everything else is keyword driven.

use std::fmt;

use modulus_core::exactalg::ExprError;
use modulus_core::Expr;
use thiserror::Error;

use crate::ast::*;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: expected ", self.line, self.col)?;
        match self.expected.as_slice() {
            [one] => f.write_str(one)?,
            many => write!(f, "one of {}", many.join(", "))?,
        }
        write!(f, ", found {}", self.found)
    }
}

type PResult<T> = Result<T, ParseError>;

pub fn parse(src: &str) -> PResult<Script> {
    let mut p = Parser { src, pos: 0 };
    let mut items = Vec::new();
    loop {
        p.ws();
        if p.pos == src.len() {
            return Ok(Script { items });
        }
        items.push(p.item()?);
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

const ITEM_KEYWORDS: &[&str] = &[
    "`ring`",
    "`ideal`",
    "`pair`",
    "`morphism`",
    "`sigma`",
    "`roof`",
    "`correspondence`",
    "`product`",
    "`verify`",
    "`compare`",
    "`cover`",
    "`divisor`",
    "`cycle`",
    "`show`",
];

fn is_ident_start(c: u8) -> bool {
    c.is_ascii_alphabetic() || c == b'_'
}

fn is_ident_char(c: u8) -> bool {
    c.is_ascii_alphanumeric() || c == b'_'
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn ws(&mut self) {
        loop {
            let r = self.rest();
            let trimmed = r.trim_start();
            self.pos += r.len() - trimmed.len();
            if trimmed.starts_with('#') {
                self.pos += trimmed.find('\n').unwrap_or(trimmed.len());
            } else {
                return;
            }
        }
    }

    fn location(&self, pos: usize) -> (usize, usize) {
        let before = &self.src[..pos];
        let line = before.matches('\n').count() + 1;
        let col = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
        (line, col)
    }

    fn error_at<T>(&self, pos: usize, expected: &[&str]) -> PResult<T> {
        let (line, col) = self.location(pos);
        let rest = &self.src[pos..];
        let found = if rest.is_empty() {
            "end of input".to_string()
        } else {
            let word: String = rest.chars().take_while(|c| !c.is_whitespace()).take(12).collect();
            format!("`{word}`")
        };
        Err(ParseError { line, col, expected: expected.iter().map(|s| s.to_string()).collect(), found })
    }

    fn error<T>(&mut self, expected: &[&str]) -> PResult<T> {
        self.ws();
        self.error_at(self.pos, expected)
    }

    fn peek_word(&mut self) -> Option<&'a str> {
        self.ws();
        let r = self.rest().as_bytes();
        if r.is_empty() || !is_ident_start(r[0]) {
            return None;
        }
        let n = r.iter().take_while(|&&c| is_ident_char(c)).count();
        Some(&self.rest()[..n])
    }

    fn eat_kw(&mut self, kw: &str) -> bool {
        if self.peek_word() == Some(kw) {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    fn kw(&mut self, kw: &str) -> PResult<()> {
        if self.eat_kw(kw) {
            Ok(())
        } else {
            self.error(&[&format!("`{kw}`")])
        }
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        self.ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn sym(&mut self, s: &str) -> PResult<()> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            self.error(&[&format!("`{s}`")])
        }
    }

    fn ident(&mut self) -> PResult<String> {
        match self.peek_word() {
            Some(w) => {
                self.pos += w.len();
                Ok(w.to_string())
            }
            None => self.error(&["identifier"]),
        }
    }

    /// An object name, optionally qualified as `W.x`.
    fn name(&mut self) -> PResult<String> {
        let mut n = self.ident()?;
        if self.rest().starts_with('.') && self.rest()[1..].bytes().next().is_some_and(is_ident_start) {
            self.pos += 1;
            n.push('.');
            n.push_str(&self.ident()?);
        }
        Ok(n)
    }

    fn uint(&mut self) -> PResult<usize> {
        self.ws();
        let n = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        match self.rest()[..n].parse() {
            Ok(v) if n > 0 => {
                self.pos += n;
                Ok(v)
            }
            _ => self.error(&["integer"]),
        }
    }

    fn int(&mut self) -> PResult<i64> {
        let start = self.pos;
        let neg = self.eat_sym("-");
        let v = self.uint()?;
        match i64::try_from(v) {
            Ok(v) => Ok(if neg { -v } else { v }),
            Err(_) => self.error_at(start, &["integer"]),
        }
    }

    fn expr(&mut self) -> PResult<Expr> {
        self.ws();
        match Expr::parse_prefix(self.rest()) {
            Ok((e, used)) => {
                self.pos += used;
                Ok(e)
            }
            Err(ExprError::Syntax { offset, .. }) => self.error_at(self.pos + offset, &["expression"]),
            Err(_) => self.error(&["expression"]),
        }
    }

    fn comma_list<T>(&mut self, close: &str, mut one: impl FnMut(&mut Self) -> PResult<T>) -> PResult<Vec<T>> {
        let mut out = Vec::new();
        if self.eat_sym(close) {
            return Ok(out);
        }
        loop {
            out.push(one(self)?);
            if self.eat_sym(close) {
                return Ok(out);
            }
            if !self.eat_sym(",") {
                return self.error(&["`,`", &format!("`{close}`")]);
            }
        }
    }

    /// `<e, ...>`
    fn gens(&mut self) -> PResult<Vec<Expr>> {
        self.sym("<")?;
        self.comma_list(">", Self::expr)
    }

    fn ring_ref(&mut self) -> PResult<RingRef> {
        if self.peek_word() == Some("Q") && self.src[self.pos + 1..].starts_with('[') {
            self.pos += 2;
            return Ok(RingRef::Inline(self.comma_list("]", Self::ident)?));
        }
        match self.peek_word() {
            Some(_) => Ok(RingRef::Named(self.ident()?)),
            None => self.error(&["ring name", "`Q[`"]),
        }
    }

    fn ideal_ref(&mut self) -> PResult<IdealRef> {
        self.ws();
        if self.rest().starts_with('<') {
            return Ok(IdealRef::Gens(self.gens()?));
        }
        if self.rest().starts_with('0') && !self.rest()[1..].bytes().next().is_some_and(|c| c.is_ascii_alphanumeric()) {
            self.pos += 1;
            return Ok(IdealRef::Zero);
        }
        match self.peek_word() {
            Some(_) => Ok(IdealRef::Named(self.ident()?)),
            None => self.error(&["`<`", "`0`", "ideal name"]),
        }
    }

    fn ring_spec(&mut self) -> PResult<RingSpec> {
        let ring = self.ring_ref()?;
        let quotient = if self.eat_sym("/") { Some(self.ideal_ref()?) } else { None };
        Ok(RingSpec { ring, quotient })
    }

    fn item(&mut self) -> PResult<Item> {
        self.ws();
        let (line, col) = self.location(self.pos);
        let pos = Pos { line, col };
        let Some(word) = self.peek_word() else {
            return self.error(ITEM_KEYWORDS);
        };
        self.pos += word.len();
        let kind = match word {
            "ring" => {
                let name = self.ident()?;
                self.sym("=")?;
                let vars = match self.ring_ref()? {
                    RingRef::Inline(v) => v,
                    RingRef::Named(_) => return self.error(&["`Q[`"]),
                };
                self.sym(";")?;
                ItemKind::Ring { name, vars }
            }
            "ideal" => {
                let name = self.ident()?;
                self.sym("=")?;
                let gens = self.gens()?;
                self.kw("in")?;
                let ring = self.ident()?;
                self.sym(";")?;
                ItemKind::Ideal { name, gens, ring }
            }
            "pair" => self.pair()?,
            "morphism" => self.morphism()?,
            "sigma" => self.sigma()?,
            "roof" => self.roof()?,
            "correspondence" => self.correspondence()?,
            "product" => self.product()?,
            "verify" => ItemKind::Command(self.verify()?),
            "compare" => {
                self.kw("box")?;
                self.sym("-")?;
                self.kw("times")?;
                let a = self.name()?;
                self.sym(",")?;
                let b = self.name()?;
                self.sym(";")?;
                ItemKind::Command(Command::CompareBoxTimes(a, b))
            }
            "cover" => ItemKind::Command(self.cover()?),
            "divisor" => ItemKind::Command(self.divisor()?),
            "cycle" => {
                let cmd = if self.eat_kw("graph") {
                    Command::CycleGraph(self.name()?)
                } else if self.eat_kw("check") {
                    Command::CycleCheck(self.name()?)
                } else {
                    return self.error(&["`graph`", "`check`"]);
                };
                self.sym(";")?;
                ItemKind::Command(cmd)
            }
            "show" => {
                let n = self.name()?;
                self.sym(";")?;
                ItemKind::Command(Command::Show(n))
            }
            _ => {
                self.pos -= word.len();
                return self.error(ITEM_KEYWORDS);
            }
        };
        Ok(Item { pos, kind })
    }

    fn pair(&mut self) -> PResult<ItemKind> {
        let name = self.ident()?;
        self.sym("{")?;
        let mut charts = Vec::new();
        while !self.eat_sym("}") {
            if !self.eat_kw("chart") {
                return self.error(&["`chart`", "`}`"]);
            }
            self.sym("{")?;
            self.kw("ring")?;
            let ring = self.ring_ref()?;
            self.sym(";")?;
            self.kw("ideal")?;
            let ideal = self.ideal_ref()?;
            self.sym(";")?;
            self.kw("divisor")?;
            let divisor = self.expr()?;
            self.sym(";")?;
            self.sym("}")?;
            charts.push(ChartDecl { ring, ideal, divisor });
        }
        Ok(ItemKind::Pair { name, charts })
    }

    /// `v -> e;` (or `v: e;`) until the closing brace.
    fn assignments(&mut self, sep: &str) -> PResult<Vec<Assignment>> {
        let mut out = Vec::new();
        while !self.eat_sym("}") {
            let v = self.ident()?;
            self.sym(sep)?;
            let e = self.expr()?;
            self.sym(";")?;
            out.push((v, e));
        }
        Ok(out)
    }

    fn morphism(&mut self) -> PResult<ItemKind> {
        let name = self.ident()?;
        self.sym(":")?;
        let source = self.name()?;
        self.sym("->")?;
        let target = self.name()?;
        self.sym("{")?;
        let body = if self.peek_word() == Some("chart") {
            let mut charts = Vec::new();
            while !self.eat_sym("}") {
                self.kw("chart")?;
                let s = self.uint()?;
                self.sym("->")?;
                let t = self.uint()?;
                self.sym("{")?;
                charts.push(ChartMapDecl { source: s, target: t, images: self.assignments("->")? });
            }
            MorphismBody::Charts(charts)
        } else {
            MorphismBody::Single(self.assignments("->")?)
        };
        Ok(ItemKind::Morphism { name, source, target, body })
    }

    /// `{ chart N <...> <...>; ... }`
    fn chart_lists(&mut self) -> PResult<Vec<(usize, Vec<Vec<Expr>>)>> {
        self.sym("{")?;
        let mut out = Vec::new();
        while !self.eat_sym("}") {
            self.kw("chart")?;
            let c = self.uint()?;
            let mut ideals = Vec::new();
            while !self.eat_sym(";") {
                ideals.push(self.gens()?);
            }
            out.push((c, ideals));
        }
        Ok(out)
    }

    fn sigma(&mut self) -> PResult<ItemKind> {
        let name = self.ident()?;
        self.sym("=")?;
        let def = if self.eat_kw("identity") {
            let p = self.name()?;
            self.sym(";")?;
            SigmaDef::Identity(p)
        } else if self.eat_kw("blowup") {
            let pair = self.name()?;
            self.sym("{")?;
            let mut centers = Vec::new();
            while !self.eat_sym("}") {
                self.kw("chart")?;
                let c = self.uint()?;
                let g = self.gens()?;
                self.sym(";")?;
                centers.push((c, g));
            }
            SigmaDef::Blowup { pair, centers }
        } else if self.eat_kw("components") {
            let pair = self.name()?;
            SigmaDef::Components { pair, components: self.chart_lists()? }
        } else if self.eat_kw("compose") {
            SigmaDef::Compose(self.comma_list(";", Self::name)?)
        } else {
            return self.error(&["`identity`", "`blowup`", "`components`", "`compose`"]);
        };
        Ok(ItemKind::Sigma { name, def })
    }

    fn roof(&mut self) -> PResult<ItemKind> {
        let name = self.ident()?;
        self.sym("=")?;
        let def = if self.eat_kw("plain") {
            RoofDef::Plain(self.name()?)
        } else if self.eat_kw("inverse") {
            RoofDef::Inverse(self.name()?)
        } else if self.eat_kw("compose") {
            let a = self.name()?;
            self.sym(",")?;
            RoofDef::Compose(a, self.name()?)
        } else {
            let sigma = self.name()?;
            self.sym(",")?;
            RoofDef::Legs { sigma, ambient: self.name()? }
        };
        self.sym(";")?;
        Ok(ItemKind::Roof { name, def })
    }

    fn correspondence(&mut self) -> PResult<ItemKind> {
        let name = self.ident()?;
        self.sym(":")?;
        let source = self.name()?;
        self.sym("->")?;
        let target = self.name()?;
        self.sym("{")?;
        let mut components = Vec::new();
        while !self.eat_sym("}") {
            self.kw("component")?;
            let gens = self.gens()?;
            self.kw("mult")?;
            let multiplicity = self.int()?;
            self.kw("normal")?;
            let normal = self.ring_spec()?;
            self.sym("(")?;
            let images = self.comma_list(")", Self::expr)?;
            let properness = if self.eat_kw("asserted") {
                Properness::Asserted
            } else if self.eat_kw("finite") {
                self.sym("{")?;
                Properness::Finite(self.assignments(":")?)
            } else {
                return self.error(&["`asserted`", "`finite`"]);
            };
            self.sym(";")?;
            components.push(ComponentDecl { gens, multiplicity, normal, images, properness });
        }
        Ok(ItemKind::Correspondence { name, source, target, components })
    }

    fn product(&mut self) -> PResult<ItemKind> {
        if self.eat_kw("fill") {
            let product = self.name()?;
            self.kw("with")?;
            let a = self.name()?;
            self.sym(",")?;
            let b = self.name()?;
            let mode = if self.eat_kw("direct") {
                FillMode::Direct
            } else if self.eat_kw("blowup") {
                FillMode::Blowup
            } else {
                FillMode::Auto
            };
            self.sym(";")?;
            return Ok(ItemKind::Command(Command::Fill { product, a, b, mode }));
        }
        let kind = if self.eat_kw("ambient") {
            ProductKind::Ambient
        } else if self.eat_kw("fibre") {
            ProductKind::Fibre
        } else if self.eat_kw("box") {
            ProductKind::Box
        } else {
            return self.error(&["`ambient`", "`fibre`", "`box`", "`fill`"]);
        };
        let name = self.ident()?;
        self.sym("=")?;
        let f = self.name()?;
        self.sym(",")?;
        let g = self.name()?;
        self.sym(";")?;
        Ok(ItemKind::Product { kind, name, f, g })
    }

    fn verify(&mut self) -> PResult<Command> {
        let Some(what) = self.peek_word() else {
            return self.error(&["verification keyword"]);
        };
        self.pos += what.len();
        let cmd = match what {
            "aisoc" => {
                let ring = self.ring_spec()?;
                Command::VerifyAisoc { ring, divisor: self.expr()? }
            }
            "admissible" => Command::VerifyAdmissible(self.name()?),
            "minimal" => Command::VerifyMinimal(self.name()?),
            "member" => {
                let ring = self.ring_spec()?;
                self.sym(":")?;
                Command::VerifyMember { ring, element: self.expr()? }
            }
            "equal" => {
                let a = self.name()?;
                self.sym(",")?;
                Command::VerifyEqual(a, self.name()?)
            }
            "key" => Command::VerifyKey(self.name()?),
            "bound" => {
                let product = self.name()?;
                self.kw("chart")?;
                let chart = self.uint()?;
                self.sym(":")?;
                Command::VerifyBound { product, chart, bound: self.expr()? }
            }
            "sigma" => Command::VerifySigma(self.name()?),
            "ore" => {
                let sigma = self.name()?;
                self.sym(",")?;
                Command::VerifyOre { sigma, morphism: self.name()? }
            }
            "tensor" => {
                let y = self.name()?;
                self.sym(",")?;
                let z = self.name()?;
                self.kw("over")?;
                let x = self.name()?;
                self.sym(",")?;
                Command::VerifyTensor { y, z, x, t: self.name()? }
            }
            "decompose" => {
                let pair = self.name()?;
                return Ok(Command::Decompose { pair, components: self.chart_lists()? });
            }
            _ => {
                self.pos -= what.len();
                return self.error(&[
                    "`aisoc`",
                    "`admissible`",
                    "`minimal`",
                    "`member`",
                    "`equal`",
                    "`key`",
                    "`bound`",
                    "`sigma`",
                    "`ore`",
                    "`tensor`",
                    "`decompose`",
                ]);
            }
        };
        self.sym(";")?;
        Ok(cmd)
    }

    fn cover(&mut self) -> PResult<Command> {
        let zar = if self.eat_kw("zar") {
            true
        } else if self.eat_kw("fin") {
            false
        } else {
            return self.error(&["`zar`", "`fin`"]);
        };
        self.sym("{")?;
        let mut zs = Vec::new();
        let mut fs = Vec::new();
        while !self.eat_sym("}") {
            self.kw("member")?;
            let m = self.name()?;
            if zar {
                self.kw("at")?;
                zs.push((m, self.expr()?));
                self.sym(";")?;
            } else {
                self.sym("{")?;
                fs.push((m, self.assignments(":")?));
            }
        }
        Ok(Command::Cover(if zar { CoverDecl::Zar(zs) } else { CoverDecl::Fin(fs) }))
    }

    fn divisor(&mut self) -> PResult<Command> {
        let which = if self.eat_kw("geq") {
            0
        } else if self.eat_kw("rephrase") {
            1
        } else if self.eat_kw("ddh") {
            2
        } else {
            return self.error(&["`geq`", "`rephrase`", "`ddh`"]);
        };
        let ring = self.ring_spec()?;
        self.sym(":")?;
        let d1 = self.expr()?;
        let cmd = match which {
            0 => {
                self.sym(">=")?;
                Command::DivisorGeq { ring, d1, d2: self.expr()? }
            }
            1 => {
                self.sym(",")?;
                Command::DivisorRephrase { ring, d1, d2: self.expr()? }
            }
            _ => {
                self.sym(",")?;
                let d2 = self.expr()?;
                self.sym(",")?;
                Command::DivisorDdh { ring, d1, d2, h: self.expr()? }
            }
        };
        self.sym(";")?;
        Ok(cmd)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_pair() {
        let s = parse("ring R = Q[x]; pair P { chart { ring R; ideal 0; divisor x; } }").unwrap();
        assert_eq!(s.items.len(), 2);
        let ItemKind::Pair { name, charts } = &s.items[1].kind else { panic!() };
        assert_eq!(name, "P");
        assert_eq!(charts[0].divisor, Expr::var("x"));
        assert_eq!(charts[0].ideal, IdealRef::Zero);
    }

    #[test]
    fn malformed_divisor_reports_location() {
        let err = parse("ring R = Q[x];\npair P { chart { ring R; ideal 0; divisor x +; } }").unwrap_err();
        assert_eq!((err.line, err.col), (2, 46));
        assert_eq!(err.expected, vec!["expression"]);
        let err = parse("pair P { chart { ring R; ideal 0; divisr x; } }").unwrap_err();
        assert_eq!(err.expected, vec!["`divisor`"]);
        assert_eq!(err.found, "`divisr`");
    }

    #[test]
    fn unknown_item_lists_keywords() {
        let err = parse("rings R = Q[x];").unwrap_err();
        assert_eq!((err.line, err.col), (1, 1));
        assert!(err.expected.contains(&"`ring`".to_string()));
        assert!(parse("ring R = Q[x]").unwrap_err().found == "end of input");
    }

    #[test]
    fn expressions_stop_at_keywords_and_comparisons() {
        let s = parse("divisor geq Q[x, y] / <x*y> : x^2 + y >= x; verify aisoc Q[x] x - 1;").unwrap();
        let ItemKind::Command(Command::DivisorGeq { ring, d1, d2 }) = &s.items[0].kind else { panic!() };
        assert_eq!(ring.quotient.as_ref().map(|q| q.to_string()).as_deref(), Some("<x*y>"));
        assert_eq!(d1.to_string(), "x^2 + y");
        assert_eq!(d2.to_string(), "x");
        let ItemKind::Command(Command::VerifyAisoc { divisor, .. }) = &s.items[1].kind else { panic!() };
        assert_eq!(divisor.to_string(), "x - 1");
    }

    #[test]
    fn comments_and_qualified_names() {
        let s = parse("# header\nproduct fill W with W.x, a blowup; # trailing\nshow W.t;").unwrap();
        assert_eq!(s.items[0].pos, Pos { line: 2, col: 1 });
        let ItemKind::Command(Command::Fill { a, mode, .. }) = &s.items[0].kind else { panic!() };
        assert_eq!((a.as_str(), *mode), ("W.x", FillMode::Blowup));
        assert_eq!(s.items[1].kind, ItemKind::Command(Command::Show("W.t".into())));
    }
}
