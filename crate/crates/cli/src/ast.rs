//! Syntax tree of a modulus script.

use modulus_core::Expr;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Script {
    pub items: Vec<Item>,
}

/// Source position of an item, 1-based.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Item {
    pub pos: Pos,
    pub kind: ItemKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ItemKind {
    Ring { name: String, vars: Vec<String> },
    Ideal { name: String, gens: Vec<Expr>, ring: String },
    Pair { name: String, charts: Vec<ChartDecl> },
    Morphism { name: String, source: String, target: String, body: MorphismBody },
    Sigma { name: String, def: SigmaDef },
    Roof { name: String, def: RoofDef },
    Correspondence { name: String, source: String, target: String, components: Vec<ComponentDecl> },
    Product { kind: ProductKind, name: String, f: String, g: String },
    Command(Command),
}

/// A ring given by name or written out as `Q[x, y]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingRef {
    Named(String),
    Inline(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealRef {
    Zero,
    Gens(Vec<Expr>),
    Named(String),
}

/// `RING` or `RING / IDEAL`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingSpec {
    pub ring: RingRef,
    pub quotient: Option<IdealRef>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartDecl {
    pub ring: RingRef,
    pub ideal: IdealRef,
    pub divisor: Expr,
}

/// `x -> e`, keyed by a target variable.
pub type Assignment = (String, Expr);

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MorphismBody {
    /// Images for a map between single-chart pairs.
    Single(Vec<Assignment>),
    Charts(Vec<ChartMapDecl>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartMapDecl {
    pub source: usize,
    pub target: usize,
    pub images: Vec<Assignment>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SigmaDef {
    Identity(String),
    /// Charts not listed are kept.
    Blowup { pair: String, centers: Vec<(usize, Vec<Expr>)> },
    /// Charts not listed are kept whole.
    Components { pair: String, components: Vec<(usize, Vec<Vec<Expr>>)> },
    /// Legs from the apex towards the target.
    Compose(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RoofDef {
    Legs { sigma: String, ambient: String },
    Plain(String),
    Inverse(String),
    Compose(String, String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductKind {
    Ambient,
    Fibre,
    Box,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Properness {
    Asserted,
    /// One monic relation in `T` per target variable.
    Finite(Vec<Assignment>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentDecl {
    pub gens: Vec<Expr>,
    pub multiplicity: i64,
    pub normal: RingSpec,
    pub images: Vec<Expr>,
    pub properness: Properness,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FillMode {
    Auto,
    Direct,
    Blowup,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverDecl {
    /// `member U at f;`
    Zar(Vec<(String, Expr)>),
    /// `member U { y: T^2 - x; }`
    Fin(Vec<(String, Vec<Assignment>)>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    VerifyAisoc { ring: RingSpec, divisor: Expr },
    VerifyAdmissible(String),
    VerifyMinimal(String),
    VerifyMember { ring: RingSpec, element: Expr },
    VerifyEqual(String, String),
    VerifyKey(String),
    VerifyBound { product: String, chart: usize, bound: Expr },
    VerifySigma(String),
    VerifyOre { sigma: String, morphism: String },
    VerifyTensor { y: String, z: String, x: String, t: String },
    CompareBoxTimes(String, String),
    Fill { product: String, a: String, b: String, mode: FillMode },
    Cover(CoverDecl),
    DivisorGeq { ring: RingSpec, d1: Expr, d2: Expr },
    DivisorRephrase { ring: RingSpec, d1: Expr, d2: Expr },
    DivisorDdh { ring: RingSpec, d1: Expr, d2: Expr, h: Expr },
    CycleGraph(String),
    CycleCheck(String),
    Decompose { pair: String, components: Vec<(usize, Vec<Vec<Expr>>)> },
    Show(String),
}

impl Command {
    /// Whether the command produces a pass/fail verdict.
    pub fn is_check(&self) -> bool {
        !matches!(self, Command::Show(_))
    }
}
