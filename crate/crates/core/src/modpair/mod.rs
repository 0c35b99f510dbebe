//! Modulus pairs, ambient morphisms, abstract admissible blow-ups and
//! covering certificates.

mod cover;
mod morphism;
mod pair;
mod sigma;

use thiserror::Error;

use crate::affine::AffineError;

pub(crate) use cover::is_monic_in_last;
pub use cover::{check_cover, CoverCertificate, CoverReport, FinMember, IntegralityWitness, ZarMember};
pub use morphism::{AmbientMorphism, ChartMap, ChartWitness};
pub use pair::{Chart, ModulusPair, Model, Overlap};
pub use sigma::{
    blowup_in_divisor, center_is_principal, decompose_interior, Decomposition, InteriorWitness, SigmaData, SigmaKind,
    SigmaLeg,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModPairError {
    #[error("divisor `{divisor}` on chart {chart} is a zero-divisor")]
    DivisorNotCartier { chart: usize, divisor: String },
    #[error("divisors of charts {i} and {j} differ by more than a unit on the overlap")]
    DivisorsDisagreeOnOverlap { i: usize, j: usize },
    #[error("a modulus pair needs at least one chart")]
    NoCharts,
    #[error("chart {chart}: `{divisor}` is not in <{pulled}> + I, so the modulus condition fails")]
    NotAdmissible { chart: usize, divisor: String, pulled: String },
    #[error("chart {chart}: pulled-back divisor `{pulled}` is not in <{divisor}> + I, so the morphism is not minimal")]
    NotMinimal { chart: usize, divisor: String, pulled: String },
    #[error("chart {chart} refers to target chart {target}, which does not exist")]
    BadChartIndex { chart: usize, target: usize },
    #[error("source has {expected} charts but {got} chart maps were given")]
    ChartCount { expected: usize, got: usize },
    #[error("morphisms do not compose: {0}")]
    NotComposable(String),
    #[error("chart {chart}: the center is not contained in the divisor (`{divisor}` is not in the radical of center + I)")]
    CenterNotInDivisor { chart: usize, divisor: String },
    #[error("source chart {chart}: the interior map is not an isomorphism onto its image ({reason})")]
    InteriorNotIso { chart: usize, reason: String },
    #[error("certificate does not match the morphism: {0}")]
    CertificateMismatch(String),
    #[error("components {a} and {b} meet on the interior")]
    NotDisjointOnInterior { a: usize, b: usize },
    #[error("the components do not cover the interior of chart {chart}")]
    NotCoveringInterior { chart: usize },
    #[error("the family is not jointly surjective")]
    NotJointlySurjective,
    #[error("member {member} is not a principal-open inclusion: {reason}")]
    NotPrincipalOpen { member: usize, reason: String },
    #[error("member {member}: no valid monic integrality witness for variable `{var}`")]
    MissingIntegralityWitness { member: usize, var: String },
    #[error("covering members must be minimal; member {member} is not")]
    MemberNotMinimal { member: usize },
    #[error(transparent)]
    Affine(#[from] AffineError),
}
