//! Ambient, box and categorical products of modulus pairs, the fill-in for
//! the fibre product, and the chart comparisons built on them.

mod aisoc;
mod ambient;
mod base;
mod boxprod;
mod fill;
mod tensor_fiber;
#[cfg(test)]
mod testutil;

use thiserror::Error;

use crate::affine::AffineError;
use crate::modpair::{ModPairError, ModulusPair};

pub use aisoc::{build_aisoc, AisocChart, AisocReport};
pub use ambient::{ambient_product, common_bound_check, key_identities, AmbientProduct, KeyIdentities, ProductChart};
pub use base::{Factor, ProductBlock};
pub use boxprod::{box_product, box_to_times, BoxProduct, RoofComparison};
pub use fill::{fibre_fill_in, FillIn, FillStrategy};
pub use tensor_fiber::{tensor_fiber_check, TensorFiberClaim, TensorFiberReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProductError {
    #[error("the two morphisms have different targets")]
    DifferentBases,
    #[error("the square does not commute on interiors")]
    SquareDoesNotCommute,
    #[error("source chart {chart} does not lift to a single chart without blowing up")]
    NoDirectLift { chart: usize },
    #[error("the construction broke an invariant it should keep: {0}")]
    Invariant(String),
    #[error(transparent)]
    Pair(#[from] ModPairError),
    #[error(transparent)]
    Affine(#[from] AffineError),
}

/// Finite coproduct: chart lists concatenated, empty charts dropped.
pub fn coproduct(p: &ModulusPair, q: &ModulusPair) -> ModulusPair {
    p.coproduct(q)
}
