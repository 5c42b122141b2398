//! Unirationality and implicitization for plane differential curves over
//! `Q(t)` with derivation `d/dt`.

pub mod curve;
pub mod diffpoly;
pub mod error;
mod fmt_util;
pub mod ore;
pub mod parse;
pub mod resultant;
pub mod scalar;

pub use curve::{GeneralRationalParam, LinearCurve, LinearRationalParam, ProperReport};
pub use diffpoly::{DerivVar, DiffPoly, Indet, Monomial, Order, Ranking, RankingKind};
pub use error::{Error, Result};
pub use ore::OreOp;
pub use scalar::{QPoly, ScalarRat};
