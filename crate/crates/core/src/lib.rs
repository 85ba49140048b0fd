//! Exact-arithmetic toolkit for deciding when an algebraic curve has
//! infinitely many y-fibers in a number field, constructing the certifying
//! semiconjugacy A o V = V o B, and transporting fibers along forward
//! orbits of A.

pub mod cli;
pub mod classifier;
pub mod error;
pub mod field;
pub mod linalg;
pub mod moebius;
pub mod numeric;
pub mod orbit;
pub mod poly;
pub mod qfactor;
pub mod ramification;
pub mod ratfunc;
pub mod semiconjugacy;

pub use error::Error;
pub use field::{Field, NFElem, NumberField, Rat};
pub use moebius::Moebius;
pub use poly::Poly;
pub use ratfunc::{P1, RatFunc};

/// Polynomials and rational functions over a fixed number field, the working
/// coefficient domain of the classification and construction layers.
pub type KPoly = Poly<NFElem>;
pub type KRatFunc = RatFunc<NFElem>;
pub type KMoebius = Moebius<NFElem>;
