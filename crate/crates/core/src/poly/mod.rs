//! Exact polynomial algebra over the rationals.

mod gcd;
mod parse;
mod poly1;
mod poly2;
mod rat;
mod resultant;
mod roots;

pub use gcd::gcd_bivariate;
pub use parse::{parse_polynomial, ParseError};
pub use poly1::Poly1;
pub use poly2::{Monomial, Poly2, Poly2F};
pub use rat::{format_rat, rat, rat_from_f64, rat_to_f64, Rat};
pub use resultant::{resultant_eliminate, Eliminate};
pub use roots::{real_roots_univariate, square_free_decomposition, RealRoot};

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum PolyError {
    #[error("polynomial is not divisible: remainder {remainder}")]
    NotDivisible { remainder: String },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("both polynomials are constant in the eliminated variable")]
    ConstantInEliminated,
    #[error("cannot isolate roots of the zero polynomial")]
    ZeroPolynomial,
}
