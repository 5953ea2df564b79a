//! Projective phase portraits of planar polynomial vector fields.
//!
//! A system `x' = X(x, y), y' = Y(x, y)` with rational coefficients is studied on
//! the real projective plane through three affine charts related by the two
//! Poincare maps. The crate is split into:
//!
//! - [`poly`]: exact bivariate polynomials over the rationals, parsing, gcd,
//!   resultants and real root isolation.
//! - [`projective`]: charts, Poincare maps, projective classification and the
//!   reduced systems.
//! - [`structure`]: equilibria, contact points, symmetries, invariant curves.
//! - [`flow`]: adaptive integration with chart switching.
//! - [`atlas`]: the three-disc SVG rendering and the JSON report.

pub mod atlas;
pub mod flow;
pub mod poly;
pub mod projective;
pub mod structure;

pub use poly::{parse_polynomial, Poly1, Poly2, Rat};
pub use projective::{ChartId, PlaneSystem};
