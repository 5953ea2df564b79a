//! Qualitative structure: equilibria, contact points, symmetries, invariant
//! lines and curves, cycle candidates.

mod contacts;
mod equilibria;
mod invariant;
mod symmetry;

pub use contacts::{axis_contact_points, equatorial_contact_points, Axis, ContactPoint, Side};
pub use equilibria::{
    classify_equilibrium, classify_linear, finite_equilibria, infinite_equilibria, Equilibrium,
    EquilibriumKind, Location,
};
pub use invariant::{
    classify_cycle_candidate, equator_cycle, find_invariant_lines, verify_invariant_curve,
    CycleKind, InvariantCurve, InvariantLine, LineFamily, LineSearch,
};
pub use symmetry::{divergence_field, symmetric_about_line, symmetry_report, SymmetryReport};

use thiserror::Error;

use crate::poly::{Poly2, PolyError};
use crate::projective::PlaneSystem;

/// Default root-isolation width.
pub const ROOT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StructureError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("({x}, {y}) is not an equilibrium (residual {residual:e})")]
    NotAnEquilibrium { x: f64, y: f64, residual: f64 },
    #[error("curve is not invariant: remainder {remainder}")]
    NotInvariant { remainder: String },
    #[error("{0}")]
    Degenerate(String),
}

/// `W_{n-1}`, the next-to-top component of `u Y - v X`.
pub(crate) fn w_lower(sys: &PlaneSystem) -> Poly2 {
    match sys.degree() {
        0 => Poly2::zero(),
        n => crate::projective::w_component(sys, n - 1),
    }
}
