use serde::Serialize;

use crate::poly::{Poly2, Rat};
use crate::projective::PlaneSystem;

/// Mirror and point symmetries of the direction field, each decided by an
/// exact polynomial identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetryReport {
    /// About the first-variable axis.
    pub ox: bool,
    /// About the second-variable axis.
    pub oy: bool,
    pub origin: bool,
    /// About the line `v = u`.
    pub diagonal: bool,
    /// About the line `v = -u`.
    pub antidiagonal: bool,
}

fn sub(p: &Poly2, fx: &Poly2, fy: &Poly2) -> Poly2 {
    p.compose(fx, fy)
}

pub fn symmetry_report(sys: &PlaneSystem) -> SymmetryReport {
    let (x, y) = (Poly2::x(), Poly2::y());
    let (nx, ny) = (-&x, -&y);
    let (a, b) = (&sys.x, &sys.y);

    let a_my = sub(a, &x, &ny);
    let b_my = sub(b, &x, &ny);
    let ox = (&(a * &b_my) + &(&a_my * b)).is_zero();

    let a_mx = sub(a, &nx, &y);
    let b_mx = sub(b, &nx, &y);
    let oy = (&(a * &b_mx) + &(&a_mx * b)).is_zero();

    let a_o = sub(a, &nx, &ny);
    let b_o = sub(b, &nx, &ny);
    let origin = (&(a * &b_o) - &(&a_o * b)).is_zero();

    let a_s = sub(a, &y, &x);
    let b_s = sub(b, &y, &x);
    let diagonal = (&(a * &a_s) - &(b * &b_s)).is_zero();
    let antidiagonal = (&(&a_o * &a_s) - &(&b_o * &b_s)).is_zero();

    SymmetryReport { ox, oy, origin, diagonal, antidiagonal }
}

/// Symmetry about the line `A u + B v + C = 0`.
pub fn symmetric_about_line(sys: &PlaneSystem, a: &Rat, b: &Rat, c: &Rat) -> bool {
    let n2 = a * a + b * b;
    if n2 == Rat::from_integer(0.into()) {
        return false;
    }
    let lin = &(&Poly2::x().scale(a) + &Poly2::y().scale(b)) + &Poly2::constant(c.clone());
    let two = Rat::from_integer(2.into());
    let rx = &Poly2::x() - &lin.scale(&(&two * a / &n2));
    let ry = &Poly2::y() - &lin.scale(&(&two * b / &n2));
    let xr = sys.x.compose(&rx, &ry);
    let yr = sys.y.compose(&rx, &ry);
    let p = a * a - b * b;
    let q = &two * a * b;
    // the reflected field must be parallel to the mirror image of the field
    let lhs = &yr * &(&sys.x.scale(&p) + &sys.y.scale(&q));
    let rhs = &xr * &(&sys.x.scale(&q) - &sys.y.scale(&p));
    (&lhs - &rhs).is_zero()
}

/// Divergence of the field as a polynomial.
pub fn divergence_field(sys: &PlaneSystem) -> Poly2 {
    sys.divergence()
}
