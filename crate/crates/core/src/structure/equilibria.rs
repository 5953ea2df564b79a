use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::poly::{
    real_roots_univariate, resultant_eliminate, Eliminate, Poly1, PolyError, Rat, RealRoot,
};
use crate::poly::rat_to_f64;
use crate::projective::{
    projective_type, reduce_system, ChartId, Direction, PlaneSystem, ProjectiveKind, Transformation,
};

use super::StructureError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EquilibriumKind {
    Saddle,
    NodeStable,
    NodeUnstable,
    FocusStable,
    FocusUnstable,
    CenterOrFocus,
    DegenerateLinearPart,
}

impl fmt::Display for EquilibriumKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Location {
    Finite,
    /// Equilibrium of a reduced system on the image of the line at infinity,
    /// in the given direction of the source chart.
    Infinite { direction: Direction },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Equilibrium {
    /// Chart in which `point` and `jacobian` are expressed.
    pub chart: ChartId,
    pub point: (f64, f64),
    pub exact: Option<(Rat, Rat)>,
    pub location: Location,
    pub jacobian: [[f64; 2]; 2],
    pub trace: f64,
    pub det: f64,
    pub kind: EquilibriumKind,
    pub multiplicity: u32,
    /// Stability is only meaningful up to reversal of time (infinite points).
    pub modulo_direction: bool,
}

impl Equilibrium {
    /// Eigenvalues `(re, im)` of the linear part.
    pub fn eigenvalues(&self) -> [(f64, f64); 2] {
        let half = self.trace / 2.0;
        let disc = half * half - self.det;
        if disc >= 0.0 {
            let s = disc.sqrt();
            [(half - s, 0.0), (half + s, 0.0)]
        } else {
            let s = (-disc).sqrt();
            [(half, -s), (half, s)]
        }
    }

    /// Homogeneous coordinates of the point.
    pub fn homogeneous(&self) -> [f64; 3] {
        self.chart.to_homogeneous(self.point)
    }
}

/// Classify a linear part from trace and determinant using tolerance `eps`
/// relative to the matrix scale.
pub fn classify_linear(j: [[f64; 2]; 2]) -> EquilibriumKind {
    let t = j[0][0] + j[1][1];
    let d = j[0][0] * j[1][1] - j[0][1] * j[1][0];
    let s = j.iter().flatten().fold(1.0f64, |a, b| a.max(b.abs()));
    let eps = 1e-10;
    let disc = t * t - 4.0 * d;
    if d < -eps * s * s {
        EquilibriumKind::Saddle
    } else if d.abs() <= eps * s * s {
        EquilibriumKind::DegenerateLinearPart
    } else if t.abs() <= eps * s {
        EquilibriumKind::CenterOrFocus
    } else if disc >= -eps * s * s {
        if t < 0.0 { EquilibriumKind::NodeStable } else { EquilibriumKind::NodeUnstable }
    } else if t < 0.0 {
        EquilibriumKind::FocusStable
    } else {
        EquilibriumKind::FocusUnstable
    }
}

fn classify_exact(j: &[[Rat; 2]; 2]) -> EquilibriumKind {
    let t = &j[0][0] + &j[1][1];
    let d = &j[0][0] * &j[1][1] - &j[0][1] * &j[1][0];
    let disc = &t * &t - Rat::from_integer(4.into()) * &d;
    if d.is_negative() {
        EquilibriumKind::Saddle
    } else if d.is_zero() {
        EquilibriumKind::DegenerateLinearPart
    } else if t.is_zero() {
        EquilibriumKind::CenterOrFocus
    } else if !disc.is_negative() {
        if t.is_negative() { EquilibriumKind::NodeStable } else { EquilibriumKind::NodeUnstable }
    } else if t.is_negative() {
        EquilibriumKind::FocusStable
    } else {
        EquilibriumKind::FocusUnstable
    }
}

fn field_scale(sys: &PlaneSystem, p: (f64, f64)) -> f64 {
    let r = 1.0 + p.0.abs().max(p.1.abs());
    let n = sys.degree() as i32;
    sys.x.max_abs_coeff().max(sys.y.max_abs_coeff()).max(1.0) * r.powi(n)
}

fn build(
    sys: &PlaneSystem,
    p: (f64, f64),
    exact: Option<(Rat, Rat)>,
    location: Location,
    multiplicity: u32,
) -> Equilibrium {
    let (jacobian, kind) = match &exact {
        Some((a, b)) => {
            let je = [
                [sys.x.dx().eval(a, b), sys.x.dy().eval(a, b)],
                [sys.y.dx().eval(a, b), sys.y.dy().eval(a, b)],
            ];
            let jf = [
                [rat_to_f64(&je[0][0]), rat_to_f64(&je[0][1])],
                [rat_to_f64(&je[1][0]), rat_to_f64(&je[1][1])],
            ];
            (jf, classify_exact(&je))
        }
        None => {
            let j = sys.to_f64().jacobian(p);
            (j, classify_linear(j))
        }
    };
    let modulo_direction = matches!(location, Location::Infinite { .. });
    Equilibrium {
        chart: sys.chart,
        point: p,
        exact,
        location,
        trace: jacobian[0][0] + jacobian[1][1],
        det: jacobian[0][0] * jacobian[1][1] - jacobian[0][1] * jacobian[1][0],
        jacobian,
        kind,
        multiplicity,
        modulo_direction,
    }
}

/// Classify the point `p`, which must be an equilibrium of `sys`.
pub fn classify_equilibrium(sys: &PlaneSystem, p: (f64, f64)) -> Result<Equilibrium, StructureError> {
    let f = sys.to_f64();
    let (u, v) = f.eval(p);
    let tol = 1e-8 * field_scale(sys, p);
    if u.abs() > tol || v.abs() > tol {
        return Err(StructureError::NotAnEquilibrium { x: p.0, y: p.1, residual: u.abs().max(v.abs()) });
    }
    let exact = exact_point(sys, p);
    Ok(build(sys, p, exact, Location::Finite, 1))
}

fn exact_point(sys: &PlaneSystem, p: (f64, f64)) -> Option<(Rat, Rat)> {
    let a = Rat::from_float(p.0)?;
    let b = Rat::from_float(p.1)?;
    (sys.x.eval(&a, &b).is_zero() && sys.y.eval(&a, &b).is_zero()).then_some((a, b))
}

fn newton(sys: &PlaneSystem, mut p: (f64, f64)) -> (f64, f64) {
    let f = sys.to_f64();
    for _ in 0..50 {
        let (u, v) = f.eval(p);
        let j = f.jacobian(p);
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        if det == 0.0 || !det.is_finite() {
            break;
        }
        let dx = (u * j[1][1] - v * j[0][1]) / det;
        let dy = (v * j[0][0] - u * j[1][0]) / det;
        let next = (p.0 - dx, p.1 - dy);
        if !next.0.is_finite() || !next.1.is_finite() {
            break;
        }
        let done = dx.abs().max(dy.abs()) <= 1e-16 * (1.0 + p.0.abs().max(p.1.abs()));
        p = next;
        if done {
            break;
        }
    }
    p
}

fn roots_of(p: &Poly1, tol: f64) -> Result<Vec<RealRoot>, StructureError> {
    if p.is_zero() {
        return Ok(Vec::new());
    }
    Ok(real_roots_univariate(p, tol)?)
}

/// All real finite equilibria, by resultants in both variables and pairing of
/// their real roots.
pub fn finite_equilibria(sys: &PlaneSystem, tol: f64) -> Result<Vec<Equilibrium>, StructureError> {
    if sys.x.is_constant() || sys.y.is_constant() {
        // coprimality leaves no common zeros
        return Ok(Vec::new());
    }
    let rx = match resultant_eliminate(&sys.x, &sys.y, Eliminate::Second) {
        Ok(r) => r,
        Err(PolyError::ConstantInEliminated) => return Ok(Vec::new()),
        Err(e) => return Err(e.into()),
    };
    let ry = match resultant_eliminate(&sys.x, &sys.y, Eliminate::First) {
        Ok(r) => r,
        Err(PolyError::ConstantInEliminated) => return Ok(Vec::new()),
        Err(e) => return Err(e.into()),
    };
    let xs = roots_of(&rx, tol)?;
    let ys = roots_of(&ry, tol)?;
    let f = sys.to_f64();
    let mut found: Vec<Equilibrium> = Vec::new();
    for a in &xs {
        for b in &ys {
            let p0 = (a.value, b.value);
            let scale = field_scale(sys, p0);
            let (u, v) = f.eval(p0);
            if u.abs().max(v.abs()) > 1e-5 * scale {
                continue;
            }
            let exact = match (&a.exact, &b.exact) {
                (Some(ea), Some(eb))
                    if sys.x.eval(ea, eb).is_zero() && sys.y.eval(ea, eb).is_zero() =>
                {
                    Some((ea.clone(), eb.clone()))
                }
                _ => None,
            };
            let p = if exact.is_some() { p0 } else { newton(sys, p0) };
            let (u, v) = f.eval(p);
            if exact.is_none() && u.abs().max(v.abs()) > 1e-9 * scale {
                continue;
            }
            if found
                .iter()
                .any(|e| (e.point.0 - p.0).abs() < 1e-6 && (e.point.1 - p.1).abs() < 1e-6)
            {
                continue;
            }
            let mult = a.multiplicity.min(b.multiplicity);
            found.push(build(sys, p, exact, Location::Finite, mult));
        }
    }
    found.sort_by(|a, b| a.point.partial_cmp(&b.point).unwrap());
    Ok(found)
}

fn common_roots(a: &Poly1, b: &Poly1, tol: f64) -> Result<Vec<RealRoot>, StructureError> {
    let g = a.gcd(b);
    if g.is_zero() {
        return Err(StructureError::Degenerate("both polynomials vanish identically".into()));
    }
    roots_of(&g, tol)
}

fn infinite_at(
    reduced: &PlaneSystem,
    point: (f64, f64),
    exact: Option<(Rat, Rat)>,
    direction: Direction,
    multiplicity: u32,
) -> Equilibrium {
    build(reduced, point, exact, Location::Infinite { direction }, multiplicity)
}

/// Equilibria on the line at infinity, each expressed in the reduced chart
/// where it becomes finite and classified by that reduced system.
pub fn infinite_equilibria(sys: &PlaneSystem, tol: f64) -> Result<Vec<Equilibrium>, StructureError> {
    let first = reduce_system(sys, Transformation::First).system;
    let second = reduce_system(sys, Transformation::Second).system;
    let n = sys.degree();
    let report = projective_type(sys);
    // slopes a of directions v = a u, and whether u = 0 is an equilibrium direction
    let (slopes, at_vertical): (Vec<RealRoot>, Poly1) = match report.kind {
        ProjectiveKind::PNonsingular => {
            let w = &report.w_n;
            (roots_of(&w.dehomogenize_first(), tol)?, w.dehomogenize_second())
        }
        ProjectiveKind::PSingular => {
            let xn = sys.x.homogeneous(n);
            let yn = sys.y.homogeneous(n);
            let w1 = super::w_lower(sys);
            let slopes = common_roots(&xn.dehomogenize_first(), &w1.dehomogenize_first(), tol)?;
            let g = yn.dehomogenize_second().gcd(&w1.dehomogenize_second());
            (slopes, g)
        }
    };
    // order of vanishing at zero of the polynomial describing the direction u = 0
    let vertical = at_vertical.coeffs().iter().take_while(|c| c.is_zero()).count() as u32;
    let mut out = Vec::new();
    for r in slopes {
        let exact = r.exact.clone().map(|a| (a, Rat::zero()));
        out.push(infinite_at(&first, (r.value, 0.0), exact, Direction::Slope(r.value), r.multiplicity));
    }
    if vertical > 0 && !at_vertical.is_zero() {
        let z = Some((Rat::zero(), Rat::zero()));
        out.push(infinite_at(&second, (0.0, 0.0), z, Direction::Vertical, vertical));
    }
    Ok(out)
}
