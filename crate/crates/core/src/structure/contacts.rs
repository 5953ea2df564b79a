use serde::Serialize;

use crate::poly::{real_roots_univariate, Poly1, Rat, RealRoot};
use crate::projective::{projective_type, ChartId, Direction, PlaneSystem, ProjectiveKind};

use super::{w_lower, StructureError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Axis {
    /// The first-variable axis (second coordinate zero).
    Ox,
    /// The second-variable axis (first coordinate zero).
    Oy,
}

/// Half-plane in which trajectories near the contact point lie. For axis
/// contacts `Positive` means the closed half-plane where the other coordinate
/// is nonnegative; for equatorial contacts it refers to the sign of the
/// transverse coordinate of the reduced chart.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    Positive,
    Negative,
    Both,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ContactPoint {
    /// Chart of `point`: the system's own chart for axis contacts, the reduced
    /// chart for equatorial ones.
    pub chart: ChartId,
    pub point: (f64, f64),
    /// Exact position parameter when rational.
    pub exact: Option<Rat>,
    pub side: Side,
    /// The sign-deciding product, or the second-order product when the first
    /// derivative vanishes.
    pub certificate: f64,
    pub multiplicity: u32,
    /// For equatorial contacts, the direction at infinity of the source chart.
    pub direction: Option<Direction>,
}

/// Remove from `f` every root it shares with `g`.
fn strip_common(f: &Poly1, g: &Poly1) -> Poly1 {
    let mut f = f.clone();
    loop {
        let h = f.gcd(g);
        if h.degree().unwrap_or(0) == 0 {
            return f;
        }
        f = f.div_rem(&h).unwrap().0;
    }
}

fn roots(p: &Poly1) -> Result<Vec<RealRoot>, StructureError> {
    if p.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    Ok(real_roots_univariate(p, 1e-13)?)
}

/// Decide the side from `w(a) * f'(a)`, falling back to `w(a) * f''(a)` at
/// double roots. `positive_when` is the sign of the product that selects
/// [`Side::Positive`].
fn side_of(f: &Poly1, w: &Poly1, r: &RealRoot, positive_when: f64) -> (Side, f64) {
    let a = r.value;
    let wv = match &r.exact {
        Some(e) => crate::poly::rat_to_f64(&w.eval(e)),
        None => w.eval_f64(a),
    };
    match r.multiplicity {
        1 => {
            let prod = wv * f.derivative().eval_f64(a);
            let side = if prod * positive_when > 0.0 { Side::Positive } else { Side::Negative };
            (side, prod)
        }
        2 => (Side::Both, wv * f.derivative().derivative().eval_f64(a)),
        _ => (Side::Undetermined, 0.0),
    }
}

/// Points of an axis where the field is tangent to it (and nonzero).
pub fn axis_contact_points(sys: &PlaneSystem, axis: Axis) -> Result<Vec<ContactPoint>, StructureError> {
    // along Ox the transverse component is Y(t, 0) and the tangential one X(t, 0)
    let (normal, tangential) = match axis {
        Axis::Ox => (sys.y.on_first_axis(), sys.x.on_first_axis()),
        Axis::Oy => (sys.x.on_second_axis(), sys.y.on_second_axis()),
    };
    if normal.is_zero() {
        // the axis is made of trajectories
        return Ok(Vec::new());
    }
    let contacts = strip_common(&normal, &tangential);
    let mut out = Vec::new();
    for r in roots(&contacts)? {
        let (side, certificate) = side_of(&normal, &tangential, &r, 1.0);
        let point = match axis {
            Axis::Ox => (r.value, 0.0),
            Axis::Oy => (0.0, r.value),
        };
        out.push(ContactPoint {
            chart: sys.chart,
            point,
            exact: r.exact.clone(),
            side,
            certificate,
            multiplicity: r.multiplicity,
            direction: None,
        });
    }
    Ok(out)
}

/// Contact points of trajectories with the line at infinity (P-singular
/// systems only; otherwise the line is a trajectory and the list is empty).
pub fn equatorial_contact_points(sys: &PlaneSystem) -> Result<Vec<ContactPoint>, StructureError> {
    if projective_type(sys).kind == ProjectiveKind::PNonsingular {
        return Ok(Vec::new());
    }
    let n = sys.degree();
    let w = w_lower(sys);
    let xn = sys.x.homogeneous(n);
    let yn = sys.y.homogeneous(n);
    let mut out = Vec::new();

    // directions v = a u, seen at (a, 0) after the first transformation
    let f = xn.dehomogenize_first();
    let w1 = w.dehomogenize_first();
    for r in roots(&strip_common(&f, &w1))? {
        let (side, certificate) = side_of(&f, &w1, &r, -1.0);
        out.push(ContactPoint {
            chart: sys.chart.next(),
            point: (r.value, 0.0),
            exact: r.exact.clone(),
            side,
            certificate,
            multiplicity: r.multiplicity,
            direction: Some(Direction::Slope(r.value)),
        });
    }

    // the direction u = 0, seen at (0, 0) after the second transformation
    let g = yn.dehomogenize_second();
    let w2 = w.dehomogenize_second();
    let zero = Rat::from_integer(0.into());
    if !g.is_zero() && g.eval(&zero) == zero && w2.eval(&zero) != zero {
        let mult = g.coeffs().iter().take_while(|c| **c == zero).count() as u32;
        let r = RealRoot {
            value: 0.0,
            multiplicity: mult,
            lo: zero.clone(),
            hi: zero.clone(),
            exact: Some(zero.clone()),
        };
        let (side, certificate) = side_of(&g, &w2, &r, 1.0);
        out.push(ContactPoint {
            chart: sys.chart.prev(),
            point: (0.0, 0.0),
            exact: Some(zero),
            side,
            certificate,
            multiplicity: mult,
            direction: Some(Direction::Vertical),
        });
    }
    Ok(out)
}
