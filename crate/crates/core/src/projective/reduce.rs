use std::fmt;

use serde::Serialize;

use crate::poly::Poly2;

use super::{ChartId, PlaneSystem, Transformation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ProjectiveKind {
    #[serde(rename = "P-singular")]
    PSingular,
    #[serde(rename = "P-nonsingular")]
    PNonsingular,
}

impl fmt::Display for ProjectiveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProjectiveKind::PSingular => "P-singular",
            ProjectiveKind::PNonsingular => "P-nonsingular",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProjectiveTypeReport {
    pub kind: ProjectiveKind,
    pub n: u32,
    pub w_n: Poly2,
    /// The line at infinity consists of trajectories exactly when nonsingular.
    pub equator_invariant: bool,
}

/// `W_k = u Y_k - v X_k` for the degree-`k` components, `k = n` here.
pub fn wn_polynomial(sys: &PlaneSystem) -> Poly2 {
    w_component(sys, sys.degree())
}

pub(crate) fn w_component(sys: &PlaneSystem, k: u32) -> Poly2 {
    let xk = sys.x.homogeneous(k);
    let yk = sys.y.homogeneous(k);
    &(&Poly2::x() * &yk) - &(&Poly2::y() * &xk)
}

pub fn projective_type(sys: &PlaneSystem) -> ProjectiveTypeReport {
    let w_n = wn_polynomial(sys);
    let kind = if w_n.is_zero() { ProjectiveKind::PSingular } else { ProjectiveKind::PNonsingular };
    ProjectiveTypeReport {
        kind,
        n: sys.degree(),
        w_n,
        equator_invariant: kind == ProjectiveKind::PNonsingular,
    }
}

/// A projectively reduced system and its time change `v^m d(tau) = dt`,
/// where `v` is the transverse coordinate (the one vanishing on the image of
/// the source chart's line at infinity).
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedSystem {
    pub system: PlaneSystem,
    pub m: i32,
    pub transformation: Transformation,
    pub source: ChartId,
}

impl ReducedSystem {
    /// Index (0 or 1) of the transverse coordinate in the target chart.
    pub fn transverse_index(&self) -> usize {
        transverse_index(self.transformation)
    }

    /// Sign relating the reduced time to the source time at a point of the
    /// target chart: `sign(v)^m`.
    pub fn orientation(&self, p: (f64, f64)) -> f64 {
        let v = if self.transverse_index() == 0 { p.0 } else { p.1 };
        if self.m % 2 == 0 || v >= 0.0 {
            1.0
        } else {
            -1.0
        }
    }
}

pub(crate) fn transverse_index(t: Transformation) -> usize {
    match t {
        Transformation::First => 1,
        Transformation::Second => 0,
    }
}

/// `v^n p(1/v, u/v)` as a polynomial in `(u, v)`: `x^i y^j -> u^j v^(n-i-j)`.
fn first_substitution(p: &Poly2, n: u32) -> Poly2 {
    Poly2::from_terms(p.terms().map(|(m, c)| (m.j, n - m.i - m.j, c.clone())))
}

/// `u^n p(v/u, 1/u)` as a polynomial in `(u, v)`: `x^i y^j -> u^(n-i-j) v^i`.
fn second_substitution(p: &Poly2, n: u32) -> Poly2 {
    Poly2::from_terms(p.terms().map(|(m, c)| (n - m.i - m.j, m.i, c.clone())))
}

/// Apply a Poincare transformation, clear the denominators and cancel the
/// largest common power of the transverse coordinate.
pub fn reduce_system(sys: &PlaneSystem, which: Transformation) -> ReducedSystem {
    let n = sys.degree();
    let xt;
    let yt;
    let (p, q) = match which {
        Transformation::First => {
            // u = y/x, v = 1/x: u' = v (Y - u X), v' = -v^2 X
            xt = first_substitution(&sys.x, n);
            yt = first_substitution(&sys.y, n);
            let p = (&yt - &xt.shift(1, 0)).shift(0, 1);
            let q = -xt.shift(0, 2);
            (p, q)
        }
        Transformation::Second => {
            // u = 1/y, v = x/y: u' = -u^2 Y, v' = u (X - v Y)
            xt = second_substitution(&sys.x, n);
            yt = second_substitution(&sys.y, n);
            let p = -yt.shift(2, 0);
            let q = (&xt - &yt.shift(0, 1)).shift(1, 0);
            (p, q)
        }
    };
    let power = |f: &Poly2| match which {
        Transformation::First => f.min_power_of_y(),
        Transformation::Second => f.min_power_of_x(),
    };
    let k = match (power(&p), power(&q)) {
        (Some(a), Some(b)) => a.min(b),
        (Some(a), None) | (None, Some(a)) => a,
        (None, None) => 0,
    };
    let (p, q) = match which {
        Transformation::First => (p.unshift(0, k), q.unshift(0, k)),
        Transformation::Second => (p.unshift(k, 0), q.unshift(k, 0)),
    };
    ReducedSystem {
        system: PlaneSystem::new_unchecked(p, q, which.target(sys.chart)),
        m: n as i32 - k as i32,
        transformation: which,
        source: sys.chart,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DegreePrediction {
    /// 1 when the system is P-nonsingular.
    pub delta: u32,
    /// 1 when the first variable divides X.
    pub delta1: u32,
    /// 1 when the second variable divides Y.
    pub delta2: u32,
    pub first: u32,
    pub second: u32,
}

pub fn predict_degrees(sys: &PlaneSystem) -> DegreePrediction {
    let n = sys.degree();
    let delta = u32::from(!wn_polynomial(sys).is_zero());
    let delta1 = u32::from(sys.x.on_second_axis().is_zero());
    let delta2 = u32::from(sys.y.on_first_axis().is_zero());
    DegreePrediction {
        delta,
        delta1,
        delta2,
        first: n + delta - delta1,
        second: n + delta - delta2,
    }
}
