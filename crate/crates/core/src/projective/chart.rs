use num_traits::Zero;
use serde::Serialize;

use crate::poly::Rat;

use super::ProjectiveError;

/// The three affine charts of the projective plane.
///
/// In homogeneous coordinates `[X:Y:Z]` (with `(x, y) = (X/Z, Y/Z)`):
/// `XY` is `Z != 0`, `XiTheta` is `X != 0` with `(xi, theta) = (Y/X, Z/X)` and
/// `EtaZeta` is `Y != 0` with `(eta, zeta) = (Z/Y, X/Y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ChartId {
    XY,
    XiTheta,
    EtaZeta,
}

impl ChartId {
    pub const ALL: [ChartId; 3] = [ChartId::XY, ChartId::XiTheta, ChartId::EtaZeta];

    pub fn var_names(self) -> [&'static str; 2] {
        match self {
            ChartId::XY => ["x", "y"],
            ChartId::XiTheta => ["xi", "theta"],
            ChartId::EtaZeta => ["eta", "zeta"],
        }
    }

    pub fn from_var_names(a: &str, b: &str) -> Option<ChartId> {
        ChartId::ALL.into_iter().find(|c| c.var_names() == [a, b])
    }

    pub fn label(self) -> &'static str {
        match self {
            ChartId::XY => "XY",
            ChartId::XiTheta => "XiTheta",
            ChartId::EtaZeta => "EtaZeta",
        }
    }

    /// Target of the first Poincare map.
    pub fn next(self) -> ChartId {
        match self {
            ChartId::XY => ChartId::XiTheta,
            ChartId::XiTheta => ChartId::EtaZeta,
            ChartId::EtaZeta => ChartId::XY,
        }
    }

    /// Target of the second Poincare map.
    pub fn prev(self) -> ChartId {
        match self {
            ChartId::XY => ChartId::EtaZeta,
            ChartId::XiTheta => ChartId::XY,
            ChartId::EtaZeta => ChartId::XiTheta,
        }
    }

    /// Homogeneous coordinates `[X, Y, Z]` of a chart point.
    pub fn to_homogeneous(self, p: (f64, f64)) -> [f64; 3] {
        let (u, v) = p;
        match self {
            ChartId::XY => [u, v, 1.0],
            ChartId::XiTheta => [1.0, u, v],
            ChartId::EtaZeta => [v, 1.0, u],
        }
    }

    /// Local triple `(u, v, w)` of homogeneous coordinates; the chart point is
    /// `(u/w, v/w)` when `w != 0`.
    pub fn local_triple(self, h: [f64; 3]) -> [f64; 3] {
        let [x, y, z] = h;
        match self {
            ChartId::XY => [x, y, z],
            ChartId::XiTheta => [y, z, x],
            ChartId::EtaZeta => [z, x, y],
        }
    }

    pub fn from_homogeneous(self, h: [f64; 3]) -> Option<(f64, f64)> {
        let [u, v, w] = self.local_triple(h);
        (w != 0.0).then(|| (u / w, v / w))
    }
}

/// Which Poincare transformation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Transformation {
    /// `x = 1/theta, y = xi/theta`
    First,
    /// `x = zeta/eta, y = 1/eta`
    Second,
}

impl Transformation {
    pub fn target(self, source: ChartId) -> ChartId {
        match self {
            Transformation::First => source.next(),
            Transformation::Second => source.prev(),
        }
    }
}

/// First Poincare map `(u, v) -> (v/u, 1/u)`.
pub fn p1(p: &(Rat, Rat)) -> Result<(Rat, Rat), ProjectiveError> {
    if p.0.is_zero() {
        return Err(ProjectiveError::MappedToInfinity { line: "first coordinate = 0" });
    }
    Ok((&p.1 / &p.0, p.0.recip()))
}

/// Second Poincare map `(u, v) -> (1/v, u/v)`.
pub fn p2(p: &(Rat, Rat)) -> Result<(Rat, Rat), ProjectiveError> {
    if p.1.is_zero() {
        return Err(ProjectiveError::MappedToInfinity { line: "second coordinate = 0" });
    }
    Ok((p.1.recip(), &p.0 / &p.1))
}

/// Exact image of a chart point in another chart.
pub fn poincare_map_point(
    p: &(Rat, Rat),
    from: ChartId,
    to: ChartId,
) -> Result<(Rat, Rat), ProjectiveError> {
    if to == from {
        Ok(p.clone())
    } else if to == from.next() {
        p1(p)
    } else {
        p2(p)
    }
}

/// Float version of [`poincare_map_point`]; `None` when the point lies on the
/// line at infinity of the target chart.
pub fn map_point_f64(p: (f64, f64), from: ChartId, to: ChartId) -> Option<(f64, f64)> {
    to.from_homogeneous(from.to_homogeneous(p))
}

/// Radial compression of the plane into the open unit disc.
pub fn disc_embed(p: (f64, f64)) -> (f64, f64) {
    let s = (1.0 + p.0 * p.0 + p.1 * p.1).sqrt();
    (p.0 / s, p.1 / s)
}

/// Disc position of a projective point as seen in `chart`, choosing the
/// representative with nonnegative transverse coordinate. Points at infinity
/// of the chart land on the unit circle; their antipode is the same point.
pub fn disc_of_homogeneous(chart: ChartId, h: [f64; 3]) -> (f64, f64) {
    let [u, v, w] = chart.local_triple(h);
    let n = (u * u + v * v + w * w).sqrt();
    let s = if w < 0.0 { -1.0 } else { 1.0 };
    (s * u / n, s * v / n)
}

/// A direction at infinity of the `XY` chart.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Direction {
    /// The line `y = a x`.
    Slope(f64),
    /// The line `x = 0`.
    Vertical,
}

impl Direction {
    pub fn homogeneous(&self) -> [f64; 3] {
        match self {
            Direction::Slope(a) => [1.0, *a, 0.0],
            Direction::Vertical => [0.0, 1.0, 0.0],
        }
    }

    pub fn describe(&self, names: [&str; 2]) -> String {
        match self {
            Direction::Slope(a) if *a == 0.0 => format!("{} = 0", names[1]),
            Direction::Slope(a) => format!("{} = {}*{}", names[1], crate::atlas::fmt_num(*a), names[0]),
            Direction::Vertical => format!("{} = 0", names[0]),
        }
    }
}

/// Chart and coordinates where a direction at infinity of `base` becomes a
/// finite point: `y = a x` is `(a, 0)` after the first transformation, `x = 0`
/// is `(0, 0)` after the second.
pub fn direction_point(base: ChartId, dir: &Direction) -> (ChartId, (f64, f64)) {
    match dir {
        Direction::Slope(a) => (base.next(), (*a, 0.0)),
        Direction::Vertical => (base.prev(), (0.0, 0.0)),
    }
}

pub fn infinite_direction_chart(dir: &Direction) -> (ChartId, (f64, f64)) {
    direction_point(ChartId::XY, dir)
}
