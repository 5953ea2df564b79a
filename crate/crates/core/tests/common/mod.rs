//! Systems shared by the integration tests, written as printed in the
//! reference corpus (products left unexpanded).
#![allow(dead_code)]

use num_traits::{Signed, Zero};
use projatlas::projective::{p1, p2, reduce_system, Transformation};
use projatlas::{PlaneSystem, Rat};

pub struct Case {
    pub name: &'static str,
    pub system: &'static str,
    /// First reduced system and its exponent `m`.
    pub first: (&'static str, i32),
    /// Second reduced system and its exponent `m`.
    pub second: (&'static str, i32),
}

pub fn sys(s: &str) -> PlaneSystem {
    PlaneSystem::parse(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

/// Pushes the field at `p` forward through the Poincare map and compares it
/// with the reduced field at the image point, exactly: the two must be
/// parallel, pointing the same way when the transverse coordinate raised to
/// `m` is positive. `None` when `p` is off the map's domain.
pub fn pullback_parallel(s: &PlaneSystem, which: Transformation, p: &(Rat, Rat)) -> Option<bool> {
    let r = reduce_system(s, which);
    let (u, v) = p;
    let (fu, fv) = (s.x.eval(u, v), s.y.eval(u, v));
    // Jacobians of (v/u, 1/u) and (1/v, u/v)
    let (q, push) = match which {
        Transformation::First => {
            let q = p1(p).ok()?;
            let u2 = u * u;
            (q, ((-v / &u2) * &fu + &fv / u, -(&fu / &u2)))
        }
        Transformation::Second => {
            let q = p2(p).ok()?;
            let v2 = v * v;
            (q, (-(&fv / &v2), &fu / v - (u / &v2) * &fv))
        }
    };
    let (gu, gv) = (r.system.x.eval(&q.0, &q.1), r.system.y.eval(&q.0, &q.1));
    let cross = &push.0 * &gv - &push.1 * &gu;
    if !cross.is_zero() {
        return Some(false);
    }
    let dot = &push.0 * &gu + &push.1 * &gv;
    let t = if r.transverse_index() == 0 { &q.0 } else { &q.1 };
    let orient_negative = r.m % 2 != 0 && t.is_negative();
    Some(dot.is_zero() || dot.is_positive() != orient_negative)
}

pub const CUBIC_FOCUS: &str = "x' = -y + x^3; y' = x*(1 + x*y)";
pub const CIRCLE_NODE: &str = "x' = 1 - x^2 - y^2; y' = x*y - 1";
pub const CIRCLE_SADDLE: &str = "x' = -1 + x^2 + y^2; y' = -5 + 5x y";
pub const CUBIC_ROTATION: &str =
    "x' = x(x^2 + y^2 - 1) - y(x^2 + y^2 + 1); y' = y(x^2 + y^2 - 1) + x(x^2 + y^2 + 1)";
pub const QUINTIC_THREE_POINTS: &str = "x' = x((x^2 + y^2) - 1)((x^2 + y^2) - 9) - y((x^2 + y^2) - 2x - 8); \
     y' = y((x^2 + y^2) - 1)((x^2 + y^2) - 9) + x((x^2 + y^2) - 2x - 8)";
pub const SEPTIC_SADDLE: &str = "x' = x(2(x^2 + y^2) + 1)((x^2 + y^2)^2 + x^2 - y^2 + 1/10) - y(2(x^2 + y^2) - 1); \
     y' = y(2(x^2 + y^2) - 1)((x^2 + y^2)^2 + x^2 - y^2 + 1/10) + x(2(x^2 + y^2) + 1)";
pub const LINE_CYCLE: &str = "x' = x - y + x(x + y); y' = (y + 1)(x + y)";
pub const UNIT_CIRCLE_CYCLE: &str = "x' = -y - x(x^2 + y^2 - 1); y' = x - y(x^2 + y^2 - 1)";
pub const CONIC_CYCLES: &str =
    "x' = -2x - y + 3x^2 + y^2 - x(x^2 + y^2); y' = -1 + x + 2x y - y(x^2 + y^2)";
pub const CONSTANT_FIELD: &str = "x' = 1; y' = 2";
pub const AFFINE_GENERIC: &str = "x' = 1 + 2x + 3y; y' = 4 + 5x + 6y";
pub const AFFINE_SINGULAR: &str = "x' = 1 + x; y' = 4 + y";

pub const REDUCTIONS: &[Case] = &[
    Case {
        name: "cubic focus",
        system: CUBIC_FOCUS,
        first: ("xi' = theta + xi^2 theta; theta' = -1 + xi theta^2", 1),
        second: ("eta' = -zeta^2 - eta^2 zeta; zeta' = -eta - eta zeta^2", 1),
    },
    Case {
        name: "circle node",
        system: CIRCLE_NODE,
        first: ("xi' = 2xi - theta^2 + xi(xi^2 - theta^2); theta' = theta(1 + xi^2 - theta^2)", 1),
        second: ("eta' = -eta(zeta - eta^2); zeta' = -1 + eta^2 - 2zeta^2 + eta^2 zeta", 1),
    },
    Case {
        name: "circle saddle",
        system: CIRCLE_SADDLE,
        first: ("xi' = 4xi - 5theta^2 - xi(xi^2 - theta^2); theta' = -theta(1 + xi^2 - theta^2)", 1),
        second: ("eta' = -5eta(zeta - eta^2); zeta' = 1 - eta^2 - 4zeta^2 + 5eta^2 zeta", 1),
    },
    Case {
        name: "cubic rotation",
        system: CUBIC_ROTATION,
        first: (
            "xi' = (1 + xi^2)(1 + xi^2 + theta^2); theta' = -theta(1 + xi^2 - theta^2 - xi(1 + xi^2 + theta^2))",
            2,
        ),
        second: (
            "eta' = -eta(1 - eta^2 + zeta^2 + zeta(1 + eta^2 + zeta^2)); zeta' = -(1 + zeta^2)(1 + eta^2 + zeta^2)",
            2,
        ),
    },
    Case {
        name: "quintic three points",
        system: QUINTIC_THREE_POINTS,
        first: (
            "xi' = theta(1 + xi^2)(1 - 2theta + xi^2 - 8theta^2); \
             theta' = -1 - 2xi^2 + 10theta^2 + xi theta^2 - xi^4 + 10xi^2 theta^2 - 2xi theta^3 - 9theta^4 + xi theta^2(xi^2 - 8theta^2)",
            3,
        ),
        second: (
            "eta' = -1 + 10eta^2 - 2zeta^2 - eta^2 zeta - 9eta^4 + 10eta^2 zeta^2 - zeta^4 + eta^2 zeta(8eta^2 + 2eta zeta - zeta^2); \
             zeta' = eta(1 + zeta^2)(-1 + 8eta^2 + 2eta zeta - zeta^2)",
            3,
        ),
    },
    Case {
        name: "septic saddle",
        system: SEPTIC_SADDLE,
        first: (
            "xi' = theta(-2xi + 2theta^2 - 4xi^3 - 2xi theta^2 + 4xi^2 theta^2 + theta^4 - 2xi^5 + 2xi^3 theta^2 - 1/5 xi theta^4 + xi^2 theta^2(2xi^2 - theta^2)); \
             theta' = -2 - 6xi^2 - 3theta^2 - 6xi^4 - 2xi^2 theta^2 - 6/5 theta^4 + 2xi theta^4 - 2xi^6 + xi^4 theta^2 + 4/5 xi^2 theta^4 - 1/10 theta^6 + xi theta^4(2xi^2 - theta^2)",
            5,
        ),
        second: (
            "eta' = -2 + 3eta^2 - 6zeta^2 - 6/5 eta^4 + 2eta^2 zeta^2 - 6zeta^4 - 2eta^4 zeta + 1/10 eta^6 + 4/5 eta^4 zeta^2 - eta^2 zeta^4 - 2zeta^6 - eta^4 zeta(eta^2 + 2zeta^2); \
             zeta' = eta(2zeta - 2eta^2 - 2eta^2 zeta + 4zeta^3 + eta^4 - 4eta^2 zeta^2 + 1/5 eta^4 zeta + 2eta^2 zeta^3 + 2zeta^5 - eta^2 zeta^2(eta^2 + 2zeta^2))",
            5,
        ),
    },
    Case {
        name: "unit circle cycle",
        system: UNIT_CIRCLE_CYCLE,
        first: ("xi' = theta(1 + xi^2); theta' = 1 + xi^2 - theta^2 + xi theta^2", 1),
        second: ("eta' = 1 - eta^2 + zeta^2 - eta^2 zeta; zeta' = -eta(1 + zeta^2)", 1),
    },
    Case {
        name: "conic cycles",
        system: CONIC_CYCLES,
        first: (
            "xi' = -xi + theta + 2xi theta - theta^2 - xi^3 + xi^2 theta; theta' = 1 - 3theta + xi^2 + 2theta^2 - xi^2 theta + xi theta^2",
            1,
        ),
        second: (
            "eta' = 1 - 2eta zeta + zeta^2 + eta^3 - eta^2 zeta; zeta' = 1 - eta - 2eta zeta + zeta^2 + eta^2 zeta - eta zeta^2",
            1,
        ),
    },
    Case {
        name: "affine generic",
        system: AFFINE_GENERIC,
        first: ("xi' = 5 + 4xi + 4theta - 3xi^2 - xi theta; theta' = -2theta - 3xi theta - theta^2", 0),
        second: ("eta' = -6eta - 4eta^2 - 5eta zeta; zeta' = 3 + eta - 4zeta - 4eta zeta - 5zeta^2", 0),
    },
    Case {
        name: "affine singular",
        system: AFFINE_SINGULAR,
        first: ("xi' = 4 - xi; theta' = -1 - theta", -1),
        second: ("eta' = -1 - 4eta; zeta' = 1 - 4zeta", -1),
    },
    Case {
        name: "constant field",
        system: CONSTANT_FIELD,
        first: ("xi' = 2 - xi; theta' = -theta", -1),
        second: ("eta' = -2eta; zeta' = 1 - 2zeta", -1),
    },
];
