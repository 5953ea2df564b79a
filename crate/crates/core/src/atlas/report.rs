use serde::Serialize;

use crate::poly::format_rat;
use crate::structure::{ContactPoint, Equilibrium, InvariantLine, LineFamily, Location};

use super::{fmt_num, Analysis};

#[derive(Serialize)]
struct SystemJson {
    #[serde(rename = "X")]
    x: String,
    #[serde(rename = "Y")]
    y: String,
    degree: u32,
}

#[derive(Serialize)]
struct FirstJson {
    #[serde(rename = "Xi")]
    xi: String,
    #[serde(rename = "Theta")]
    theta: String,
    m: i32,
}

#[derive(Serialize)]
struct SecondJson {
    #[serde(rename = "H")]
    h: String,
    #[serde(rename = "Z")]
    z: String,
    m: i32,
}

#[derive(Serialize)]
struct ReducedJson {
    first: FirstJson,
    second: SecondJson,
}

#[derive(Serialize)]
struct DegreePair {
    first: u32,
    second: u32,
}

#[derive(Serialize)]
struct DegreesJson {
    predicted: DegreePair,
    actual: DegreePair,
}

#[derive(Serialize)]
struct EquilibriumJson {
    chart: &'static str,
    location: &'static str,
    direction: Option<String>,
    point: [f64; 2],
    exact: Option<[String; 2]>,
    kind: String,
    trace: f64,
    det: f64,
    eigenvalues: [[f64; 2]; 2],
    multiplicity: u32,
    modulo_direction: bool,
}

#[derive(Serialize)]
struct ContactJson {
    chart: &'static str,
    point: [f64; 2],
    exact: Option<String>,
    side: String,
    multiplicity: u32,
    certificate: f64,
    direction: Option<String>,
}

#[derive(Serialize)]
#[allow(non_snake_case)]
struct ContactsJson {
    Ox: Vec<ContactJson>,
    Oy: Vec<ContactJson>,
    equatorial: Vec<ContactJson>,
}

#[derive(Serialize)]
struct CycleJson {
    curve: String,
    kind: String,
}

#[derive(Serialize)]
struct SymmetryJson {
    ox: bool,
    oy: bool,
    origin: bool,
    diagonal: bool,
    antidiagonal: bool,
}

/// The analysis report; field order is the JSON key order.
#[derive(Serialize)]
pub struct Report {
    system: SystemJson,
    projective_type: String,
    #[serde(rename = "W_n")]
    w_n: String,
    reduced: ReducedJson,
    degrees: DegreesJson,
    equilibria: Vec<EquilibriumJson>,
    contacts: ContactsJson,
    symmetry: SymmetryJson,
    divergence: String,
    invariant_lines: Vec<String>,
    line_families: Vec<String>,
    cycles: Vec<CycleJson>,
}

fn clean(v: f64) -> f64 {
    // JSON has no -0 distinction worth keeping, and no NaN at all
    if v == 0.0 || !v.is_finite() {
        0.0
    } else {
        v
    }
}

fn equilibrium_json(e: &Equilibrium, names: [&str; 2]) -> EquilibriumJson {
    let ev = e.eigenvalues();
    let (location, direction) = match &e.location {
        Location::Finite => ("finite", None),
        Location::Infinite { direction } => ("infinite", Some(direction.describe(names))),
    };
    EquilibriumJson {
        chart: e.chart.label(),
        location,
        direction,
        point: [clean(e.point.0), clean(e.point.1)],
        exact: e.exact.as_ref().map(|(a, b)| [format_rat(a), format_rat(b)]),
        kind: e.kind.to_string(),
        trace: clean(e.trace),
        det: clean(e.det),
        eigenvalues: [[clean(ev[0].0), clean(ev[0].1)], [clean(ev[1].0), clean(ev[1].1)]],
        multiplicity: e.multiplicity,
        modulo_direction: e.modulo_direction,
    }
}

fn contact_json(c: &ContactPoint, names: [&str; 2]) -> ContactJson {
    ContactJson {
        chart: c.chart.label(),
        point: [clean(c.point.0), clean(c.point.1)],
        exact: c.exact.as_ref().map(format_rat),
        side: format!("{:?}", c.side),
        multiplicity: c.multiplicity,
        certificate: clean(c.certificate),
        direction: c.direction.as_ref().map(|d| d.describe(names)),
    }
}

/// An invariant line in the input grammar when exact, otherwise with
/// 12-digit decimal coefficients.
pub fn line_string(line: &InvariantLine, names: [&str; 2]) -> String {
    if let Some(c) = &line.curve {
        return c.f.to_string_vars(names[0], names[1]);
    }
    let (a, b, c) = line.coefficients;
    let mut parts = Vec::new();
    for (coef, var) in [(c, ""), (a, names[0]), (b, names[1])] {
        if coef == 0.0 {
            continue;
        }
        let s = fmt_num(coef);
        parts.push(match var {
            "" => s,
            _ if coef == 1.0 => var.to_string(),
            _ if coef == -1.0 => format!("-{var}"),
            _ => format!("{s}*{var}"),
        });
    }
    parts.join(" + ").replace("+ -", "- ")
}

fn family_string(f: &LineFamily, names: [&str; 2]) -> String {
    let [u, v] = names;
    match f {
        LineFamily::Slanted { constraint } if constraint.is_zero() => {
            format!("{u} + b*{v} + c = 0 for all b, c")
        }
        LineFamily::Slanted { constraint } => {
            format!("{u} + b*{v} + c = 0 with {} = 0", constraint.to_string_vars("b", "c"))
        }
        LineFamily::Horizontal => format!("{v} + c = 0 for all c"),
    }
}

impl Report {
    pub fn new(a: &Analysis) -> Report {
        let names = a.system.var_names();
        let [u, v] = names;
        let s = &a.symmetry;
        let mut equilibria: Vec<EquilibriumJson> = a.finite.iter().map(|e| equilibrium_json(e, names)).collect();
        equilibria.extend(a.infinite.iter().map(|e| equilibrium_json(e, names)));
        Report {
            system: SystemJson { x: a.system.first_component(), y: a.system.second_component(), degree: a.system.degree() },
            projective_type: a.projective.kind.to_string(),
            w_n: a.projective.w_n.to_string_vars(u, v),
            reduced: ReducedJson {
                first: FirstJson {
                    xi: a.first.system.first_component(),
                    theta: a.first.system.second_component(),
                    m: a.first.m,
                },
                second: SecondJson {
                    h: a.second.system.first_component(),
                    z: a.second.system.second_component(),
                    m: a.second.m,
                },
            },
            degrees: DegreesJson {
                predicted: DegreePair { first: a.degrees.first, second: a.degrees.second },
                actual: DegreePair { first: a.first.system.degree(), second: a.second.system.degree() },
            },
            equilibria,
            contacts: ContactsJson {
                Ox: a.contacts_ox.iter().map(|c| contact_json(c, names)).collect(),
                Oy: a.contacts_oy.iter().map(|c| contact_json(c, names)).collect(),
                equatorial: a.equatorial.iter().map(|c| contact_json(c, names)).collect(),
            },
            symmetry: SymmetryJson {
                ox: s.ox,
                oy: s.oy,
                origin: s.origin,
                diagonal: s.diagonal,
                antidiagonal: s.antidiagonal,
            },
            divergence: a.divergence.to_string_vars(u, v),
            invariant_lines: a.lines.lines.iter().map(|l| line_string(l, names)).collect(),
            line_families: a.lines.families.iter().map(|f| family_string(f, names)).collect(),
            cycles: a
                .cycles
                .iter()
                .map(|c| CycleJson { curve: c.curve.clone(), kind: format!("{:?}", c.kind) })
                .collect(),
        }
    }
}

/// Pretty-printed UTF-8 JSON with a trailing newline.
pub fn write_report_json(analysis: &Analysis) -> String {
    let mut s = serde_json::to_string_pretty(&Report::new(analysis)).expect("report serializes");
    s.push('\n');
    s
}
