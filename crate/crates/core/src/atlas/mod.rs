//! The three-disc atlas: full analysis of a system, trajectories embedded in
//! each chart's disc, SVG rendering and the JSON report.

mod report;
mod svg;

pub use report::{line_string, write_report_json, Report};
pub use svg::{render_svg, SvgOptions};

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::flow::{seed_plan, trajectory, Atlas3, IntegratorConfig, Seed, Termination, Trajectory};
use crate::poly::Poly2;
use crate::projective::{
    disc_of_homogeneous, predict_degrees, projective_type, reduce_system, ChartId, DegreePrediction,
    PlaneSystem, ProjectiveTypeReport, ReducedSystem, Transformation,
};
use crate::structure::{
    axis_contact_points, classify_cycle_candidate, equator_cycle, equatorial_contact_points,
    finite_equilibria, find_invariant_lines, infinite_equilibria, symmetry_report, Axis, ContactPoint,
    CycleKind, Equilibrium, EquilibriumKind, LineSearch, Side, StructureError, SymmetryReport, ROOT_TOL,
};

/// Decimal with 12 significant digits, trailing zeros trimmed.
pub fn fmt_num(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let mag = v.abs().log10().floor() as i32;
    if !(-6..=14).contains(&mag) {
        return format!("{:.11e}", v);
    }
    let decimals = (11 - mag).max(0) as usize;
    let s = format!("{:.*}", decimals, v);
    let s = if s.contains('.') { s.trim_end_matches('0').trim_end_matches('.').to_string() } else { s };
    if s == "-0" { "0".to_string() } else { s }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CycleCandidate {
    /// The curve in the input grammar, or `"line at infinity"`.
    pub curve: String,
    pub kind: CycleKind,
}

/// Everything the atlas and the report need about a system.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub system: PlaneSystem,
    pub projective: ProjectiveTypeReport,
    pub first: ReducedSystem,
    pub second: ReducedSystem,
    pub degrees: DegreePrediction,
    pub finite: Vec<Equilibrium>,
    pub infinite: Vec<Equilibrium>,
    pub contacts_ox: Vec<ContactPoint>,
    pub contacts_oy: Vec<ContactPoint>,
    pub equatorial: Vec<ContactPoint>,
    pub symmetry: SymmetryReport,
    pub divergence: Poly2,
    pub lines: LineSearch,
    pub cycles: Vec<CycleCandidate>,
}

pub fn analyze(sys: &PlaneSystem) -> Result<Analysis, StructureError> {
    let [a, b] = sys.var_names();
    let lines = find_invariant_lines(sys)?;
    let mut cycles = Vec::new();
    for line in &lines.lines {
        if let Some(c) = &line.curve {
            cycles.push(CycleCandidate {
                curve: c.f.to_string_vars(a, b),
                kind: classify_cycle_candidate(sys, &c.f)?,
            });
        }
    }
    cycles.push(CycleCandidate { curve: "line at infinity".into(), kind: equator_cycle(sys)? });
    Ok(Analysis {
        system: sys.clone(),
        projective: projective_type(sys),
        first: reduce_system(sys, Transformation::First),
        second: reduce_system(sys, Transformation::Second),
        degrees: predict_degrees(sys),
        finite: finite_equilibria(sys, ROOT_TOL)?,
        infinite: infinite_equilibria(sys, ROOT_TOL)?,
        contacts_ox: axis_contact_points(sys, Axis::Ox)?,
        contacts_oy: axis_contact_points(sys, Axis::Oy)?,
        equatorial: equatorial_contact_points(sys)?,
        symmetry: symmetry_report(sys),
        divergence: sys.divergence(),
        lines,
        cycles,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MarkerOrigin {
    FiniteEquilibrium,
    InfiniteEquilibrium,
    AxisContact,
    EquatorialContact,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Glyph {
    Saddle,
    Node,
    Focus,
    CenterOrFocus,
    Degenerate,
    /// Half-disc on the side `toward` (unit vector in disc coordinates);
    /// `None` draws a full disc (both sides) or, if `certain` is false, an
    /// open circle.
    Contact { toward: Option<(f64, f64)>, certain: bool },
}

impl Glyph {
    fn of_kind(kind: EquilibriumKind) -> Glyph {
        match kind {
            EquilibriumKind::Saddle => Glyph::Saddle,
            EquilibriumKind::NodeStable | EquilibriumKind::NodeUnstable => Glyph::Node,
            EquilibriumKind::FocusStable | EquilibriumKind::FocusUnstable => Glyph::Focus,
            EquilibriumKind::CenterOrFocus => Glyph::CenterOrFocus,
            EquilibriumKind::DegenerateLinearPart => Glyph::Degenerate,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Marker {
    pub glyph: Glyph,
    /// Position in disc coordinates.
    pub pos: (f64, f64),
    pub on_boundary: bool,
    pub origin: MarkerOrigin,
    /// Index into the corresponding list of the analysis.
    pub source: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChartScene {
    pub chart: ChartId,
    /// Polylines in disc coordinates.
    pub curves: Vec<Vec<(f64, f64)>>,
    pub markers: Vec<Marker>,
}

#[derive(Clone, Debug)]
pub struct AtlasDocument {
    /// Ordered `XY`, `XiTheta`, `EtaZeta`.
    pub scenes: Vec<ChartScene>,
    pub analysis: Analysis,
    /// Per-seed integration problems; they do not abort the document.
    pub issues: Vec<String>,
}

/// Disc points closer than this to the previous kept point are dropped.
const DECIMATE: f64 = 0.008;
const BOUNDARY_EPS: f64 = 1e-12;

/// Split a sequence of projective points into disc polylines of `chart`,
/// breaking wherever the path crosses the chart's line at infinity.
pub fn disc_polylines(chart: ChartId, points: &[[f64; 3]]) -> Vec<Vec<(f64, f64)>> {
    let mut out = Vec::new();
    let mut cur: Vec<(f64, f64)> = Vec::new();
    let mut prev_sign = 0.0;
    let flush = |cur: &mut Vec<(f64, f64)>, out: &mut Vec<Vec<(f64, f64)>>| {
        if cur.len() >= 2 {
            out.push(std::mem::take(cur));
        } else {
            cur.clear();
        }
    };
    for (k, h) in points.iter().enumerate() {
        let w = chart.local_triple(*h)[2];
        if w == 0.0 {
            flush(&mut cur, &mut out);
            prev_sign = 0.0;
            continue;
        }
        let s = w.signum();
        if s != prev_sign {
            flush(&mut cur, &mut out);
        }
        prev_sign = s;
        let d = disc_of_homogeneous(chart, *h);
        let last = k + 1 == points.len();
        match cur.last() {
            Some(p) if (p.0 - d.0).hypot(p.1 - d.1) < DECIMATE && !last => {}
            _ => cur.push(d),
        }
    }
    flush(&mut cur, &mut out);
    out
}

const CELL: f64 = 0.01;
/// Path length after which coming back to a cell counts as retracing.
const REVISIT: f64 = 0.1;

/// Cells of one disc already drawn, with the path that drew them last and
/// how far along it that was.
#[derive(Default)]
struct Coverage {
    seen: HashMap<(i64, i64), (usize, f64)>,
}

impl Coverage {
    /// Remove stretches of path `id` that only retrace cells already drawn,
    /// by earlier paths or by this one at least `REVISIT` before. Retraced
    /// stretches shorter than `REVISIT` are kept, so closed orbits close.
    fn prune(&mut self, id: usize, lines: Vec<Vec<(f64, f64)>>) -> Vec<Vec<(f64, f64)>> {
        let mut travel = 0.0;
        let mut out = Vec::new();
        for line in lines {
            let mut flags = Vec::with_capacity(line.len());
            let mut at = Vec::with_capacity(line.len());
            for (k, p) in line.iter().enumerate() {
                if k > 0 {
                    travel += (p.0 - line[k - 1].0).hypot(p.1 - line[k - 1].1);
                }
                let cell = ((p.0 / CELL).floor() as i64, (p.1 / CELL).floor() as i64);
                let old = self.seen.insert(cell, (id, travel));
                flags.push(old.is_some_and(|(j, t)| j != id || travel - t > REVISIT));
                at.push(travel);
            }
            // short fresh gaps between retraced runs count as retraced
            let mut k = 0;
            while k < line.len() {
                let mut e = k;
                while e + 1 < line.len() && flags[e + 1] == flags[k] {
                    e += 1;
                }
                if !flags[k] && k > 0 && e + 1 < line.len() && at[e] - at[k] < REVISIT / 2.0 {
                    flags[k..=e].iter_mut().for_each(|f| *f = true);
                }
                k = e + 1;
            }
            let mut cur: Vec<(f64, f64)> = Vec::new();
            let mut k = 0;
            while k < line.len() {
                if !flags[k] {
                    cur.push(line[k]);
                    k += 1;
                    continue;
                }
                let mut e = k;
                while e + 1 < line.len() && flags[e + 1] {
                    e += 1;
                }
                if at[e] - at[k] < REVISIT {
                    cur.extend_from_slice(&line[k..=e]);
                } else {
                    cur.push(line[k]);
                    if cur.len() >= 2 {
                        out.push(std::mem::take(&mut cur));
                    }
                    cur = vec![line[e]];
                }
                k = e + 1;
            }
            if cur.len() >= 2 {
                out.push(cur);
            }
        }
        // slivers below a cell are invisible at any sensible size
        out.retain(|l| l.windows(2).map(|w| (w[1].0 - w[0].0).hypot(w[1].1 - w[0].1)).sum::<f64>() >= CELL);
        out
    }
}

fn equilibrium_markers(chart: ChartId, eqs: &[Equilibrium], origin: MarkerOrigin, out: &mut Vec<Marker>) {
    for (i, e) in eqs.iter().enumerate() {
        let h = e.homogeneous();
        let glyph = Glyph::of_kind(e.kind);
        let w = chart.local_triple(h)[2];
        let d = disc_of_homogeneous(chart, h);
        if w.abs() <= BOUNDARY_EPS * (h[0].abs() + h[1].abs() + h[2].abs()) {
            // identified antipodal points on the boundary circle
            for s in [1.0, -1.0] {
                out.push(Marker { glyph, pos: (s * d.0, s * d.1), on_boundary: true, origin, source: i });
            }
        } else {
            out.push(Marker { glyph, pos: d, on_boundary: false, origin, source: i });
        }
    }
}

fn contact_glyph(side: Side, positive: (f64, f64)) -> Glyph {
    match side {
        Side::Positive => Glyph::Contact { toward: Some(positive), certain: true },
        Side::Negative => Glyph::Contact { toward: Some((-positive.0, -positive.1)), certain: true },
        Side::Both => Glyph::Contact { toward: None, certain: true },
        Side::Undetermined => Glyph::Contact { toward: None, certain: false },
    }
}

/// Markers shown in the scene of `chart`.
pub fn scene_markers(analysis: &Analysis, chart: ChartId) -> Vec<Marker> {
    let mut out = Vec::new();
    equilibrium_markers(chart, &analysis.finite, MarkerOrigin::FiniteEquilibrium, &mut out);
    equilibrium_markers(chart, &analysis.infinite, MarkerOrigin::InfiniteEquilibrium, &mut out);
    if chart == analysis.system.chart {
        let axes = [(&analysis.contacts_ox, (0.0, 1.0)), (&analysis.contacts_oy, (1.0, 0.0))];
        let mut idx = 0;
        for (list, positive) in axes {
            for c in list {
                out.push(Marker {
                    glyph: contact_glyph(c.side, positive),
                    pos: crate::projective::disc_embed(c.point),
                    on_boundary: false,
                    origin: MarkerOrigin::AxisContact,
                    source: idx,
                });
                idx += 1;
            }
        }
    }
    for (i, c) in analysis.equatorial.iter().enumerate().filter(|(_, c)| c.chart == chart) {
        // the transverse coordinate is the second one after the first
        // transformation and the first one after the second
        let positive = if chart == analysis.first.system.chart { (0.0, 1.0) } else { (1.0, 0.0) };
        out.push(Marker {
            glyph: contact_glyph(c.side, positive),
            pos: crate::projective::disc_embed(c.point),
            on_boundary: false,
            origin: MarkerOrigin::EquatorialContact,
            source: i,
        });
    }
    out
}

/// Homogeneous points of all segments, with representatives chosen to vary
/// continuously so that chart switches do not look like equator crossings.
fn homogeneous_points(t: &Trajectory) -> Vec<[f64; 3]> {
    let mut out: Vec<[f64; 3]> = Vec::new();
    for s in &t.segments {
        for &p in &s.points {
            let mut h = s.chart.to_homogeneous(p);
            let n = (h[0] * h[0] + h[1] * h[1] + h[2] * h[2]).sqrt();
            h = [h[0] / n, h[1] / n, h[2] / n];
            if let Some(q) = out.last() {
                if q[0] * h[0] + q[1] * h[1] + q[2] * h[2] < 0.0 {
                    h = [-h[0], -h[1], -h[2]];
                }
            }
            out.push(h);
        }
    }
    out
}

/// Run the analysis, integrate the seed plan and embed everything into the
/// three discs. Deterministic for fixed inputs.
pub fn build_atlas(sys: &PlaneSystem, cfg: &IntegratorConfig, density: usize) -> Result<AtlasDocument, StructureError> {
    let analysis = analyze(sys)?;
    let mut eqs: Vec<Equilibrium> = analysis.finite.clone();
    eqs.extend(analysis.infinite.iter().cloned());
    let eq_h: Vec<[f64; 3]> = eqs.iter().map(Equilibrium::homogeneous).collect();
    let seeds = seed_plan(density.max(1), &eqs);
    let jobs: Vec<(usize, &Seed, f64)> = seeds
        .iter()
        .enumerate()
        .flat_map(|(i, s)| s.directions.iter().map(move |&d| (i, s, d)))
        .collect();
    let field = Atlas3::new(sys);
    let results: Vec<_> = jobs
        .par_iter()
        .map(|(_, s, d)| {
            trajectory(&field, s.chart, s.point, *d, cfg, &eq_h)
                .map(|t| (t.termination == Termination::Closed, homogeneous_points(&t)))
        })
        .collect();
    let mut issues = Vec::new();
    let mut paths = Vec::new();
    // a closed orbit traced from a seed already covers the reverse run
    let mut closed_seed = None;
    for ((i, s, d), r) in jobs.iter().zip(results) {
        if closed_seed == Some(*i) {
            continue;
        }
        match r {
            Ok((closed, p)) => {
                if closed {
                    closed_seed = Some(*i);
                }
                paths.push(p)
            }
            Err(e) => issues.push(format!(
                "seed ({}, {}) in {} direction {}: {e}",
                fmt_num(s.point.0),
                fmt_num(s.point.1),
                s.chart.label(),
                d
            )),
        }
    }
    let scenes = ChartId::ALL
        .iter()
        .map(|&chart| ChartScene {
            chart,
            curves: {
                let mut cover = Coverage::default();
                paths.iter().enumerate().flat_map(|(i, p)| cover.prune(i, disc_polylines(chart, p))).collect()
            },
            markers: scene_markers(&analysis, chart),
        })
        .collect();
    Ok(AtlasDocument { scenes, analysis, issues })
}

/// Open quadrant (1 to 4) of a disc point, `None` within `1e-9` of an axis.
pub fn quadrant(p: (f64, f64)) -> Option<u8> {
    const EPS: f64 = 1e-9;
    if p.0.abs() <= EPS || p.1.abs() <= EPS || !p.0.is_finite() || !p.1.is_finite() {
        return None;
    }
    Some(match (p.0 > 0.0, p.1 > 0.0) {
        (true, true) => 1,
        (false, true) => 2,
        (false, false) => 3,
        (true, false) => 4,
    })
}
