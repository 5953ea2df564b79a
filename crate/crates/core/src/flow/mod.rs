//! Trajectories on the projective plane.
//!
//! Each chart carries a polynomial field: the system itself in its own chart
//! and the two projectively reduced systems in the other two. Trajectories are
//! integrated in arc length with an embedded Runge-Kutta pair and hop to the
//! chart where the point has the smallest coordinates once they leave the box
//! `max(|u|, |v|) <= switch_out`.

mod rk;
mod seeds;

pub use seeds::{seed_plan, separatrix_seeds, Seed, SeedKind};

use serde::Serialize;
use thiserror::Error;

use crate::projective::{
    disc_embed, map_point_f64, reduce_system, ChartId, FieldF, PlaneSystem, Transformation,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FlowError {
    #[error("point ({x}, {y}) is outside the domain of the evaluator")]
    DomainViolation { x: f64, y: f64 },
    #[error("seed ({x}, {y}) is not a finite point of chart {chart:?}")]
    BadSeed { chart: ChartId, x: f64, y: f64 },
    #[error("seed ({x}, {y}) in chart {chart:?} is an equilibrium")]
    SeedAtEquilibrium { chart: ChartId, x: f64, y: f64 },
    #[error("invalid integrator configuration: {0}")]
    Config(String),
}

/// Integration runs at unit speed in the arc length of the sphere model
/// (each chart is a central projection of the unit sphere), so lengths agree
/// across charts and a path retraced backward covers the same length.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IntegratorConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_arc_length: f64,
    pub switch_out: f64,
    pub switch_in: f64,
    pub max_steps: usize,
    /// Largest step, in the same arc length as `max_arc_length`.
    pub max_step: f64,
    /// Stop when this close to a known equilibrium.
    pub equilibrium_radius: f64,
    /// Stop once the orbit passes within this sphere distance of its seed
    /// after having left it; 0 disables closed-orbit detection.
    pub closure_tol: f64,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        IntegratorConfig {
            rel_tol: 1e-9,
            abs_tol: 1e-12,
            max_arc_length: 20.0,
            switch_out: 2.0,
            switch_in: 1.5,
            max_steps: 100_000,
            max_step: 0.02,
            equilibrium_radius: 1e-6,
            closure_tol: 1e-4,
        }
    }
}

impl IntegratorConfig {
    pub fn validate(&self) -> Result<(), FlowError> {
        let pos = [self.rel_tol, self.abs_tol, self.max_arc_length, self.max_step, self.equilibrium_radius];
        if pos.iter().any(|v| !(*v > 0.0) || !v.is_finite()) {
            return Err(FlowError::Config("tolerances, lengths and radii must be positive".into()));
        }
        if !(self.closure_tol >= 0.0) || !self.closure_tol.is_finite() {
            return Err(FlowError::Config("closure_tol must be nonnegative".into()));
        }
        if !(self.switch_in < self.switch_out) || self.switch_in < 1.0 {
            return Err(FlowError::Config("need 1 <= switch_in < switch_out".into()));
        }
        Ok(())
    }

    /// Apply `key = value` overrides; unknown keys and bad values are errors.
    pub fn apply_overrides(&mut self, text: &str) -> Result<(), String> {
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected key = value", lineno + 1))?;
            let (k, v) = (k.trim(), v.trim());
            let num = || v.parse::<f64>().map_err(|_| format!("line {}: bad number '{v}'", lineno + 1));
            match k {
                "rel_tol" => self.rel_tol = num()?,
                "abs_tol" => self.abs_tol = num()?,
                "max_arc_length" => self.max_arc_length = num()?,
                "switch_out" => self.switch_out = num()?,
                "switch_in" => self.switch_in = num()?,
                "max_step" => self.max_step = num()?,
                "equilibrium_radius" => self.equilibrium_radius = num()?,
                "closure_tol" => self.closure_tol = num()?,
                "max_steps" => {
                    self.max_steps = v
                        .parse()
                        .map_err(|_| format!("line {}: bad integer '{v}'", lineno + 1))?
                }
                _ => return Err(format!("line {}: unknown key '{k}'", lineno + 1)),
            }
        }
        Ok(())
    }
}

/// The polynomial field of one chart and its time relation to the base system.
#[derive(Clone, Debug)]
pub struct ChartField {
    pub chart: ChartId,
    pub field: FieldF,
    /// `v^m d(tau) = dt`; zero for the base chart.
    pub m: i32,
    /// Index of the transverse coordinate (`None` for the base chart).
    pub transverse: Option<usize>,
    /// Whether the image of the line at infinity (transverse coordinate zero)
    /// is made of trajectories.
    pub boundary_invariant: bool,
}

impl ChartField {
    /// `sign(v)^m`, with `v = 0` counted as positive.
    pub fn orientation(&self, p: (f64, f64)) -> f64 {
        match self.transverse {
            Some(i) if self.m % 2 != 0 => {
                let v = if i == 0 { p.0 } else { p.1 };
                if v < 0.0 {
                    -1.0
                } else {
                    1.0
                }
            }
            _ => 1.0,
        }
    }
}

/// The three chart fields of a system.
#[derive(Clone, Debug)]
pub struct Atlas3 {
    pub base: ChartId,
    pub charts: Vec<ChartField>,
    pub system: PlaneSystem,
}

impl Atlas3 {
    pub fn new(sys: &PlaneSystem) -> Self {
        let first = reduce_system(sys, Transformation::First);
        let second = reduce_system(sys, Transformation::Second);
        let charts = vec![
            ChartField {
                chart: sys.chart,
                field: sys.to_f64(),
                m: 0,
                transverse: None,
                boundary_invariant: false,
            },
            ChartField {
                chart: first.system.chart,
                field: first.system.to_f64(),
                m: first.m,
                transverse: Some(first.transverse_index()),
                boundary_invariant: first.system.y.on_first_axis().is_zero(),
            },
            ChartField {
                chart: second.system.chart,
                field: second.system.to_f64(),
                m: second.m,
                transverse: Some(second.transverse_index()),
                boundary_invariant: second.system.x.on_second_axis().is_zero(),
            },
        ];
        Atlas3 { base: sys.chart, charts, system: sys.clone() }
    }

    pub fn get(&self, chart: ChartId) -> &ChartField {
        self.charts.iter().find(|c| c.chart == chart).expect("all three charts present")
    }
}

/// Unit direction of motion in forward time of the base system at a chart
/// point, `None` at equilibria.
pub fn direction_at(atlas: &Atlas3, chart: ChartId, p: (f64, f64)) -> Option<(f64, f64)> {
    let cf = atlas.get(chart);
    let (u, v) = cf.field.eval(p);
    let n = u.hypot(v);
    if n == 0.0 || !n.is_finite() {
        return None;
    }
    let s = cf.orientation(p);
    Some((s * u / n, s * v / n))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Segment {
    pub chart: ChartId,
    pub points: Vec<(f64, f64)>,
    /// +1 when the point order follows forward time of the base system,
    /// -1 when it runs backward.
    pub time_sign: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Termination {
    ArcLength,
    Equilibrium { chart: ChartId, point: (f64, f64) },
    MaxSteps,
    /// The orbit came back to its seed; the last point is the seed itself.
    Closed,
    /// A step crossed the image of the line at infinity although it is
    /// invariant: the orbit has converged onto it to within the tolerances.
    BoundaryApproach { chart: ChartId, point: (f64, f64) },
    /// The step size underflowed; usually a non-hyperbolic equilibrium.
    StepUnderflow { chart: ChartId, point: (f64, f64) },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Trajectory {
    pub segments: Vec<Segment>,
    pub termination: Termination,
    pub arc_length: f64,
}

impl Trajectory {
    pub fn points_in(&self, chart: ChartId) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.segments.iter().filter(move |s| s.chart == chart).flat_map(|s| s.points.iter().copied())
    }

    pub fn last_point(&self) -> (ChartId, (f64, f64)) {
        let s = self.segments.last().expect("at least one segment");
        (s.chart, *s.points.last().expect("nonempty segment"))
    }
}

/// Length of the tangent vector `w` at chart point `p` in the metric pulled
/// back from the unit sphere through `p -> (p, 1) / |(p, 1)|`.
pub fn sphere_speed(p: (f64, f64), w: (f64, f64)) -> f64 {
    let r2 = 1.0 + p.0 * p.0 + p.1 * p.1;
    let dot = p.0 * w.0 + p.1 * w.1;
    let q = (w.0 * w.0 + w.1 * w.1) * r2 - dot * dot;
    q.max(0.0).sqrt() / r2
}

fn unit_sphere(chart: ChartId, p: (f64, f64)) -> [f64; 3] {
    let h = chart.to_homogeneous(p);
    let n = (h[0] * h[0] + h[1] * h[1] + h[2] * h[2]).sqrt();
    [h[0] / n, h[1] / n, h[2] / n]
}

/// Distance from `s` to the chord `ab` on the sphere, up to the antipodal map.
fn chord_distance(s: [f64; 3], a: [f64; 3], b: [f64; 3]) -> f64 {
    let dot = |u: [f64; 3], v: [f64; 3]| u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
    let sg = if dot(s, a) < 0.0 { -1.0 } else { 1.0 };
    let a = [sg * a[0], sg * a[1], sg * a[2]];
    let b = [sg * b[0], sg * b[1], sg * b[2]];
    let d = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
    let e = [s[0] - a[0], s[1] - a[1], s[2] - a[2]];
    let dd = dot(d, d);
    let t = if dd > 0.0 { (dot(e, d) / dd).clamp(0.0, 1.0) } else { 0.0 };
    let r = [e[0] - t * d[0], e[1] - t * d[1], e[2] - t * d[2]];
    dot(r, r).sqrt()
}

fn best_chart(p: (f64, f64), chart: ChartId) -> (ChartId, (f64, f64)) {
    let h = chart.to_homogeneous(p);
    let mut best = (chart, p);
    let mut size = p.0.abs().max(p.1.abs());
    for c in ChartId::ALL {
        if let Some(q) = c.from_homogeneous(h) {
            let s = q.0.abs().max(q.1.abs());
            if s < size {
                best = (c, q);
                size = s;
            }
        }
    }
    best
}

/// Integrate from `seed` in `chart`. `direction` is +1 to follow the chart's
/// own polynomial field and -1 to run against it. `equilibria` are known rest
/// points given as homogeneous coordinates.
pub fn trajectory(
    atlas: &Atlas3,
    chart: ChartId,
    seed: (f64, f64),
    direction: f64,
    config: &IntegratorConfig,
    equilibria: &[[f64; 3]],
) -> Result<Trajectory, FlowError> {
    config.validate()?;
    if !seed.0.is_finite() || !seed.1.is_finite() {
        return Err(FlowError::BadSeed { chart, x: seed.0, y: seed.1 });
    }
    let mut chart = chart;
    let mut p = seed;
    let mut sigma = if direction < 0.0 { -1.0 } else { 1.0 };
    let mut cf = atlas.get(chart);
    let mut segments = vec![Segment { chart, points: vec![p], time_sign: sigma * cf.orientation(p) }];
    let mut arc = 0.0;
    let mut h = config.max_step.min(1e-3);
    let mut steps = 0;
    let eq_local = |c: ChartId| -> Vec<(f64, f64)> {
        equilibria.iter().filter_map(|e| c.from_homogeneous(*e)).collect()
    };
    let mut eqs = eq_local(chart);
    let start = unit_sphere(chart, seed);
    let mut left_start = false;
    let near_eq = |p: (f64, f64), eqs: &[(f64, f64)]| {
        eqs.iter().find(|e| (e.0 - p.0).hypot(e.1 - p.1) <= config.equilibrium_radius).copied()
    };
    let (fu, fv) = cf.field.eval(p);
    if near_eq(p, &eqs).is_some() || fu.hypot(fv) == 0.0 {
        return Err(FlowError::SeedAtEquilibrium { chart, x: p.0, y: p.1 });
    }
    let termination = loop {
        if arc >= config.max_arc_length - 1e-15 {
            break Termination::ArcLength;
        }
        if steps >= config.max_steps {
            break Termination::MaxSteps;
        }
        steps += 1;
        let rhs = |q: (f64, f64)| -> (f64, f64) {
            let (u, v) = cf.field.eval(q);
            let n = sphere_speed(q, (u, v));
            if n == 0.0 || !n.is_finite() {
                (0.0, 0.0)
            } else {
                (sigma * u / n, sigma * v / n)
            }
        };
        let (fu, fv) = cf.field.eval(p);
        if fu.hypot(fv) == 0.0 {
            break Termination::Equilibrium { chart, point: p };
        }
        h = h.min(config.max_step).min(config.max_arc_length - arc);
        let step = rk::adaptive_step(&rhs, p, h, config.rel_tol, config.abs_tol);
        let Some((q, used, next_h)) = step else {
            break Termination::StepUnderflow { chart, point: p };
        };
        let (d0, d1) = (rhs(p), rhs(q));
        if d0.0 * d1.0 + d0.1 * d1.1 < 0.0 {
            // the tangent reversed within one accepted step: we are sitting on
            // an equilibrium that was not in the list
            break Termination::Equilibrium { chart, point: p };
        }
        arc += used;
        h = next_h;
        let crossed = match cf.transverse {
            Some(i) => {
                let (a, b) = if i == 0 { (p.0, q.0) } else { (p.1, q.1) };
                (a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0)
            }
            None => false,
        };
        if crossed && cf.boundary_invariant {
            break Termination::BoundaryApproach { chart, point: p };
        }
        let flip = crossed && cf.m % 2 != 0;
        if config.closure_tol > 0.0 {
            let (a, b) = (unit_sphere(chart, p), unit_sphere(chart, q));
            if left_start && chord_distance(start, a, b) <= config.closure_tol {
                if let Some(s) = chart.from_homogeneous(start) {
                    segments.last_mut().unwrap().points.push(s);
                }
                break Termination::Closed;
            }
            left_start |= chord_distance(start, b, b) > 100.0 * config.closure_tol;
        }
        p = q;
        let seg = segments.last_mut().unwrap();
        seg.points.push(p);
        if flip {
            // crossing the image of the line at infinity with odd m reverses time
            let ts = -seg.time_sign;
            segments.push(Segment { chart, points: vec![p], time_sign: ts });
        }
        if let Some(e) = near_eq(p, &eqs) {
            break Termination::Equilibrium { chart, point: e };
        }
        if p.0.abs().max(p.1.abs()) > config.switch_out {
            let (nc, np) = best_chart(p, chart);
            if nc != chart && np.0.abs().max(np.1.abs()) < config.switch_in {
                // carry the geometric direction of motion across the chart map
                let d = rhs(p);
                let eps = 1e-6 * (1.0 + p.0.abs().max(p.1.abs()));
                let ahead = map_point_f64((p.0 + eps * d.0, p.1 + eps * d.1), chart, nc);
                let ncf = atlas.get(nc);
                let (gu, gv) = ncf.field.eval(np);
                if let Some(a) = ahead {
                    let dot = (a.0 - np.0) * gu + (a.1 - np.1) * gv;
                    sigma = if dot < 0.0 { -1.0 } else { 1.0 };
                }
                chart = nc;
                cf = ncf;
                p = np;
                eqs = eq_local(chart);
                segments.push(Segment { chart, points: vec![p], time_sign: sigma * cf.orientation(p) });
            }
        }
    };
    Ok(Trajectory { segments, termination, arc_length: arc })
}

/// Largest relative change of `f` along the trajectory points in `chart`:
/// `max |f(p) - f(p0)| / max(1, |f(p0)|)`.
pub fn first_integral_drift<F>(f: F, traj: &Trajectory, chart: ChartId) -> Result<f64, FlowError>
where
    F: Fn(f64, f64) -> Option<f64>,
{
    drift_over(f, traj.points_in(chart))
}

/// Drift measured separately on each run of consecutive points that share a
/// `region` label and a segment, so that evaluators with branch cuts (for
/// example `arctan(v/u)` across `u = 0`) can be used away from their cuts.
pub fn first_integral_drift_piecewise<F, R>(
    f: F,
    traj: &Trajectory,
    chart: ChartId,
    region: R,
) -> Result<f64, FlowError>
where
    F: Fn(f64, f64) -> Option<f64>,
    R: Fn(f64, f64) -> Option<i32>,
{
    let mut worst: f64 = 0.0;
    for seg in traj.segments.iter().filter(|s| s.chart == chart) {
        let mut run: Vec<(f64, f64)> = Vec::new();
        let mut label = None;
        for &(x, y) in &seg.points {
            let l = region(x, y);
            if l != label || l.is_none() {
                worst = worst.max(drift_over(&f, run.drain(..))?);
                label = l;
            }
            if l.is_some() {
                run.push((x, y));
            }
        }
        worst = worst.max(drift_over(&f, run)?);
    }
    Ok(worst)
}

/// Drift over an arbitrary sequence of points.
pub fn drift_over<F, I>(f: F, points: I) -> Result<f64, FlowError>
where
    F: Fn(f64, f64) -> Option<f64>,
    I: IntoIterator<Item = (f64, f64)>,
{
    let mut f0 = None;
    let mut worst: f64 = 0.0;
    for (x, y) in points {
        let v = f(x, y).ok_or(FlowError::DomainViolation { x, y })?;
        match f0 {
            None => f0 = Some(v),
            Some(a) => worst = worst.max((v - a).abs() / f64::max(1.0, a.abs())),
        }
    }
    Ok(worst)
}

/// Disc coordinates of a trajectory's points, per segment.
pub fn embed_segment(seg: &Segment) -> Vec<(f64, f64)> {
    seg.points.iter().map(|&p| disc_embed(p)).collect()
}
