use serde::Serialize;

use crate::projective::{disc_of_homogeneous, ChartId};
use crate::structure::{Equilibrium, EquilibriumKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SeedKind {
    Grid,
    Separatrix,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Seed {
    pub chart: ChartId,
    pub point: (f64, f64),
    /// Directions to integrate in, relative to the chart's own field.
    pub directions: Vec<f64>,
    pub kind: SeedKind,
}

const DEDUP_RADIUS: f64 = 0.05;
const SEPARATRIX_OFFSET: f64 = 1e-4;

fn disc_distance(a: &Seed, b: &Seed) -> Option<f64> {
    let ha = a.chart.to_homogeneous(a.point);
    // compare inside the chart of `b`, where both are finite
    b.chart.from_homogeneous(ha)?;
    let da = disc_of_homogeneous(b.chart, ha);
    let db = disc_of_homogeneous(b.chart, b.chart.to_homogeneous(b.point));
    Some((da.0 - db.0).hypot(da.1 - db.1))
}

/// A polar grid of `density^2` seeds in each chart's disc, pulled back to the
/// chart and deduplicated across charts, followed by four separatrix seeds for
/// every saddle.
pub fn seed_plan(density: usize, equilibria: &[Equilibrium]) -> Vec<Seed> {
    let mut seeds: Vec<Seed> = Vec::new();
    for chart in ChartId::ALL {
        for i in 0..density {
            let r = (i as f64 + 0.5) / density as f64 * 0.95;
            for j in 0..density {
                let phi = std::f64::consts::TAU * j as f64 / density as f64 + 0.1;
                let d = (r * phi.cos(), r * phi.sin());
                let s = (1.0 - r * r).sqrt();
                let cand = Seed {
                    chart,
                    point: (d.0 / s, d.1 / s),
                    directions: vec![1.0, -1.0],
                    kind: SeedKind::Grid,
                };
                let dup = seeds
                    .iter()
                    .any(|old| disc_distance(old, &cand).is_some_and(|dd| dd < DEDUP_RADIUS));
                if !dup {
                    seeds.push(cand);
                }
            }
        }
    }
    for e in equilibria.iter().filter(|e| e.kind == EquilibriumKind::Saddle) {
        seeds.extend(separatrix_seeds(e));
    }
    seeds
}

fn eigenvector(j: [[f64; 2]; 2], lambda: f64) -> (f64, f64) {
    let a = (j[0][1], lambda - j[0][0]);
    let b = (lambda - j[1][1], j[1][0]);
    let v = if a.0.hypot(a.1) >= b.0.hypot(b.1) { a } else { b };
    let n = v.0.hypot(v.1);
    if n == 0.0 {
        (1.0, 0.0)
    } else {
        (v.0 / n, v.1 / n)
    }
}

/// Points just off a saddle along its eigenvectors: unstable ones are
/// integrated forward and stable ones backward, in the saddle's chart.
pub fn separatrix_seeds(e: &Equilibrium) -> Vec<Seed> {
    let [(l1, _), (l2, _)] = e.eigenvalues();
    let mut out = Vec::new();
    for (lambda, dir) in [(l2, 1.0), (l1, -1.0)] {
        let v = eigenvector(e.jacobian, lambda);
        for s in [1.0, -1.0] {
            out.push(Seed {
                chart: e.chart,
                point: (e.point.0 + s * SEPARATRIX_OFFSET * v.0, e.point.1 + s * SEPARATRIX_OFFSET * v.1),
                directions: vec![dir],
                kind: SeedKind::Separatrix,
            });
        }
    }
    out
}
