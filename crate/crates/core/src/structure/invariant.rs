use num_traits::{One, Zero};
use serde::Serialize;

use crate::poly::{
    gcd_bivariate, rat_from_f64, real_roots_univariate, resultant_eliminate, Eliminate, Poly1, Poly2,
    PolyError, Rat,
};
use crate::projective::{Direction, PlaneSystem};

use super::equilibria::{finite_equilibria, infinite_equilibria, Location};
use super::StructureError;

/// An algebraic curve `f = 0` with `X f_u + Y f_v = K f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantCurve {
    pub f: Poly2,
    pub cofactor: Poly2,
}

pub fn verify_invariant_curve(sys: &PlaneSystem, f: &Poly2) -> Result<InvariantCurve, StructureError> {
    if f.is_constant() {
        return Err(StructureError::Degenerate("a curve needs a nonconstant polynomial".into()));
    }
    let lie = &(&sys.x * &f.dx()) + &(&sys.y * &f.dy());
    match lie.exact_divide(f) {
        Ok(cofactor) => Ok(InvariantCurve { f: f.clone(), cofactor }),
        Err(PolyError::NotDivisible { remainder }) => Err(StructureError::NotInvariant { remainder }),
        Err(e) => Err(e.into()),
    }
}

/// An invariant straight line `a u + b v + c = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantLine {
    pub coefficients: (f64, f64, f64),
    /// Exact certificate when the coefficients are rational.
    pub curve: Option<InvariantCurve>,
}

/// A one-parameter family of invariant lines. In the `Slanted` gauge the lines
/// are `u + b v + c = 0` with `constraint(b, c) = 0`; in the `Horizontal` gauge
/// they are `v + c = 0` for every `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LineFamily {
    Slanted { constraint: Poly2 },
    Horizontal,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LineSearch {
    pub lines: Vec<InvariantLine>,
    pub families: Vec<LineFamily>,
}

/// Trivariate helper: coefficients (in the unknowns `(b, c)`) of powers of `v`.
type InV = Vec<Poly2>;

fn inv_mul(a: &InV, b: &InV) -> InV {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Poly2::zero(); a.len() + b.len() - 1];
    for (i, p) in a.iter().enumerate() {
        for (j, q) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(p * q);
        }
    }
    out
}

fn inv_add(a: &InV, b: &InV) -> InV {
    let n = a.len().max(b.len());
    (0..n)
        .map(|k| match (a.get(k), b.get(k)) {
            (Some(p), Some(q)) => p + q,
            (Some(p), None) | (None, Some(p)) => p.clone(),
            _ => unreachable!(),
        })
        .collect()
}

/// `p(-c - b v, v)` with `b, c` the first and second unknowns.
fn substitute_slanted(p: &Poly2) -> InV {
    let u: InV = vec![-Poly2::y(), -Poly2::x()];
    let mut acc: InV = Vec::new();
    for (m, c) in p.terms() {
        let mut t: InV = vec![Poly2::constant(c.clone())];
        for _ in 0..m.i {
            t = inv_mul(&t, &u);
        }
        let mut shifted = vec![Poly2::zero(); m.j as usize];
        shifted.extend(t);
        acc = inv_add(&acc, &shifted);
    }
    acc
}

fn weights(k: usize, attempt: u64) -> (Rat, Rat) {
    let w1 = (k as i64 + 1) * (attempt as i64 + 1);
    let w2 = ((k as i64 + 2) * (k as i64 + 3) + 7 * attempt as i64) % 97 + 1;
    (Rat::from_integer(w1.into()), Rat::from_integer(w2.into()))
}

/// Finitely many common real zeros of coprime polynomials in two unknowns.
fn common_zeros(hs: &[Poly2]) -> Result<Vec<((f64, f64), Option<(Rat, Rat)>)>, StructureError> {
    let hs: Vec<&Poly2> = hs.iter().filter(|h| !h.is_zero()).collect();
    if hs.is_empty() || hs.iter().any(|h| h.is_constant()) {
        return Ok(Vec::new());
    }
    let (mut u, mut v) = (Poly2::zero(), Poly2::zero());
    for attempt in 0..8 {
        u = Poly2::zero();
        v = Poly2::zero();
        for (k, h) in hs.iter().enumerate() {
            let (a, b) = weights(k, attempt);
            u = &u + &h.scale(&a);
            v = &v + &h.scale(&b);
        }
        if hs.len() == 1 {
            v = &u.dx() + &u.dy();
        }
        if gcd_bivariate(&u, &v).is_constant() {
            break;
        }
    }
    let rb = match resultant_eliminate(&u, &v, Eliminate::Second) {
        Ok(r) => r,
        Err(PolyError::ConstantInEliminated) => return Ok(Vec::new()),
        Err(e) => return Err(e.into()),
    };
    if rb.is_zero() {
        return Ok(Vec::new());
    }
    let rc = match resultant_eliminate(&u, &v, Eliminate::First) {
        Ok(r) => r,
        Err(PolyError::ConstantInEliminated) => return Ok(Vec::new()),
        Err(e) => return Err(e.into()),
    };
    let bs = real_roots_univariate(&rb, 1e-14)?;
    let cs = if rc.is_zero() { Vec::new() } else { real_roots_univariate(&rc, 1e-14)? };
    let mut out = Vec::new();
    for b in &bs {
        if let Some(eb) = &b.exact {
            exact_zeros_at(&hs, eb, b.value, &mut out)?;
            continue;
        }
        for c in &cs {
            if vanish_all(&hs, b.value, c.value) {
                out.push(((b.value, c.value), None));
            }
        }
    }
    Ok(out)
}

type Zero2 = ((f64, f64), Option<(Rat, Rat)>);

fn vanish_all(hs: &[&Poly2], b: f64, c: f64) -> bool {
    let scale = hs.iter().map(|h| h.max_abs_coeff()).fold(1.0, f64::max);
    hs.iter().all(|h| {
        let size = (1.0 + b.abs() + c.abs()).powi(h.degree().unwrap_or(0) as i32);
        h.eval_f64(b, c).abs() <= 1e-7 * scale * size
    })
}

/// Common zeros with a rational first coordinate, from the gcd of the
/// specializations.
fn exact_zeros_at(hs: &[&Poly2], eb: &Rat, value: f64, out: &mut Vec<Zero2>) -> Result<(), StructureError> {
    let g = hs
        .iter()
        .fold(Poly1::zero(), |g, h| g.gcd(&h.along(&Poly1::constant(eb.clone()), &Poly1::t())));
    if g.is_zero() || g.degree() == Some(0) {
        return Ok(());
    }
    for c in real_roots_univariate(&g, 1e-14)? {
        out.push(((value, c.value), c.exact.clone().map(|ec| (eb.clone(), ec))));
    }
    Ok(())
}

/// Eliminate `c` from the first coprime pair of low-degree polynomials; every
/// common zero of `hs` has its `b` among the roots of the result.
fn eliminate_pair(hs: &[Poly2]) -> Result<Option<Poly1>, StructureError> {
    let mut by_degree: Vec<&Poly2> = hs.iter().filter(|h| !h.is_zero()).collect();
    by_degree.sort_by_key(|h| h.degree());
    let few = &by_degree[..by_degree.len().min(4)];
    for (i, a) in few.iter().enumerate() {
        for b in &few[i + 1..] {
            if !gcd_bivariate(a, b).is_constant() {
                continue;
            }
            match resultant_eliminate(a, b, Eliminate::Second) {
                Ok(r) if !r.is_zero() => return Ok(Some(r)),
                Ok(_) | Err(PolyError::ConstantInEliminated) => continue,
                Err(e) => return Err(e.into()),
            }
        }
    }
    Ok(None)
}

/// Common zeros when one of the polynomials, `pb`, involves only the first
/// unknown: solve for it, then for the second unknown at each root.
fn zeros_by_first(hs: &[Poly2], pb: &Poly1) -> Result<Vec<Zero2>, StructureError> {
    let hs: Vec<&Poly2> = hs.iter().filter(|h| !h.is_zero()).collect();
    let mut out = Vec::new();
    if pb.degree().unwrap_or(0) == 0 {
        return Ok(out);
    }
    for b in real_roots_univariate(pb, 1e-14)? {
        if let Some(eb) = &b.exact {
            exact_zeros_at(&hs, eb, b.value, &mut out)?;
            continue;
        }
        // irrational root: take the specialization of lowest degree and
        // check its roots against all the others
        let mut best: Option<Vec<f64>> = None;
        for h in &hs {
            let mut cs: Vec<f64> = h.coeffs_in_y().iter().map(|col| col.eval_f64(b.value)).collect();
            let m = cs.iter().fold(0.0f64, |a, c| a.max(c.abs()));
            while cs.last().is_some_and(|c| c.abs() <= 1e-9 * m) {
                cs.pop();
            }
            if cs.len() >= 2 && best.as_ref().map_or(true, |bb| cs.len() < bb.len()) {
                best = Some(cs);
            }
        }
        let Some(best) = best else { continue };
        let p = Poly1::from_coeffs(best.iter().map(|c| rat_from_f64(*c).unwrap_or_default()).collect());
        for c in real_roots_univariate(&p, 1e-14)? {
            if vanish_all(&hs, b.value, c.value) {
                out.push(((b.value, c.value), None));
            }
        }
    }
    Ok(out)
}

fn exact_line(sys: &PlaneSystem, a: Rat, b: Rat, c: Rat) -> Option<InvariantCurve> {
    let f = &(&Poly2::x().scale(&a) + &Poly2::y().scale(&b)) + &Poly2::constant(c);
    verify_invariant_curve(sys, &f.primitive()).ok()
}

/// Invariant straight lines `a u + b v + c = 0`, searched in the gauges
/// `a = 1` and `(a, b) = (0, 1)`.
pub fn find_invariant_lines(sys: &PlaneSystem) -> Result<LineSearch, StructureError> {
    let mut lines: Vec<InvariantLine> = Vec::new();
    let mut families = Vec::new();

    // u + b v + c = 0: X + b Y vanishes on u = -b v - c
    let b_unknown = Poly2::x();
    let expr = inv_add(
        &substitute_slanted(&sys.x),
        &inv_mul(&vec![b_unknown], &substitute_slanted(&sys.y)),
    );
    let gs: Vec<Poly2> = expr.into_iter().filter(|g| !g.is_zero()).collect();
    let g = gs.iter().fold(Poly2::zero(), |acc, p| gcd_bivariate(&acc, p));
    let hs: Vec<Poly2> = if g.is_zero() {
        families.push(LineFamily::Slanted { constraint: Poly2::zero() });
        Vec::new()
    } else {
        if !g.is_constant() {
            families.push(LineFamily::Slanted { constraint: g.clone() });
        }
        gs.iter().map(|p| p.exact_divide(&g).expect("gcd divides")).collect()
    };
    let zeros = if hs.iter().any(|h| h.is_constant() && !h.is_zero()) {
        Vec::new()
    } else if let Some(top) = hs.iter().find(|h| !h.is_zero() && h.degree_in_y() == Some(0)) {
        // usually the coefficient of the top power of v, which involves b only
        zeros_by_first(&hs, &top.on_first_axis())?
    } else if let Some(pb) = eliminate_pair(&hs)? {
        zeros_by_first(&hs, &pb)?
    } else {
        common_zeros(&hs)?
    };
    for ((b, c), exact) in zeros {
        let curve = exact.and_then(|(eb, ec)| exact_line(sys, Rat::one(), eb, ec));
        lines.push(InvariantLine { coefficients: (1.0, b, c), curve });
    }

    // v + c = 0: Y(u, -c) vanishes identically in u
    let yc = sys.y.compose(&Poly2::x(), &(-Poly2::y()));
    let coeffs: Vec<Poly1> = yc
        .swap()
        .coeffs_in_y()
        .into_iter()
        .collect();
    let gc = coeffs.iter().fold(Poly1::zero(), |g, p| g.gcd(p));
    if gc.is_zero() {
        families.push(LineFamily::Horizontal);
    } else if gc.degree().unwrap_or(0) > 0 {
        for r in real_roots_univariate(&gc, 1e-14)? {
            let curve = r
                .exact
                .clone()
                .and_then(|ec| exact_line(sys, Rat::zero(), Rat::one(), ec));
            lines.push(InvariantLine { coefficients: (0.0, 1.0, r.value), curve });
        }
    }
    lines.dedup_by(|a, b| {
        let (p, q) = (a.coefficients, b.coefficients);
        (p.0 - q.0).abs() < 1e-9 && (p.1 - q.1).abs() < 1e-9 && (p.2 - q.2).abs() < 1e-9
    });
    Ok(LineSearch { lines, families })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CycleKind {
    LinearCycle,
    PlaneCycle,
    OpenCycle,
    EllInfinityCycle,
    NotACycle,
}

/// The line at infinity is a cycle exactly for P-nonsingular systems with no
/// infinite equilibria.
pub fn equator_cycle(sys: &PlaneSystem) -> Result<CycleKind, StructureError> {
    use crate::projective::{projective_type, ProjectiveKind};
    if projective_type(sys).kind == ProjectiveKind::PNonsingular && infinite_equilibria(sys, 1e-12)?.is_empty() {
        Ok(CycleKind::EllInfinityCycle)
    } else {
        Ok(CycleKind::NotACycle)
    }
}

/// Real directions at infinity of `f = 0` (zeros of its top form).
fn asymptotic_directions(f: &Poly2) -> Result<Vec<Direction>, StructureError> {
    let top = f.homogeneous(f.degree().unwrap_or(0));
    let mut out: Vec<Direction> = real_roots_univariate(&top.dehomogenize_first(), 1e-13)
        .unwrap_or_default()
        .into_iter()
        .map(|r| Direction::Slope(r.value))
        .collect();
    let d = top.degree().unwrap_or(0);
    if top.coeff(0, d).is_zero() {
        out.push(Direction::Vertical);
    }
    Ok(out)
}

fn same_direction(a: &Direction, b: &Direction) -> bool {
    match (a, b) {
        (Direction::Vertical, Direction::Vertical) => true,
        (Direction::Slope(p), Direction::Slope(q)) => (p - q).abs() <= 1e-9 * (1.0 + p.abs()),
        _ => false,
    }
}

/// Whether `f = 0` has a one-dimensional real locus: sample vertical lines
/// between the critical abscissae and look for real points.
fn has_real_branch(f: &Poly2) -> Result<bool, StructureError> {
    let sample = |p: &Poly2| -> Result<bool, StructureError> {
        if p.degree_in_y().unwrap_or(0) == 0 {
            let q = p.on_first_axis();
            return Ok(q.degree().unwrap_or(0) > 0 && !real_roots_univariate(&q, 1e-9)?.is_empty());
        }
        let disc = resultant_eliminate(p, &p.dy(), Eliminate::Second)?;
        let crit: Vec<Rat> = if disc.is_zero() {
            Vec::new()
        } else {
            real_roots_univariate(&disc, 1e-9)?.into_iter().map(|r| r.lo).collect()
        };
        let mut xs = Vec::new();
        match (crit.first(), crit.last()) {
            (Some(lo), Some(hi)) => {
                xs.push(lo - Rat::one());
                xs.push(hi + Rat::one());
                for w in crit.windows(2) {
                    xs.push((&w[0] + &w[1]) / Rat::from_integer(2.into()));
                }
            }
            _ => xs.push(Rat::zero()),
        }
        for x0 in xs {
            let line = p.along(&Poly1::constant(x0), &Poly1::t());
            if line.degree().unwrap_or(0) > 0 && !real_roots_univariate(&line, 1e-9)?.is_empty() {
                return Ok(true);
            }
        }
        Ok(false)
    };
    Ok(sample(f)? || sample(&f.swap())?)
}

/// Classify an invariant algebraic curve as a candidate projective cycle.
pub fn classify_cycle_candidate(sys: &PlaneSystem, f: &Poly2) -> Result<CycleKind, StructureError> {
    if verify_invariant_curve(sys, f).is_err() {
        return Ok(CycleKind::NotACycle);
    }
    let deg = f.degree().unwrap_or(0);
    if deg >= 2 && !has_real_branch(f)? {
        return Ok(CycleKind::NotACycle);
    }
    let ff = f.to_f64();
    let scale = f.max_abs_coeff().max(1.0);
    for e in finite_equilibria(sys, 1e-12)? {
        let r = 1.0 + e.point.0.abs().max(e.point.1.abs());
        if ff.eval(e.point.0, e.point.1).abs() <= 1e-8 * scale * r.powi(deg as i32) {
            return Ok(CycleKind::NotACycle);
        }
    }
    let asymptotes = asymptotic_directions(f)?;
    let at_infinity: Vec<Direction> = infinite_equilibria(sys, 1e-12)?
        .into_iter()
        .filter_map(|e| match e.location {
            Location::Infinite { direction } => Some(direction),
            Location::Finite => None,
        })
        .collect();
    if asymptotes.iter().any(|a| at_infinity.iter().any(|e| same_direction(a, e))) {
        return Ok(CycleKind::NotACycle);
    }
    Ok(match (deg, asymptotes.is_empty()) {
        (1, _) => CycleKind::LinearCycle,
        (_, true) => CycleKind::PlaneCycle,
        (_, false) => CycleKind::OpenCycle,
    })
}
