//! Real root isolation: square-free decomposition, Sturm sequences and exact
//! bisection.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::poly1::Poly1;
use super::rat::{rat_from_f64, rat_to_f64, Rat};
use super::PolyError;

#[derive(Clone, Debug, PartialEq)]
pub struct RealRoot {
    pub value: f64,
    pub multiplicity: u32,
    /// Isolating interval `(lo, hi]` of width at most the requested tolerance.
    pub lo: Rat,
    pub hi: Rat,
    /// Set when the root is rational and was confirmed by exact evaluation.
    pub exact: Option<Rat>,
}

/// Square-free factors `(a_i, i)` with `p = c * prod a_i^i` (Yun).
pub fn square_free_decomposition(p: &Poly1) -> Vec<(Poly1, u32)> {
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let dp = p.derivative();
    let a0 = p.gcd(&dp);
    let mut b = p.div_rem(&a0).unwrap().0;
    let c = dp.div_rem(&a0).unwrap().0;
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = b.gcd(&d);
        b = b.div_rem(&a).unwrap().0;
        let c = d.div_rem(&a).unwrap().0;
        d = &c - &b.derivative();
        if a.degree().unwrap_or(0) > 0 {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

fn sturm_chain(p: &Poly1) -> Vec<Poly1> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let r = chain[n - 2].rem(&chain[n - 1]).unwrap();
        if r.is_zero() {
            break;
        }
        let lc = r.leading().abs();
        chain.push((-&r).scale(&(Rat::one() / lc)));
    }
    chain
}

fn variations(chain: &[Poly1], x: &Rat) -> usize {
    let mut count = 0;
    let mut last = 0;
    for q in chain {
        let s = q.sign_at(x);
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

fn cauchy_bound(p: &Poly1) -> Rat {
    let lc = p.leading().abs();
    let m = p.coeffs()[..p.coeffs().len() - 1]
        .iter()
        .map(|c| c.abs() / &lc)
        .fold(Rat::zero(), |a, b| if b > a { b } else { a });
    m + Rat::one()
}

fn two() -> Rat {
    Rat::from_integer(BigInt::from(2))
}

/// A split point inside `(a, b)` where `p` does not vanish.
fn split_point(p: &Poly1, a: &Rat, b: &Rat) -> Rat {
    let w = b - a;
    for d in 2i64.. {
        for n in 1..d {
            let m = a + &w * Rat::new(BigInt::from(n), BigInt::from(d));
            if !p.eval(&m).is_zero() {
                return m;
            }
        }
    }
    unreachable!()
}

/// Rational with denominator at most `max_den` closest to `x` in the
/// continued-fraction sense.
fn best_rational(x: f64, max_den: i64) -> Option<Rat> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut r = x;
    for _ in 0..40 {
        let a = r.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_den as i128 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = r - a;
        if frac.abs() < 1e-15 {
            break;
        }
        r = 1.0 / frac;
    }
    (k1 != 0).then(|| Rat::new(BigInt::from(h1), BigInt::from(k1)))
}

fn isolate(p: &Poly1, tol: &Rat) -> Vec<(Rat, Rat, Option<Rat>)> {
    let chain = sturm_chain(p);
    let b = cauchy_bound(p);
    let mut stack = vec![(-b.clone(), b)];
    let mut isolated = Vec::new();
    while let Some((lo, hi)) = stack.pop() {
        let n = variations(&chain, &lo) - variations(&chain, &hi);
        match n {
            0 => {}
            1 => isolated.push((lo, hi)),
            _ => {
                let m = split_point(p, &lo, &hi);
                stack.push((m.clone(), hi));
                stack.push((lo, m));
            }
        }
    }
    isolated
        .into_iter()
        .map(|(mut lo, mut hi)| {
            if p.eval(&hi).is_zero() {
                return (hi.clone(), hi.clone(), Some(hi));
            }
            let slo = p.sign_at(&lo);
            while &hi - &lo > *tol {
                let m = (&lo + &hi) / two();
                let s = p.sign_at(&m);
                if s == 0 {
                    return (m.clone(), m.clone(), Some(m));
                }
                if s == slo {
                    lo = m;
                } else {
                    hi = m;
                }
            }
            (lo, hi, None)
        })
        .collect()
}

/// Real roots of `p` with multiplicities, sorted ascending, each refined to an
/// interval of width at most `tol`.
pub fn real_roots_univariate(p: &Poly1, tol: f64) -> Result<Vec<RealRoot>, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let tol_r = rat_from_f64(tol.abs().max(1e-300)).unwrap_or_else(|| Rat::new(1.into(), 1.into()));
    let mut out = Vec::new();
    for (factor, mult) in square_free_decomposition(p) {
        for (lo, hi, exact) in isolate(&factor, &tol_r) {
            let value = match &exact {
                Some(r) => rat_to_f64(r),
                None => rat_to_f64(&((&lo + &hi) / two())),
            };
            let exact = exact.or_else(|| {
                best_rational(value, 1_000_000)
                    .filter(|q| q >= &lo && q <= &hi && factor.eval(q).is_zero())
            });
            let value = exact.as_ref().map(rat_to_f64).unwrap_or(value);
            out.push(RealRoot { value, multiplicity: mult, lo, hi, exact });
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    Ok(out)
}
