//! Resultants by evaluation at integer points and interpolation.

use num_traits::{One, Signed, Zero};

use super::poly1::Poly1;
use super::poly2::Poly2;
use super::rat::Rat;
use super::PolyError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Eliminate {
    /// Eliminate the first variable; the result is a polynomial in the second.
    First,
    /// Eliminate the second variable; the result is a polynomial in the first.
    Second,
}

fn det(mut m: Vec<Vec<Rat>>) -> Rat {
    let n = m.len();
    let mut d = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        let piv = m[c][c].clone();
        d *= &piv;
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] / &piv;
            for k in c..n {
                let v = &f * &m[c][k];
                m[r][k] -= v;
            }
        }
    }
    d
}

/// Sylvester determinant for coefficient vectors of formal degrees
/// `a.len() - 1` and `b.len() - 1` (leading coefficients may vanish).
fn sylvester(a: &[Rat], b: &[Rat]) -> Rat {
    let da = a.len() - 1;
    let db = b.len() - 1;
    let n = da + db;
    if n == 0 {
        return Rat::one();
    }
    let mut m = vec![vec![Rat::zero(); n]; n];
    for r in 0..db {
        for (k, c) in a.iter().rev().enumerate() {
            m[r][r + k] = c.clone();
        }
    }
    for r in 0..da {
        for (k, c) in b.iter().rev().enumerate() {
            m[db + r][r + k] = c.clone();
        }
    }
    det(m)
}

fn interpolate(xs: &[Rat], ys: &[Rat]) -> Poly1 {
    // Newton divided differences
    let n = xs.len();
    let mut coef = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut acc = Poly1::constant(coef[n - 1].clone());
    for i in (0..n - 1).rev() {
        let lin = Poly1::from_coeffs(vec![-xs[i].clone(), Rat::one()]);
        acc = &(&acc * &lin) + &Poly1::constant(coef[i].clone());
    }
    acc
}

/// Resultant of `f` and `g` with respect to the eliminated variable, as a
/// polynomial in the remaining one, sign-normalized to a positive leading
/// coefficient.
pub fn resultant_eliminate(f: &Poly2, g: &Poly2, which: Eliminate) -> Result<Poly1, PolyError> {
    let (f, g) = match which {
        Eliminate::Second => (f.clone(), g.clone()),
        Eliminate::First => (f.swap(), g.swap()),
    };
    if f.is_zero() || g.is_zero() {
        return Ok(Poly1::zero());
    }
    let dfy = f.degree_in_y().unwrap();
    let dgy = g.degree_in_y().unwrap();
    if dfy == 0 && dgy == 0 {
        return Err(PolyError::ConstantInEliminated);
    }
    let fc = f.coeffs_in_y();
    let gc = g.coeffs_in_y();
    let bound = (f.degree().unwrap() * g.degree().unwrap()) as i64;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for k in 0..=bound {
        let x = Rat::from_integer(k.into());
        let a: Vec<Rat> = fc.iter().map(|c| c.eval(&x)).collect();
        let b: Vec<Rat> = gc.iter().map(|c| c.eval(&x)).collect();
        ys.push(sylvester(&a, &b));
        xs.push(x);
    }
    let r = interpolate(&xs, &ys);
    Ok(if r.leading().is_negative() { -&r } else { r })
}
