use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::poly1::{push_term, Poly1};
use super::rat::{rat_to_f64, Rat};
use super::PolyError;

/// Exponent pair `x^i y^j`, ordered graded-lexicographically with `x` major.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub i: u32,
    pub j: u32,
}

impl Monomial {
    pub fn new(i: u32, j: u32) -> Self {
        Monomial { i, j }
    }

    pub fn degree(self) -> u32 {
        self.i + self.j
    }

    fn divides(self, other: Monomial) -> bool {
        self.i <= other.i && self.j <= other.j
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.degree(), self.i).cmp(&(other.degree(), other.i))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Bivariate polynomial with rational coefficients. The two variables are
/// positional ("first" and "second"); their printed names belong to the chart.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly2 {
    terms: BTreeMap<Monomial, Rat>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2 { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Rat::from_integer(c.into()))
    }

    pub fn monomial(c: Rat, i: u32, j: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::new(i, j), c);
        p
    }

    /// The first variable.
    pub fn x() -> Self {
        Self::monomial(Rat::one(), 1, 0)
    }

    /// The second variable.
    pub fn y() -> Self {
        Self::monomial(Rat::one(), 0, 1)
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, u32, Rat)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (i, j, c) in terms {
            p.add_term(Monomial::new(i, j), c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    pub fn degree_in_x(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.i).max()
    }

    pub fn degree_in_y(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.j).max()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rat {
        self.terms.get(&Monomial::new(i, j)).cloned().unwrap_or_else(Rat::zero)
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading_term(&self) -> Option<(Monomial, Rat)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c.clone()))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly2 {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    /// Multiply by `x^i y^j`.
    pub fn shift(&self, i: u32, j: u32) -> Self {
        Poly2 {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (Monomial::new(m.i + i, m.j + j), a.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn dx(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.i > 0)
                .map(|(m, c)| (m.i - 1, m.j, c * Rat::from_integer(m.i.into()))),
        )
    }

    pub fn dy(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.j > 0)
                .map(|(m, c)| (m.i, m.j - 1, c * Rat::from_integer(m.j.into()))),
        )
    }

    pub fn eval(&self, x: &Rat, y: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            acc += c * pow_rat(x, m.i) * pow_rat(y, m.j);
        }
        acc
    }

    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| rat_to_f64(c) * x.powi(m.i as i32) * y.powi(m.j as i32))
            .sum()
    }

    /// Float copy for repeated evaluation.
    pub fn to_f64(&self) -> Poly2F {
        Poly2F {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.i as i32, m.j as i32, rat_to_f64(c)))
                .collect(),
        }
    }

    /// Homogeneous component of degree `k`.
    pub fn homogeneous(&self, k: u32) -> Self {
        Poly2 {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == k)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Components of degrees `0..=deg`, padded with zeros.
    pub fn homogeneous_components(&self) -> Vec<Poly2> {
        match self.degree() {
            None => Vec::new(),
            Some(d) => (0..=d).map(|k| self.homogeneous(k)).collect(),
        }
    }

    /// `p(fx, fy)`.
    pub fn compose(&self, fx: &Poly2, fy: &Poly2) -> Poly2 {
        let mut xp: Vec<Poly2> = vec![Poly2::one()];
        let mut yp: Vec<Poly2> = vec![Poly2::one()];
        let mut acc = Poly2::zero();
        for (m, c) in &self.terms {
            while xp.len() <= m.i as usize {
                let next = xp.last().unwrap() * fx;
                xp.push(next);
            }
            while yp.len() <= m.j as usize {
                let next = yp.last().unwrap() * fy;
                yp.push(next);
            }
            let t = &xp[m.i as usize] * &yp[m.j as usize];
            acc = &acc + &t.scale(c);
        }
        acc
    }

    /// `p(fx(t), fy(t))` for univariate substitutions.
    pub fn along(&self, fx: &Poly1, fy: &Poly1) -> Poly1 {
        let mut acc = Poly1::zero();
        for (m, c) in &self.terms {
            let t = &fx.pow(m.i) * &fy.pow(m.j);
            acc = &acc + &t.scale(c);
        }
        acc
    }

    /// `p(1, t)`.
    pub fn dehomogenize_first(&self) -> Poly1 {
        self.along(&Poly1::one(), &Poly1::t())
    }

    /// `p(t, 1)`.
    pub fn dehomogenize_second(&self) -> Poly1 {
        self.along(&Poly1::t(), &Poly1::one())
    }

    /// `p(t, 0)`.
    pub fn on_first_axis(&self) -> Poly1 {
        self.along(&Poly1::t(), &Poly1::zero())
    }

    /// `p(0, t)`.
    pub fn on_second_axis(&self) -> Poly1 {
        self.along(&Poly1::zero(), &Poly1::t())
    }

    /// Exchange the roles of the two variables.
    pub fn swap(&self) -> Poly2 {
        Self::from_terms(self.terms.iter().map(|(m, c)| (m.j, m.i, c.clone())))
    }

    /// Lowest exponent of the second variable over all terms.
    pub fn min_power_of_y(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.j).min()
    }

    pub fn min_power_of_x(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.i).min()
    }

    /// Divide every term by `x^i y^j`; the caller guarantees divisibility.
    pub(crate) fn unshift(&self, i: u32, j: u32) -> Poly2 {
        Poly2 {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial::new(m.i - i, m.j - j), c.clone()))
                .collect(),
        }
    }

    /// Quotient `self / d`, failing if the remainder is nonzero.
    pub fn exact_divide(&self, d: &Poly2) -> Result<Poly2, PolyError> {
        let (q, r) = self.div_rem(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(PolyError::NotDivisible { remainder: r.to_string_vars("x", "y") })
        }
    }

    /// Multivariate division by a single divisor in graded lex order.
    pub fn div_rem(&self, d: &Poly2) -> Result<(Poly2, Poly2), PolyError> {
        let (lm, lc) = d.leading_term().ok_or(PolyError::DivisionByZero)?;
        let mut p = self.clone();
        let mut q = Poly2::zero();
        let mut r = Poly2::zero();
        while let Some((m, c)) = p.leading_term() {
            if lm.divides(m) {
                let f = &c / &lc;
                let (di, dj) = (m.i - lm.i, m.j - lm.j);
                q.add_term(Monomial::new(di, dj), f.clone());
                p = &p - &d.shift(di, dj).scale(&f);
            } else {
                p.terms.remove(&m);
                r.add_term(m, c);
            }
        }
        Ok((q, r))
    }

    /// Coefficients as polynomials in `x`, indexed by the power of `y`.
    pub fn coeffs_in_y(&self) -> Vec<Poly1> {
        let dy = match self.degree_in_y() {
            None => return Vec::new(),
            Some(d) => d as usize,
        };
        let mut cols: Vec<Vec<Rat>> = vec![Vec::new(); dy + 1];
        for (m, c) in &self.terms {
            let col = &mut cols[m.j as usize];
            if col.len() <= m.i as usize {
                col.resize(m.i as usize + 1, Rat::zero());
            }
            col[m.i as usize] = c.clone();
        }
        cols.into_iter().map(Poly1::from_coeffs).collect()
    }

    pub fn from_coeffs_in_y(cols: &[Poly1]) -> Poly2 {
        let mut p = Poly2::zero();
        for (j, col) in cols.iter().enumerate() {
            for (i, c) in col.coeffs().iter().enumerate() {
                p.add_term(Monomial::new(i as u32, j as u32), c.clone());
            }
        }
        p
    }

    /// Print in the input grammar: ascending degree, and within one degree
    /// descending powers of the first variable.
    pub fn to_string_vars(&self, x: &str, y: &str) -> String {
        let mut keys: Vec<&Monomial> = self.terms.keys().collect();
        keys.sort_by(|a, b| a.degree().cmp(&b.degree()).then(b.i.cmp(&a.i)));
        let mut out = String::new();
        for m in keys {
            let c = &self.terms[m];
            push_term(&mut out, c, &monomial_2(x, y, *m));
        }
        if out.is_empty() {
            "0".to_string()
        } else {
            out
        }
    }

    /// Rescale to integer coefficients with gcd one and a positive leading
    /// coefficient.
    pub fn primitive(&self) -> Poly2 {
        use num_integer::Integer;
        if self.is_zero() {
            return self.clone();
        }
        let mut den = num_bigint::BigInt::one();
        let mut num = num_bigint::BigInt::zero();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
            num = num.gcd(c.numer());
        }
        let mut f = Rat::new(den, num);
        if self.leading_term().unwrap().1.is_negative() {
            f = -f;
        }
        self.scale(&f)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().map(|c| rat_to_f64(c).abs()).fold(0.0, f64::max)
    }
}

fn monomial_2(x: &str, y: &str, m: Monomial) -> String {
    let part = |v: &str, e: u32| match e {
        0 => String::new(),
        1 => v.to_string(),
        _ => format!("{v}^{e}"),
    };
    let (a, b) = (part(x, m.i), part(y, m.j));
    match (a.is_empty(), b.is_empty()) {
        (true, _) => b,
        (_, true) => a,
        _ => format!("{a}*{b}"),
    }
}

fn pow_rat(x: &Rat, e: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

impl std::fmt::Display for Poly2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_string_vars("x", "y"))
    }
}

impl Add for &Poly2 {
    type Output = Poly2;
    fn add(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &Poly2 {
    type Output = Poly2;
    fn sub(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Neg for &Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        Poly2 {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl Mul for &Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: &Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        for (ma, a) in &self.terms {
            for (mb, b) in &rhs.terms {
                out.add_term(Monomial::new(ma.i + mb.i, ma.j + mb.j), a * b);
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Poly2 {
            type Output = Poly2;
            fn $m(self, rhs: Poly2) -> Poly2 {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        -&self
    }
}

/// Float evaluation form of a [`Poly2`].
#[derive(Clone, Debug, PartialEq)]
pub struct Poly2F {
    terms: Vec<(i32, i32, f64)>,
}

impl Poly2F {
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.terms.iter().map(|&(i, j, c)| c * x.powi(i) * y.powi(j)).sum()
    }

    pub fn gradient(&self, x: f64, y: f64) -> (f64, f64) {
        let mut gx = 0.0;
        let mut gy = 0.0;
        for &(i, j, c) in &self.terms {
            if i > 0 {
                gx += c * i as f64 * x.powi(i - 1) * y.powi(j);
            }
            if j > 0 {
                gy += c * j as f64 * x.powi(i) * y.powi(j - 1);
            }
        }
        (gx, gy)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn p(s: &str) -> Poly2 {
        parse_polynomial(s, ["x", "y"]).unwrap()
    }

    #[test]
    fn graded_lex_leading_term() {
        let f = p("y^3 + x*y^2 + x^2");
        assert_eq!(f.leading_term().unwrap().0, Monomial::new(1, 2));
    }

    #[test]
    fn printing_order() {
        assert_eq!(p("x^3 - y").to_string(), "-y + x^3");
        assert_eq!(p("-3y^2 + 4x y + 5x^2 + 1/2").to_string(), "1/2 + 5*x^2 + 4*x*y - 3*y^2");
    }

    #[test]
    fn exact_division() {
        let f = p("x^2 - y^2");
        assert_eq!(f.exact_divide(&p("x - y")).unwrap(), p("x + y"));
        assert!(p("x^2 + y").exact_divide(&p("x")).is_err());
        assert_eq!(p("x^2 - y^2").exact_divide(&Poly2::zero()), Err(PolyError::DivisionByZero));
    }

    #[test]
    fn homogeneous_parts() {
        let f = p("1 - x^2 - y^2");
        let parts = f.homogeneous_components();
        assert_eq!(parts.len(), 3);
        assert!(parts[1].is_zero());
        assert_eq!(parts[2], p("-x^2 - y^2"));
    }

    #[test]
    fn composition() {
        let f = p("x^2 + y");
        let g = f.compose(&p("x + y"), &p("x - y"));
        assert_eq!(g, p("x^2 + 2x*y + y^2 + x - y"));
    }
}
