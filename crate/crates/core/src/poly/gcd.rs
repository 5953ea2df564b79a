//! Bivariate gcd over Q via primitive pseudo-remainder sequences in Q[x][y].

use super::poly1::Poly1;
use super::poly2::Poly2;

type Col = Vec<Poly1>;

fn trim(mut a: Col) -> Col {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn content(a: &[Poly1]) -> Poly1 {
    a.iter().fold(Poly1::zero(), |g, c| g.gcd(c))
}

fn primitive_part(a: &[Poly1]) -> Col {
    let c = content(a);
    a.iter()
        .map(|p| p.div_rem(&c).expect("content is nonzero").0)
        .collect()
}

fn pseudo_rem(a: &[Poly1], b: &[Poly1]) -> Col {
    let db = b.len() - 1;
    let lb = b[db].clone();
    let mut r: Col = a.to_vec();
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        let mut next: Col = r.iter().map(|c| c * &lb).collect();
        for (k, bc) in b.iter().enumerate() {
            next[k + shift] = &next[k + shift] - &(bc * &lr);
        }
        r = trim(next);
    }
    r
}

/// Greatest common divisor, normalized to integer coefficients with gcd one
/// and a positive leading coefficient. `gcd(0, 0) = 0`.
pub fn gcd_bivariate(f: &Poly2, g: &Poly2) -> Poly2 {
    if f.is_zero() {
        return g.primitive();
    }
    if g.is_zero() {
        return f.primitive();
    }
    let fa = f.coeffs_in_y();
    let ga = g.coeffs_in_y();
    let cont = content(&fa).gcd(&content(&ga));
    let (mut a, mut b) = (primitive_part(&fa), primitive_part(&ga));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = pseudo_rem(&a, &b);
        a = b;
        b = if r.is_empty() { r } else { primitive_part(&r) };
    }
    let a = primitive_part(&a);
    let lifted = Poly2::from_coeffs_in_y(&a);
    let c = Poly2::from_coeffs_in_y(&[cont]);
    (&lifted * &c).primitive()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn p(s: &str) -> Poly2 {
        parse_polynomial(s, ["x", "y"]).unwrap()
    }

    #[test]
    fn shared_linear_factor() {
        assert_eq!(gcd_bivariate(&p("x^2 - y^2"), &p("x^2 - 2x*y + y^2")), p("x - y"));
    }

    #[test]
    fn coprime_pair() {
        assert_eq!(gcd_bivariate(&p("-y + x^3"), &p("x + x^2*y")), p("1"));
    }

    #[test]
    fn content_in_x() {
        let f = p("x*(y + 1)*(x + 2)");
        let g = p("x^2*(x + 2)*(y - 3)");
        assert_eq!(gcd_bivariate(&f, &g), p("x^2 + 2x"));
    }

    #[test]
    fn theta_factor() {
        assert_eq!(gcd_bivariate(&p("y*(1 + x^2)"), &p("3y")), p("y"));
    }
}
