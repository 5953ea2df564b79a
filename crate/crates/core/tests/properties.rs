mod common;

use common::*;
use num_traits::Zero;
use proptest::prelude::*;
use projatlas::poly::{
    gcd_bivariate, real_roots_univariate, resultant_eliminate, Eliminate, Poly1, Poly2, Rat,
};
use projatlas::projective::{p1, p2, Transformation};
use projatlas::{parse_polynomial, ChartId, PlaneSystem};

fn rational() -> impl Strategy<Value = Rat> {
    (-30i64..=30, 1i64..=12).prop_map(|(n, d)| Rat::new(n.into(), d.into()))
}

fn nonzero_rational() -> impl Strategy<Value = Rat> {
    rational().prop_filter("nonzero", |r| !r.is_zero())
}

fn poly(max_deg: u32) -> impl Strategy<Value = Poly2> {
    let term = (0..=max_deg, 0..=max_deg, rational()).prop_filter_map("degree", move |(i, j, c)| {
        (i + j <= max_deg).then_some((i, j, c))
    });
    prop::collection::vec(term, 0..8).prop_map(Poly2::from_terms)
}

fn nonzero_poly(max_deg: u32) -> impl Strategy<Value = Poly2> {
    poly(max_deg).prop_filter("nonzero", |p| !p.is_zero())
}

fn point() -> impl Strategy<Value = (Rat, Rat)> {
    (nonzero_rational(), nonzero_rational())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn exact_division_recovers_the_quotient(a in poly(3), b in nonzero_poly(3)) {
        let prod = &a * &b;
        prop_assert!(prod.degree().unwrap_or(0) <= 6);
        prop_assert_eq!(prod.exact_divide(&b).unwrap(), a);
    }

    #[test]
    fn division_with_remainder(a in poly(4), b in nonzero_poly(2)) {
        let (q, r) = a.div_rem(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a);
    }

    #[test]
    fn resultant_vanishes_at_common_points(f in poly(3), g in poly(3), p in (rational(), rational())) {
        let (x0, y0) = p;
        let f = &f - &Poly2::constant(f.eval(&x0, &y0));
        let g = &g - &Poly2::constant(g.eval(&x0, &y0));
        prop_assume!(f.degree_in_y().unwrap_or(0) > 0 || g.degree_in_y().unwrap_or(0) > 0);
        if let Ok(r) = resultant_eliminate(&f, &g, Eliminate::Second) {
            prop_assert!(r.eval(&x0).is_zero(), "Res_y = {} at x = {}", r.to_string_var("x"), x0);
        }
        if let Ok(r) = resultant_eliminate(&f, &g, Eliminate::First) {
            prop_assert!(r.eval(&y0).is_zero());
        }
    }

    #[test]
    fn gcd_contains_a_planted_factor(a in poly(2), b in poly(2), c in nonzero_poly(2)) {
        prop_assume!(!c.is_constant() && !a.is_zero() && !b.is_zero());
        let g = gcd_bivariate(&(&a * &c), &(&b * &c));
        prop_assert!(g.exact_divide(&c).is_ok(), "gcd {} misses {}", g, c);
    }

    #[test]
    fn parse_print_roundtrip(p in poly(5), chart in 0usize..3) {
        let vars = ChartId::ALL[chart].var_names();
        let text = p.to_string_vars(vars[0], vars[1]);
        prop_assert_eq!(parse_polynomial(&text, vars).unwrap(), p);
    }

    #[test]
    fn distinct_rational_roots_are_found(roots in prop::collection::btree_set(-20i64..=20, 1..6)) {
        let mut p = Poly1::one();
        for r in &roots {
            p = &p * &Poly1::from_i64(&[-r * 3, 2]);
        }
        let found = real_roots_univariate(&p, 1e-12).unwrap();
        prop_assert_eq!(found.len(), roots.len());
        for (f, r) in found.iter().zip(&roots) {
            prop_assert!((f.value - *r as f64 * 1.5).abs() <= 1e-12);
        }
    }

    #[test]
    fn reduced_fields_are_parallel_to_the_pushed_forward_field(
        x in nonzero_poly(3),
        y in nonzero_poly(3),
        p in point(),
        first in any::<bool>(),
    ) {
        let Ok(s) = PlaneSystem::new(x, y, ChartId::XY) else { return Ok(()) };
        let which = if first { Transformation::First } else { Transformation::Second };
        prop_assert_eq!(pullback_parallel(&s, which, &p), Some(true));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn poincare_maps_form_a_group_of_order_three(p in point()) {
        let id = |q: &(Rat, Rat)| q.clone();
        prop_assert_eq!(id(&id(&p)), p.clone());
        prop_assert_eq!(p1(&id(&p)).unwrap(), id(&p1(&p).unwrap()));
        prop_assert_eq!(p2(&id(&p)).unwrap(), id(&p2(&p).unwrap()));
        prop_assert_eq!(p1(&p2(&p).unwrap()).unwrap(), p.clone());
        prop_assert_eq!(p2(&p1(&p).unwrap()).unwrap(), p.clone());
        prop_assert_eq!(p1(&p1(&p).unwrap()).unwrap(), p2(&p).unwrap());
        prop_assert_eq!(p2(&p2(&p).unwrap()).unwrap(), p1(&p).unwrap());
    }
}

#[test]
fn corpus_reductions_are_parallel() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for case in REDUCTIONS {
        let s = sys(case.system);
        for _ in 0..100 {
            let mut r = || loop {
                let v = Rat::new(rng.gen_range(-40i64..=40).into(), rng.gen_range(1i64..=9).into());
                if !v.is_zero() {
                    break v;
                }
            };
            let p = (r(), r());
            for which in [Transformation::First, Transformation::Second] {
                assert_eq!(pullback_parallel(&s, which, &p), Some(true), "{} at {p:?}", case.name);
            }
        }
    }
}
