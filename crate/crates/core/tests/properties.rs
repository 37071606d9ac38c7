use proptest::prelude::*;

use hypergeom::euler::{build_chern, euler_case};
use hypergeom::flag::{
    degree_interval, fixed_points, integrate_localization, multidegree_of_balloon, restrict_expr, restrict_ratfun, Balloon, GkmClass,
    MultiDegree,
};
use hypergeom::series::{mirror_transform, ClassSeries, QSeries};
use hypergeom::symbolic::{
    expand_alpha, expand_alpha_ratfun, parse_expr, render_expr, FactoredExpr, LinearForm, RatFun, Rational,
    Substitution, Variable,
};

fn variable() -> impl Strategy<Value = Variable> {
    prop_oneof![
        Just(Variable::X),
        Just(Variable::Alpha),
        (1u16..=3).prop_map(Variable::U),
        (1u16..=2).prop_map(Variable::H),
        (1u16..=2).prop_map(Variable::Kappa),
        (1u16..=2).prop_map(Variable::Y),
    ]
}

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |r| *r != Rational::from_integer(0.into()))
}

fn linear_form() -> impl Strategy<Value = LinearForm> {
    (prop::collection::vec((variable(), nonzero_rational()), 1..4), rational())
        .prop_map(|(terms, c)| {
            let mut f = LinearForm::constant(c);
            for (v, k) in terms {
                f.add_term(v, &k);
            }
            f
        })
        .prop_filter("non-constant", |f| !f.is_constant())
}

fn factored() -> impl Strategy<Value = FactoredExpr> {
    (nonzero_rational(), prop::collection::vec((linear_form(), -3i32..=3), 0..5)).prop_map(|(c, fs)| {
        let mut e = FactoredExpr::scalar_expr(c).unwrap();
        for (f, k) in fs {
            e.push_factor(f, k).unwrap();
        }
        e
    })
}

fn small_factored() -> impl Strategy<Value = FactoredExpr> {
    (nonzero_rational(), prop::collection::vec((linear_form(), -2i32..=2), 0..3)).prop_map(|(c, fs)| {
        let mut e = FactoredExpr::scalar_expr(c).unwrap();
        for (f, k) in fs {
            e.push_factor(f, k).unwrap();
        }
        e
    })
}

fn ratfun() -> impl Strategy<Value = RatFun> {
    (small_factored(), small_factored(), prop::bool::ANY).prop_map(|(a, b, sum)| {
        let (a, b) = (RatFun::from_factored(&a), RatFun::from_factored(&b));
        if sum {
            a.add(&b)
        } else {
            a.mul(&b)
        }
    })
}

/// Factored expressions in which every α-dependent factor has a positive
/// exponent.
fn alpha_polynomial() -> impl Strategy<Value = FactoredExpr> {
    factored().prop_map(|e| {
        let mut out = FactoredExpr::scalar_expr(e.scalar().clone()).unwrap();
        for (f, k) in e.factors() {
            let k = if f.contains(Variable::Alpha) { k.abs().max(1) } else { k };
            out.push_factor(f.clone(), k).unwrap();
        }
        out
    })
}

fn u_values() -> impl Strategy<Value = Substitution> {
    (rational(), rational(), rational()).prop_map(|(a, b, c)| {
        Substitution::new()
            .with_value(Variable::U(1), a)
            .with_value(Variable::U(2), b)
            .with_value(Variable::U(3), c)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn render_then_parse_is_identity(e in factored()) {
        prop_assert_eq!(parse_expr(&render_expr(&e)).unwrap(), e);
    }

    #[test]
    fn bar_is_an_involution(e in factored(), r in ratfun()) {
        prop_assert_eq!(e.bar().bar(), e);
        prop_assert_eq!(r.bar().bar(), r);
    }

    #[test]
    fn bar_is_multiplicative_and_additive(a in factored(), b in factored(), r in ratfun(), s in ratfun()) {
        prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        prop_assert_eq!(r.mul(&s).bar(), r.bar().mul(&s.bar()));
        prop_assert_eq!(r.add(&s).bar(), r.bar().add(&s.bar()));
    }

    #[test]
    fn substitution_is_multiplicative(a in factored(), b in factored(), sub in u_values()) {
        let (sa, sb) = (a.substitute(&sub), b.substitute(&sub));
        prop_assume!(sa.is_ok() && sb.is_ok());
        let prod = (&a * &b).substitute(&sub);
        prop_assume!(prod.is_ok());
        prop_assert_eq!(prod.unwrap(), &sa.unwrap() * &sb.unwrap());
    }

    #[test]
    fn alpha_degree_is_additive(a in factored(), b in factored(), r in ratfun(), s in ratfun()) {
        prop_assert_eq!((&a * &b).alpha_degree(), a.alpha_degree() + b.alpha_degree());
        prop_assume!(!r.is_zero() && !s.is_zero());
        prop_assert_eq!(
            r.mul(&s).alpha_degree(),
            Some(r.alpha_degree().unwrap() + s.alpha_degree().unwrap())
        );
    }

    #[test]
    fn expansion_respects_products(a in factored(), b in factored(), floor in -4i64..=1) {
        let prod = expand_alpha(&a, floor).mul(&expand_alpha(&b, floor));
        prop_assert_eq!(expand_alpha(&(&a * &b), prod.floor()), prod);
    }

    #[test]
    fn expansion_of_ratfun_matches_factored(e in factored(), floor in -4i64..=1) {
        prop_assert_eq!(expand_alpha_ratfun(&RatFun::from_factored(&e), floor), expand_alpha(&e, floor));
    }

    #[test]
    fn no_negative_powers_without_alpha_poles(e in alpha_polynomial(), floor in -5i64..=-1) {
        let l = expand_alpha(&e, floor);
        for (k, c) in l.terms() {
            prop_assert!(k >= 0 || c.is_zero(), "α^{} has coefficient {}", k, c);
        }
        prop_assert_eq!(l.top(), Some(e.alpha_degree()));
    }

    #[test]
    fn expression_times_inverse_is_one(e in factored(), r in ratfun()) {
        prop_assert!((&e * &e.inv()).is_one());
        prop_assert_eq!(r.sub(&r), RatFun::zero());
        prop_assert_eq!(
            RatFun::from_factored(&e).mul(&RatFun::from_factored(&e.inv())),
            RatFun::one()
        );
    }

    #[test]
    fn series_exp_has_inverse(c1 in rational(), c2 in rational(), c3 in rational()) {
        let cutoff = MultiDegree::new(vec![2, 2]);
        let x = QSeries::from_terms(
            [
                (MultiDegree::new(vec![1, 0]), RatFun::constant(c1)),
                (MultiDegree::new(vec![0, 1]), RatFun::constant(c2).mul(&RatFun::var(Variable::U(1)))),
                (MultiDegree::new(vec![1, 1]), RatFun::constant(c3)),
            ],
            &cutoff,
        );
        prop_assert_eq!(x.exp().mul(&x.neg().exp()), QSeries::one(&cutoff));
        prop_assert_eq!(x.exp().sub(&QSeries::one(&cutoff)).log1p(), x);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn euler_data_symmetric_in_r(n in 2usize..=3, d1 in 0i64..=2, d2 in 0i64..=2) {
        let d = if n == 2 { MultiDegree::new(vec![d1]) } else { MultiDegree::new(vec![d1, d2]) };
        let chern = build_chern(n).unwrap();
        for r in degree_interval(&d) {
            let here = euler_case(&chern, &d, &r).unwrap();
            let mirrored = euler_case(&chern, &d, &d.sub(&r)).unwrap();
            prop_assert_eq!(here.status, mirrored.status);
        }
    }

    #[test]
    fn balloon_degrees_are_linear(n in 2usize..=4, p_idx in 0usize..24, i in 1usize..=4, j in 1usize..=4, delta in 1i64..=3) {
        prop_assume!(i < j && j <= n);
        let points = fixed_points(n).unwrap();
        let p = points[p_idx % points.len()].clone();
        let b = Balloon::new(p, i, j).unwrap();
        prop_assert_eq!(multidegree_of_balloon(&b, delta), multidegree_of_balloon(&b, 1).scale(delta));
        prop_assert_eq!(multidegree_of_balloon(&b.reversed(), 1), multidegree_of_balloon(&b, 1));
        prop_assert!(multidegree_of_balloon(&b, 1).is_effective());
    }

    #[test]
    fn small_degree_classes_integrate_to_polynomials(n in 2usize..=3, forms in prop::collection::vec(
        (prop::collection::vec(-2i64..=2, 3), prop::collection::vec(-2i64..=2, 3)), 0..3)) {
        // A product of k < dim forms in y and u integrates to 0; of dim forms
        // to a constant; in all cases to a polynomial.
        let mut product = RatFun::one();
        let mut count = 0;
        for (ys, us) in &forms {
            let mut f = LinearForm::zero();
            for (a, c) in ys.iter().enumerate().take(n) {
                f.add_term(Variable::Y(a as u16 + 1), &Rational::from_integer((*c).into()));
            }
            for (a, c) in us.iter().enumerate().take(n) {
                f.add_term(Variable::U(a as u16 + 1), &Rational::from_integer((*c).into()));
            }
            if f.is_zero() {
                continue;
            }
            count += 1;
            product = product.mul(&RatFun::from_linear(&f));
        }
        let class = GkmClass::from_fn(n, |p| restrict_ratfun(&product, p)).unwrap();
        let total = integrate_localization(&class).unwrap();
        prop_assert!(total.is_polynomial(), "{}", total);
        if count < n * (n - 1) / 2 {
            prop_assert!(total.is_zero());
        }
    }

    #[test]
    fn mirror_transform_is_idempotent(c in nonzero_rational(), k in nonzero_rational(), lead in nonzero_rational()) {
        let omega = build_chern(2).unwrap().omega;
        let cutoff = MultiDegree::new(vec![2]);
        let alpha = LinearForm::var(Variable::Alpha);
        let coeffs = degree_interval(&cutoff)
            .into_iter()
            .map(|d| {
                let extra = if d.is_zero() {
                    RatFun::one()
                } else {
                    let shift = LinearForm::var(Variable::U(1)).scale(&k);
                    RatFun::constant(lead.clone())
                        .add(&RatFun::constant(c.clone()).div_factored(&FactoredExpr::linear(alpha.clone() + shift).unwrap()))
                };
                let class = GkmClass::from_fn(2, |p| Ok(extra.mul_factored(&restrict_expr(&omega, p)?))).unwrap();
                (d, class)
            })
            .collect();
        let b = ClassSeries { n: 2, cutoff: cutoff.clone(), coeffs };
        let (_, a) = mirror_transform(&b, &omega, &cutoff).unwrap();
        let (again, a2) = mirror_transform(&a, &omega, &cutoff).unwrap();
        prop_assert!(again.is_trivial());
        prop_assert_eq!(a2, a);
    }
}
