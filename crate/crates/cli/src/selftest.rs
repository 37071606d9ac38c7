//! Built-in example suites: small worked cases with known answers.

use serde_json::json;

use hypergeom::euler::{build_chern, build_q, degree_audit, euler_case, gamma_kappa, restrict_jr};
use hypergeom::flag::{
    balloons, degree_interval, fixed_points, gkm_check, integrate_localization, multidegree_of_balloon,
    Balloon, FixedPoint, GkmClass, MultiDegree,
};
use hypergeom::link::{line_contribution, signed_rank, tangent_decomposition, verify_link};
use hypergeom::series::{assemble_b, euler_series_check, ingest_i, mirror_transform, ClassSeries};
use hypergeom::symbolic::{
    expand_alpha, parse_expr, parse_linear, FactoredExpr, RatFun, Rational, Substitution, Variable,
};

use crate::commands::Outcome;

const FIXTURE: &str = include_str!("../../core/tests/fixtures/fl2_idata.json");

type Check = fn() -> Result<bool, String>;

fn s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn expr(text: &str) -> Result<FactoredExpr, String> {
    parse_expr(text).map_err(s)
}

fn md(entries: &[i64]) -> MultiDegree {
    MultiDegree::new(entries.to_vec())
}

fn rational(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

fn symbolic_suite() -> Vec<(&'static str, Check)> {
    vec![
        ("parse single factor", || {
            let e = expr("(x+u1-u2)")?;
            Ok(e.factor_count() == 1 && e.factors().all(|(_, k)| k == 1))
        }),
        ("parse distinct factors", || {
            let e = expr("(x+H1-u1-2a)^-1 * (x+H1-u1)")?;
            let mut exps: Vec<i32> = e.factors().map(|(_, k)| k).collect();
            exps.sort();
            Ok(exps == vec![-1, 1])
        }),
        ("parse forced cancellation", || {
            let e = expr("3/2*(x)^2/(x)^2")?;
            Ok(e.factor_count() == 0 && *e.scalar() == rational(3, 2))
        }),
        ("render one", || Ok(FactoredExpr::one().to_string() == "1")),
        ("render negative scalar", || {
            let e = FactoredExpr::power_of(parse_linear("x+u1-u2").map_err(s)?, -1)
                .map_err(s)?
                .scale(&rational(-1, 1))
                .map_err(s)?;
            Ok(e.to_string() == "-1*(x+u1-u2)^-1")
        }),
        ("bar flips alpha", || Ok(expr("(x+H1-2a)")?.bar() == expr("(x+H1+2a)")?)),
        ("bar fixes alpha-free", || {
            let e = expr("(x+u1-u2)^2*(x+H1)^-1")?;
            Ok(e.bar() == e)
        }),
        ("substitute alpha to zero", || {
            let sub = Substitution::new().with_value(Variable::Alpha, rational(0, 1));
            Ok(expr("(x-a)")?.substitute(&sub).map_err(s)? == expr("(x)")?)
        }),
        ("alpha degree", || {
            Ok(expr("(x+H1-2a)^3")?.alpha_degree() == 3 && expr("(x)^5")?.alpha_degree() == 0)
        }),
        ("geometric expansion", || {
            let l = expand_alpha(&expr("(x-a)^-1")?, -2);
            Ok(l.coefficient(-1) == Some(RatFun::from_int(-1))
                && l.coefficient(-2) == Some(RatFun::var(Variable::X).neg())
                && l.coefficient(0) == Some(RatFun::zero()))
        }),
        ("commutativity", || {
            Ok(expr("(x+u1-u2)*(x-a)")? == expr("(x-a)*(x+u1-u2)")?
                && expr("(x+u1-u2)")? != expr("(x+u2-u1)")?)
        }),
    ]
}

fn flag_suite() -> Vec<(&'static str, Check)> {
    vec![
        ("fixed point counts", || {
            Ok(fixed_points(2).map_err(s)?.len() == 2
                && fixed_points(3).map_err(s)?.len() == 6
                && fixed_points(4).map_err(s)?.len() == 24)
        }),
        ("balloon counts", || {
            Ok(balloons(2).map_err(s)?.len() == 2 && balloons(3).map_err(s)?.len() == 18)
        }),
        ("balloon weight", || {
            let b: Balloon = "231x(1,3)".parse().map_err(s)?;
            Ok(*b.tangent_weight() == parse_linear("u2-u1").map_err(s)?)
        }),
        ("balloon degrees", || {
            let b2: Balloon = "12x(1,2)".parse().map_err(s)?;
            let b3: Balloon = "123x(1,3)".parse().map_err(s)?;
            Ok(multidegree_of_balloon(&b2, 1) == md(&[1])
                && multidegree_of_balloon(&b3, 1) == md(&[1, 1])
                && multidegree_of_balloon(&b3, 2) == md(&[2, 2]))
        }),
        ("degree intervals", || {
            Ok(degree_interval(&md(&[1, 1])).len() == 4
                && degree_interval(&md(&[0])) == vec![md(&[0])]
                && degree_interval(&md(&[2, 1])).len() == 6)
        }),
        ("integrate constant", || {
            let c = GkmClass::constant(2, RatFun::one()).map_err(s)?;
            Ok(integrate_localization(&c).map_err(s)?.is_zero())
        }),
        ("integrate weights", || {
            let c = GkmClass::new(2, vec![RatFun::var(Variable::U(1)), RatFun::var(Variable::U(2))]).map_err(s)?;
            Ok(integrate_localization(&c).map_err(s)? == RatFun::one())
        }),
        ("integrate euler class", || {
            let c = GkmClass::from_fn(3, |p| Ok(RatFun::from_factored(&p.tangent_euler_class()))).map_err(s)?;
            Ok(integrate_localization(&c).map_err(s)? == RatFun::from_int(6))
        }),
        ("gkm omega", || {
            let omega = build_chern(2).map_err(s)?.omega;
            let c = GkmClass::from_expr(2, &omega).map_err(s)?;
            Ok(gkm_check(&c).map_err(s)?.passed())
        }),
        ("gkm constant difference", || {
            let u1 = RatFun::var(Variable::U(1));
            let same = GkmClass::new(2, vec![u1.clone(), u1.clone()]).map_err(s)?;
            let off = GkmClass::new(2, vec![u1.clone(), u1.add(&RatFun::one())]).map_err(s)?;
            let report = gkm_check(&off).map_err(s)?;
            Ok(gkm_check(&same).map_err(s)?.passed()
                && report.violations.first().map(|b| b.to_string()) == Some("12x(1,2)".into()))
        }),
    ]
}

fn euler_suite() -> Vec<(&'static str, Check)> {
    vec![
        ("omega restrictions", || {
            let omega2 = build_chern(2).map_err(s)?.omega;
            let omega3 = build_chern(3).map_err(s)?.omega;
            let r2 = hypergeom::flag::restrict_expr(&omega2, &FixedPoint::identity(2)).map_err(s)?;
            let r3 = hypergeom::flag::restrict_expr(&omega3, &FixedPoint::identity(3)).map_err(s)?;
            Ok(r2 == expr("(x+u1-u2)")? && r3 == expr("(x+u1-u2)*(x+u1-u3)*(x+u2-u3)")?)
        }),
        ("omega n=2", || {
            Ok(build_chern(2).map_err(s)?.omega == expr("(x+y1-u1)*(x+y1-u2)/(x)")?)
        }),
        ("Q_1 for n=2", || {
            let q = build_q(2, &md(&[1])).map_err(s)?.q;
            Ok(q == expr("(x)^-1*(x+k1-u1)*(x+k1-u1-a)*(x+k1-u2)*(x+k1-u2-a)")?)
        }),
        ("Q_0 is gamma", || Ok(build_q(3, &md(&[0, 0])).map_err(s)?.q == gamma_kappa(3))),
        ("bar of j_0 Q_1", || {
            let q = build_q(2, &md(&[1])).map_err(s)?.q;
            let barred = restrict_jr(&q, &md(&[0])).map_err(s)?.bar();
            Ok(barred == expr("(x)^-1*(x+H1-u1)*(x+H1-u1+a)*(x+H1-u2)*(x+H1-u2+a)")?)
        }),
        ("euler data n=2", || {
            let chern = build_chern(2).map_err(s)?;
            Ok(euler_case(&chern, &md(&[1]), &md(&[0])).map_err(s)?.status.passed()
                && euler_case(&chern, &md(&[2]), &md(&[1])).map_err(s)?.status.passed())
        }),
        ("euler data n=3", || {
            let chern = build_chern(3).map_err(s)?;
            let d = md(&[1, 1]);
            for r in degree_interval(&d) {
                if !euler_case(&chern, &d, &r).map_err(s)?.status.passed() {
                    return Ok(false);
                }
            }
            Ok(true)
        }),
        ("degree audit n=2", || {
            let one = degree_audit(2, &md(&[1])).map_err(s)?;
            let zero = degree_audit(2, &md(&[0])).map_err(s)?;
            Ok(one.alpha_degree == 2 && one.slack == 0 && zero.alpha_degree == 0 && zero.slack == 0)
        }),
        ("degree audit n=3", || Ok(degree_audit(3, &md(&[1, 1])).map_err(s)?.slack >= 0)),
    ]
}

fn link_suite() -> Vec<(&'static str, Check)> {
    vec![
        ("signed ranks", || {
            Ok(signed_rank(&tangent_decomposition(2)) == 1 && signed_rank(&tangent_decomposition(3)) == 3)
        }),
        ("line contributions", || {
            let c = parse_linear("u1-u2").map_err(s)?;
            Ok(line_contribution(&c, 0, 1, &c).map_err(s)? == expr("(x+u1-u2)")?
                && line_contribution(&c, -1, 1, &c).map_err(s)?.is_one()
                && line_contribution(&c, 1, 1, &c).map_err(s)? == expr("(x+u1-u2)*(x)")?)
        }),
        ("link n=2", || {
            let b: Balloon = "12x(1,2)".parse().map_err(s)?;
            Ok(verify_link(&b, 1).map_err(s)?.passed())
        }),
        ("link n=3 delta=1", || {
            for b in balloons(3).map_err(s)? {
                if !verify_link(&b, 1).map_err(s)?.passed() {
                    return Ok(false);
                }
            }
            Ok(true)
        }),
        ("link n=3 delta=2", || {
            let b: Balloon = "132x(2,3)".parse().map_err(s)?;
            Ok(verify_link(&b, 2).map_err(s)?.passed())
        }),
    ]
}

fn fixture_series(cutoff: &[i64]) -> Result<ClassSeries, String> {
    let data = ingest_i(FIXTURE).map_err(s)?;
    assemble_b(&data, &md(cutoff)).map_err(s)
}

fn series_suite() -> Vec<(&'static str, Check)> {
    vec![
        ("ingest unit zero", || {
            let text = r#"{"n":2,"entries":[{"d":[0],"restrictions":{"12":"1","21":"1"},"provenance":"selftest"}]}"#;
            Ok(ingest_i(text).is_ok())
        }),
        ("ingest rejects degree -1", || {
            let text = r#"{"n":2,"entries":[{"d":[1],"restrictions":{"12":"(u1-u2-a)^-1","21":"(u2-u1-a)^-1"},"provenance":"selftest"}]}"#;
            Ok(ingest_i(text).is_err())
        }),
        ("fixture ingests", || Ok(ingest_i(FIXTURE).map_err(s)?.entries.len() == 5)),
        ("B_0 is omega", || {
            let b = fixture_series(&[0])?;
            let omega = build_chern(2).map_err(s)?.omega;
            Ok(b.coeffs[&md(&[0])] == GkmClass::from_expr(2, &omega).map_err(s)?)
        }),
        ("euler series d=0", || {
            let b = fixture_series(&[0])?;
            let omega = build_chern(2).map_err(s)?.omega;
            Ok(euler_series_check(&b, &omega, &md(&[0]), 3).map_err(s)?.passed())
        }),
        ("euler series d=1", || {
            let b = fixture_series(&[1])?;
            let omega = build_chern(2).map_err(s)?.omega;
            Ok(euler_series_check(&b, &omega, &md(&[1]), 2).map_err(s)?.passed())
        }),
        ("euler series perturbed", || {
            let b = fixture_series(&[1])?;
            let omega = build_chern(2).map_err(s)?.omega;
            let p = FixedPoint::identity(2);
            let bad = b.perturbed(&md(&[1]), &p, &RatFun::one()).map_err(s)?;
            Ok(!euler_series_check(&bad, &omega, &md(&[1]), 2).map_err(s)?.passed())
        }),
        ("mirror idempotent", || {
            let b = fixture_series(&[2])?;
            let omega = build_chern(2).map_err(s)?.omega;
            let (_, a) = mirror_transform(&b, &omega, &md(&[2])).map_err(s)?;
            let (again, a2) = mirror_transform(&a, &omega, &md(&[2])).map_err(s)?;
            Ok(again.is_trivial() && a2 == a)
        }),
    ]
}

pub fn run() -> Outcome {
    let suites: [(&str, Vec<(&str, Check)>); 5] = [
        ("symbolic", symbolic_suite()),
        ("flag", flag_suite()),
        ("euler", euler_suite()),
        ("link", link_suite()),
        ("series", series_suite()),
    ];
    let mut results = Vec::new();
    let mut verdicts = Vec::new();
    let mut lines = Vec::new();
    for (suite, checks) in suites {
        for (name, check) in checks {
            let (ok, detail) = match check() {
                Ok(ok) => (ok, None),
                Err(e) => (false, Some(e)),
            };
            verdicts.push(ok);
            lines.push(format!("{} {suite}: {name}", if ok { "pass" } else { "FAIL" }));
            results.push(json!({
                "suite": suite,
                "name": name,
                "status": if ok { "pass" } else { "fail" },
                "error": detail,
            }));
        }
    }
    let failed = verdicts.iter().filter(|ok| !**ok).count();
    Outcome {
        passed: failed == 0,
        total: verdicts.len(),
        failed,
        results: json!(results),
        lines,
    }
}
