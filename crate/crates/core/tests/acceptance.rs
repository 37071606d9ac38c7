//! Acceptance suite: one line per criterion, exit status non-zero if any
//! criterion fails. All comparisons are exact.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hypergeom::euler::{build_chern, degree_audit, verify_euler_data};
use hypergeom::flag::{
    balloons, classify_printed_table, degree_pairing, fixed_points, integrate_localization,
    line_degree, line_degree_table, restrict_expr, Balloon, FixedPoint, GkmClass, LineWeight, MultiDegree,
    TableVerdict,
};
use hypergeom::link::verify_link;
use hypergeom::series::{assemble_b, euler_series_check, ingest_i, mirror_transform, ClassSeries};
use hypergeom::symbolic::{
    parse_expr, render_expr, FactoredExpr, LinearForm, RatFun, Rational, Variable,
};

/// Exact comparisons only: no slack on any identity.
const SLACK_FLOOR: i64 = 0;
const EULER_DATA_BUDGET: Duration = Duration::from_secs(60);
const LINK_BUDGET: Duration = Duration::from_secs(120);
const PARSER_CORPUS_SIZE: usize = 10_000;
const MIRROR_ORDER: usize = 3;
const MIRROR_TRIALS: u64 = 4;

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    ok: bool,
    detail: String,
}

fn verdict(ok: bool, detail: impl Into<String>) -> Verdict {
    Verdict { ok, detail: detail.into() }
}

fn md(entries: &[i64]) -> MultiDegree {
    MultiDegree::new(entries.to_vec())
}

fn rat(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

fn u(i: usize) -> LinearForm {
    LinearForm::var(Variable::U(i as u16))
}

// 1. Euler-data identity.
fn euler_data() -> Verdict {
    let start = Instant::now();
    let mut cases = 0;
    let mut failures = Vec::new();
    for (n, bound) in [(2usize, md(&[4])), (3, md(&[2, 2]))] {
        for d in hypergeom::flag::degree_interval(&bound) {
            let report = verify_euler_data(n, &d).expect("valid degree");
            cases += report.cases.len();
            for c in report.cases.iter().filter(|c| !c.status.passed()) {
                failures.push(format!("n={n} d=[{d}] r={:?}", c.r));
            }
        }
    }
    let elapsed = start.elapsed();
    verdict(
        failures.is_empty() && elapsed <= EULER_DATA_BUDGET,
        format!("{cases} (n, d, r) cases, {} failed, {:.2?}", failures.len(), elapsed),
    )
}

// 2. Chern classes against tangent weights written out by hand.
fn chern_oracle() -> Verdict {
    let mut checked = 0;
    for n in 2..=4 {
        let omega = build_chern(n).expect("chern data").omega;
        for p in fixed_points(n).unwrap() {
            let mut text = String::new();
            for i in 1..=n {
                for j in (i + 1)..=n {
                    if !text.is_empty() {
                        text.push('*');
                    }
                    text.push_str(&format!("(x+u{}-u{})", p.image(i), p.image(j)));
                }
            }
            let expected = parse_expr(&text).unwrap();
            if restrict_expr(&omega, &p).unwrap() != expected {
                return verdict(false, format!("n={n} at {p}"));
            }
            checked += 1;
        }
    }
    verdict(true, format!("{checked} fixed points, n = 2..4"))
}

// 3. Degrees of L*⊗L summands on balloons.
fn pairing_tables() -> Verdict {
    let oracle = |a: usize, s: usize, t: usize| -> i64 {
        if a == s {
            1
        } else if a == t {
            -1
        } else {
            0
        }
    };
    let mut checked = 0;
    let (mut agree, mut ambiguous, mut uncovered, mut contradicts) = (0, 0, 0, 0);
    for n in 2..=4usize {
        for s in 1..=n {
            for t in (s + 1)..=n {
                let b = Balloon::new(FixedPoint::identity(n), s, t).unwrap();
                for a in 1..n {
                    for c in 1..n {
                        let expected = oracle(a, s, t) - oracle(c, s, t);
                        if line_degree(LineWeight::Pair { a, b: c }, &b) != expected
                            || line_degree_table(a, c, s, t) != expected
                            || degree_pairing(a, &b) - degree_pairing(c, &b) != expected
                        {
                            return verdict(false, format!("n={n} a={a} b={c} s={s} t={t}"));
                        }
                        if a != c {
                            match classify_printed_table(a, c, s, t) {
                                TableVerdict::Agree => agree += 1,
                                TableVerdict::Ambiguous => ambiguous += 1,
                                TableVerdict::Uncovered => uncovered += 1,
                                TableVerdict::Contradicts => contradicts += 1,
                            }
                        }
                        checked += 1;
                    }
                }
            }
        }
    }
    verdict(
        contradicts == 0,
        format!(
            "{checked} (a,b,s,t) tuples match the formula; rows as displayed: {agree} agree, {ambiguous} ambiguous, {uncovered} uncovered, {contradicts} contradict"
        ),
    )
}

// 4. Linking at α = λ/δ.
fn linking() -> Verdict {
    let start = Instant::now();
    let mut cases = 0;
    let mut failures = Vec::new();
    for n in 2..=3 {
        for b in balloons(n).unwrap() {
            for delta in 1..=2 {
                let report = verify_link(&b, delta).expect("link report");
                cases += 1;
                if !report.passed() {
                    failures.push(format!("{} delta={delta} {:?}", report.balloon, report.status));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    verdict(
        failures.is_empty() && elapsed <= LINK_BUDGET,
        format!("{cases} balloon cases, {} failed {:?}, {:.2?}", failures.len(), failures, elapsed),
    )
}

// 5. α-degree audit over the sweeps of criterion 1.
fn degree_bound() -> Verdict {
    let mut slacks = Vec::new();
    let mut violations = Vec::new();
    for (n, bound) in [(2usize, md(&[4])), (3, md(&[2, 2]))] {
        for d in hypergeom::flag::degree_interval(&bound) {
            let audit = degree_audit(n, &d).unwrap();
            slacks.push(audit.slack);
            if audit.alpha_degree > audit.bound || audit.slack < SLACK_FLOOR {
                violations.push(format!("n={n} d=[{d}] deg={} bound={} slack={}", audit.alpha_degree, audit.bound, audit.slack));
            }
        }
    }
    verdict(
        violations.is_empty(),
        format!(
            "{} degrees, slack range {}..{}; violations: {:?}",
            slacks.len(),
            slacks.iter().min().unwrap(),
            slacks.iter().max().unwrap(),
            violations
        ),
    )
}

// 6. Atiyah–Bott integration.
fn integration() -> Verdict {
    for n in 2..=4usize {
        let one = GkmClass::constant(n, RatFun::one()).unwrap();
        if !integrate_localization(&one).unwrap().is_zero() {
            return verdict(false, format!("integral of 1 nonzero for n={n}"));
        }
        let euler = GkmClass::from_fn(n, |p| {
            let mut e = RatFun::one();
            for i in 1..=n {
                for j in (i + 1)..=n {
                    e = e.mul(&RatFun::from_linear(&(u(p.image(i)) - u(p.image(j)))));
                }
            }
            Ok(e)
        })
        .unwrap();
        let factorial: i64 = (1..=n as i64).product();
        if integrate_localization(&euler).unwrap() != RatFun::from_int(factorial) {
            return verdict(false, format!("integral of e_T wrong for n={n}"));
        }
    }
    verdict(true, "n = 2..4")
}

fn fixture_text() -> String {
    std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/fl2_idata.json")).unwrap()
}

// 7. Euler-series condition from the fixture.
fn euler_series() -> Verdict {
    let data = match ingest_i(&fixture_text()) {
        Ok(d) => d,
        Err(e) => return verdict(false, e.to_string()),
    };
    let omega = build_chern(2).unwrap().omega;
    let b = assemble_b(&data, &md(&[3])).unwrap();
    let mut terms = 0;
    for d in 0..=3 {
        for zeta in 0..=2 {
            let report = euler_series_check(&b, &omega, &md(&[d]), zeta).unwrap();
            terms += report.terms.len();
            if !report.passed() {
                return verdict(false, format!("d={d} zeta_order={zeta}: {:?}", report.terms));
            }
        }
    }
    let bad = b.perturbed(&md(&[1]), &FixedPoint::identity(2), &RatFun::one()).unwrap();
    let report = euler_series_check(&bad, &omega, &md(&[1]), 2).unwrap();
    let residual = report
        .terms
        .iter()
        .find(|t| !t.status.passed())
        .map(|t| t.residual_denominator.join("*"));
    verdict(
        !report.passed(),
        format!("{terms} monomial checks pass; perturbed B_1 fails with residual {residual:?}"),
    )
}

// 8. Mirror transform round trip.

/// Truncated power series in one variable, written independently of the
/// library's series type.
type Series = Vec<RatFun>;

fn s_zero() -> Series {
    vec![RatFun::zero(); MIRROR_ORDER + 1]
}

fn s_mul(a: &Series, b: &Series) -> Series {
    let mut out = s_zero();
    for i in 0..=MIRROR_ORDER {
        for j in 0..=(MIRROR_ORDER - i) {
            out[i + j] = out[i + j].add(&a[i].mul(&b[j]));
        }
    }
    out
}

fn s_scale(a: &Series, c: &RatFun) -> Series {
    a.iter().map(|t| t.mul(c)).collect()
}

fn s_exp(a: &Series) -> Series {
    assert!(a[0].is_zero());
    let mut out = s_zero();
    out[0] = RatFun::one();
    let mut power = out.clone();
    for k in 1..=MIRROR_ORDER {
        power = s_scale(&s_mul(&power, a), &RatFun::constant(rat(1, k as i64)));
        for i in 0..=MIRROR_ORDER {
            out[i] = out[i].add(&power[i]);
        }
    }
    out
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-5..=5), rng.gen_range(1..=4))
}

fn random_nonzero(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let r = random_rational(rng);
        if r != rat(0, 1) {
            return r;
        }
    }
}

fn random_u_linear(rng: &mut ChaCha8Rng) -> RatFun {
    let mut f = LinearForm::constant(random_rational(rng));
    f.add_term(Variable::U(1), &random_rational(rng));
    f.add_term(Variable::U(2), &random_rational(rng));
    RatFun::from_linear(&f)
}

fn mirror_trial(seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let omega = build_chern(2).unwrap().omega;
    let points = fixed_points(2).unwrap();
    let alpha_inv = RatFun::one().div_factored(&FactoredExpr::linear(LinearForm::var(Variable::Alpha)).unwrap());

    let mut phi = s_zero();
    let mut psi = s_zero();
    let mut g = s_zero();
    for k in 1..=MIRROR_ORDER {
        phi[k] = RatFun::constant(random_rational(&mut rng));
        psi[k] = random_u_linear(&mut rng);
        g[k] = RatFun::constant(random_rational(&mut rng)).add(&RatFun::var(Variable::U(2)).mul(&RatFun::constant(random_rational(&mut rng))));
    }
    // a*_k at each point, with α-degree exactly −2.
    let mut a_star: Vec<Series> = Vec::new();
    for _ in &points {
        let mut s = s_zero();
        s[0] = RatFun::one();
        for item in s.iter_mut().skip(1) {
            let mut den = FactoredExpr::one();
            for _ in 0..2 {
                let mut w = LinearForm::var(Variable::Alpha);
                w.add_term(Variable::U(1), &random_rational(&mut rng));
                w.add_term(Variable::U(2), &random_rational(&mut rng));
                w.add_constant(&random_rational(&mut rng));
                den.push_factor(w, 1).unwrap();
            }
            *item = RatFun::constant(random_nonzero(&mut rng)).div_factored(&den);
        }
        a_star.push(s);
    }

    let e_phi = s_exp(&phi);
    let mut coeffs_b = std::collections::BTreeMap::new();
    let mut coeffs_a = std::collections::BTreeMap::new();
    let mut b_at: Vec<Series> = Vec::new();
    for (k, p) in points.iter().enumerate() {
        let schubert = RatFun::from_linear(&u(p.image(1)));
        let mut exponent = s_zero();
        for i in 1..=MIRROR_ORDER {
            exponent[i] = psi[i].sub(&schubert.mul(&g[i])).mul(&alpha_inv);
        }
        let mut shifted = s_zero();
        for (d, a_d) in a_star[k].iter().enumerate() {
            let mut mono = s_zero();
            mono[d] = a_d.clone();
            shifted = (0..=MIRROR_ORDER)
                .map(|i| shifted[i].add(&s_mul(&mono, &s_exp(&s_scale(&g, &RatFun::from_int(d as i64))))[i]))
                .collect();
        }
        b_at.push(s_mul(&s_mul(&e_phi, &s_exp(&exponent)), &shifted));
    }
    for d in 0..=MIRROR_ORDER {
        let omega_at = |p: &FixedPoint| restrict_expr(&omega, p);
        let b_class = GkmClass::from_fn(2, |p| {
            let k = hypergeom::flag::fixed_point_index(p);
            Ok(b_at[k][d].mul_factored(&omega_at(p)?))
        })
        .unwrap();
        let a_class = GkmClass::from_fn(2, |p| {
            let k = hypergeom::flag::fixed_point_index(p);
            Ok(a_star[k][d].mul_factored(&omega_at(p)?))
        })
        .unwrap();
        coeffs_b.insert(md(&[d as i64]), b_class);
        coeffs_a.insert(md(&[d as i64]), a_class);
    }
    let cutoff = md(&[MIRROR_ORDER as i64]);
    let b = ClassSeries { n: 2, cutoff: cutoff.clone(), coeffs: coeffs_b };
    let (data, a) = mirror_transform(&b, &omega, &cutoff).map_err(|e| e.to_string())?;
    for k in 1..=MIRROR_ORDER {
        let d = md(&[k as i64]);
        if data.f_linear.coeff(&d) != phi[k] || data.f_constant.coeff(&d) != psi[k] || data.g[0].coeff(&d) != g[k] {
            return Err(format!(
                "seed {seed}: degree {k} recovered ({}, {}, {}) expected ({}, {}, {})",
                data.f_linear.coeff(&d),
                data.f_constant.coeff(&d),
                data.g[0].coeff(&d),
                phi[k],
                psi[k],
                g[k]
            ));
        }
    }
    if a.coeffs != coeffs_a {
        return Err(format!("seed {seed}: recovered A differs from A*"));
    }
    for (d, class) in &a.coeffs {
        if d.is_zero() {
            continue;
        }
        for r in class.restrictions() {
            if r.alpha_degree().is_some_and(|deg| deg > -2) {
                return Err(format!("seed {seed}: deg_α A_[{d}] = {:?}", r.alpha_degree()));
            }
        }
    }
    let (again, a2) = mirror_transform(&a, &omega, &cutoff).map_err(|e| e.to_string())?;
    if !again.is_trivial() || a2 != a {
        return Err(format!("seed {seed}: re-application is not trivial"));
    }
    Ok(())
}

fn mirror_round_trip() -> Verdict {
    for seed in 0..MIRROR_TRIALS {
        if let Err(e) = mirror_trial(seed) {
            return verdict(false, e);
        }
    }
    verdict(
        true,
        format!("{MIRROR_TRIALS} random (A*, f*, g*) at n=2 to order {MIRROR_ORDER} recovered; deg_α A_d ≤ -2; idempotent"),
    )
}

// 9. Parser round trip.
fn random_expression(rng: &mut ChaCha8Rng) -> FactoredExpr {
    let mut e = FactoredExpr::scalar_expr(random_nonzero(rng)).unwrap();
    for _ in 0..rng.gen_range(0..6) {
        let mut f = LinearForm::constant(random_rational(rng));
        for _ in 0..rng.gen_range(1..4) {
            let v = match rng.gen_range(0..8) {
                0 => Variable::X,
                1 => Variable::Alpha,
                2 => Variable::H(rng.gen_range(1..=5)),
                3 => Variable::Kappa(rng.gen_range(1..=5)),
                4 => Variable::Y(rng.gen_range(1..=6)),
                5 => Variable::Zeta(rng.gen_range(1..=5)),
                6 => Variable::T(rng.gen_range(1..=5)),
                _ => Variable::U(rng.gen_range(1..=6)),
            };
            f.add_term(v, &random_nonzero(rng));
        }
        if f.is_constant() {
            continue;
        }
        let exp = loop {
            let k = rng.gen_range(-4..=4);
            if k != 0 {
                break k;
            }
        };
        e.push_factor(f, exp).unwrap();
    }
    e
}

fn parser_round_trip() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for i in 0..PARSER_CORPUS_SIZE {
        let e = random_expression(&mut rng);
        let text = render_expr(&e);
        match parse_expr(&text) {
            Ok(back) if back == e => {}
            other => return verdict(false, format!("corpus item {i}: {text:?} -> {other:?}")),
        }
    }
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures");
    let mut fixture_exprs = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().and_then(|s| s.to_str()) != Some("json") {
            continue;
        }
        let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        for item in json["entries"].as_array().unwrap() {
            for text in item["restrictions"].as_object().unwrap().values() {
                let text = text.as_str().unwrap();
                let e = match parse_expr(text) {
                    Ok(e) => e,
                    Err(err) => return verdict(false, format!("{}: {text:?}: {err}", path.display())),
                };
                if parse_expr(&render_expr(&e)).as_ref() != Ok(&e) {
                    return verdict(false, format!("{}: {text:?} does not round-trip", path.display()));
                }
                fixture_exprs += 1;
            }
        }
    }
    verdict(
        true,
        format!("{PARSER_CORPUS_SIZE} generated and {fixture_exprs} fixture expressions round-trip"),
    )
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("Euler-data identity", euler_data),
        ("Chern-class consistency", chern_oracle),
        ("Pairing tables", pairing_tables),
        ("Linking", linking),
        ("Degree audit", degree_bound),
        ("Localization integration", integration),
        ("Euler-series condition", euler_series),
        ("Mirror transform round trip", mirror_round_trip),
        ("Parser round trip", parser_round_trip),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let v = check();
        if !v.ok {
            failed += 1;
        }
        println!("criterion {}: {} {name}: {}", i + 1, if v.ok { "PASS" } else { "FAIL" }, v.detail);
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
