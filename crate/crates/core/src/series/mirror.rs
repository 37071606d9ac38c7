use std::collections::BTreeMap;

use super::{fixed_points_any, schubert_restriction, ClassSeries, QSeries, SeriesError};
use crate::flag::{degree_interval, fixed_point_index, restrict_expr, FixedPoint, GkmClass, MultiDegree};
use crate::symbolic::{expand_alpha_ratfun, FactoredExpr, LinearForm, RatFun, Variable};

/// The change of variables relating a series `B` to its normalized form `A`:
///
/// `B(q) = e^{φ} · e^{(ψ − Σ_a 𝔖_a g_a)/α} · A(q e^{g})`
///
/// so that `f = αφ + ψ` is the full exponent of the rescaling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MirrorTransformData {
    pub order: MultiDegree,
    /// `φ`, the part of `f` proportional to `α`.
    pub f_linear: QSeries,
    /// `ψ`, the `α`-free part of `f`.
    pub f_constant: QSeries,
    /// `g_1, …, g_{n−1}`.
    pub g: Vec<QSeries>,
}

impl MirrorTransformData {
    pub fn is_trivial(&self) -> bool {
        self.f_linear.is_zero() && self.f_constant.is_zero() && self.g.iter().all(QSeries::is_zero)
    }

    pub fn to_json(&self) -> serde_json::Value {
        fn series(s: &QSeries) -> serde_json::Value {
            serde_json::Value::Array(
                s.terms()
                    .map(|(d, c)| serde_json::json!({ "d": d.entries(), "coeff": c.to_string() }))
                    .collect(),
            )
        }
        serde_json::json!({
            "order": self.order.entries(),
            "f_linear": series(&self.f_linear),
            "f_constant": series(&self.f_constant),
            "g": self.g.iter().map(series).collect::<Vec<_>>(),
        })
    }
}

fn non_normalizable(d: &MultiDegree, reason: String) -> SeriesError {
    SeriesError::NonNormalizable {
        d: d.to_string(),
        reason,
    }
}

fn inverse_alpha() -> RatFun {
    RatFun::one().div_factored(&FactoredExpr::linear(LinearForm::var(Variable::Alpha)).expect("α is nonzero"))
}

/// `e^{Σ_a d_a g_a}`.
fn exp_pairing(d: &MultiDegree, g: &[QSeries], cutoff: &MultiDegree) -> QSeries {
    let mut sum = QSeries::zero(cutoff);
    for (a, ga) in g.iter().enumerate() {
        let k = d.get(a + 1);
        if k != 0 {
            sum = sum.add(&ga.scale(&RatFun::from_int(k)));
        }
    }
    sum.exp()
}

/// Extracts `(φ, ψ, g)` and the normalized series `A` from `B` on the box
/// `0 ⪯ d ⪯ cutoff`.
pub fn mirror_transform(
    b: &ClassSeries,
    omega: &FactoredExpr,
    cutoff: &MultiDegree,
) -> Result<(MirrorTransformData, ClassSeries), SeriesError> {
    let n = b.n;
    if cutoff.len() != n - 1 || !cutoff.is_effective() {
        return Err(SeriesError::Format(format!("cutoff [{cutoff}] is not an effective degree for n = {n}")));
    }
    let points = fixed_points_any(n);
    let omega_at: Vec<FactoredExpr> = points
        .iter()
        .map(|p| restrict_expr(omega, p))
        .collect::<Result<_, _>>()?;
    let degrees = degree_interval(cutoff);
    let zero = MultiDegree::zero(n - 1);

    let b0 = b.get(&zero)?;
    for (k, p) in points.iter().enumerate() {
        if *b0.at(k) != RatFun::from_factored(&omega_at[k]) {
            return Err(non_normalizable(&zero, format!("B_0 differs from Ω at {p}: {}", b0.at(k))));
        }
    }

    // β_ω = B|_ω / Ω|_ω and its α^0, α^{−1} coefficients.
    let mut beta: Vec<QSeries> = vec![QSeries::zero(cutoff); points.len()];
    let mut level0: Vec<BTreeMap<MultiDegree, RatFun>> = vec![BTreeMap::new(); points.len()];
    let mut level1: Vec<QSeries> = vec![QSeries::zero(cutoff); points.len()];
    for d in &degrees {
        let class = b.get(d)?;
        for (k, p) in points.iter().enumerate() {
            let ratio = class.at(k).div_factored(&omega_at[k]);
            beta[k] = beta[k].add(&QSeries::monomial(d.clone(), ratio.clone(), cutoff));
            if d.is_zero() {
                continue;
            }
            let expansion = expand_alpha_ratfun(&ratio, -1);
            if let Some((j, c)) = expansion.terms().find(|(j, c)| *j > 0 && !c.is_zero()) {
                return Err(non_normalizable(d, format!("coefficient of α^{j} at {p} is {c}")));
            }
            let c0 = expansion.coefficient(0).unwrap_or_else(RatFun::zero);
            let c1 = expansion.coefficient(-1).unwrap_or_else(RatFun::zero);
            level0[k].insert(d.clone(), c0);
            level1[k] = level1[k].add(&QSeries::monomial(d.clone(), c1, cutoff));
        }
    }

    // The α^0 level must be a scalar: it is absorbed by φ.
    for d in degrees.iter().filter(|d| !d.is_zero()) {
        let first = &level0[0][d];
        for (k, p) in points.iter().enumerate().skip(1) {
            if level0[k][d] != *first {
                return Err(non_normalizable(
                    d,
                    format!("α^0 coefficient is not scalar: {first} at {} but {} at {p}", points[0], level0[k][d]),
                ));
            }
        }
    }
    let scalar0 = QSeries::from_terms(level0[0].clone(), cutoff);
    let phi = scalar0.log1p();
    let em_phi = phi.neg().exp();

    // The α^{−1} level after removing e^φ must be ψ + Σ_a e_a y_a.
    let level1: Vec<QSeries> = level1.iter().map(|s| em_phi.mul(s)).collect();
    let id = FixedPoint::identity(n);
    let id_idx = fixed_point_index(&id);
    let swapped: Vec<usize> = (1..n)
        .map(|a| fixed_point_index(&id.compose_transposition(a, n)))
        .collect();
    let mut psi = QSeries::zero(cutoff);
    let mut g = vec![QSeries::zero(cutoff); n - 1];
    for d in degrees.iter().filter(|d| !d.is_zero()) {
        let at_id = level1[id_idx].coeff(d);
        let mut e = Vec::with_capacity(n);
        for a in 1..n {
            let w = LinearForm::var(Variable::U(n as u16)) - LinearForm::var(Variable::U(a as u16));
            let diff = level1[swapped[a - 1]].coeff(d).sub(&at_id);
            e.push(diff.div_factored(&FactoredExpr::linear(w)?));
        }
        e.push(RatFun::zero());
        let mut c = at_id.clone();
        for (a, ea) in e.iter().enumerate().take(n - 1) {
            c = c.sub(&ea.mul(&RatFun::var(Variable::U(a as u16 + 1))));
        }
        for (k, p) in points.iter().enumerate() {
            let mut expected = c.clone();
            for (a, ea) in e.iter().enumerate().take(n - 1) {
                expected = expected.add(&ea.mul(&RatFun::from_linear(&p.u_of(a + 1))));
            }
            let actual = level1[k].coeff(d);
            if expected != actual {
                return Err(non_normalizable(
                    d,
                    format!("α^-1 coefficient is not scalar + 𝔖-linear: {actual} at {p}"),
                ));
            }
        }
        psi = psi.add(&QSeries::monomial(d.clone(), c, cutoff));
        for a in 0..n - 1 {
            let s = e[a].sub(&e[a + 1]);
            g[a] = g[a].add(&QSeries::monomial(d.clone(), s.neg(), cutoff));
        }
    }

    // C_ω = e^{−φ} e^{−X_ω/α} β_ω = Σ_d a_d q^d e^{d·g}, swept lexicographically.
    let shifts: BTreeMap<MultiDegree, QSeries> = degrees
        .iter()
        .map(|d| (d.clone(), exp_pairing(d, &g, cutoff)))
        .collect();
    let inv_alpha = inverse_alpha();
    let mut per_point: Vec<Vec<RatFun>> = Vec::with_capacity(points.len());
    for (k, p) in points.iter().enumerate() {
        let mut x = psi.clone();
        for (a, ga) in g.iter().enumerate() {
            x = x.sub(&ga.scale(&RatFun::from_linear(&schubert_restriction(p, a + 1))));
        }
        let prefactor = x.scale(&inv_alpha.neg()).exp();
        let mut rest = em_phi.mul(&prefactor).mul(&beta[k]);
        let mut coeffs = Vec::with_capacity(degrees.len());
        for d in &degrees {
            let a_d = rest.coeff(d);
            if !a_d.is_zero() {
                let shifted = QSeries::monomial(d.clone(), a_d.clone(), cutoff).mul(&shifts[d]);
                rest = rest.sub(&shifted);
            }
            coeffs.push(a_d.mul_factored(&omega_at[k]));
        }
        per_point.push(coeffs);
    }

    let mut out = BTreeMap::new();
    for (idx, d) in degrees.iter().enumerate() {
        let rs: Vec<RatFun> = per_point.iter().map(|c| c[idx].clone()).collect();
        if !d.is_zero() {
            for (p, r) in points.iter().zip(&rs) {
                if let Some(deg) = r.alpha_degree() {
                    if deg > -2 {
                        return Err(non_normalizable(d, format!("normalized coefficient at {p} has α-degree {deg}")));
                    }
                }
            }
        }
        out.insert(d.clone(), GkmClass::new(n, rs)?);
    }
    let data = MirrorTransformData {
        order: cutoff.clone(),
        f_linear: phi,
        f_constant: psi,
        g,
    };
    Ok((
        data,
        ClassSeries {
            n,
            cutoff: cutoff.clone(),
            coeffs: out,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euler::build_chern;
    use crate::symbolic::parse_expr;

    fn series_from(n: usize, omega: &FactoredExpr, cutoff: &MultiDegree, f: impl Fn(&MultiDegree) -> RatFun) -> ClassSeries {
        let coeffs = degree_interval(cutoff)
            .into_iter()
            .map(|d| {
                let extra = f(&d);
                let class = GkmClass::from_fn(n, |p| Ok(extra.mul_factored(&restrict_expr(omega, p)?))).unwrap();
                (d, class)
            })
            .collect();
        ClassSeries {
            n,
            cutoff: cutoff.clone(),
            coeffs,
        }
    }

    #[test]
    fn already_normalized_is_fixed() {
        let omega = build_chern(2).unwrap().omega;
        let cutoff = MultiDegree::new(vec![2]);
        let r = RatFun::from_factored(&parse_expr("3*(a+u1)^-1*(a-u2)^-1").unwrap());
        let b = series_from(2, &omega, &cutoff, |d| if d.is_zero() { RatFun::one() } else { r.clone() });
        let (data, a) = mirror_transform(&b, &omega, &cutoff).unwrap();
        assert!(data.is_trivial());
        assert_eq!(a, b);
    }

    #[test]
    fn single_degree_scalar() {
        let omega = build_chern(2).unwrap().omega;
        let cutoff = MultiDegree::new(vec![1]);
        let tail = RatFun::from_factored(&parse_expr("(a+u1)^-2").unwrap());
        let b = series_from(2, &omega, &cutoff, |d| {
            if d.is_zero() {
                RatFun::one()
            } else {
                RatFun::from_int(5).add(&tail)
            }
        });
        let (data, a) = mirror_transform(&b, &omega, &cutoff).unwrap();
        assert_eq!(data.f_linear.coeff(&MultiDegree::new(vec![1])), RatFun::from_int(5));
        assert!(data.f_constant.is_zero());
        assert!(data.g[0].is_zero());
        let (again, _) = mirror_transform(&a, &omega, &cutoff).unwrap();
        assert!(again.is_trivial());
    }

    #[test]
    fn rejects_positive_powers() {
        let omega = build_chern(2).unwrap().omega;
        let cutoff = MultiDegree::new(vec![1]);
        let b = series_from(2, &omega, &cutoff, |d| {
            if d.is_zero() {
                RatFun::one()
            } else {
                RatFun::var(Variable::Alpha)
            }
        });
        assert!(matches!(
            mirror_transform(&b, &omega, &cutoff),
            Err(SeriesError::NonNormalizable { .. })
        ));
    }

    #[test]
    fn rescaling_by_one_point_weight_is_rejected() {
        let omega = build_chern(3).unwrap().omega;
        let cutoff = MultiDegree::new(vec![1, 0]);
        let b = series_from(3, &omega, &cutoff, |d| {
            if d.is_zero() {
                RatFun::one()
            } else {
                RatFun::var(Variable::U(1)).mul(&inverse_alpha())
            }
        });
        // A constant α^{-1} coefficient is pure ψ.
        let (data, _) = mirror_transform(&b, &omega, &cutoff).unwrap();
        assert_eq!(data.f_constant.coeff(&MultiDegree::new(vec![1, 0])), RatFun::var(Variable::U(1)));
        let mut bad = b.clone();
        let idx = fixed_point_index(&"132".parse().unwrap());
        let d = MultiDegree::new(vec![1, 0]);
        let mut rs = bad.coeffs[&d].restrictions().to_vec();
        rs[idx] = rs[idx].add(&RatFun::var(Variable::U(3)).mul(&inverse_alpha()).mul_factored(&restrict_expr(&omega, &"132".parse().unwrap()).unwrap()));
        bad.coeffs.insert(d, GkmClass::new(3, rs).unwrap());
        assert!(matches!(
            mirror_transform(&bad, &omega, &cutoff),
            Err(SeriesError::NonNormalizable { .. })
        ));
    }
}
