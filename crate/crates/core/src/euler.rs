//! The Chern data `Γ`, `Ω` and the Euler data `Q_d` for the tangent bundle of
//! `Fl(n)`, together with the restriction maps between the linear sigma model
//! and the flag manifold.

use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::flag::{
    c1_pairing, d_ab, degree_interval, fixed_points, restrict_expr, FixedPoint, FlagError, MultiDegree,
};
use crate::symbolic::{FactoredExpr, LinearForm, Rational, Substitution, SymbolicError, Variable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EulerError {
    #[error(transparent)]
    Flag(#[from] FlagError),
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
    #[error("degree {0} is not effective")]
    NotEffective(String),
    #[error("degree {d} has {len} entries, expected {expected}")]
    Length { d: String, len: usize, expected: usize },
    #[error("invariant violated: {0}")]
    Invariant(String),
}

fn kappa(a: usize) -> LinearForm {
    if a == 0 {
        LinearForm::zero()
    } else {
        LinearForm::var(Variable::Kappa(a as u16))
    }
}

fn hyper(a: usize) -> LinearForm {
    if a == 0 {
        LinearForm::zero()
    } else {
        LinearForm::var(Variable::H(a as u16))
    }
}

fn x() -> LinearForm {
    LinearForm::var(Variable::X)
}

fn alpha_times(k: i64) -> LinearForm {
    LinearForm::term(Variable::Alpha, Rational::from_integer(k.into()))
}

fn u(i: usize) -> LinearForm {
    LinearForm::var(Variable::U(i as u16))
}

/// `c_a − c_{a−1}` for a family of classes with `c_0 = 0`.
fn step(c: fn(usize) -> LinearForm, a: usize) -> LinearForm {
    c(a) - c(a - 1)
}

/// `c_ab = (c_a − c_{a−1}) − (c_b − c_{b−1})`.
fn pair_form(c: fn(usize) -> LinearForm, a: usize, b: usize) -> LinearForm {
    step(c, a) - step(c, b)
}

/// The block `f_D(z)`: `∏_{k=0}^{D}(z − kα)` for `D ≥ 0`, and
/// `1/∏_{k=1}^{−D−1}(z + kα)` for `D < 0`.
pub fn block(z: &LinearForm, big_d: i64) -> FactoredExpr {
    let mut out = FactoredExpr::one();
    if big_d >= 0 {
        for k in 0..=big_d {
            out.push_factor(z.clone() - alpha_times(k), 1).expect("α-dependent or x-dependent form");
        }
    } else {
        for k in 1..=(-big_d - 1) {
            out.push_factor(z.clone() + alpha_times(k), -1).expect("α-dependent form");
        }
    }
    out
}

/// `Γ` (in `H`) and `Ω = τ*Γ` (in `y`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChernData {
    pub n: usize,
    pub gamma: FactoredExpr,
    pub omega: FactoredExpr,
}

/// `Γ` with a chosen family of hyperplane classes; `Q_0` is this with `κ`.
fn gamma_in(n: usize, c: fn(usize) -> LinearForm) -> FactoredExpr {
    let mut g = FactoredExpr::one();
    for i in 1..=n {
        for a in 1..n {
            g.push_factor(x() + step(c, a) - u(i), 1).expect("x-dependent");
        }
    }
    for i in 1..n {
        for a in 1..=i {
            for b in 1..=i {
                g.push_factor(x() + pair_form(c, a, b), -1).expect("x-dependent");
            }
        }
    }
    for i in 1..n.saturating_sub(1) {
        for a in 1..=i {
            for b in 1..=(i + 1) {
                g.push_factor(x() + pair_form(c, a, b), 1).expect("x-dependent");
            }
        }
    }
    g
}

/// Restriction of `Ω` at a fixed point as predicted by the tangent weights:
/// `∏_{i<j}(x + u_{ω(i)} − u_{ω(j)})`.
pub fn tangent_chern_at(p: &FixedPoint) -> FactoredExpr {
    let mut e = FactoredExpr::one();
    for w in p.tangent_weights() {
        e.push_factor(x() + w, 1).expect("x-dependent");
    }
    e
}

/// Builds `Γ` and `Ω` and checks `Ω = τ*Γ` and the fixed-point restrictions
/// of `Ω`.
pub fn build_chern(n: usize) -> Result<ChernData, EulerError> {
    let points = fixed_points(n)?;
    let gamma = gamma_in(n, hyper);
    let omega = tau_pullback(&gamma)?;
    let mut direct = FactoredExpr::one();
    {
        let y = |a: usize| LinearForm::var(Variable::Y(a as u16));
        for i in 1..=n {
            for a in 1..n {
                direct.push_factor(x() + y(a) - u(i), 1)?;
            }
        }
        for i in 1..n {
            for a in 1..=i {
                for b in 1..=i {
                    direct.push_factor(x() + y(a) - y(b), -1)?;
                }
            }
        }
        for i in 1..n.saturating_sub(1) {
            for a in 1..=i {
                for b in 1..=(i + 1) {
                    direct.push_factor(x() + y(a) - y(b), 1)?;
                }
            }
        }
    }
    if direct != omega {
        return Err(EulerError::Invariant(format!("τ*Γ = {omega} differs from Ω = {direct}")));
    }
    for p in &points {
        let at = restrict_expr(&omega, p)?;
        if at != tangent_chern_at(p) {
            return Err(EulerError::Invariant(format!("Ω restricted to {p} is {at}")));
        }
    }
    Ok(ChernData { n, gamma, omega })
}

/// The Euler datum `Q_d = Q_d¹·Q_d²·Q_d³` in `(x, κ, u, α)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerDatum {
    pub n: usize,
    pub d: MultiDegree,
    pub q1: FactoredExpr,
    pub q2: FactoredExpr,
    pub q3: FactoredExpr,
    pub q: FactoredExpr,
}

fn check_degree(n: usize, d: &MultiDegree) -> Result<(), EulerError> {
    if d.len() != n - 1 {
        return Err(EulerError::Length {
            d: d.to_string(),
            len: d.len(),
            expected: n - 1,
        });
    }
    if !d.is_effective() {
        return Err(EulerError::NotEffective(d.to_string()));
    }
    Ok(())
}

pub fn build_q(n: usize, d: &MultiDegree) -> Result<EulerDatum, EulerError> {
    if n < 2 {
        return Err(FlagError::NOutOfRange { n, max: usize::MAX }.into());
    }
    check_degree(n, d)?;
    let mut q1 = FactoredExpr::one();
    for i in 1..=n {
        for a in 1..n {
            let z = x() + step(kappa, a) - u(i);
            q1 = &q1 * &block(&z, d.get(a) - d.get(a - 1));
        }
    }
    let mut q2 = FactoredExpr::one();
    for i in 1..n {
        for a in 1..=i {
            for b in 1..=i {
                q2 = &q2 / &block(&(x() + pair_form(kappa, a, b)), d_ab(d, a, b));
            }
        }
    }
    let mut q3 = FactoredExpr::one();
    for i in 1..n.saturating_sub(1) {
        for a in 1..=i {
            for b in 1..=(i + 1) {
                q3 = &q3 * &block(&(x() + pair_form(kappa, a, b)), d_ab(d, a, b));
            }
        }
    }
    let q = &(&q1 * &q2) * &q3;
    Ok(EulerDatum {
        n,
        d: d.clone(),
        q1,
        q2,
        q3,
        q,
    })
}

/// `Γ` with `κ` in place of `H`.
pub fn gamma_kappa(n: usize) -> FactoredExpr {
    gamma_in(n, kappa)
}

/// `j_r*`: `κ_a ↦ H_a + r_a·α`.
pub fn restrict_jr(e: &FactoredExpr, r: &MultiDegree) -> Result<FactoredExpr, EulerError> {
    let mut sub = Substitution::new();
    for a in 1..=r.len() {
        sub.insert(Variable::Kappa(a as u16), hyper(a) + alpha_times(r.get(a)));
    }
    Ok(e.substitute(&sub)?)
}

/// `τ*`: `H_a ↦ y_1 + … + y_a`.
pub fn tau_pullback(e: &FactoredExpr) -> Result<FactoredExpr, EulerError> {
    let mut sub = Substitution::new();
    for v in e.variables() {
        if let Variable::H(a) = v {
            let mut s = LinearForm::zero();
            for c in 1..=a {
                s = s + LinearForm::var(Variable::Y(c));
            }
            sub.insert(v, s);
        }
    }
    Ok(e.substitute(&sub)?)
}

/// `τ*j_0*`: `κ_a ↦ y_1 + … + y_a`.
pub fn tau_j0(e: &FactoredExpr, n: usize) -> Result<FactoredExpr, EulerError> {
    tau_pullback(&restrict_jr(e, &MultiDegree::zero(n - 1))?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn passed(&self) -> bool {
        *self == Status::Pass
    }
}

/// One `r` of the identity `Γ·j_r*Q_d = bar(j_0*Q_r)·j_0*Q_{d−r}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerCase {
    pub r: Vec<i64>,
    pub status: Status,
    /// Factors of `left/right` on failure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub difference: Option<Vec<(String, i32)>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerDataReport {
    pub check: &'static str,
    pub n: usize,
    pub d: Vec<i64>,
    pub cases: Vec<EulerCase>,
    pub elapsed_ms: u64,
}

impl EulerDataReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.status.passed())
    }
}

/// Checks the identity at a single `r ⪯ d`.
pub fn euler_case(chern: &ChernData, d: &MultiDegree, r: &MultiDegree) -> Result<EulerCase, EulerError> {
    let n = chern.n;
    let zero = MultiDegree::zero(n - 1);
    let qd = build_q(n, d)?;
    let qr = build_q(n, r)?;
    let qdr = build_q(n, &d.sub(r))?;
    let left = &chern.gamma * &restrict_jr(&qd.q, r)?;
    let right = &restrict_jr(&qr.q, &zero)?.bar() * &restrict_jr(&qdr.q, &zero)?;
    let ok = left == right;
    Ok(EulerCase {
        r: r.entries().to_vec(),
        status: Status::from_bool(ok),
        difference: (!ok).then(|| {
            left.factor_difference(&right)
                .into_iter()
                .map(|(f, e)| (f.to_string(), e))
                .collect()
        }),
    })
}

/// Checks the Euler-data identity for every `r ⪯ d`.
pub fn verify_euler_data(n: usize, d: &MultiDegree) -> Result<EulerDataReport, EulerError> {
    let start = Instant::now();
    check_degree(n, d)?;
    let chern = build_chern(n)?;
    let cases = degree_interval(d)
        .iter()
        .map(|r| euler_case(&chern, d, r))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(EulerDataReport {
        check: "euler-data",
        n,
        d: d.entries().to_vec(),
        cases,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// α-degree bookkeeping for `τ*j_0*Q_d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeAudit {
    pub check: &'static str,
    pub n: usize,
    pub d: Vec<i64>,
    /// Exact `deg_α τ*j_0*Q_d`.
    pub alpha_degree: i64,
    /// `deg_α` of the three parts, which add up to `alpha_degree`.
    pub part_degrees: [i64; 3],
    /// `⟨c_1, d⟩ = 2·Σ d_i`, which is also the closed form of the bound
    /// `n·d_{n−1} − Σ_i Σ_{a≤i}(d_ia + 1)` after its sums are evaluated.
    pub bound: i64,
    /// The same bound with the double sum evaluated term by term:
    /// `2·Σ d_i − n(n−1)/2`.
    pub termwise_bound: i64,
    /// `n·d_{n−1}`, claimed to bound the first part.
    pub first_part_bound: i64,
    /// `⟨c_1, d⟩ − deg_α`.
    pub slack: i64,
    pub status: Status,
    pub notes: Vec<String>,
}

pub fn degree_audit(n: usize, d: &MultiDegree) -> Result<DegreeAudit, EulerError> {
    let q = build_q(n, d)?;
    let parts = [
        tau_j0(&q.q1, n)?.alpha_degree(),
        tau_j0(&q.q2, n)?.alpha_degree(),
        tau_j0(&q.q3, n)?.alpha_degree(),
    ];
    let alpha_degree = tau_j0(&q.q, n)?.alpha_degree();
    let c1 = c1_pairing(d);
    let n_i = n as i64;
    let bound = c1;
    let termwise_bound = c1 - n_i * (n_i - 1) / 2;
    let first_part_bound = n_i * d.get(n - 1);
    let slack = c1 - alpha_degree;
    let mut notes = vec![
        "denominators of the first part carry -u_i as in the definition of Q_d".to_string(),
    ];
    if alpha_degree > termwise_bound {
        notes.push(format!(
            "exceeds the termwise-evaluated bound {termwise_bound}"
        ));
    }
    if parts[0] > first_part_bound {
        notes.push(format!(
            "first part has degree {} above n*d_(n-1) = {first_part_bound}",
            parts[0]
        ));
    }
    Ok(DegreeAudit {
        check: "degree-audit",
        n,
        d: d.entries().to_vec(),
        alpha_degree,
        part_degrees: parts,
        bound,
        termwise_bound,
        first_part_bound,
        slack,
        status: Status::from_bool(alpha_degree <= bound && slack >= 0),
        notes,
    })
}

/// `Q_d²·Q_d³` as written after cancellation:
/// `∏_{i=1}^{n−1}∏_{a=1}^{i} f_{d_ia}(x + κ_ia)^{−1}`.
pub fn q23_simplified(n: usize, d: &MultiDegree) -> FactoredExpr {
    let mut out = FactoredExpr::one();
    for i in 1..n {
        for a in 1..=i {
            out = &out / &block(&(x() + pair_form(kappa, i, a)), d_ab(d, i, a));
        }
    }
    out
}

/// The same product with the numerator range `k = 1..d_ia − 1` taken
/// literally for `d_ia < 0` (an empty range).
pub fn q23_simplified_literal(n: usize, d: &MultiDegree) -> FactoredExpr {
    let mut out = FactoredExpr::one();
    for i in 1..n {
        for a in 1..=i {
            let dia = d_ab(d, i, a);
            if dia >= 0 {
                out = &out / &block(&(x() + pair_form(kappa, i, a)), dia);
            }
        }
    }
    out
}

/// `e_G(Y_r/W_d) = ∏_a ∏_{i=0}^{m_a} ∏_{k=0, k≠r_a}^{d_a}(H_a − u_{a,i} − (k − r_a)α)`.
pub fn euler_class_yr_wd(
    weights: &[Vec<LinearForm>],
    d: &MultiDegree,
    r: &MultiDegree,
) -> Result<FactoredExpr, EulerError> {
    if weights.len() != d.len() || r.len() != d.len() {
        return Err(EulerError::Length {
            d: d.to_string(),
            len: weights.len(),
            expected: d.len(),
        });
    }
    if !r.precedes(d) || !r.is_effective() {
        return Err(EulerError::NotEffective(d.sub(r).to_string()));
    }
    let mut out = FactoredExpr::one();
    for (a, ws) in weights.iter().enumerate() {
        let a1 = a + 1;
        for w in ws {
            for k in 0..=d.get(a1) {
                if k == r.get(a1) {
                    continue;
                }
                out.push_factor(hyper(a1) - w.clone() - alpha_times(k - r.get(a1)), 1)?;
            }
        }
    }
    Ok(out)
}
