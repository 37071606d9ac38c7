//! Generating series over the degree lattice: ingestion of `𝕀_d`, assembly
//! of `B_d = τ*j_0*Q_d ∩ 𝕀_d`, the Euler-series integrality check and the
//! mirror transform.

mod mirror;
mod qseries;

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::euler::{build_q, tau_j0, EulerError, Status};
use crate::flag::{
    c1_pairing, degree_interval, fixed_point_index, fixed_points, gkm_check, restrict_expr, FixedPoint,
    FlagError, GkmClass, MultiDegree,
};
use crate::symbolic::{
    parse_expr, FactoredExpr, LinearForm, RatFun, Rational, SymbolicError, Variable,
};

pub use mirror::{mirror_transform, MirrorTransformData};
pub use qseries::QSeries;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("malformed I-data: {0}")]
    Format(String),
    #[error("restriction of I_{d} at {point} does not parse: {source}")]
    Expression {
        d: String,
        point: String,
        source: SymbolicError,
    },
    #[error("I_{d} at {point} has alpha-degree {degree}, above the bound min(-2, -<c1,d>) = {bound}")]
    DegreeBound {
        d: String,
        point: String,
        degree: i64,
        bound: i64,
    },
    #[error("I_0 must be the constant class 1, found {value} at {point}")]
    NonUnitZero { point: String, value: String },
    #[error("I_{d} has no restriction at fixed point {point}")]
    MissingFixedPoint { d: String, point: String },
    #[error("no data for degree {0}")]
    MissingDegree(String),
    #[error("I_{d} fails the GKM edge condition on {balloons:?}")]
    Gkm { d: String, balloons: Vec<String> },
    #[error("cannot normalize at degree {d}: {reason}")]
    NonNormalizable { d: String, reason: String },
    #[error(transparent)]
    Flag(#[from] FlagError),
    #[error(transparent)]
    Euler(#[from] EulerError),
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
}

/// A degree-`d` coefficient given by its fixed-point restrictions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesCoefficient {
    pub d: MultiDegree,
    pub value: GkmClass,
    pub provenance: String,
}

/// Ingested `𝕀_d` data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IData {
    pub n: usize,
    pub entries: BTreeMap<MultiDegree, SeriesCoefficient>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct IFile {
    n: usize,
    entries: Vec<IEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct IEntry {
    d: Vec<i64>,
    restrictions: BTreeMap<String, String>,
    provenance: String,
    #[serde(default)]
    gkm: bool,
}

/// Parses and validates an I-data document.
pub fn ingest_i(text: &str) -> Result<IData, SeriesError> {
    let file: IFile = serde_json::from_str(text).map_err(|e| SeriesError::Format(e.to_string()))?;
    let n = file.n;
    let points = fixed_points(n)?;
    let mut entries = BTreeMap::new();
    for entry in file.entries {
        let d = MultiDegree::new(entry.d);
        if d.len() != n - 1 || !d.is_effective() {
            return Err(SeriesError::Format(format!("degree [{d}] is not an effective degree for n = {n}")));
        }
        if entry.provenance.trim().is_empty() {
            return Err(SeriesError::Format(format!("entry [{d}] has an empty provenance")));
        }
        let mut by_point: BTreeMap<FixedPoint, FactoredExpr> = BTreeMap::new();
        for (key, text) in &entry.restrictions {
            let p: FixedPoint = key.parse()?;
            if p.n() != n {
                return Err(SeriesError::Format(format!("fixed point {key} does not belong to S_{n}")));
            }
            let e = parse_expr(text).map_err(|source| SeriesError::Expression {
                d: d.to_string(),
                point: key.clone(),
                source,
            })?;
            by_point.insert(p, e);
        }
        let bound = (-2).min(-c1_pairing(&d));
        let mut restrictions = Vec::with_capacity(points.len());
        for p in &points {
            let e = by_point.get(p).ok_or_else(|| SeriesError::MissingFixedPoint {
                d: d.to_string(),
                point: p.to_string(),
            })?;
            if d.is_zero() {
                if !e.is_one() {
                    return Err(SeriesError::NonUnitZero {
                        point: p.to_string(),
                        value: e.to_string(),
                    });
                }
            } else if e.alpha_degree() > bound {
                return Err(SeriesError::DegreeBound {
                    d: d.to_string(),
                    point: p.to_string(),
                    degree: e.alpha_degree(),
                    bound,
                });
            }
            restrictions.push(RatFun::from_factored(e));
        }
        let value = GkmClass::new(n, restrictions)?;
        if entry.gkm {
            let report = gkm_check(&value)?;
            if !report.passed() {
                return Err(SeriesError::Gkm {
                    d: d.to_string(),
                    balloons: report.violations.iter().map(|b| b.to_string()).collect(),
                });
            }
        }
        if entries.contains_key(&d) {
            return Err(SeriesError::Format(format!("degree [{d}] listed twice")));
        }
        entries.insert(
            d.clone(),
            SeriesCoefficient {
                d,
                value,
                provenance: entry.provenance,
            },
        );
    }
    Ok(IData { n, entries })
}

/// A series `Σ_d C_d q^d` of classes on `Fl(n)` for `0 ⪯ d ⪯ cutoff`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassSeries {
    pub n: usize,
    pub cutoff: MultiDegree,
    pub coeffs: BTreeMap<MultiDegree, GkmClass>,
}

impl ClassSeries {
    pub fn get(&self, d: &MultiDegree) -> Result<&GkmClass, SeriesError> {
        self.coeffs
            .get(d)
            .ok_or_else(|| SeriesError::MissingDegree(d.to_string()))
    }

    /// Copy with `c` added to the restriction of `C_d` at one fixed point.
    pub fn perturbed(&self, d: &MultiDegree, point: &FixedPoint, c: &RatFun) -> Result<Self, SeriesError> {
        let mut out = self.clone();
        let class = out
            .coeffs
            .get_mut(d)
            .ok_or_else(|| SeriesError::MissingDegree(d.to_string()))?;
        let idx = fixed_point_index(point);
        let mut rs = class.restrictions().to_vec();
        rs[idx] = rs[idx].add(c);
        *class = GkmClass::new(self.n, rs)?;
        Ok(out)
    }

    /// Restrictions rendered per degree and fixed point.
    pub fn to_json(&self) -> serde_json::Value {
        let points = fixed_points_any(self.n);
        let mut degs = Vec::new();
        for (d, class) in &self.coeffs {
            let mut rs = serde_json::Map::new();
            for (p, r) in points.iter().zip(class.restrictions()) {
                rs.insert(p.to_string(), serde_json::Value::String(r.to_string()));
            }
            degs.push(serde_json::json!({ "d": d.entries(), "restrictions": rs }));
        }
        serde_json::json!({ "n": self.n, "cutoff": self.cutoff.entries(), "coefficients": degs })
    }
}

fn fixed_points_any(n: usize) -> Vec<FixedPoint> {
    crate::flag::fixed_points_bounded(n, usize::MAX).expect("n validated on construction")
}

/// `τ*j_0*Q_d` restricted at every fixed point.
pub fn restricted_q(n: usize, d: &MultiDegree) -> Result<GkmClass, SeriesError> {
    let q = tau_j0(&build_q(n, d)?.q, n)?;
    Ok(GkmClass::from_fn(n, |p| Ok(RatFun::from_factored(&restrict_expr(&q, p)?)))?)
}

/// `B_d|_ω = (τ*j_0*Q_d)|_ω · 𝕀_d|_ω` for every `d ⪯ cutoff`.
pub fn assemble_b(idata: &IData, cutoff: &MultiDegree) -> Result<ClassSeries, SeriesError> {
    let n = idata.n;
    if cutoff.len() != n - 1 || !cutoff.is_effective() {
        return Err(SeriesError::Format(format!("cutoff [{cutoff}] is not an effective degree for n = {n}")));
    }
    let mut coeffs = BTreeMap::new();
    for d in degree_interval(cutoff) {
        let i_d = idata
            .entries
            .get(&d)
            .ok_or_else(|| SeriesError::MissingDegree(d.to_string()))?;
        let q = restricted_q(n, &d)?;
        coeffs.insert(d, q.mul(&i_d.value));
    }
    Ok(ClassSeries {
        n,
        cutoff: cutoff.clone(),
        coeffs,
    })
}

/// `𝔖_a|_ω = u_{ω(1)} + … + u_{ω(a)}`.
pub fn schubert_restriction(p: &FixedPoint, a: usize) -> LinearForm {
    let mut out = LinearForm::zero();
    for c in 1..=a {
        out = out + p.u_of(c);
    }
    out
}

/// All exponent vectors of length `len` and total order at most `order`, by
/// increasing total order and then lexicographically.
pub fn zeta_monomials(len: usize, order: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for total in 0..=order {
        let mut cur = vec![0u32; len];
        fill_monomials(&mut cur, 0, total, &mut out);
    }
    out
}

fn fill_monomials(cur: &mut Vec<u32>, pos: usize, left: u32, out: &mut Vec<Vec<u32>>) {
    if pos + 1 == cur.len() {
        cur[pos] = left;
        out.push(cur.clone());
        return;
    }
    for k in (0..=left).rev() {
        cur[pos] = k;
        fill_monomials(cur, pos + 1, left - k, out);
    }
    cur[pos] = 0;
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerSeriesTerm {
    pub monomial: Vec<u32>,
    pub status: Status,
    /// Denominator factors left after exact summation; only the formal
    /// variable `x` may appear for a pass.
    pub residual_denominator: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerSeriesReport {
    pub check: &'static str,
    pub n: usize,
    pub d: Vec<i64>,
    pub zeta_order: u32,
    pub terms: Vec<EulerSeriesTerm>,
    pub elapsed_ms: u64,
}

impl EulerSeriesReport {
    pub fn passed(&self) -> bool {
        self.terms.iter().all(|t| t.status.passed())
    }
}

/// The pointwise integrand `Ω^{−1}·bar(B_r)·B_{d−r}/e_T` for each `r ⪯ d`,
/// ready to be paired with `ζ`-monomials.
pub struct EulerSeriesIntegrand {
    n: usize,
    d: MultiDegree,
    points: Vec<FixedPoint>,
    /// `(r, per-point base integrand)`.
    parts: Vec<(MultiDegree, Vec<RatFun>)>,
}

impl EulerSeriesIntegrand {
    pub fn new(b: &ClassSeries, omega: &FactoredExpr, d: &MultiDegree) -> Result<Self, SeriesError> {
        let n = b.n;
        let points = fixed_points_any(n);
        let mut parts = Vec::new();
        for r in degree_interval(d) {
            let br = b.get(&r)?;
            let bdr = b.get(&d.sub(&r))?;
            let mut per_point = Vec::with_capacity(points.len());
            for (k, p) in points.iter().enumerate() {
                let den = &restrict_expr(omega, p)? * &p.tangent_euler_class();
                per_point.push(br.at(k).bar().mul(bdr.at(k)).div_factored(&den));
            }
            parts.push((r, per_point));
        }
        Ok(Self {
            n,
            d: d.clone(),
            points,
            parts,
        })
    }

    /// `Σ_r ∫ Ω^{−1}·bar(B_r)·B_{d−r}·∏_a (𝔖_a + r_aα)^{m_a}/m_a!`.
    pub fn integral(&self, m: &[u32]) -> RatFun {
        let mut total = RatFun::zero();
        let mut fact = Rational::from_integer(1.into());
        for &k in m {
            for j in 1..=k {
                fact *= Rational::from_integer(j.into());
            }
        }
        for (r, per_point) in &self.parts {
            for (p, base) in self.points.iter().zip(per_point) {
                let mut term = base.clone();
                for (a, &k) in m.iter().enumerate() {
                    if k == 0 {
                        continue;
                    }
                    let h = schubert_restriction(p, a + 1)
                        + LinearForm::term(Variable::Alpha, Rational::from_integer(r.get(a + 1).into()));
                    term = term.mul(&RatFun::from_linear(&h).pow(k));
                }
                total = total.add(&term);
            }
        }
        total.scale(&fact.recip())
    }

    pub fn term(&self, m: &[u32]) -> EulerSeriesTerm {
        let value = self.integral(m);
        let residual: Vec<(LinearForm, i32)> = value.pole_factors();
        let ok = residual
            .iter()
            .all(|(f, _)| f.variables().all(|v| v == Variable::X));
        EulerSeriesTerm {
            monomial: m.to_vec(),
            status: Status::from_bool(ok),
            residual_denominator: residual
                .iter()
                .map(|(f, e)| if *e == 1 { format!("({f})") } else { format!("({f})^{e}") })
                .collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> &MultiDegree {
        &self.d
    }
}

/// Checks that every `ζ`-coefficient up to `zeta_order` of the Euler-series
/// pairing at degree `d` is polynomial in `α` and the torus weights.
pub fn euler_series_check(
    b: &ClassSeries,
    omega: &FactoredExpr,
    d: &MultiDegree,
    zeta_order: u32,
) -> Result<EulerSeriesReport, SeriesError> {
    let start = Instant::now();
    let integrand = EulerSeriesIntegrand::new(b, omega, d)?;
    let terms = zeta_monomials(b.n - 1, zeta_order)
        .iter()
        .map(|m| integrand.term(m))
        .collect();
    Ok(EulerSeriesReport {
        check: "euler-series",
        n: b.n,
        d: d.entries().to_vec(),
        zeta_order,
        terms,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// The I-data of `Fl(n)` restricted to its fixed points, all points at
/// once; used by callers that hold classes as flat tuples.
pub fn class_from_exprs(n: usize, exprs: &[FactoredExpr]) -> Result<GkmClass, SeriesError> {
    let points = fixed_points(n)?;
    if exprs.len() != points.len() {
        return Err(FlagError::WrongLength {
            n,
            expected: points.len(),
            found: exprs.len(),
        }
        .into());
    }
    Ok(GkmClass::new(n, exprs.iter().map(RatFun::from_factored).collect())?)
}
