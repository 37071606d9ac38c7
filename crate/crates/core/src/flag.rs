//! GKM combinatorics of the complete flag manifold `Fl(n)`.
//!
//! Torus-fixed points are permutations of `{1..n}` and every pair of fixed
//! points differing by a transposition is joined by an invariant sphere (a
//! balloon). Classes are represented by their restriction tuples and
//! integrated by fixed-point summation.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::symbolic::{FactoredExpr, LinearForm, RatFun, SparsePoly, Substitution, SymbolicError, Variable};

/// Largest `n` accepted unless a caller raises the bound explicitly.
pub const DEFAULT_MAX_N: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlagError {
    #[error("n = {n} is outside the supported range 2..={max}")]
    NOutOfRange { n: usize, max: usize },
    #[error("invalid permutation `{0}`")]
    InvalidPermutation(String),
    #[error("invalid balloon `{0}`")]
    InvalidBalloon(String),
    #[error("invalid multidegree `{0}`")]
    InvalidDegree(String),
    #[error("isotropy weights at {0} are not pairwise independent")]
    NotGkm(String),
    #[error("class has {found} restrictions but Fl({n}) has {expected} fixed points")]
    WrongLength { n: usize, expected: usize, found: usize },
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
}

/// A torus-fixed point of `Fl(n)`, stored in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct FixedPoint {
    perm: Vec<u8>,
}

impl FixedPoint {
    pub fn new(perm: Vec<u8>) -> Result<Self, FlagError> {
        let n = perm.len();
        let mut seen = vec![false; n + 1];
        for &v in &perm {
            let v = v as usize;
            if v == 0 || v > n || seen[v] {
                return Err(FlagError::InvalidPermutation(format!("{perm:?}")));
            }
            seen[v] = true;
        }
        if n < 2 {
            return Err(FlagError::InvalidPermutation(format!("{perm:?}")));
        }
        Ok(Self { perm })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            perm: (1..=n as u8).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    /// `ω(a)` for `1 ≤ a ≤ n`.
    pub fn image(&self, a: usize) -> usize {
        self.perm[a - 1] as usize
    }

    pub fn perm(&self) -> &[u8] {
        &self.perm
    }

    /// `ω·(i j)`: swaps the entries in positions `i` and `j`.
    pub fn compose_transposition(&self, i: usize, j: usize) -> Self {
        let mut perm = self.perm.clone();
        perm.swap(i - 1, j - 1);
        Self { perm }
    }

    /// `u_{ω(a)}`.
    pub fn u_of(&self, a: usize) -> LinearForm {
        LinearForm::var(Variable::U(self.image(a) as u16))
    }

    /// The substitution `y_a ↦ u_{ω(a)}`.
    pub fn restriction(&self) -> Substitution {
        let mut sub = Substitution::new();
        for a in 1..=self.n() {
            sub.insert(Variable::Y(a as u16), self.u_of(a));
        }
        sub
    }

    /// Isotropy weights `u_{ω(i)} − u_{ω(j)}` for `i < j`.
    pub fn tangent_weights(&self) -> Vec<LinearForm> {
        let n = self.n();
        let mut out = Vec::with_capacity(n * (n - 1) / 2);
        for i in 1..=n {
            for j in (i + 1)..=n {
                out.push(self.u_of(i) - self.u_of(j));
            }
        }
        out
    }

    /// Equivariant Euler class of the tangent space, `∏_{i<j}(u_{ω(i)} − u_{ω(j)})`.
    pub fn tangent_euler_class(&self) -> FactoredExpr {
        let mut e = FactoredExpr::one();
        for w in self.tangent_weights() {
            e.push_factor(w, 1).expect("distinct torus weights");
        }
        e
    }

    /// Checks that the isotropy weights are pairwise linearly independent.
    pub fn check_gkm(&self) -> Result<(), FlagError> {
        let mut seen: Vec<LinearForm> = Vec::new();
        for w in self.tangent_weights() {
            if w.is_zero() {
                return Err(FlagError::NotGkm(self.to_string()));
            }
            let (_, monic) = w.normalize();
            if seen.contains(&monic) {
                return Err(FlagError::NotGkm(self.to_string()));
            }
            seen.push(monic);
        }
        Ok(())
    }
}

impl fmt::Display for FixedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.perm.len() < 10 {
            for v in &self.perm {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.perm.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", parts.join(" "))
        }
    }
}

impl FromStr for FixedPoint {
    type Err = FlagError;
    fn from_str(s: &str) -> Result<Self, FlagError> {
        let s = s.trim();
        let digits: Option<Vec<u8>> = if s.contains(' ') {
            s.split_whitespace().map(|t| t.parse().ok()).collect()
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as u8))
                .collect()
        };
        let perm = digits.ok_or_else(|| FlagError::InvalidPermutation(s.to_string()))?;
        FixedPoint::new(perm).map_err(|_| FlagError::InvalidPermutation(s.to_string()))
    }
}

impl From<FixedPoint> for String {
    fn from(p: FixedPoint) -> String {
        p.to_string()
    }
}

impl TryFrom<String> for FixedPoint {
    type Error = FlagError;
    fn try_from(s: String) -> Result<Self, FlagError> {
        s.parse()
    }
}

fn check_n(n: usize, max: usize) -> Result<(), FlagError> {
    if n < 2 || n > max {
        Err(FlagError::NOutOfRange { n, max })
    } else {
        Ok(())
    }
}

/// All `n!` fixed points in lexicographic order.
pub fn fixed_points(n: usize) -> Result<Vec<FixedPoint>, FlagError> {
    fixed_points_bounded(n, DEFAULT_MAX_N)
}

pub fn fixed_points_bounded(n: usize, max: usize) -> Result<Vec<FixedPoint>, FlagError> {
    check_n(n, max)?;
    let mut perm: Vec<u8> = (1..=n as u8).collect();
    let mut out = vec![FixedPoint { perm: perm.clone() }];
    while next_permutation(&mut perm) {
        out.push(FixedPoint { perm: perm.clone() });
    }
    Ok(out)
}

fn next_permutation(p: &mut [u8]) -> bool {
    let Some(i) = (0..p.len().saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..p.len()).rev().find(|&j| p[j] > p[i]).expect("successor exists");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// Position of a fixed point in the lexicographic enumeration.
pub fn fixed_point_index(p: &FixedPoint) -> usize {
    let n = p.n();
    let mut idx = 0;
    let mut fact = (1..n).product::<usize>();
    let mut remaining: Vec<u8> = (1..=n as u8).collect();
    for (pos, v) in p.perm.iter().enumerate() {
        let rank = remaining.iter().position(|x| x == v).expect("permutation entry");
        idx += rank * fact;
        remaining.remove(rank);
        if pos + 1 < n {
            fact /= n - pos - 1;
        }
    }
    idx
}

/// A directed balloon from `p = ω` to `q = ω·(i j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Balloon {
    p: FixedPoint,
    q: FixedPoint,
    i: usize,
    j: usize,
    weight: LinearForm,
}

impl Balloon {
    pub fn new(p: FixedPoint, i: usize, j: usize) -> Result<Self, FlagError> {
        let n = p.n();
        if !(1 <= i && i < j && j <= n) {
            return Err(FlagError::InvalidBalloon(format!("{p}x({i},{j})")));
        }
        let q = p.compose_transposition(i, j);
        let weight = p.u_of(i) - p.u_of(j);
        Ok(Self { p, q, i, j, weight })
    }

    pub fn p(&self) -> &FixedPoint {
        &self.p
    }

    pub fn q(&self) -> &FixedPoint {
        &self.q
    }

    pub fn transposition(&self) -> (usize, usize) {
        (self.i, self.j)
    }

    /// Weight of the tangent line of the balloon at `p`.
    pub fn tangent_weight(&self) -> &LinearForm {
        &self.weight
    }

    /// The same sphere traversed from `q` to `p`.
    pub fn reversed(&self) -> Balloon {
        Balloon::new(self.q.clone(), self.i, self.j).expect("valid transposition")
    }
}

impl fmt::Display for Balloon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x({},{})", self.p, self.i, self.j)
    }
}

impl FromStr for Balloon {
    type Err = FlagError;
    fn from_str(s: &str) -> Result<Self, FlagError> {
        let bad = || FlagError::InvalidBalloon(s.to_string());
        let (p, rest) = s.trim().split_once('x').ok_or_else(bad)?;
        let inner = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
        let (i, j) = inner.split_once(',').ok_or_else(bad)?;
        let i: usize = i.trim().parse().map_err(|_| bad())?;
        let j: usize = j.trim().parse().map_err(|_| bad())?;
        let p: FixedPoint = p.parse().map_err(|_| bad())?;
        Balloon::new(p, i, j).map_err(|_| bad())
    }
}

impl From<Balloon> for String {
    fn from(b: Balloon) -> String {
        b.to_string()
    }
}

impl TryFrom<String> for Balloon {
    type Error = FlagError;
    fn try_from(s: String) -> Result<Self, FlagError> {
        s.parse()
    }
}

/// All `n!·n(n−1)/2` directed balloons, grouped by source point in
/// lexicographic order and then by transposition.
pub fn balloons(n: usize) -> Result<Vec<Balloon>, FlagError> {
    let points = fixed_points(n)?;
    let mut out = Vec::with_capacity(points.len() * n * (n - 1) / 2);
    for p in points {
        p.check_gkm()?;
        for i in 1..=n {
            for j in (i + 1)..=n {
                out.push(Balloon::new(p.clone(), i, j)?);
            }
        }
    }
    Ok(out)
}

/// A multidegree `(d_1, …, d_{n−1})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiDegree(Vec<i64>);

impl MultiDegree {
    pub fn new(entries: Vec<i64>) -> Self {
        Self(entries)
    }

    pub fn zero(len: usize) -> Self {
        Self(vec![0; len])
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `d_a`, with `d_0 = 0`.
    pub fn get(&self, a: usize) -> i64 {
        if a == 0 {
            0
        } else {
            self.0[a - 1]
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|d| *d == 0)
    }

    pub fn is_effective(&self) -> bool {
        self.0.iter().all(|d| *d >= 0)
    }

    /// `self ⪯ other`: every entry of `other − self` is nonnegative.
    pub fn precedes(&self, other: &MultiDegree) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn sub(&self, other: &MultiDegree) -> MultiDegree {
        MultiDegree(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn add(&self, other: &MultiDegree) -> MultiDegree {
        MultiDegree(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: i64) -> MultiDegree {
        MultiDegree(self.0.iter().map(|a| a * k).collect())
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for MultiDegree {
    type Err = FlagError;
    fn from_str(s: &str) -> Result<Self, FlagError> {
        let entries: Result<Vec<i64>, _> = s.split(',').map(|t| t.trim().parse::<i64>()).collect();
        entries
            .map(MultiDegree)
            .map_err(|_| FlagError::InvalidDegree(s.to_string()))
    }
}

/// `⟨y_a, [pq]⟩ = δ_{a,i} − δ_{a,j}` for the balloon transposition `(i j)`.
pub fn degree_pairing(a: usize, b: &Balloon) -> i64 {
    pairing_for(a, b.i, b.j)
}

fn pairing_for(a: usize, i: usize, j: usize) -> i64 {
    (a == i) as i64 - (a == j) as i64
}

/// Values the displayed three-row case list assigns to `⟨y_a, [pq]⟩`; more
/// than one value means overlapping rows.
pub fn pairing_case_list(a: usize, i: usize, j: usize) -> Vec<i64> {
    let mut out = Vec::new();
    if i >= a {
        out.push(1);
    }
    if a != i && a != j {
        out.push(0);
    }
    if j == a {
        out.push(-1);
    }
    out.dedup();
    out
}

/// A line-bundle summand of the tangent decomposition, for degree purposes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LineWeight {
    /// `L*_{χ_a} ⊗ L_{χ_b}`, first Chern class `y_a − y_b`.
    Pair { a: usize, b: usize },
    /// `L*_{χ_a} ⊗ S_{χ_i}`, where `S_{χ_i}` is a trivial bundle with torus
    /// weight `u_i` and so has zero degree on every balloon.
    Trivial { a: usize, i: usize },
}

/// Degree of a line summand on a balloon.
pub fn line_degree(w: LineWeight, b: &Balloon) -> i64 {
    match w {
        LineWeight::Pair { a, b: c } => degree_pairing(a, b) - degree_pairing(c, b),
        LineWeight::Trivial { a, .. } => degree_pairing(a, b),
    }
}

/// `l_ab` on a balloon with transposition `(s t)`, `s < t`, read from the
/// case tables with the condition pairs `t = b, s ≠ a` (for `a < b`) and
/// `t = a, s ≠ b` (for `b < a`).
pub fn line_degree_table(a: usize, b: usize, s: usize, t: usize) -> i64 {
    if a == b {
        return 0;
    }
    if a < b {
        if s == a && t == b {
            2
        } else if t == a || s == b {
            -1
        } else if s == a || t == b {
            1
        } else {
            0
        }
    } else if s == b && t == a {
        -2
    } else if (s == b && t != a) || (t == a && s != b) {
        -1
    } else if s == a || t == b {
        1
    } else {
        0
    }
}

/// Values assigned to `l_ab` by the case tables exactly as displayed, where
/// the third row of the `a < b` table reads `s = b, t ≠ a` and the second row
/// of the `b < a` table reads `s = a, t ≠ b`.
pub fn line_degree_table_as_printed(a: usize, b: usize, s: usize, t: usize) -> Vec<i64> {
    let mut out = Vec::new();
    let none = s != a && s != b && t != a && t != b;
    if a < b {
        if none {
            out.push(0);
        }
        if t == a || s == b {
            out.push(-1);
        }
        if (s == a && t != b) || (s == b && t != a) {
            out.push(1);
        }
        if s == a && t == b {
            out.push(2);
        }
    } else if b < a {
        if none {
            out.push(0);
        }
        if (s == b && t != a) || (s == a && t != b) {
            out.push(-1);
        }
        if s == a || t == b {
            out.push(1);
        }
        if s == b && t == a {
            out.push(-2);
        }
    }
    out.sort();
    out.dedup();
    out
}

/// How the printed case tables relate to the pairing formula at one index
/// choice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TableVerdict {
    /// A single row applies and gives the formula value.
    Agree,
    /// Several rows apply with different values, one of them the formula's.
    Ambiguous,
    /// No row applies.
    Uncovered,
    /// Rows apply but none gives the formula value.
    Contradicts,
}

pub fn classify_printed_table(a: usize, b: usize, s: usize, t: usize) -> TableVerdict {
    let truth = pairing_for(a, s, t) - pairing_for(b, s, t);
    let rows = line_degree_table_as_printed(a, b, s, t);
    match rows.as_slice() {
        [] => TableVerdict::Uncovered,
        [v] if *v == truth => TableVerdict::Agree,
        vs if vs.contains(&truth) => TableVerdict::Ambiguous,
        _ => TableVerdict::Contradicts,
    }
}

/// `d_i = δ·⟨𝔖_i, [pq]⟩ = δ·Σ_{a≤i} ⟨y_a, [pq]⟩`.
pub fn multidegree_of_balloon(b: &Balloon, delta: i64) -> MultiDegree {
    let n = b.p.n();
    let mut acc = 0;
    let mut out = Vec::with_capacity(n - 1);
    for i in 1..n {
        acc += degree_pairing(i, b);
        out.push(delta * acc);
    }
    MultiDegree(out)
}

/// `d_ab = d_a − d_{a−1} − d_b + d_{b−1}`.
pub fn d_ab(d: &MultiDegree, a: usize, b: usize) -> i64 {
    d.get(a) - d.get(a - 1) - d.get(b) + d.get(b - 1)
}

/// `⟨c_1(Fl(n)), d⟩ = 2·Σ d_i`.
pub fn c1_pairing(d: &MultiDegree) -> i64 {
    2 * d.total()
}

/// All `r` with `0 ⪯ r ⪯ d`, lexicographically ordered.
pub fn degree_interval(d: &MultiDegree) -> Vec<MultiDegree> {
    let mut out = vec![Vec::with_capacity(d.len())];
    for &di in d.entries() {
        let mut next = Vec::with_capacity(out.len() * (di.max(0) as usize + 1));
        for prefix in &out {
            for v in 0..=di.max(0) {
                let mut p = prefix.clone();
                p.push(v);
                next.push(p);
            }
        }
        out = next;
    }
    out.into_iter().map(MultiDegree).collect()
}

/// All effective `d` with every entry at most `bound`, lexicographically.
pub fn degree_box(len: usize, bound: i64) -> Vec<MultiDegree> {
    degree_interval(&MultiDegree(vec![bound; len]))
}

/// `y_a` restricted to `p`, extended to polynomials.
pub fn restrict_poly(poly: &SparsePoly, p: &FixedPoint) -> SparsePoly {
    poly.substitute(&p.restriction())
}

pub fn restrict_expr(e: &FactoredExpr, p: &FixedPoint) -> Result<FactoredExpr, FlagError> {
    Ok(e.substitute(&p.restriction())?)
}

pub fn restrict_ratfun(r: &RatFun, p: &FixedPoint) -> Result<RatFun, FlagError> {
    Ok(r.substitute(&p.restriction())?)
}

/// A class on `Fl(n)` given by its restrictions to the fixed points, in the
/// order of [`fixed_points`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GkmClass {
    n: usize,
    restrictions: Vec<RatFun>,
}

impl GkmClass {
    pub fn new(n: usize, restrictions: Vec<RatFun>) -> Result<Self, FlagError> {
        let expected = (1..=n).product::<usize>();
        if restrictions.len() != expected {
            return Err(FlagError::WrongLength {
                n,
                expected,
                found: restrictions.len(),
            });
        }
        Ok(Self { n, restrictions })
    }

    /// Builds a class point by point.
    pub fn from_fn<F>(n: usize, mut f: F) -> Result<Self, FlagError>
    where
        F: FnMut(&FixedPoint) -> Result<RatFun, FlagError>,
    {
        let restrictions = fixed_points_bounded(n, usize::MAX)?
            .iter()
            .map(&mut f)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { n, restrictions })
    }

    /// Restricts a global expression in `y` at every fixed point.
    pub fn from_expr(n: usize, e: &FactoredExpr) -> Result<Self, FlagError> {
        Self::from_fn(n, |p| Ok(RatFun::from_factored(&restrict_expr(e, p)?)))
    }

    pub fn constant(n: usize, c: RatFun) -> Result<Self, FlagError> {
        Self::from_fn(n, |_| Ok(c.clone()))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn restrictions(&self) -> &[RatFun] {
        &self.restrictions
    }

    pub fn at(&self, idx: usize) -> &RatFun {
        &self.restrictions[idx]
    }

    pub fn at_point(&self, p: &FixedPoint) -> &RatFun {
        &self.restrictions[fixed_point_index(p)]
    }

    pub fn map<F>(&self, f: F) -> GkmClass
    where
        F: Fn(&RatFun) -> RatFun,
    {
        GkmClass {
            n: self.n,
            restrictions: self.restrictions.iter().map(f).collect(),
        }
    }

    pub fn mul(&self, other: &GkmClass) -> GkmClass {
        GkmClass {
            n: self.n,
            restrictions: self
                .restrictions
                .iter()
                .zip(&other.restrictions)
                .map(|(a, b)| a.mul(b))
                .collect(),
        }
    }

    pub fn add(&self, other: &GkmClass) -> GkmClass {
        GkmClass {
            n: self.n,
            restrictions: self
                .restrictions
                .iter()
                .zip(&other.restrictions)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }
}

/// `Σ_ω c|_ω / e_T|_ω` as one reduced rational function.
pub fn integrate_localization(c: &GkmClass) -> Result<RatFun, FlagError> {
    let points = fixed_points_bounded(c.n, usize::MAX)?;
    let mut total = RatFun::zero();
    for (p, r) in points.iter().zip(&c.restrictions) {
        total = total.add(&r.div_factored(&p.tangent_euler_class()));
    }
    Ok(total)
}

/// Outcome of the GKM edge test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GkmReport {
    pub violations: Vec<Balloon>,
}

impl GkmReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// For every balloon, checks that the tangent weight divides
/// `c|_p − c|_q`.
pub fn gkm_check(c: &GkmClass) -> Result<GkmReport, FlagError> {
    let mut violations = Vec::new();
    for b in balloons_unbounded(c.n)? {
        let diff = c.at_point(&b.p).sub(c.at_point(&b.q));
        if diff.is_zero() {
            continue;
        }
        let (_, monic) = b.weight.normalize();
        let quotient = diff.div_factored(&FactoredExpr::linear(b.weight.clone())?);
        if quotient.denominator().exponent_of(&monic) > 0 {
            violations.push(b);
        }
    }
    Ok(GkmReport { violations })
}

fn balloons_unbounded(n: usize) -> Result<Vec<Balloon>, FlagError> {
    let mut out = Vec::new();
    for p in fixed_points_bounded(n, usize::MAX)? {
        for i in 1..=n {
            for j in (i + 1)..=n {
                out.push(Balloon::new(p.clone(), i, j)?);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::parse_linear;

    #[test]
    fn fixed_point_counts() {
        assert_eq!(
            fixed_points(2).unwrap().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            ["12", "21"]
        );
        assert_eq!(fixed_points(3).unwrap().len(), 6);
        let four = fixed_points(4).unwrap();
        assert_eq!(four.len(), 24);
        for (k, p) in four.iter().enumerate() {
            assert_eq!(fixed_point_index(p), k);
        }
        assert!(matches!(fixed_points(1), Err(FlagError::NOutOfRange { .. })));
        assert!(matches!(fixed_points(7), Err(FlagError::NOutOfRange { .. })));
    }

    #[test]
    fn balloon_weights() {
        let bs = balloons(2).unwrap();
        assert_eq!(bs.len(), 2);
        assert_eq!(bs[0].tangent_weight().to_string(), "u1-u2");
        assert_eq!(bs[1].tangent_weight().to_string(), "-u1+u2");
        assert_eq!(balloons(3).unwrap().len(), 18);
        let b: Balloon = "231x(1,3)".parse().unwrap();
        assert_eq!(b.tangent_weight(), &parse_linear("u2-u1").unwrap());
        assert_eq!(b.q().to_string(), "132");
        assert_eq!(b.to_string(), "231x(1,3)");
    }

    #[test]
    fn pairings() {
        let b: Balloon = "123x(1,3)".parse().unwrap();
        assert_eq!(degree_pairing(1, &b), 1);
        assert_eq!(degree_pairing(2, &b), 0);
        assert_eq!(degree_pairing(3, &b), -1);
        assert_eq!(multidegree_of_balloon(&b, 1), MultiDegree::new(vec![1, 1]));
        assert_eq!(multidegree_of_balloon(&b, 2), MultiDegree::new(vec![2, 2]));
        let b2: Balloon = "12x(1,2)".parse().unwrap();
        assert_eq!(multidegree_of_balloon(&b2, 1), MultiDegree::new(vec![1]));
    }

    #[test]
    fn case_table_examples() {
        assert_eq!(line_degree_table(1, 2, 1, 2), 2);
        assert_eq!(line_degree_table(2, 3, 1, 2), -1);
        assert_eq!(line_degree_table(2, 1, 1, 2), -2);
    }

    #[test]
    fn degree_helpers() {
        let d = MultiDegree::new(vec![1, 2]);
        assert_eq!(d_ab(&d, 2, 1), 0);
        assert_eq!(d_ab(&d, 1, 1), 0);
        assert_eq!(d_ab(&MultiDegree::new(vec![3, 1]), 1, 2), 5);
        assert_eq!(c1_pairing(&d), 6);
        assert_eq!(c1_pairing(&MultiDegree::new(vec![2])), 4);
        assert_eq!(degree_interval(&MultiDegree::new(vec![1, 1])).len(), 4);
        assert_eq!(degree_interval(&MultiDegree::new(vec![0])), vec![MultiDegree::new(vec![0])]);
        let iv = degree_interval(&MultiDegree::new(vec![2, 1]));
        assert_eq!(iv.len(), 6);
        assert!(iv.windows(2).all(|w| w[0] < w[1]));
        assert_eq!("1,2".parse::<MultiDegree>().unwrap(), d);
        assert_eq!(d.to_string(), "1,2");
    }

    #[test]
    fn restriction_rule() {
        let p: FixedPoint = "21".parse().unwrap();
        let y1 = SparsePoly::var(Variable::Y(1));
        assert_eq!(restrict_poly(&y1, &p), SparsePoly::var(Variable::U(2)));
        let q: FixedPoint = "213".parse().unwrap();
        let s = &y1 + &SparsePoly::var(Variable::Y(2));
        assert_eq!(
            restrict_poly(&s, &q),
            &SparsePoly::var(Variable::U(2)) + &SparsePoly::var(Variable::U(1))
        );
    }

    #[test]
    fn integration_examples() {
        let one = GkmClass::constant(2, RatFun::one()).unwrap();
        assert!(integrate_localization(&one).unwrap().is_zero());
        let u = GkmClass::new(2, vec![RatFun::var(Variable::U(1)), RatFun::var(Variable::U(2))]).unwrap();
        assert_eq!(integrate_localization(&u).unwrap(), RatFun::one());
        let et = GkmClass::from_fn(3, |p| Ok(RatFun::from_factored(&p.tangent_euler_class()))).unwrap();
        assert_eq!(integrate_localization(&et).unwrap(), RatFun::from_int(6));
    }

    #[test]
    fn gkm_examples() {
        let same = GkmClass::new(2, vec![RatFun::var(Variable::U(1)), RatFun::var(Variable::U(1))]).unwrap();
        assert!(gkm_check(&same).unwrap().passed());
        let bad = GkmClass::new(
            2,
            vec![
                RatFun::var(Variable::U(1)),
                RatFun::var(Variable::U(1)).add(&RatFun::one()),
            ],
        )
        .unwrap();
        let rep = gkm_check(&bad).unwrap();
        assert!(!rep.passed());
        assert_eq!(rep.violations[0].to_string(), "12x(1,2)");
    }
}
