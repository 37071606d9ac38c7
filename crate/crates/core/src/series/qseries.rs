use std::collections::BTreeMap;

use crate::flag::{degree_interval, MultiDegree};
use crate::symbolic::{RatFun, Rational};

/// A power series in `q_1, …, q_{n−1}` (with `q^d = e^{d·t}`), truncated to
/// the box `0 ⪯ d ⪯ cutoff`, with rational-function coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    cutoff: MultiDegree,
    terms: BTreeMap<MultiDegree, RatFun>,
}

impl QSeries {
    pub fn zero(cutoff: &MultiDegree) -> Self {
        Self {
            cutoff: cutoff.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: RatFun, cutoff: &MultiDegree) -> Self {
        Self::monomial(MultiDegree::zero(cutoff.len()), c, cutoff)
    }

    pub fn one(cutoff: &MultiDegree) -> Self {
        Self::constant(RatFun::one(), cutoff)
    }

    pub fn monomial(d: MultiDegree, c: RatFun, cutoff: &MultiDegree) -> Self {
        let mut out = Self::zero(cutoff);
        out.insert_add(d, c);
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (MultiDegree, RatFun)>, cutoff: &MultiDegree) -> Self {
        let mut out = Self::zero(cutoff);
        for (d, c) in terms {
            out.insert_add(d, c);
        }
        out
    }

    pub fn cutoff(&self) -> &MultiDegree {
        &self.cutoff
    }

    pub fn coeff(&self, d: &MultiDegree) -> RatFun {
        self.terms.get(d).cloned().unwrap_or_else(RatFun::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiDegree, &RatFun)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> RatFun {
        self.coeff(&MultiDegree::zero(self.cutoff.len()))
    }

    fn insert_add(&mut self, d: MultiDegree, c: RatFun) {
        if c.is_zero() || !d.precedes(&self.cutoff) {
            return;
        }
        let sum = match self.terms.remove(&d) {
            Some(old) => old.add(&c),
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(d, sum);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.insert_add(d.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            cutoff: self.cutoff.clone(),
            terms: self.terms.iter().map(|(d, c)| (d.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &RatFun) -> Self {
        let mut out = Self::zero(&self.cutoff);
        for (d, t) in &self.terms {
            out.insert_add(d.clone(), t.mul(c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.cutoff);
        for (d1, c1) in &self.terms {
            for (d2, c2) in &other.terms {
                let d = d1.add(d2);
                if d.precedes(&self.cutoff) {
                    out.insert_add(d, c1.mul(c2));
                }
            }
        }
        out
    }

    /// Applies `f` to every coefficient.
    pub fn map<F: Fn(&RatFun) -> RatFun>(&self, f: F) -> Self {
        Self::from_terms(self.terms.iter().map(|(d, c)| (d.clone(), f(c))), &self.cutoff)
    }

    /// Largest total degree in the box; powers of a series without constant
    /// term vanish beyond it.
    fn max_order(&self) -> i64 {
        self.cutoff.total()
    }

    /// `exp(self)` for a series without constant term.
    pub fn exp(&self) -> Self {
        debug_assert!(self.constant_term().is_zero());
        let mut out = Self::one(&self.cutoff);
        let mut power = Self::one(&self.cutoff);
        for k in 1..=self.max_order() {
            power = power.mul(self).scale(&RatFun::constant(Rational::new(1.into(), k.into())));
            if power.is_zero() {
                break;
            }
            out = out.add(&power);
        }
        out
    }

    /// `log(1 + self)` for a series without constant term.
    pub fn log1p(&self) -> Self {
        debug_assert!(self.constant_term().is_zero());
        let mut out = Self::zero(&self.cutoff);
        let mut power = Self::one(&self.cutoff);
        for k in 1..=self.max_order() {
            power = power.mul(self);
            if power.is_zero() {
                break;
            }
            let c = Rational::new(if k % 2 == 1 { 1.into() } else { (-1).into() }, k.into());
            out = out.add(&power.scale(&RatFun::constant(c)));
        }
        out
    }

    /// Degrees of the box in lexicographic order.
    pub fn box_degrees(&self) -> Vec<MultiDegree> {
        degree_interval(&self.cutoff)
    }
}
