use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::{FactoredExpr, LinearForm, RatFun, Rational, SparsePoly, Variable};

/// A Laurent series in α, expanded at α = ∞, with α-free rational-function
/// coefficients.
///
/// Every exponent `k ≥ floor` carries its exact coefficient (absent means
/// zero); nothing is known below the floor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentInAlpha {
    terms: BTreeMap<i64, RatFun>,
    floor: i64,
}

impl LaurentInAlpha {
    pub fn zero(floor: i64) -> Self {
        Self {
            terms: BTreeMap::new(),
            floor,
        }
    }

    pub fn one(floor: i64) -> Self {
        Self::monomial(0, RatFun::one(), floor)
    }

    /// `c·α^k`, known down to `floor`.
    pub fn monomial(k: i64, c: RatFun, floor: i64) -> Self {
        let mut out = Self::zero(floor);
        if k >= floor && !c.is_zero() {
            out.terms.insert(k, c);
        }
        out
    }

    /// An α-free coefficient as a series.
    pub fn constant(c: RatFun, floor: i64) -> Self {
        debug_assert!(!c.contains_var(Variable::Alpha));
        Self::monomial(0, c, floor)
    }

    pub fn floor(&self) -> i64 {
        self.floor
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn top(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Highest exponent that could be nonzero in the exact value.
    fn top_bound(&self) -> i64 {
        self.top().unwrap_or(self.floor - 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &RatFun)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    /// The coefficient of `α^k`, or `None` when `k` lies below the floor.
    pub fn coefficient(&self, k: i64) -> Option<RatFun> {
        if k < self.floor {
            return None;
        }
        Some(self.terms.get(&k).cloned().unwrap_or_else(RatFun::zero))
    }

    /// Drops every term below `floor`; a floor below the current one is
    /// ignored.
    pub fn truncate(&self, floor: i64) -> Self {
        let floor = floor.max(self.floor);
        Self {
            terms: self.terms.range(floor..).map(|(k, c)| (*k, c.clone())).collect(),
            floor,
        }
    }

    fn insert_add(&mut self, k: i64, c: RatFun) {
        if k < self.floor || c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&k) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(k, sum);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.truncate(other.floor);
        for (k, c) in &other.terms {
            out.insert_add(*k, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, c)| (*k, c.neg())).collect(),
            floor: self.floor,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &RatFun) -> Self {
        let mut out = Self::zero(self.floor);
        for (k, t) in &self.terms {
            out.insert_add(*k, t.mul(c));
        }
        out
    }

    /// Product; the result is known down to the highest exponent at which
    /// neither factor's unknown tail can contribute.
    pub fn mul(&self, other: &Self) -> Self {
        let floor = (self.floor + other.top_bound()).max(other.floor + self.top_bound());
        self.mul_with_floor(other, floor)
    }

    fn mul_with_floor(&self, other: &Self, floor: i64) -> Self {
        let mut out = Self::zero(floor);
        for (i, a) in &self.terms {
            for (j, b) in other.terms.range((floor - i)..) {
                out.insert_add(i + j, a.mul(b));
            }
        }
        out
    }

    /// Multiplies by `α^k` exactly.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
            floor: self.floor + k,
        }
    }

    /// α ↦ −α.
    pub fn bar(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (*k, if k % 2 == 0 { c.clone() } else { c.neg() }))
                .collect(),
            floor: self.floor,
        }
    }

    /// Sum of the known terms as a rational function in α.
    pub fn known_sum(&self) -> RatFun {
        let alpha = RatFun::var(Variable::Alpha);
        let inv_alpha = RatFun::from_factored(
            &FactoredExpr::power_of(LinearForm::var(Variable::Alpha), -1).expect("nonzero"),
        );
        let mut out = RatFun::zero();
        for (k, c) in &self.terms {
            let p = if *k >= 0 {
                alpha.pow(*k as u32)
            } else {
                inv_alpha.pow((-k) as u32)
            };
            out = &out + &c.mul(&p);
        }
        out
    }
}

/// Splits a linear form into its α-coefficient and α-free remainder.
fn split_alpha(form: &LinearForm) -> (Rational, LinearForm) {
    (form.coeff(Variable::Alpha), form.without(Variable::Alpha))
}

/// Expansion of `(c·α + rest)^e` down to `floor`, with `c ≠ 0`.
fn expand_linear_power(c: &Rational, rest: &LinearForm, e: i32, floor: i64) -> LaurentInAlpha {
    let mut out = LaurentInAlpha::zero(floor);
    let e = e as i64;
    let rest_poly = SparsePoly::from_linear(rest);
    let c_inv = c.recip();
    // binom(e, k) · c^(e-k) · rest^k · α^(e-k)
    let mut coeff = super::factored::pow_rational(c, e as i32);
    let mut rest_pow = SparsePoly::one();
    let mut k: i64 = 0;
    while e - k >= floor {
        if coeff.is_zero() {
            break;
        }
        out.insert_add(e - k, RatFun::from_poly(rest_pow.scale(&coeff)));
        if rest.is_zero() {
            break;
        }
        // advance the generalized binomial coefficient
        coeff = coeff * Rational::from_integer((e - k).into())
            / Rational::from_integer((k + 1).into())
            * &c_inv;
        rest_pow = &rest_pow * &rest_poly;
        k += 1;
    }
    out
}

/// Laurent expansion of a factored expression in α down to `floor`.
pub fn expand_alpha(e: &FactoredExpr, floor: i64) -> LaurentInAlpha {
    let mut alpha_free = FactoredExpr::scalar_expr(e.scalar().clone()).expect("nonzero scalar");
    let mut parts: Vec<(Rational, LinearForm, i32)> = Vec::new();
    for (f, k) in e.factors() {
        let (c, rest) = split_alpha(f);
        if c.is_zero() {
            alpha_free.push_factor(f.clone(), k).expect("nonzero factor");
        } else {
            parts.push((c, rest, k));
        }
    }
    let top: i64 = parts.iter().map(|(_, _, k)| *k as i64).sum();
    let mut acc =
        LaurentInAlpha::constant(RatFun::from_factored(&alpha_free), (floor - top).min(0));
    let mut acc_top = 0i64;
    let mut rest_top = top;
    for (c, rest, k) in &parts {
        let k64 = *k as i64;
        rest_top -= k64;
        // terms of this factor below (floor - other tops) cannot reach `floor`
        let part = expand_linear_power(c, rest, *k, floor - acc_top - rest_top);
        acc = acc.mul_with_floor(&part, floor - rest_top);
        acc_top += k64;
    }
    acc.truncate(floor)
}

/// Laurent expansion of a rational function in α down to `floor`.
pub fn expand_alpha_ratfun(r: &RatFun, floor: i64) -> LaurentInAlpha {
    if r.is_zero() {
        return LaurentInAlpha::zero(floor);
    }
    let den_inv = r.denominator().inv();
    let num_parts = r.numerator().coefficients_in(Variable::Alpha);
    let num_top = r.numerator().degree_in(Variable::Alpha) as i64;
    let den_top = den_inv.alpha_degree();
    let den = expand_alpha(&den_inv, floor - num_top);
    let mut num = LaurentInAlpha::zero(floor - den_top);
    for (k, c) in num_parts {
        num.insert_add(k as i64, RatFun::from_poly(c));
    }
    num.mul_with_floor(&den, floor)
}

impl fmt::Display for LaurentInAlpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "({c})*a^{k}")?;
            first = false;
        }
        if !first {
            write!(f, " + ")?;
        }
        write!(f, "O(a^{})", self.floor - 1)
    }
}
