use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Div, Mul};

use num_traits::{One, Signed, Zero};

use super::linear::fmt_rational;
use super::{LinearForm, Rational, Substitution, SymbolicError, Variable};

/// A nonzero rational scalar times a product of powers of linear forms.
///
/// Every factor is monic (leading coefficient one under the variable order),
/// exponents are nonzero, and equal forms are merged. A factor and its
/// inverse therefore never coexist, and two expressions are equal as rational
/// functions exactly when their canonical data coincide.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FactoredExpr {
    scalar: Rational,
    factors: BTreeMap<LinearForm, i32>,
}

impl Default for FactoredExpr {
    fn default() -> Self {
        Self::one()
    }
}

impl FactoredExpr {
    pub fn one() -> Self {
        Self {
            scalar: Rational::one(),
            factors: BTreeMap::new(),
        }
    }

    pub fn scalar_expr(c: Rational) -> Result<Self, SymbolicError> {
        if c.is_zero() {
            return Err(SymbolicError::ZeroScalar);
        }
        Ok(Self {
            scalar: c,
            factors: BTreeMap::new(),
        })
    }

    pub fn from_int(c: i64) -> Result<Self, SymbolicError> {
        Self::scalar_expr(Rational::from_integer(c.into()))
    }

    /// `form^exp`, canonicalized. A zero form is a pole or a zero of the whole
    /// expression and is rejected.
    pub fn power_of(form: LinearForm, exp: i32) -> Result<Self, SymbolicError> {
        let mut out = Self::one();
        out.push_factor(form, exp)?;
        Ok(out)
    }

    pub fn linear(form: LinearForm) -> Result<Self, SymbolicError> {
        Self::power_of(form, 1)
    }

    /// Multiplies in `form^exp` in place.
    pub fn push_factor(&mut self, form: LinearForm, exp: i32) -> Result<(), SymbolicError> {
        if exp == 0 {
            return Ok(());
        }
        if form.is_zero() {
            return Err(SymbolicError::ZeroFactor(form.to_string()));
        }
        let (scale, monic) = form.normalize();
        self.scalar *= pow_rational(&scale, exp);
        if monic.is_constant() {
            return Ok(());
        }
        let entry = self.factors.entry(monic).or_insert(0);
        *entry += exp;
        if *entry == 0 {
            self.factors.retain(|_, e| *e != 0);
        }
        Ok(())
    }

    fn push_canonical(&mut self, monic: &LinearForm, exp: i32) {
        let entry = self.factors.entry(monic.clone()).or_insert(0);
        *entry += exp;
        if *entry == 0 {
            self.factors.remove(monic);
        }
    }

    pub fn scalar(&self) -> &Rational {
        &self.scalar
    }

    pub fn factors(&self) -> impl Iterator<Item = (&LinearForm, i32)> {
        self.factors.iter().map(|(f, e)| (f, *e))
    }

    pub fn factor_count(&self) -> usize {
        self.factors.len()
    }

    pub fn exponent_of(&self, form: &LinearForm) -> i32 {
        self.factors.get(form).copied().unwrap_or(0)
    }

    pub fn is_scalar(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty() && self.scalar.is_one()
    }

    /// True when no factor carries a negative exponent.
    pub fn is_polynomial(&self) -> bool {
        self.factors.values().all(|e| *e > 0)
    }

    pub fn scale(&self, c: &Rational) -> Result<Self, SymbolicError> {
        if c.is_zero() {
            return Err(SymbolicError::ZeroScalar);
        }
        let mut out = self.clone();
        out.scalar *= c;
        Ok(out)
    }

    pub fn inv(&self) -> Self {
        Self {
            scalar: self.scalar.recip(),
            factors: self.factors.iter().map(|(f, e)| (f.clone(), -e)).collect(),
        }
    }

    pub fn pow(&self, k: i32) -> Self {
        if k == 0 {
            return Self::one();
        }
        Self {
            scalar: pow_rational(&self.scalar, k),
            factors: self.factors.iter().map(|(f, e)| (f.clone(), e * k)).collect(),
        }
    }

    /// The involution α ↦ −α.
    pub fn bar(&self) -> Self {
        let mut out = Self::scalar_expr(self.scalar.clone()).expect("nonzero scalar");
        for (f, e) in &self.factors {
            out.push_factor(f.bar(), *e)
                .expect("bar of a nonzero form is nonzero");
        }
        out
    }

    /// Substitutes into every factor and recanonicalizes.
    ///
    /// Fails with [`SymbolicError::ZeroFactor`] if a factor becomes
    /// identically zero.
    pub fn substitute(&self, sub: &Substitution) -> Result<Self, SymbolicError> {
        if sub.is_empty() {
            return Ok(self.clone());
        }
        let mut out = Self::scalar_expr(self.scalar.clone())?;
        for (f, e) in &self.factors {
            let image = f.substitute(sub);
            if image.is_zero() {
                return Err(SymbolicError::ZeroFactor(f.to_string()));
            }
            out.push_factor(image, *e)?;
        }
        Ok(out)
    }

    /// Degree in α: every α-containing linear factor has degree one.
    pub fn alpha_degree(&self) -> i64 {
        self.factors
            .iter()
            .filter(|(f, _)| f.contains(Variable::Alpha))
            .map(|(_, e)| *e as i64)
            .sum()
    }

    pub fn contains_var(&self, v: Variable) -> bool {
        self.factors.keys().any(|f| f.contains(v))
    }

    pub fn variables(&self) -> Vec<Variable> {
        let mut vars: Vec<Variable> = self.factors.keys().flat_map(|f| f.variables()).collect();
        vars.sort();
        vars.dedup();
        vars
    }

    /// Splits into `(numerator, denominator)` with positive exponents on both
    /// sides; the scalar stays with the numerator.
    pub fn split(&self) -> (FactoredExpr, FactoredExpr) {
        let mut num = Self::scalar_expr(self.scalar.clone()).expect("nonzero scalar");
        let mut den = Self::one();
        for (f, e) in &self.factors {
            if *e > 0 {
                num.push_canonical(f, *e);
            } else {
                den.push_canonical(f, -e);
            }
        }
        (num, den)
    }

    /// Factors of `self / other`: the signed symmetric difference of the two
    /// factor multisets.
    pub fn factor_difference(&self, other: &FactoredExpr) -> Vec<(LinearForm, i32)> {
        let q = self / other;
        q.factors.into_iter().collect()
    }
}

pub(crate) fn pow_rational(c: &Rational, k: i32) -> Rational {
    if k >= 0 {
        num_traits::pow(c.clone(), k as usize)
    } else {
        num_traits::pow(c.recip(), (-k) as usize)
    }
}

impl Mul for &FactoredExpr {
    type Output = FactoredExpr;
    fn mul(self, rhs: &FactoredExpr) -> FactoredExpr {
        let mut out = self.clone();
        out.scalar *= &rhs.scalar;
        for (f, e) in &rhs.factors {
            out.push_canonical(f, *e);
        }
        out
    }
}

impl Mul for FactoredExpr {
    type Output = FactoredExpr;
    fn mul(self, rhs: FactoredExpr) -> FactoredExpr {
        &self * &rhs
    }
}

impl Div for &FactoredExpr {
    type Output = FactoredExpr;
    fn div(self, rhs: &FactoredExpr) -> FactoredExpr {
        let inverse = rhs.inv();
        Mul::mul(self, &inverse)
    }
}

impl Div for FactoredExpr {
    type Output = FactoredExpr;
    fn div(self, rhs: FactoredExpr) -> FactoredExpr {
        &self / &rhs
    }
}

impl std::iter::Product for FactoredExpr {
    fn product<I: Iterator<Item = FactoredExpr>>(iter: I) -> Self {
        iter.fold(FactoredExpr::one(), |acc, e| &acc * &e)
    }
}

/// Exact equality of factored rational functions.
pub fn equals_exact(a: &FactoredExpr, b: &FactoredExpr) -> bool {
    a == b
}

impl fmt::Display for FactoredExpr {
    /// Canonical rendering, e.g. `-1*(x+u1-u2)^-1` or `3/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if !self.scalar.is_one() || self.factors.is_empty() {
            let s = if self.scalar.is_negative() {
                format!("-{}", fmt_rational(&self.scalar.abs()))
            } else {
                fmt_rational(&self.scalar)
            };
            parts.push(s);
        }
        for (form, e) in &self.factors {
            if *e == 1 {
                parts.push(format!("({form})"));
            } else {
                parts.push(format!("({form})^{e}"));
            }
        }
        write!(f, "{}", parts.join("*"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> LinearForm {
        LinearForm::var(Variable::X)
    }
    fn u(i: u16) -> LinearForm {
        LinearForm::var(Variable::U(i))
    }
    fn alpha() -> LinearForm {
        LinearForm::var(Variable::Alpha)
    }

    #[test]
    fn product_with_inverse_is_one() {
        let e = FactoredExpr::linear(x() + u(1) - u(2)).unwrap()
            * FactoredExpr::power_of(x() - alpha(), 3).unwrap();
        let one = &e * &e.inv();
        assert!(one.is_one());
        assert_eq!(one.to_string(), "1");
    }

    #[test]
    fn sign_is_absorbed_into_scalar() {
        let e = FactoredExpr::power_of(u(2) - u(1), -1).unwrap();
        assert_eq!(e.to_string(), "-1*(u1-u2)^-1");
        let f = FactoredExpr::power_of(x() * &Rational::from_integer(2.into()), 2).unwrap();
        assert_eq!(f.to_string(), "4*(x)^2");
    }

    #[test]
    fn commutativity_and_distinct_forms() {
        let a = FactoredExpr::linear(x() + u(1) - u(2)).unwrap();
        let b = FactoredExpr::linear(x() - alpha()).unwrap();
        assert!(equals_exact(&(&a * &b), &(&b * &a)));
        let c = FactoredExpr::linear(x() + u(2) - u(1)).unwrap();
        assert!(!equals_exact(&a, &c));
    }

    #[test]
    fn zero_factor_is_rejected() {
        assert!(matches!(
            FactoredExpr::linear(LinearForm::zero()),
            Err(SymbolicError::ZeroFactor(_))
        ));
        let e = FactoredExpr::linear(x() - alpha()).unwrap();
        let sub = Substitution::new().with(Variable::Alpha, x());
        assert!(matches!(e.substitute(&sub), Err(SymbolicError::ZeroFactor(_))));
    }

    #[test]
    fn alpha_degree_counts_alpha_factors() {
        let two = Rational::from_integer(2.into());
        let e = FactoredExpr::power_of(x() + LinearForm::var(Variable::H(1)) - alpha() * &two, 3).unwrap();
        assert_eq!(e.alpha_degree(), 3);
        assert_eq!(FactoredExpr::power_of(x(), 5).unwrap().alpha_degree(), 0);
        let pure = FactoredExpr::power_of(alpha(), -2).unwrap();
        assert_eq!(pure.alpha_degree(), -2);
    }

    #[test]
    fn substitution_examples() {
        let two = Rational::from_integer(2.into());
        let e = FactoredExpr::linear(x() + LinearForm::var(Variable::Kappa(1)) - u(1)).unwrap();
        let sub = Substitution::new().with(
            Variable::Kappa(1),
            LinearForm::var(Variable::H(1)) + alpha() * &two,
        );
        assert_eq!(e.substitute(&sub).unwrap().to_string(), "(x+H1-u1+2a)");

        let e = FactoredExpr::linear(x() + LinearForm::var(Variable::Y(1)) - u(2)).unwrap();
        let sub = Substitution::new().with(Variable::Y(1), u(1));
        assert_eq!(e.substitute(&sub).unwrap().to_string(), "(x+u1-u2)");

        let e = FactoredExpr::linear(x() - alpha()).unwrap();
        let sub = Substitution::new().with_value(Variable::Alpha, Rational::zero());
        assert_eq!(e.substitute(&sub).unwrap().to_string(), "(x)");
    }

    #[test]
    fn split_and_difference() {
        let e = FactoredExpr::power_of(x(), 2).unwrap() * FactoredExpr::power_of(alpha(), -1).unwrap();
        let (n, d) = e.split();
        assert_eq!(n.to_string(), "(x)^2");
        assert_eq!(d.to_string(), "(a)");
        let diff = e.factor_difference(&FactoredExpr::power_of(x(), 2).unwrap());
        assert_eq!(diff, vec![(alpha(), -1)]);
    }
}
