use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{Rational, Substitution, Variable};

/// An affine combination `c + Σ c_v·v` with exact rational coefficients.
///
/// Zero coefficients are never stored, so structural equality is value
/// equality.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LinearForm {
    coeffs: BTreeMap<Variable, Rational>,
    constant: Rational,
}

impl LinearForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn var(v: Variable) -> Self {
        Self::term(v, Rational::one())
    }

    pub fn term(v: Variable, c: Rational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(v, c);
        }
        Self {
            coeffs,
            constant: Rational::zero(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self {
            coeffs: BTreeMap::new(),
            constant: c,
        }
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Rational::from_integer(c.into()))
    }

    pub fn constant_term(&self) -> &Rational {
        &self.constant
    }

    pub fn coeff(&self, v: Variable) -> Rational {
        self.coeffs.get(&v).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Variable, &Rational)> {
        self.coeffs.iter().map(|(v, c)| (*v, c))
    }

    pub fn variables(&self) -> impl Iterator<Item = Variable> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn contains(&self, v: Variable) -> bool {
        self.coeffs.contains_key(&v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty() && self.constant.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The first variable under the variable order, with its coefficient.
    pub fn leading(&self) -> Option<(Variable, &Rational)> {
        self.coeffs.iter().next().map(|(v, c)| (*v, c))
    }

    /// Adds `c·v` in place.
    pub fn add_term(&mut self, v: Variable, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(v).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&v);
        }
    }

    pub fn add_constant(&mut self, c: &Rational) {
        self.constant += c;
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(v, x)| (*v, x * c)).collect(),
            constant: &self.constant * c,
        }
    }

    /// The part of the form not involving `v`.
    pub fn without(&self, v: Variable) -> Self {
        let mut out = self.clone();
        out.coeffs.remove(&v);
        out
    }

    /// Splits `self = scale · monic` where `monic` has leading coefficient one.
    ///
    /// Constant forms have no leading variable and are returned as the scale
    /// of the constant form `1`.
    pub fn normalize(&self) -> (Rational, LinearForm) {
        match self.leading() {
            Some((_, lead)) => {
                let lead = lead.clone();
                let inv = lead.recip();
                (lead, self.scale(&inv))
            }
            None => (self.constant.clone(), LinearForm::from_int(1)),
        }
    }

    pub fn substitute(&self, sub: &Substitution) -> LinearForm {
        let mut out = LinearForm::constant(self.constant.clone());
        for (v, c) in &self.coeffs {
            match sub.get(*v) {
                Some(target) => out = out + target.scale(c),
                None => out.add_term(*v, c),
            }
        }
        out
    }

    /// Replaces α by −α.
    pub fn bar(&self) -> LinearForm {
        match self.coeffs.get(&Variable::Alpha) {
            None => self.clone(),
            Some(c) => {
                let mut out = self.clone();
                out.coeffs.insert(Variable::Alpha, -c);
                out
            }
        }
    }
}

impl Add for LinearForm {
    type Output = LinearForm;
    fn add(mut self, rhs: LinearForm) -> LinearForm {
        for (v, c) in &rhs.coeffs {
            self.add_term(*v, c);
        }
        self.constant += rhs.constant;
        self
    }
}

impl Sub for LinearForm {
    type Output = LinearForm;
    fn sub(self, rhs: LinearForm) -> LinearForm {
        self + (-rhs)
    }
}

impl Neg for LinearForm {
    type Output = LinearForm;
    fn neg(self) -> LinearForm {
        LinearForm {
            coeffs: self.coeffs.into_iter().map(|(v, c)| (v, -c)).collect(),
            constant: -self.constant,
        }
    }
}

impl Mul<&Rational> for LinearForm {
    type Output = LinearForm;
    fn mul(self, rhs: &Rational) -> LinearForm {
        self.scale(rhs)
    }
}

impl From<Variable> for LinearForm {
    fn from(v: Variable) -> Self {
        LinearForm::var(v)
    }
}

pub(crate) fn fmt_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for LinearForm {
    /// Terms in variable order, constant last: `x+H1-u1-2a`, `1/2u1-1/2u2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, c) in &self.coeffs {
            let mag = c.abs();
            if c.is_negative() {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            if !mag.is_one() {
                write!(f, "{}", fmt_rational(&mag))?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        if !self.constant.is_zero() || first {
            let mag = self.constant.abs();
            if self.constant.is_negative() {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            write!(f, "{}", fmt_rational(&mag))?;
        }
        Ok(())
    }
}
