use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::{FactoredExpr, LinearForm, Rational, SparsePoly, Substitution, SymbolicError, Variable};

/// A rational function whose denominator is a product of linear forms.
///
/// Kept reduced: no denominator factor divides the numerator. Since linear
/// forms are irreducible and the denominator is stored in canonical factored
/// form, the reduced representation is unique and structural equality is
/// equality of rational functions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFun {
    num: SparsePoly,
    /// Monic factors with positive exponents, scalar one.
    den: FactoredExpr,
}

impl Default for RatFun {
    fn default() -> Self {
        Self::zero()
    }
}

impl RatFun {
    pub fn zero() -> Self {
        Self {
            num: SparsePoly::zero(),
            den: FactoredExpr::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(SparsePoly::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(SparsePoly::constant(c))
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(SparsePoly::from_int(c))
    }

    pub fn var(v: Variable) -> Self {
        Self::from_poly(SparsePoly::var(v))
    }

    pub fn from_poly(num: SparsePoly) -> Self {
        Self {
            num,
            den: FactoredExpr::one(),
        }
    }

    pub fn from_linear(form: &LinearForm) -> Self {
        Self::from_poly(SparsePoly::from_linear(form))
    }

    /// Expands the numerator factors of a factored expression; denominator
    /// factors stay factored.
    pub fn from_factored(e: &FactoredExpr) -> Self {
        let (num, den) = e.split();
        let mut p = SparsePoly::constant(num.scalar().clone());
        for (f, k) in num.factors() {
            for _ in 0..k {
                p = p.mul_linear(f);
            }
        }
        Self { num: p, den }
    }

    /// `num / den` for an arbitrary factored denominator.
    pub fn from_parts(num: SparsePoly, den: &FactoredExpr) -> Self {
        let inv = Self::from_factored(&den.inv());
        Self::from_poly(num).mul(&inv)
    }

    pub fn numerator(&self) -> &SparsePoly {
        &self.num
    }

    pub fn denominator(&self) -> &FactoredExpr {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    /// Denominator factors, each with its multiplicity.
    pub fn pole_factors(&self) -> Vec<(LinearForm, i32)> {
        self.den.factors().map(|(f, e)| (f.clone(), e)).collect()
    }

    fn normalized(num: SparsePoly, den: FactoredExpr) -> Self {
        let mut out = Self { num, den };
        out.reduce();
        out
    }

    /// Cancels every denominator factor that divides the numerator.
    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = FactoredExpr::one();
            return;
        }
        if self.den.is_one() {
            return;
        }
        let mut remaining = FactoredExpr::one();
        let factors: Vec<(LinearForm, i32)> = self.den.factors().map(|(f, e)| (f.clone(), e)).collect();
        for (f, e) in factors {
            let mut left = e;
            while left > 0 {
                match self.num.div_linear(&f) {
                    Some(q) => {
                        self.num = q;
                        left -= 1;
                    }
                    None => break,
                }
            }
            if left > 0 {
                remaining
                    .push_factor(f, left)
                    .expect("monic factor is nonzero");
            }
        }
        self.den = remaining;
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Divides by a factored expression.
    pub fn div_factored(&self, e: &FactoredExpr) -> Self {
        self.mul(&Self::from_factored(&e.inv()))
    }

    pub fn mul_factored(&self, e: &FactoredExpr) -> Self {
        self.mul(&Self::from_factored(e))
    }

    pub fn mul(&self, rhs: &RatFun) -> RatFun {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        // cancel cross factors before multiplying out
        let mut a = self.num.clone();
        let mut b = rhs.num.clone();
        let mut den_a = FactoredExpr::one();
        let mut den_b = FactoredExpr::one();
        for (f, e) in rhs.den.factors() {
            let mut left = e;
            while left > 0 {
                match a.div_linear(f) {
                    Some(q) => {
                        a = q;
                        left -= 1;
                    }
                    None => break,
                }
            }
            if left > 0 {
                den_b.push_factor(f.clone(), left).expect("nonzero");
            }
        }
        for (f, e) in self.den.factors() {
            let mut left = e;
            while left > 0 {
                match b.div_linear(f) {
                    Some(q) => {
                        b = q;
                        left -= 1;
                    }
                    None => break,
                }
            }
            if left > 0 {
                den_a.push_factor(f.clone(), left).expect("nonzero");
            }
        }
        Self {
            num: &a * &b,
            den: &den_a * &den_b,
        }
    }

    pub fn add(&self, rhs: &RatFun) -> RatFun {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return Self::normalized(&self.num + &rhs.num, self.den.clone());
        }
        // least common multiple of the two factored denominators
        let mut lcm = self.den.clone();
        let mut cof_a = FactoredExpr::one();
        for (f, e) in rhs.den.factors() {
            let have = lcm.exponent_of(f);
            if e > have {
                lcm.push_factor(f.clone(), e - have).expect("nonzero");
                cof_a.push_factor(f.clone(), e - have).expect("nonzero");
            }
        }
        let cof_b = &lcm / &rhs.den;
        let a = expand_into(&self.num, &cof_a);
        let b = expand_into(&rhs.num, &cof_b);
        Self::normalized(&a + &b, lcm)
    }

    pub fn sub(&self, rhs: &RatFun) -> RatFun {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> RatFun {
        Self {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, k: u32) -> RatFun {
        let mut out = Self::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn bar(&self) -> RatFun {
        let den = self.den.bar();
        let c = den.scalar().recip();
        let den = den.scale(&c).expect("nonzero scalar");
        Self::normalized(self.num.bar().scale(&c), den)
    }

    pub fn substitute(&self, sub: &Substitution) -> Result<RatFun, SymbolicError> {
        let den = self.den.substitute(sub)?;
        let num = self.num.substitute(sub);
        Ok(Self::from_parts(num, &den))
    }

    /// Exact degree in α: numerator degree minus the number of α-containing
    /// denominator factors. `None` for the zero function.
    pub fn alpha_degree(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        Some(self.num.degree_in(Variable::Alpha) as i64 - self.den.alpha_degree())
    }

    pub fn contains_var(&self, v: Variable) -> bool {
        self.num.contains_var(v) || self.den.contains_var(v)
    }
}

fn expand_into(p: &SparsePoly, cof: &FactoredExpr) -> SparsePoly {
    let mut out = p.scale(cof.scalar());
    for (f, e) in cof.factors() {
        for _ in 0..e {
            out = out.mul_linear(f);
        }
    }
    out
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        RatFun::add(self, rhs)
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        RatFun::sub(self, rhs)
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        RatFun::mul(self, rhs)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun::neg(self)
    }
}

impl From<SparsePoly> for RatFun {
    fn from(p: SparsePoly) -> Self {
        Self::from_poly(p)
    }
}

impl From<&FactoredExpr> for RatFun {
    fn from(e: &FactoredExpr) -> Self {
        Self::from_factored(e)
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
