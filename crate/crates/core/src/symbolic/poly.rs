use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use super::linear::fmt_rational;
use super::{LinearForm, Rational, Substitution, Variable};

/// A power product, variables strictly increasing, exponents positive.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(SmallVec<[(Variable, u32); 6]>);

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: Variable) -> Self {
        let mut s = SmallVec::new();
        s.push((v, 1));
        Self(s)
    }

    pub fn from_pairs(mut pairs: Vec<(Variable, u32)>) -> Self {
        pairs.retain(|(_, e)| *e > 0);
        pairs.sort();
        let mut out: SmallVec<[(Variable, u32); 6]> = SmallVec::new();
        for (v, e) in pairs {
            match out.last_mut() {
                Some((w, f)) if *w == v => *f += e,
                _ => out.push((v, e)),
            }
        }
        Self(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, v: Variable) -> u32 {
        self.0.iter().find(|(w, _)| *w == v).map(|(_, e)| *e).unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn pairs(&self) -> &[(Variable, u32)] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    fn mul_var(&self, v: Variable) -> Monomial {
        let mut out = self.0.clone();
        match out.binary_search_by(|(w, _)| w.cmp(&v)) {
            Ok(pos) => out[pos].1 += 1,
            Err(pos) => out.insert(pos, (v, 1)),
        }
        Monomial(out)
    }

    /// Lexicographic comparison of exponent vectors under the variable order.
    pub fn lex_cmp(&self, other: &Monomial) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }

    /// Removes `v`, returning its exponent and the remaining monomial.
    pub fn split_off(&self, v: Variable) -> (u32, Monomial) {
        match self.0.iter().position(|(w, _)| *w == v) {
            None => (0, self.clone()),
            Some(pos) => {
                let mut rest = self.0.clone();
                let (_, e) = rest.remove(pos);
                (e, Monomial(rest))
            }
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// A sparse multivariate polynomial with exact rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparsePoly {
    terms: HashMap<Monomial, Rational>,
}

impl SparsePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = HashMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Self { terms }
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Rational::from_integer(c.into()))
    }

    pub fn var(v: Variable) -> Self {
        Self::monomial(Monomial::var(v), Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut terms = HashMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn from_linear(form: &LinearForm) -> Self {
        let mut terms = HashMap::new();
        for (v, c) in form.terms() {
            terms.insert(Monomial::var(v), c.clone());
        }
        if !form.constant_term().is_zero() {
            terms.insert(Monomial::one(), form.constant_term().clone());
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Terms in a fixed order (graded by total degree, then monomial order).
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Rational)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|a, b| {
            b.0.total_degree()
                .cmp(&a.0.total_degree())
                .then_with(|| b.0.lex_cmp(a.0))
        });
        t
    }

    /// The constant value, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::hash_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::hash_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_linear(&self, form: &LinearForm) -> Self {
        let mut out: HashMap<Monomial, Rational> =
            HashMap::with_capacity(self.terms.len() * (form.terms().count() + 1));
        let mut acc = |m: Monomial, c: Rational| {
            let e = out.entry(m).or_insert_with(Rational::zero);
            *e += c;
        };
        for (m, c) in &self.terms {
            for (v, a) in form.terms() {
                acc(m.mul_var(v), c * a);
            }
            if !form.constant_term().is_zero() {
                acc(m.clone(), c * form.constant_term());
            }
        }
        out.retain(|_, c| !c.is_zero());
        Self { terms: out }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn degree_in(&self, v: Variable) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    /// Lowest power of `v` present, or `None` for the zero polynomial.
    pub fn low_degree_in(&self, v: Variable) -> Option<u32> {
        self.terms.keys().map(|m| m.exponent(v)).min()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    pub fn contains_var(&self, v: Variable) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    pub fn variables(&self) -> Vec<Variable> {
        let mut vars: Vec<Variable> = self
            .terms
            .keys()
            .flat_map(|m| m.pairs().iter().map(|(v, _)| *v))
            .collect();
        vars.sort();
        vars.dedup();
        vars
    }

    /// Collects coefficients by power of `v`: `self = Σ_k out[k]·v^k`.
    pub fn coefficients_in(&self, v: Variable) -> BTreeMap<u32, SparsePoly> {
        let mut out: BTreeMap<u32, SparsePoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(v);
            out.entry(e).or_default().add_term(rest, c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    /// Applies an affine substitution to every variable it names.
    pub fn substitute(&self, sub: &Substitution) -> SparsePoly {
        if sub.is_empty() {
            return self.clone();
        }
        let mut power_cache: HashMap<(Variable, u32), SparsePoly> = HashMap::new();
        let mut out = SparsePoly::zero();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut image = SparsePoly::constant(c.clone());
            for &(v, e) in m.pairs() {
                match sub.get(v) {
                    None => kept.push((v, e)),
                    Some(target) => {
                        let p = power_cache
                            .entry((v, e))
                            .or_insert_with(|| SparsePoly::from_linear(target).pow(e))
                            .clone();
                        image = &image * &p;
                    }
                }
            }
            let kept = Monomial::from_pairs(kept);
            for (m2, c2) in image.terms {
                out.add_term(m2.mul(&kept), c2);
            }
        }
        out
    }

    /// Replaces α by −α.
    pub fn bar(&self) -> SparsePoly {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    if m.exponent(Variable::Alpha) % 2 == 1 {
                        (m.clone(), -c)
                    } else {
                        (m.clone(), c.clone())
                    }
                })
                .collect(),
        }
    }

    /// Exact division by a nonconstant linear form; `None` if it does not
    /// divide.
    pub fn div_linear(&self, form: &LinearForm) -> Option<SparsePoly> {
        let (v, lead) = form.leading()?;
        if self.is_zero() {
            return Some(SparsePoly::zero());
        }
        // self = Σ p_k v^k, divide by (v - root) with root = -(form - lead·v)/lead
        let lead_inv = lead.recip();
        let root = -form.without(v).scale(&lead_inv);
        let coeffs = self.coefficients_in(v);
        let top = *coeffs.keys().next_back().unwrap();
        if top == 0 {
            return None;
        }
        let mut quotient: Vec<SparsePoly> = vec![SparsePoly::zero(); top as usize];
        let mut carry = SparsePoly::zero();
        for k in (0..=top).rev() {
            let pk = coeffs.get(&k).cloned().unwrap_or_default();
            let current = &pk + &carry;
            if k == 0 {
                if !current.is_zero() {
                    return None;
                }
                break;
            }
            carry = current.mul_linear(&root);
            quotient[(k - 1) as usize] = current;
        }
        let mut out = SparsePoly::zero();
        let vm = Monomial::var(v);
        let mut vpow = Monomial::one();
        for q in quotient {
            for (m, c) in q.terms {
                out.add_term(m.mul(&vpow), c * &lead_inv);
            }
            vpow = vpow.mul(&vm);
        }
        Some(out)
    }

    /// The polynomial as an affine form, if its total degree is at most one.
    pub fn to_linear(&self) -> Option<LinearForm> {
        let mut out = LinearForm::zero();
        for (m, c) in &self.terms {
            match m.pairs() {
                [] => out.add_constant(c),
                [(v, 1)] => out.add_term(*v, c),
                _ => return None,
            }
        }
        Some(out)
    }
}

impl Add for &SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        let (big, small) = if self.terms.len() >= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        SparsePoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        if self.is_zero() || rhs.is_zero() {
            return SparsePoly::zero();
        }
        let mut out: HashMap<Monomial, Rational> =
            HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let e = out.entry(m1.mul(m2)).or_insert_with(Rational::zero);
                *e += c1 * c2;
            }
        }
        out.retain(|_, c| !c.is_zero());
        SparsePoly { terms: out }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for SparsePoly {
            type Output = SparsePoly;
            fn $method(self, rhs: SparsePoly) -> SparsePoly {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let mag = c.abs();
            if c.is_negative() {
                write!(f, "-")?;
            } else if i > 0 {
                write!(f, "+")?;
            }
            if m.is_one() {
                write!(f, "{}", fmt_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_rational(&mag))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lf(v: Variable) -> LinearForm {
        LinearForm::var(v)
    }

    #[test]
    fn expand_and_divide() {
        let a = lf(Variable::X) + lf(Variable::U(1)) - lf(Variable::U(2));
        let b = lf(Variable::X) - lf(Variable::Alpha);
        let p = SparsePoly::from_linear(&a).mul_linear(&b);
        let q = p.div_linear(&b).unwrap();
        assert_eq!(q, SparsePoly::from_linear(&a));
        assert!(p.div_linear(&(lf(Variable::U(1)) - lf(Variable::U(2)))).is_none());
    }

    #[test]
    fn constant_difference_is_not_divisible() {
        let p = SparsePoly::from_int(1);
        assert!(p.div_linear(&(lf(Variable::U(1)) - lf(Variable::U(2)))).is_none());
    }

    #[test]
    fn substitution_is_simultaneous() {
        let p = SparsePoly::from_linear(&(lf(Variable::Y(1)) - lf(Variable::U(2))));
        let sub = Substitution::new()
            .with(Variable::Y(1), lf(Variable::U(2)))
            .with(Variable::U(2), lf(Variable::U(1)));
        let q = p.substitute(&sub);
        assert_eq!(q, SparsePoly::from_linear(&(lf(Variable::U(2)) - lf(Variable::U(1)))));
    }

    #[test]
    fn coefficients_in_variable() {
        let p = SparsePoly::from_linear(&(lf(Variable::X) - lf(Variable::Alpha))).pow(2);
        let c = p.coefficients_in(Variable::Alpha);
        assert_eq!(c.len(), 3);
        assert_eq!(c[&1], SparsePoly::var(Variable::X).scale(&Rational::from_integer((-2).into())));
        assert_eq!(p.to_string(), "x^2-2*x*a+a^2");
    }
}
