use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{FactoredExpr, LinearForm, Rational, SymbolicError, Variable};

/// Parses the textual expression format into a canonical [`FactoredExpr`].
///
/// ```text
/// expr     := term (('*' | '/') term)*
/// term     := '-'? rational? factor ('^' integer)? | '-'? rational
/// factor   := '(' linform ')'
/// linform  := ('-')? monomial (('+' | '-') monomial)*
/// monomial := rational? varname?
/// varname  := 'x' | 'a' | 'u'INT | 'H'INT | 'k'INT | 'y'INT | 'z'INT | 't'INT
/// rational := INT ('/' INT)?
/// ```
///
/// `a` denotes α, `k` denotes κ, `z` denotes ζ. Whitespace is ignored and
/// dividing by a term negates its exponents.
pub fn parse_expr(text: &str) -> Result<FactoredExpr, SymbolicError> {
    let mut p = Parser::new(text);
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.bytes.len() {
        return Err(p.syntax("unexpected trailing input"));
    }
    Ok(e)
}

/// Canonical text form; [`parse_expr`] inverts it exactly.
pub fn render_expr(e: &FactoredExpr) -> String {
    e.to_string()
}

/// Parses a single linear form such as `x+H1-u1-2a`.
pub fn parse_linear(text: &str) -> Result<LinearForm, SymbolicError> {
    let mut p = Parser::new(text);
    let f = p.linform()?;
    p.skip_ws();
    if p.pos < p.bytes.len() {
        return Err(p.syntax("unexpected trailing input"));
    }
    Ok(f)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn syntax(&self, message: &str) -> SymbolicError {
        SymbolicError::Syntax {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), SymbolicError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.syntax(&format!("expected '{}'", c as char)))
        }
    }

    fn integer(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        Some(digits.parse().expect("digit run parses"))
    }

    /// `INT ('/' INT)?`; the slash is only consumed when a digit follows.
    fn rational(&mut self, allow_fraction: bool) -> Result<Option<Rational>, SymbolicError> {
        let Some(num) = self.integer() else {
            return Ok(None);
        };
        if !allow_fraction {
            return Ok(Some(Rational::from_integer(num)));
        }
        let save = self.pos;
        if self.eat(b'/') {
            let slash = self.pos - 1;
            match self.integer() {
                Some(den) => {
                    if den.is_zero() {
                        return Err(SymbolicError::ZeroDenominator { offset: slash });
                    }
                    return Ok(Some(Rational::new(num, den)));
                }
                None => self.pos = save,
            }
        }
        Ok(Some(Rational::from_integer(num)))
    }

    fn expr(&mut self) -> Result<FactoredExpr, SymbolicError> {
        let mut acc = self.term(true)?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.term(true)?;
            } else if self.peek() == Some(b'/') {
                let at = self.pos;
                self.pos += 1;
                let t = self.term(false)?;
                if t.is_scalar() && t.scalar().is_zero() {
                    return Err(SymbolicError::ZeroDenominator { offset: at });
                }
                acc = &acc / &t;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self, allow_fraction: bool) -> Result<FactoredExpr, SymbolicError> {
        let start = {
            self.skip_ws();
            self.pos
        };
        let negative = self.eat(b'-');
        let coeff = self.rational(allow_fraction)?;
        let mut out = match (coeff, self.peek()) {
            (c, Some(b'(')) => {
                self.pos += 1;
                let form = self.linform()?;
                self.expect(b')')?;
                let exp = if self.eat(b'^') { self.exponent()? } else { 1 };
                let mut e = FactoredExpr::power_of(form, exp)?;
                if let Some(c) = c {
                    if c.is_zero() {
                        return Err(SymbolicError::ZeroScalar);
                    }
                    e = e.scale(&c)?;
                }
                e
            }
            (Some(c), _) => {
                if c.is_zero() {
                    return Err(SymbolicError::Syntax {
                        offset: start,
                        message: "zero scalar".into(),
                    });
                }
                FactoredExpr::scalar_expr(c)?
            }
            (None, _) => return Err(self.syntax("expected a number or '('")),
        };
        if negative {
            out = out.scale(&-Rational::one())?;
        }
        Ok(out)
    }

    fn exponent(&mut self) -> Result<i32, SymbolicError> {
        let negative = self.eat(b'-');
        let at = self.pos;
        let v = self.integer().ok_or_else(|| self.syntax("expected an integer exponent"))?;
        let v: i32 = v.try_into().map_err(|_| SymbolicError::Syntax {
            offset: at,
            message: "exponent out of range".into(),
        })?;
        Ok(if negative { -v } else { v })
    }

    fn linform(&mut self) -> Result<LinearForm, SymbolicError> {
        let mut out = LinearForm::zero();
        let mut sign = if self.eat(b'-') {
            -Rational::one()
        } else {
            Rational::one()
        };
        loop {
            self.monomial(&sign, &mut out)?;
            if self.eat(b'+') {
                sign = Rational::one();
            } else if self.eat(b'-') {
                sign = -Rational::one();
            } else {
                return Ok(out);
            }
        }
    }

    fn monomial(&mut self, sign: &Rational, out: &mut LinearForm) -> Result<(), SymbolicError> {
        let c = self.rational(true)?;
        let var = self.varname()?;
        match (c, var) {
            (None, None) => Err(self.syntax("expected a term")),
            (c, Some(v)) => {
                out.add_term(v, &(c.unwrap_or_else(Rational::one) * sign));
                Ok(())
            }
            (Some(c), None) => {
                out.add_constant(&(c * sign));
                Ok(())
            }
        }
    }

    fn varname(&mut self) -> Result<Option<Variable>, SymbolicError> {
        let Some(c) = self.peek() else {
            return Ok(None);
        };
        if !c.is_ascii_alphabetic() {
            return Ok(None);
        }
        let start = self.pos;
        self.pos += 1;
        let mut end = self.pos;
        while end < self.bytes.len() && self.bytes[end].is_ascii_digit() {
            end += 1;
        }
        let name = std::str::from_utf8(&self.bytes[start..end]).expect("ascii");
        let index: Option<u16> = if end > self.pos {
            self.bytes[self.pos..end]
                .iter()
                .try_fold(0u16, |acc, d| acc.checked_mul(10)?.checked_add((d - b'0') as u16))
        } else {
            None
        };
        let unknown = || SymbolicError::UnknownVariable {
            offset: start,
            name: name.to_string(),
        };
        let indexed = |f: fn(u16) -> Variable| match index {
            Some(i) if i >= 1 => Ok(f(i)),
            _ => Err(unknown()),
        };
        let v = match c {
            b'x' if end == self.pos => Variable::X,
            b'a' if end == self.pos => Variable::Alpha,
            b'u' => indexed(Variable::U)?,
            b'H' => indexed(Variable::H)?,
            b'k' => indexed(Variable::Kappa)?,
            b'y' => indexed(Variable::Y)?,
            b'z' => indexed(Variable::Zeta)?,
            b't' => indexed(Variable::T)?,
            _ => {
                let mut stop = start;
                while stop < self.bytes.len() && self.bytes[stop].is_ascii_alphanumeric() {
                    stop += 1;
                }
                return Err(SymbolicError::UnknownVariable {
                    offset: start,
                    name: String::from_utf8_lossy(&self.bytes[start..stop]).into_owned(),
                });
            }
        };
        self.pos = end;
        Ok(Some(v))
    }
}
