//! Exact arithmetic over the variable alphabet.
//!
//! Expressions live in two tiers: [`FactoredExpr`] keeps products of linear
//! forms in canonical factored shape, and [`SparsePoly`], [`RatFun`] and
//! [`LaurentInAlpha`] provide expanded arithmetic where sums are needed.

mod error;
pub(crate) mod factored;
mod laurent;
mod linear;
mod parse;
mod poly;
mod ratfun;
mod substitution;
mod variable;

pub use error::SymbolicError;
pub use factored::{equals_exact, FactoredExpr};
pub use laurent::{expand_alpha, expand_alpha_ratfun, LaurentInAlpha};
pub use linear::LinearForm;
pub use parse::{parse_expr, parse_linear, render_expr};
pub use poly::{Monomial, SparsePoly};
pub use ratfun::RatFun;
pub use substitution::Substitution;
pub use variable::Variable;

pub type Rational = num_rational::BigRational;
