use std::fmt;

/// A symbol of the variable alphabet.
///
/// Variables are totally ordered by kind and then by index. The kind order is
/// `x < H < κ < y < u < α < ζ < t`; it fixes which variable leads a linear
/// form, and therefore the sign and scale of canonical factors and the order in
/// which terms are printed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variable {
    /// Formal variable of the Chern polynomial.
    X,
    /// Equivariant hyperplane class on the product of projective spaces.
    H(u16),
    /// Equivariant hyperplane class on the linear sigma model.
    Kappa(u16),
    /// Tautological line-bundle class on the flag manifold.
    Y(u16),
    /// Torus weight.
    U(u16),
    /// Weight of the standard ℂ* action.
    Alpha,
    /// Formal variable of the Euler-series pairing.
    Zeta(u16),
    /// Formal variable of the generating series.
    T(u16),
}

impl Variable {
    pub fn index(self) -> Option<u16> {
        match self {
            Variable::X | Variable::Alpha => None,
            Variable::H(i)
            | Variable::Kappa(i)
            | Variable::Y(i)
            | Variable::U(i)
            | Variable::Zeta(i)
            | Variable::T(i) => Some(i),
        }
    }

    /// Checks the index range for a flag manifold of dimension parameter `n`.
    pub fn valid_for(self, n: usize) -> bool {
        let n = n as u16;
        match self {
            Variable::X | Variable::Alpha => true,
            Variable::U(i) | Variable::Y(i) => (1..=n).contains(&i),
            Variable::H(i) | Variable::Kappa(i) | Variable::Zeta(i) | Variable::T(i) => {
                (1..n).contains(&i)
            }
        }
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variable::X => write!(f, "x"),
            Variable::Alpha => write!(f, "a"),
            Variable::H(i) => write!(f, "H{i}"),
            Variable::Kappa(i) => write!(f, "k{i}"),
            Variable::Y(i) => write!(f, "y{i}"),
            Variable::U(i) => write!(f, "u{i}"),
            Variable::Zeta(i) => write!(f, "z{i}"),
            Variable::T(i) => write!(f, "t{i}"),
        }
    }
}
