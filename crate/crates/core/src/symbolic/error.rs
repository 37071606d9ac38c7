use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymbolicError {
    #[error("factor ({0}) vanishes identically")]
    ZeroFactor(String),
    #[error("a factored expression cannot have a zero scalar")]
    ZeroScalar,
    #[error("substitution target is not affine")]
    NonAffineResult,
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown variable `{name}` at byte {offset}")]
    UnknownVariable { offset: usize, name: String },
    #[error("zero denominator at byte {offset}")]
    ZeroDenominator { offset: usize },
}
