use std::collections::BTreeMap;

use super::{LinearForm, Rational, Variable};

/// A simultaneous affine substitution `v ↦ form`.
///
/// All targets are read against the original expression, so `{y1 ↦ u2, u2 ↦ u1}`
/// maps `y1 - u2` to `u2 - u1`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Substitution {
    map: BTreeMap<Variable, LinearForm>,
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, v: Variable, target: impl Into<LinearForm>) -> Self {
        self.map.insert(v, target.into());
        self
    }

    pub fn with_value(self, v: Variable, value: Rational) -> Self {
        self.with(v, LinearForm::constant(value))
    }

    pub fn insert(&mut self, v: Variable, target: LinearForm) {
        self.map.insert(v, target);
    }

    pub fn get(&self, v: Variable) -> Option<&LinearForm> {
        self.map.get(&v)
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Variable, &LinearForm)> {
        self.map.iter().map(|(v, f)| (*v, f))
    }
}
