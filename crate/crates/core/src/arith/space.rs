use std::fmt;
use std::sync::Arc;

use super::PolyError;

/// An ordered list of named variables, each carrying a nonnegative weight.
///
/// The order is fixed at construction and defines both exponent-vector
/// layout and the grevlex tie-breaking order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VariableSpace {
    names: Vec<String>,
    weights: Vec<u32>,
}

impl VariableSpace {
    pub fn new<S: Into<String>>(
        vars: impl IntoIterator<Item = (S, u32)>,
    ) -> Result<Arc<Self>, PolyError> {
        let (names, weights): (Vec<String>, Vec<u32>) =
            vars.into_iter().map(|(n, w)| (n.into(), w)).unzip();
        for (i, name) in names.iter().enumerate() {
            if !is_identifier(name) {
                return Err(PolyError::InvalidVariableName(name.clone()));
            }
            if names[..i].contains(name) {
                return Err(PolyError::DuplicateVariable(name.clone()));
            }
        }
        Ok(Arc::new(Self { names, weights }))
    }

    /// Space where every variable has weight 1.
    pub fn unweighted<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
    ) -> Result<Arc<Self>, PolyError> {
        Self::new(names.into_iter().map(|n| (n, 1)))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn weight(&self, index: usize) -> u32 {
        self.weights[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn require(&self, name: &str) -> Result<usize, PolyError> {
        self.index_of(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }
}

impl fmt::Display for VariableSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (n, w)) in self.names.iter().zip(&self.weights).enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{n}:{w}")?;
        }
        Ok(())
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Two handles refer to the same space if they are the same allocation or
/// structurally equal.
pub(crate) fn same_space(a: &Arc<VariableSpace>, b: &Arc<VariableSpace>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}
