//! Variable contexts. Every polynomial references exactly one context; the
//! variable order is fixed at creation and determines the monomial order.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::Error;

/// An ordered list of distinct variable identifiers.
#[derive(Debug, PartialEq, Eq)]
pub struct VariableContext {
    names: Vec<String>,
}

/// Shared handle; contexts are immutable after creation.
pub type Ctx = Arc<VariableContext>;

impl VariableContext {
    /// Builds a context from the given names. Names must be distinct and
    /// nonempty.
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Ctx, Error> {
        let mut seen: Vec<&str> = Vec::with_capacity(names.len());
        for n in names {
            let n = n.as_ref();
            if n.is_empty() {
                return Err(Error::UnknownVariable(String::new()));
            }
            if seen.contains(&n) {
                return Err(Error::UnknownVariable(n.to_string()));
            }
            seen.push(n);
        }
        Ok(Arc::new(VariableContext {
            names: names.iter().map(|s| s.as_ref().to_string()).collect(),
        }))
    }

    /// The global catalog context: state symbols z, y (normal form) and x
    /// (the section-1 systems), parameters q, p, a. Unused variables simply
    /// carry exponent zero.
    pub fn standard() -> Ctx {
        Self::new(&["z", "y", "q", "p", "a", "x"]).expect("distinct names")
    }

    pub fn arity(&self) -> usize {
        self.names.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Index of `name`, or an UnknownVariable error.
    pub fn require(&self, name: &str) -> Result<usize, Error> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.names.iter().map(|s| s.as_str())
    }
}

/// Contexts agree if they are the same allocation or have equal name lists.
pub fn same_context(a: &Ctx, b: &Ctx) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_order_is_fixed() {
        let ctx = VariableContext::standard();
        let names: Vec<&str> = ctx.names().collect();
        assert_eq!(names, ["z", "y", "q", "p", "a", "x"]);
        assert_eq!(ctx.index_of("q"), Some(2));
        assert_eq!(ctx.index_of("w"), None);
    }

    #[test]
    fn duplicate_names_rejected() {
        assert!(VariableContext::new(&["z", "z"]).is_err());
        assert!(VariableContext::new(&["z", ""]).is_err());
    }

    #[test]
    fn equality_by_content() {
        let a = VariableContext::new(&["u", "v"]).unwrap();
        let b = VariableContext::new(&["u", "v"]).unwrap();
        assert!(same_context(&a, &b));
        assert!(!Arc::ptr_eq(&a, &b));
    }
}
