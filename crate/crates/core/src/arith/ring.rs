use std::fmt;
use std::sync::Arc;

use super::field::Field;
use super::monomial::{MonomialOrder, OrderKind, MAX_VARS};
use crate::error::{Error, Result};

/// Prefix reserved for auxiliary variables introduced by elimination tricks.
pub const RESERVED_PREFIX: char = '@';

/// The ambient polynomial ring `K[x_1..x_n]` with the order its polynomials
/// are stored under.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    field: Field,
    vars: Vec<String>,
    order: MonomialOrder,
}

/// User variable names match `[a-zA-Z][a-zA-Z0-9_]*`.
pub fn is_valid_var_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => chars.all(|c| c.is_ascii_alphanumeric() || c == '_'),
        _ => false,
    }
}

impl Ring {
    /// A ring over user-named variables. Names starting with `@` are
    /// rejected.
    pub fn new<S: AsRef<str>>(field: Field, vars: &[S], order: MonomialOrder) -> Result<Arc<Ring>> {
        for v in vars {
            let v = v.as_ref();
            if v.starts_with(RESERVED_PREFIX) {
                return Err(Error::ReservedName(v.to_string()));
            }
            if !is_valid_var_name(v) {
                return Err(Error::InvalidVariable(v.to_string()));
            }
        }
        Self::build(field, vars.iter().map(|v| v.as_ref().to_string()).collect(), order)
    }

    fn build(field: Field, vars: Vec<String>, order: MonomialOrder) -> Result<Arc<Ring>> {
        if vars.len() > MAX_VARS {
            return Err(Error::TooManyVariables(vars.len()));
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::DuplicateVariable(v.clone()));
            }
        }
        if !order.perm().is_empty() && order.perm().len() != vars.len() {
            return Err(Error::InvalidArgument(format!(
                "order permutation has length {} but ring has {} variables",
                order.perm().len(),
                vars.len()
            )));
        }
        if let OrderKind::Block(k) = order.kind {
            if k > vars.len() {
                return Err(Error::InvalidArgument(format!("block size {k} exceeds {} variables", vars.len())));
            }
        }
        Ok(Arc::new(Ring { field, vars, order }))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn characteristic(&self) -> u32 {
        self.field.characteristic()
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    /// Same field and variables; the storage order may differ.
    pub fn same_ambient(&self, other: &Ring) -> bool {
        self.field == other.field && self.vars == other.vars
    }

    /// This ring with a different monomial order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<Arc<Ring>> {
        Self::build(self.field, self.vars.clone(), order)
    }

    /// Appends auxiliary variables (names must carry the reserved prefix) and
    /// installs `order`.
    pub fn extend(&self, aux: &[&str], order: MonomialOrder) -> Result<Arc<Ring>> {
        let mut vars = self.vars.clone();
        for a in aux {
            debug_assert!(a.starts_with(RESERVED_PREFIX));
            vars.push(a.to_string());
        }
        Self::build(self.field, vars, order)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}] ({})", self.field, self.vars.join(","), self.order.name())
    }
}
