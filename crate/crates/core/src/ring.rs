//! Ring descriptors: characteristic, named variables, and the monomial order.

use crate::error::{Error, Result};
use crate::field::{is_prime, Fp};
use std::fmt;
use std::sync::Arc;

pub const DEFAULT_CHARACTERISTIC: u32 = 32003;

/// Monomial order tag.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic (the default for all invariant computations).
    Grevlex,
    /// Pure lexicographic.
    Lex,
    /// Block order eliminating the first `k` variables: compares the first
    /// block by grevlex, ties broken by grevlex on the rest.
    Elimination(usize),
    /// Weighted degree first, grevlex tie-break.
    Weighted(Vec<u32>),
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Grevlex => write!(f, "grevlex"),
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::Elimination(k) => write!(f, "elim:{k}"),
            MonomialOrder::Weighted(w) => write!(f, "weighted:{w:?}"),
        }
    }
}

/// Everything the rest of the toolkit is parameterized by: GF(p), variable
/// names, and the monomial order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingSpec {
    fp: Fp,
    vars: Vec<String>,
    order: MonomialOrder,
}

/// Shared handle to a ring descriptor.
pub type Ring = Arc<RingSpec>;

impl RingSpec {
    pub fn new(p: u32, vars: Vec<String>, order: MonomialOrder) -> Result<Ring> {
        if !is_prime(p) {
            return Err(Error::invalid(format!("characteristic {p} is not prime")));
        }
        let mut seen = std::collections::HashSet::new();
        for v in &vars {
            if v.is_empty() || !v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(Error::invalid(format!("bad variable name {v:?}")));
            }
            if v.chars().next().unwrap().is_ascii_digit() {
                return Err(Error::invalid(format!("variable name {v:?} starts with a digit")));
            }
            if !seen.insert(v.clone()) {
                return Err(Error::invalid(format!("duplicate variable name {v:?}")));
            }
        }
        if let MonomialOrder::Elimination(k) = order {
            if k == 0 || k >= vars.len() {
                return Err(Error::invalid(format!(
                    "elimination block size {k} out of range for {} variables",
                    vars.len()
                )));
            }
        }
        if let MonomialOrder::Weighted(w) = &order {
            if w.len() != vars.len() {
                return Err(Error::invalid("weight vector length mismatch".to_string()));
            }
        }
        Ok(Arc::new(RingSpec {
            fp: Fp::new(p),
            vars,
            order,
        }))
    }

    /// Grevlex ring over GF(32003) with the given variable names.
    pub fn grevlex(vars: &[&str]) -> Ring {
        RingSpec::new(
            DEFAULT_CHARACTERISTIC,
            vars.iter().map(|s| s.to_string()).collect(),
            MonomialOrder::Grevlex,
        )
        .expect("valid ring")
    }

    pub fn grevlex_char(p: u32, vars: &[&str]) -> Result<Ring> {
        RingSpec::new(p, vars.iter().map(|s| s.to_string()).collect(), MonomialOrder::Grevlex)
    }

    #[inline]
    pub fn fp(&self) -> Fp {
        self.fp
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.fp.prime()
    }

    #[inline]
    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    #[inline]
    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    #[inline]
    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    /// Same variables and characteristic, different order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<Ring> {
        RingSpec::new(self.characteristic(), self.vars.clone(), order)
    }

    /// Extends the ring by fresh variables placed in front (used for the
    /// elimination tricks); returns the extended ring.
    pub fn extend_front(&self, new_vars: &[&str], order: MonomialOrder) -> Result<Ring> {
        let mut vars: Vec<String> = new_vars.iter().map(|s| s.to_string()).collect();
        vars.extend(self.vars.iter().cloned());
        RingSpec::new(self.characteristic(), vars, order)
    }
}

pub fn same_ring(a: &Ring, b: &Ring) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::RingMismatch)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_bad_blocks() {
        assert!(RingSpec::new(32003, vec!["x".into(), "x".into()], MonomialOrder::Grevlex).is_err());
        assert!(RingSpec::new(
            32003,
            vec!["x".into(), "y".into()],
            MonomialOrder::Elimination(2)
        )
        .is_err());
        assert!(RingSpec::new(32004, vec!["x".into()], MonomialOrder::Grevlex).is_err());
    }

    #[test]
    fn extend_front_keeps_old_vars() {
        let r = RingSpec::grevlex(&["x", "y"]);
        let e = r.extend_front(&["t"], MonomialOrder::Elimination(1)).unwrap();
        assert_eq!(e.vars(), &["t".to_string(), "x".to_string(), "y".to_string()]);
    }
}
