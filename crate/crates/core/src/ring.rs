//! Polynomial rings over Q, optionally modulo an ideal.
//!
//! A quotient ring stores the complete reduced Groebner basis of its ideal,
//! computed once at construction; every polynomial of the ring is held as
//! the normal form modulo that basis, so lead terms are well defined in the
//! quotient.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{buchberger, GroebnerBasis};
use crate::order::{Monomial, MonomialOrder};
use crate::poly::Polynomial;

#[derive(Debug)]
pub struct PolyRing {
    vars: Vec<String>,
    order: MonomialOrder,
    quotient: Option<Quotient>,
}

#[derive(Debug)]
pub(crate) struct Quotient {
    pub gens: Vec<Polynomial>,
    pub gb: GroebnerBasis,
}

impl PartialEq for PolyRing {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars
            && self.order == other.order
            && match (&self.quotient, &other.quotient) {
                (None, None) => true,
                (Some(a), Some(b)) => a.gens == b.gens,
                _ => false,
            }
    }
}

impl Eq for PolyRing {}

impl PolyRing {
    /// A polynomial ring with the given variables, greatest first.
    pub fn new(vars: Vec<String>, order: MonomialOrder) -> Result<Arc<PolyRing>> {
        if vars.is_empty() {
            return Err(Error::invalid("a ring needs at least one variable"));
        }
        for (i, v) in vars.iter().enumerate() {
            if v.is_empty() {
                return Err(Error::invalid("empty variable name"));
            }
            if vars[..i].contains(v) {
                return Err(Error::invalid(format!("duplicate variable `{}`", v)));
            }
        }
        order.validate(vars.len())?;
        // global order check: every variable exceeds the empty monomial
        let zero = Monomial::constant(vars.len());
        for i in 0..vars.len() {
            let xi = Monomial::variable(vars.len(), i);
            if order.compare(&xi, &zero)? != Ordering::Greater {
                return Err(Error::invalid(format!(
                    "order is not global: variable `{}` does not exceed 1",
                    vars[i]
                )));
            }
        }
        Ok(Arc::new(PolyRing {
            vars,
            order,
            quotient: None,
        }))
    }

    /// The quotient of `base` by the ideal generated by `ideal_gens`.
    ///
    /// The generators must live in `base`, which must itself be a plain
    /// polynomial ring.
    pub fn quotient_of(base: &Arc<PolyRing>, ideal_gens: Vec<Polynomial>) -> Result<Arc<PolyRing>> {
        if base.quotient.is_some() {
            return Err(Error::invalid("cannot take a quotient of a quotient ring"));
        }
        let gens: Vec<Polynomial> = ideal_gens.into_iter().filter(|g| !g.is_zero()).collect();
        if gens.is_empty() {
            return Err(Error::invalid("quotient ideal has no nonzero generators"));
        }
        for g in &gens {
            if !same_ring(g.ring(), base) {
                return Err(Error::RingMismatch);
            }
        }
        let gb = buchberger(&gens, None)?;
        if gb.generators().iter().any(|g| g.is_constant()) {
            return Err(Error::invalid("quotient ideal is the unit ideal"));
        }
        Ok(Arc::new(PolyRing {
            vars: base.vars.clone(),
            order: base.order.clone(),
            quotient: Some(Quotient { gens, gb }),
        }))
    }

    pub fn var_count(&self) -> usize {
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

    pub fn is_quotient(&self) -> bool {
        self.quotient.is_some()
    }

    /// Generators of the quotient ideal, if any.
    pub fn quotient_generators(&self) -> Option<&[Polynomial]> {
        self.quotient.as_ref().map(|q| q.gens.as_slice())
    }

    /// The complete reduced Groebner basis of the quotient ideal, if any.
    pub fn quotient_gb(&self) -> Option<&GroebnerBasis> {
        self.quotient.as_ref().map(|q| &q.gb)
    }

    /// A quotient-free ring with the same variables and order.
    pub fn base_ring(self: &Arc<Self>) -> Arc<PolyRing> {
        match &self.quotient {
            None => Arc::clone(self),
            Some(q) => Arc::clone(q.gens[0].ring()),
        }
    }

    pub(crate) fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp_slices(a.exps(), b.exps())
    }
}

/// Whether two ring handles denote the same ring.
pub fn same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicate_variables() {
        assert!(PolyRing::new(vec!["x".into(), "x".into()], MonomialOrder::GRevLex).is_err());
    }

    #[test]
    fn rejects_bad_weight_length() {
        assert!(PolyRing::new(
            vec!["x".into(), "y".into()],
            MonomialOrder::weights(vec![1])
        )
        .is_err());
    }

    #[test]
    fn structural_equality_across_handles() {
        let r1 = PolyRing::new(vec!["x".into(), "y".into()], MonomialOrder::GRevLex).unwrap();
        let r2 = PolyRing::new(vec!["x".into(), "y".into()], MonomialOrder::GRevLex).unwrap();
        assert!(same_ring(&r1, &r2));
        let r3 = PolyRing::new(vec!["x".into(), "y".into()], MonomialOrder::Lex).unwrap();
        assert!(!same_ring(&r1, &r3));
    }
}
