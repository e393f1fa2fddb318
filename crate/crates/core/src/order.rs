//! Exponent vectors and global monomial orders.
//!
//! An order compares dense exponent vectors of a fixed length. All
//! constructible orders are global: every variable is strictly greater than
//! the empty monomial, which the ring constructor re-checks explicitly.

use std::cmp::Ordering;

use crate::error::{Error, Result};

/// Dense exponent vector; its length equals the ring's variable count.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    /// The empty monomial (all exponents zero).
    pub fn constant(len: usize) -> Self {
        Monomial(vec![0; len])
    }

    /// The monomial `x_i`.
    pub fn variable(len: usize, index: usize) -> Self {
        let mut exps = vec![0; len];
        exps[index] = 1;
        Monomial(exps)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn weighted_degree(&self, weights: &[u64]) -> u64 {
        self.0
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as u64 * w)
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(&a, &b)| a + b).collect())
    }

    /// Whether `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial(
                self.0.iter().zip(&other.0).map(|(&a, &b)| b - a).collect(),
            ))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        )
    }

    /// Whether the two monomials share no variable.
    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a == 0 || b == 0)
    }
}

/// A global monomial order on exponent vectors.
///
/// Composite variants interpret the vector as follows: `Weights` compares
/// weighted degrees and falls through to the tie-break on the full vector;
/// `Eliminate` compares the total degree of the first `block` entries and
/// ties on the full vector; `Blocks` splits the vector into consecutive
/// segments compared left to right, each under its own order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MonomialOrder {
    Lex,
    GRevLex,
    Weights {
        weights: Vec<u64>,
        tie: Box<MonomialOrder>,
    },
    Eliminate {
        block: usize,
        tie: Box<MonomialOrder>,
    },
    Blocks(Vec<(usize, MonomialOrder)>),
}

impl MonomialOrder {
    /// Weight order with the default GRevLex tie-break.
    pub fn weights(weights: Vec<u64>) -> Self {
        MonomialOrder::Weights {
            weights,
            tie: Box::new(MonomialOrder::GRevLex),
        }
    }

    /// Elimination order on the first `block` variables, GRevLex tie-break.
    pub fn eliminate(block: usize) -> Self {
        MonomialOrder::Eliminate {
            block,
            tie: Box::new(MonomialOrder::GRevLex),
        }
    }

    /// Checks that the order is well formed for vectors of length `n`.
    pub fn validate(&self, n: usize) -> Result<()> {
        match self {
            MonomialOrder::Lex | MonomialOrder::GRevLex => Ok(()),
            MonomialOrder::Weights { weights, tie } => {
                if weights.len() != n {
                    return Err(Error::invalid(format!(
                        "weight vector has length {} but the ring has {} variables",
                        weights.len(),
                        n
                    )));
                }
                tie.validate(n)
            }
            MonomialOrder::Eliminate { block, tie } => {
                if *block == 0 || *block > n {
                    return Err(Error::invalid(format!(
                        "elimination block of size {} is not valid for {} variables",
                        block, n
                    )));
                }
                tie.validate(n)
            }
            MonomialOrder::Blocks(parts) => {
                if parts.is_empty() {
                    return Err(Error::invalid("block order must have at least one block"));
                }
                let total: usize = parts.iter().map(|(k, _)| *k).sum();
                if total != n {
                    return Err(Error::invalid(format!(
                        "block sizes sum to {} but the ring has {} variables",
                        total, n
                    )));
                }
                for (k, sub) in parts {
                    if *k == 0 {
                        return Err(Error::invalid("empty block in block order"));
                    }
                    sub.validate(*k)?;
                }
                Ok(())
            }
        }
    }

    /// Compares two exponent vectors, checking lengths.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.len() != b.len() {
            return Err(Error::invalid(format!(
                "cannot compare exponent vectors of lengths {} and {}",
                a.len(),
                b.len()
            )));
        }
        Ok(self.cmp_slices(a.exps(), b.exps()))
    }

    /// Comparison on raw slices of equal length.
    pub(crate) fn cmp_slices(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Lex => {
                for (&x, &y) in a.iter().zip(b) {
                    match x.cmp(&y) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::GRevLex => {
                let da: u64 = a.iter().map(|&e| e as u64).sum();
                let db: u64 = b.iter().map(|&e| e as u64).sum();
                match da.cmp(&db) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
                // a > b iff the last nonzero entry of a - b is negative
                for (&x, &y) in a.iter().zip(b).rev() {
                    match x.cmp(&y) {
                        Ordering::Equal => continue,
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Weights { weights, tie } => {
                let da: u64 = a.iter().zip(weights).map(|(&e, &w)| e as u64 * w).sum();
                let db: u64 = b.iter().zip(weights).map(|(&e, &w)| e as u64 * w).sum();
                match da.cmp(&db) {
                    Ordering::Equal => tie.cmp_slices(a, b),
                    ord => ord,
                }
            }
            MonomialOrder::Eliminate { block, tie } => {
                let da: u64 = a[..*block].iter().map(|&e| e as u64).sum();
                let db: u64 = b[..*block].iter().map(|&e| e as u64).sum();
                match da.cmp(&db) {
                    Ordering::Equal => tie.cmp_slices(a, b),
                    ord => ord,
                }
            }
            MonomialOrder::Blocks(parts) => {
                let mut offset = 0;
                for (k, sub) in parts {
                    let ord = sub.cmp_slices(&a[offset..offset + k], &b[offset..offset + k]);
                    if ord != Ordering::Equal {
                        return ord;
                    }
                    offset += k;
                }
                Ordering::Equal
            }
        }
    }

    /// Variable indices covered by the first `parts` blocks of the order,
    /// as used by `select_in_subring`.
    pub fn leading_block_vars(&self, parts: usize, n: usize) -> Result<Vec<usize>> {
        if parts == 0 {
            return Err(Error::invalid("block index must be positive"));
        }
        match self {
            MonomialOrder::Eliminate { block, .. } => {
                if parts > 1 {
                    return Err(Error::invalid(
                        "elimination order exposes a single leading block",
                    ));
                }
                Ok((0..*block).collect())
            }
            MonomialOrder::Weights { weights, .. } => {
                if parts > 1 {
                    return Err(Error::invalid(
                        "weight order exposes a single leading block",
                    ));
                }
                Ok(weights
                    .iter()
                    .enumerate()
                    .filter(|(_, &w)| w > 0)
                    .map(|(i, _)| i)
                    .collect())
            }
            MonomialOrder::Blocks(blocks) => {
                if parts > blocks.len() {
                    return Err(Error::invalid(format!(
                        "order has {} blocks, requested {}",
                        blocks.len(),
                        parts
                    )));
                }
                let count: usize = blocks[..parts].iter().map(|(k, _)| *k).sum();
                Ok((0..count).collect())
            }
            MonomialOrder::Lex | MonomialOrder::GRevLex => {
                let _ = n;
                Err(Error::invalid("order has no block structure"))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(exps: &[u32]) -> Monomial {
        Monomial::new(exps.to_vec())
    }

    #[test]
    fn grevlex_prefers_earlier_variables() {
        let ord = MonomialOrder::GRevLex;
        // lead of x1^2 + x2^2 + x3^2 is x1^2
        assert_eq!(
            ord.compare(&m(&[2, 0, 0]), &m(&[0, 2, 0])).unwrap(),
            Ordering::Greater
        );
        assert_eq!(
            ord.compare(&m(&[3, 1]), &m(&[2, 2])).unwrap(),
            Ordering::Greater
        );
    }

    #[test]
    fn equal_vectors_compare_equal() {
        for ord in [MonomialOrder::Lex, MonomialOrder::GRevLex] {
            assert_eq!(
                ord.compare(&m(&[0, 0, 0]), &m(&[0, 0, 0])).unwrap(),
                Ordering::Equal
            );
        }
    }

    #[test]
    fn lex_compares_first_difference() {
        let ord = MonomialOrder::Lex;
        assert_eq!(
            ord.compare(&m(&[1, 0, 3]), &m(&[1, 1, 0])).unwrap(),
            Ordering::Less
        );
        assert_eq!(
            ord.compare(&m(&[2, 0]), &m(&[1, 9])).unwrap(),
            Ordering::Greater
        );
    }

    #[test]
    fn weight_order_ties_break_by_grevlex() {
        let ord = MonomialOrder::weights(vec![1, 1]);
        assert_eq!(
            ord.compare(&m(&[1, 1]), &m(&[0, 2])).unwrap(),
            Ordering::Greater
        );
        assert_eq!(
            ord.compare(&m(&[0, 3]), &m(&[1, 1])).unwrap(),
            Ordering::Greater
        );
    }

    #[test]
    fn eliminate_orders_block_degree_first() {
        let ord = MonomialOrder::Eliminate {
            block: 1,
            tie: Box::new(MonomialOrder::GRevLex),
        };
        // t beats any t-free monomial
        assert_eq!(
            ord.compare(&m(&[1, 0, 0]), &m(&[0, 5, 5])).unwrap(),
            Ordering::Greater
        );
    }

    #[test]
    fn length_mismatch_is_rejected() {
        let ord = MonomialOrder::Lex;
        assert!(ord.compare(&m(&[1, 0]), &m(&[1, 0, 0])).is_err());
    }

    #[test]
    fn block_vars_for_eliminate_and_blocks() {
        let elim = MonomialOrder::eliminate(3);
        assert_eq!(elim.leading_block_vars(1, 9).unwrap(), vec![0, 1, 2]);
        let blocks =
            MonomialOrder::Blocks(vec![(1, MonomialOrder::Lex), (2, MonomialOrder::GRevLex)]);
        assert_eq!(blocks.leading_block_vars(1, 3).unwrap(), vec![0]);
        assert!(MonomialOrder::GRevLex.leading_block_vars(1, 3).is_err());
    }

    #[test]
    fn weight_vector_length_is_validated() {
        let ord = MonomialOrder::weights(vec![1, 2, 3]);
        assert!(ord.validate(3).is_ok());
        assert!(ord.validate(4).is_err());
    }
}
