//! Exact multivariate polynomials in canonical form.
//!
//! Terms are kept strictly descending under the ring's order with no zero
//! coefficients. In a quotient ring the stored representative is the normal
//! form modulo the quotient Groebner basis.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num::{BigRational, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::groebner::normal_form_terms;
use crate::order::Monomial;
use crate::ring::{same_ring, PolyRing};

/// A single nonzero term.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Term {
    pub monomial: Monomial,
    pub coefficient: BigRational,
}

#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<(Monomial, BigRational)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Polynomial {
        Polynomial {
            ring: Arc::clone(ring),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<PolyRing>, value: BigRational) -> Polynomial {
        if value.is_zero() {
            return Polynomial::zero(ring);
        }
        Polynomial {
            ring: Arc::clone(ring),
            terms: vec![(Monomial::constant(ring.var_count()), value)],
        }
    }

    pub fn from_int(ring: &Arc<PolyRing>, value: i64) -> Polynomial {
        Polynomial::constant(ring, BigRational::from_integer(value.into()))
    }

    pub fn variable(ring: &Arc<PolyRing>, index: usize) -> Result<Polynomial> {
        if index >= ring.var_count() {
            return Err(Error::invalid(format!(
                "variable index {} out of range",
                index
            )));
        }
        Ok(Polynomial {
            ring: Arc::clone(ring),
            terms: vec![(
                Monomial::variable(ring.var_count(), index),
                BigRational::one(),
            )],
        })
    }

    /// Builds a polynomial from arbitrary (monomial, coefficient) pairs,
    /// canonicalizing and reducing modulo the quotient ideal if present.
    pub fn from_terms(
        ring: &Arc<PolyRing>,
        terms: Vec<(Monomial, BigRational)>,
    ) -> Result<Polynomial> {
        let n = ring.var_count();
        for (m, _) in &terms {
            if m.len() != n {
                return Err(Error::invalid(format!(
                    "exponent vector of length {} in a ring with {} variables",
                    m.len(),
                    n
                )));
            }
        }
        let mut map: HashMap<Monomial, BigRational> = HashMap::new();
        for (m, c) in terms {
            if c.is_zero() {
                continue;
            }
            match map.entry(m) {
                std::collections::hash_map::Entry::Occupied(mut e) => {
                    let sum = e.get() + &c;
                    if sum.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = sum;
                    }
                }
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
            }
        }
        let mut collected: Vec<(Monomial, BigRational)> = map.into_iter().collect();
        collected.sort_by(|a, b| ring.cmp_monomials(&b.0, &a.0));
        Ok(Polynomial::reduced(ring, collected))
    }

    /// Wraps terms that are already canonical for `ring`, reducing modulo
    /// the quotient ideal when one is present.
    pub(crate) fn reduced(ring: &Arc<PolyRing>, terms: Vec<(Monomial, BigRational)>) -> Polynomial {
        let terms = match ring.quotient_gb() {
            Some(gb) => normal_form_terms(terms, gb.generators(), ring.order()),
            None => terms,
        };
        Polynomial {
            ring: Arc::clone(ring),
            terms,
        }
    }

    /// Wraps terms known to be canonical and already quotient-reduced.
    pub(crate) fn from_canonical(
        ring: &Arc<PolyRing>,
        terms: Vec<(Monomial, BigRational)>,
    ) -> Polynomial {
        Polynomial {
            ring: Arc::clone(ring),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_constant())
    }

    /// The maximal term under the ring's order.
    pub fn lead_term(&self) -> Result<Term> {
        let (m, c) = self.terms.first().ok_or(Error::ZeroPolynomial)?;
        Ok(Term {
            monomial: m.clone(),
            coefficient: c.clone(),
        })
    }

    pub fn lead_monomial(&self) -> Result<&Monomial> {
        Ok(&self.terms.first().ok_or(Error::ZeroPolynomial)?.0)
    }

    pub fn lead_coeff(&self) -> Result<&BigRational> {
        Ok(&self.terms.first().ok_or(Error::ZeroPolynomial)?.1)
    }

    /// Maximal total degree over all terms; zero for the zero polynomial.
    pub fn total_degree(&self) -> u64 {
        self.terms
            .iter()
            .map(|(m, _)| m.total_degree())
            .max()
            .unwrap_or(0)
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(self * other)
    }

    pub fn scaled(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: Arc::clone(&self.ring),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    /// Divides by the lead coefficient.
    pub fn monic(&self) -> Result<Polynomial> {
        let lc = self.lead_coeff()?.clone();
        Ok(self.scaled(&lc.recip()))
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::constant(&self.ring, BigRational::one());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Merge of two canonical term lists; shared by add/sub.
    fn merged(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match self.ring.cmp_monomials(ma, mb) {
                Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mb.clone(), if negate { -cb } else { cb.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { ca - cb } else { ca + cb };
                    if !c.is_zero() {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        for (m, c) in &self.terms[i..] {
            out.push((m.clone(), c.clone()));
        }
        for (m, c) in &other.terms[j..] {
            out.push((m.clone(), if negate { -c } else { c.clone() }));
        }
        // sums of normal forms stay normal forms; no quotient reduction needed
        Polynomial {
            ring: Arc::clone(&self.ring),
            terms: out,
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert!(same_ring(&self.ring, &rhs.ring), "ring mismatch");
        self.merged(rhs, false)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert!(same_ring(&self.ring, &rhs.ring), "ring mismatch");
        self.merged(rhs, true)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: Arc::clone(&self.ring),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert!(same_ring(&self.ring, &rhs.ring), "ring mismatch");
        let mut map: HashMap<Monomial, BigRational> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match map.entry(m) {
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        let sum = e.get() + &c;
                        if sum.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = sum;
                        }
                    }
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                }
            }
        }
        let mut terms: Vec<(Monomial, BigRational)> = map.into_iter().collect();
        terms.sort_by(|a, b| self.ring.cmp_monomials(&b.0, &a.0));
        Polynomial::reduced(&self.ring, terms)
    }
}

/// Substitutes `images` for the variables of `q` and expands exactly.
pub fn evaluate_map(q: &Polynomial, images: &[Polynomial]) -> Result<Polynomial> {
    if q.ring().var_count() != images.len() {
        return Err(Error::ArityMismatch(format!(
            "{} presentation variables, {} images",
            q.ring().var_count(),
            images.len()
        )));
    }
    let target = images
        .first()
        .ok_or_else(|| Error::ArityMismatch("no images supplied".into()))?
        .ring();
    for g in images {
        if !same_ring(g.ring(), target) {
            return Err(Error::RingMismatch);
        }
    }
    let mut powers: HashMap<(usize, u32), Polynomial> = HashMap::new();
    let mut result = Polynomial::zero(target);
    for (m, c) in q.terms() {
        let mut prod = Polynomial::constant(target, c.clone());
        for (i, &e) in m.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let p = powers
                .entry((i, e))
                .or_insert_with(|| images[i].pow(e))
                .clone();
            prod = &prod * &p;
        }
        result = &result + &prod;
    }
    Ok(result)
}

/// Polynomials whose monomials avoid the variables of the order's first
/// `block_index` blocks.
pub fn select_in_subring(block_index: usize, polys: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let Some(first) = polys.first() else {
        return Ok(Vec::new());
    };
    let ring = first.ring();
    let vars = ring
        .order()
        .leading_block_vars(block_index, ring.var_count())?;
    Ok(polys
        .iter()
        .filter(|p| {
            p.terms()
                .iter()
                .all(|(m, _)| vars.iter().all(|&i| m.exps()[i] == 0))
        })
        .cloned()
        .collect())
}

fn write_coefficient(f: &mut fmt::Formatter<'_>, c: &BigRational) -> fmt::Result {
    write!(f, "{}", c.numer())?;
    if !c.denom().is_one() {
        write!(f, "/{}", c.denom())?;
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let abs = c.abs();
            if m.is_constant() {
                write_coefficient(f, &abs)?;
                continue;
            }
            let mut lead_factor = false;
            if !abs.is_one() {
                write_coefficient(f, &abs)?;
                lead_factor = true;
            }
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if lead_factor {
                    write!(f, "*")?;
                }
                write!(f, "{}", self.ring.vars()[i])?;
                if e > 1 {
                    write!(f, "^{}", e)?;
                }
                lead_factor = true;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::MonomialOrder;

    fn ring_xy() -> Arc<PolyRing> {
        PolyRing::new(vec!["x".into(), "y".into()], MonomialOrder::GRevLex).unwrap()
    }

    fn poly(ring: &Arc<PolyRing>, s: &str) -> Polynomial {
        crate::parse::parse_polynomial(s, ring).unwrap()
    }

    #[test]
    fn addition_identities() {
        let r = ring_xy();
        let f = poly(&r, "x^2+3*y");
        assert_eq!(&f + &Polynomial::zero(&r), f);
        assert!((&f + &(-&f)).is_zero());
        let sum = &poly(&r, "x+y") + &poly(&r, "x-y");
        assert_eq!(sum, poly(&r, "2*x"));
    }

    #[test]
    fn multiplication_expands_exactly() {
        let r = ring_xy();
        let prod = &poly(&r, "x^2+x") * &poly(&r, "y^2+1");
        assert_eq!(prod, poly(&r, "x^2*y^2+x^2+x*y^2+x"));
        let f = poly(&r, "x^3-2*y");
        assert_eq!(&f * &Polynomial::from_int(&r, 1), f);
    }

    #[test]
    fn quotient_ring_reduces_products() {
        let base = PolyRing::new(
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
            MonomialOrder::Lex,
        )
        .unwrap();
        let ideal = poly(&base, "a*d-b*c-1");
        let q = PolyRing::quotient_of(&base, vec![ideal]).unwrap();
        let prod = &poly(&q, "a") * &poly(&q, "d");
        assert_eq!(prod, poly(&q, "b*c+1"));
    }

    #[test]
    fn lead_terms_follow_the_order() {
        let r3 = PolyRing::new(
            vec!["x_1".into(), "x_2".into(), "x_3".into()],
            MonomialOrder::GRevLex,
        )
        .unwrap();
        let f = poly(&r3, "x_1^3+x_2^3+x_3^3");
        assert_eq!(
            f.lead_term().unwrap().monomial,
            Monomial::new(vec![3, 0, 0])
        );

        let c = Polynomial::from_int(&r3, 5);
        let t = c.lead_term().unwrap();
        assert!(t.monomial.is_constant());
        assert_eq!(t.coefficient, BigRational::from_integer(5.into()));

        assert!(Polynomial::zero(&r3).lead_term().is_err());
    }

    #[test]
    fn lex_lead_term_in_larger_ring() {
        let vars: Vec<String> = ["a", "b", "c", "d", "u_1", "v_1"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let r = PolyRing::new(vars, MonomialOrder::Lex).unwrap();
        let f = poly(&r, "a*u_1+b*v_1");
        assert_eq!(
            f.lead_term().unwrap().monomial,
            poly(&r, "a*u_1").lead_term().unwrap().monomial
        );
    }

    #[test]
    fn evaluate_map_substitutes_generators() {
        let r3 = PolyRing::new(
            vec!["x_1".into(), "x_2".into(), "x_3".into()],
            MonomialOrder::GRevLex,
        )
        .unwrap();
        let e1 = poly(&r3, "x_1+x_2+x_3");
        let e2 = poly(&r3, "x_1*x_2+x_1*x_3+x_2*x_3");
        let e3 = poly(&r3, "x_1*x_2*x_3");
        let pres = PolyRing::new(
            vec!["g_1".into(), "g_2".into(), "g_3".into()],
            MonomialOrder::GRevLex,
        )
        .unwrap();
        let q = poly(&pres, "g_1^4-4*g_1^2*g_2+2*g_2^2+4*g_1*g_3");
        let value = evaluate_map(&q, &[e1.clone(), e2, e3]).unwrap();
        assert_eq!(value, poly(&r3, "x_1^4+x_2^4+x_3^4"));

        let single = poly(&pres, "g_1");
        let id = evaluate_map(&single, &[e1.clone(), poly(&r3, "x_2"), poly(&r3, "x_3")]).unwrap();
        assert_eq!(id, e1);
    }

    #[test]
    fn evaluate_map_kills_binomial_syzygy() {
        let r3 = PolyRing::new(
            vec!["x_1".into(), "x_2".into(), "x_3".into()],
            MonomialOrder::GRevLex,
        )
        .unwrap();
        let pres = PolyRing::new(
            vec!["y_1".into(), "y_2".into(), "y_3".into()],
            MonomialOrder::GRevLex,
        )
        .unwrap();
        let q = poly(&pres, "y_1*y_3-y_2^2");
        let value = evaluate_map(
            &q,
            &[
                poly(&r3, "x_1"),
                poly(&r3, "x_1*x_2"),
                poly(&r3, "x_1*x_2^2"),
            ],
        )
        .unwrap();
        assert!(value.is_zero());
    }

    #[test]
    fn evaluate_map_checks_arity() {
        let r = ring_xy();
        let pres = PolyRing::new(vec!["y_1".into(), "y_2".into()], MonomialOrder::GRevLex).unwrap();
        let q = poly(&pres, "y_1+y_2");
        assert!(matches!(
            evaluate_map(&q, &[poly(&r, "x")]),
            Err(Error::ArityMismatch(_))
        ));
    }

    #[test]
    fn select_in_subring_filters_by_block_support() {
        let vars: Vec<String> = ["t_1", "t_2", "t_3", "w_1"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let r = PolyRing::new(
            vars,
            MonomialOrder::Eliminate {
                block: 3,
                tie: Box::new(MonomialOrder::Lex),
            },
        )
        .unwrap();
        let t1 = poly(&r, "t_1");
        let w1 = poly(&r, "w_1");
        let kept = select_in_subring(1, &[t1, w1.clone()]).unwrap();
        assert_eq!(kept, vec![w1]);
        assert!(select_in_subring(1, &[]).unwrap().is_empty());
    }

    #[test]
    fn select_in_subring_requires_block_structure() {
        let r = ring_xy();
        let f = poly(&r, "x");
        assert!(select_in_subring(1, &[f]).is_err());
    }

    #[test]
    fn operations_reject_foreign_rings() {
        let r1 = ring_xy();
        let r2 = PolyRing::new(vec!["x".into(), "y".into()], MonomialOrder::Lex).unwrap();
        let f = poly(&r1, "x+y");
        let g = poly(&r2, "x+y");
        assert!(matches!(f.checked_add(&g), Err(Error::RingMismatch)));
        assert!(matches!(f.checked_mul(&g), Err(Error::RingMismatch)));
        assert!(matches!(f.checked_sub(&g), Err(Error::RingMismatch)));
    }

    #[test]
    fn printer_round_trip_examples() {
        let r = ring_xy();
        for s in ["0", "x*y^6+x*y^5", "-x^2+1/2*y", "3", "x-y"] {
            let f = poly(&r, s);
            assert_eq!(format!("{}", f), s);
        }
    }
}
