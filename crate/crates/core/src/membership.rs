//! Normal forms modulo a subring, membership testing, and intersections.
//!
//! The intrinsic route subducts against a known (partial) subalgebra basis.
//! The extrinsic route eliminates the ambient variables from the ideal
//! `I + (y_i - g_i)` in a tag ring: the normal form of `f` splits into an
//! x-free part `h_y` and a mixed part, and `r = f - h_y(g)` is a remainder
//! with `f - r` in the algebra and `r = 0` exactly on membership.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{buchberger_weighted, normal_form_terms, TagIdeal};
use crate::order::{Monomial, MonomialOrder};
use crate::poly::{evaluate_map, select_in_subring, Polynomial};
use crate::ring::{same_ring, PolyRing};
use crate::sagbi::{sagbi, GbMode, SagbiBasis, Subducer};
use crate::subring::{SagbiOptions, Subring};
use crate::trace::Trace;

/// Elimination basis for the full tag ideal of a subring, cached per
/// subring so repeated membership queries share one Groebner computation.
#[derive(Debug)]
pub struct ExtrinsicTag {
    tag: TagIdeal,
    gb: Vec<Polynomial>,
}

impl ExtrinsicTag {
    pub(crate) fn build(
        ambient: &Arc<PolyRing>,
        gens: &[Polynomial],
        symbol: &str,
    ) -> Result<ExtrinsicTag> {
        let tag = TagIdeal::from_polynomials(ambient, gens, symbol)?;
        let gb = buchberger_weighted(&tag.gens, None, &tag.weights, 0)?;
        Ok(ExtrinsicTag {
            gb: gb.generators().to_vec(),
            tag,
        })
    }

    fn reduce(&self, f: &Polynomial) -> Polynomial {
        let lifted = self.tag.lift(f);
        let nf = normal_form_terms(lifted.terms().to_vec(), &self.gb, self.tag.tag_ring.order());
        Polynomial::from_canonical(&self.tag.tag_ring, nf)
    }
}

/// Either a subring or a computation object, as accepted by `normal_form`.
#[derive(Clone, Copy)]
pub enum SubringLike<'a> {
    Subring(&'a Subring),
    Basis(&'a SagbiBasis),
}

impl<'a> From<&'a Subring> for SubringLike<'a> {
    fn from(s: &'a Subring) -> Self {
        SubringLike::Subring(s)
    }
}

impl<'a> From<&'a SagbiBasis> for SubringLike<'a> {
    fn from(b: &'a SagbiBasis) -> Self {
        SubringLike::Basis(b)
    }
}

fn extrinsic(subring: &Subring) -> Result<Arc<ExtrinsicTag>> {
    subring.extrinsic_tag(|| {
        ExtrinsicTag::build(
            subring.ambient_ring(),
            subring.generators(),
            subring.generator_symbol(),
        )
    })
}

fn extrinsic_split(subring: &Subring, f: &Polynomial) -> Result<(Polynomial, Polynomial, bool)> {
    if !same_ring(f.ring(), subring.ambient_ring()) {
        return Err(Error::RingMismatch);
    }
    let ext = extrinsic(subring)?;
    let h = ext.reduce(f);
    let (h_y, rest) = ext.tag.split_y(&h);
    let in_subring = rest.is_empty();
    let value = if h_y.is_zero() {
        Polynomial::zero(f.ring())
    } else {
        evaluate_map(&h_y, subring.generators())?
    };
    let r = f - &value;
    Ok((r, h_y, in_subring))
}

/// The normal form of `f` modulo a subring (the paper's `f % S`).
///
/// Against a computation object, or a subring whose cached computation is
/// complete, `f` is subducted against the (partial) subalgebra basis;
/// otherwise the extrinsic Groebner route is used.
pub fn normal_form<'a>(f: &Polynomial, s: impl Into<SubringLike<'a>>) -> Result<Polynomial> {
    match s.into() {
        SubringLike::Basis(b) => {
            if !same_ring(f.ring(), b.ambient_ring()) {
                return Err(Error::RingMismatch);
            }
            crate::sagbi::subduct(b.generators(), f)
        }
        SubringLike::Subring(sub) => {
            if let Some(cached) = sub.cached_basis() {
                if cached.is_complete() {
                    if !same_ring(f.ring(), sub.ambient_ring()) {
                        return Err(Error::RingMismatch);
                    }
                    return crate::sagbi::subduct(cached.generators(), f);
                }
            }
            Ok(extrinsic_split(sub, f)?.0)
        }
    }
}

/// The factorization `q` with `f = q(g_1, ..., g_s) + r` (the paper's
/// `f // S`), in the presentation ring named by the subring's generator
/// symbol. The intrinsic path records the subduction's factorization over
/// the cached basis; the extrinsic path returns the x-free part of the tag
/// normal form over the original generators.
pub fn quotient_coefficients(f: &Polynomial, subring: &Subring) -> Result<Polynomial> {
    if !same_ring(f.ring(), subring.ambient_ring()) {
        return Err(Error::RingMismatch);
    }
    if let Some(cached) = subring.cached_basis() {
        if cached.is_complete() {
            let mut sub = Subducer::new(
                subring.ambient_ring(),
                cached.generators(),
                subring.generator_symbol(),
                GbMode::Full,
            )?;
            let (_, q) = sub.subduct(f, &mut Trace::silent())?;
            return Ok(q);
        }
    }
    Ok(extrinsic_split(subring, f)?.1)
}

/// Extrinsic membership test: `f` lies in the subring exactly when its
/// normal form modulo the full tag ideal is free of ambient variables.
pub fn groebner_membership_test(f: &Polynomial, subring: &Subring) -> Result<bool> {
    Ok(extrinsic_split(subring, f)?.2)
}

/// Intersection of two subrings of one ambient (quotient) ring.
#[derive(Debug)]
pub struct IntersectedSubring {
    ambient: Arc<PolyRing>,
    generators: Vec<Polynomial>,
    originals: (Subring, Subring),
    certified: bool,
}

impl IntersectedSubring {
    pub fn ambient_ring(&self) -> &Arc<PolyRing> {
        &self.ambient
    }

    /// Generators of the computed intersection, mapped back to the ambient
    /// ring; they always lie in both original subrings.
    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn originals(&self) -> (&Subring, &Subring) {
        (&self.originals.0, &self.originals.1)
    }

    /// The subring on the computed generators, when any are non-constant.
    pub fn base_subring(&self) -> Option<Subring> {
        Subring::new(self.generators.clone()).ok()
    }

    pub fn is_certified(&self) -> bool {
        self.certified
    }
}

/// True when the auxiliary computation completed, in which case the
/// generators generate the full intersection and are a subalgebra basis
/// for it.
pub fn is_full_intersection(intersection: &IntersectedSubring) -> bool {
    intersection.certified
}

/// Computes generators for the intersection by adjoining one auxiliary
/// idempotent variable `t` (so `t^2 = t`, splitting the extended ring into
/// two factors) greatest in an elimination block, running sagbi on
/// `{t f_i} and {(1 - t) g_j}` up to the option limit, and reading off the
/// t-free basis elements: those are exactly the diagonal, i.e. the
/// intersection.
pub fn subring_intersection(
    s1: &Subring,
    s2: &Subring,
    options: &SagbiOptions,
) -> Result<IntersectedSubring> {
    let ambient = s1.ambient_ring();
    if !same_ring(ambient, s2.ambient_ring()) {
        return Err(Error::RingMismatch);
    }
    let mut tname = "t".to_string();
    while ambient.vars().contains(&tname) {
        tname.push('t');
    }
    let mut vars = vec![tname];
    vars.extend(ambient.vars().iter().cloned());
    let n = ambient.var_count();
    let order = MonomialOrder::Eliminate {
        block: 1,
        tie: Box::new(MonomialOrder::Blocks(vec![
            (1, MonomialOrder::Lex),
            (n, ambient.order().clone()),
        ])),
    };
    let ext_base = PolyRing::new(vars, order)?;
    let lift = |ring: &Arc<PolyRing>, f: &Polynomial| -> Result<Polynomial> {
        let terms = f
            .terms()
            .iter()
            .map(|(m, c)| {
                let mut e = Vec::with_capacity(n + 1);
                e.push(0);
                e.extend_from_slice(m.exps());
                (Monomial::new(e), c.clone())
            })
            .collect();
        Polynomial::from_terms(ring, terms)
    };
    let t_base = Polynomial::variable(&ext_base, 0)?;
    let mut ideal = vec![&(&t_base * &t_base) - &t_base];
    if let Some(ambient_ideal) = ambient.quotient_generators() {
        for g in ambient_ideal {
            ideal.push(lift(&ext_base, g)?);
        }
    }
    let ext_ring = PolyRing::quotient_of(&ext_base, ideal)?;
    let t = Polynomial::variable(&ext_ring, 0)?;
    let one_minus_t = &Polynomial::from_int(&ext_ring, 1) - &t;
    let mut gens = Vec::new();
    for f in s1.generators() {
        gens.push(&t * &lift(&ext_ring, f)?);
    }
    for g in s2.generators() {
        gens.push(&one_minus_t * &lift(&ext_ring, g)?);
    }
    let aux = Subring::new(gens)?;
    let basis = sagbi(&aux, options)?;
    let certified = basis.is_complete();
    let t_free = select_in_subring(1, basis.generators())?;
    let generators: Vec<Polynomial> = t_free
        .iter()
        .map(|p| {
            let terms = p
                .terms()
                .iter()
                .map(|(m, c)| (Monomial::new(m.exps()[1..].to_vec()), c.clone()))
                .collect();
            Polynomial::from_canonical(ambient, terms)
        })
        .collect();
    Ok(IntersectedSubring {
        ambient: Arc::clone(ambient),
        generators,
        originals: (s1.clone(), s2.clone()),
        certified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use crate::sagbi::sagbi;

    fn ring(vars: &[&str], order: MonomialOrder) -> Arc<PolyRing> {
        PolyRing::new(vars.iter().map(|s| s.to_string()).collect(), order).unwrap()
    }

    fn poly(r: &Arc<PolyRing>, s: &str) -> Polynomial {
        parse_polynomial(s, r).unwrap()
    }

    fn polys(r: &Arc<PolyRing>, ss: &[&str]) -> Vec<Polynomial> {
        ss.iter().map(|s| poly(r, s)).collect()
    }

    #[test]
    fn normal_form_of_member_vanishes() {
        let r = ring(&["x_1", "x_2", "x_3"], MonomialOrder::GRevLex);
        let subring = Subring::new(polys(
            &r,
            &["x_1+x_2+x_3", "x_1^2+x_2^2+x_3^2", "x_1^3+x_2^3+x_3^3"],
        ))
        .unwrap();
        sagbi(&subring, &SagbiOptions::default()).unwrap();
        let f = poly(&r, "x_1^4+x_2^4+x_3^4");
        assert!(normal_form(&f, &subring).unwrap().is_zero());
    }

    #[test]
    fn generator_has_zero_normal_form_extrinsically() {
        let r = ring(&["x", "y"], MonomialOrder::GRevLex);
        let subring = Subring::new(polys(&r, &["x^2+y", "y^3"])).unwrap();
        let f = poly(&r, "x^2+y");
        assert!(normal_form(&f, &subring).unwrap().is_zero());
    }

    #[test]
    fn extrinsic_remainder_for_non_member() {
        let r = ring(&["x", "y"], MonomialOrder::GRevLex);
        let subring = Subring::with_symbol(polys(&r, &["x^2"]), "g").unwrap();
        let x = poly(&r, "x");
        assert_eq!(normal_form(&x, &subring).unwrap(), x);
        assert!(quotient_coefficients(&x, &subring).unwrap().is_zero());
        assert!(!groebner_membership_test(&x, &subring).unwrap());
    }

    #[test]
    fn quotient_coefficients_for_power_sum() {
        let r = ring(&["x_1", "x_2", "x_3"], MonomialOrder::GRevLex);
        let basis_gens = polys(
            &r,
            &["x_1+x_2+x_3", "x_1*x_2+x_1*x_3+x_2*x_3", "x_1*x_2*x_3"],
        );
        let subring = Subring::with_symbol(basis_gens, "g").unwrap();
        let f = poly(&r, "x_1^4+x_2^4+x_3^4");
        let q = quotient_coefficients(&f, &subring).unwrap();
        let pres = q.ring();
        assert_eq!(
            q,
            parse_polynomial("g_1^4-4*g_1^2*g_2+2*g_2^2+4*g_1*g_3", pres).unwrap()
        );
        // q(g) recovers f exactly
        let value = evaluate_map(&q, subring.generators()).unwrap();
        assert_eq!(value, f);

        // a generator presents as its own variable
        let g1 = subring.generators()[0].clone();
        let q1 = quotient_coefficients(&g1, &subring).unwrap();
        assert_eq!(q1, parse_polynomial("g_1", q1.ring()).unwrap());
    }

    #[test]
    fn membership_for_partial_basis_algebra() {
        let r = ring(&["x", "y"], MonomialOrder::GRevLex);
        let subring = Subring::new(polys(&r, &["x+y", "x*y", "x*y^2"])).unwrap();
        let f = poly(&r, "x*y^3+x*y^4+x*y^5+x*y^6");
        assert!(groebner_membership_test(&f, &subring).unwrap());
        let constant = poly(&r, "5");
        assert!(groebner_membership_test(&constant, &subring).unwrap());
    }

    #[test]
    fn intersection_of_disjoint_univariate_subrings_is_trivial() {
        let r = ring(&["x", "y"], MonomialOrder::GRevLex);
        let s1 = Subring::new(polys(&r, &["x"])).unwrap();
        let s2 = Subring::new(polys(&r, &["y"])).unwrap();
        // the auxiliary basis is infinite here, so certification cannot
        // succeed at any limit; the t-free generators must still be trivial
        let inter = subring_intersection(&s1, &s2, &SagbiOptions::with_limit(6)).unwrap();
        assert!(!is_full_intersection(&inter));
        assert!(inter.generators().iter().all(|g| g.is_constant()));
    }

    #[test]
    fn intersection_generators_lie_in_both_subrings() {
        let r = ring(&["x", "y"], MonomialOrder::GRevLex);
        let s1 = Subring::new(polys(&r, &["x^2", "x*y"])).unwrap();
        let s2 = Subring::new(polys(&r, &["x", "y^2"])).unwrap();
        let inter = subring_intersection(&s1, &s2, &SagbiOptions::with_limit(6)).unwrap();
        let gens = inter.generators();
        assert!(!gens.is_empty());
        for g in gens {
            assert!(groebner_membership_test(g, &s1).unwrap());
            assert!(groebner_membership_test(g, &s2).unwrap());
        }
        assert!(gens.contains(&poly(&r, "x^2")));
    }

    #[test]
    fn quotient_ring_intersection_certifies() {
        let base = ring(&["x", "y"], MonomialOrder::GRevLex);
        let quotient = PolyRing::quotient_of(&base, vec![poly(&base, "x^3+x*y^2+y^3")]).unwrap();
        let s1 = Subring::new(polys(&quotient, &["x^2", "x*y"])).unwrap();
        let s2 = Subring::new(polys(&quotient, &["x", "y^2"])).unwrap();
        let inter = subring_intersection(&s1, &s2, &SagbiOptions::default()).unwrap();
        assert!(is_full_intersection(&inter));
        let expected = polys(
            &quotient,
            &["x^2", "x^2*y^2+x*y^3", "y^4", "x*y^3", "y^6", "x*y^5"],
        );
        let gens = inter.generators();
        assert_eq!(gens.len(), expected.len());
        // lead monomials agree; tails are processing-order artifacts, so the
        // sets are compared by mutual membership
        let mut expected_leads: Vec<&Monomial> = expected
            .iter()
            .map(|g| g.lead_monomial().unwrap())
            .collect();
        let mut got_leads: Vec<&Monomial> =
            gens.iter().map(|g| g.lead_monomial().unwrap()).collect();
        expected_leads.sort_by(|a, b| quotient.order().compare(a, b).unwrap());
        got_leads.sort_by(|a, b| quotient.order().compare(a, b).unwrap());
        assert_eq!(expected_leads, got_leads);
        let ours = Subring::new(gens.to_vec()).unwrap();
        let theirs = Subring::new(expected.clone()).unwrap();
        for e in &expected {
            assert!(groebner_membership_test(e, &ours).unwrap());
        }
        for g in gens {
            assert!(groebner_membership_test(g, &theirs).unwrap());
        }
    }
}
