//! Buchberger-style Groebner engine.
//!
//! Used as the internal workhorse for quotient-ring normal forms, kernels of
//! monomial maps, elimination, and extrinsic membership. Bases are reduced,
//! monic and deterministically ordered; an optional degree bound defers
//! S-pairs above the bound and clears the `complete` flag.

use std::cmp::Ordering;
use std::sync::Arc;

use num::{BigRational, One, Zero};

use crate::error::{Error, Result};
use crate::order::{Monomial, MonomialOrder};
use crate::poly::{select_in_subring, Polynomial, Term};
use crate::ring::{same_ring, PolyRing};

#[derive(Clone, Debug, PartialEq)]
pub struct GroebnerBasis {
    ring: Arc<PolyRing>,
    generators: Vec<Polynomial>,
    degree_bound: Option<u64>,
    complete: bool,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn degree_bound(&self) -> Option<u64> {
        self.degree_bound
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }
}

/// Full normal form of a canonical term list against `basis`.
///
/// Operates at the term level so that quotient-ring canonicalization can use
/// it before any `Polynomial` of the quotient ring exists.
pub(crate) fn normal_form_terms(
    work: Vec<(Monomial, BigRational)>,
    basis: &[Polynomial],
    order: &MonomialOrder,
) -> Vec<(Monomial, BigRational)> {
    let mut result: Vec<(Monomial, BigRational)> = Vec::new();
    let mut work = work;
    'outer: while !work.is_empty() {
        let (m, c) = work[0].clone();
        for b in basis {
            if b.is_zero() {
                continue;
            }
            let (bl, bc) = &b.terms()[0];
            if let Some(q) = bl.try_div(&m) {
                let factor = &c / bc;
                work = sub_scaled_shifted(work, b.terms(), &factor, &q, order);
                continue 'outer;
            }
        }
        result.push(work.remove(0));
    }
    result
}

/// `a - factor * shift * b` for canonical term lists `a`, `b`.
fn sub_scaled_shifted(
    a: Vec<(Monomial, BigRational)>,
    b: &[(Monomial, BigRational)],
    factor: &BigRational,
    shift: &Monomial,
    order: &MonomialOrder,
) -> Vec<(Monomial, BigRational)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut j = 0;
    while i < a.len() && j < b.len() {
        let bm = b[j].0.mul(shift);
        match order.cmp_slices(a[i].0.exps(), bm.exps()) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((bm, -(factor * &b[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let c = &a[i].1 - factor * &b[j].1;
                if !c.is_zero() {
                    out.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    for (m, c) in &b[j..] {
        out.push((m.mul(shift), -(factor * c)));
    }
    out
}

/// The lcm-cancellation combination of two nonzero polynomials; both sides
/// are normalized so the shared lead monomial cancels with coefficient one.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    if !same_ring(f.ring(), g.ring()) {
        return Err(Error::RingMismatch);
    }
    let lf = f.lead_term()?;
    let lg = g.lead_term()?;
    let lcm = lf.monomial.lcm(&lg.monomial);
    let uf = lf.monomial.try_div(&lcm).expect("lcm divisible by lead");
    let ug = lg.monomial.try_div(&lcm).expect("lcm divisible by lead");
    let a = mul_term(f, &uf, &lf.coefficient.recip());
    let b = mul_term(g, &ug, &lg.coefficient.recip());
    Ok(&a - &b)
}

/// Multiplies by a single term. Sorting survives translation, so the result
/// is canonical without a resort; quotient reduction is reapplied.
fn mul_term(f: &Polynomial, m: &Monomial, c: &BigRational) -> Polynomial {
    let terms = f
        .terms()
        .iter()
        .map(|(fm, fc)| (fm.mul(m), fc * c))
        .collect();
    Polynomial::reduced(f.ring(), terms)
}

/// Full normal form of `f` modulo `basis`; the empty basis returns `f`.
pub fn reduce_modulo(f: &Polynomial, basis: &[Polynomial]) -> Result<Polynomial> {
    for b in basis {
        if !same_ring(f.ring(), b.ring()) {
            return Err(Error::RingMismatch);
        }
    }
    let reduced = normal_form_terms(f.terms().to_vec(), basis, f.ring().order());
    Ok(Polynomial::reduced(f.ring(), reduced))
}

/// Reduced Groebner basis of the ideal generated by `gens`.
///
/// With a degree bound, S-pairs whose lcm exceeds the bound (by total
/// degree) are deferred and the result is flagged incomplete unless none
/// were deferred. Pair selection follows the normal strategy: smallest lcm
/// degree first, ties by the order on the lcm.
pub fn buchberger(gens: &[Polynomial], degree_bound: Option<u64>) -> Result<GroebnerBasis> {
    let weights = match gens.first() {
        Some(f) => vec![1u64; f.ring().var_count()],
        None => Vec::new(),
    };
    buchberger_weighted(gens, degree_bound, &weights, 0)
}

/// Buchberger with a weighted grading for the degree bound and a trusted
/// prefix of generators already known to form a Groebner basis (their
/// mutual S-pairs are skipped).
pub(crate) fn buchberger_weighted(
    gens: &[Polynomial],
    degree_bound: Option<u64>,
    weights: &[u64],
    trusted: usize,
) -> Result<GroebnerBasis> {
    let ring = match gens.first() {
        Some(f) => Arc::clone(f.ring()),
        None => {
            return Ok(GroebnerBasis {
                ring: PolyRing::new(vec!["x".into()], MonomialOrder::GRevLex)?,
                generators: Vec::new(),
                degree_bound,
                complete: true,
            })
        }
    };
    if ring.is_quotient() {
        return Err(Error::invalid(
            "the Groebner engine operates in plain polynomial rings",
        ));
    }
    for g in gens {
        if !same_ring(g.ring(), &ring) {
            return Err(Error::RingMismatch);
        }
    }

    let mut basis: Vec<Polynomial> = Vec::new();
    let mut trusted_len = 0;
    for (i, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        basis.push(g.monic()?);
        if i < trusted {
            trusted_len = basis.len();
        }
    }

    // Gebauer-Moeller pair update: pairs against a new element are pruned
    // by the chain criterion (another new lcm properly divides this one,
    // smaller index winning among equal lcms) and the coprime criterion;
    // older pairs whose lcm the new lead divides strictly are dropped.
    let mut pending: Vec<(usize, usize, Monomial, u64)> = Vec::new();
    let add_pairs = |pending: &mut Vec<(usize, usize, Monomial, u64)>,
                     basis: &[Polynomial],
                     t: usize| {
        let lt = basis[t].lead_monomial().unwrap();
        let lcms: Vec<Monomial> = (0..t)
            .map(|i| basis[i].lead_monomial().unwrap().lcm(lt))
            .collect();
        pending.retain(|(i, j, lcm, _)| !(lt.divides(lcm) && lcms[*i] != *lcm && lcms[*j] != *lcm));
        let mut keep = vec![true; t];
        for i in 0..t {
            if !keep[i] {
                continue;
            }
            for j in 0..t {
                if i != j && keep[j] && lcms[j].divides(&lcms[i]) && (lcms[j] != lcms[i] || j < i) {
                    keep[i] = false;
                    break;
                }
            }
        }
        for (i, lcm) in lcms.into_iter().enumerate() {
            if !keep[i] || basis[i].lead_monomial().unwrap().coprime(lt) {
                continue;
            }
            let deg = lcm.weighted_degree(weights);
            pending.push((i, t, lcm, deg));
        }
    };
    for j in trusted_len.max(1)..basis.len() {
        add_pairs(&mut pending, &basis, j);
    }

    let mut deferred = false;
    loop {
        // normal selection: minimal weighted lcm degree, then order on lcm
        let best = pending
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.3.cmp(&b.3)
                    .then_with(|| ring.cmp_monomials(&a.2, &b.2))
                    .then_with(|| (a.0, a.1).cmp(&(b.0, b.1)))
            })
            .map(|(idx, _)| idx);
        let Some(idx) = best else { break };
        if let Some(bound) = degree_bound {
            if pending[idx].3 > bound {
                deferred = true;
                break;
            }
        }
        let (i, j, _, _) = pending.swap_remove(idx);

        let s = s_polynomial(&basis[i], &basis[j])?;
        let h = normal_form_terms(s.terms().to_vec(), &basis, ring.order());
        if !h.is_empty() {
            let h = Polynomial::from_canonical(&ring, h).monic()?;
            let t = basis.len();
            basis.push(h);
            add_pairs(&mut pending, &basis, t);
        }
    }

    let generators = inter_reduce(&ring, basis);
    Ok(GroebnerBasis {
        ring,
        generators,
        degree_bound,
        complete: !deferred,
    })
}

/// Minimalizes and tail-reduces a monic basis, returning it sorted with
/// the largest lead first.
fn inter_reduce(ring: &Arc<PolyRing>, basis: Vec<Polynomial>) -> Vec<Polynomial> {
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        let li = basis[i].lead_monomial().unwrap();
        for (j, g) in basis.iter().enumerate() {
            if i == j || !keep[j] {
                continue;
            }
            let lj = g.lead_monomial().unwrap();
            if lj.divides(li) && (lj != li || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let survivors: Vec<Polynomial> = basis
        .into_iter()
        .zip(&keep)
        .filter(|(_, &k)| k)
        .map(|(g, _)| g)
        .collect();
    let mut reduced: Vec<Polynomial> = Vec::with_capacity(survivors.len());
    for i in 0..survivors.len() {
        let others: Vec<Polynomial> = survivors
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let nf = normal_form_terms(survivors[i].terms().to_vec(), &others, ring.order());
        reduced.push(Polynomial::from_canonical(ring, nf));
    }
    reduced
        .sort_by(|a, b| ring.cmp_monomials(b.lead_monomial().unwrap(), a.lead_monomial().unwrap()));
    reduced
}

/// Monic lead monomials of a complete reduced basis.
pub fn initial_ideal_gens(gb: &GroebnerBasis) -> Result<Vec<Term>> {
    if !gb.complete {
        return Err(Error::IncompleteBasis);
    }
    gb.generators
        .iter()
        .map(|g| {
            Ok(Term {
                monomial: g.lead_monomial()?.clone(),
                coefficient: BigRational::one(),
            })
        })
        .collect()
}

/// Basis elements free of the variables in the order's leading blocks.
pub fn elimination_subring(gb: &GroebnerBasis, block_index: usize) -> Result<Vec<Polynomial>> {
    if !gb.complete {
        return Err(Error::IncompleteBasis);
    }
    select_in_subring(block_index, &gb.generators)
}

/// Tag construction shared by subduction, kernel computation and the
/// extrinsic membership route: the ring `k[x, y]` with an order eliminating
/// the x block, one tag generator `y_i - image_i` per image, plus any
/// ambient-ideal generators lifted into the tag ring.
#[derive(Debug)]
pub(crate) struct TagIdeal {
    pub tag_ring: Arc<PolyRing>,
    pub presentation: Arc<PolyRing>,
    /// Grading weights on the tag ring: 1 on x variables, the image degree
    /// on each tag variable. The tag ideal of a monomial map is homogeneous
    /// under this grading.
    pub weights: Vec<u64>,
    pub y_degrees: Vec<u64>,
    pub gens: Vec<Polynomial>,
    n: usize,
    s: usize,
}

impl TagIdeal {
    /// Tags for a monomial map `y_i -> m_i`, with extra monomial generators
    /// (lead monomials of the ambient quotient ideal, when present).
    pub fn from_monomials(
        ambient: &Arc<PolyRing>,
        monomials: &[Monomial],
        extra: &[Monomial],
        symbol: &str,
    ) -> Result<TagIdeal> {
        let images: Vec<Vec<(Monomial, BigRational)>> = monomials
            .iter()
            .map(|m| vec![(m.clone(), BigRational::one())])
            .collect();
        let degrees: Vec<u64> = monomials.iter().map(|m| m.total_degree()).collect();
        TagIdeal::build(ambient, &images, &degrees, extra, &[], symbol)
    }

    /// Tags for the full generators, together with the full ambient ideal.
    pub fn from_polynomials(
        ambient: &Arc<PolyRing>,
        gens: &[Polynomial],
        symbol: &str,
    ) -> Result<TagIdeal> {
        let images: Vec<Vec<(Monomial, BigRational)>> =
            gens.iter().map(|g| g.terms().to_vec()).collect();
        let degrees: Vec<u64> = gens.iter().map(|g| g.total_degree().max(1)).collect();
        let ideal: Vec<Vec<(Monomial, BigRational)>> = ambient
            .quotient_generators()
            .unwrap_or(&[])
            .iter()
            .map(|g| g.terms().to_vec())
            .collect();
        TagIdeal::build(ambient, &images, &degrees, &[], &ideal, symbol)
    }

    fn build(
        ambient: &Arc<PolyRing>,
        images: &[Vec<(Monomial, BigRational)>],
        degrees: &[u64],
        extra_monomials: &[Monomial],
        extra_polys: &[Vec<(Monomial, BigRational)>],
        symbol: &str,
    ) -> Result<TagIdeal> {
        let n = ambient.var_count();
        let s = images.len();
        if s == 0 {
            return Err(Error::invalid("tag ideal needs at least one image"));
        }
        let mut tag_sym = symbol.to_string();
        loop {
            let clash = (1..=s).any(|i| ambient.vars().contains(&format!("{}_{}", tag_sym, i)));
            if !clash {
                break;
            }
            tag_sym.push('t');
        }
        let mut names: Vec<String> = ambient.vars().to_vec();
        for i in 1..=s {
            names.push(format!("{}_{}", tag_sym, i));
        }
        let order = MonomialOrder::Eliminate {
            block: n,
            tie: Box::new(MonomialOrder::Blocks(vec![
                (n, ambient.order().clone()),
                (
                    s,
                    MonomialOrder::Weights {
                        weights: degrees.to_vec(),
                        tie: Box::new(MonomialOrder::GRevLex),
                    },
                ),
            ])),
        };
        let tag_ring = PolyRing::new(names, order)?;
        let presentation = PolyRing::new(
            (1..=s).map(|i| format!("{}_{}", symbol, i)).collect(),
            MonomialOrder::Weights {
                weights: degrees.to_vec(),
                tie: Box::new(MonomialOrder::GRevLex),
            },
        )?;
        let mut weights = vec![1u64; n];
        weights.extend_from_slice(degrees);

        let lift_mono = |m: &Monomial| {
            let mut e = m.exps().to_vec();
            e.resize(n + s, 0);
            Monomial::new(e)
        };
        let mut gens: Vec<Polynomial> = Vec::new();
        for (i, image) in images.iter().enumerate() {
            let mut terms: Vec<(Monomial, BigRational)> =
                vec![(Monomial::variable(n + s, n + i), BigRational::one())];
            for (m, c) in image {
                terms.push((lift_mono(m), -c));
            }
            gens.push(Polynomial::from_terms(&tag_ring, terms)?);
        }
        for m in extra_monomials {
            gens.push(Polynomial::from_terms(
                &tag_ring,
                vec![(lift_mono(m), BigRational::one())],
            )?);
        }
        for p in extra_polys {
            let terms = p.iter().map(|(m, c)| (lift_mono(m), c.clone())).collect();
            gens.push(Polynomial::from_terms(&tag_ring, terms)?);
        }
        Ok(TagIdeal {
            tag_ring,
            presentation,
            weights,
            y_degrees: degrees.to_vec(),
            gens,
            n,
            s,
        })
    }

    pub fn x_count(&self) -> usize {
        self.n
    }

    pub fn y_count(&self) -> usize {
        self.s
    }

    /// Lifts an ambient polynomial into the tag ring.
    pub fn lift(&self, f: &Polynomial) -> Polynomial {
        let terms = f
            .terms()
            .iter()
            .map(|(m, c)| {
                let mut e = m.exps().to_vec();
                e.resize(self.n + self.s, 0);
                (Monomial::new(e), c.clone())
            })
            .collect();
        // elimination order restricted to x monomials agrees with the
        // ambient order, so sortedness is preserved
        Polynomial::from_canonical(&self.tag_ring, terms)
    }

    pub fn lift_monomial(&self, m: &Monomial) -> Monomial {
        let mut e = m.exps().to_vec();
        e.resize(self.n + self.s, 0);
        Monomial::new(e)
    }

    /// Projects a tag polynomial onto the presentation ring when it is free
    /// of x variables.
    pub fn project_y(&self, f: &Polynomial) -> Option<Polynomial> {
        let mut terms = Vec::with_capacity(f.terms().len());
        for (m, c) in f.terms() {
            if m.exps()[..self.n].iter().any(|&e| e > 0) {
                return None;
            }
            terms.push((Monomial::new(m.exps()[self.n..].to_vec()), c.clone()));
        }
        Some(Polynomial::from_canonical(&self.presentation, terms))
    }

    /// Splits a tag polynomial into its x-free part (projected) and the rest.
    pub fn split_y(&self, f: &Polynomial) -> (Polynomial, Vec<(Monomial, BigRational)>) {
        let mut y_terms = Vec::new();
        let mut rest = Vec::new();
        for (m, c) in f.terms() {
            if m.exps()[..self.n].iter().all(|&e| e == 0) {
                y_terms.push((Monomial::new(m.exps()[self.n..].to_vec()), c.clone()));
            } else {
                rest.push((m.clone(), c.clone()));
            }
        }
        (
            Polynomial::from_canonical(&self.presentation, y_terms),
            rest,
        )
    }
}

/// Generators of the kernel of the monomial map `y_i -> m_i`, computed by
/// eliminating the ambient variables from the tag ideal. `ambient_initial`
/// carries the lead monomials of the ambient quotient ideal, if any.
pub fn kernel_generators(
    monomials: &[Term],
    ambient_initial: &[Term],
    ring: &Arc<PolyRing>,
) -> Result<Vec<Polynomial>> {
    if monomials.is_empty() {
        return Ok(Vec::new());
    }
    for t in monomials {
        if t.coefficient.is_zero() {
            return Err(Error::invalid("zero term in monomial map"));
        }
    }
    let monos: Vec<Monomial> = monomials.iter().map(|t| t.monomial.clone()).collect();
    let extra: Vec<Monomial> = ambient_initial.iter().map(|t| t.monomial.clone()).collect();
    let tag = TagIdeal::from_monomials(ring, &monos, &extra, "y")?;
    let gb = buchberger_weighted(&tag.gens, None, &tag.weights, 0)?;
    Ok(gb
        .generators()
        .iter()
        .filter_map(|g| tag.project_y(g))
        .collect())
}
