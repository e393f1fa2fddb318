//! Subduction and the degree-by-degree sagbi completion loop.
//!
//! The engine keeps a Groebner basis of the reduction ideal
//! `(y_i - in(g_i)) + in(I)` in a tag ring eliminating the ambient
//! variables. A lead term factors over the generator lead terms exactly when
//! its normal form modulo that basis lies in the tag subring, which drives
//! both subduction and the extraction of binomial syzygies.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use num::BigRational;

use crate::error::{Error, Result};
use crate::groebner::{buchberger_weighted, normal_form_terms, TagIdeal};
use crate::order::Monomial;
use crate::poly::{evaluate_map, Polynomial};
use crate::ring::{same_ring, PolyRing};
use crate::subring::{SagbiOptions, Strategy, Subring};
use crate::trace::Trace;

/// Resumable state of a subalgebra basis computation.
#[derive(Debug)]
pub struct SagbiBasis {
    ambient: Arc<PolyRing>,
    original: Vec<Polynomial>,
    symbol: String,
    sagbi_gens: Vec<Polynomial>,
    processed_degree: u64,
    complete: bool,
    pending: bool,
    options: SagbiOptions,
}

impl SagbiBasis {
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn new(
        ambient: Arc<PolyRing>,
        original: Vec<Polynomial>,
        symbol: String,
        sagbi_gens: Vec<Polynomial>,
        processed_degree: u64,
        complete: bool,
        pending: bool,
        options: SagbiOptions,
    ) -> SagbiBasis {
        SagbiBasis {
            ambient,
            original,
            symbol,
            sagbi_gens,
            processed_degree,
            complete,
            pending,
            options,
        }
    }

    pub fn ambient_ring(&self) -> &Arc<PolyRing> {
        &self.ambient
    }

    pub fn original_generators(&self) -> &[Polynomial] {
        &self.original
    }

    pub fn generator_symbol(&self) -> &str {
        &self.symbol
    }

    /// The currently known (partial) subalgebra basis, monic.
    pub fn generators(&self) -> &[Polynomial] {
        &self.sagbi_gens
    }

    pub fn processed_degree(&self) -> u64 {
        self.processed_degree
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn is_pending(&self) -> bool {
        self.pending
    }

    pub fn options(&self) -> &SagbiOptions {
        &self.options
    }
}

/// Deterministic total comparison of two polynomials in one ring.
pub(crate) fn cmp_polys(a: &Polynomial, b: &Polynomial) -> Ordering {
    for ((ma, ca), (mb, cb)) in a.terms().iter().zip(b.terms()) {
        match a.ring().cmp_monomials(ma, mb) {
            Ordering::Equal => {}
            ord => return ord,
        }
        match ca.cmp(cb) {
            Ordering::Equal => {}
            ord => return ord,
        }
    }
    a.terms().len().cmp(&b.terms().len())
}

#[derive(Clone, Copy, Debug)]
pub(crate) enum GbMode {
    Full,
    Truncated(u64),
}

/// The subduction context over a frozen generator list.
pub(crate) struct Subducer {
    ambient: Arc<PolyRing>,
    gens: Vec<Polynomial>,
    tag: TagIdeal,
    gb: Vec<Polynomial>,
    gb_complete: bool,
    bound: Option<u64>,
    products: HashMap<Monomial, Polynomial>,
}

impl Subducer {
    pub fn new(
        ambient: &Arc<PolyRing>,
        gens: &[Polynomial],
        symbol: &str,
        mode: GbMode,
    ) -> Result<Subducer> {
        let leads: Result<Vec<Monomial>> = gens
            .iter()
            .map(|g| Ok(g.lead_monomial()?.clone()))
            .collect();
        let leads = leads?;
        let extra: Vec<Monomial> = ambient
            .quotient_gb()
            .map(|gb| {
                gb.generators()
                    .iter()
                    .map(|g| g.lead_monomial().unwrap().clone())
                    .collect()
            })
            .unwrap_or_default();
        let tag = TagIdeal::from_monomials(ambient, &leads, &extra, symbol)?;
        let (gb, gb_complete, bound) = match mode {
            GbMode::Full => {
                let gb = buchberger_weighted(&tag.gens, None, &tag.weights, 0)?;
                (gb.generators().to_vec(), true, None)
            }
            GbMode::Truncated(b) => {
                let gb = buchberger_weighted(&tag.gens, Some(b), &tag.weights, 0)?;
                let complete = gb.is_complete();
                (gb.generators().to_vec(), complete, Some(b))
            }
        };
        Ok(Subducer {
            ambient: Arc::clone(ambient),
            gens: gens.to_vec(),
            tag,
            gb,
            gb_complete,
            bound,
            products: HashMap::new(),
        })
    }

    /// Expands a presentation polynomial through the generator map, reusing
    /// the memoized generator products.
    pub fn lift_presentation(&mut self, h: &Polynomial) -> Result<Polynomial> {
        let mut out = Polynomial::zero(&self.ambient);
        for (m, c) in h.terms().to_vec() {
            let prod = self.product(&m)?;
            out = &out + &prod.scaled(&c);
        }
        Ok(out)
    }

    /// Extends the context to a longer generator list sharing this one as a
    /// prefix, seeding Buchberger with the current basis.
    pub fn extended(&self, gens: &[Polynomial], symbol: &str) -> Result<Subducer> {
        debug_assert!(gens.len() >= self.gens.len());
        let leads: Result<Vec<Monomial>> = gens
            .iter()
            .map(|g| Ok(g.lead_monomial()?.clone()))
            .collect();
        let leads = leads?;
        let extra: Vec<Monomial> = self
            .ambient
            .quotient_gb()
            .map(|gb| {
                gb.generators()
                    .iter()
                    .map(|g| g.lead_monomial().unwrap().clone())
                    .collect()
            })
            .unwrap_or_default();
        let tag = TagIdeal::from_monomials(&self.ambient, &leads, &extra, symbol)?;
        let old_s = self.tag.y_count();
        let pad = tag.y_count() - old_s;
        let mut seeds: Vec<Polynomial> = self
            .gb
            .iter()
            .map(|g| {
                let terms = g
                    .terms()
                    .iter()
                    .map(|(m, c)| {
                        let mut e = m.exps().to_vec();
                        e.extend(std::iter::repeat_n(0, pad));
                        (Monomial::new(e), c.clone())
                    })
                    .collect();
                Polynomial::from_canonical(&tag.tag_ring, terms)
            })
            .collect();
        let trusted = if self.gb_complete && self.bound.is_none() {
            seeds.len()
        } else {
            0
        };
        for i in old_s..tag.y_count() {
            seeds.push(tag.gens[i].clone());
        }
        let gb = buchberger_weighted(&seeds, None, &tag.weights, trusted)?;
        // generator products stay valid; re-key them to the wider arity
        let products = self
            .products
            .iter()
            .map(|(m, p)| {
                let mut e = m.exps().to_vec();
                e.extend(std::iter::repeat_n(0, pad));
                (Monomial::new(e), p.clone())
            })
            .collect();
        Ok(Subducer {
            ambient: Arc::clone(&self.ambient),
            gens: gens.to_vec(),
            tag,
            gb: gb.generators().to_vec(),
            gb_complete: true,
            bound: None,
            products,
        })
    }

    pub fn gen_count(&self) -> usize {
        self.gens.len()
    }

    pub fn is_gb_complete(&self) -> bool {
        self.gb_complete
    }

    /// Raises a truncated basis so normal forms of monomials of weighted
    /// degree up to `d` are exact.
    fn ensure_degree(&mut self, d: u64) -> Result<()> {
        if let Some(b) = self.bound {
            if d > b {
                if self.gb_complete {
                    self.bound = Some(d);
                } else {
                    let gb = buchberger_weighted(&self.tag.gens, Some(d), &self.tag.weights, 0)?;
                    self.gb = gb.generators().to_vec();
                    self.gb_complete = gb.is_complete();
                    self.bound = Some(d);
                }
            }
        }
        Ok(())
    }

    /// Searches for exponents `a` with `prod in(g_i)^(a_i)` equal to `m`
    /// (modulo the ambient initial ideal). The empty factorization is
    /// reported for the constant monomial.
    pub fn factor(&mut self, m: &Monomial) -> Result<Option<Monomial>> {
        self.ensure_degree(m.total_degree())?;
        let lifted = self.tag.lift_monomial(m);
        let nf = normal_form_terms(
            vec![(lifted, BigRational::from_integer(1.into()))],
            &self.gb,
            self.tag.tag_ring.order(),
        );
        if nf.len() != 1 {
            return Ok(None);
        }
        let (mono, _) = &nf[0];
        let n = self.tag.x_count();
        if mono.exps()[..n].iter().any(|&e| e > 0) {
            return Ok(None);
        }
        Ok(Some(Monomial::new(mono.exps()[n..].to_vec())))
    }

    fn product(&mut self, yexp: &Monomial) -> Result<Polynomial> {
        if let Some(p) = self.products.get(yexp) {
            return Ok(p.clone());
        }
        let mut p = Polynomial::from_int(&self.ambient, 1);
        for (i, &e) in yexp.exps().iter().enumerate() {
            if e > 0 {
                p = &p * &self.gens[i].pow(e);
            }
        }
        self.products.insert(yexp.clone(), p.clone());
        Ok(p)
    }

    /// Term-by-term subduction of `f`, returning the remainder and the
    /// accumulated factorization over the presentation variables.
    pub fn subduct(
        &mut self,
        f: &Polynomial,
        trace: &mut Trace,
    ) -> Result<(Polynomial, Polynomial)> {
        if !same_ring(f.ring(), &self.ambient) {
            return Err(Error::RingMismatch);
        }
        let mut work = f.clone();
        let mut remainder: Vec<(Monomial, BigRational)> = Vec::new();
        let mut q_terms: Vec<(Monomial, BigRational)> = Vec::new();
        while !work.is_zero() {
            let lead = work.lead_term()?;
            if lead.monomial.is_constant() {
                q_terms.push((
                    Monomial::constant(self.tag.y_count()),
                    lead.coefficient.clone(),
                ));
                break;
            }
            match self.factor(&lead.monomial)? {
                Some(yexp) => {
                    let prod = self.product(&yexp)?;
                    debug_assert_eq!(prod.lead_monomial().unwrap(), &lead.monomial);
                    let factor = &lead.coefficient / prod.lead_coeff()?;
                    work = &work - &prod.scaled(&factor);
                    q_terms.push((yexp, factor));
                }
                None => {
                    if trace.enabled(2) {
                        trace.log(
                            2,
                            format!("subduct: kept {}", termfmt(&work, &lead.monomial)),
                        );
                    }
                    remainder.push((lead.monomial, lead.coefficient));
                    work = Polynomial::from_canonical(&self.ambient, work.terms()[1..].to_vec());
                }
            }
        }
        let r = Polynomial::from_canonical(&self.ambient, remainder);
        let q = Polynomial::from_terms(&self.tag.presentation, q_terms)?;
        Ok((r, q))
    }

    /// Elements of the reduction basis lying in the tag subring, paired
    /// with their graded degree and deterministically ordered.
    pub fn kernel_elements(&self) -> Vec<(u64, Polynomial)> {
        let mut out: Vec<(u64, Polynomial)> = self
            .gb
            .iter()
            .filter_map(|g| self.tag.project_y(g))
            .map(|p| {
                let d = p
                    .lead_monomial()
                    .map(|m| m.weighted_degree(&self.tag.y_degrees))
                    .unwrap_or(0);
                (d, p)
            })
            .collect();
        out.sort_by(|(da, pa), (db, pb)| da.cmp(db).then_with(|| cmp_polys(pb, pa)));
        out
    }
}

fn termfmt(p: &Polynomial, m: &Monomial) -> String {
    let names = p.ring().vars();
    let mut s = String::new();
    for (i, &e) in m.exps().iter().enumerate() {
        if e > 0 {
            if !s.is_empty() {
                s.push('*');
            }
            s.push_str(&names[i]);
            if e > 1 {
                s.push_str(&format!("^{}", e));
            }
        }
    }
    if s.is_empty() {
        s.push('1');
    }
    s
}

fn active_gens(gens: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let mut out: Vec<Polynomial> = Vec::new();
    for g in gens {
        if let Some(first) = out.first() {
            if !same_ring(g.ring(), first.ring()) {
                return Err(Error::RingMismatch);
            }
        }
        if g.is_zero() || g.is_constant() {
            continue;
        }
        out.push(g.clone());
    }
    Ok(out)
}

/// Subducts `f` against the generators, returning the remainder `r`: no
/// monomial of `r` factors over the generator lead terms, and `f - r` lies
/// in the generated algebra.
pub fn subduct(gens: &[Polynomial], f: &Polynomial) -> Result<Polynomial> {
    let active = active_gens(gens)?;
    if active.is_empty() {
        return Ok(f.clone());
    }
    Ok(subduct_with_coefficients(&active, f)?.0)
}

/// Subduction that also reports the factorization `q` with
/// `f = q(g_1, ..., g_s) + r`, in a presentation ring with one variable per
/// generator.
pub fn subduct_with_coefficients(
    gens: &[Polynomial],
    f: &Polynomial,
) -> Result<(Polynomial, Polynomial)> {
    let active = active_gens(gens)?;
    if active.is_empty() {
        return Err(Error::invalid("subduction coefficients need generators"));
    }
    if !same_ring(f.ring(), active[0].ring()) {
        return Err(Error::RingMismatch);
    }
    let mut sub = Subducer::new(f.ring(), &active, "y", GbMode::Full)?;
    sub.subduct(f, &mut Trace::silent())
}

/// Fully inter-subducts a generator set: each generator is subducted
/// against all of the others in decreasing lead-term order, zero remainders
/// are dropped and survivors are monic. The generated algebra is unchanged.
pub fn auto_subduce(gens: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let active = active_gens(gens)?;
    let mut slots: Vec<Option<Polynomial>> = Vec::new();
    for g in &active {
        let m = g.monic()?;
        if !slots.iter().flatten().any(|kept| kept == &m) {
            slots.push(Some(m));
        }
    }
    let mut order: Vec<usize> = (0..slots.len()).collect();
    order.sort_by(|&a, &b| cmp_polys(slots[b].as_ref().unwrap(), slots[a].as_ref().unwrap()));
    for i in order {
        let others: Vec<Polynomial> = slots
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .filter_map(|(_, g)| g.clone())
            .collect();
        if others.is_empty() {
            continue;
        }
        let target = slots[i].clone().unwrap();
        let mut sub = Subducer::new(target.ring(), &others, "y", GbMode::Full)?;
        let (r, _) = sub.subduct(&target, &mut Trace::silent())?;
        slots[i] = if r.is_zero() || r.is_constant() {
            None
        } else {
            Some(r.monic()?)
        };
    }
    Ok(slots.into_iter().flatten().collect())
}

/// Reduces the tails of the starting generators against the full lead-term
/// set; lead terms are preserved, so the recorded generators match the
/// degrees at which syzygies are later processed.
fn tail_reduce(
    ambient: &Arc<PolyRing>,
    gens: &mut [Polynomial],
    symbol: &str,
    trace: &mut Trace,
) -> Result<()> {
    let leads: Vec<Monomial> = gens
        .iter()
        .map(|g| g.lead_monomial().unwrap().clone())
        .collect();
    let mut idx: Vec<usize> = (0..gens.len()).collect();
    idx.sort_by(|&a, &b| ambient.cmp_monomials(&leads[b], &leads[a]));
    for i in idx {
        let candidate = gens[i].terms()[1..].iter().any(|(m, _)| {
            leads
                .iter()
                .enumerate()
                .any(|(j, l)| j != i && l.divides(m))
        });
        if !candidate {
            continue;
        }
        let others: Vec<Polynomial> = gens
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        if others.is_empty() {
            continue;
        }
        let tail = Polynomial::from_canonical(ambient, gens[i].terms()[1..].to_vec());
        let mut sub = Subducer::new(ambient, &others, symbol, GbMode::Full)?;
        let (r, _) = sub.subduct(&tail, &mut Trace::silent())?;
        if r != tail {
            let mut terms = vec![gens[i].terms()[0].clone()];
            terms.extend(r.terms().iter().cloned());
            gens[i] = Polynomial::from_canonical(ambient, terms);
            trace.log(
                2,
                format!("autosubduce: reduced tail of generator {}", i + 1),
            );
        }
    }
    Ok(())
}

/// Drops generators whose lead monomial factors over the lead monomials of
/// the remaining ones. Sound only for a certified basis, where the pruned
/// set still generates the same algebra and stays a subalgebra basis.
fn prune_redundant(
    ambient: &Arc<PolyRing>,
    gens: &mut Vec<Polynomial>,
    symbol: &str,
    trace: &mut Trace,
) -> Result<()> {
    loop {
        let mut removed = false;
        let leads: Vec<Monomial> = gens
            .iter()
            .map(|g| g.lead_monomial().unwrap().clone())
            .collect();
        let mut idx: Vec<usize> = (0..gens.len()).collect();
        idx.sort_by(|&a, &b| ambient.cmp_monomials(&leads[b], &leads[a]));
        for i in idx {
            let divisible = leads
                .iter()
                .enumerate()
                .any(|(j, l)| j != i && l.divides(&leads[i]));
            if !divisible || gens.len() == 1 {
                continue;
            }
            let others: Vec<Polynomial> = gens
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, g)| g.clone())
                .collect();
            let mut sub = Subducer::new(ambient, &others, symbol, GbMode::Full)?;
            if sub.factor(&leads[i])?.is_some() {
                trace.log(1, format!("pruned redundant generator {}", gens[i]));
                gens.remove(i);
                removed = true;
                break;
            }
        }
        if !removed {
            return Ok(());
        }
    }
}

struct RunInput {
    ambient: Arc<PolyRing>,
    symbol: String,
    original: Vec<Polynomial>,
    gens: Vec<Polynomial>,
    processed: u64,
    fresh: bool,
}

fn run_sagbi(input: RunInput, options: &SagbiOptions, trace: &mut Trace) -> Result<SagbiBasis> {
    options.validate()?;
    let ambient = input.ambient;
    let symbol = input.symbol;
    let mut gens: Vec<Polynomial> = Vec::new();
    for g in &input.gens {
        let m = g.monic()?;
        if !gens.contains(&m) {
            gens.push(m);
        }
    }
    if input.fresh && options.auto_subduce {
        tail_reduce(&ambient, &mut gens, &symbol, trace)?;
    }

    let limit = options.limit;
    let mut processed = input.processed;
    let complete;
    let mut last_added: usize = 0;
    let mut carrier: Option<Subducer> = None;
    // syzygies already lifted and subducted during this run; at every exit
    // all kernel elements of degree up to `processed` are resolved, so a
    // resumed run reconstructs this set from the stored degree
    let mut done: HashSet<String> = HashSet::new();
    let mut seeded = input.fresh;

    loop {
        let use_dbd = match options.strategy {
            Strategy::DegreeByDegree => true,
            Strategy::Incremental => false,
            Strategy::Master => last_added >= 2,
        };
        let mut sub = if use_dbd {
            carrier = None;
            let mut bound = processed + 1;
            loop {
                let cand = Subducer::new(&ambient, &gens, &symbol, GbMode::Truncated(bound))?;
                let informative = cand
                    .kernel_elements()
                    .iter()
                    .any(|(d, h)| !seeded || *d > processed || !done.contains(&h.to_string()));
                if informative || cand.is_gb_complete() || bound >= limit {
                    break cand;
                }
                bound += 1;
            }
        } else {
            match carrier.take() {
                Some(c) if c.gen_count() == gens.len() => c,
                Some(c) => c.extended(&gens, &symbol)?,
                None => Subducer::new(&ambient, &gens, &symbol, GbMode::Full)?,
            }
        };

        let kernel = sub.kernel_elements();
        if !seeded {
            for (d, h) in &kernel {
                if *d <= processed {
                    done.insert(h.to_string());
                }
            }
            seeded = true;
        }
        let unseen_low = kernel
            .iter()
            .any(|(d, h)| *d <= processed && !done.contains(&h.to_string()));
        let next_within_limit = kernel
            .iter()
            .map(|(d, _)| *d)
            .filter(|d| *d > processed && *d <= limit)
            .min();

        let target = if unseen_low {
            processed
        } else if let Some(t) = next_within_limit {
            t
        } else {
            // nothing unresolved at or below the limit
            complete =
                sub.is_gb_complete() && kernel.iter().all(|(_, h)| done.contains(&h.to_string()));
            if !complete {
                processed = limit;
            }
            break;
        };

        let added = process_round(&mut gens, &mut sub, &symbol, target, &mut done, trace)?;
        processed = target.max(processed);
        trace.log(
            1,
            format!(
                "degree {}: {} new generators ({} total)",
                target,
                added,
                gens.len()
            ),
        );
        last_added = added;

        if added == 0 && options.auto_subduce_on_partial_completion {
            let resolved_all =
                sub.is_gb_complete() && kernel.iter().all(|(_, h)| done.contains(&h.to_string()));
            if !resolved_all {
                let reduced = auto_subduce(&gens)?;
                if reduced != gens {
                    gens = reduced;
                    trace.log(
                        1,
                        format!("autosubduced basis down to {} generators", gens.len()),
                    );
                    carrier = None;
                    done.clear();
                    continue;
                }
            }
        }
        if !use_dbd {
            carrier = Some(sub);
        }
    }

    if complete {
        prune_redundant(&ambient, &mut gens, &symbol, trace)?;
        trace.log(1, format!("certified complete at degree {}", processed));
    }
    Ok(SagbiBasis::new(
        ambient,
        input.original,
        symbol,
        gens,
        processed.min(limit),
        complete,
        !complete,
        options.clone(),
    ))
}

/// Lifts and subducts every unresolved kernel element of degree up to
/// `max_degree`, working in increasing degree. Nonzero remainders join the
/// generator list immediately and the kernel is refreshed, so syzygies
/// exposed by a new generator at or below this degree are handled inside
/// the same round and later subductions see every remainder found so far.
fn process_round(
    gens: &mut Vec<Polynomial>,
    sub: &mut Subducer,
    symbol: &str,
    max_degree: u64,
    done: &mut HashSet<String>,
    trace: &mut Trace,
) -> Result<usize> {
    let mut added = 0;
    'refresh: loop {
        let kernel = sub.kernel_elements();
        for (d, h) in &kernel {
            if *d > max_degree {
                break;
            }
            let key = h.to_string();
            if done.contains(&key) {
                continue;
            }
            let lifted = sub.lift_presentation(h)?;
            done.insert(key);
            if lifted.is_zero() {
                continue;
            }
            let (r, _) = sub.subduct(&lifted, trace)?;
            if trace.enabled(2) {
                trace.log(2, format!("subduct: S-polynomial {} -> {}", h, r));
            }
            if r.is_zero() || r.is_constant() {
                continue;
            }
            let m = r.monic()?;
            if !gens.contains(&m) {
                gens.push(m);
                *sub = sub.extended(gens, symbol)?;
                added += 1;
                continue 'refresh;
            }
        }
        return Ok(added);
    }
}

/// Runs or resumes a subalgebra basis computation for a subring. A cached
/// computation object is resumed unless `recompute` is set; stored options
/// carry over unless `renew_options` is set, while `limit` and
/// `print_level` are always taken fresh. The result supersedes the cache
/// when it is further advanced.
pub fn sagbi(subring: &Subring, options: &SagbiOptions) -> Result<Arc<SagbiBasis>> {
    sagbi_traced(subring, options, &mut Trace::silent())
}

pub fn sagbi_traced(
    subring: &Subring,
    options: &SagbiOptions,
    trace: &mut Trace,
) -> Result<Arc<SagbiBasis>> {
    options.validate()?;
    if let Some(cached) = subring.cached_basis() {
        if !options.recompute {
            let mut eff = if options.renew_options {
                options.clone()
            } else {
                cached.options().clone()
            };
            eff.limit = options.limit;
            eff.print_level = options.print_level;
            eff.recompute = false;
            eff.renew_options = false;
            if cached.is_complete() || cached.processed_degree() >= eff.limit {
                return Ok(cached);
            }
            let result = Arc::new(run_sagbi(
                RunInput {
                    ambient: Arc::clone(subring.ambient_ring()),
                    symbol: subring.generator_symbol().to_string(),
                    original: cached.original_generators().to_vec(),
                    gens: cached.generators().to_vec(),
                    processed: cached.processed_degree(),
                    fresh: false,
                },
                &eff,
                trace,
            )?);
            subring.store_basis(Arc::clone(&result));
            return Ok(result);
        }
    }
    let mut eff = options.clone();
    eff.recompute = false;
    eff.renew_options = false;
    let result = Arc::new(run_sagbi(
        RunInput {
            ambient: Arc::clone(subring.ambient_ring()),
            symbol: subring.generator_symbol().to_string(),
            original: subring.generators().to_vec(),
            gens: subring.generators().to_vec(),
            processed: 0,
            fresh: true,
        },
        &eff,
        trace,
    )?);
    if options.recompute {
        subring.force_store(Arc::clone(&result));
    } else {
        subring.store_basis(Arc::clone(&result));
    }
    Ok(result)
}

/// Convenience wrapper constructing a subring on the fly.
pub fn sagbi_from_gens(gens: &[Polynomial], options: &SagbiOptions) -> Result<Arc<SagbiBasis>> {
    let subring = Subring::new(gens.to_vec())?;
    sagbi(&subring, options)
}

/// Resumes directly from a computation object, bypassing any subring cache.
pub fn sagbi_resume(basis: &SagbiBasis, options: &SagbiOptions) -> Result<Arc<SagbiBasis>> {
    options.validate()?;
    let mut eff = if options.renew_options {
        options.clone()
    } else {
        basis.options().clone()
    };
    eff.limit = options.limit;
    eff.print_level = options.print_level;
    eff.recompute = false;
    eff.renew_options = false;
    if basis.is_complete() || basis.processed_degree() >= eff.limit {
        return Ok(Arc::new(SagbiBasis::new(
            Arc::clone(basis.ambient_ring()),
            basis.original_generators().to_vec(),
            basis.generator_symbol().to_string(),
            basis.generators().to_vec(),
            basis.processed_degree(),
            basis.is_complete(),
            basis.is_pending(),
            basis.options().clone(),
        )));
    }
    Ok(Arc::new(run_sagbi(
        RunInput {
            ambient: Arc::clone(basis.ambient_ring()),
            symbol: basis.generator_symbol().to_string(),
            original: basis.original_generators().to_vec(),
            gens: basis.generators().to_vec(),
            processed: basis.processed_degree(),
            fresh: false,
        },
        &eff,
        &mut Trace::silent(),
    )?))
}

/// Runs sagbi and returns the generators of the resulting basis.
pub fn subalgebra_basis(subring: &Subring, options: &SagbiOptions) -> Result<Vec<Polynomial>> {
    Ok(sagbi(subring, options)?.generators().to_vec())
}

/// Certification: computes the full kernel of the monomial map on the
/// candidate lead terms, lifts every kernel generator and subducts it;
/// true exactly when every remainder vanishes.
fn certify(ambient: &Arc<PolyRing>, gens: &[Polynomial], symbol: &str) -> Result<bool> {
    let mut sub = Subducer::new(ambient, gens, symbol, GbMode::Full)?;
    let kernel = sub.kernel_elements();
    for (_, h) in &kernel {
        let lifted = evaluate_map(h, gens)?;
        if lifted.is_zero() {
            continue;
        }
        let (r, _) = sub.subduct(&lifted, &mut Trace::silent())?;
        if !(r.is_zero() || r.is_constant()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks whether a computation object holds a certified subalgebra basis.
pub fn is_sagbi_basis(basis: &SagbiBasis) -> Result<bool> {
    if basis.is_complete() {
        return Ok(true);
    }
    certify(
        basis.ambient_ring(),
        basis.generators(),
        basis.generator_symbol(),
    )
}

/// Checks whether a subring's furthest-advanced generators are a certified
/// subalgebra basis. Without a cached computation the original generators
/// are certified directly, with no enlargement; success is cached.
pub fn is_sagbi(subring: &Subring) -> Result<bool> {
    match subring.cached_basis() {
        Some(cached) => {
            if cached.is_complete() {
                return Ok(true);
            }
            let ok = certify(
                cached.ambient_ring(),
                cached.generators(),
                cached.generator_symbol(),
            )?;
            if ok {
                subring.force_store(Arc::new(SagbiBasis::new(
                    Arc::clone(cached.ambient_ring()),
                    cached.original_generators().to_vec(),
                    cached.generator_symbol().to_string(),
                    cached.generators().to_vec(),
                    cached.processed_degree(),
                    true,
                    false,
                    cached.options().clone(),
                )));
            }
            Ok(ok)
        }
        None => {
            let gens: Result<Vec<Polynomial>> =
                subring.generators().iter().map(|g| g.monic()).collect();
            let gens = gens?;
            let ok = certify(subring.ambient_ring(), &gens, subring.generator_symbol())?;
            if ok {
                subring.store_basis(Arc::new(SagbiBasis::new(
                    Arc::clone(subring.ambient_ring()),
                    subring.generators().to_vec(),
                    subring.generator_symbol().to_string(),
                    gens,
                    0,
                    true,
                    false,
                    SagbiOptions::default(),
                )));
            }
            Ok(ok)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::MonomialOrder;
    use crate::parse::parse_polynomial;

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
    fn subduction_of_paper_example() {
        let r = ring(&["x", "y"], MonomialOrder::GRevLex);
        let gens = polys(&r, &["x^2+x", "y^2+1"]);
        let f = poly(&r, "x^2*y^2+x^3*y");
        assert_eq!(subduct(&gens, &f).unwrap(), poly(&r, "x^3*y-x*y^2"));
    }

    #[test]
    fn subduction_trivial_cases() {
        let r = ring(&["x", "y"], MonomialOrder::GRevLex);
        let f = poly(&r, "x^2*y+3*x");
        assert_eq!(subduct(&[], &f).unwrap(), f);
        let g = poly(&r, "x^2+x");
        assert!(subduct(std::slice::from_ref(&g), &g).unwrap().is_zero());
    }

    #[test]
    fn subduction_against_partial_basis() {
        let r = ring(&["x", "y"], MonomialOrder::GRevLex);
        let gens = polys(&r, &["x+y", "x*y", "x*y^2", "x*y^3", "x*y^4"]);
        let f = poly(&r, "x*y^3+x*y^4+x*y^5+x*y^6");
        assert_eq!(subduct(&gens, &f).unwrap(), poly(&r, "x*y^6+x*y^5"));
    }

    #[test]
    fn power_sums_complete_to_elementary_symmetrics() {
        let r = ring(&["x_1", "x_2", "x_3"], MonomialOrder::GRevLex);
        let subring = Subring::new(polys(
            &r,
            &["x_1+x_2+x_3", "x_1^2+x_2^2+x_3^2", "x_1^3+x_2^3+x_3^3"],
        ))
        .unwrap();
        let basis = sagbi(&subring, &SagbiOptions::default()).unwrap();
        assert!(basis.is_complete());
        assert_eq!(basis.generators().len(), 3);
        let leads: Vec<&Monomial> = basis
            .generators()
            .iter()
            .map(|g| g.lead_monomial().unwrap())
            .collect();
        assert!(leads.contains(&&Monomial::new(vec![1, 0, 0])));
        assert!(leads.contains(&&Monomial::new(vec![1, 1, 0])));
        assert!(leads.contains(&&Monomial::new(vec![1, 1, 1])));
        assert!(is_sagbi(&subring).unwrap());
    }

    #[test]
    fn infinite_basis_stops_at_limit() {
        let r = ring(&["x_1", "x_2"], MonomialOrder::GRevLex);
        let subring = Subring::new(polys(&r, &["x_1+x_2", "x_1*x_2", "x_1*x_2^2"])).unwrap();
        let basis = sagbi(&subring, &SagbiOptions::with_limit(7)).unwrap();
        assert!(!basis.is_complete());
        let expected = polys(
            &r,
            &[
                "x_1+x_2",
                "x_1*x_2",
                "x_1*x_2^2",
                "x_1*x_2^3",
                "x_1*x_2^4",
                "x_1*x_2^5",
                "x_1*x_2^6",
            ],
        );
        assert_eq!(basis.generators(), expected.as_slice());
        assert!(!is_sagbi(&subring).unwrap());
    }

    #[test]
    fn single_generator_is_certified() {
        let r = ring(&["x", "y"], MonomialOrder::GRevLex);
        let subring = Subring::new(polys(&r, &["x^2+y"])).unwrap();
        assert!(is_sagbi(&subring).unwrap());
    }

    #[test]
    fn auto_subduce_examples() {
        let r = ring(&["x", "y"], MonomialOrder::GRevLex);
        let reduced = auto_subduce(&polys(&r, &["x", "x^2"])).unwrap();
        assert_eq!(reduced, vec![poly(&r, "x")]);

        let reduced = auto_subduce(&polys(&r, &["x+y", "x^6", "y^6"])).unwrap();
        assert_eq!(reduced.len(), 3);
        let leads: Vec<Monomial> = reduced
            .iter()
            .map(|g| g.lead_monomial().unwrap().clone())
            .collect();
        assert!(leads.contains(&Monomial::new(vec![1, 0])));
        assert!(leads.contains(&Monomial::new(vec![0, 6])));
        assert!(leads.contains(&Monomial::new(vec![5, 1])));

        let untouched = polys(&r, &["x+y", "x*y"]);
        assert_eq!(auto_subduce(&untouched).unwrap(), untouched);
    }

    #[test]
    fn resume_reaches_the_certified_basis() {
        let r = ring(&["x", "y"], MonomialOrder::GRevLex);
        let subring = Subring::new(polys(&r, &["x+y", "x^6", "y^6"])).unwrap();
        let partial = sagbi(&subring, &SagbiOptions::with_limit(5)).unwrap();
        assert!(!partial.is_complete());
        assert_eq!(partial.generators().len(), 3);
        assert!(!is_sagbi_basis(&partial).unwrap());

        let resumed = sagbi(&subring, &SagbiOptions::with_limit(100)).unwrap();
        assert!(resumed.is_complete());
        assert_eq!(resumed.generators().len(), 3);
        let third = poly(&r, "6*x^5*y+15*x^4*y^2+20*x^3*y^3+15*x^2*y^4+6*x*y^5");
        let expected = third.monic().unwrap();
        assert!(resumed.generators().contains(&expected));

        // a fresh run to the same limit matches the resumed run
        let fresh_ring = Subring::new(polys(&r, &["x+y", "x^6", "y^6"])).unwrap();
        let fresh = sagbi(&fresh_ring, &SagbiOptions::with_limit(100)).unwrap();
        assert_eq!(fresh.generators(), resumed.generators());

        // resuming the computation object directly agrees as well
        let direct = sagbi_resume(&partial, &SagbiOptions::with_limit(100)).unwrap();
        assert_eq!(direct.generators(), resumed.generators());
        assert!(direct.is_complete());
    }

    #[test]
    fn subduction_coefficients_recover_the_input() {
        let r = ring(&["x_1", "x_2", "x_3"], MonomialOrder::GRevLex);
        let gens = polys(
            &r,
            &["x_1+x_2+x_3", "x_1*x_2+x_1*x_3+x_2*x_3", "x_1*x_2*x_3"],
        );
        let f = poly(&r, "x_1^4+x_2^4+x_3^4");
        let (remainder, q) = subduct_with_coefficients(&gens, &f).unwrap();
        assert!(remainder.is_zero());
        let value = crate::poly::evaluate_map(&q, &gens).unwrap();
        assert_eq!(value, f);
    }

    #[test]
    fn subalgebra_basis_returns_generators() {
        let r = ring(&["x", "y"], MonomialOrder::GRevLex);
        let subring = Subring::new(polys(&r, &["x*y"])).unwrap();
        let gens = subalgebra_basis(&subring, &SagbiOptions::default()).unwrap();
        assert_eq!(gens, polys(&r, &["x*y"]));
    }

    #[test]
    fn strategies_agree_on_small_examples() {
        let r = ring(&["x_1", "x_2"], MonomialOrder::GRevLex);
        let gens = polys(&r, &["x_1+x_2", "x_1*x_2", "x_1*x_2^2"]);
        let mut results = Vec::new();
        for strategy in [
            Strategy::DegreeByDegree,
            Strategy::Incremental,
            Strategy::Master,
        ] {
            let subring = Subring::new(gens.clone()).unwrap();
            let opts = SagbiOptions {
                limit: 6,
                strategy,
                ..Default::default()
            };
            results.push(sagbi(&subring, &opts).unwrap().generators().to_vec());
        }
        assert_eq!(results[0], results[1]);
        assert_eq!(results[1], results[2]);
    }
}
