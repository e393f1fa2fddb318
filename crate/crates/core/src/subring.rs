//! Subrings of a (quotient) polynomial ring and sagbi computation options.

use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::membership::ExtrinsicTag;
use crate::poly::Polynomial;
use crate::ring::{same_ring, PolyRing};
use crate::sagbi::SagbiBasis;

pub const DEFAULT_GENERATOR_SYMBOL: &str = "p";

/// Finitely many generators inside an ambient ring, plus a cache holding
/// the furthest-advanced computation object seen so far. Cloning a subring
/// shares the cache.
#[derive(Clone, Debug)]
pub struct Subring {
    inner: Arc<SubringInner>,
}

#[derive(Debug)]
struct SubringInner {
    ambient: Arc<PolyRing>,
    generators: Vec<Polynomial>,
    symbol: String,
    cache: Mutex<Option<Arc<SagbiBasis>>>,
    extrinsic: Mutex<Option<Arc<ExtrinsicTag>>>,
}

impl PartialEq for Subring {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.inner.ambient, &other.inner.ambient)
            && self.inner.generators == other.inner.generators
            && self.inner.symbol == other.inner.symbol
    }
}

impl Subring {
    /// Builds a subring, dropping zero and constant generators and
    /// duplicates while preserving the order of the survivors.
    pub fn new(gens: Vec<Polynomial>) -> Result<Subring> {
        Subring::with_symbol(gens, DEFAULT_GENERATOR_SYMBOL)
    }

    pub fn with_symbol(gens: Vec<Polynomial>, symbol: impl Into<String>) -> Result<Subring> {
        let symbol = symbol.into();
        if symbol.is_empty()
            || !symbol
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || c == '_')
        {
            return Err(Error::invalid("generator symbol must be an identifier"));
        }
        let first = gens
            .first()
            .ok_or_else(|| Error::invalid("a subring needs at least one generator"))?;
        let ambient = Arc::clone(first.ring());
        let mut kept: Vec<Polynomial> = Vec::new();
        for g in gens {
            if !same_ring(g.ring(), &ambient) {
                return Err(Error::RingMismatch);
            }
            if g.is_zero() || g.is_constant() {
                continue;
            }
            if !kept.contains(&g) {
                kept.push(g);
            }
        }
        if kept.is_empty() {
            return Err(Error::invalid(
                "all generators are constant; the subring is the coefficient field",
            ));
        }
        Ok(Subring {
            inner: Arc::new(SubringInner {
                ambient,
                generators: kept,
                symbol,
                cache: Mutex::new(None),
                extrinsic: Mutex::new(None),
            }),
        })
    }

    pub fn ambient_ring(&self) -> &Arc<PolyRing> {
        &self.inner.ambient
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.inner.generators
    }

    pub fn generator_symbol(&self) -> &str {
        &self.inner.symbol
    }

    /// The furthest-advanced computation object, if any.
    pub fn cached_basis(&self) -> Option<Arc<SagbiBasis>> {
        self.inner.cache.lock().unwrap().clone()
    }

    /// Installs `basis` if it supersedes the current cache: a complete
    /// object, or one with a strictly higher processed degree.
    pub(crate) fn store_basis(&self, basis: Arc<SagbiBasis>) {
        let mut slot = self.inner.cache.lock().unwrap();
        let replace = match slot.as_ref() {
            None => true,
            Some(old) => {
                (basis.is_complete() && !old.is_complete())
                    || (basis.is_complete() == old.is_complete()
                        && basis.processed_degree() > old.processed_degree())
            }
        };
        if replace {
            *slot = Some(basis);
        }
    }

    pub(crate) fn force_store(&self, basis: Arc<SagbiBasis>) {
        *self.inner.cache.lock().unwrap() = Some(basis);
    }

    /// The cached elimination basis for the full tag ideal, built on first
    /// use by `build`.
    pub(crate) fn extrinsic_tag(
        &self,
        build: impl FnOnce() -> Result<ExtrinsicTag>,
    ) -> Result<Arc<ExtrinsicTag>> {
        let mut slot = self.inner.extrinsic.lock().unwrap();
        if let Some(tag) = slot.as_ref() {
            return Ok(Arc::clone(tag));
        }
        let tag = Arc::new(build()?);
        *slot = Some(Arc::clone(&tag));
        Ok(tag)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    DegreeByDegree,
    Incremental,
    Master,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubductionMethod {
    /// Both methods dispatch to the same engine; the flag is kept for
    /// interface fidelity.
    Top,
    Engine,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SagbiOptions {
    pub limit: u64,
    pub strategy: Strategy,
    pub subduction_method: SubductionMethod,
    pub auto_subduce: bool,
    pub auto_subduce_on_partial_completion: bool,
    pub print_level: u32,
    pub recompute: bool,
    pub renew_options: bool,
}

impl Default for SagbiOptions {
    fn default() -> Self {
        SagbiOptions {
            limit: 20,
            strategy: Strategy::Master,
            subduction_method: SubductionMethod::Top,
            auto_subduce: true,
            auto_subduce_on_partial_completion: false,
            print_level: 0,
            recompute: false,
            renew_options: false,
        }
    }
}

impl SagbiOptions {
    pub fn with_limit(limit: u64) -> Self {
        SagbiOptions {
            limit,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.limit == 0 {
            return Err(Error::invalid("limit must be at least 1"));
        }
        Ok(())
    }
}
