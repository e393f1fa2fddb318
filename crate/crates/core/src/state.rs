//! Durable state files for computation objects.
//!
//! A state file is a sectioned key/value text format with an explicit
//! format version; rings, orders and polynomials serialize in the same
//! grammar the parser accepts, so fixtures stay diffable and round-trips
//! are exact. Loading re-validates the basis invariants before
//! constructing the object.

use std::path::Path;
use std::sync::Arc;

use num::One;

use crate::error::{Error, Result};
use crate::parse::{order_to_string, parse_order_text, parse_polynomial};
use crate::poly::Polynomial;
use crate::ring::PolyRing;
use crate::sagbi::SagbiBasis;
use crate::subring::{SagbiOptions, Strategy, SubductionMethod, Subring};

pub const FORMAT_VERSION: u32 = 1;

fn poly_list(polys: &[Polynomial]) -> String {
    polys
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn strategy_name(s: Strategy) -> &'static str {
    match s {
        Strategy::DegreeByDegree => "degree",
        Strategy::Incremental => "incremental",
        Strategy::Master => "master",
    }
}

/// Serializes a computation object to `path`.
pub fn save_state(basis: &SagbiBasis, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, render_state(basis))?;
    Ok(())
}

pub fn render_state(basis: &SagbiBasis) -> String {
    let ring = basis.ambient_ring();
    let options = basis.options();
    let mut out = String::new();
    out.push_str(&format!("sagbi-state {}\n", FORMAT_VERSION));
    out.push_str("[ring]\n");
    out.push_str(&format!("vars = {}\n", ring.vars().join(", ")));
    out.push_str(&format!("order = {}\n", order_to_string(ring.order())));
    if let Some(ideal) = ring.quotient_generators() {
        out.push_str(&format!("quotient = {}\n", poly_list(ideal)));
    }
    out.push_str("[subring]\n");
    out.push_str(&format!("symbol = {}\n", basis.generator_symbol()));
    out.push_str(&format!(
        "generators = {}\n",
        poly_list(basis.original_generators())
    ));
    out.push_str("[basis]\n");
    out.push_str(&format!("generators = {}\n", poly_list(basis.generators())));
    out.push_str(&format!(
        "processed_degree = {}\n",
        basis.processed_degree()
    ));
    out.push_str(&format!("complete = {}\n", basis.is_complete()));
    out.push_str(&format!("pending = {}\n", basis.is_pending()));
    out.push_str("[options]\n");
    out.push_str(&format!("limit = {}\n", options.limit));
    out.push_str(&format!("strategy = {}\n", strategy_name(options.strategy)));
    out.push_str(&format!(
        "subduction_method = {}\n",
        match options.subduction_method {
            SubductionMethod::Top => "top",
            SubductionMethod::Engine => "engine",
        }
    ));
    out.push_str(&format!("auto_subduce = {}\n", options.auto_subduce));
    out.push_str(&format!(
        "auto_subduce_on_partial_completion = {}\n",
        options.auto_subduce_on_partial_completion
    ));
    out.push_str(&format!("print_level = {}\n", options.print_level));
    out.push_str(&format!("recompute = {}\n", options.recompute));
    out.push_str(&format!("renew_options = {}\n", options.renew_options));
    out
}

struct Sections {
    entries: Vec<(String, String, String)>,
}

impl Sections {
    fn get(&self, section: &str, key: &str) -> Result<&str> {
        self.entries
            .iter()
            .find(|(s, k, _)| s == section && k == key)
            .map(|(_, _, v)| v.as_str())
            .ok_or_else(|| Error::State(format!("missing `{}` in [{}]", key, section)))
    }

    fn get_opt(&self, section: &str, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(s, k, _)| s == section && k == key)
            .map(|(_, _, v)| v.as_str())
    }
}

fn parse_sections(text: &str) -> Result<Sections> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::State("empty state file".into()))?;
    let version = header
        .strip_prefix("sagbi-state ")
        .and_then(|v| v.trim().parse::<u32>().ok())
        .ok_or_else(|| Error::State("missing `sagbi-state <version>` header".into()))?;
    if version != FORMAT_VERSION {
        return Err(Error::State(format!(
            "unsupported format version {} (expected {})",
            version, FORMAT_VERSION
        )));
    }
    let mut entries = Vec::new();
    let mut section = String::new();
    for line in lines {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(name) = line.strip_prefix('[') {
            let name = name
                .strip_suffix(']')
                .ok_or_else(|| Error::State(format!("malformed section `{}`", line)))?;
            section = name.to_string();
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::State(format!("malformed line `{}`", line)))?;
        entries.push((
            section.clone(),
            key.trim().to_string(),
            value.trim().to_string(),
        ));
    }
    Ok(Sections { entries })
}

fn parse_bool(v: &str) -> Result<bool> {
    match v {
        "true" => Ok(true),
        "false" => Ok(false),
        other => Err(Error::State(format!(
            "expected a boolean, found `{}`",
            other
        ))),
    }
}

fn parse_poly_list(text: &str, ring: &Arc<PolyRing>) -> Result<Vec<Polynomial>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|s| parse_polynomial(s.trim(), ring).map_err(|e| Error::State(e.to_string())))
        .collect()
}

/// Loads a computation object. The returned subring carries the loaded
/// object as its cache, so computations resume from it directly.
pub fn load_state(path: impl AsRef<Path>) -> Result<(Subring, Arc<SagbiBasis>)> {
    let text = std::fs::read_to_string(path)?;
    load_state_str(&text)
}

pub fn load_state_str(text: &str) -> Result<(Subring, Arc<SagbiBasis>)> {
    let sections = parse_sections(text)?;
    let vars: Vec<String> = sections
        .get("ring", "vars")?
        .split(',')
        .map(|s| s.trim().to_string())
        .collect();
    let order = parse_order_text(sections.get("ring", "order")?)
        .map_err(|e| Error::State(e.to_string()))?;
    let base = PolyRing::new(vars, order).map_err(|e| Error::State(e.to_string()))?;
    let ring = match sections.get_opt("ring", "quotient") {
        Some(q) => {
            let ideal = parse_poly_list(q, &base)?;
            PolyRing::quotient_of(&base, ideal).map_err(|e| Error::State(e.to_string()))?
        }
        None => base,
    };

    let symbol = sections.get("subring", "symbol")?.to_string();
    let original = parse_poly_list(sections.get("subring", "generators")?, &ring)?;
    let sagbi_gens = parse_poly_list(sections.get("basis", "generators")?, &ring)?;
    let processed_degree: u64 = sections
        .get("basis", "processed_degree")?
        .parse()
        .map_err(|_| Error::State("bad processed_degree".into()))?;
    let complete = parse_bool(sections.get("basis", "complete")?)?;
    let pending = parse_bool(sections.get("basis", "pending")?)?;

    let options = SagbiOptions {
        limit: sections
            .get("options", "limit")?
            .parse()
            .map_err(|_| Error::State("bad limit".into()))?,
        strategy: match sections.get("options", "strategy")? {
            "degree" => Strategy::DegreeByDegree,
            "incremental" => Strategy::Incremental,
            "master" => Strategy::Master,
            other => return Err(Error::State(format!("unknown strategy `{}`", other))),
        },
        subduction_method: match sections.get("options", "subduction_method")? {
            "top" => SubductionMethod::Top,
            "engine" => SubductionMethod::Engine,
            other => {
                return Err(Error::State(format!(
                    "unknown subduction method `{}`",
                    other
                )))
            }
        },
        auto_subduce: parse_bool(sections.get("options", "auto_subduce")?)?,
        auto_subduce_on_partial_completion: parse_bool(
            sections.get("options", "auto_subduce_on_partial_completion")?,
        )?,
        print_level: sections
            .get("options", "print_level")?
            .parse()
            .map_err(|_| Error::State("bad print_level".into()))?,
        recompute: parse_bool(sections.get("options", "recompute")?)?,
        renew_options: parse_bool(sections.get("options", "renew_options")?)?,
    };

    // invariant validation before constructing the object
    options
        .validate()
        .map_err(|e| Error::State(e.to_string()))?;
    if processed_degree > options.limit {
        return Err(Error::State(
            "processed degree exceeds the stored limit".into(),
        ));
    }
    if sagbi_gens.is_empty() {
        return Err(Error::State("basis has no generators".into()));
    }
    for g in &sagbi_gens {
        if g.is_zero() {
            return Err(Error::State("zero basis generator".into()));
        }
        if !g
            .lead_coeff()
            .map_err(|e| Error::State(e.to_string()))?
            .is_one()
        {
            return Err(Error::State(format!(
                "basis generator `{}` is not monic",
                g
            )));
        }
    }
    if complete && pending {
        return Err(Error::State("complete basis flagged as pending".into()));
    }

    let subring = Subring::with_symbol(original.clone(), symbol.clone())
        .map_err(|e| Error::State(e.to_string()))?;
    let basis = Arc::new(SagbiBasis::new(
        Arc::clone(&ring),
        original,
        symbol,
        sagbi_gens,
        processed_degree,
        complete,
        pending,
        options,
    ));
    subring.force_store(Arc::clone(&basis));
    Ok((subring, basis))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::MonomialOrder;
    use crate::sagbi::sagbi;
    use crate::subring::SagbiOptions;

    fn partial_basis() -> Arc<SagbiBasis> {
        let r = PolyRing::new(vec!["x_1".into(), "x_2".into()], MonomialOrder::GRevLex).unwrap();
        let gens = ["x_1+x_2", "x_1*x_2", "x_1*x_2^2"]
            .iter()
            .map(|s| parse_polynomial(s, &r).unwrap())
            .collect();
        let subring = Subring::new(gens).unwrap();
        sagbi(&subring, &SagbiOptions::with_limit(7)).unwrap()
    }

    #[test]
    fn round_trip_preserves_the_partial_basis() {
        let basis = partial_basis();
        let text = render_state(&basis);
        let (_, loaded) = load_state_str(&text).unwrap();
        assert_eq!(loaded.generators(), basis.generators());
        assert_eq!(loaded.processed_degree(), basis.processed_degree());
        assert!(!loaded.is_complete());
        assert_eq!(loaded.options(), basis.options());
        assert_eq!(render_state(&loaded), text);
    }

    #[test]
    fn complete_flag_round_trips() {
        let r = PolyRing::new(vec!["x".into()], MonomialOrder::Lex).unwrap();
        let gens = vec![parse_polynomial("x^2", &r).unwrap()];
        let subring = Subring::new(gens).unwrap();
        let basis = sagbi(&subring, &SagbiOptions::default()).unwrap();
        assert!(basis.is_complete());
        let (_, loaded) = load_state_str(&render_state(&basis)).unwrap();
        assert!(loaded.is_complete());
    }

    #[test]
    fn tampered_non_monic_generator_is_rejected() {
        let basis = partial_basis();
        let text = render_state(&basis).replace("x_1+x_2,", "2*x_1+x_2,");
        match load_state_str(&text) {
            Err(Error::State(msg)) => assert!(msg.contains("monic")),
            other => panic!("expected state error, got {:?}", other),
        }
    }

    #[test]
    fn version_mismatch_is_rejected() {
        let basis = partial_basis();
        let text = render_state(&basis).replace("sagbi-state 1", "sagbi-state 2");
        assert!(matches!(load_state_str(&text), Err(Error::State(_))));
    }

    #[test]
    fn file_round_trip() {
        let basis = partial_basis();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("basis.state");
        save_state(&basis, &path).unwrap();
        let (subring, loaded) = load_state(&path).unwrap();
        assert_eq!(loaded.generators(), basis.generators());
        assert!(subring.cached_basis().is_some());
    }
}
