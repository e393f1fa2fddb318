//! Executes parsed scripts against a named-object session.
//!
//! Output echoes results, not inputs, numbered per statement. Verbosity
//! lines are prefixed so the quiet output is a subsequence of any more
//! verbose run of the same script.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::membership::{
    groebner_membership_test, is_full_intersection, subring_intersection, IntersectedSubring,
};
use crate::poly::{select_in_subring, Polynomial};
use crate::ring::{same_ring, PolyRing};
use crate::sagbi::{is_sagbi, sagbi_traced, subduct, SagbiBasis};
use crate::script::{Script, Statement};
use crate::state::{load_state, render_state, save_state};
use crate::subring::{SagbiOptions, Subring};
use crate::trace::Trace;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Structured,
}

enum Entry {
    Sub(Subring),
    Intersection(IntersectedSubring),
}

#[derive(Default)]
pub struct Session {
    ring: Option<Arc<PolyRing>>,
    entries: BTreeMap<String, Entry>,
    last_basis: Option<Arc<SagbiBasis>>,
}

impl Session {
    pub fn new() -> Session {
        Session::default()
    }

    /// Registers a loaded computation object under `name`, adopting its
    /// ring as the session ring.
    pub fn preload(&mut self, name: impl Into<String>, subring: Subring) -> Result<()> {
        let ring = Arc::clone(subring.ambient_ring());
        match &self.ring {
            Some(r) if !same_ring(r, &ring) => {
                return Err(Error::invalid(
                    "loaded state does not match the session ring",
                ))
            }
            _ => self.ring = Some(ring),
        }
        if let Some(basis) = subring.cached_basis() {
            self.last_basis = Some(basis);
        }
        self.entries.insert(name.into(), Entry::Sub(subring));
        Ok(())
    }

    /// The most recently created or loaded computation object.
    pub fn last_basis(&self) -> Option<Arc<SagbiBasis>> {
        self.last_basis.clone()
    }

    fn subring(&self, name: &str) -> Result<&Subring> {
        match self.entries.get(name) {
            Some(Entry::Sub(s)) => Ok(s),
            Some(Entry::Intersection(_)) => Err(Error::invalid(format!(
                "`{}` is an intersection, not a subring",
                name
            ))),
            None => Err(Error::UnknownName(name.to_string())),
        }
    }

    fn intersection(&self, name: &str) -> Result<&IntersectedSubring> {
        match self.entries.get(name) {
            Some(Entry::Intersection(i)) => Ok(i),
            Some(Entry::Sub(_)) => Err(Error::invalid(format!(
                "`{}` is a subring, not an intersection",
                name
            ))),
            None => Err(Error::UnknownName(name.to_string())),
        }
    }

    /// Runs every statement, returning the rendered output.
    pub fn run(
        &mut self,
        script: &Script,
        print_level: u32,
        format: OutputFormat,
    ) -> Result<String> {
        let mut out = String::new();
        for (idx, stmt) in script.statements.iter().enumerate() {
            let n = idx + 1;
            let mut trace_lines: Vec<String> = Vec::new();
            let result = self.execute(stmt, print_level, &mut trace_lines)?;
            for line in &trace_lines {
                match format {
                    OutputFormat::Text => out.push_str(&format!("-- {}\n", line)),
                    OutputFormat::Structured => out.push_str(&format!("# -- {}\n", line)),
                }
            }
            if let Some(result) = result {
                match format {
                    OutputFormat::Text => {
                        out.push_str(&format!("{}: {}\n", n, result.text()));
                    }
                    OutputFormat::Structured => {
                        out.push_str(&format!("[result {}]\n", n));
                        out.push_str(&result.structured());
                    }
                }
            }
        }
        Ok(out)
    }

    fn execute(
        &mut self,
        stmt: &Statement,
        print_level: u32,
        trace_lines: &mut Vec<String>,
    ) -> Result<Option<StatementResult>> {
        match stmt {
            Statement::RingDecl { name, ring } => {
                match &self.ring {
                    Some(r) if !same_ring(r, ring) => {
                        return Err(Error::invalid(
                            "script ring conflicts with the session ring",
                        ))
                    }
                    _ => self.ring = Some(Arc::clone(ring)),
                }
                Ok(Some(StatementResult::Ring {
                    name: name.clone(),
                    vars: ring.var_count(),
                    quotient: ring.is_quotient(),
                }))
            }
            Statement::SubringDecl { name, symbol, gens } => {
                let subring = match symbol {
                    Some(sym) => Subring::with_symbol(gens.clone(), sym.clone())?,
                    None => Subring::new(gens.clone())?,
                };
                let count = subring.generators().len();
                self.entries.insert(name.clone(), Entry::Sub(subring));
                Ok(Some(StatementResult::Subring {
                    name: name.clone(),
                    count,
                }))
            }
            Statement::Sagbi { name, options } => {
                let subring = self.subring(name)?.clone();
                let mut options = options.clone();
                options.print_level = print_level;
                let mut sink = |s: &str| trace_lines.push(s.to_string());
                let mut trace = Trace::new(print_level, &mut sink);
                let basis = sagbi_traced(&subring, &options, &mut trace)?;
                self.last_basis = Some(Arc::clone(&basis));
                Ok(Some(StatementResult::Basis(basis)))
            }
            Statement::Check { name } => {
                let subring = self.subring(name)?;
                Ok(Some(StatementResult::Bool(is_sagbi(subring)?)))
            }
            Statement::Subduct { name, poly } => {
                let subring = self.subring(name)?;
                let gens: Vec<Polynomial> = match subring.cached_basis() {
                    Some(basis) => basis.generators().to_vec(),
                    None => subring.generators().to_vec(),
                };
                Ok(Some(StatementResult::Poly(subduct(&gens, poly)?)))
            }
            Statement::Member { name, poly } => {
                let value = match self.entries.get(name) {
                    Some(Entry::Sub(subring)) => groebner_membership_test(poly, subring)?,
                    Some(Entry::Intersection(inter)) => {
                        let base = inter.base_subring().ok_or_else(|| {
                            Error::invalid("intersection has no non-constant generators")
                        })?;
                        groebner_membership_test(poly, &base)?
                    }
                    None => return Err(Error::UnknownName(name.clone())),
                };
                Ok(Some(StatementResult::Bool(value)))
            }
            Statement::Intersect {
                name,
                left,
                right,
                limit,
            } => {
                let s1 = self.subring(left)?.clone();
                let s2 = self.subring(right)?.clone();
                let mut options = SagbiOptions::default();
                if let Some(l) = limit {
                    options.limit = *l;
                }
                options.print_level = print_level;
                let inter = subring_intersection(&s1, &s2, &options)?;
                let count = inter.generators().len();
                self.entries
                    .insert(name.clone(), Entry::Intersection(inter));
                Ok(Some(StatementResult::Intersection {
                    name: name.clone(),
                    count,
                }))
            }
            Statement::FullIntersection { name } => {
                let inter = self.intersection(name)?;
                Ok(Some(StatementResult::Bool(is_full_intersection(inter))))
            }
            Statement::Save { name, path } => {
                let subring = self.subring(name)?;
                let basis = subring.cached_basis().ok_or_else(|| {
                    Error::invalid(format!(
                        "`{}` has no computation object to save; run sagbi first",
                        name
                    ))
                })?;
                save_state(&basis, path)?;
                Ok(None)
            }
            Statement::Load { name, path } => {
                let (subring, basis) = load_state(path)?;
                match &self.ring {
                    Some(r) if !same_ring(r, subring.ambient_ring()) => {
                        return Err(Error::invalid(
                            "loaded state does not match the session ring",
                        ))
                    }
                    Some(_) => {}
                    None => self.ring = Some(Arc::clone(subring.ambient_ring())),
                }
                self.entries.insert(name.clone(), Entry::Sub(subring));
                self.last_basis = Some(Arc::clone(&basis));
                Ok(Some(StatementResult::Basis(basis)))
            }
            Statement::Select { block, name } => {
                let subring = self.subring(name)?;
                let gens: Vec<Polynomial> = match subring.cached_basis() {
                    Some(basis) => basis.generators().to_vec(),
                    None => subring.generators().to_vec(),
                };
                let selected = select_in_subring(*block, &gens)?;
                Ok(Some(StatementResult::PolyList(selected)))
            }
        }
    }
}

enum StatementResult {
    Ring {
        name: String,
        vars: usize,
        quotient: bool,
    },
    Subring {
        name: String,
        count: usize,
    },
    Basis(Arc<SagbiBasis>),
    Bool(bool),
    Poly(Polynomial),
    PolyList(Vec<Polynomial>),
    Intersection {
        name: String,
        count: usize,
    },
}

impl StatementResult {
    fn text(&self) -> String {
        match self {
            StatementResult::Ring {
                name,
                vars,
                quotient,
            } => {
                if *quotient {
                    format!("quotient ring {} with {} variables", name, vars)
                } else {
                    format!("ring {} with {} variables", name, vars)
                }
            }
            StatementResult::Subring { name, count } => {
                format!("subring {} with {} generators", name, count)
            }
            StatementResult::Basis(b) => format!(
                "SAGBIBasis with {} generators, limit={}, complete={}",
                b.generators().len(),
                b.options().limit,
                b.is_complete()
            ),
            StatementResult::Bool(v) => v.to_string(),
            StatementResult::Poly(p) => p.to_string(),
            StatementResult::PolyList(ps) => {
                let inner: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
                format!("| {} |", inner.join(" "))
            }
            StatementResult::Intersection { name, count } => {
                format!("intersection {} with {} generators", name, count)
            }
        }
    }

    fn structured(&self) -> String {
        match self {
            StatementResult::Ring {
                name,
                vars,
                quotient,
            } => format!(
                "kind = ring\nname = {}\nvariables = {}\nquotient = {}\n",
                name, vars, quotient
            ),
            StatementResult::Subring { name, count } => {
                format!("kind = subring\nname = {}\ngenerators = {}\n", name, count)
            }
            StatementResult::Basis(b) => {
                let mut s = String::from("kind = sagbi\n");
                s.push_str(&render_state(b));
                s
            }
            StatementResult::Bool(v) => format!("kind = bool\nvalue = {}\n", v),
            StatementResult::Poly(p) => format!("kind = polynomial\nvalue = {}\n", p),
            StatementResult::PolyList(ps) => {
                let inner: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
                format!("kind = polynomials\nvalue = {}\n", inner.join(", "))
            }
            StatementResult::Intersection { name, count } => format!(
                "kind = intersection\nname = {}\ngenerators = {}\n",
                name, count
            ),
        }
    }
}

/// Parses and runs a script in a fresh session.
pub fn run_script_text(
    text: &str,
    print_level: u32,
    format: OutputFormat,
) -> Result<(String, Session)> {
    let script = crate::script::parse_script(text)?;
    let mut session = Session::new();
    let output = session.run(&script, print_level, format)?;
    Ok((output, session))
}

#[cfg(test)]
mod tests {
    use super::*;

    const POWER_SUM_SESSION: &str = "\
ring R vars x_1, x_2, x_3 order grevlex;
subring A = x_1+x_2+x_3, x_1^2+x_2^2+x_3^2, x_1^3+x_2^3+x_3^3;
sagbi A;
check A;
";

    #[test]
    fn power_sum_session_output() {
        let (out, _) = run_script_text(POWER_SUM_SESSION, 0, OutputFormat::Text).unwrap();
        assert_eq!(
            out,
            "1: ring R with 3 variables\n\
             2: subring A with 3 generators\n\
             3: SAGBIBasis with 3 generators, limit=20, complete=true\n\
             4: true\n"
        );
    }

    #[test]
    fn empty_script_produces_no_output() {
        let (out, _) = run_script_text("", 0, OutputFormat::Text).unwrap();
        assert!(out.is_empty());
    }

    #[test]
    fn verbose_output_contains_quiet_output() {
        let (quiet, _) = run_script_text(POWER_SUM_SESSION, 0, OutputFormat::Text).unwrap();
        let (verbose, _) = run_script_text(POWER_SUM_SESSION, 2, OutputFormat::Text).unwrap();
        let mut verbose_lines = verbose.lines();
        for needle in quiet.lines() {
            assert!(
                verbose_lines.any(|l| l == needle),
                "line `{}` missing from verbose output",
                needle
            );
        }
        assert!(verbose.lines().count() > quiet.lines().count());
    }

    #[test]
    fn structured_output_embeds_state() {
        let (out, _) = run_script_text(POWER_SUM_SESSION, 0, OutputFormat::Structured).unwrap();
        assert!(out.contains("[result 3]"));
        assert!(out.contains("kind = sagbi"));
        assert!(out.contains("sagbi-state 1"));
        assert!(out.contains("value = true"));
    }

    #[test]
    fn subduction_uses_the_cached_partial_basis() {
        let text = "\
ring R vars x, y order grevlex;
subring A = x+y, x*y, x*y^2;
sagbi A limit=5;
subduct A x*y^3+x*y^4+x*y^5+x*y^6;
member A x*y^3+x*y^4+x*y^5+x*y^6;
sagbi A limit=7;
subduct A x*y^3+x*y^4+x*y^5+x*y^6;
";
        let (out, _) = run_script_text(text, 0, OutputFormat::Text).unwrap();
        assert!(out.contains("4: x*y^6+x*y^5\n"));
        assert!(out.contains("5: true\n"));
        assert!(out.contains("7: 0\n"));
    }
}
