//! Script format for defining rings and subrings and issuing commands.
//!
//! Statements are `;`-terminated. Names must be declared before use and a
//! scope holds exactly one ring; statements containing inline polynomials
//! require the ring declaration to come first.

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::parse::{err_at, parse_expr, parse_order_spec, tokenize, Cursor, Tok};
use crate::poly::Polynomial;
use crate::ring::PolyRing;
use crate::subring::{SagbiOptions, Strategy};

#[derive(Debug, Clone)]
pub enum Statement {
    RingDecl {
        name: String,
        ring: Arc<PolyRing>,
    },
    SubringDecl {
        name: String,
        symbol: Option<String>,
        gens: Vec<Polynomial>,
    },
    Sagbi {
        name: String,
        options: SagbiOptions,
    },
    Check {
        name: String,
    },
    Subduct {
        name: String,
        poly: Polynomial,
    },
    Member {
        name: String,
        poly: Polynomial,
    },
    Intersect {
        name: String,
        left: String,
        right: String,
        limit: Option<u64>,
    },
    FullIntersection {
        name: String,
    },
    Save {
        name: String,
        path: String,
    },
    Load {
        name: String,
        path: String,
    },
    Select {
        block: usize,
        name: String,
    },
}

#[derive(Debug, Default)]
pub struct Script {
    pub statements: Vec<Statement>,
}

struct ScriptParser<'a> {
    cur: Cursor<'a>,
    ring: Option<Arc<PolyRing>>,
    names: HashSet<String>,
}

impl<'a> ScriptParser<'a> {
    fn ring(&self) -> Result<&Arc<PolyRing>> {
        let (l, c) = self.cur.here();
        self.ring
            .as_ref()
            .ok_or_else(|| err_at(l, c, "no ring declared yet".to_string()))
    }

    fn known(&self, name: &str) -> Result<()> {
        if self.names.contains(name) {
            Ok(())
        } else {
            Err(Error::UnknownName(name.to_string()))
        }
    }

    fn poly_list(&mut self) -> Result<Vec<Polynomial>> {
        let ring = Arc::clone(self.ring()?);
        let mut out = vec![parse_expr(&mut self.cur, &ring)?];
        while self.cur.eat(&Tok::Comma) {
            out.push(parse_expr(&mut self.cur, &ring)?);
        }
        Ok(out)
    }

    fn path(&mut self) -> Result<String> {
        let (l, c) = self.cur.here();
        match self.cur.next() {
            Some(t) => match &t.tok {
                Tok::Str(s) => Ok(s.clone()),
                Tok::Ident(s) => Ok(s.clone()),
                _ => Err(err_at(t.line, t.col, "expected a path".to_string())),
            },
            None => Err(err_at(l, c, "expected a path".to_string())),
        }
    }

    fn sagbi_options(&mut self) -> Result<SagbiOptions> {
        let mut options = SagbiOptions::default();
        while let Some(t) = self.cur.peek() {
            if t.tok == Tok::Semi {
                break;
            }
            let (l, c) = (t.line, t.col);
            let key = self.cur.expect_ident("an option name")?;
            self.cur.expect(Tok::Eq, "`=`")?;
            match key.as_str() {
                "limit" => options.limit = self.cur.expect_int("limit")?,
                "strategy" => {
                    let v = self.cur.expect_ident("a strategy")?;
                    options.strategy = match v.as_str() {
                        "master" => Strategy::Master,
                        "degree" => Strategy::DegreeByDegree,
                        "incremental" => Strategy::Incremental,
                        other => return Err(err_at(l, c, format!("unknown strategy `{}`", other))),
                    };
                }
                "autosubduce" => options.auto_subduce = self.boolean()?,
                "recompute" => options.recompute = self.boolean()?,
                other => return Err(err_at(l, c, format!("unknown option `{}`", other))),
            }
        }
        options.validate().map_err(|e| match e {
            Error::InvalidInput(msg) => {
                let (l, c) = self.cur.here();
                err_at(l, c, msg)
            }
            e => e,
        })?;
        Ok(options)
    }

    fn boolean(&mut self) -> Result<bool> {
        let (l, c) = self.cur.here();
        match self.cur.expect_ident("`true` or `false`")?.as_str() {
            "true" => Ok(true),
            "false" => Ok(false),
            other => Err(err_at(
                l,
                c,
                format!("expected a boolean, found `{}`", other),
            )),
        }
    }

    fn statement(&mut self) -> Result<Statement> {
        let (l, c) = self.cur.here();
        let head = self.cur.expect_ident("a statement")?;
        let stmt = match head.as_str() {
            "ring" => {
                if self.ring.is_some() {
                    return Err(err_at(l, c, "a ring is already declared in this scope"));
                }
                let name = self.cur.expect_ident("a ring name")?;
                self.expect_keyword("vars")?;
                let mut vars = vec![self.cur.expect_ident("a variable name")?];
                while self.cur.eat(&Tok::Comma) {
                    vars.push(self.cur.expect_ident("a variable name")?);
                }
                self.expect_keyword("order")?;
                let order = parse_order_spec(&mut self.cur)?;
                let base = PolyRing::new(vars, order)?;
                let ring = if self.peek_keyword("quotient") {
                    self.cur.next();
                    self.ring = Some(Arc::clone(&base));
                    let ideal = self.poly_list()?;
                    PolyRing::quotient_of(&base, ideal)?
                } else {
                    base
                };
                self.ring = Some(Arc::clone(&ring));
                Statement::RingDecl { name, ring }
            }
            "subring" => {
                let name = self.cur.expect_ident("a subring name")?;
                let symbol = if self.peek_keyword("symbol") {
                    self.cur.next();
                    Some(self.cur.expect_ident("a generator symbol")?)
                } else {
                    None
                };
                self.cur.expect(Tok::Eq, "`=`")?;
                let gens = self.poly_list()?;
                self.names.insert(name.clone());
                Statement::SubringDecl { name, symbol, gens }
            }
            "sagbi" => {
                let name = self.cur.expect_ident("a subring name")?;
                self.known(&name)?;
                let options = self.sagbi_options()?;
                Statement::Sagbi { name, options }
            }
            "check" => {
                let name = self.cur.expect_ident("a subring name")?;
                self.known(&name)?;
                Statement::Check { name }
            }
            "subduct" => {
                let name = self.cur.expect_ident("a subring name")?;
                self.known(&name)?;
                let ring = Arc::clone(self.ring()?);
                let poly = parse_expr(&mut self.cur, &ring)?;
                Statement::Subduct { name, poly }
            }
            "member" => {
                let name = self.cur.expect_ident("a subring name")?;
                self.known(&name)?;
                let ring = Arc::clone(self.ring()?);
                let poly = parse_expr(&mut self.cur, &ring)?;
                Statement::Member { name, poly }
            }
            "intersect" => {
                let name = self.cur.expect_ident("a result name")?;
                self.cur.expect(Tok::Eq, "`=`")?;
                let left = self.cur.expect_ident("a subring name")?;
                self.known(&left)?;
                self.cur.expect(Tok::Amp, "`&`")?;
                let right = self.cur.expect_ident("a subring name")?;
                self.known(&right)?;
                let limit = if self.peek_keyword("limit") {
                    self.cur.next();
                    self.cur.expect(Tok::Eq, "`=`")?;
                    Some(self.cur.expect_int("limit")?)
                } else {
                    None
                };
                self.names.insert(name.clone());
                Statement::Intersect {
                    name,
                    left,
                    right,
                    limit,
                }
            }
            "fullintersection" => {
                let name = self.cur.expect_ident("an intersection name")?;
                self.known(&name)?;
                Statement::FullIntersection { name }
            }
            "save" => {
                let name = self.cur.expect_ident("a subring name")?;
                self.known(&name)?;
                let path = self.path()?;
                Statement::Save { name, path }
            }
            "load" => {
                let name = self.cur.expect_ident("a name")?;
                let path = self.path()?;
                self.names.insert(name.clone());
                Statement::Load { name, path }
            }
            "select" => {
                let block: usize = self.cur.expect_int("a block index")?;
                let name = self.cur.expect_ident("a subring name")?;
                self.known(&name)?;
                Statement::Select { block, name }
            }
            other => {
                return Err(err_at(l, c, format!("unknown statement `{}`", other)));
            }
        };
        self.cur.expect(Tok::Semi, "`;`")?;
        Ok(stmt)
    }

    fn peek_keyword(&self, kw: &str) -> bool {
        matches!(self.cur.peek(), Some(t) if t.tok == Tok::Ident(kw.to_string()))
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<()> {
        let (l, c) = self.cur.here();
        let got = self.cur.expect_ident(&format!("`{}`", kw))?;
        if got == kw {
            Ok(())
        } else {
            Err(err_at(l, c, format!("expected `{}`", kw)))
        }
    }
}

/// Parses a script, resolving declarations eagerly: polynomials are parsed
/// against the declared ring and name references are checked.
pub fn parse_script(text: &str) -> Result<Script> {
    parse_script_with_names(text, &[])
}

/// Like `parse_script`, with `names` already in scope (objects preloaded
/// into the session, such as the CLI's `--state-in` binding).
pub fn parse_script_with_names(text: &str, names: &[&str]) -> Result<Script> {
    let toks = tokenize(text)?;
    let mut parser = ScriptParser {
        cur: Cursor::new(&toks),
        ring: None,
        names: names.iter().map(|s| s.to_string()).collect(),
    };
    let mut statements = Vec::new();
    while !parser.cur.at_end() {
        statements.push(parser.statement()?);
    }
    Ok(Script { statements })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_power_sum_session() {
        let text = "\
ring R vars x_1, x_2, x_3 order grevlex;
subring A = x_1+x_2+x_3, x_1^2+x_2^2+x_3^2, x_1^3+x_2^3+x_3^3;
sagbi A;
check A;
";
        let script = parse_script(text).unwrap();
        assert_eq!(script.statements.len(), 4);
    }

    #[test]
    fn empty_script_is_empty() {
        assert!(parse_script("").unwrap().statements.is_empty());
        assert!(parse_script("# only a comment\n")
            .unwrap()
            .statements
            .is_empty());
    }

    #[test]
    fn undeclared_subring_is_an_error() {
        let text = "ring R vars x order lex;\ncheck A;";
        assert!(matches!(
            parse_script(text),
            Err(Error::UnknownName(name)) if name == "A"
        ));
    }

    #[test]
    fn quotient_ring_declaration() {
        let text = "\
ring S vars a, b, c, d order lex quotient a*d-b*c-1;
subring G = a*c+b*d;
";
        let script = parse_script(text).unwrap();
        match &script.statements[0] {
            Statement::RingDecl { ring, .. } => assert!(ring.is_quotient()),
            other => panic!("unexpected statement {:?}", other),
        }
    }

    #[test]
    fn sagbi_options_are_parsed() {
        let text = "\
ring R vars x, y order grevlex;
subring A = x+y;
sagbi A limit=7 strategy=incremental autosubduce=false recompute=true;
";
        let script = parse_script(text).unwrap();
        match &script.statements[2] {
            Statement::Sagbi { options, .. } => {
                assert_eq!(options.limit, 7);
                assert_eq!(options.strategy, Strategy::Incremental);
                assert!(!options.auto_subduce);
                assert!(options.recompute);
            }
            other => panic!("unexpected statement {:?}", other),
        }
    }

    #[test]
    fn second_ring_is_rejected() {
        let text = "ring R vars x order lex;\nring S vars y order lex;";
        assert!(parse_script(text).is_err());
    }
}
