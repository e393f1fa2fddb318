//! Polynomial expression parser and the shared tokenizer.
//!
//! Grammar: integer and rational literals (`a/b`), declared variable
//! identifiers, operators `+ - * ^` and parentheses. `^` binds tighter than
//! `*`, which binds tighter than `+`/`-`; unary minus is allowed; there is
//! no implicit multiplication. The printer in `poly` emits this grammar, so
//! printing and re-parsing round-trips.

use std::str::FromStr;
use std::sync::Arc;

use num::{BigInt, BigRational, Zero};

use crate::error::{Error, Result};
use crate::order::MonomialOrder;
use crate::poly::Polynomial;
use crate::ring::PolyRing;

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Tok {
    Int(String),
    Ident(String),
    Str(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    Comma,
    Semi,
    Colon,
    Eq,
    Amp,
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

pub(crate) fn err_at(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        col,
        msg: msg.into(),
    }
}

/// Tokenizes script or expression text. `#` starts a comment to end of line.
pub(crate) fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut col = 1;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tl, tc) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        if c == '#' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                bump(&mut chars);
            }
            continue;
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_digit() {
                    s.push(bump(&mut chars));
                } else {
                    break;
                }
            }
            out.push(Token {
                tok: Tok::Int(s),
                line: tl,
                col: tc,
            });
            continue;
        }
        if c.is_ascii_alphabetic() {
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    s.push(bump(&mut chars));
                } else {
                    break;
                }
            }
            out.push(Token {
                tok: Tok::Ident(s),
                line: tl,
                col: tc,
            });
            continue;
        }
        if c == '"' {
            bump(&mut chars);
            let mut s = String::new();
            loop {
                match chars.peek() {
                    Some('"') => {
                        bump(&mut chars);
                        break;
                    }
                    Some(_) => s.push(bump(&mut chars)),
                    None => return Err(err_at(tl, tc, "unterminated string".to_string())),
                }
            }
            out.push(Token {
                tok: Tok::Str(s),
                line: tl,
                col: tc,
            });
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '/' => Tok::Slash,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            ';' => Tok::Semi,
            ':' => Tok::Colon,
            '=' => Tok::Eq,
            '&' => Tok::Amp,
            other => {
                return Err(err_at(tl, tc, format!("unexpected character `{}`", other)));
            }
        };
        bump(&mut chars);
        out.push(Token {
            tok,
            line: tl,
            col: tc,
        });
    }
    Ok(out)
}

/// Cursor over a token stream with one-token lookahead.
pub(crate) struct Cursor<'a> {
    toks: &'a [Token],
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(toks: &'a [Token]) -> Self {
        Cursor { toks, pos: 0 }
    }

    pub fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    pub fn next(&mut self) -> Option<&Token> {
        let t = self.toks.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub fn here(&self) -> (usize, usize) {
        match self.peek() {
            Some(t) => (t.line, t.col),
            None => self
                .toks
                .last()
                .map(|t| (t.line, t.col + 1))
                .unwrap_or((1, 1)),
        }
    }

    pub fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        let (l, c) = self.here();
        match self.next() {
            Some(t) if t.tok == tok => Ok(()),
            Some(t) => Err(err_at(t.line, t.col, format!("expected {}", what))),
            None => Err(err_at(
                l,
                c,
                format!("expected {}, found end of input", what),
            )),
        }
    }

    pub fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek().map(|t| &t.tok) == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect_ident(&mut self, what: &str) -> Result<String> {
        let (l, c) = self.here();
        match self.next() {
            Some(Token {
                tok: Tok::Ident(s), ..
            }) => Ok(s.clone()),
            Some(t) => Err(err_at(t.line, t.col, format!("expected {}", what))),
            None => Err(err_at(
                l,
                c,
                format!("expected {}, found end of input", what),
            )),
        }
    }

    pub fn expect_int<T: FromStr>(&mut self, what: &str) -> Result<T> {
        let (l, c) = self.here();
        match self.next() {
            Some(Token {
                tok: Tok::Int(s),
                line,
                col,
            }) => s
                .parse::<T>()
                .map_err(|_| err_at(*line, *col, format!("{} out of range", what))),
            Some(t) => Err(err_at(t.line, t.col, format!("expected {}", what))),
            None => Err(err_at(
                l,
                c,
                format!("expected {}, found end of input", what),
            )),
        }
    }
}

/// Parses a polynomial expression against a declared ring.
pub fn parse_polynomial(text: &str, ring: &Arc<PolyRing>) -> Result<Polynomial> {
    let toks = tokenize(text)?;
    let mut cur = Cursor::new(&toks);
    let p = parse_expr(&mut cur, ring)?;
    if let Some(t) = cur.peek() {
        return Err(err_at(
            t.line,
            t.col,
            "unexpected trailing input".to_string(),
        ));
    }
    Ok(p)
}

pub(crate) fn parse_expr(cur: &mut Cursor, ring: &Arc<PolyRing>) -> Result<Polynomial> {
    let mut acc = parse_term(cur, ring)?;
    loop {
        if cur.eat(&Tok::Plus) {
            acc = &acc + &parse_term(cur, ring)?;
        } else if cur.eat(&Tok::Minus) {
            acc = &acc - &parse_term(cur, ring)?;
        } else {
            return Ok(acc);
        }
    }
}

fn parse_term(cur: &mut Cursor, ring: &Arc<PolyRing>) -> Result<Polynomial> {
    let mut acc = parse_factor(cur, ring)?;
    while cur.eat(&Tok::Star) {
        acc = &acc * &parse_factor(cur, ring)?;
    }
    Ok(acc)
}

fn parse_factor(cur: &mut Cursor, ring: &Arc<PolyRing>) -> Result<Polynomial> {
    if cur.eat(&Tok::Minus) {
        return Ok(-&parse_factor(cur, ring)?);
    }
    let base = parse_primary(cur, ring)?;
    if cur.eat(&Tok::Caret) {
        let (l, c) = cur.here();
        if cur.eat(&Tok::Minus) {
            return Err(err_at(l, c, "negative exponent".to_string()));
        }
        let e: u32 = cur.expect_int("exponent")?;
        return Ok(base.pow(e));
    }
    Ok(base)
}

fn parse_primary(cur: &mut Cursor, ring: &Arc<PolyRing>) -> Result<Polynomial> {
    let (l, c) = cur.here();
    match cur.next().cloned() {
        Some(Token {
            tok: Tok::Int(s),
            line,
            col,
        }) => {
            let numer = BigInt::from_str(&s)
                .map_err(|_| err_at(line, col, "integer literal out of range".to_string()))?;
            if cur.eat(&Tok::Slash) {
                let (dl, dc) = cur.here();
                let d: String = match cur.next() {
                    Some(Token {
                        tok: Tok::Int(d), ..
                    }) => d.clone(),
                    _ => return Err(err_at(dl, dc, "expected denominator".to_string())),
                };
                let denom = BigInt::from_str(&d)
                    .map_err(|_| err_at(dl, dc, "integer literal out of range".to_string()))?;
                if denom.is_zero() {
                    return Err(err_at(dl, dc, "denominator is zero".to_string()));
                }
                Ok(Polynomial::constant(ring, BigRational::new(numer, denom)))
            } else {
                Ok(Polynomial::constant(ring, BigRational::from_integer(numer)))
            }
        }
        Some(Token {
            tok: Tok::Ident(name),
            line,
            col,
        }) => match ring.var_index(&name) {
            Some(i) => Polynomial::variable(ring, i),
            None => Err(err_at(line, col, format!("unknown identifier `{}`", name))),
        },
        Some(Token {
            tok: Tok::LParen, ..
        }) => {
            let inner = parse_expr(cur, ring)?;
            cur.expect(Tok::RParen, "`)`")?;
            Ok(inner)
        }
        Some(t) => Err(err_at(t.line, t.col, "expected a polynomial".to_string())),
        None => Err(err_at(
            l,
            c,
            "expected a polynomial, found end of input".to_string(),
        )),
    }
}

/// Parses an order specification:
/// `lex | grevlex | weights(<ints>)[:<spec>] | eliminate(<k>)[:<spec>] |
///  blocks(<k>:<spec>, ...)`.
pub(crate) fn parse_order_spec(cur: &mut Cursor) -> Result<MonomialOrder> {
    let (l, c) = cur.here();
    let name = cur.expect_ident("an order name")?;
    match name.as_str() {
        "lex" => Ok(MonomialOrder::Lex),
        "grevlex" => Ok(MonomialOrder::GRevLex),
        "weights" => {
            cur.expect(Tok::LParen, "`(`")?;
            let mut ws: Vec<u64> = vec![cur.expect_int("a weight")?];
            while cur.eat(&Tok::Comma) {
                ws.push(cur.expect_int("a weight")?);
            }
            cur.expect(Tok::RParen, "`)`")?;
            let tie = if cur.eat(&Tok::Colon) {
                parse_order_spec(cur)?
            } else {
                MonomialOrder::GRevLex
            };
            Ok(MonomialOrder::Weights {
                weights: ws,
                tie: Box::new(tie),
            })
        }
        "eliminate" => {
            cur.expect(Tok::LParen, "`(`")?;
            let k: usize = cur.expect_int("a block size")?;
            cur.expect(Tok::RParen, "`)`")?;
            let tie = if cur.eat(&Tok::Colon) {
                parse_order_spec(cur)?
            } else {
                MonomialOrder::GRevLex
            };
            Ok(MonomialOrder::Eliminate {
                block: k,
                tie: Box::new(tie),
            })
        }
        "blocks" => {
            cur.expect(Tok::LParen, "`(`")?;
            let mut parts = Vec::new();
            loop {
                let k: usize = cur.expect_int("a block size")?;
                cur.expect(Tok::Colon, "`:`")?;
                parts.push((k, parse_order_spec(cur)?));
                if !cur.eat(&Tok::Comma) {
                    break;
                }
            }
            cur.expect(Tok::RParen, "`)`")?;
            Ok(MonomialOrder::Blocks(parts))
        }
        other => Err(err_at(l, c, format!("unknown order `{}`", other))),
    }
}

/// Prints an order in the grammar accepted by `parse_order_spec`.
pub fn order_to_string(order: &MonomialOrder) -> String {
    match order {
        MonomialOrder::Lex => "lex".to_string(),
        MonomialOrder::GRevLex => "grevlex".to_string(),
        MonomialOrder::Weights { weights, tie } => {
            let ws: Vec<String> = weights.iter().map(|w| w.to_string()).collect();
            let mut s = format!("weights({})", ws.join(","));
            if **tie != MonomialOrder::GRevLex {
                s.push(':');
                s.push_str(&order_to_string(tie));
            }
            s
        }
        MonomialOrder::Eliminate { block, tie } => {
            let mut s = format!("eliminate({})", block);
            if **tie != MonomialOrder::GRevLex {
                s.push(':');
                s.push_str(&order_to_string(tie));
            }
            s
        }
        MonomialOrder::Blocks(parts) => {
            let inner: Vec<String> = parts
                .iter()
                .map(|(k, sub)| format!("{}:{}", k, order_to_string(sub)))
                .collect();
            format!("blocks({})", inner.join(","))
        }
    }
}

/// Parses an order specification from standalone text.
pub fn parse_order_text(text: &str) -> Result<MonomialOrder> {
    let toks = tokenize(text)?;
    let mut cur = Cursor::new(&toks);
    let order = parse_order_spec(&mut cur)?;
    if let Some(t) = cur.peek() {
        return Err(err_at(
            t.line,
            t.col,
            "unexpected trailing input".to_string(),
        ));
    }
    Ok(order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring3() -> Arc<PolyRing> {
        PolyRing::new(
            vec!["x_1".into(), "x_2".into(), "x_3".into()],
            MonomialOrder::GRevLex,
        )
        .unwrap()
    }

    #[test]
    fn parses_power_sum() {
        let r = ring3();
        let f = parse_polynomial("x_1^2+x_2^2+x_3^2", &r).unwrap();
        assert_eq!(f.terms().len(), 3);
        assert_eq!(f.total_degree(), 2);
    }

    #[test]
    fn parses_zero() {
        let r = ring3();
        assert!(parse_polynomial("0", &r).unwrap().is_zero());
    }

    #[test]
    fn expands_parenthesized_powers() {
        let r = PolyRing::new(vec!["x".into(), "y".into()], MonomialOrder::GRevLex).unwrap();
        let f = parse_polynomial("(x+y)^2 - x^2 - 2*x*y", &r).unwrap();
        assert_eq!(f, parse_polynomial("y^2", &r).unwrap());
    }

    #[test]
    fn reports_unknown_identifier_position() {
        let r = ring3();
        match parse_polynomial("x_1 + zz", &r) {
            Err(Error::Parse { line, col, msg }) => {
                assert_eq!((line, col), (1, 7));
                assert!(msg.contains("zz"));
            }
            other => panic!("expected parse error, got {:?}", other),
        }
    }

    #[test]
    fn rejects_negative_exponent() {
        let r = ring3();
        assert!(matches!(
            parse_polynomial("x_1^-2", &r),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn rational_literals() {
        let r = ring3();
        let f = parse_polynomial("1/2*x_1 - 3/4", &r).unwrap();
        assert_eq!(format!("{}", f), "1/2*x_1-3/4");
        assert!(parse_polynomial("1/0", &r).is_err());
    }

    #[test]
    fn order_spec_round_trips() {
        for s in [
            "lex",
            "grevlex",
            "weights(0,15,3)",
            "eliminate(3):lex",
            "blocks(1:lex,2:grevlex)",
            "weights(1,2):lex",
        ] {
            let order = parse_order_text(s).unwrap();
            assert_eq!(order_to_string(&order), s);
        }
    }
}
