//! ASCII formula syntax.
//!
//! ```text
//! E(x,y)   x=y   ~f   f & g   f | g   f -> g
//! forall x. f    exists x. f
//! dist<=2(x,y)   path=3(x,y)      (macros)
//! ```
//! `->` is right-associative; `~` binds tightest, then `&`, then `|`, then
//! `->`; a quantifier scopes as far to the right as possible. Variables not
//! bound by a quantifier must be declared in `allowed_free`. Identifiers
//! starting with `_` are reserved for generated formulas.

use thiserror::Error;

use super::formulas::{dist_le_formula, exact_path_formula, rename_free};
use super::Formula;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormulaParseError {
    #[error("at {pos}: {msg}")]
    At { pos: usize, msg: String },
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T, FormulaParseError> {
    Err(FormulaParseError::At {
        pos,
        msg: msg.into(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Eq,
    Not,
    And,
    Or,
    Arrow,
    Dot,
    Forall,
    Exists,
    DistLe(usize),
    PathEq(usize),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, FormulaParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '(' => {
                out.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                out.push((i, Tok::RParen));
                i += 1;
            }
            ',' => {
                out.push((i, Tok::Comma));
                i += 1;
            }
            '=' => {
                out.push((i, Tok::Eq));
                i += 1;
            }
            '~' => {
                out.push((i, Tok::Not));
                i += 1;
            }
            '&' => {
                out.push((i, Tok::And));
                i += 1;
            }
            '|' => {
                out.push((i, Tok::Or));
                i += 1;
            }
            '.' => {
                out.push((i, Tok::Dot));
                i += 1;
            }
            '-' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    out.push((i, Tok::Arrow));
                    i += 2;
                } else {
                    return err(i, "expected `->`");
                }
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                let word = &text[start..i];
                match word {
                    "forall" => out.push((start, Tok::Forall)),
                    "exists" => out.push((start, Tok::Exists)),
                    "dist" => {
                        // dist<=d
                        if !text[i..].starts_with("<=") {
                            return err(i, "expected `<=` after `dist`");
                        }
                        i += 2;
                        let (num, next) = lex_number(text, i)?;
                        out.push((start, Tok::DistLe(num)));
                        i = next;
                    }
                    "path" => {
                        if !text[i..].starts_with('=') {
                            return err(i, "expected `=` after `path`");
                        }
                        i += 1;
                        let (num, next) = lex_number(text, i)?;
                        out.push((start, Tok::PathEq(num)));
                        i = next;
                    }
                    _ => out.push((start, Tok::Ident(word.to_string()))),
                }
            }
            '_' => return err(i, "identifiers starting with `_` are reserved"),
            other => return err(i, format!("unexpected character {other:?}")),
        }
    }
    Ok(out)
}

fn lex_number(text: &str, start: usize) -> Result<(usize, usize), FormulaParseError> {
    let bytes = text.as_bytes();
    let mut i = start;
    while i < bytes.len() && bytes[i].is_ascii_digit() {
        i += 1;
    }
    if i == start {
        return err(start, "expected a number");
    }
    match text[start..i].parse() {
        Ok(n) => Ok((n, i)),
        Err(_) => err(start, "number out of range"),
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|(p, _)| *p)
            .unwrap_or_else(|| self.toks.last().map(|(p, _)| p + 1).unwrap_or(0))
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: &Tok, what: &str) -> Result<(), FormulaParseError> {
        let pos = self.here();
        match self.next() {
            Some(t) if t == *want => Ok(()),
            _ => err(pos, format!("expected {what}")),
        }
    }

    fn ident(&mut self, what: &str) -> Result<String, FormulaParseError> {
        let pos = self.here();
        match self.next() {
            Some(Tok::Ident(s)) => Ok(s),
            _ => err(pos, format!("expected {what}")),
        }
    }

    // implication (right-assoc) > or > and > unary
    fn formula(&mut self) -> Result<Formula, FormulaParseError> {
        let lhs = self.or_level()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.next();
            let rhs = self.formula()?;
            return Ok(lhs.implies(rhs));
        }
        Ok(lhs)
    }

    fn or_level(&mut self) -> Result<Formula, FormulaParseError> {
        let mut lhs = self.and_level()?;
        while self.peek() == Some(&Tok::Or) {
            self.next();
            let rhs = self.and_level()?;
            lhs = lhs.or(rhs);
        }
        Ok(lhs)
    }

    fn and_level(&mut self) -> Result<Formula, FormulaParseError> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(&Tok::And) {
            self.next();
            let rhs = self.unary()?;
            lhs = lhs.and(rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, FormulaParseError> {
        let pos = self.here();
        match self.peek() {
            Some(Tok::Not) => {
                self.next();
                Ok(self.unary()?.not())
            }
            Some(Tok::Forall) | Some(Tok::Exists) => {
                let is_forall = self.peek() == Some(&Tok::Forall);
                self.next();
                let var = self.ident("a quantified variable")?;
                self.expect(&Tok::Dot, "`.` after the quantified variable")?;
                let body = self.formula()?;
                Ok(if is_forall {
                    Formula::forall(var, body)
                } else {
                    Formula::exists(var, body)
                })
            }
            Some(Tok::LParen) => {
                self.next();
                let inner = self.formula()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Some(Tok::DistLe(d)) => {
                let d = *d;
                self.next();
                let (x, y) = self.macro_args()?;
                Ok(rename_free(&dist_le_formula(d), &[("x", &x), ("y", &y)]))
            }
            Some(Tok::PathEq(k)) => {
                let k = *k;
                self.next();
                if k == 0 {
                    return err(pos, "path=k needs k >= 1");
                }
                let (x, y) = self.macro_args()?;
                Ok(rename_free(&exact_path_formula(k), &[("x", &x), ("y", &y)]))
            }
            Some(Tok::Ident(_)) => {
                let name = self.ident("an identifier")?;
                match self.peek() {
                    Some(Tok::LParen) => {
                        self.next();
                        let mut args = Vec::new();
                        if self.peek() != Some(&Tok::RParen) {
                            loop {
                                args.push(self.ident("an argument variable")?);
                                if self.peek() == Some(&Tok::Comma) {
                                    self.next();
                                } else {
                                    break;
                                }
                            }
                        }
                        self.expect(&Tok::RParen, "`)`")?;
                        let arg_refs: Vec<&str> = args.iter().map(String::as_str).collect();
                        Ok(Formula::atom(name, &arg_refs))
                    }
                    Some(Tok::Eq) => {
                        self.next();
                        let rhs = self.ident("a variable after `=`")?;
                        Ok(Formula::eq(name, rhs))
                    }
                    _ => err(pos, "expected `(` or `=` after identifier"),
                }
            }
            _ => err(pos, "expected a formula"),
        }
    }

    fn macro_args(&mut self) -> Result<(String, String), FormulaParseError> {
        self.expect(&Tok::LParen, "`(`")?;
        let x = self.ident("a variable")?;
        self.expect(&Tok::Comma, "`,`")?;
        let y = self.ident("a variable")?;
        self.expect(&Tok::RParen, "`)`")?;
        Ok((x, y))
    }
}

/// Parses a formula; free variables must come from `allowed_free`.
pub fn parse_formula(text: &str, allowed_free: &[&str]) -> Result<Formula, FormulaParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let f = p.formula()?;
    if p.pos < p.toks.len() {
        return err(p.here(), "trailing input after the formula");
    }
    for v in f.free_vars() {
        if !allowed_free.contains(&v.as_str()) {
            return err(0, format!("unbound variable {v:?}"));
        }
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{standard_graph, FamilySpec};
    use crate::logic::eval;

    #[test]
    fn parses_basic_connectives() {
        let f = parse_formula("E(x,y) & ~x=y -> exists z. E(y,z)", &["x", "y"]).unwrap();
        assert_eq!(
            f.to_string(),
            "((E(x,y) & ~x=y) -> exists z. E(y,z))"
        );
    }

    #[test]
    fn precedence_and_or() {
        let f = parse_formula("E(x,y) | E(y,x) & x=y", &["x", "y"]).unwrap();
        assert_eq!(f.to_string(), "(E(x,y) | (E(y,x) & x=y))");
    }

    #[test]
    fn quantifier_scopes_to_the_right() {
        let f = parse_formula("forall u. E(x,u) -> E(u,x)", &["x"]).unwrap();
        assert_eq!(f.to_string(), "forall u. (E(x,u) -> E(u,x))");
    }

    #[test]
    fn display_roundtrip() {
        let texts = [
            "E(x,y)",
            "x=y",
            "~(E(x,y) | x=y)",
            "exists z. (E(x,z) & E(z,y))",
        ];
        for t in texts {
            let f = parse_formula(t, &["x", "y"]).unwrap();
            let back = parse_formula(&f.to_string(), &["x", "y"]).unwrap();
            assert_eq!(f, back);
        }
    }

    #[test]
    fn rejects_unbound_variables() {
        assert!(parse_formula("E(x,q)", &["x", "y"]).is_err());
        assert!(parse_formula("exists z. E(z,q)", &["x", "y"]).is_err());
        assert!(parse_formula("E(x,y)", &["x", "y"]).is_ok());
    }

    #[test]
    fn rejects_reserved_and_garbage() {
        assert!(parse_formula("_x=_x", &[]).is_err());
        assert!(parse_formula("E(x,y) %", &["x", "y"]).is_err());
        assert!(parse_formula("E(x,y", &["x", "y"]).is_err());
        assert!(parse_formula("dist<(x,y)", &["x", "y"]).is_err());
    }

    #[test]
    fn macros_expand_and_evaluate() {
        let p4 = standard_graph(FamilySpec::Path(4)).unwrap();
        let d2 = parse_formula("dist<=2(x,y)", &["x", "y"]).unwrap();
        assert!(eval(&p4, &d2, &[("x", 0), ("y", 2)]).unwrap());
        assert!(!eval(&p4, &d2, &[("x", 0), ("y", 3)]).unwrap());

        let p1 = parse_formula("path=1(x,y)", &["x", "y"]).unwrap();
        assert!(eval(&p4, &p1, &[("x", 1), ("y", 2)]).unwrap());
        assert!(!eval(&p4, &p1, &[("x", 0), ("y", 2)]).unwrap());
    }

    #[test]
    fn macro_arguments_can_be_any_allowed_variables() {
        let p4 = standard_graph(FamilySpec::Path(4)).unwrap();
        let f = parse_formula("exists u. path=2(u,y)", &["y"]).unwrap();
        assert!(eval(&p4, &f, &[("y", 2)]).unwrap());
    }
}
