//! Text grammar for polynomials.
//!
//! Terms are joined by `+`/`-`; a term is `coeff`, `coeff*mono`, or `mono`;
//! a coeff is `int` or `int/int`; a mono is `name`, `name^k`, or products
//! joined by `*`; names match `[A-Za-z][A-Za-z0-9_]*`. Whitespace is
//! insignificant. Example: `3/2*x^2*y - y + 1`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::multipoly::MultiPoly;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    Int(BigInt),
    Name(String),
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    col: usize,
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col, msg: msg.into() }
}

fn lex(text: &str, line: usize) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            ' ' | '\t' => {
                i += 1;
            }
            '+' => {
                out.push(Spanned { tok: Tok::Plus, col });
                i += 1;
            }
            '-' => {
                out.push(Spanned { tok: Tok::Minus, col });
                i += 1;
            }
            '*' => {
                out.push(Spanned { tok: Tok::Star, col });
                i += 1;
            }
            '^' => {
                out.push(Spanned { tok: Tok::Caret, col });
                i += 1;
            }
            '/' => {
                out.push(Spanned { tok: Tok::Slash, col });
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                let n = digits
                    .parse::<BigInt>()
                    .map_err(|_| err(line, col, "invalid integer"))?;
                out.push(Spanned { tok: Tok::Int(n), col });
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                i += 1;
                while i < chars.len()
                    && (chars[i].is_ascii_alphanumeric() || chars[i] == '_')
                {
                    i += 1;
                }
                let name: String = chars[start..i].iter().collect();
                out.push(Spanned { tok: Tok::Name(name), col });
            }
            other => return Err(err(line, col, format!("unexpected character '{other}'"))),
        }
    }
    Ok(out)
}

enum VarsMode<'a> {
    Fixed(&'a [String]),
    Infer,
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    line: usize,
    mode: VarsMode<'a>,
    inferred: Vec<String>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Spanned> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Spanned> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn end_col(&self) -> usize {
        self.toks.last().map_or(1, |t| t.col + 1)
    }

    fn var_index(&mut self, name: &str, col: usize) -> Result<usize> {
        match &self.mode {
            VarsMode::Fixed(vars) => vars
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| err(self.line, col, format!("unknown variable {name}"))),
            VarsMode::Infer => Ok(match self.inferred.iter().position(|v| v == name) {
                Some(i) => i,
                None => {
                    self.inferred.push(name.to_string());
                    self.inferred.len() - 1
                }
            }),
        }
    }

    /// factor := int ('/' int)? | name ('^' int)?
    fn factor(&mut self, coeff: &mut Rational, exps: &mut BTreeMap<usize, u32>) -> Result<()> {
        let t = self
            .next()
            .ok_or_else(|| err(self.line, self.end_col(), "expected a term factor"))?;
        match t.tok {
            Tok::Int(n) => {
                if matches!(self.peek().map(|s| &s.tok), Some(Tok::Slash)) {
                    self.next();
                    let d = self
                        .next()
                        .ok_or_else(|| err(self.line, self.end_col(), "expected denominator"))?;
                    match d.tok {
                        Tok::Int(dv) => {
                            if dv.is_zero() {
                                return Err(err(self.line, d.col, "zero denominator"));
                            }
                            *coeff *= Rational::new(n, dv);
                        }
                        _ => return Err(err(self.line, d.col, "expected denominator")),
                    }
                } else {
                    *coeff *= Rational::from_integer(n);
                }
            }
            Tok::Name(name) => {
                let idx = self.var_index(&name, t.col)?;
                let mut k = 1u32;
                if matches!(self.peek().map(|s| &s.tok), Some(Tok::Caret)) {
                    self.next();
                    let e = self
                        .next()
                        .ok_or_else(|| err(self.line, self.end_col(), "expected exponent"))?;
                    match e.tok {
                        Tok::Int(ev) => {
                            k = ev.try_into().map_err(|_| {
                                err(self.line, e.col, "exponent out of range")
                            })?;
                        }
                        _ => return Err(err(self.line, e.col, "expected exponent")),
                    }
                }
                *exps.entry(idx).or_insert(0) += k;
            }
            _ => return Err(err(self.line, t.col, "expected a coefficient or variable")),
        }
        Ok(())
    }

    /// term := factor ('*' factor)*
    fn term(&mut self) -> Result<(Rational, BTreeMap<usize, u32>)> {
        let mut coeff = Rational::one();
        let mut exps = BTreeMap::new();
        self.factor(&mut coeff, &mut exps)?;
        while matches!(self.peek().map(|s| &s.tok), Some(Tok::Star)) {
            self.next();
            self.factor(&mut coeff, &mut exps)?;
        }
        Ok((coeff, exps))
    }

    fn poly(&mut self) -> Result<Vec<(Rational, BTreeMap<usize, u32>)>> {
        let mut terms = Vec::new();
        let mut sign = Rational::one();
        // optional leading sign
        match self.peek().map(|s| s.tok.clone()) {
            Some(Tok::Minus) => {
                self.next();
                sign = -sign;
            }
            Some(Tok::Plus) => {
                self.next();
            }
            _ => {}
        }
        loop {
            let (c, e) = self.term()?;
            terms.push((sign.clone() * c, e));
            match self.next() {
                None => break,
                Some(s) => match s.tok {
                    Tok::Plus => sign = Rational::one(),
                    Tok::Minus => sign = -Rational::one(),
                    _ => return Err(err(self.line, s.col, "expected '+' or '-'")),
                },
            }
        }
        Ok(terms)
    }
}

fn parse_with_mode(
    text: &str,
    mode: VarsMode<'_>,
    line: usize,
) -> Result<(Vec<(Rational, BTreeMap<usize, u32>)>, Vec<String>)> {
    let toks = lex(text, line)?;
    if toks.is_empty() {
        return Err(err(line, 1, "empty polynomial"));
    }
    let fixed: Option<Vec<String>> = match &mode {
        VarsMode::Fixed(v) => Some(v.to_vec()),
        VarsMode::Infer => None,
    };
    let mut p = Parser { toks, pos: 0, line, mode, inferred: Vec::new() };
    let terms = p.poly()?;
    let vars = fixed.unwrap_or(p.inferred);
    Ok((terms, vars))
}

fn build(terms: Vec<(Rational, BTreeMap<usize, u32>)>, vars: Vec<String>) -> MultiPoly {
    let n = vars.len();
    let mut poly = MultiPoly::zero(vars);
    for (c, e) in terms {
        let mut exps = vec![0u32; n];
        for (i, k) in e {
            exps[i] = k;
        }
        poly.add_term(Monomial::new(exps), c);
    }
    poly
}

/// Parse a polynomial against a declared variable list.
pub fn parse_poly(text: &str, vars: &[String]) -> Result<MultiPoly> {
    parse_poly_at(text, vars, 1)
}

/// Same, reporting errors at the given 1-based source line.
pub fn parse_poly_at(text: &str, vars: &[String], line: usize) -> Result<MultiPoly> {
    let (terms, vars) = parse_with_mode(text, VarsMode::Fixed(vars), line)?;
    Ok(build(terms, vars))
}

/// Parse a polynomial, discovering variables in order of first appearance.
pub fn parse_poly_infer(text: &str) -> Result<MultiPoly> {
    let (terms, vars) = parse_with_mode(text, VarsMode::Infer, 1)?;
    Ok(build(terms, vars))
}

/// True iff the string is a legal variable name.
pub fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn spec_grammar_example() {
        let p = parse_poly("3/2*x^2*y - y + 1", &vars(&["x", "y"])).unwrap();
        assert_eq!(p.num_terms(), 3);
        assert_eq!(p.coeff(&Monomial::new(vec![2, 1])), ratio(3, 2));
        assert_eq!(p.coeff(&Monomial::new(vec![0, 1])), rat(-1));
        assert_eq!(p.coeff(&Monomial::new(vec![0, 0])), rat(1));
    }

    #[test]
    fn whitespace_insignificant() {
        let a = parse_poly("x^2-2", &vars(&["x"])).unwrap();
        let b = parse_poly("  x^2   -   2 ", &vars(&["x"])).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn unknown_variable_reports_position() {
        let e = parse_poly("y + 1", &vars(&["x"])).unwrap_err();
        match e {
            Error::Parse { line, col, msg } => {
                assert_eq!(line, 1);
                assert_eq!(col, 1);
                assert!(msg.contains("unknown variable y"));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn leading_sign_and_repeated_vars() {
        let p = parse_poly("-x*x + 4", &vars(&["x"])).unwrap();
        assert_eq!(p.coeff(&Monomial::new(vec![2])), rat(-1));
    }

    #[test]
    fn malformed_inputs() {
        assert!(parse_poly("", &vars(&["x"])).is_err());
        assert!(parse_poly("x +", &vars(&["x"])).is_err());
        assert!(parse_poly("2x", &vars(&["x"])).is_err()); // implicit product is not in the grammar
        assert!(parse_poly("x^", &vars(&["x"])).is_err());
        assert!(parse_poly("1/0", &vars(&["x"])).is_err());
        assert!(parse_poly("x$y", &vars(&["x", "y"])).is_err());
    }

    #[test]
    fn infer_assigns_in_order_of_appearance() {
        let p = parse_poly_infer("b^2 + a").unwrap();
        assert_eq!(p.vars(), &["b".to_string(), "a".to_string()]);
    }

    #[test]
    fn display_round_trip() {
        let src = "3/2*x^2*y - y + 1";
        let p = parse_poly(src, &vars(&["x", "y"])).unwrap();
        let back = parse_poly(&p.to_string(), &vars(&["x", "y"])).unwrap();
        assert_eq!(p, back);
    }
}
