//! Polynomial expression syntax: `+ - * ^`, integer literals, variables and
//! parentheses. Implicit multiplication is not accepted.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary ('*' unary)*
//! unary := '-' unary | power
//! power := atom ('^' INT)?
//! atom  := INT | IDENT | '(' expr ')'
//! ```

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::arith::{is_valid_var_name, Polynomial, Ring, RESERVED_PREFIX};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Token {
    Ident(String),
    Int(BigInt),
    Sym(char),
    Eof,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spanned {
    pub tok: Token,
    pub line: usize,
    pub col: usize,
}

const SYMBOLS: &str = "+-*^(),;=<>:";

/// Splits `text` into tokens. `#` starts a comment running to end of line.
pub fn tokenize(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Spanned { tok: Token::Int(s.parse().expect("digits")), line: l0, col: c0 });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' || c == RESERVED_PREFIX {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == RESERVED_PREFIX) {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            if s.contains(RESERVED_PREFIX) {
                return Err(Error::Parse {
                    line: l0,
                    col: c0,
                    msg: format!("name `{s}` uses the reserved '@' prefix"),
                });
            }
            out.push(Spanned { tok: Token::Ident(s), line: l0, col: c0 });
            continue;
        }
        if SYMBOLS.contains(c) {
            out.push(Spanned { tok: Token::Sym(c), line: l0, col: c0 });
            i += 1;
            col += 1;
            continue;
        }
        return Err(Error::Parse { line: l0, col: c0, msg: format!("unexpected character `{c}`") });
    }
    out.push(Spanned { tok: Token::Eof, line, col });
    Ok(out)
}

/// A parsed polynomial expression, before it is evaluated in a ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Int(BigInt),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Int(_) | Expr::Var(_) => 5,
        }
    }

    /// Evaluates in `ring`. Unknown variables are an error.
    pub fn to_polynomial(&self, ring: &Arc<Ring>) -> Result<Polynomial> {
        Ok(match self {
            Expr::Int(v) => Polynomial::constant(ring, ring.field().from_bigint(v)),
            Expr::Var(name) => {
                let i = ring
                    .var_index(name)
                    .ok_or_else(|| Error::InvalidArgument(format!("unknown variable `{name}`")))?;
                Polynomial::var(ring, i)
            }
            Expr::Neg(e) => -&e.to_polynomial(ring)?,
            Expr::Add(a, b) => a.to_polynomial(ring)?.try_add(&b.to_polynomial(ring)?)?,
            Expr::Sub(a, b) => a.to_polynomial(ring)?.try_sub(&b.to_polynomial(ring)?)?,
            Expr::Mul(a, b) => a.to_polynomial(ring)?.try_mul(&b.to_polynomial(ring)?)?,
            Expr::Pow(a, k) => a.to_polynomial(ring)?.pow(*k as u64)?,
        })
    }

    /// Every variable name referenced.
    pub fn variables(&self, out: &mut Vec<String>) {
        match self {
            Expr::Int(_) => {}
            Expr::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Expr::Neg(e) | Expr::Pow(e, _) => e.variables(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.variables(out);
                b.variables(out);
            }
        }
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, e: &Expr, min_prec: u8) -> fmt::Result {
    if e.precedence() < min_prec {
        write!(f, "(")?;
        write!(f, "{e}")?;
        write!(f, ")")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(v) => write!(f, "{v}"),
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Neg(e) => {
                write!(f, "-")?;
                write_at(f, e, 3)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                write_at(f, a, 1)?;
                write!(f, "{}", if matches!(self, Expr::Add(..)) { "+" } else { "-" })?;
                write_at(f, b, 2)
            }
            Expr::Mul(a, b) => {
                write_at(f, a, 2)?;
                write!(f, "*")?;
                write_at(f, b, 3)
            }
            Expr::Pow(a, k) => {
                write_at(f, a, 5)?;
                write!(f, "^{k}")
            }
        }
    }
}

/// Recursive-descent parser over a token slice. Other grammars (ring files)
/// drive it statement by statement.
pub struct Parser<'a> {
    toks: &'a [Spanned],
    pos: usize,
    known: Option<&'a [String]>,
}

impl<'a> Parser<'a> {
    pub fn new(toks: &'a [Spanned]) -> Self {
        Parser { toks, pos: 0, known: None }
    }

    /// Restricts identifiers inside expressions to `names`.
    pub fn with_known_vars(mut self, names: &'a [String]) -> Self {
        self.known = Some(names);
        self
    }

    pub fn set_known_vars(&mut self, names: Option<&'a [String]>) {
        self.known = names;
    }

    pub fn peek(&self) -> &Spanned {
        &self.toks[self.pos.min(self.toks.len() - 1)]
    }

    pub fn bump(&mut self) -> &Spanned {
        let t = &self.toks[self.pos.min(self.toks.len() - 1)];
        if self.pos < self.toks.len() - 1 {
            self.pos += 1;
        }
        t
    }

    pub fn at_eof(&self) -> bool {
        self.peek().tok == Token::Eof
    }

    pub fn is_sym(&self, c: char) -> bool {
        self.peek().tok == Token::Sym(c)
    }

    pub fn error_here(&self, msg: impl Into<String>) -> Error {
        let t = self.peek();
        Error::Parse { line: t.line, col: t.col, msg: msg.into() }
    }

    pub fn expect_sym(&mut self, c: char) -> Result<()> {
        if self.is_sym(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.error_here(format!("expected `{c}`, found {}", describe(&self.peek().tok))))
        }
    }

    pub fn expect_ident(&mut self) -> Result<String> {
        match &self.peek().tok {
            Token::Ident(s) => {
                let s = s.clone();
                self.bump();
                Ok(s)
            }
            other => Err(self.error_here(format!("expected a name, found {}", describe(other)))),
        }
    }

    pub fn expect_int(&mut self) -> Result<BigInt> {
        match &self.peek().tok {
            Token::Int(v) => {
                let v = v.clone();
                self.bump();
                Ok(v)
            }
            other => Err(self.error_here(format!("expected an integer, found {}", describe(other)))),
        }
    }

    pub fn parse_expr(&mut self) -> Result<Expr> {
        let mut lhs = self.parse_term()?;
        loop {
            if self.is_sym('+') {
                self.bump();
                lhs = Expr::Add(Box::new(lhs), Box::new(self.parse_term()?));
            } else if self.is_sym('-') {
                self.bump();
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.parse_term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn parse_term(&mut self) -> Result<Expr> {
        let mut lhs = self.parse_unary()?;
        while self.is_sym('*') {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.parse_unary()?));
        }
        if matches!(self.peek().tok, Token::Ident(_) | Token::Int(_)) || self.is_sym('(') {
            return Err(self.error_here("implicit multiplication is not allowed; use `*`"));
        }
        Ok(lhs)
    }

    fn parse_unary(&mut self) -> Result<Expr> {
        if self.is_sym('-') {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.parse_unary()?)));
        }
        let base = self.parse_atom()?;
        if self.is_sym('^') {
            self.bump();
            let t = self.peek().clone();
            let k = self.expect_int()?;
            let k: u32 = k.try_into().map_err(|_| Error::Parse {
                line: t.line,
                col: t.col,
                msg: "exponent out of range".into(),
            })?;
            return Ok(Expr::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn parse_atom(&mut self) -> Result<Expr> {
        let t = self.peek().clone();
        match &t.tok {
            Token::Int(v) => {
                self.bump();
                Ok(Expr::Int(v.clone()))
            }
            Token::Ident(name) => {
                if !is_valid_var_name(name) {
                    return Err(self.error_here(format!("invalid variable name `{name}`")));
                }
                if let Some(known) = self.known {
                    if !known.iter().any(|k| k == name) {
                        return Err(self.error_here(format!("unknown variable `{name}`")));
                    }
                }
                self.bump();
                Ok(Expr::Var(name.clone()))
            }
            Token::Sym('(') => {
                self.bump();
                let e = self.parse_expr()?;
                self.expect_sym(')')?;
                Ok(e)
            }
            other => Err(self.error_here(format!("expected an expression, found {}", describe(other)))),
        }
    }
}

fn describe(t: &Token) -> String {
    match t {
        Token::Ident(s) => format!("`{s}`"),
        Token::Int(v) => format!("`{v}`"),
        Token::Sym(c) => format!("`{c}`"),
        Token::Eof => "end of input".into(),
    }
}

/// Parses one complete expression.
pub fn parse_expr(text: &str) -> Result<Expr> {
    let toks = tokenize(text)?;
    let mut p = Parser::new(&toks);
    let e = p.parse_expr()?;
    if !p.at_eof() {
        return Err(p.error_here("trailing input after expression"));
    }
    Ok(e)
}

/// Parses and evaluates `text` in `ring`.
pub fn parse_poly(ring: &Arc<Ring>, text: &str) -> Result<Polynomial> {
    let toks = tokenize(text)?;
    let mut p = Parser::new(&toks).with_known_vars(ring.vars());
    let e = p.parse_expr()?;
    if !p.at_eof() {
        return Err(p.error_here("trailing input after expression"));
    }
    e.to_polynomial(ring)
}

/// Parses a comma-separated list of polynomials.
pub fn parse_poly_list(ring: &Arc<Ring>, text: &str) -> Result<Vec<Polynomial>> {
    let toks = tokenize(text)?;
    let mut p = Parser::new(&toks).with_known_vars(ring.vars());
    let mut out = Vec::new();
    if p.at_eof() {
        return Ok(out);
    }
    loop {
        out.push(p.parse_expr()?.to_polynomial(ring)?);
        if p.is_sym(',') {
            p.bump();
        } else if p.at_eof() {
            return Ok(out);
        } else {
            return Err(p.error_here("expected `,` or end of list"));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{Field, MonomialOrder};
    use proptest::prelude::*;

    fn ring() -> Arc<Ring> {
        Ring::new(Field::Prime(7), &["x", "y", "z"], MonomialOrder::grevlex()).unwrap()
    }

    #[test]
    fn evaluates() {
        let r = ring();
        let f = parse_poly(&r, "x^3+y^3+z^3").unwrap();
        assert_eq!(f.to_string(), "x^3+y^3+z^3");
        let g = parse_poly(&r, "-(x-y)^2*2").unwrap();
        assert_eq!(g.to_string(), "-2*x^2-3*x*y-2*y^2");
        assert_eq!(parse_poly(&r, "10").unwrap().to_string(), "3");
    }

    #[test]
    fn rejects_bad_input() {
        let r = ring();
        assert!(matches!(parse_poly(&r, "2x"), Err(Error::Parse { col: 2, .. })));
        assert!(matches!(parse_poly(&r, "x y"), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly(&r, "w+1"), Err(Error::Parse { col: 1, .. })));
        assert!(matches!(parse_poly(&r, "x+@t"), Err(Error::Parse { col: 3, .. })));
        assert!(matches!(parse_poly(&r, "(x+y"), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly(&r, "x^y"), Err(Error::Parse { .. })));
        let err = parse_poly(&r, "x +\n  $").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, col: 3, .. }));
    }

    #[test]
    fn lists() {
        let r = ring();
        let v = parse_poly_list(&r, "x*z, y*z").unwrap();
        assert_eq!(v.len(), 2);
        assert!(parse_poly_list(&r, "").unwrap().is_empty());
        assert!(parse_poly_list(&r, "x,,y").is_err());
    }

    fn arb_expr() -> impl Strategy<Value = Expr> {
        let leaf = prop_oneof![
            (0u32..20).prop_map(|v| Expr::Int(BigInt::from(v))),
            prop_oneof![Just("x"), Just("y"), Just("z")].prop_map(|v| Expr::Var(v.to_string())),
        ];
        leaf.prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
                (inner, 0u32..4).prop_map(|(a, k)| Expr::Pow(Box::new(a), k)),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(e in arb_expr()) {
            let text = e.to_string();
            prop_assert_eq!(parse_expr(&text).unwrap(), e);
        }
    }
}
