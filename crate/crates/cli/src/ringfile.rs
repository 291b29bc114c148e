//! The `.ring` text format.
//!
//! ```text
//! # Fermat cubic
//! char 7;                 # 0, a prime, or `p` for a family
//! vars x, y, z;
//! order grevlex;          # grevlex | lex | elim:K
//! ideal x^3+y^3+z^3;
//! component x^3+y^3+z^3;  # one statement per minimal prime
//! flags reduced, equidimensional;
//! let u = z^2;
//! let I = <x, y>;
//! query q1 = certify(u, I, x^2);
//! ```

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};
use std::sync::Arc;

use num_traits::ToPrimitive;
use tightlab_core::arith::{is_prime, is_valid_var_name, MAX_PRIME};
use tightlab_core::expr::{tokenize, Parser, Spanned, Token};
use tightlab_core::{Error, Expr, Field, Flags, Ideal, MonomialOrder, Polynomial, Result, Ring};

/// Characteristic as written in a ring file.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Characteristic {
    Zero,
    Prime(u32),
    /// `char p;`: instantiated per prime by a sweep.
    Param,
}

impl fmt::Display for Characteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Characteristic::Zero => f.write_str("0"),
            Characteristic::Prime(p) => write!(f, "{p}"),
            Characteristic::Param => f.write_str("p"),
        }
    }
}

/// An argument of a query or a command-line value: an expression or an
/// ideal literal `<a, b>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Arg {
    Expr(Expr),
    Ideal(Vec<Expr>),
}

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arg::Expr(e) => write!(f, "{e}"),
            Arg::Ideal(gens) => write!(f, "<{}>", join(gens)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QueryKind {
    /// `certify(u, I, c)`
    Certify,
    /// `refute(u, I)`
    Refute,
    /// `frob(u, I)`
    Frob,
    /// `harness(I, u1, u2, ...)`
    Harness,
}

impl QueryKind {
    pub fn name(&self) -> &'static str {
        match self {
            QueryKind::Certify => "certify",
            QueryKind::Refute => "refute",
            QueryKind::Frob => "frob",
            QueryKind::Harness => "harness",
        }
    }

    fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "certify" => QueryKind::Certify,
            "refute" => QueryKind::Refute,
            "frob" => QueryKind::Frob,
            "harness" => QueryKind::Harness,
            _ => return None,
        })
    }

    fn arity_ok(&self, n: usize) -> bool {
        match self {
            QueryKind::Certify => n == 3,
            QueryKind::Refute | QueryKind::Frob => n == 2,
            QueryKind::Harness => n >= 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Query {
    pub name: String,
    pub kind: QueryKind,
    pub args: Vec<Arg>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Binding {
    Poly(Expr),
    Ideal(Vec<Expr>),
}

/// The structured content of a ring file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingFile {
    pub characteristic: Characteristic,
    pub vars: Vec<String>,
    pub order: String,
    pub ideal: Vec<Expr>,
    pub components: Vec<Vec<Expr>>,
    pub flags: Flags,
    pub lets: Vec<(String, Binding)>,
    pub queries: Vec<Query>,
}

fn join(items: &[Expr]) -> String {
    items.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", ")
}

struct Statements<'a> {
    p: Parser<'a>,
}

impl<'a> Statements<'a> {
    fn err_at(t: &Spanned, msg: impl Into<String>) -> Error {
        Error::Parse { line: t.line, col: t.col, msg: msg.into() }
    }

    fn end(&mut self) -> Result<()> {
        self.p.expect_sym(';')
    }

    fn expr_list(&mut self, close: char) -> Result<Vec<Expr>> {
        let mut out = Vec::new();
        if self.p.is_sym(close) {
            return Ok(out);
        }
        loop {
            out.push(self.p.parse_expr()?);
            if self.p.is_sym(',') {
                self.p.bump();
            } else {
                return Ok(out);
            }
        }
    }

    fn ideal_literal(&mut self) -> Result<Vec<Expr>> {
        self.p.expect_sym('<')?;
        let gens = self.expr_list('>')?;
        self.p.expect_sym('>')?;
        Ok(gens)
    }

    fn arg(&mut self) -> Result<Arg> {
        if self.p.is_sym('<') {
            Ok(Arg::Ideal(self.ideal_literal()?))
        } else {
            Ok(Arg::Expr(self.p.parse_expr()?))
        }
    }
}

/// Checks every name used in `e` against the declared variables and the
/// polynomial bindings so far.
fn check_names(e: &Expr, t: &Spanned, vars: &[String], polys: &BTreeSet<String>) -> Result<()> {
    let mut used = Vec::new();
    e.variables(&mut used);
    for name in used {
        if !vars.contains(&name) && !polys.contains(&name) {
            return Err(Statements::err_at(t, format!("unknown variable `{name}`")));
        }
    }
    Ok(())
}

impl RingFile {
    pub fn parse(text: &str) -> Result<RingFile> {
        let toks = tokenize(text)?;
        let mut st = Statements { p: Parser::new(&toks) };
        let mut characteristic = None;
        let mut vars: Option<Vec<String>> = None;
        let mut order = None;
        let mut ideal = None;
        let mut components = Vec::new();
        let mut flags = Flags::default();
        let mut lets: Vec<(String, Binding)> = Vec::new();
        let mut queries: Vec<Query> = Vec::new();
        let mut poly_names = BTreeSet::new();
        let mut ideal_names = BTreeSet::new();

        while !st.p.at_eof() {
            let head = st.p.peek().clone();
            let keyword = st.p.expect_ident()?;
            let needs_vars = !matches!(keyword.as_str(), "char" | "vars" | "order" | "flags");
            if needs_vars && vars.is_none() {
                return Err(Statements::err_at(&head, format!("`{keyword}` before `vars`")));
            }
            let declared: Vec<String> = vars.clone().unwrap_or_default();
            match keyword.as_str() {
                "char" => {
                    if characteristic.is_some() {
                        return Err(Statements::err_at(&head, "duplicate `char`"));
                    }
                    let t = st.p.peek().clone();
                    let c = match &t.tok {
                        Token::Ident(s) if s == "p" => {
                            st.p.bump();
                            Characteristic::Param
                        }
                        _ => {
                            let v = st.p.expect_int()?;
                            let v = v.to_u64().ok_or_else(|| Statements::err_at(&t, "characteristic out of range"))?;
                            if v == 0 {
                                Characteristic::Zero
                            } else if v >= MAX_PRIME {
                                return Err(Statements::err_at(&t, format!("characteristic {v} is not below {MAX_PRIME}")));
                            } else if !is_prime(v) {
                                return Err(Statements::err_at(&t, format!("characteristic {v} is not prime")));
                            } else {
                                Characteristic::Prime(v as u32)
                            }
                        }
                    };
                    characteristic = Some(c);
                    st.end()?;
                }
                "vars" => {
                    if vars.is_some() {
                        return Err(Statements::err_at(&head, "duplicate `vars`"));
                    }
                    let mut names: Vec<String> = Vec::new();
                    loop {
                        let t = st.p.peek().clone();
                        let name = st.p.expect_ident()?;
                        if !is_valid_var_name(&name) {
                            return Err(Statements::err_at(&t, format!("invalid variable name `{name}`")));
                        }
                        if names.contains(&name) {
                            return Err(Statements::err_at(&t, format!("duplicate variable `{name}`")));
                        }
                        names.push(name);
                        if st.p.is_sym(',') {
                            st.p.bump();
                        } else {
                            break;
                        }
                    }
                    st.end()?;
                    vars = Some(names);
                }
                "order" => {
                    if order.is_some() {
                        return Err(Statements::err_at(&head, "duplicate `order`"));
                    }
                    let t = st.p.peek().clone();
                    let mut name = st.p.expect_ident()?;
                    if st.p.is_sym(':') {
                        st.p.bump();
                        name = format!("{name}:{}", st.p.expect_int()?);
                    }
                    MonomialOrder::from_name(&name)
                        .ok_or_else(|| Statements::err_at(&t, format!("unknown order `{name}`")))?;
                    order = Some(name);
                    st.end()?;
                }
                "ideal" => {
                    if ideal.is_some() {
                        return Err(Statements::err_at(&head, "duplicate `ideal`"));
                    }
                    let t = st.p.peek().clone();
                    let gens = st.expr_list(';')?;
                    for g in &gens {
                        check_names(g, &t, &declared, &poly_names)?;
                    }
                    ideal = Some(gens);
                    st.end()?;
                }
                "component" => {
                    let t = st.p.peek().clone();
                    let gens = st.expr_list(';')?;
                    if gens.is_empty() {
                        return Err(Statements::err_at(&t, "empty component"));
                    }
                    for g in &gens {
                        check_names(g, &t, &declared, &poly_names)?;
                    }
                    components.push(gens);
                    st.end()?;
                }
                "flags" => {
                    loop {
                        let t = st.p.peek().clone();
                        match st.p.expect_ident()?.as_str() {
                            "reduced" => flags.assume_reduced = true,
                            "equidimensional" => flags.assume_equidimensional = true,
                            other => return Err(Statements::err_at(&t, format!("unknown flag `{other}`"))),
                        }
                        if st.p.is_sym(',') {
                            st.p.bump();
                        } else {
                            break;
                        }
                    }
                    st.end()?;
                }
                "let" => {
                    let t = st.p.peek().clone();
                    let name = st.p.expect_ident()?;
                    if declared.contains(&name) || poly_names.contains(&name) || ideal_names.contains(&name) {
                        return Err(Statements::err_at(&t, format!("name `{name}` is already in use")));
                    }
                    st.p.expect_sym('=')?;
                    let at = st.p.peek().clone();
                    let binding = if st.p.is_sym('<') {
                        let gens = st.ideal_literal()?;
                        for g in &gens {
                            check_names(g, &at, &declared, &poly_names)?;
                        }
                        ideal_names.insert(name.clone());
                        Binding::Ideal(gens)
                    } else {
                        let e = st.p.parse_expr()?;
                        check_names(&e, &at, &declared, &poly_names)?;
                        poly_names.insert(name.clone());
                        Binding::Poly(e)
                    };
                    lets.push((name, binding));
                    st.end()?;
                }
                "query" => {
                    let t = st.p.peek().clone();
                    let name = st.p.expect_ident()?;
                    if queries.iter().any(|q| q.name == name) {
                        return Err(Statements::err_at(&t, format!("duplicate query `{name}`")));
                    }
                    st.p.expect_sym('=')?;
                    let kt = st.p.peek().clone();
                    let kind_name = st.p.expect_ident()?;
                    let kind = QueryKind::from_name(&kind_name)
                        .ok_or_else(|| Statements::err_at(&kt, format!("unknown query kind `{kind_name}`")))?;
                    st.p.expect_sym('(')?;
                    let mut args = Vec::new();
                    if !st.p.is_sym(')') {
                        loop {
                            let at = st.p.peek().clone();
                            let a = st.arg()?;
                            let exprs: Vec<&Expr> = match &a {
                                Arg::Expr(e) => vec![e],
                                Arg::Ideal(g) => g.iter().collect(),
                            };
                            let mut known = poly_names.clone();
                            known.extend(ideal_names.iter().cloned());
                            for e in exprs {
                                check_names(e, &at, &declared, &known)?;
                            }
                            args.push(a);
                            if st.p.is_sym(',') {
                                st.p.bump();
                            } else {
                                break;
                            }
                        }
                    }
                    st.p.expect_sym(')')?;
                    if !kind.arity_ok(args.len()) {
                        return Err(Statements::err_at(&kt, format!("wrong number of arguments for `{kind_name}`")));
                    }
                    queries.push(Query { name, kind, args });
                    st.end()?;
                }
                other => return Err(Statements::err_at(&head, format!("unknown statement `{other}`"))),
            }
        }
        let eof = st.p.peek().clone();
        Ok(RingFile {
            characteristic: characteristic.ok_or_else(|| Statements::err_at(&eof, "missing `char` statement"))?,
            vars: vars.ok_or_else(|| Statements::err_at(&eof, "missing `vars` statement"))?,
            order: order.unwrap_or_else(|| "grevlex".to_string()),
            ideal: ideal.unwrap_or_default(),
            components,
            flags,
            lets,
            queries,
        })
    }

    /// Canonical text; parsing it gives back an equal `RingFile`.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "char {};", self.characteristic);
        let _ = writeln!(out, "vars {};", self.vars.join(", "));
        let _ = writeln!(out, "order {};", self.order);
        let _ = writeln!(out, "ideal {};", join(&self.ideal));
        for c in &self.components {
            let _ = writeln!(out, "component {};", join(c));
        }
        let mut flags = Vec::new();
        if self.flags.assume_reduced {
            flags.push("reduced");
        }
        if self.flags.assume_equidimensional {
            flags.push("equidimensional");
        }
        if !flags.is_empty() {
            let _ = writeln!(out, "flags {};", flags.join(", "));
        }
        for (name, b) in &self.lets {
            match b {
                Binding::Poly(e) => {
                    let _ = writeln!(out, "let {name} = {e};");
                }
                Binding::Ideal(g) => {
                    let _ = writeln!(out, "let {name} = <{}>;", join(g));
                }
            }
        }
        for q in &self.queries {
            let args: Vec<String> = q.args.iter().map(|a| a.to_string()).collect();
            let _ = writeln!(out, "query {} = {}({});", q.name, q.kind.name(), args.join(", "));
        }
        out
    }

    /// Fixes the characteristic of a family.
    pub fn instantiate(&self, p: u32) -> Result<RingFile> {
        let mut out = self.clone();
        match self.characteristic {
            Characteristic::Param => {
                if !is_prime(p as u64) {
                    return Err(Error::NotPrime(p as u64));
                }
                out.characteristic = Characteristic::Prime(p);
            }
            Characteristic::Prime(q) if q == p => {}
            other => {
                return Err(Error::InvalidArgument(format!("instance has fixed characteristic {other}, not {p}")))
            }
        }
        Ok(out)
    }

    pub fn field(&self) -> Result<Field> {
        match self.characteristic {
            Characteristic::Zero => Ok(Field::Rational),
            Characteristic::Prime(p) => Field::prime(p as u64),
            Characteristic::Param => {
                Err(Error::InvalidArgument("characteristic `p` must be instantiated (sweep --primes)".into()))
            }
        }
    }

    /// The polynomial ring, optionally under a different order.
    pub fn ring(&self, order: Option<&str>) -> Result<Arc<Ring>> {
        let name = order.unwrap_or(&self.order);
        let order = MonomialOrder::from_name(name)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown order `{name}`")))?;
        Ring::new(self.field()?, &self.vars, order)
    }

    /// Evaluation context over `ring`.
    pub fn scope(&self, ring: &Arc<Ring>) -> Result<Scope> {
        let mut scope = Scope { ring: ring.clone(), vars: self.vars.clone(), polys: Vec::new(), ideals: Vec::new() };
        for (name, b) in &self.lets {
            match b {
                Binding::Poly(e) => {
                    let f = scope.eval(e)?;
                    scope.polys.push((name.clone(), f));
                }
                Binding::Ideal(g) => {
                    let gens = g.iter().map(|e| scope.eval(e)).collect::<Result<Vec<_>>>()?;
                    scope.ideals.push((name.clone(), Ideal::new(ring, gens)?));
                }
            }
        }
        Ok(scope)
    }
}

/// Declared variables plus `let` bindings, evaluated in one ring.
#[derive(Clone, Debug)]
pub struct Scope {
    ring: Arc<Ring>,
    vars: Vec<String>,
    polys: Vec<(String, Polynomial)>,
    ideals: Vec<(String, Ideal)>,
}

impl Scope {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn eval(&self, e: &Expr) -> Result<Polynomial> {
        let r = &self.ring;
        Ok(match e {
            Expr::Var(name) => match self.polys.iter().find(|(n, _)| n == name) {
                Some((_, f)) => f.clone(),
                None => match r.var_index(name) {
                    Some(i) => Polynomial::var(r, i),
                    None => return Err(Error::InvalidVariable(name.clone())),
                },
            },
            Expr::Int(_) => e.to_polynomial(r)?,
            Expr::Neg(a) => -&self.eval(a)?,
            Expr::Add(a, b) => self.eval(a)?.try_add(&self.eval(b)?)?,
            Expr::Sub(a, b) => self.eval(a)?.try_sub(&self.eval(b)?)?,
            Expr::Mul(a, b) => self.eval(a)?.try_mul(&self.eval(b)?)?,
            Expr::Pow(a, k) => self.eval(a)?.pow(*k as u64)?,
        })
    }

    pub fn poly(&self, a: &Arg) -> Result<Polynomial> {
        match a {
            Arg::Expr(e) => self.eval(e),
            Arg::Ideal(_) => Err(Error::InvalidArgument(format!("expected a polynomial, found ideal {a}"))),
        }
    }

    pub fn ideal(&self, a: &Arg) -> Result<Ideal> {
        match a {
            Arg::Ideal(g) => Ideal::new(&self.ring, g.iter().map(|e| self.eval(e)).collect::<Result<Vec<_>>>()?),
            Arg::Expr(Expr::Var(name)) if self.ideals.iter().any(|(n, _)| n == name) => {
                Ok(self.ideals.iter().find(|(n, _)| n == name).expect("checked").1.clone())
            }
            Arg::Expr(e) => Ideal::new(&self.ring, vec![self.eval(e)?]),
        }
    }

    /// Parses command-line text: an expression, `<...>`, or a bound name.
    pub fn parse_arg(&self, text: &str) -> Result<Arg> {
        let toks = tokenize(text)?;
        let mut st = Statements { p: Parser::new(&toks) };
        let a = st.arg()?;
        if !st.p.at_eof() {
            return Err(st.p.error_here("trailing input"));
        }
        let mut used = Vec::new();
        match &a {
            Arg::Expr(e) => e.variables(&mut used),
            Arg::Ideal(g) => g.iter().for_each(|e| e.variables(&mut used)),
        }
        for name in used {
            let bound = self.polys.iter().any(|(n, _)| *n == name) || self.ideals.iter().any(|(n, _)| *n == name);
            if !self.vars.contains(&name) && !bound {
                return Err(Error::Parse { line: 1, col: 1, msg: format!("unknown variable `{name}`") });
            }
        }
        Ok(a)
    }

    /// A comma-separated list of polynomials.
    pub fn parse_poly_list(&self, text: &str) -> Result<Vec<Polynomial>> {
        let toks = tokenize(text)?;
        let mut st = Statements { p: Parser::new(&toks) };
        if st.p.at_eof() {
            return Ok(Vec::new());
        }
        let exprs = st.expr_list(';')?;
        if !st.p.at_eof() {
            return Err(st.p.error_here("expected `,` or end of list"));
        }
        exprs.iter().map(|e| self.eval(e)).collect()
    }

    pub fn parse_poly(&self, text: &str) -> Result<Polynomial> {
        let a = self.parse_arg(text)?;
        self.poly(&a)
    }

    pub fn parse_ideal(&self, text: &str) -> Result<Ideal> {
        let a = self.parse_arg(text)?;
        self.ideal(&a)
    }
}

/// Component statements from a standalone file (`component ...;` lines).
pub fn parse_components(text: &str, base: &RingFile) -> Result<Vec<Vec<Expr>>> {
    let mut header = base.clone();
    header.components.clear();
    header.queries.clear();
    let combined = format!("{}{}", header.serialize(), text);
    let parsed = RingFile::parse(&combined).map_err(|e| match e {
        Error::Parse { line, col, msg } => {
            let offset = header.serialize().lines().count();
            Error::Parse { line: line.saturating_sub(offset), col, msg }
        }
        other => other,
    })?;
    Ok(parsed.components)
}
