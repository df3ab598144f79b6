//! Recursive-descent parser for the script language.
//!
//! ```text
//! script    := ring_decl decl* command
//! ring_decl := "ring" ("Q" | "F" integer) "[" ident ("," ident)* "]" "trunc" integer
//! decl      := "ideal" ident "=" poly ("," poly)*
//!            | "point" ident "=" "(" rational ("," rational)* ")"
//!            | "arc" ident "=" "(" poly_in_t ("," poly_in_t)* ")"
//! command   := "curvesel" ident ident ident "order" integer
//!            | "wdiv" poly poly "var" ident | "wprep" poly "var" ident
//!            | "eliminate" ident "var" ident | "jets" ident "order" integer
//!            | "arcsel" ident ident ident ident "level" integer "order" integer
//!            | "verify" path
//! ```
//!
//! Polynomials use `+ - * ^` and `/ integer`; there is no implicit multiplication. Inside
//! polynomials an identifier is a ring variable or a jet coordinate `<var>_<j>`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::lexer::{Lexer, Pos, Token};

pub const KEYWORDS: &[&str] = &[
    "ring", "trunc", "ideal", "point", "arc", "order", "var", "level", "curvesel", "wdiv", "wprep", "eliminate", "jets",
    "arcsel", "verify",
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub expected: BTreeSet<String>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let exp: Vec<&str> = self.expected.iter().map(String::as_str).collect();
        write!(f, "{}:{}: expected {}, found {}", self.line, self.col, exp.join(" or "), self.found)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldSpec {
    Rational,
    Prime(BigInt),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingDecl {
    pub field: FieldSpec,
    pub vars: Vec<String>,
    pub trunc: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    /// A ring variable, or with `level` the jet coordinate `<var>_<level>`. In arcs, var 0 is `t`.
    Var { var: usize, level: Option<usize> },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, BigInt),
    Pow(Box<Expr>, BigInt),
}

impl Expr {
    /// A syntactic upper bound for the total degree.
    pub fn degree_bound(&self) -> BigInt {
        match self {
            Expr::Int(_) => BigInt::zero(),
            Expr::Var { .. } => BigInt::from(1),
            Expr::Neg(a) | Expr::Div(a, _) => a.degree_bound(),
            Expr::Add(a, b) | Expr::Sub(a, b) => a.degree_bound().max(b.degree_bound()),
            Expr::Mul(a, b) => a.degree_bound() + b.degree_bound(),
            Expr::Pow(a, e) => a.degree_bound() * e,
        }
    }

    pub fn uses_jets(&self) -> bool {
        match self {
            Expr::Int(_) => false,
            Expr::Var { level, .. } => level.is_some(),
            Expr::Neg(a) | Expr::Div(a, _) | Expr::Pow(a, _) => a.uses_jets(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => a.uses_jets() || b.uses_jets(),
        }
    }

    pub fn max_level(&self) -> Option<usize> {
        match self {
            Expr::Int(_) => None,
            Expr::Var { level, .. } => *level,
            Expr::Neg(a) | Expr::Div(a, _) | Expr::Pow(a, _) => a.max_level(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => a.max_level().max(b.max_level()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rational {
    pub num: BigInt,
    pub den: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DeclKind {
    Ideal(Vec<Expr>),
    Point(Vec<Rational>),
    Arc(Vec<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decl {
    pub name: String,
    pub kind: DeclKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    CurveSel { n: String, z: String, a: String, order: usize },
    WDiv { g: Expr, f: Expr, var: usize },
    WPrep { f: Expr, var: usize },
    Eliminate { ideal: String, var: usize },
    Jets { ideal: String, order: usize },
    ArcSel { x: String, n_extra: String, z_extra: String, gamma: String, level: usize, order: usize },
    Verify { path: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Script {
    pub ring: RingDecl,
    pub decls: Vec<Decl>,
    pub command: Command,
    pub source: String,
}

impl Script {
    pub fn decl(&self, name: &str) -> Option<&DeclKind> {
        self.decls.iter().find(|d| d.name == name).map(|d| &d.kind)
    }

    pub fn ideal(&self, name: &str) -> &[Expr] {
        match self.decl(name) {
            Some(DeclKind::Ideal(g)) => g,
            _ => panic!("parser guarantees `{name}` is an ideal"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Ideal,
    Point,
    Arc,
}

impl Kind {
    fn label(self) -> &'static str {
        match self {
            Kind::Ideal => "ideal name",
            Kind::Point => "point name",
            Kind::Arc => "arc name",
        }
    }
}

/// Variables allowed inside a polynomial.
#[derive(Clone, Copy)]
enum Scope {
    Ring,
    ArcParam,
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    peeked: Option<(Token, Pos)>,
    vars: Vec<String>,
    names: Vec<(String, Kind)>,
}

type PResult<T> = std::result::Result<T, ParseError>;

impl<'a> Parser<'a> {
    fn peek(&mut self) -> &(Token, Pos) {
        if self.peeked.is_none() {
            self.peeked = Some(self.lexer.next_token());
        }
        self.peeked.as_ref().expect("filled")
    }

    fn bump(&mut self) -> (Token, Pos) {
        self.peek();
        self.peeked.take().expect("filled")
    }

    fn error_at(&self, pos: Pos, expected: &[&str], found: &Token) -> ParseError {
        ParseError { line: pos.line, col: pos.col, expected: expected.iter().map(|s| s.to_string()).collect(), found: found.describe() }
    }

    fn fail<T>(&mut self, expected: &[&str]) -> PResult<T> {
        let (tok, pos) = self.peek().clone();
        Err(self.error_at(pos, expected, &tok))
    }

    fn is_sym(&mut self, c: char) -> bool {
        self.peek().0 == Token::Sym(c)
    }

    fn is_keyword(&mut self, kw: &str) -> bool {
        matches!(&self.peek().0, Token::Ident(s) if s == kw)
    }

    fn expect_sym(&mut self, c: char) -> PResult<()> {
        if self.is_sym(c) {
            self.bump();
            Ok(())
        } else {
            self.fail(&[&format!("`{c}`")])
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> PResult<()> {
        if self.is_keyword(kw) {
            self.bump();
            Ok(())
        } else {
            self.fail(&[&format!("`{kw}`")])
        }
    }

    fn integer(&mut self) -> PResult<BigInt> {
        match self.peek().0.clone() {
            Token::Int(n) => {
                self.bump();
                Ok(n)
            }
            _ => self.fail(&["integer"]),
        }
    }

    fn small_integer(&mut self) -> PResult<usize> {
        let pos = self.peek().1;
        let n = self.integer()?;
        n.to_u32().map(|v| v as usize).ok_or_else(|| self.error_at(pos, &["integer below 2^32"], &Token::Int(n)))
    }

    /// A fresh identifier that is not a keyword.
    fn fresh_ident(&mut self, what: &str, taken: &[String]) -> PResult<String> {
        match self.peek().0.clone() {
            Token::Ident(s) if !KEYWORDS.contains(&s.as_str()) && !taken.contains(&s) => {
                self.bump();
                Ok(s)
            }
            _ => self.fail(&[what]),
        }
    }

    fn declared(&mut self, kind: Kind) -> PResult<String> {
        match self.peek().0.clone() {
            Token::Ident(s) if self.names.iter().any(|(n, k)| *n == s && *k == kind) => {
                self.bump();
                Ok(s)
            }
            _ => self.fail(&[kind.label()]),
        }
    }

    fn ring_var(&mut self) -> PResult<usize> {
        match self.peek().0.clone() {
            Token::Ident(s) => match self.vars.iter().position(|v| *v == s) {
                Some(i) => {
                    self.bump();
                    Ok(i)
                }
                None => self.fail(&["ring variable"]),
            },
            _ => self.fail(&["ring variable"]),
        }
    }

    fn ring_decl(&mut self) -> PResult<RingDecl> {
        self.expect_keyword("ring")?;
        let field = match self.peek().0.clone() {
            Token::Ident(s) if s == "Q" => {
                self.bump();
                FieldSpec::Rational
            }
            Token::Ident(s) if s == "F" => {
                self.bump();
                FieldSpec::Prime(self.integer()?)
            }
            _ => return self.fail(&["`Q`", "`F`"]),
        };
        self.expect_sym('[')?;
        loop {
            let taken = self.vars.clone();
            let v = self.fresh_ident("new variable name", &taken)?;
            self.vars.push(v);
            if self.is_sym(',') {
                self.bump();
            } else if self.is_sym(']') {
                self.bump();
                break;
            } else {
                return self.fail(&["`,`", "`]`"]);
            }
        }
        self.expect_keyword("trunc")?;
        let trunc = self.small_integer()?;
        Ok(RingDecl { field, vars: self.vars.clone(), trunc })
    }

    fn new_name(&mut self, kind: Kind) -> PResult<String> {
        let taken: Vec<String> = self.names.iter().map(|(n, _)| n.clone()).collect();
        let name = self.fresh_ident("new name", &taken)?;
        self.names.push((name.clone(), kind));
        Ok(name)
    }

    fn decl(&mut self) -> PResult<Option<Decl>> {
        let kind = if self.is_keyword("ideal") {
            Kind::Ideal
        } else if self.is_keyword("point") {
            Kind::Point
        } else if self.is_keyword("arc") {
            Kind::Arc
        } else {
            return Ok(None);
        };
        self.bump();
        let name = self.new_name(kind)?;
        self.expect_sym('=')?;
        let kind = match kind {
            Kind::Ideal => {
                let mut gens = vec![self.poly(Scope::Ring)?];
                while self.is_sym(',') {
                    self.bump();
                    gens.push(self.poly(Scope::Ring)?);
                }
                DeclKind::Ideal(gens)
            }
            Kind::Point => DeclKind::Point(self.tuple(|p| p.rational())?),
            Kind::Arc => DeclKind::Arc(self.tuple(|p| p.poly(Scope::ArcParam))?),
        };
        Ok(Some(Decl { name, kind }))
    }

    fn tuple<T>(&mut self, mut item: impl FnMut(&mut Self) -> PResult<T>) -> PResult<Vec<T>> {
        self.expect_sym('(')?;
        let mut out = vec![item(self)?];
        loop {
            if self.is_sym(',') {
                self.bump();
                out.push(item(self)?);
            } else if self.is_sym(')') {
                self.bump();
                return Ok(out);
            } else {
                return self.fail(&["`,`", "`)`"]);
            }
        }
    }

    fn rational(&mut self) -> PResult<Rational> {
        let neg = self.is_sym('-');
        if neg {
            self.bump();
        }
        let num = self.integer()?;
        let den = if self.is_sym('/') {
            self.bump();
            self.integer()?
        } else {
            BigInt::from(1)
        };
        Ok(Rational { num: if neg { -num } else { num }, den })
    }

    fn poly(&mut self, scope: Scope) -> PResult<Expr> {
        let mut acc = if self.is_sym('-') {
            self.bump();
            Expr::Neg(Box::new(self.term(scope)?))
        } else {
            if self.is_sym('+') {
                self.bump();
            }
            self.term(scope)?
        };
        loop {
            if self.is_sym('+') {
                self.bump();
                acc = Expr::Add(Box::new(acc), Box::new(self.term(scope)?));
            } else if self.is_sym('-') {
                self.bump();
                acc = Expr::Sub(Box::new(acc), Box::new(self.term(scope)?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self, scope: Scope) -> PResult<Expr> {
        let mut acc = self.factor(scope)?;
        loop {
            if self.is_sym('*') {
                self.bump();
                acc = Expr::Mul(Box::new(acc), Box::new(self.factor(scope)?));
            } else if self.is_sym('/') {
                self.bump();
                acc = Expr::Div(Box::new(acc), self.integer()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self, scope: Scope) -> PResult<Expr> {
        let base = self.atom(scope)?;
        if self.is_sym('^') {
            self.bump();
            return Ok(Expr::Pow(Box::new(base), self.integer()?));
        }
        Ok(base)
    }

    fn atom(&mut self, scope: Scope) -> PResult<Expr> {
        let expected: &[&str] = match scope {
            Scope::Ring => &["integer", "variable", "`(`"],
            Scope::ArcParam => &["integer", "`t`", "`(`"],
        };
        match self.peek().0.clone() {
            Token::Int(n) => {
                self.bump();
                Ok(Expr::Int(n))
            }
            Token::Sym('(') => {
                self.bump();
                let e = self.poly(scope)?;
                self.expect_sym(')')?;
                Ok(e)
            }
            Token::Ident(s) => match scope {
                Scope::ArcParam if s == "t" => {
                    self.bump();
                    Ok(Expr::Var { var: 0, level: None })
                }
                Scope::Ring => match self.resolve(&s) {
                    Some((var, level)) => {
                        self.bump();
                        Ok(Expr::Var { var, level })
                    }
                    None => self.fail(expected),
                },
                _ => self.fail(expected),
            },
            _ => self.fail(expected),
        }
    }

    fn resolve(&self, s: &str) -> Option<(usize, Option<usize>)> {
        if let Some(i) = self.vars.iter().position(|v| v == s) {
            return Some((i, None));
        }
        let (base, level) = s.rsplit_once('_')?;
        if level.is_empty() || !level.bytes().all(|b| b.is_ascii_digit()) || level.len() > 9 {
            return None;
        }
        let i = self.vars.iter().position(|v| v == base)?;
        Some((i, Some(level.parse().ok()?)))
    }

    fn command(&mut self) -> PResult<Command> {
        let (tok, _) = self.peek().clone();
        let Token::Ident(kw) = tok else {
            return self.fail(&["command", "declaration"]);
        };
        let cmd = match kw.as_str() {
            "curvesel" => {
                self.bump();
                let n = self.declared(Kind::Ideal)?;
                let z = self.declared(Kind::Ideal)?;
                let a = self.declared(Kind::Point)?;
                self.expect_keyword("order")?;
                Command::CurveSel { n, z, a, order: self.small_integer()? }
            }
            "wdiv" => {
                self.bump();
                let g = self.poly(Scope::Ring)?;
                let f = self.poly(Scope::Ring)?;
                self.expect_keyword("var")?;
                Command::WDiv { g, f, var: self.ring_var()? }
            }
            "wprep" => {
                self.bump();
                let f = self.poly(Scope::Ring)?;
                self.expect_keyword("var")?;
                Command::WPrep { f, var: self.ring_var()? }
            }
            "eliminate" => {
                self.bump();
                let ideal = self.declared(Kind::Ideal)?;
                self.expect_keyword("var")?;
                Command::Eliminate { ideal, var: self.ring_var()? }
            }
            "jets" => {
                self.bump();
                let ideal = self.declared(Kind::Ideal)?;
                self.expect_keyword("order")?;
                Command::Jets { ideal, order: self.small_integer()? }
            }
            "arcsel" => {
                self.bump();
                let x = self.declared(Kind::Ideal)?;
                let n_extra = self.declared(Kind::Ideal)?;
                let z_extra = self.declared(Kind::Ideal)?;
                let gamma = self.declared(Kind::Arc)?;
                self.expect_keyword("level")?;
                let level = self.small_integer()?;
                self.expect_keyword("order")?;
                Command::ArcSel { x, n_extra, z_extra, gamma, level, order: self.small_integer()? }
            }
            "verify" => {
                self.bump();
                let (path, pos) = self.lexer.raw_word();
                if path.is_empty() {
                    return Err(self.error_at(pos, &["path"], &Token::Eof));
                }
                let path = path.strip_prefix('"').and_then(|p| p.strip_suffix('"')).map(str::to_string).unwrap_or(path);
                Command::Verify { path }
            }
            _ => return self.fail(&["command", "declaration"]),
        };
        Ok(cmd)
    }
}

pub fn parse_script(text: &str) -> PResult<Script> {
    let mut p = Parser { lexer: Lexer::new(text), peeked: None, vars: Vec::new(), names: Vec::new() };
    let ring = p.ring_decl()?;
    let mut decls = Vec::new();
    while let Some(d) = p.decl()? {
        decls.push(d);
    }
    let command = p.command()?;
    if p.peek().0 != Token::Eof {
        return p.fail(&["end of input"]);
    }
    Ok(Script { ring, decls, command, source: text.to_string() })
}

#[cfg(test)]
mod tests {
    use super::*;

    const CUSP: &str = "ring Q[x,y] trunc 8\nideal N = x^2 - y^3\nideal Z = x, y\npoint a = (0,0)\ncurvesel N Z a order 12";

    #[test]
    fn cusp_script() {
        let s = parse_script(CUSP).unwrap();
        assert_eq!(s.ring.vars, vec!["x", "y"]);
        assert_eq!(s.ring.trunc, 8);
        assert_eq!(s.command, Command::CurveSel { n: "N".into(), z: "Z".into(), a: "a".into(), order: 12 });
        assert_eq!(s.ideal("Z").len(), 2);
        assert_eq!(s.ideal("N")[0].degree_bound(), BigInt::from(3));
    }

    #[test]
    fn prime_field_and_point() {
        let s = parse_script("ring F 101 [x] trunc 4\nideal N = x^2 - 2\npoint a = (0)\ncurvesel N N a order 3").unwrap();
        assert_eq!(s.ring.field, FieldSpec::Prime(101.into()));
        assert_eq!(s.decl("a"), Some(&DeclKind::Point(vec![Rational { num: 0.into(), den: 1.into() }])));
    }

    #[test]
    fn missing_ring_declaration() {
        let e = parse_script("ideal N = x^2").unwrap_err();
        assert_eq!((e.line, e.col), (1, 1));
        assert!(e.expected.contains("`ring`"));
    }

    #[test]
    fn error_positions_and_expected_sets() {
        let e = parse_script("ring Q[x,y] trunc 8\nideal N = x^2 z").unwrap_err();
        assert_eq!((e.line, e.col), (2, 15));
        let e = parse_script("ring Q[x,y] trunc 8\nideal N = x y").unwrap_err();
        assert_eq!((e.line, e.col), (2, 13));
        let e = parse_script("ring Q[x] trunc 2\nideal N = x\ncurvesel N M").unwrap_err();
        assert!(e.expected.contains("ideal name"));
        let e = parse_script("ring Q[x, x] trunc 2").unwrap_err();
        assert!(e.expected.contains("new variable name"));
        let e = parse_script("ring Q[order] trunc 2").unwrap_err();
        assert_eq!(e.found, "`order`");
    }

    #[test]
    fn jets_arcs_and_verify() {
        let src = "ring Q[x,y] trunc 6\nideal X = x^2 - y^3\nideal E = 0\nideal W = x_2\narc g = (t^3, t^2)\narcsel X E W g level 2 order 4";
        let s = parse_script(src).unwrap();
        assert!(s.ideal("W")[0].uses_jets());
        assert_eq!(s.ideal("W")[0].max_level(), Some(2));
        let s = parse_script("ring Q[x] trunc 2\nverify  out/cert.txt").unwrap();
        assert_eq!(s.command, Command::Verify { path: "out/cert.txt".into() });
        assert!(parse_script("ring Q[x] trunc 2\narc g = (x)\nverify p").is_err());
    }

    #[test]
    fn rationals_and_division() {
        let s = parse_script("ring Q[x] trunc 2\nideal I = 3/4*x - 1/2\npoint a = (-2/3)\nwprep x^2 + x var x").unwrap();
        assert_eq!(s.decl("a"), Some(&DeclKind::Point(vec![Rational { num: (-2).into(), den: 3.into() }])));
    }
}
