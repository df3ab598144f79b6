//! Line-based certificate documents. Every number is an exact integer; rationals are
//! written `num/den`, series terms as `exponent numerator denominator` triples.
//!
//! ```text
//! csl-certificate 1
//! command curvesel N Z a order 12
//! field Q
//! vars x y
//! trunc 8
//! ts 12
//! search-bound 64
//! max-steps 32
//! script 5
//! | ring Q[x,y] trunc 8
//! ...
//! point 0/1 0/1
//! ramification 2
//! components 2
//! component 1
//!   3 1 1
//! ...
//! vanishing inf
//! witness 0 1
//!   3 1 1
//! chain 1
//! step 0 2 1/1 0/1
//! base-vars 1
//! line 1/1
//! working-trunc 13
//! end
//! ```

use std::fmt::Write as _;

use csl_core::curvesel::{ChainDigest, StepDigest};
use csl_core::{Arc, Certificate, Coeff, ExponentVector, Field, Point, Ring, TruncatedSeries};
use num_bigint::BigInt;
use thiserror::Error;

use crate::parser::Rational;

pub const VERSION: u32 = 1;
const MAGIC: &str = "csl-certificate";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("certificate line {line}: {message}")]
pub struct DocError {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DocField {
    Rational,
    Prime(u64),
}

impl DocField {
    pub fn from_field(f: Field) -> Self {
        match f {
            Field::Rational => DocField::Rational,
            Field::Prime(p) => DocField::Prime(p),
        }
    }

    pub fn to_field(&self) -> Result<Field, String> {
        match self {
            DocField::Rational => Ok(Field::Rational),
            DocField::Prime(p) => Field::prime(*p),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub exp: usize,
    pub num: BigInt,
    pub den: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocStep {
    pub var: usize,
    pub degree: usize,
    pub column: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateDocument {
    pub version: u32,
    pub command: String,
    pub field: DocField,
    pub vars: Vec<String>,
    pub trunc: usize,
    pub ts: usize,
    /// Jet level, for arc-space selection.
    pub level: Option<usize>,
    pub search_bound: u64,
    pub max_steps: usize,
    pub script: Vec<String>,
    pub point: Vec<Rational>,
    pub ramification: usize,
    pub components: Vec<Vec<Term>>,
    pub vanishing: Vec<Option<usize>>,
    pub witness_index: usize,
    pub witness: Vec<Term>,
    pub steps: Vec<DocStep>,
    pub base_vars: Vec<usize>,
    pub line: Vec<Rational>,
    pub working_trunc: usize,
}

fn rat(c: &Coeff) -> Rational {
    let (num, den) = c.to_ratio();
    Rational { num, den }
}

fn terms(s: &TruncatedSeries) -> Vec<Term> {
    s.terms()
        .map(|(e, c)| {
            let (num, den) = c.to_ratio();
            Term { exp: e.exponent(0) as usize, num, den }
        })
        .collect()
}

fn series(ring: Ring, ts: &[Term]) -> Result<TruncatedSeries, String> {
    let f = ring.field;
    let mut out = Vec::with_capacity(ts.len());
    for t in ts {
        if t.exp > ring.trunc {
            return Err(format!("exponent {} above the arc order {}", t.exp, ring.trunc));
        }
        let c = f.from_ratio(&t.num, &t.den).ok_or_else(|| format!("{}/{} is not in {f}", t.num, t.den))?;
        out.push((ExponentVector::var(0, t.exp as u32), c));
    }
    TruncatedSeries::from_terms(ring, out).map_err(|e| e.to_string())
}

fn coeffs(f: Field, rs: &[Rational]) -> Result<Vec<Coeff>, String> {
    rs.iter().map(|r| f.from_ratio(&r.num, &r.den).ok_or_else(|| format!("{}/{} is not in {f}", r.num, r.den))).collect()
}

/// Run parameters that are not part of the mathematical result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub command: String,
    pub vars: Vec<String>,
    pub level: Option<usize>,
    pub search_bound: u64,
    pub max_steps: usize,
    pub script: Vec<String>,
}

impl CertificateDocument {
    pub fn from_result(arc: &Arc, cert: &Certificate, prov: Provenance) -> Self {
        CertificateDocument {
            version: VERSION,
            command: prov.command,
            field: DocField::from_field(arc.ring().field),
            vars: prov.vars,
            trunc: cert.trunc,
            ts: cert.ts,
            level: prov.level,
            search_bound: prov.search_bound,
            max_steps: prov.max_steps,
            script: prov.script,
            point: cert.base_point.coordinates.iter().map(rat).collect(),
            ramification: arc.ramification,
            components: arc.components.iter().map(terms).collect(),
            vanishing: cert.vanishing_orders.clone(),
            witness_index: cert.witness_index,
            witness: terms(&cert.witness),
            steps: cert
                .chain
                .steps
                .iter()
                .map(|s| DocStep { var: s.var, degree: s.degree, column: s.column.iter().map(rat).collect() })
                .collect(),
            base_vars: cert.chain.base_vars.clone(),
            line: cert.chain.line.iter().map(rat).collect(),
            working_trunc: cert.chain.working_trunc,
        }
    }

    /// Rebuilds the arc and certificate in core types.
    pub fn to_result(&self) -> Result<(Arc, Certificate), String> {
        let f = self.field.to_field()?;
        let ring = Ring::new(1, self.ts, f);
        let comps = self.components.iter().map(|c| series(ring, c)).collect::<Result<Vec<_>, _>>()?;
        let arc = Arc::new(comps, self.ramification).map_err(|e| e.to_string())?;
        let steps = self
            .steps
            .iter()
            .map(|s| Ok(StepDigest { var: s.var, degree: s.degree, column: coeffs(f, &s.column)? }))
            .collect::<Result<Vec<_>, String>>()?;
        let cert = Certificate {
            base_point: Point::new(coeffs(f, &self.point)?),
            vanishing_orders: self.vanishing.clone(),
            witness_index: self.witness_index,
            witness: series(ring, &self.witness)?,
            chain: ChainDigest { steps, base_vars: self.base_vars.clone(), line: coeffs(f, &self.line)?, working_trunc: self.working_trunc },
            trunc: self.trunc,
            ts: self.ts,
        };
        Ok((arc, cert))
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let mut put = |key: &str, vals: &[String]| {
            out.push_str(key);
            for v in vals {
                out.push(' ');
                out.push_str(v);
            }
            out.push('\n');
        };
        let one = |x: &dyn ToString| vec![x.to_string()];
        let rats = |rs: &[Rational]| rs.iter().map(|r| format!("{}/{}", r.num, r.den)).collect::<Vec<_>>();
        put(MAGIC, &one(&self.version));
        put("command", &one(&self.command));
        put(
            "field",
            &match self.field {
                DocField::Rational => vec!["Q".to_string()],
                DocField::Prime(p) => vec!["F".to_string(), p.to_string()],
            },
        );
        put("vars", &self.vars);
        put("trunc", &one(&self.trunc));
        put("ts", &one(&self.ts));
        if let Some(l) = self.level {
            put("level", &one(&l));
        }
        put("search-bound", &one(&self.search_bound));
        put("max-steps", &one(&self.max_steps));
        put("script", &one(&self.script.len()));
        for l in &self.script {
            put("|", &one(l));
        }
        put("point", &rats(&self.point));
        put("ramification", &one(&self.ramification));
        put("components", &one(&self.components.len()));
        let term_lines = |ts: &[Term]| ts.iter().map(|t| format!("  {} {} {}", t.exp, t.num, t.den)).collect::<Vec<_>>();
        for c in &self.components {
            put("component", &one(&c.len()));
            for l in term_lines(c) {
                put(&l, &[]);
            }
        }
        put("vanishing", &self.vanishing.iter().map(|v| v.map_or("inf".to_string(), |o| o.to_string())).collect::<Vec<_>>());
        put("witness", &[self.witness_index.to_string(), self.witness.len().to_string()]);
        for l in term_lines(&self.witness) {
            put(&l, &[]);
        }
        put("chain", &one(&self.steps.len()));
        for s in &self.steps {
            let mut v = vec![s.var.to_string(), s.degree.to_string()];
            v.extend(rats(&s.column));
            put("step", &v);
        }
        put("base-vars", &self.base_vars.iter().map(ToString::to_string).collect::<Vec<_>>());
        put("line", &rats(&self.line));
        put("working-trunc", &one(&self.working_trunc));
        put("end", &[]);
        out
    }

    pub fn parse(text: &str) -> Result<Self, DocError> {
        let mut r = Reader { lines: text.split('\n').collect(), at: 0 };
        let version: u32 = r.scalar(MAGIC)?;
        if version != VERSION {
            return Err(r.err(format!("unsupported version {version}")));
        }
        let command = r.rest("command")?.to_string();
        let field = match r.fields("field")?.as_slice() {
            ["Q"] => DocField::Rational,
            ["F", p] => DocField::Prime(p.parse().map_err(|_| r.err(format!("bad modulus `{p}`")))?),
            _ => return Err(r.err("expected `field Q` or `field F <p>`".into())),
        };
        let vars = r.fields("vars")?.into_iter().map(str::to_string).collect();
        let trunc = r.scalar("trunc")?;
        let ts = r.scalar("ts")?;
        let level = if r.peek_key() == Some("level") { Some(r.scalar("level")?) } else { None };
        let search_bound = r.scalar("search-bound")?;
        let max_steps = r.scalar("max-steps")?;
        let n: usize = r.scalar("script")?;
        let script = (0..n).map(|_| r.rest("|").map(str::to_string)).collect::<Result<_, _>>()?;
        let point = r.rationals("point")?;
        let ramification = r.scalar("ramification")?;
        let nc: usize = r.scalar("components")?;
        let mut components = Vec::with_capacity(nc.min(1024));
        for _ in 0..nc {
            let k = r.scalar("component")?;
            components.push(r.terms(k)?);
        }
        let vanishing = r
            .fields("vanishing")?
            .into_iter()
            .map(|v| if v == "inf" { Ok(None) } else { v.parse().map(Some).map_err(|_| format!("bad order `{v}`")) })
            .collect::<Result<_, _>>()
            .map_err(|m| r.err(m))?;
        let (witness_index, wk) = match r.fields("witness")?.as_slice() {
            [i, k] => (r.num(i)?, r.num(k)?),
            _ => return Err(r.err("expected `witness <index> <terms>`".into())),
        };
        let witness = r.terms(wk)?;
        let ns: usize = r.scalar("chain")?;
        let mut steps = Vec::with_capacity(ns.min(1024));
        for _ in 0..ns {
            let f = r.fields("step")?;
            if f.len() < 2 {
                return Err(r.err("expected `step <var> <degree> <column>`".into()));
            }
            let column = f[2..].iter().map(|s| r.rational(s)).collect::<Result<_, _>>()?;
            steps.push(DocStep { var: r.num(f[0])?, degree: r.num(f[1])?, column });
        }
        let base_vars = r.fields("base-vars")?.iter().map(|s| r.num(s)).collect::<Result<_, _>>()?;
        let line = r.rationals("line")?;
        let working_trunc = r.scalar("working-trunc")?;
        if !r.fields("end")?.is_empty() {
            return Err(r.err("trailing data after `end`".into()));
        }
        if r.lines[r.at..].iter().any(|l| !l.is_empty()) || r.at + 1 < r.lines.len() {
            return Err(DocError { line: r.at + 1, message: "content after `end`".into() });
        }
        Ok(CertificateDocument {
            version,
            command,
            field,
            vars,
            trunc,
            ts,
            level,
            search_bound,
            max_steps,
            script,
            point,
            ramification,
            components,
            vanishing,
            witness_index,
            witness,
            steps,
            base_vars,
            line,
            working_trunc,
        })
    }

    /// A short human-readable summary of the arc.
    pub fn describe_arc(&self) -> String {
        let mut s = String::new();
        for (i, c) in self.components.iter().enumerate() {
            let name = self.vars.get(i).map(String::as_str).unwrap_or("?");
            let body: Vec<String> = c
                .iter()
                .map(|t| {
                    let coef = if t.den == BigInt::from(1) { t.num.to_string() } else { format!("{}/{}", t.num, t.den) };
                    match t.exp {
                        0 => coef,
                        1 => format!("{coef}*s"),
                        e => format!("{coef}*s^{e}"),
                    }
                })
                .collect();
            let body = if body.is_empty() { "0".to_string() } else { body.join(" + ") };
            let _ = writeln!(s, "  {name}(s) = {body} + O(s^{})", self.ts + 1);
        }
        s
    }
}

struct Reader<'a> {
    lines: Vec<&'a str>,
    at: usize,
}

impl<'a> Reader<'a> {
    fn err(&self, message: String) -> DocError {
        DocError { line: self.at.max(1), message }
    }

    fn peek_key(&self) -> Option<&'a str> {
        self.lines.get(self.at).and_then(|l| l.split(' ').next())
    }

    /// The text after `key ` on the next line.
    fn rest(&mut self, key: &str) -> Result<&'a str, DocError> {
        let line = self.lines.get(self.at).copied();
        self.at += 1;
        match line {
            Some(l) if l == key => Ok(""),
            Some(l) => l
                .strip_prefix(key)
                .and_then(|r| r.strip_prefix(' '))
                .ok_or_else(|| self.err(format!("expected `{key}`, found `{l}`"))),
            None => Err(self.err(format!("expected `{key}`, found end of document"))),
        }
    }

    fn fields(&mut self, key: &str) -> Result<Vec<&'a str>, DocError> {
        let rest = self.rest(key)?;
        Ok(if rest.is_empty() { Vec::new() } else { rest.split(' ').collect() })
    }

    fn num<T: std::str::FromStr>(&self, s: &str) -> Result<T, DocError> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) || (s.len() > 1 && s.starts_with('0')) {
            return Err(self.err(format!("bad number `{s}`")));
        }
        s.parse().map_err(|_| self.err(format!("bad number `{s}`")))
    }

    fn int(&self, s: &str) -> Result<BigInt, DocError> {
        let digits = s.strip_prefix('-').unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) || s == "-0" || (digits.len() > 1 && digits.starts_with('0')) {
            return Err(self.err(format!("bad integer `{s}`")));
        }
        s.parse().map_err(|_| self.err(format!("bad integer `{s}`")))
    }

    fn scalar<T: std::str::FromStr>(&mut self, key: &str) -> Result<T, DocError> {
        match self.fields(key)?.as_slice() {
            [v] => self.num(v),
            _ => Err(self.err(format!("expected one value after `{key}`"))),
        }
    }

    fn rational(&self, s: &str) -> Result<Rational, DocError> {
        let (n, d) = s.split_once('/').ok_or_else(|| self.err(format!("bad rational `{s}`")))?;
        Ok(Rational { num: self.int(n)?, den: self.int(d)? })
    }

    fn rationals(&mut self, key: &str) -> Result<Vec<Rational>, DocError> {
        let f = self.fields(key)?;
        f.iter().map(|s| self.rational(s)).collect()
    }

    fn terms(&mut self, k: usize) -> Result<Vec<Term>, DocError> {
        let mut out = Vec::with_capacity(k.min(4096));
        for _ in 0..k {
            let f = self.fields("")?;
            match f.as_slice() {
                ["", e, n, d] => out.push(Term { exp: self.num(e)?, num: self.int(n)?, den: self.int(d)? }),
                _ => return Err(self.err("expected a term `  <exp> <num> <den>`".into())),
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> CertificateDocument {
        CertificateDocument {
            version: VERSION,
            command: "curvesel N Z a order 12".into(),
            field: DocField::Rational,
            vars: vec!["x".into(), "y".into()],
            trunc: 8,
            ts: 12,
            level: None,
            search_bound: 64,
            max_steps: 32,
            script: vec!["ring Q[x,y] trunc 8".into(), "".into()],
            point: vec![Rational { num: 0.into(), den: 1.into() }; 2],
            ramification: 2,
            components: vec![vec![Term { exp: 3, num: 1.into(), den: 1.into() }], vec![Term { exp: 2, num: (-3).into(), den: 7.into() }]],
            vanishing: vec![None, Some(4)],
            witness_index: 0,
            witness: vec![],
            steps: vec![DocStep { var: 0, degree: 2, column: vec![Rational { num: 1.into(), den: 1.into() }] }],
            base_vars: vec![],
            line: vec![],
            working_trunc: 13,
        }
    }

    #[test]
    fn round_trip() {
        let d = sample();
        let text = d.serialize();
        let back = CertificateDocument::parse(&text).unwrap();
        assert_eq!(back, d);
        assert_eq!(back.serialize(), text);
        let mut with_level = d;
        with_level.level = Some(2);
        with_level.field = DocField::Prime(101);
        assert_eq!(CertificateDocument::parse(&with_level.serialize()).unwrap(), with_level);
    }

    #[test]
    fn rejects_damage() {
        let text = sample().serialize();
        assert!(CertificateDocument::parse(&text.replace("ts 12", "ts twelve")).is_err());
        assert!(CertificateDocument::parse(&text.replace("  3 1 1", "  3 1")).is_err());
        assert!(CertificateDocument::parse(&text.replace("end\n", "")).is_err());
        assert!(CertificateDocument::parse(&format!("{text}extra\n")).is_err());
        assert!(CertificateDocument::parse(&text.replace("0/1", "00/1")).is_err());
    }
}
