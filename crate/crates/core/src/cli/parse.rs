//! Job file grammar:
//!
//! ```text
//! ring <n> <vars...> mod <p> [order grevlex|lex];
//! ideal <Name> = <poly>, <poly>, ...;      # or  A*B  or  A+B
//! run <command> [args];
//! ```
//!
//! `#` starts a comment that runs to the end of the line.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::MonomialOrder;
use crate::poly::{Polynomial, PolynomialRing};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingDecl {
    pub variables: Vec<String>,
    pub characteristic: u32,
    pub order: MonomialOrder,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdealExpr {
    Generators(Vec<Polynomial>),
    Product(String, String),
    Sum(String, String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealDecl {
    pub name: String,
    pub expr: IdealExpr,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Resolve { ideal: String },
    Koszul { ideal: String },
    /// `sigma` is 1-based as written; `a` names one ideal per entry, `m` allowed.
    Trim { ideal: String, sigma: Vec<usize>, a: Option<Vec<String>> },
    ProductResolution { a: String, ideal: String },
    Golod { ideal: String, n: usize, factors: Option<(String, String)> },
    Corpus,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Resolve { .. } => "resolve",
            Command::Koszul { .. } => "koszul",
            Command::Trim { .. } => "trim",
            Command::ProductResolution { .. } => "product-resolution",
            Command::Golod { .. } => "golod",
            Command::Corpus => "corpus",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobSpec {
    pub ring: RingDecl,
    pub ring_handle: Arc<PolynomialRing>,
    pub ideals: Vec<IdealDecl>,
    pub commands: Vec<Command>,
}

impl JobSpec {
    pub fn ideal(&self, name: &str) -> Option<&IdealDecl> {
        self.ideals.iter().find(|d| d.name == name)
    }
}

impl fmt::Display for JobSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = &self.ring;
        writeln!(f, "ring {} {} mod {} order {};", r.variables.len(), r.variables.join(" "), r.characteristic, r.order.name())?;
        for d in &self.ideals {
            match &d.expr {
                IdealExpr::Generators(g) => {
                    let gens: Vec<String> = g.iter().map(|p| p.to_string()).collect();
                    writeln!(f, "ideal {} = {};", d.name, gens.join(", "))?
                }
                IdealExpr::Product(a, b) => writeln!(f, "ideal {} = {a}*{b};", d.name)?,
                IdealExpr::Sum(a, b) => writeln!(f, "ideal {} = {a}+{b};", d.name)?,
            }
        }
        for c in &self.commands {
            match c {
                Command::Resolve { ideal } | Command::Koszul { ideal } => writeln!(f, "run {} {ideal};", c.name())?,
                Command::Trim { ideal, sigma, a } => {
                    let s: Vec<String> = sigma.iter().map(|x| x.to_string()).collect();
                    write!(f, "run trim {ideal} sigma={}", s.join(","))?;
                    if let Some(a) = a {
                        write!(f, " a={}", a.join(","))?;
                    }
                    writeln!(f, ";")?
                }
                Command::ProductResolution { a, ideal } => writeln!(f, "run product-resolution {a} {ideal};")?,
                Command::Golod { ideal, n, factors } => {
                    write!(f, "run golod {ideal} N={n}")?;
                    if let Some((a, b)) = factors {
                        write!(f, " factors={a},{b}")?;
                    }
                    writeln!(f, ";")?
                }
                Command::Corpus => writeln!(f, "run corpus;")?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u64),
    Sym(char),
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let column = i + 1;
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let v = s.parse().map_err(|_| err(ln + 1, column, format!("integer {s} is too large")))?;
                out.push(Token { tok: Tok::Int(v), line: ln + 1, column });
            } else if c.is_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), line: ln + 1, column });
            } else if "+-*^(),;=".contains(c) {
                out.push(Token { tok: Tok::Sym(c), line: ln + 1, column });
                i += 1;
            } else {
                return Err(err(ln + 1, column, format!("unexpected character '{c}'")));
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
    end: (usize, usize),
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.toks.get(self.pos)
    }

    fn here(&self) -> (usize, usize) {
        self.peek().map(|t| (t.line, t.column)).unwrap_or(self.end)
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T> {
        let (l, c) = self.here();
        Err(err(l, c, message))
    }

    fn next(&mut self) -> Option<&'a Token> {
        let t = self.toks.get(self.pos);
        self.pos += 1;
        t
    }

    fn expect_sym(&mut self, s: char) -> Result<()> {
        match self.peek() {
            Some(Token { tok: Tok::Sym(c), .. }) if *c == s => {
                self.pos += 1;
                Ok(())
            }
            _ => self.fail(format!("expected '{s}'")),
        }
    }

    fn at_sym(&self, s: char) -> bool {
        matches!(self.peek(), Some(Token { tok: Tok::Sym(c), .. }) if *c == s)
    }

    fn ident(&mut self, what: &str) -> Result<String> {
        match self.peek() {
            Some(Token { tok: Tok::Ident(s), .. }) => {
                self.pos += 1;
                Ok(s.clone())
            }
            _ => self.fail(format!("expected {what}")),
        }
    }

    fn int(&mut self, what: &str) -> Result<u64> {
        match self.peek() {
            Some(Token { tok: Tok::Int(v), .. }) => {
                self.pos += 1;
                Ok(*v)
            }
            _ => self.fail(format!("expected {what}")),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<()> {
        match self.peek() {
            Some(Token { tok: Tok::Ident(s), .. }) if s == kw => {
                self.pos += 1;
                Ok(())
            }
            _ => self.fail(format!("expected '{kw}'")),
        }
    }
}

struct PolyParser<'p, 'a> {
    p: &'p mut Parser<'a>,
    ring: &'p Arc<PolynomialRing>,
}

impl PolyParser<'_, '_> {
    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = if self.p.at_sym('-') {
            self.p.pos += 1;
            self.term()?.neg()
        } else {
            self.term()?
        };
        loop {
            if self.p.at_sym('+') {
                self.p.pos += 1;
                acc = &acc + &self.term()?;
            } else if self.p.at_sym('-') {
                self.p.pos += 1;
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        while self.p.at_sym('*') {
            self.p.pos += 1;
            acc = &acc * &self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.p.at_sym('^') {
            self.p.pos += 1;
            let e = self.p.int("exponent")?;
            if e > 255 {
                return self.p.fail("exponent too large");
            }
            let mut out = Polynomial::one(self.ring);
            for _ in 0..e {
                out = &out * &base;
            }
            return Ok(out);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let (line, column) = self.p.here();
        match self.p.next().map(|t| &t.tok) {
            Some(Tok::Int(v)) => {
                let k = self.ring.field();
                Ok(Polynomial::constant(self.ring, (*v % k.characteristic() as u64) as u32))
            }
            Some(Tok::Ident(name)) => match self.ring.variable_index(name) {
                Some(i) => Ok(Polynomial::variable(self.ring, i)),
                None => Err(err(line, column, format!("unknown variable '{name}'"))),
            },
            Some(Tok::Sym('(')) => {
                let e = self.expr()?;
                self.p.expect_sym(')')?;
                Ok(e)
            }
            Some(Tok::Sym('-')) => Ok(self.power()?.neg()),
            _ => Err(err(line, column, "expected a polynomial term")),
        }
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d: &u32| (*d as u64) * (*d as u64) <= p as u64).all(|d| p % d != 0)
}

/// Parses a job file. Line and column numbers in errors are 1-based.
pub fn parse_job(text: &str) -> Result<JobSpec> {
    let toks = lex(text)?;
    let last = text.lines().count().max(1);
    let mut p = Parser { toks: &toks, pos: 0, end: (last, text.lines().last().map_or(1, |l| l.chars().count() + 1)) };

    p.keyword("ring")?;
    let n = p.int("variable count")? as usize;
    let mut variables = Vec::new();
    while let Some(Token { tok: Tok::Ident(s), .. }) = p.peek() {
        if s == "mod" {
            break;
        }
        if variables.contains(s) {
            return p.fail(format!("duplicate variable '{s}'"));
        }
        variables.push(s.clone());
        p.pos += 1;
    }
    if variables.len() != n {
        return p.fail(format!("ring declares {n} variables but names {}", variables.len()));
    }
    p.keyword("mod")?;
    let (cl, cc) = p.here();
    let ch = p.int("characteristic")?;
    if ch > u32::MAX as u64 || !is_prime(ch as u32) {
        return Err(err(cl, cc, format!("bad characteristic {ch}: must be a prime")));
    }
    let field = PrimeField::new(ch as u32).map_err(|e| err(cl, cc, format!("bad characteristic {ch}: {e}")))?;
    let mut order = MonomialOrder::Grevlex;
    if matches!(p.peek(), Some(Token { tok: Tok::Ident(s), .. }) if s == "order") {
        p.pos += 1;
        order = match p.ident("monomial order")?.as_str() {
            "grevlex" => MonomialOrder::Grevlex,
            "lex" => MonomialOrder::Lex,
            other => {
                p.pos -= 1;
                return p.fail(format!("unknown monomial order '{other}'"));
            }
        };
    }
    p.expect_sym(';')?;
    let ring = PolynomialRing::new(variables.clone(), field, order).map_err(|e| err(1, 1, e.to_string()))?;

    let mut ideals: Vec<IdealDecl> = Vec::new();
    let mut commands = Vec::new();
    while let Some(t) = p.peek() {
        match &t.tok {
            Tok::Ident(s) if s == "ideal" => {
                p.pos += 1;
                let name_at = p.here();
                let name = p.ident("ideal name")?;
                if ring.variable_index(&name).is_some() {
                    return Err(err(name_at.0, name_at.1, format!("ideal name '{name}' clashes with a variable")));
                }
                if name == "m" || ideals.iter().any(|d| d.name == name) {
                    return Err(err(name_at.0, name_at.1, format!("ideal '{name}' is already defined")));
                }
                p.expect_sym('=')?;
                let expr = ideal_expr(&mut p, &ring, &ideals)?;
                p.expect_sym(';')?;
                ideals.push(IdealDecl { name, expr });
            }
            Tok::Ident(s) if s == "run" => {
                p.pos += 1;
                commands.push(command(&mut p, &ideals)?);
                p.expect_sym(';')?;
            }
            _ => return p.fail("expected 'ideal' or 'run'"),
        }
    }
    if commands.is_empty() {
        return p.fail("job has no 'run' statement");
    }
    Ok(JobSpec { ring: RingDecl { variables, characteristic: ch as u32, order }, ring_handle: ring, ideals, commands })
}

fn ideal_expr(p: &mut Parser, ring: &Arc<PolynomialRing>, known: &[IdealDecl]) -> Result<IdealExpr> {
    let is_ideal = |s: &str| s == "m" || known.iter().any(|d| d.name == s);
    if let (Some(Token { tok: Tok::Ident(a), .. }), Some(Token { tok: Tok::Sym(op), .. }), Some(Token { tok: Tok::Ident(b), .. })) =
        (p.toks.get(p.pos), p.toks.get(p.pos + 1), p.toks.get(p.pos + 2))
    {
        let closes = matches!(p.toks.get(p.pos + 3), Some(Token { tok: Tok::Sym(';'), .. }));
        if closes && (is_ideal(a) || is_ideal(b)) && (*op == '*' || *op == '+') {
            for (k, name) in [(0, a), (2, b)] {
                if !is_ideal(name) {
                    let t = &p.toks[p.pos + k];
                    return Err(err(t.line, t.column, format!("undefined ideal '{name}'")));
                }
            }
            p.pos += 3;
            return Ok(if *op == '*' { IdealExpr::Product(a.clone(), b.clone()) } else { IdealExpr::Sum(a.clone(), b.clone()) });
        }
    }
    let mut gens = Vec::new();
    loop {
        let (line, column) = p.here();
        let f = PolyParser { p, ring }.expr()?;
        if !f.is_homogeneous() {
            return Err(err(line, column, format!("inhomogeneous polynomial {f}")));
        }
        gens.push(f);
        if p.at_sym(',') {
            p.pos += 1;
        } else {
            return Ok(IdealExpr::Generators(gens));
        }
    }
}

fn command(p: &mut Parser, known: &[IdealDecl]) -> Result<Command> {
    let mut name = p.ident("command name")?;
    // hyphenated command names arrive as ident '-' ident
    while p.at_sym('-') {
        if let Some(Token { tok: Tok::Ident(rest), .. }) = p.toks.get(p.pos + 1) {
            name = format!("{name}-{rest}");
            p.pos += 2;
        } else {
            break;
        }
    }
    let ideal_ref = |p: &mut Parser| -> Result<String> {
        let (l, c) = p.here();
        let s = p.ident("ideal name")?;
        if s == "m" || known.iter().any(|d| d.name == s) {
            Ok(s)
        } else {
            Err(err(l, c, format!("undefined ideal '{s}'")))
        }
    };
    // key=value list until ';'
    fn option(p: &mut Parser) -> Result<Option<(String, Vec<Tok>, (usize, usize))>> {
        if p.at_sym(';') || p.peek().is_none() {
            return Ok(None);
        }
        let at = p.here();
        let key = p.ident("option name")?;
        p.expect_sym('=')?;
        let mut vals = Vec::new();
        loop {
            match p.next() {
                Some(Token { tok: t @ (Tok::Int(_) | Tok::Ident(_)), .. }) => vals.push(t.clone()),
                _ => {
                    p.pos -= 1;
                    return p.fail(format!("expected a value for '{key}'"));
                }
            }
            if !p.at_sym(',') {
                return Ok(Some((key, vals, at)));
            }
            p.pos += 1;
        }
    }
    let check_names = |vals: &[Tok], at: (usize, usize)| -> Result<Vec<String>> {
        vals.iter()
            .map(|v| match v {
                Tok::Ident(s) if s == "m" || known.iter().any(|d| &d.name == s) => Ok(s.clone()),
                Tok::Ident(s) => Err(err(at.0, at.1, format!("undefined ideal '{s}'"))),
                _ => Err(err(at.0, at.1, "expected ideal names")),
            })
            .collect()
    };
    match name.as_str() {
        "resolve" => Ok(Command::Resolve { ideal: ideal_ref(p)? }),
        "koszul" => Ok(Command::Koszul { ideal: ideal_ref(p)? }),
        "product-resolution" => {
            let a = ideal_ref(p)?;
            let ideal = ideal_ref(p)?;
            Ok(Command::ProductResolution { a, ideal })
        }
        "trim" => {
            let ideal = ideal_ref(p)?;
            let mut sigma = None;
            let mut a = None;
            while let Some((key, vals, at)) = option(p)? {
                match key.as_str() {
                    "sigma" => {
                        let mut s = Vec::new();
                        for v in &vals {
                            match v {
                                Tok::Int(x) if *x >= 1 => s.push(*x as usize),
                                _ => return Err(err(at.0, at.1, "sigma lists 1-based generator positions")),
                            }
                        }
                        sigma = Some(s);
                    }
                    "a" => a = Some(check_names(&vals, at)?),
                    _ => return Err(err(at.0, at.1, format!("unknown option '{key}' for trim"))),
                }
            }
            let Some(sigma) = sigma else {
                return p.fail("trim needs sigma=...");
            };
            Ok(Command::Trim { ideal, sigma, a })
        }
        "golod" => {
            let ideal = ideal_ref(p)?;
            let mut n = 5;
            let mut factors = None;
            while let Some((key, vals, at)) = option(p)? {
                match (key.as_str(), vals.as_slice()) {
                    ("N", [Tok::Int(v)]) => n = *v as usize,
                    ("factors", _) => {
                        let names = check_names(&vals, at)?;
                        if names.len() != 2 {
                            return Err(err(at.0, at.1, "factors takes two ideal names"));
                        }
                        factors = Some((names[0].clone(), names[1].clone()));
                    }
                    _ => return Err(err(at.0, at.1, format!("bad option '{key}' for golod"))),
                }
            }
            Ok(Command::Golod { ideal, n, factors })
        }
        "corpus" => Ok(Command::Corpus),
        other => {
            let t = &p.toks[p.pos - 1];
            Err(err(t.line, t.column, format!("unknown command '{other}'")))
        }
    }
}

/// Builds the polynomial ideal named by one of the declarations; `m` is the
/// homogeneous maximal ideal.
pub fn resolve_ideal(spec: &JobSpec, name: &str) -> Result<crate::groebner::Ideal> {
    use crate::groebner::Ideal;
    let ring = &spec.ring_handle;
    if name == "m" {
        return Ok(Ideal::maximal(ring));
    }
    let decl = spec.ideal(name).ok_or_else(|| Error::precondition(format!("undefined ideal {name}")))?;
    match &decl.expr {
        IdealExpr::Generators(g) => Ideal::new(ring, g.clone()),
        IdealExpr::Product(a, b) => resolve_ideal(spec, a)?.product(&resolve_ideal(spec, b)?),
        IdealExpr::Sum(a, b) => resolve_ideal(spec, a)?.sum(&resolve_ideal(spec, b)?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_golod_job() {
        let spec = parse_job("ring 3 x y z mod 32003; ideal I = x^2, x*y, z^3; run golod I N=5;").unwrap();
        assert_eq!(spec.ring.variables, vec!["x", "y", "z"]);
        assert_eq!(spec.commands, vec![Command::Golod { ideal: "I".into(), n: 5, factors: None }]);
        match &spec.ideals[0].expr {
            IdealExpr::Generators(g) => assert_eq!(g.len(), 3),
            e => panic!("{e:?}"),
        }
    }

    #[test]
    fn parses_product_resolution_job() {
        let text = "ring 4 x y z w mod 32003; ideal A = x^2,y^2,z^2,w^2; ideal M = x,y,z,w; run product-resolution A M;";
        let spec = parse_job(text).unwrap();
        assert_eq!(spec.commands, vec![Command::ProductResolution { a: "A".into(), ideal: "M".into() }]);
    }

    #[test]
    fn reports_errors_with_positions() {
        let e = parse_job("ring 3 x y z mod 32003;\nideal I = x + y^2;\nrun resolve I;").unwrap_err();
        match e {
            Error::Parse { line, column, message } => {
                assert_eq!((line, column), (2, 11));
                assert!(message.contains("inhomogeneous"));
            }
            e => panic!("{e:?}"),
        }
        let e = parse_job("ring 2 x y mod 32003; ideal I = x*q;\nrun resolve I;").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, column: 35, .. }), "{e:?}");
        let e = parse_job("ring 2 x y mod 32002; run corpus;").unwrap_err();
        assert!(e.to_string().contains("bad characteristic"));
        let e = parse_job("ring 2 x y mod 7; ideal I = x; run resolve J;").unwrap_err();
        assert!(e.to_string().contains("undefined ideal"));
        assert!(parse_job("ring 2 x y mod 7; ideal I = x;").is_err());
    }

    #[test]
    fn ideal_arithmetic_and_round_trip() {
        let text = "ring 3 x y z mod 101 order lex;\n# products\nideal A = x, y;\nideal B = A*m;\nideal C = A+B;\n\
                    ideal D = 3*x^2 - (y + z)*z, -x*y;\nrun trim A sigma=1,2 a=m,B;\nrun golod B N=4 factors=A,m;\nrun koszul C;\nrun resolve D;";
        let spec = parse_job(text).unwrap();
        let again = parse_job(&spec.to_string()).unwrap();
        assert_eq!(spec, again);
        let b = resolve_ideal(&spec, "B").unwrap();
        assert_eq!(b.mu(), 5);
    }
}
