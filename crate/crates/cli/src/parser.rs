//! Line-oriented parser for `.rsm` scripts. Newlines end statements except
//! inside brackets; `#` starts a comment.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::ast::*;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(&'static str),
    Newline,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Sym(s) => write!(f, "`{s}`"),
            Tok::Newline => write!(f, "end of line"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

const SYMBOLS: [&str; 17] = ["->", "=", "[", "]", "(", ")", "{", "}", ",", "/", "+", "-", "*", "^", ":", "_", "@"];

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut depth = 0i64;
    for (ln, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let (line, col) = (ln + 1, i + 1);
            if c == '#' {
                break;
            }
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Token { tok: Tok::Int(s.parse().expect("digits")), line, col });
                continue;
            }
            if c.is_alphabetic() || (c == '_' && chars.get(i + 1).is_some_and(|d| d.is_alphanumeric() || *d == '_')) {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), line, col });
                continue;
            }
            let rest: String = chars[i..].iter().take(2).collect();
            let Some(sym) = SYMBOLS.iter().find(|s| rest.starts_with(**s)) else {
                return Err(ParseError { line, col, message: format!("unexpected character `{c}`") });
            };
            match *sym {
                "[" | "(" | "{" => depth += 1,
                "]" | ")" | "}" => depth -= 1,
                _ => {}
            }
            i += sym.len();
            out.push(Token { tok: Tok::Sym(sym), line, col });
        }
        if depth <= 0 && out.last().is_some_and(|t| t.tok != Tok::Newline) {
            out.push(Token { tok: Tok::Newline, line: ln + 1, col: chars.len() + 1 });
        }
    }
    let line = text.lines().count() + 1;
    out.push(Token { tok: Tok::Eof, line, col: 1 });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn here(&self) -> (usize, usize) {
        let t = &self.toks[self.pos];
        (t.line, t.col)
    }

    fn error<T>(&self, expected: &str) -> PResult<T> {
        let (line, col) = self.here();
        Err(ParseError { line, col, message: format!("expected {expected}, found {}", self.peek()) })
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(x) if *x == s)
    }

    fn is_word(&self, w: &str) -> bool {
        matches!(self.peek(), Tok::Ident(x) if x == w)
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        if self.is_sym(s) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn sym(&mut self, s: &str) -> PResult<()> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            self.error(&format!("`{s}`"))
        }
    }

    fn word(&mut self, w: &str) -> PResult<()> {
        if self.is_word(w) {
            self.bump();
            Ok(())
        } else {
            self.error(&format!("`{w}`"))
        }
    }

    fn ident(&mut self, what: &str) -> PResult<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => self.error(what),
        }
    }

    fn int(&mut self, what: &str) -> PResult<BigInt> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(n)
            }
            _ => self.error(what),
        }
    }

    fn small(&mut self, what: &str) -> PResult<usize> {
        let (line, col) = self.here();
        let n = self.int(what)?;
        n.to_usize().ok_or(ParseError { line, col, message: format!("{n} is too large") })
    }

    fn positive(&mut self, what: &str) -> PResult<usize> {
        let (line, col) = self.here();
        match self.small(what)? {
            0 => Err(ParseError { line, col, message: format!("{what} must be at least 1") }),
            n => Ok(n),
        }
    }

    /// `sum := product (('+'|'-') product)*`
    fn expr(&mut self) -> PResult<Expr> {
        let mut acc = self.product()?;
        loop {
            if self.eat_sym("+") {
                acc = Expr::Add(Box::new(acc), Box::new(self.product()?));
            } else if self.eat_sym("-") {
                acc = Expr::Sub(Box::new(acc), Box::new(self.product()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> PResult<Expr> {
        let mut acc = self.unary()?;
        while self.eat_sym("*") {
            acc = Expr::Mul(Box::new(acc), Box::new(self.unary()?));
        }
        Ok(acc)
    }

    fn unary(&mut self) -> PResult<Expr> {
        if self.eat_sym("-") {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat_sym("^") {
            let (line, col) = self.here();
            let e = self.int("an exponent")?;
            let e = e.to_u32().ok_or(ParseError { line, col, message: "exponent too large".into() })?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> PResult<Expr> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                if self.is_sym("/") && matches!(self.peek_at(1), Tok::Int(_)) {
                    self.bump();
                    let (line, col) = self.here();
                    let d = self.int("a denominator")?;
                    if d.is_zero() {
                        return Err(ParseError { line, col, message: "zero denominator".into() });
                    }
                    return Ok(Expr::Num(BigRational::new(n, d)));
                }
                Ok(Expr::Num(BigRational::from_integer(n)))
            }
            Tok::Ident(s) => {
                self.bump();
                Ok(Expr::Var(s))
            }
            Tok::Sym("(") => {
                self.bump();
                let e = self.expr()?;
                self.sym(")")?;
                Ok(e)
            }
            _ => self.error("a number, a variable or `(`"),
        }
    }

    /// Comma-separated items between `open` and `close`; a trailing comma
    /// is allowed.
    fn list<T>(&mut self, open: &str, close: &str, mut item: impl FnMut(&mut Self) -> PResult<T>) -> PResult<Vec<T>> {
        self.sym(open)?;
        let mut out = Vec::new();
        while !self.is_sym(close) {
            out.push(item(self)?);
            if !self.eat_sym(",") {
                break;
            }
        }
        self.sym(close)?;
        Ok(out)
    }

    fn slot(&mut self) -> PResult<Slot> {
        if self.eat_sym("_") {
            Ok(None)
        } else {
            self.expr().map(Some)
        }
    }

    fn slots(&mut self) -> PResult<Vec<Slot>> {
        if self.is_sym("[") {
            self.list("[", "]", Self::slot)
        } else {
            Ok(vec![Some(self.expr()?)])
        }
    }

    fn element(&mut self) -> PResult<Element> {
        if self.is_sym("[") {
            Ok(Element::PerComponent(self.list("[", "]", Self::slot)?))
        } else {
            Ok(Element::Diagonal(self.expr()?))
        }
    }

    fn field_token(&mut self) -> PResult<Option<FieldSpec>> {
        let (line, col) = self.here();
        let name = self.ident("a field (`Q`, `F<p>` or `k`)")?;
        match name.as_str() {
            "Q" => Ok(Some(FieldSpec::Rational)),
            "k" => Ok(None),
            s if s.starts_with('F') && s.len() > 1 && s[1..].bytes().all(|b| b.is_ascii_digit()) => {
                let p = s[1..].parse().map_err(|_| ParseError { line, col, message: format!("bad characteristic in `{s}`") })?;
                Ok(Some(FieldSpec::Prime(p)))
            }
            s => Err(ParseError { line, col, message: format!("unknown field `{s}`; use `Q`, `F<p>` or `k`") }),
        }
    }

    fn matrix(&mut self) -> PResult<MatrixLit> {
        if let Tok::Int(n) = self.peek() {
            if n.is_zero() {
                self.bump();
                return Ok(MatrixLit::Zero);
            }
        }
        Ok(MatrixLit::Rows(self.list("[", "]", |p| p.list("[", "]", Self::expr))?))
    }

    fn action_key(&mut self) -> PResult<ActionKey> {
        if self.eat_sym("@") {
            return Ok(ActionKey::Idempotent(self.positive("a component number")?));
        }
        let v = self.ident("a variable or `@<component>`")?;
        let c = if self.eat_sym("@") { Some(self.positive("a component number")?) } else { None };
        Ok(ActionKey::Var(v, c))
    }

    fn cutoff(&mut self) -> PResult<Option<usize>> {
        if self.is_word("cutoff") {
            self.bump();
            Ok(Some(self.small("a cutoff")?))
        } else {
            Ok(None)
        }
    }

    fn statement(&mut self) -> PResult<Stmt> {
        let kw = self.ident("a statement keyword")?;
        match kw.as_str() {
            "field" => {
                let (line, col) = self.here();
                match self.ident("`Q` or `F`")?.as_str() {
                    "Q" => Ok(Stmt::Field(FieldSpec::Rational)),
                    "F" => {
                        let p = self.int("a prime")?;
                        let p = p.to_u64().ok_or(ParseError { line, col, message: "prime too large".into() })?;
                        Ok(Stmt::Field(FieldSpec::Prime(p)))
                    }
                    s => Err(ParseError { line, col, message: format!("unknown field `{s}`; use `Q` or `F <p>`") }),
                }
            }
            "ring" => {
                let name = self.ident("a ring name")?;
                self.sym("=")?;
                let field = self.field_token()?;
                let vars = if self.is_sym("[") { self.list("[", "]", |p| p.ident("a variable"))? } else { Vec::new() };
                let relations = if self.eat_sym("/") { self.list("(", ")", Self::expr)? } else { Vec::new() };
                Ok(Stmt::Ring { name, field, vars, relations })
            }
            "product" => {
                let name = self.ident("a product name")?;
                self.sym("=")?;
                let mut factors = vec![self.ident("a ring name")?];
                while self.is_word("x") {
                    self.bump();
                    factors.push(self.ident("a ring name")?);
                }
                Ok(Stmt::Product { name, factors })
            }
            "map" => {
                let name = self.ident("a map name")?;
                self.sym(":")?;
                let source = self.ident("a source ring")?;
                self.sym("->")?;
                let target = self.ident("a target ring")?;
                let via = if self.is_word("via") {
                    self.bump();
                    Some(self.list("(", ")", |p| p.positive("a source component"))?)
                } else {
                    None
                };
                let images = self.list("{", "}", |p| {
                    let v = p.ident("a source variable")?;
                    p.sym("->")?;
                    Ok((v, p.slots()?))
                })?;
                Ok(Stmt::Map { name, source, target, via, images })
            }
            "fd" => {
                let name = self.ident("an algebra name")?;
                self.word("from")?;
                self.word("ring")?;
                Ok(Stmt::Fd { name, ring: self.ident("a ring name")? })
            }
            "subalgebra" => {
                let name = self.ident("a subalgebra name")?;
                self.word("of")?;
                let algebra = self.ident("an algebra name")?;
                self.word("generated")?;
                self.word("by")?;
                let generators = self.list("(", ")", Self::element)?;
                Ok(Stmt::Subalgebra { name, algebra, generators })
            }
            "module" => {
                let name = self.ident("a module name")?;
                if self.is_word("over") {
                    self.bump();
                    let algebra = self.ident("an algebra name")?;
                    self.word("dim")?;
                    let dim = self.small("a dimension")?;
                    self.sym("{")?;
                    let mut entries = Vec::new();
                    while !self.is_sym("}") {
                        let k = self.action_key()?;
                        self.sym("->")?;
                        entries.push((k, self.matrix()?));
                        self.eat_sym(",");
                    }
                    self.sym("}")?;
                    return Ok(Stmt::Module { name, algebra, def: ModuleDef::Actions { dim, entries } });
                }
                self.sym("=")?;
                let algebra = self.ident("an algebra name")?;
                let def = if self.eat_sym("/") {
                    ModuleDef::Quotient(self.list("(", ")", Self::element)?)
                } else {
                    ModuleDef::Regular
                };
                Ok(Stmt::Module { name, algebra, def })
            }
            "assume" => {
                self.word("flat")?;
                Ok(Stmt::AssumeFlat { map: self.ident("a map name")? })
            }
            "reldim" => {
                let map = self.ident("a map name")?;
                self.word("component")?;
                self.sym("=")?;
                let component = self.positive("a component number")?;
                self.word("value")?;
                self.sym("=")?;
                let value = self.small("a relative dimension")?;
                Ok(Stmt::Reldim { map, component, value })
            }
            "check" => {
                self.word("smooth")?;
                Ok(Stmt::CheckSmooth { map: self.ident("a map name")? })
            }
            "compute" => self.command().map(Stmt::Compute),
            _ => {
                self.pos -= 1;
                self.error("a statement keyword")
            }
        }
    }

    fn command(&mut self) -> PResult<Command> {
        let what = self.ident("a computation")?;
        let c = match what.as_str() {
            "relgldim" => Command::RelGldim { map: self.ident("a map name")? },
            "fibergldim" => {
                let map = self.ident("a map name")?;
                self.word("at")?;
                let point = self.list("(", ")", Self::expr)?;
                let component = if self.is_word("component") {
                    self.bump();
                    Some(self.positive("a component number")?)
                } else {
                    None
                };
                Command::FiberGldim { map, point, component }
            }
            "tensorcheck" => Command::TensorCheck { left: self.ident("a map name")?, right: self.ident("a map name")? },
            "relpd" => {
                let algebra = self.ident("an algebra name")?;
                let sub = self.ident("a subalgebra name")?;
                self.word("module")?;
                let module = self.ident("a module name")?;
                Command::RelPd { algebra, sub, module, cutoff: self.cutoff()? }
            }
            "cdim" => {
                let algebra = self.ident("an algebra name")?;
                let sub = self.ident("a subalgebra name")?;
                Command::Cdim { algebra, sub, cutoff: self.cutoff()? }
            }
            "relhh" => {
                let algebra = self.ident("an algebra name")?;
                let sub = self.ident("a subalgebra name")?;
                self.word("degrees")?;
                Command::RelHh { algebra, sub, degrees: self.small("a degree")? }
            }
            "reltor" => {
                let algebra = self.ident("an algebra name")?;
                let sub = self.ident("a subalgebra name")?;
                self.word("modules")?;
                let right = self.ident("a module name")?;
                let module = self.ident("a module name")?;
                self.word("degrees")?;
                let degrees = self.small("a degree")?;
                Command::RelTor { algebra, sub, right, module, degrees, cutoff: self.cutoff()? }
            }
            "relpdmax" => {
                let algebra = self.ident("an algebra name")?;
                let sub = self.ident("a subalgebra name")?;
                self.word("samples")?;
                let samples = self.small("a sample count")?;
                self.word("dim")?;
                let max_dim = self.positive("a dimension")?;
                Command::RelPdMax { algebra, sub, samples, max_dim, cutoff: self.cutoff()? }
            }
            "gb" => Command::Gb { ring: self.ident("a ring name")? },
            "dim" => Command::Dim { ring: self.ident("a ring name")? },
            "nf" => {
                let poly = self.expr()?;
                self.word("in")?;
                Command::Nf { poly, ring: self.ident("a ring name")? }
            }
            _ => {
                self.pos -= 1;
                return self.error("a computation (relgldim, fibergldim, tensorcheck, relpd, cdim, relhh, reltor, relpdmax, gb, nf, dim)");
            }
        };
        Ok(c)
    }

    fn script(&mut self) -> PResult<Script> {
        let mut statements = Vec::new();
        loop {
            while *self.peek() == Tok::Newline {
                self.bump();
            }
            if *self.peek() == Tok::Eof {
                return Ok(Script { statements });
            }
            let (line, col) = self.here();
            let stmt = self.statement()?;
            if !matches!(self.peek(), Tok::Newline | Tok::Eof) {
                return self.error("end of line");
            }
            statements.push(Located { line, col, stmt });
        }
    }
}

/// Parses and resolves a script: every name must refer to an earlier
/// declaration of the right kind, and names are unique per kind.
pub fn parse(text: &str) -> Result<Script, ParseError> {
    let script = parse_syntax(text)?;
    resolve(&script)?;
    Ok(script)
}

/// Parses without checking names.
pub fn parse_syntax(text: &str) -> Result<Script, ParseError> {
    Parser { toks: lex(text)?, pos: 0 }.script()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Kind {
    Ring,
    Map,
    Fd,
    Subalgebra,
    Module,
}

impl Kind {
    fn noun(self) -> &'static str {
        match self {
            Kind::Ring => "ring",
            Kind::Map => "map",
            Kind::Fd => "finite-dimensional algebra",
            Kind::Subalgebra => "subalgebra",
            Kind::Module => "module",
        }
    }
}

/// Declared names, with the owning algebra for subalgebras and modules.
#[derive(Default)]
struct Scope {
    names: HashMap<(Kind, String), Option<String>>,
    field_declared: bool,
    rings_declared: bool,
}

impl Scope {
    fn declare(&mut self, kind: Kind, name: &str, owner: Option<String>, at: &Located) -> Result<(), ParseError> {
        if self.names.insert((kind, name.to_string()), owner).is_some() {
            return Err(located(at, format!("{} `{name}` is already declared", kind.noun())));
        }
        Ok(())
    }

    fn lookup(&self, kind: Kind, name: &str, at: &Located) -> Result<&Option<String>, ParseError> {
        self.names
            .get(&(kind, name.to_string()))
            .ok_or_else(|| located(at, format!("undefined {} `{name}`", kind.noun())))
    }

    fn owned_by(&self, kind: Kind, name: &str, algebra: &str, at: &Located) -> Result<(), ParseError> {
        match self.lookup(kind, name, at)? {
            Some(owner) if owner != algebra => {
                Err(located(at, format!("{} `{name}` belongs to `{owner}`, not `{algebra}`", kind.noun())))
            }
            _ => Ok(()),
        }
    }
}

fn located(at: &Located, message: String) -> ParseError {
    ParseError { line: at.line, col: at.col, message }
}

fn resolve(script: &Script) -> Result<(), ParseError> {
    let mut scope = Scope::default();
    for at in &script.statements {
        match &at.stmt {
            Stmt::Field(_) => {
                if scope.field_declared {
                    return Err(located(at, "the ground field is already declared".into()));
                }
                if scope.rings_declared {
                    return Err(located(at, "`field` must come before any ring".into()));
                }
                scope.field_declared = true;
            }
            Stmt::Ring { name, .. } => {
                scope.rings_declared = true;
                scope.declare(Kind::Ring, name, None, at)?;
            }
            Stmt::Product { name, factors } => {
                for f in factors {
                    scope.lookup(Kind::Ring, f, at)?;
                }
                scope.rings_declared = true;
                scope.declare(Kind::Ring, name, None, at)?;
            }
            Stmt::Map { name, source, target, .. } => {
                scope.lookup(Kind::Ring, source, at)?;
                scope.lookup(Kind::Ring, target, at)?;
                scope.declare(Kind::Map, name, None, at)?;
            }
            Stmt::Fd { name, ring } => {
                scope.lookup(Kind::Ring, ring, at)?;
                scope.declare(Kind::Fd, name, None, at)?;
            }
            Stmt::Subalgebra { name, algebra, .. } => {
                scope.lookup(Kind::Fd, algebra, at)?;
                scope.declare(Kind::Subalgebra, name, Some(algebra.clone()), at)?;
            }
            Stmt::Module { name, algebra, .. } => {
                scope.lookup(Kind::Fd, algebra, at)?;
                scope.declare(Kind::Module, name, Some(algebra.clone()), at)?;
            }
            Stmt::AssumeFlat { map } | Stmt::Reldim { map, .. } | Stmt::CheckSmooth { map } => {
                scope.lookup(Kind::Map, map, at)?;
            }
            Stmt::Compute(c) => match c {
                Command::RelGldim { map } | Command::FiberGldim { map, .. } => {
                    scope.lookup(Kind::Map, map, at)?;
                }
                Command::TensorCheck { left, right } => {
                    scope.lookup(Kind::Map, left, at)?;
                    scope.lookup(Kind::Map, right, at)?;
                }
                Command::RelPd { algebra, sub, module, .. } => {
                    scope.lookup(Kind::Fd, algebra, at)?;
                    scope.owned_by(Kind::Subalgebra, sub, algebra, at)?;
                    scope.owned_by(Kind::Module, module, algebra, at)?;
                }
                Command::Cdim { algebra, sub, .. }
                | Command::RelHh { algebra, sub, .. }
                | Command::RelPdMax { algebra, sub, .. } => {
                    scope.lookup(Kind::Fd, algebra, at)?;
                    scope.owned_by(Kind::Subalgebra, sub, algebra, at)?;
                }
                Command::RelTor { algebra, sub, right, module, .. } => {
                    scope.lookup(Kind::Fd, algebra, at)?;
                    scope.owned_by(Kind::Subalgebra, sub, algebra, at)?;
                    scope.owned_by(Kind::Module, right, algebra, at)?;
                    scope.owned_by(Kind::Module, module, algebra, at)?;
                }
                Command::Gb { ring } | Command::Dim { ring } | Command::Nf { ring, .. } => {
                    scope.lookup(Kind::Ring, ring, at)?;
                }
            },
        }
    }
    Ok(())
}
