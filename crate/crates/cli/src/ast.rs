//! Syntax tree for `.rsm` scripts and its pretty-printer. Printing then
//! reparsing gives back the same tree.

use std::fmt;

use num_rational::BigRational;
use num_traits::One;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(BigRational),
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
            Expr::Num(_) | Expr::Var(_) => 5,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "(")?;
            self.write_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Expr::Num(q) if q.denom().is_one() => write!(f, "{}", q.numer()),
            Expr::Num(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Neg(e) => {
                write!(f, "-")?;
                e.write_at(f, 3)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                a.write_at(f, 1)?;
                write!(f, " {} ", if matches!(self, Expr::Add(..)) { "+" } else { "-" })?;
                b.write_at(f, 2)
            }
            Expr::Mul(a, b) => {
                a.write_at(f, 2)?;
                write!(f, "*")?;
                b.write_at(f, 3)
            }
            Expr::Pow(b, e) => {
                b.write_at(f, 5)?;
                write!(f, "^{e}")
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

/// `Some(e)` or the placeholder `_`.
pub type Slot = Option<Expr>;

fn write_slots(f: &mut fmt::Formatter<'_>, slots: &[Slot]) -> fmt::Result {
    write!(f, "[")?;
    for (i, s) in slots.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        match s {
            Some(e) => write!(f, "{e}")?,
            None => write!(f, "_")?,
        }
    }
    write!(f, "]")
}

fn write_list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T], sep: &str) -> fmt::Result {
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            write!(f, "{sep}")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

/// An element of a finite-dimensional algebra: one polynomial read in every
/// component, or one entry per component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Element {
    Diagonal(Expr),
    PerComponent(Vec<Slot>),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Diagonal(e) => write!(f, "{e}"),
            Element::PerComponent(s) => write_slots(f, s),
        }
    }
}

/// Which generator an action matrix belongs to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ActionKey {
    /// A variable, optionally qualified by its 1-based component.
    Var(String, Option<usize>),
    /// The idempotent of a component.
    Idempotent(usize),
}

impl fmt::Display for ActionKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ActionKey::Var(v, None) => write!(f, "{v}"),
            ActionKey::Var(v, Some(c)) => write!(f, "{v}@{c}"),
            ActionKey::Idempotent(c) => write!(f, "@{c}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatrixLit {
    Zero,
    Rows(Vec<Vec<Expr>>),
}

impl fmt::Display for MatrixLit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixLit::Zero => write!(f, "0"),
            MatrixLit::Rows(rows) => {
                write!(f, "[")?;
                for (i, r) in rows.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "[")?;
                    write_list(f, r, ", ")?;
                    write!(f, "]")?;
                }
                write!(f, "]")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleDef {
    Regular,
    Quotient(Vec<Element>),
    Actions { dim: usize, entries: Vec<(ActionKey, MatrixLit)> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Rational,
    Prime(u64),
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F {p}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    RelGldim { map: String },
    FiberGldim { map: String, point: Vec<Expr>, component: Option<usize> },
    TensorCheck { left: String, right: String },
    RelPd { algebra: String, sub: String, module: String, cutoff: Option<usize> },
    Cdim { algebra: String, sub: String, cutoff: Option<usize> },
    RelHh { algebra: String, sub: String, degrees: usize },
    RelTor { algebra: String, sub: String, right: String, module: String, degrees: usize, cutoff: Option<usize> },
    RelPdMax { algebra: String, sub: String, samples: usize, max_dim: usize, cutoff: Option<usize> },
    Gb { ring: String },
    Nf { poly: Expr, ring: String },
    Dim { ring: String },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::RelGldim { .. } => "relgldim",
            Command::FiberGldim { .. } => "fibergldim",
            Command::TensorCheck { .. } => "tensorcheck",
            Command::RelPd { .. } => "relpd",
            Command::Cdim { .. } => "cdim",
            Command::RelHh { .. } => "relhh",
            Command::RelTor { .. } => "reltor",
            Command::RelPdMax { .. } => "relpdmax",
            Command::Gb { .. } => "gb",
            Command::Nf { .. } => "nf",
            Command::Dim { .. } => "dim",
        }
    }
}

fn write_cutoff(f: &mut fmt::Formatter<'_>, cutoff: &Option<usize>) -> fmt::Result {
    match cutoff {
        Some(c) => write!(f, " cutoff {c}"),
        None => Ok(()),
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "compute {}", self.name())?;
        match self {
            Command::RelGldim { map } => write!(f, " {map}"),
            Command::FiberGldim { map, point, component } => {
                write!(f, " {map} at (")?;
                write_list(f, point, ", ")?;
                write!(f, ")")?;
                match component {
                    Some(c) => write!(f, " component {c}"),
                    None => Ok(()),
                }
            }
            Command::TensorCheck { left, right } => write!(f, " {left} {right}"),
            Command::RelPd { algebra, sub, module, cutoff } => {
                write!(f, " {algebra} {sub} module {module}")?;
                write_cutoff(f, cutoff)
            }
            Command::Cdim { algebra, sub, cutoff } => {
                write!(f, " {algebra} {sub}")?;
                write_cutoff(f, cutoff)
            }
            Command::RelHh { algebra, sub, degrees } => write!(f, " {algebra} {sub} degrees {degrees}"),
            Command::RelTor { algebra, sub, right, module, degrees, cutoff } => {
                write!(f, " {algebra} {sub} modules {right} {module} degrees {degrees}")?;
                write_cutoff(f, cutoff)
            }
            Command::RelPdMax { algebra, sub, samples, max_dim, cutoff } => {
                write!(f, " {algebra} {sub} samples {samples} dim {max_dim}")?;
                write_cutoff(f, cutoff)
            }
            Command::Gb { ring } | Command::Dim { ring } => write!(f, " {ring}"),
            Command::Nf { poly, ring } => write!(f, " {poly} in {ring}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stmt {
    Field(FieldSpec),
    /// `field` is `None` for `k`, the declared field.
    Ring { name: String, field: Option<FieldSpec>, vars: Vec<String>, relations: Vec<Expr> },
    Product { name: String, factors: Vec<String> },
    Map { name: String, source: String, target: String, via: Option<Vec<usize>>, images: Vec<(String, Vec<Slot>)> },
    Fd { name: String, ring: String },
    Subalgebra { name: String, algebra: String, generators: Vec<Element> },
    Module { name: String, algebra: String, def: ModuleDef },
    AssumeFlat { map: String },
    Reldim { map: String, component: usize, value: usize },
    CheckSmooth { map: String },
    Compute(Command),
}

impl Stmt {
    pub fn is_command(&self) -> bool {
        matches!(self, Stmt::CheckSmooth { .. } | Stmt::Compute(_))
    }
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stmt::Field(s) => write!(f, "field {s}"),
            Stmt::Ring { name, field, vars, relations } => {
                let fld = match field {
                    None => "k".to_string(),
                    Some(FieldSpec::Rational) => "Q".to_string(),
                    Some(FieldSpec::Prime(p)) => format!("F{p}"),
                };
                write!(f, "ring {name} = {fld}[")?;
                write_list(f, vars, ", ")?;
                write!(f, "]")?;
                if !relations.is_empty() {
                    write!(f, " / (")?;
                    write_list(f, relations, ", ")?;
                    write!(f, ")")?;
                }
                Ok(())
            }
            Stmt::Product { name, factors } => {
                write!(f, "product {name} = ")?;
                write_list(f, factors, " x ")
            }
            Stmt::Map { name, source, target, via, images } => {
                write!(f, "map {name} : {source} -> {target}")?;
                if let Some(v) = via {
                    write!(f, " via (")?;
                    write_list(f, v, ", ")?;
                    write!(f, ")")?;
                }
                write!(f, " {{")?;
                for (i, (var, slots)) in images.iter().enumerate() {
                    write!(f, "{}{var} -> ", if i > 0 { ", " } else { " " })?;
                    write_slots(f, slots)?;
                }
                write!(f, "{}}}", if images.is_empty() { "" } else { " " })
            }
            Stmt::Fd { name, ring } => write!(f, "fd {name} from ring {ring}"),
            Stmt::Subalgebra { name, algebra, generators } => {
                write!(f, "subalgebra {name} of {algebra} generated by (")?;
                write_list(f, generators, ", ")?;
                write!(f, ")")
            }
            Stmt::Module { name, algebra, def } => match def {
                ModuleDef::Regular => write!(f, "module {name} = {algebra}"),
                ModuleDef::Quotient(gens) => {
                    write!(f, "module {name} = {algebra} / (")?;
                    write_list(f, gens, ", ")?;
                    write!(f, ")")
                }
                ModuleDef::Actions { dim, entries } => {
                    write!(f, "module {name} over {algebra} dim {dim} {{")?;
                    for (i, (k, m)) in entries.iter().enumerate() {
                        write!(f, "{}{k} -> {m}", if i > 0 { ", " } else { " " })?;
                    }
                    write!(f, "{}}}", if entries.is_empty() { "" } else { " " })
                }
            },
            Stmt::AssumeFlat { map } => write!(f, "assume flat {map}"),
            Stmt::Reldim { map, component, value } => write!(f, "reldim {map} component={component} value={value}"),
            Stmt::CheckSmooth { map } => write!(f, "check smooth {map}"),
            Stmt::Compute(c) => write!(f, "{c}"),
        }
    }
}

/// A statement with its 1-based source position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Located {
    pub line: usize,
    pub col: usize,
    pub stmt: Stmt,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Script {
    pub statements: Vec<Located>,
}

impl Script {
    /// The statements without positions, for structural comparison.
    pub fn nodes(&self) -> Vec<&Stmt> {
        self.statements.iter().map(|s| &s.stmt).collect()
    }
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.statements {
            writeln!(f, "{}", s.stmt)?;
        }
        Ok(())
    }
}
