//! Runs a resolved script against the core library and collects a report.

use std::collections::HashMap;
use std::sync::Arc;
use std::time::Instant;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use relsmooth_core::algebra::{Component, ComponentImage};
use relsmooth_core::fdrel::{cdim_fd, random_module, rel_bar_homology, rel_tor, standard_resolution, FdPresentation, DEFAULT_CHAIN_LIMIT};
use relsmooth_core::linalg::{zero_vector, Vector};
use relsmooth_core::{
    fd_from_presentation, fiber_algebra, fiber_gldim, is_smooth, rel_gldim, tensor_gldim_check, Budget, ExtendedNat, FDModule,
    FDSubalgebra, Field, FieldElem, FiberPoint, Ideal, Matrix, MonomialOrder, Poly, PolyRing, PresentedAlgebra, RingMap,
};
use serde_json::{json, Map, Value};

use crate::ast::*;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    pub budget: Budget,
    /// Resolution cutoff for commands that do not give one.
    pub cutoff: usize,
    /// Seed for `relpdmax` sampling.
    pub seed: u64,
    /// Adds `elapsed_ms` to every result; off by default so that reports
    /// are byte-for-byte reproducible.
    pub timing: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { budget: Budget::default(), cutoff: 6, seed: 0, timing: false }
    }
}

type Fallible<T> = Result<T, String>;

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Declarations seen so far. A failed declaration is kept with its error so
/// that dependents can say why they cannot run.
#[derive(Default)]
struct Env {
    field: Option<Field>,
    rings: HashMap<String, Fallible<PresentedAlgebra>>,
    maps: HashMap<String, Fallible<RingMap>>,
    fds: HashMap<String, Fallible<FdPresentation>>,
    subs: HashMap<String, Fallible<FDSubalgebra>>,
    modules: HashMap<String, Fallible<FDModule>>,
}

fn get<'a, T>(table: &'a HashMap<String, Fallible<T>>, name: &str) -> Fallible<&'a T> {
    match table.get(name) {
        Some(Ok(x)) => Ok(x),
        Some(Err(_)) => Err(format!("`{name}` could not be built (see its declaration)")),
        None => Err(format!("`{name}` is not declared")),
    }
}

fn field_of(spec: &FieldSpec) -> Fallible<Field> {
    match spec {
        FieldSpec::Rational => Ok(Field::Rational),
        FieldSpec::Prime(p) => Field::prime(*p).map_err(err),
    }
}

fn constant(e: &Expr, field: &Field) -> Fallible<FieldElem> {
    Ok(match e {
        Expr::Num(q) => field.from_rational(q).map_err(err)?,
        Expr::Var(v) => return Err(format!("`{v}` is not a constant")),
        Expr::Neg(a) => -&constant(a, field)?,
        Expr::Add(a, b) => &constant(a, field)? + &constant(b, field)?,
        Expr::Sub(a, b) => &constant(a, field)? - &constant(b, field)?,
        Expr::Mul(a, b) => &constant(a, field)? * &constant(b, field)?,
        Expr::Pow(a, k) => constant(a, field)?.pow(*k),
    })
}

fn poly(e: &Expr, ring: &Arc<PolyRing>) -> Fallible<Poly> {
    Ok(match e {
        Expr::Num(q) => Poly::constant(ring, ring.field().from_rational(q).map_err(err)?),
        Expr::Var(v) => {
            let i = ring.var_index(v).ok_or_else(|| format!("`{v}` is not a variable of {}[{}]", ring.field(), ring.vars().join(",")))?;
            Poly::var(ring, i)
        }
        Expr::Neg(a) => -&poly(a, ring)?,
        Expr::Add(a, b) => poly(a, ring)?.checked_add(&poly(b, ring)?).map_err(err)?,
        Expr::Sub(a, b) => poly(a, ring)?.checked_sub(&poly(b, ring)?).map_err(err)?,
        Expr::Mul(a, b) => poly(a, ring)?.checked_mul(&poly(b, ring)?).map_err(err)?,
        Expr::Pow(a, k) => poly(a, ring)?.pow(*k).map_err(err)?,
    })
}

fn element(fd: &FdPresentation, e: &Element) -> Fallible<Vector> {
    let comps = fd.presentation.components();
    let f = fd.algebra.field();
    let mut v = zero_vector(f, fd.algebra.dim());
    let mut add = |c: usize, e: &Expr| -> Fallible<()> {
        let p = poly(e, comps[c].ring()).map_err(|m| if comps.len() > 1 { format!("{m}; give one entry per component") } else { m })?;
        for (x, y) in v.iter_mut().zip(fd.element_of(c, &p).map_err(err)?) {
            *x = &*x + &y;
        }
        Ok(())
    };
    match e {
        Element::Diagonal(e) => {
            for c in 0..comps.len() {
                add(c, e)?;
            }
        }
        Element::PerComponent(slots) => {
            if slots.len() != comps.len() {
                return Err(format!("expected {} entries, one per component, got {}", comps.len(), slots.len()));
            }
            for (c, s) in slots.iter().enumerate() {
                if let Some(e) = s {
                    add(c, e)?;
                }
            }
        }
    }
    Ok(v)
}

fn matrix(lit: &MatrixLit, dim: usize, field: &Field) -> Fallible<Matrix> {
    match lit {
        MatrixLit::Zero => Ok(Matrix::zeros(field, dim, dim)),
        MatrixLit::Rows(rows) => {
            if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
                return Err(format!("action matrices must be {dim}x{dim}"));
            }
            let rows = rows.iter().map(|r| r.iter().map(|e| constant(e, field)).collect()).collect::<Fallible<Vec<_>>>()?;
            Ok(Matrix::from_rows(field, dim, rows))
        }
    }
}

impl Env {
    fn field(&self) -> Field {
        self.field.clone().unwrap_or(Field::Rational)
    }

    fn ring(&self, field: &Option<FieldSpec>, vars: &[String], relations: &[Expr], budget: &Budget) -> Fallible<PresentedAlgebra> {
        let field = match field {
            Some(s) => field_of(s)?,
            None => self.field(),
        };
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(format!("variable `{v}` listed twice"));
            }
        }
        let ring = PolyRing::new(field, vars.to_vec(), MonomialOrder::GrevLex);
        let gens = relations.iter().map(|e| poly(e, &ring)).collect::<Fallible<Vec<_>>>()?;
        let ideal = Ideal::new(&ring, gens).map_err(err)?;
        Ok(PresentedAlgebra::single(Component::new(ideal, budget).map_err(err)?))
    }

    fn map(&self, source: &str, target: &str, via: &Option<Vec<usize>>, images: &[(String, Vec<Slot>)]) -> Fallible<RingMap> {
        let src = get(&self.rings, source)?;
        let tgt = get(&self.rings, target)?;
        let nt = tgt.components().len();
        // Owning source component of every named variable.
        let mut owner = HashMap::new();
        for (s, comp) in src.components().iter().enumerate() {
            for v in comp.ring().vars() {
                if owner.insert(v.clone(), s).is_some() {
                    return Err(format!("source variable `{v}` occurs in several components; rename it"));
                }
            }
        }
        let mut table: HashMap<&str, &[Slot]> = HashMap::new();
        for (v, slots) in images {
            if !owner.contains_key(v) {
                return Err(format!("`{v}` is not a variable of `{source}`"));
            }
            if slots.len() != nt {
                return Err(format!("`{v}` needs {nt} images, one per component of `{target}`, got {}", slots.len()));
            }
            if table.insert(v, slots).is_some() {
                return Err(format!("`{v}` is mapped twice"));
            }
        }
        if let Some(via) = via {
            if via.len() != nt {
                return Err(format!("`via` needs {nt} entries, got {}", via.len()));
            }
        }
        let mut routing = Vec::with_capacity(nt);
        for c in 0..nt {
            let used: Vec<usize> = {
                let mut u: Vec<usize> = images.iter().filter(|(_, s)| s[c].is_some()).map(|(v, _)| owner[v]).collect();
                u.sort_unstable();
                u.dedup();
                u
            };
            let s = match (via, used.as_slice()) {
                (Some(via), _) => via[c] - 1,
                (None, [s]) => *s,
                (None, []) if src.components().len() == 1 => 0,
                (None, []) => return Err(format!("cannot tell which source component feeds target component {}; add `via`", c + 1)),
                (None, _) => return Err(format!("target component {} receives variables from several source components", c + 1)),
            };
            let comp = src.components().get(s).ok_or_else(|| format!("`via` names source component {} of {}", s + 1, src.components().len()))?;
            if let Some((v, _)) = images.iter().find(|(v, sl)| sl[c].is_some() && owner[v] != s) {
                return Err(format!("`{v}` does not feed target component {}; write `_` there", c + 1));
            }
            let ring = tgt.component(c).ring();
            let imgs = comp
                .ring()
                .vars()
                .iter()
                .map(|v| match table.get(v.as_str()).and_then(|sl| sl[c].as_ref()) {
                    Some(e) => poly(e, ring),
                    None => Err(format!("no image for `{v}` in target component {}", c + 1)),
                })
                .collect::<Fallible<Vec<_>>>()?;
            routing.push(ComponentImage { source: s, images: imgs });
        }
        RingMap::new(src.clone(), tgt.clone(), routing).map_err(err)
    }

    fn module(&self, fd: &FdPresentation, def: &ModuleDef) -> Fallible<FDModule> {
        let a = &fd.algebra;
        match def {
            ModuleDef::Regular => Ok(FDModule::regular(a)),
            ModuleDef::Quotient(gens) => {
                let vs = gens.iter().map(|g| element(fd, g)).collect::<Fallible<Vec<_>>>()?;
                Ok(FDModule::cyclic_quotient(a, &vs))
            }
            ModuleDef::Actions { dim, entries } => {
                let comps = fd.presentation.components();
                let f = a.field();
                let mut idem: Vec<Option<Matrix>> = vec![None; comps.len()];
                let mut vars: Vec<Vec<Matrix>> = comps.iter().map(|c| vec![Matrix::zeros(f, *dim, *dim); c.nvars()]).collect();
                for (key, lit) in entries {
                    let m = matrix(lit, *dim, f)?;
                    match key {
                        ActionKey::Idempotent(c) => {
                            let slot = idem.get_mut(c - 1).ok_or_else(|| format!("no component {c}"))?;
                            *slot = Some(m);
                        }
                        ActionKey::Var(v, comp) => {
                            let hits: Vec<(usize, usize)> = comps
                                .iter()
                                .enumerate()
                                .filter(|(c, _)| comp.is_none_or(|k| k == c + 1))
                                .filter_map(|(c, r)| r.ring().var_index(v).map(|i| (c, i)))
                                .collect();
                            match hits.as_slice() {
                                [(c, i)] => vars[*c][*i] = m,
                                [] => return Err(format!("`{key}` is not a variable of the algebra")),
                                _ => return Err(format!("`{v}` occurs in several components; write `{v}@<component>`")),
                            }
                        }
                    }
                }
                let idem = if comps.len() == 1 {
                    let one = Matrix::identity(f, *dim);
                    if idem[0].as_ref().is_some_and(|m| *m != one) {
                        return Err("the only idempotent of a single component acts as the identity".into());
                    }
                    vec![one]
                } else {
                    idem.into_iter()
                        .enumerate()
                        .map(|(c, m)| m.ok_or_else(|| format!("missing action of the idempotent `@{}`", c + 1)))
                        .collect::<Fallible<Vec<_>>>()?
                };
                fd.module_from_generators(&idem, &vars).map_err(err)
            }
        }
    }
}

/// Runs statements in order. Declarations only produce an entry when they
/// fail; every command produces one.
pub struct Executor {
    options: Options,
    env: Env,
}

fn ext(v: ExtendedNat) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

impl Executor {
    pub fn new(options: Options) -> Executor {
        Executor { options, env: Env::default() }
    }

    fn cutoff(&self, c: &Option<usize>) -> usize {
        c.unwrap_or(self.options.cutoff)
    }

    fn fd_pair(&self, algebra: &str, sub: &str) -> Fallible<(&FdPresentation, &FDSubalgebra)> {
        Ok((get(&self.env.fds, algebra)?, get(&self.env.subs, sub)?))
    }

    /// Applies a declaration or hypothesis; `Err` becomes a report entry.
    fn declare(&mut self, stmt: &Stmt) -> Fallible<()> {
        let budget = self.options.budget.clone();
        let env = &mut self.env;
        match stmt {
            Stmt::Field(spec) => {
                env.field = Some(field_of(spec)?);
            }
            Stmt::Ring { name, field, vars, relations } => {
                let r = env.ring(field, vars, relations, &budget);
                let out = r.as_ref().map(|_| ()).map_err(Clone::clone);
                env.rings.insert(name.clone(), r);
                return out;
            }
            Stmt::Product { name, factors } => {
                let r = factors
                    .iter()
                    .map(|f| get(&env.rings, f))
                    .collect::<Fallible<Vec<_>>>()
                    .and_then(|fs| PresentedAlgebra::product(&fs).map_err(err));
                let out = r.as_ref().map(|_| ()).map_err(Clone::clone);
                env.rings.insert(name.clone(), r);
                return out;
            }
            Stmt::Map { name, source, target, via, images } => {
                let m = env.map(source, target, via, images);
                let out = m.as_ref().map(|_| ()).map_err(Clone::clone);
                env.maps.insert(name.clone(), m);
                return out;
            }
            Stmt::Fd { name, ring } => {
                let a = get(&env.rings, ring).and_then(|r| fd_from_presentation(r).map_err(err));
                let out = a.as_ref().map(|_| ()).map_err(Clone::clone);
                env.fds.insert(name.clone(), a);
                return out;
            }
            Stmt::Subalgebra { name, algebra, generators } => {
                let s = get(&env.fds, algebra).and_then(|fd| {
                    let gens = generators.iter().map(|g| element(fd, g)).collect::<Fallible<Vec<_>>>()?;
                    FDSubalgebra::generated_by(&fd.algebra, &gens).map_err(err)
                });
                let out = s.as_ref().map(|_| ()).map_err(Clone::clone);
                env.subs.insert(name.clone(), s);
                return out;
            }
            Stmt::Module { name, algebra, def } => {
                let m = get(&env.fds, algebra).and_then(|fd| env.module(fd, def));
                let out = m.as_ref().map(|_| ()).map_err(Clone::clone);
                env.modules.insert(name.clone(), m);
                return out;
            }
            Stmt::AssumeFlat { map } => match env.maps.get_mut(map) {
                Some(Ok(m)) => m.declare_flat(),
                _ => return Err(format!("`{map}` could not be built (see its declaration)")),
            },
            Stmt::Reldim { map, component, value } => match env.maps.get_mut(map) {
                Some(Ok(m)) => m.set_reldim(component - 1, *value).map_err(err)?,
                _ => return Err(format!("`{map}` could not be built (see its declaration)")),
            },
            Stmt::CheckSmooth { .. } | Stmt::Compute(_) => unreachable!("commands are not declarations"),
        }
        Ok(())
    }

    fn check_smooth(&self, map: &str) -> Fallible<Value> {
        let f = get(&self.env.maps, map)?;
        let rep = is_smooth(f, &self.options.budget).map_err(err)?;
        let mut v = to_value(&rep);
        let obj = v.as_object_mut().expect("report is an object");
        obj.insert("smooth".into(), json!(rep.is_smooth()));
        obj.insert("etale".into(), json!(rep.is_smooth() && rep.omega_zero == Some(true)));
        Ok(v)
    }

    fn command(&self, c: &Command) -> Fallible<Value> {
        let budget = &self.options.budget;
        match c {
            Command::RelGldim { map } => {
                let rep = rel_gldim(get(&self.env.maps, map)?, budget).map_err(err)?;
                Ok(json!({ "rel_gldim": ext(rep.value), "hypotheses": rep.hypotheses, "rank_bounds": rep.rank_bounds, "notes": rep.notes }))
            }
            Command::FiberGldim { map, point, component } => {
                let f = get(&self.env.maps, map)?;
                let field = f.source().field().clone();
                let coords = point.iter().map(|e| constant(e, &field)).collect::<Fallible<Vec<_>>>()?;
                let p = FiberPoint { component: component.unwrap_or(1) - 1, coords };
                let fiber = fiber_algebra(f, &p, budget).map_err(err)?;
                let rep = fiber_gldim(&fiber, budget).map_err(err)?;
                let comps: Vec<String> = fiber.components().iter().map(|c| c.to_string()).collect();
                Ok(json!({
                    "point": p.coords.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                    "source_component": p.component + 1,
                    "fiber": comps,
                    "fiber_gldim": ext(rep.value),
                    "notes": rep.notes,
                }))
            }
            Command::TensorCheck { left, right } => {
                let t = tensor_gldim_check(get(&self.env.maps, left)?, get(&self.env.maps, right)?, budget).map_err(err)?;
                Ok(to_value(&t))
            }
            Command::RelPd { algebra, sub, module, cutoff } => {
                let (_, b) = self.fd_pair(algebra, sub)?;
                let m = get(&self.env.modules, module)?;
                let cutoff = self.cutoff(cutoff);
                let res = standard_resolution(b, m, cutoff);
                let terms: Vec<usize> = res.terms.iter().map(|t| t.dim()).collect();
                Ok(json!({ "rel_pd": ext(res.pd()), "status": to_value(&res.status), "terms": terms, "cutoff": cutoff }))
            }
            Command::Cdim { algebra, sub, cutoff } => {
                let (_, b) = self.fd_pair(algebra, sub)?;
                let cutoff = self.cutoff(cutoff);
                Ok(json!({ "cdim": ext(cdim_fd(b, cutoff).map_err(err)?), "cutoff": cutoff }))
            }
            Command::RelHh { algebra, sub, degrees } => {
                let (_, b) = self.fd_pair(algebra, sub)?;
                let dims = rel_bar_homology(b, *degrees, DEFAULT_CHAIN_LIMIT).map_err(err)?;
                Ok(json!({ "dims": dims }))
            }
            Command::RelTor { algebra, sub, right, module, degrees, cutoff } => {
                let (_, b) = self.fd_pair(algebra, sub)?;
                let r = get(&self.env.modules, right)?;
                let m = get(&self.env.modules, module)?;
                Ok(to_value(&rel_tor(b, r, m, *degrees, self.cutoff(cutoff))))
            }
            Command::RelPdMax { algebra, sub, samples, max_dim, cutoff } => {
                let (fd, b) = self.fd_pair(algebra, sub)?;
                let cutoff = self.cutoff(cutoff);
                let mut rng = ChaCha8Rng::seed_from_u64(self.options.seed);
                let mut max = ExtendedNat::Finite(0);
                let mut projective = 0;
                for _ in 0..*samples {
                    let m = random_module(&fd.algebra, *max_dim, &mut rng);
                    let pd = standard_resolution(b, &m, cutoff).pd();
                    projective += usize::from(pd == ExtendedNat::Finite(0));
                    max = max.join(pd);
                }
                let cdim = cdim_fd(b, cutoff).map_err(err)?;
                Ok(json!({
                    "max_rel_pd": ext(max),
                    "cdim": ext(cdim),
                    "bounded": max.le_join(cdim),
                    "samples": samples,
                    "projective": projective,
                    "cutoff": cutoff,
                }))
            }
            Command::Gb { ring } => {
                let r = get(&self.env.rings, ring)?;
                let comps: Vec<Value> = r
                    .components()
                    .iter()
                    .map(|c| json!({ "ring": c.to_string(), "basis": c.basis().basis().iter().map(|p| p.to_string()).collect::<Vec<_>>() }))
                    .collect();
                Ok(json!({ "components": comps }))
            }
            Command::Nf { poly: e, ring } => {
                let r = get(&self.env.rings, ring)?;
                let nfs = r
                    .components()
                    .iter()
                    .map(|c| c.reduce(&poly(e, c.ring())?).map(|p| p.to_string()).map_err(err))
                    .collect::<Fallible<Vec<_>>>()?;
                Ok(json!({ "normal_forms": nfs }))
            }
            Command::Dim { ring } => {
                let r = get(&self.env.rings, ring)?;
                let per: Vec<usize> = r.components().iter().map(|c| c.dimension()).collect();
                Ok(json!({ "krull_dim": to_value(&r.dimension()), "components": per }))
            }
        }
    }

    /// Executes one statement, returning its report entry if it has one.
    pub fn step(&mut self, at: &Located) -> Option<Value> {
        let start = Instant::now();
        let outcome = match &at.stmt {
            Stmt::CheckSmooth { map } => Some(self.check_smooth(map)),
            Stmt::Compute(c) => Some(self.command(c)),
            other => self.declare(other).err().map(Err),
        }?;
        let mut entry = Map::new();
        entry.insert("line".into(), json!(at.line));
        entry.insert("statement".into(), json!(at.stmt.to_string()));
        match outcome {
            Ok(v) => {
                entry.insert("ok".into(), json!(true));
                entry.insert("result".into(), v);
            }
            Err(e) => {
                entry.insert("ok".into(), json!(false));
                entry.insert("error".into(), json!(e));
            }
        }
        if self.options.timing {
            entry.insert("elapsed_ms".into(), json!(start.elapsed().as_secs_f64() * 1e3));
        }
        Some(Value::Object(entry))
    }
}

/// Results of one run, in statement order.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub options: Options,
    pub results: Vec<Value>,
}

impl Report {
    pub fn has_errors(&self) -> bool {
        self.results.iter().any(|r| r["ok"] == json!(false))
    }

    pub fn to_json(&self) -> Value {
        let b = &self.options.budget;
        json!({
            "schema": 1,
            "budget": { "max_pairs": b.max_pairs, "max_degree": b.max_degree, "cutoff": self.options.cutoff, "seed": self.options.seed },
            "results": self.results,
        })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("serializable") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            out.push_str(&format!("line {}: {}\n", r["line"], r["statement"].as_str().unwrap_or("")));
            if let Some(e) = r.get("error") {
                out.push_str(&format!("  error: {}\n", e.as_str().unwrap_or("")));
            }
            if let Some(Value::Object(fields)) = r.get("result") {
                for (k, v) in fields {
                    out.push_str(&format!("  {k}: {}\n", render(v)));
                }
            }
            if let Some(t) = r.get("elapsed_ms") {
                out.push_str(&format!("  elapsed_ms: {t}\n"));
            }
        }
        out
    }
}

/// Compact rendering for text reports; tagged values print like `inf`.
fn render(v: &Value) -> String {
    match v {
        Value::Object(o) if o.contains_key("tag") => {
            let tag = o["tag"].as_str().unwrap_or("");
            match (tag, o.get("value")) {
                ("infinite", _) => "inf".into(),
                ("at_least", Some(n)) => format!(">={n}"),
                ("empty", _) => "empty".into(),
                ("finite", Some(n)) => render(n),
                (t, Some(n)) => format!("{t} {}", render(n)),
                _ => tag.into(),
            }
        }
        Value::Array(xs) => format!("[{}]", xs.iter().map(render).collect::<Vec<_>>().join(", ")),
        Value::Object(o) => {
            format!("{{{}}}", o.iter().map(|(k, x)| format!("{k}: {}", render(x))).collect::<Vec<_>>().join(", "))
        }
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

pub fn execute(script: &Script, options: &Options) -> Report {
    let mut ex = Executor::new(options.clone());
    let results = script.statements.iter().filter_map(|s| ex.step(s)).collect();
    Report { options: options.clone(), results }
}
