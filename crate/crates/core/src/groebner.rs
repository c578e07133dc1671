//! Buchberger's algorithm and the ideal operations built on it: normal
//! forms, elimination, saturation, intersection and Krull dimension.
//!
//! Every Gröbner computation runs under a [`Budget`]. Exceeding it returns
//! [`Error::BudgetExhausted`] with the partial basis instead of a guess.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, PartialBasis, Result};
use crate::poly::{Monomial, MonomialOrder, Poly, PolyRing};

/// Resource limits for Gröbner computations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of critical pairs reduced per basis computation.
    pub max_pairs: usize,
    /// Maximum total degree of a pair lcm or a new basis element.
    pub max_degree: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_pairs: 20_000, max_degree: 64 }
    }
}

/// Krull dimension of `k[x]/I`; `Empty` for the unit ideal (zero ring).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "tag", content = "value", rename_all = "snake_case")]
pub enum KrullDim {
    Empty,
    Finite(usize),
}

impl fmt::Display for KrullDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KrullDim::Empty => write!(f, "-inf"),
            KrullDim::Finite(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    ring: Arc<PolyRing>,
    generators: Vec<Poly>,
}

impl Ideal {
    /// Zero generators are dropped. All generators must live in `ring`.
    pub fn new(ring: &Arc<PolyRing>, generators: Vec<Poly>) -> Result<Ideal> {
        if generators.iter().any(|g| g.ring() != ring) {
            return Err(Error::RingMismatch);
        }
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { ring: ring.clone(), generators })
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Ideal {
        Ideal { ring: ring.clone(), generators: Vec::new() }
    }

    pub fn unit(ring: &Arc<PolyRing>) -> Ideal {
        Ideal { ring: ring.clone(), generators: vec![Poly::one(ring)] }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// Ideal sum.
    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn with_generators(&self, extra: impl IntoIterator<Item = Poly>) -> Result<Ideal> {
        let mut gens = self.generators.clone();
        gens.extend(extra);
        Ideal::new(&self.ring, gens)
    }

    /// Reduced Gröbner basis under the ring's own order.
    pub fn groebner(&self, budget: &Budget) -> Result<GroebnerBasis> {
        buchberger(self, self.ring.order(), budget)
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        if gens.is_empty() {
            write!(f, "(0)")
        } else {
            write!(f, "({})", gens.join(", "))
        }
    }
}

/// A Gröbner basis; immutable after construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Arc<PolyRing>,
    basis: Vec<Poly>,
    reduced: bool,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn basis(&self) -> &[Poly] {
        &self.basis
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn is_unit(&self) -> bool {
        self.basis.iter().any(|g| g.is_unit_constant())
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis.iter().filter_map(|g| g.leading_monomial().cloned()).collect()
    }

    pub fn ideal(&self) -> Ideal {
        Ideal { ring: self.ring.clone(), generators: self.basis.clone() }
    }

    /// Remainder of multivariate division by the basis: the canonical
    /// representative of `f` modulo the ideal. `f` may come from a ring
    /// with the same variables under a different order.
    pub fn normal_form(&self, f: &Poly) -> Result<Poly> {
        let f = self.adopt(f)?;
        Ok(reduce_full(&f, &self.basis))
    }

    pub fn contains(&self, f: &Poly) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    fn adopt(&self, f: &Poly) -> Result<Poly> {
        if f.ring() == &self.ring {
            return Ok(f.clone());
        }
        if f.ring().vars() != self.ring.vars() || f.ring().field() != self.ring.field() {
            return Err(Error::RingMismatch);
        }
        Ok(f.reorder(&self.ring))
    }

    /// Whether every S-polynomial of basis pairs reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        for i in 0..self.basis.len() {
            for j in i + 1..self.basis.len() {
                let s = s_polynomial(&self.basis[i], &self.basis[j]).expect("exponents in range");
                if !reduce_full(&s, &self.basis).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Monomials outside the leading-term ideal, in increasing order, or
    /// `None` when there are infinitely many.
    pub fn standard_monomials(&self) -> Option<Vec<Monomial>> {
        let n = self.ring.nvars();
        let lms = self.leading_monomials();
        if lms.iter().any(|m| m.is_one()) {
            return Some(Vec::new());
        }
        // Zero-dimensional iff every variable has a pure power among the leading monomials.
        let pure = (0..n).all(|v| lms.iter().any(|m| m.support().eq(std::iter::once(v))));
        if !pure {
            return None;
        }
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        let mut queue = vec![Monomial::one(n)];
        while let Some(m) = queue.pop() {
            if !seen.insert(m.clone()) || lms.iter().any(|l| l.divides(&m)) {
                continue;
            }
            for v in 0..n {
                queue.push(m.checked_mul(&Monomial::var(n, v)).ok()?);
            }
            out.push(m);
        }
        out.sort_by(|a, b| self.ring.order().cmp(a, b));
        Some(out)
    }
}

impl fmt::Display for GroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.basis.iter().map(|g| g.to_string()).collect();
        write!(f, "[{}]", gens.join(", "))
    }
}

fn reduce_full(f: &Poly, basis: &[Poly]) -> Poly {
    let ring = f.ring().clone();
    let mut p = f.clone();
    let mut rem: Vec<(Monomial, crate::field::FieldElem)> = Vec::new();
    while let Some((m, c)) = p.terms().first().cloned() {
        let divisor = basis.iter().find(|g| g.leading_monomial().is_some_and(|l| l.divides(&m)));
        match divisor {
            Some(g) => {
                let lm = g.leading_monomial().unwrap();
                let q = c.checked_div(g.leading_coeff().unwrap()).expect("nonzero leading coefficient");
                p = p.sub_scaled_shifted(&q, &m.div(lm), g).expect("degree within exponent range");
            }
            None => {
                rem.push((m.clone(), c));
                p.drop_leading_term();
            }
        }
    }
    Poly::from_sorted_terms(&ring, rem)
}

fn s_polynomial(f: &Poly, g: &Poly) -> Result<Poly> {
    let (lf, lg) = (f.leading_monomial().unwrap(), g.leading_monomial().unwrap());
    let l = lf.lcm(lg);
    let cf = f.leading_coeff().unwrap().inv()?;
    let cg = g.leading_coeff().unwrap().inv()?;
    f.mul_term(&l.div(lf), &cf)?.checked_sub(&g.mul_term(&l.div(lg), &cg)?)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Reduced Gröbner basis of `ideal` under `order`.
///
/// Pairs are selected by the normal strategy (smallest lcm first, ties by
/// index). The coprime-leading-monomial and chain criteria discard pairs.
pub fn buchberger(ideal: &Ideal, order: &MonomialOrder, budget: &Budget) -> Result<GroebnerBasis> {
    let ring = ideal.ring.with_order(order.clone());
    let mut basis: Vec<Poly> = Vec::new();
    for g in &ideal.generators {
        let g = g.reorder(&ring);
        if g.total_degree() > budget.max_degree {
            return Err(exhausted("input degree above budget", basis, 0, 0));
        }
        basis.push(g.monic());
    }
    if basis.iter().any(|g| g.is_unit_constant()) {
        return Ok(GroebnerBasis { ring: ring.clone(), basis: vec![Poly::one(&ring)], reduced: true });
    }
    let mut pairs: Vec<Pair> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push(make_pair(&basis, i, j));
        }
    }
    let mut processed = 0usize;
    while !pairs.is_empty() {
        let pos = select_pair(&pairs, order);
        let pair = pairs.remove(pos);
        let (fi, fj) = (&basis[pair.i], &basis[pair.j]);
        let (li, lj) = (fi.leading_monomial().unwrap(), fj.leading_monomial().unwrap());
        if li.is_coprime(lj) || chain_criterion(&pair, &basis, &pairs) {
            continue;
        }
        processed += 1;
        if processed > budget.max_pairs {
            return Err(exhausted("pair budget exceeded", basis, processed - 1, pairs.len() + 1));
        }
        if pair.lcm.degree() > budget.max_degree {
            return Err(exhausted("degree budget exceeded", basis, processed - 1, pairs.len() + 1));
        }
        let s = s_polynomial(fi, fj)?;
        let h = reduce_full(&s, &basis);
        if h.is_zero() {
            continue;
        }
        if h.is_unit_constant() {
            return Ok(GroebnerBasis { ring: ring.clone(), basis: vec![Poly::one(&ring)], reduced: true });
        }
        if h.total_degree() > budget.max_degree {
            return Err(exhausted("degree budget exceeded", basis, processed, pairs.len()));
        }
        basis.push(h.monic());
        let k = basis.len() - 1;
        for i in 0..k {
            pairs.push(make_pair(&basis, i, k));
        }
    }
    Ok(GroebnerBasis { ring: ring.clone(), basis: interreduce(basis, order), reduced: true })
}

fn exhausted(reason: &str, basis: Vec<Poly>, processed: usize, pending: usize) -> Error {
    Error::BudgetExhausted {
        reason: reason.to_string(),
        partial: Box::new(PartialBasis { basis, pairs_processed: processed, pairs_pending: pending }),
    }
}

fn make_pair(basis: &[Poly], i: usize, j: usize) -> Pair {
    let lcm = basis[i].leading_monomial().unwrap().lcm(basis[j].leading_monomial().unwrap());
    Pair { i, j, lcm }
}

fn select_pair(pairs: &[Pair], order: &MonomialOrder) -> usize {
    let mut best = 0;
    for (k, p) in pairs.iter().enumerate().skip(1) {
        let b = &pairs[best];
        let cmp = order.cmp(&p.lcm, &b.lcm).then_with(|| (p.i, p.j).cmp(&(b.i, b.j)));
        if cmp == std::cmp::Ordering::Less {
            best = k;
        }
    }
    best
}

fn chain_criterion(pair: &Pair, basis: &[Poly], pending: &[Pair]) -> bool {
    let is_pending = |a: usize, b: usize| {
        let (a, b) = (a.min(b), a.max(b));
        pending.iter().any(|p| p.i == a && p.j == b)
    };
    (0..basis.len()).any(|k| {
        k != pair.i
            && k != pair.j
            && basis[k].leading_monomial().unwrap().divides(&pair.lcm)
            && !is_pending(pair.i, k)
            && !is_pending(pair.j, k)
    })
}

/// Minimal, fully interreduced, monic, sorted by increasing leading monomial.
fn interreduce(basis: Vec<Poly>, order: &MonomialOrder) -> Vec<Poly> {
    let mut minimal: Vec<Poly> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let lg = g.leading_monomial().unwrap();
        let redundant = basis.iter().enumerate().any(|(l, h)| {
            let lh = h.leading_monomial().unwrap();
            l != k && lh.divides(lg) && (lh != lg || l < k)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Poly> =
            minimal.iter().enumerate().filter(|(l, _)| *l != k).map(|(_, h)| h.clone()).collect();
        reduced.push(reduce_full(&minimal[k], &others).monic());
    }
    reduced.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    reduced
}

/// `I ∩ k[remaining variables]`, returned in the ring of the remaining
/// variables (same names, grevlex order).
pub fn eliminate(ideal: &Ideal, drop_vars: &[usize], budget: &Budget) -> Result<Ideal> {
    let ring = &ideal.ring;
    let n = ring.nvars();
    if let Some(&bad) = drop_vars.iter().find(|&&v| v >= n) {
        return Err(Error::VariableOutOfRange(bad));
    }
    let keep: Vec<usize> = (0..n).filter(|v| !drop_vars.contains(v)).collect();
    let mut drop: Vec<usize> = drop_vars.to_vec();
    drop.sort_unstable();
    drop.dedup();
    // Position of each original variable in the elimination ring.
    let mut position = vec![0usize; n];
    let mut names = Vec::with_capacity(n);
    for (p, &v) in drop.iter().chain(keep.iter()).enumerate() {
        position[v] = p;
        names.push(ring.vars()[v].clone());
    }
    let elim_ring = PolyRing::new(
        ring.field().clone(),
        names,
        MonomialOrder::block(drop.len(), MonomialOrder::GrevLex),
    );
    let gens: Vec<Poly> = ideal.generators.iter().map(|g| g.map_variables(&elim_ring, &position)).collect();
    let gb = Ideal::new(&elim_ring, gens)?.groebner(budget)?;
    let sub_ring = PolyRing::new(
        ring.field().clone(),
        keep.iter().map(|&v| ring.vars()[v].clone()).collect(),
        MonomialOrder::GrevLex,
    );
    let back: Vec<usize> = (0..n).map(|p| p.saturating_sub(drop.len())).collect();
    let survivors = gb
        .basis()
        .iter()
        .filter(|g| g.support()[..drop.len()].iter().all(|&u| !u))
        .map(|g| g.map_variables(&sub_ring, &back))
        .collect();
    Ideal::new(&sub_ring, survivors)
}

/// `I : f^∞` via an auxiliary variable `z` and the relation `1 - z f`.
pub fn saturate(ideal: &Ideal, f: &Poly, budget: &Budget) -> Result<Ideal> {
    let ring = &ideal.ring;
    if f.ring() != ring {
        return Err(Error::RingMismatch);
    }
    if f.is_zero() {
        return Err(Error::InvalidAlgebra("cannot saturate by zero".into()));
    }
    let aux = extend_front(ring, "_sat");
    let shift: Vec<usize> = (1..=ring.nvars()).collect();
    let z = Poly::var(&aux, 0);
    let mut gens: Vec<Poly> = ideal.generators.iter().map(|g| g.map_variables(&aux, &shift)).collect();
    gens.push(&Poly::one(&aux) - &(&z * &f.map_variables(&aux, &shift)));
    let elim = eliminate(&Ideal::new(&aux, gens)?, &[0], budget)?;
    let ident: Vec<usize> = (0..ring.nvars()).collect();
    Ideal::new(ring, elim.generators.iter().map(|g| g.map_variables(ring, &ident)).collect())
}

/// `I ∩ J` via `t I + (1 - t) J` and elimination of `t`.
pub fn intersect(a: &Ideal, b: &Ideal, budget: &Budget) -> Result<Ideal> {
    let ring = &a.ring;
    if b.ring() != ring {
        return Err(Error::RingMismatch);
    }
    let aux = extend_front(ring, "_int");
    let shift: Vec<usize> = (1..=ring.nvars()).collect();
    let t = Poly::var(&aux, 0);
    let one_minus_t = &Poly::one(&aux) - &t;
    let mut gens = Vec::new();
    for g in &a.generators {
        gens.push(&t * &g.map_variables(&aux, &shift));
    }
    for g in &b.generators {
        gens.push(&one_minus_t * &g.map_variables(&aux, &shift));
    }
    let elim = eliminate(&Ideal::new(&aux, gens)?, &[0], budget)?;
    let ident: Vec<usize> = (0..ring.nvars()).collect();
    Ideal::new(ring, elim.generators.iter().map(|g| g.map_variables(ring, &ident)).collect())
}

fn extend_front(ring: &Arc<PolyRing>, name: &str) -> Arc<PolyRing> {
    let mut vars = vec![name.to_string()];
    vars.extend(ring.vars().iter().cloned());
    PolyRing::new(ring.field().clone(), vars, MonomialOrder::GrevLex)
}

/// Whether `1 ∈ I`.
pub fn is_unit_ideal(ideal: &Ideal, budget: &Budget) -> Result<bool> {
    Ok(ideal.groebner(budget)?.is_unit())
}

/// Krull dimension of `k[x]/I`: the largest set of variables such that no
/// leading monomial of a grevlex Gröbner basis is supported inside it.
pub fn krull_dim(ideal: &Ideal, budget: &Budget) -> Result<KrullDim> {
    let gb = buchberger(ideal, &MonomialOrder::GrevLex, budget)?;
    Ok(krull_dim_of_basis(&gb))
}

/// Dimension read off the leading monomials of an existing basis.
pub fn krull_dim_of_basis(gb: &GroebnerBasis) -> KrullDim {
    if gb.is_unit() {
        return KrullDim::Empty;
    }
    let n = gb.ring().nvars();
    let supports: Vec<Vec<usize>> = gb.leading_monomials().iter().map(|m| m.support().collect()).collect();
    let mut best = 0;
    let mut chosen = vec![false; n];
    max_independent(0, 0, &supports, &mut chosen, &mut best);
    KrullDim::Finite(best)
}

fn max_independent(v: usize, size: usize, supports: &[Vec<usize>], chosen: &mut [bool], best: &mut usize) {
    let n = chosen.len();
    if size + (n - v) <= *best {
        return;
    }
    if v == n {
        *best = size;
        return;
    }
    chosen[v] = true;
    let independent = supports.iter().all(|s| s.iter().any(|&u| !chosen[u]));
    if independent {
        max_independent(v + 1, size + 1, supports, chosen, best);
    }
    chosen[v] = false;
    max_independent(v + 1, size, supports, chosen, best);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use proptest::prelude::*;

    fn ring(vars: &[&str], order: MonomialOrder) -> Arc<PolyRing> {
        PolyRing::new(Field::Rational, vars.iter().map(|s| s.to_string()).collect(), order)
    }

    fn vars(r: &Arc<PolyRing>) -> Vec<Poly> {
        (0..r.nvars()).map(|i| Poly::var(r, i)).collect()
    }

    fn c(r: &Arc<PolyRing>, n: i64) -> Poly {
        Poly::constant(r, r.field().from_i64(n))
    }

    fn budget() -> Budget {
        Budget::default()
    }

    #[test]
    fn lex_basis_contains_y_squared_minus_one() {
        let r = ring(&["x", "y"], MonomialOrder::Lex);
        let v = vars(&r);
        let (x, y) = (&v[0], &v[1]);
        let i = Ideal::new(&r, vec![&(x * x) - &c(&r, 1), &(x * y) - &c(&r, 1)]).unwrap();
        let gb = i.groebner(&budget()).unwrap();
        // By hand: S(x^2-1, xy-1) = y(x^2-1) - x(xy-1) = x - y, so x - y joins
        // the basis and then x^2 - 1 reduces to y^2 - 1.
        let target = &(y * y) - &c(&r, 1);
        assert!(gb.basis().contains(&target));
        assert!(gb.basis().contains(&(x - y)));
        assert_eq!(gb.basis().len(), 2);
        assert!(gb.satisfies_buchberger_criterion());
    }

    #[test]
    fn principal_ideal_is_its_own_basis() {
        let r = ring(&["x"], MonomialOrder::GrevLex);
        let x = Poly::var(&r, 0);
        let gb = Ideal::new(&r, vec![x.clone()]).unwrap().groebner(&budget()).unwrap();
        assert_eq!(gb.basis(), &[x]);
    }

    #[test]
    fn unit_ideal_detected() {
        let r = ring(&["x"], MonomialOrder::GrevLex);
        let x = Poly::var(&r, 0);
        let i = Ideal::new(&r, vec![x.clone(), &x + &c(&r, 1)]).unwrap();
        let gb = i.groebner(&budget()).unwrap();
        assert_eq!(gb.basis(), &[Poly::one(&r)]);
        assert!(is_unit_ideal(&i, &budget()).unwrap());
        assert!(!is_unit_ideal(&Ideal::zero(&r), &budget()).unwrap());
    }

    #[test]
    fn jacobian_locus_of_square_root_is_proper() {
        let r = ring(&["s", "x"], MonomialOrder::GrevLex);
        let v = vars(&r);
        let (s, x) = (&v[0], &v[1]);
        let i = Ideal::new(&r, vec![&(x * x) - s, x.scale(&r.field().from_i64(2))]).unwrap();
        assert!(!is_unit_ideal(&i, &budget()).unwrap());
    }

    #[test]
    fn normal_form_single_division() {
        let r = ring(&["x", "s"], MonomialOrder::Lex);
        let v = vars(&r);
        let (x, s) = (&v[0], &v[1]);
        let gb = Ideal::new(&r, vec![&(x * x) - s]).unwrap().groebner(&budget()).unwrap();
        assert_eq!(gb.normal_form(&(x * x)).unwrap(), s.clone());
        let f = &(&(x * x) * x) + s;
        let nf = gb.normal_form(&f).unwrap();
        assert_eq!(gb.normal_form(&nf).unwrap(), nf);
        assert!(gb.normal_form(&(&(x * x) - s)).unwrap().is_zero());
    }

    #[test]
    fn eliminate_examples() {
        let r = ring(&["x", "y"], MonomialOrder::GrevLex);
        let v = vars(&r);
        let (x, y) = (&v[0], &v[1]);
        let graph = Ideal::new(&r, vec![y - &(x * x)]).unwrap();
        assert!(eliminate(&graph, &[0], &budget()).unwrap().is_zero());

        let split = Ideal::new(&r, vec![x.clone(), y - &c(&r, 1)]).unwrap();
        let e = eliminate(&split, &[0], &budget()).unwrap();
        assert_eq!(e.generators().len(), 1);
        assert_eq!(e.generators()[0].to_string(), "y - 1");
        assert_eq!(e.ring().vars(), &["y".to_string()]);

        // x = y forces y^2 = 1
        let sub = Ideal::new(&r, vec![&(x * y) - &c(&r, 1), x - y]).unwrap();
        let e = eliminate(&sub, &[0], &budget()).unwrap();
        assert_eq!(e.generators().len(), 1);
        assert_eq!(e.generators()[0].to_string(), "y^2 - 1");
    }

    #[test]
    fn saturation_examples() {
        let r = ring(&["x", "y"], MonomialOrder::GrevLex);
        let v = vars(&r);
        let (x, y) = (&v[0], &v[1]);
        let sat = saturate(&Ideal::new(&r, vec![x * y]).unwrap(), x, &budget()).unwrap();
        assert_eq!(sat.groebner(&budget()).unwrap().basis(), std::slice::from_ref(y));

        let sat = saturate(&Ideal::new(&r, vec![x.clone()]).unwrap(), y, &budget()).unwrap();
        assert_eq!(sat.groebner(&budget()).unwrap().basis(), std::slice::from_ref(x));

        let sat = saturate(&Ideal::new(&r, vec![x * x]).unwrap(), x, &budget()).unwrap();
        assert!(sat.groebner(&budget()).unwrap().is_unit());
    }

    #[test]
    fn intersection_of_coordinate_axes() {
        let r = ring(&["x", "y"], MonomialOrder::GrevLex);
        let v = vars(&r);
        let (x, y) = (&v[0], &v[1]);
        let i = intersect(
            &Ideal::new(&r, vec![x.clone()]).unwrap(),
            &Ideal::new(&r, vec![y.clone()]).unwrap(),
            &budget(),
        )
        .unwrap();
        assert_eq!(i.groebner(&budget()).unwrap().basis(), &[x * y]);
    }

    #[test]
    fn krull_dimension_table() {
        let r = ring(&["x", "y", "z"], MonomialOrder::GrevLex);
        let v = vars(&r);
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        let one = c(&r, 1);
        let table: Vec<(Vec<Poly>, KrullDim)> = vec![
            (vec![], KrullDim::Finite(3)),
            (vec![&(x * y) - &one], KrullDim::Finite(2)),
            (vec![x.clone(), y.clone()], KrullDim::Finite(1)),
            (vec![x.clone(), y.clone(), z.clone()], KrullDim::Finite(0)),
            (vec![x * y], KrullDim::Finite(2)),
            (vec![x * y, x * z], KrullDim::Finite(2)),
            (vec![x * y, y * z, x * z], KrullDim::Finite(1)),
            (vec![x.clone(), x - &one], KrullDim::Empty),
            (vec![&(x * x) - &one, &(y * y) - &one, z * z], KrullDim::Finite(0)),
            (vec![&(y * y) - &(&(x * x) * x)], KrullDim::Finite(2)),
        ];
        for (gens, expected) in table {
            let i = Ideal::new(&r, gens).unwrap();
            assert_eq!(krull_dim(&i, &budget()).unwrap(), expected, "ideal {i}");
        }
        let r2 = ring(&["x", "y"], MonomialOrder::GrevLex);
        let v = vars(&r2);
        assert_eq!(krull_dim(&Ideal::zero(&r2), &budget()).unwrap(), KrullDim::Finite(2));
        let hyper = Ideal::new(&r2, vec![&(&v[0] * &v[1]) - &c(&r2, 1)]).unwrap();
        assert_eq!(krull_dim(&hyper, &budget()).unwrap(), KrullDim::Finite(1));
        let point = Ideal::new(&r2, v.clone()).unwrap();
        assert_eq!(krull_dim(&point, &budget()).unwrap(), KrullDim::Finite(0));
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let r = ring(&["x", "y", "z"], MonomialOrder::Lex);
        let v = vars(&r);
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        let i = Ideal::new(
            &r,
            vec![&(&(x * x) * y) - &(z * z), &(x * z) - &(y * y), &(&(y * y) * z) - &(x * x)],
        )
        .unwrap();
        let tight = Budget { max_pairs: 1, max_degree: 64 };
        match i.groebner(&tight) {
            Err(Error::BudgetExhausted { partial, .. }) => assert!(!partial.basis.is_empty()),
            other => panic!("expected budget error, got {other:?}"),
        }
        let shallow = Budget { max_pairs: 1000, max_degree: 2 };
        assert!(matches!(i.groebner(&shallow), Err(Error::BudgetExhausted { .. })));
    }

    #[test]
    fn standard_monomials_of_zero_dimensional_ideal() {
        let r = ring(&["x", "y"], MonomialOrder::GrevLex);
        let v = vars(&r);
        let (x, y) = (&v[0], &v[1]);
        let gb = Ideal::new(&r, vec![x * x, y * y]).unwrap().groebner(&budget()).unwrap();
        let std = gb.standard_monomials().unwrap();
        assert_eq!(std.len(), 4);
        assert!(std[0].is_one());
        let gb = Ideal::new(&r, vec![x * x]).unwrap().groebner(&budget()).unwrap();
        assert!(gb.standard_monomials().is_none());
    }

    /// Brute-force substitution oracle for elimination: every polynomial in
    /// the eliminated ideal vanishes on sampled points of the variety, and
    /// the projection of every point satisfies the eliminated generators.
    #[test]
    fn elimination_matches_substitution_oracle() {
        let r = ring(&["x", "y", "z"], MonomialOrder::GrevLex);
        let v = vars(&r);
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        // parametrised varieties: (t, t^2, t^3) and (t, t^3 - t, 2t)
        let cases: Vec<(Vec<Poly>, Box<dyn Fn(i64) -> [i64; 3]>)> = vec![
            (vec![y - &(x * x), z - &(&(x * x) * x)], Box::new(|t| [t, t * t, t * t * t])),
            (
                vec![y - &(&(&(x * x) * x) - x), z - &x.scale(&r.field().from_i64(2))],
                Box::new(|t| [t, t * t * t - t, 2 * t]),
            ),
        ];
        for (gens, param) in cases {
            let i = Ideal::new(&r, gens).unwrap();
            let e = eliminate(&i, &[0], &budget()).unwrap();
            assert!(!e.is_zero());
            for t in -3..=3 {
                let p = param(t);
                for g in e.generators() {
                    let f = g.ring().field().clone();
                    let pt = [f.from_i64(p[1]), f.from_i64(p[2])];
                    assert!(eval(g, &pt).is_zero(), "{g} at {p:?}");
                }
            }
        }
    }

    fn eval(p: &Poly, point: &[crate::field::FieldElem]) -> crate::field::FieldElem {
        let f = p.ring().field().clone();
        let mut acc = f.zero();
        for (m, c) in p.terms() {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                t = &t * &point[i].pow(e);
            }
            acc = &acc + &t;
        }
        acc
    }

    fn small(r: Arc<PolyRing>) -> impl Strategy<Value = Poly> {
        proptest::collection::vec((proptest::collection::vec(0u32..3, 2), -3i64..4), 0..4).prop_map(move |ts| {
            let f = r.field().clone();
            Poly::from_terms(&r, ts.into_iter().map(|(e, c)| (Monomial::new(e), f.from_i64(c))))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn returned_bases_satisfy_buchberger(
            gens in proptest::collection::vec(small(ring(&["x", "y"], MonomialOrder::GrevLex)), 1..4),
        ) {
            let r = gens[0].ring().clone();
            let gb = Ideal::new(&r, gens.clone()).unwrap().groebner(&budget()).unwrap();
            prop_assert!(gb.satisfies_buchberger_criterion());
            for g in &gens {
                prop_assert!(gb.normal_form(g).unwrap().is_zero());
            }
            // reducedness: no term divisible by another leading monomial
            let lms = gb.leading_monomials();
            for (k, g) in gb.basis().iter().enumerate() {
                prop_assert!(g.leading_coeff().unwrap().is_one());
                for (m, _) in g.terms() {
                    for (l, lm) in lms.iter().enumerate() {
                        prop_assert!(l == k || !lm.divides(m));
                    }
                }
            }
        }

        #[test]
        fn normal_form_is_a_class_function(
            gens in proptest::collection::vec(small(ring(&["x", "y"], MonomialOrder::Lex)), 1..3),
            f in small(ring(&["x", "y"], MonomialOrder::Lex)),
            mults in proptest::collection::vec(small(ring(&["x", "y"], MonomialOrder::Lex)), 3),
        ) {
            let r = f.ring().clone();
            let gb = Ideal::new(&r, gens.clone()).unwrap().groebner(&budget()).unwrap();
            let mut g = f.clone();
            for (gen, m) in gens.iter().zip(&mults) {
                g = &g + &(gen * m);
            }
            prop_assert_eq!(gb.normal_form(&f).unwrap(), gb.normal_form(&g).unwrap());
        }

        #[test]
        fn dimension_of_ideal_equals_dimension_of_leading_ideal(
            gens in proptest::collection::vec(small(ring(&["x", "y"], MonomialOrder::GrevLex)), 1..3),
        ) {
            let r = gens[0].ring().clone();
            let i = Ideal::new(&r, gens).unwrap();
            let gb = i.groebner(&budget()).unwrap();
            let lead = Ideal::new(
                &r,
                gb.basis().iter().map(|g| Poly::monomial(&r, g.leading_monomial().unwrap().clone(), r.field().one())).collect(),
            ).unwrap();
            prop_assert_eq!(krull_dim(&i, &budget()).unwrap(), krull_dim(&lead, &budget()).unwrap());
        }
    }
}
