//! Sparse multivariate polynomials over an exact field.
//!
//! A [`Poly`] keeps its terms sorted in decreasing order with respect to the
//! monomial order of its [`PolyRing`], with no zero coefficients stored. The
//! leading term is therefore always `terms[0]`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};

/// Exponent vector, one entry per ring variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::ExponentOverflow))
            .collect::<Result<Vec<_>>>()
            .map(Monomial)
    }

    /// `self / other`; caller guarantees `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }
}

/// A monomial order on a fixed variable list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    /// The first `elim` variables are compared by grevlex; ties are broken by
    /// `inner` on the remaining variables. Any monomial involving the first
    /// block is larger than every monomial free of it.
    Block { elim: usize, inner: Box<MonomialOrder> },
}

impl MonomialOrder {
    pub fn block(elim: usize, inner: MonomialOrder) -> Self {
        MonomialOrder::Block { elim, inner: Box::new(inner) }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.cmp_slices(&a.0, &b.0)
    }

    fn cmp_slices(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GrevLex => {
                let da: u64 = a.iter().map(|&e| e as u64).sum();
                let db: u64 = b.iter().map(|&e| e as u64).sum();
                da.cmp(&db).then_with(|| {
                    for (x, y) in a.iter().zip(b).rev() {
                        if x != y {
                            return y.cmp(x);
                        }
                    }
                    Ordering::Equal
                })
            }
            MonomialOrder::Block { elim, inner } => {
                let k = (*elim).min(a.len());
                MonomialOrder::GrevLex
                    .cmp_slices(&a[..k], &b[..k])
                    .then_with(|| inner.cmp_slices(&a[k..], &b[k..]))
            }
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::GrevLex => write!(f, "grevlex"),
            MonomialOrder::Block { elim, inner } => write!(f, "block({elim}, {inner})"),
        }
    }
}

/// Polynomial ring `k[x_1, .., x_n]` with a fixed monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    field: Field,
    vars: Vec<String>,
    order: MonomialOrder,
}

impl PolyRing {
    pub fn new(field: Field, vars: Vec<String>, order: MonomialOrder) -> Arc<PolyRing> {
        Arc::new(PolyRing { field, vars, order })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Same variables and field under a different order.
    pub fn with_order(&self, order: MonomialOrder) -> Arc<PolyRing> {
        PolyRing::new(self.field.clone(), self.vars.clone(), order)
    }
}

fn same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

#[derive(Clone, Debug)]
pub struct Poly {
    ring: Arc<PolyRing>,
    terms: Vec<(Monomial, FieldElem)>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl Poly {
    pub fn zero(ring: &Arc<PolyRing>) -> Poly {
        Poly { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: FieldElem) -> Poly {
        Poly::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Arc<PolyRing>) -> Poly {
        Poly::constant(ring, ring.field().one())
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Poly {
        Poly::monomial(ring, Monomial::var(ring.nvars(), i), ring.field().one())
    }

    pub fn monomial(ring: &Arc<PolyRing>, m: Monomial, c: FieldElem) -> Poly {
        debug_assert_eq!(m.nvars(), ring.nvars());
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Poly { ring: ring.clone(), terms }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms(
        ring: &Arc<PolyRing>,
        terms: impl IntoIterator<Item = (Monomial, FieldElem)>,
    ) -> Poly {
        let mut acc: HashMap<Monomial, FieldElem> = HashMap::new();
        for (m, c) in terms {
            match acc.get_mut(&m) {
                Some(e) => *e = &*e + &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| ring.order().cmp(&b.0, &a.0));
        Poly { ring: ring.clone(), terms }
    }

    /// Caller guarantees `terms` are nonzero and strictly decreasing.
    pub(crate) fn from_sorted_terms(ring: &Arc<PolyRing>, terms: Vec<(Monomial, FieldElem)>) -> Poly {
        Poly { ring: ring.clone(), terms }
    }

    pub(crate) fn drop_leading_term(&mut self) {
        if !self.terms.is_empty() {
            self.terms.remove(0);
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, FieldElem)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero constant.
    pub fn is_unit_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&FieldElem> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    /// Variables that occur in some term.
    pub fn support(&self) -> Vec<bool> {
        let mut used = vec![false; self.ring.nvars()];
        for (m, _) in &self.terms {
            for i in m.support() {
                used[i] = true;
            }
        }
        used
    }

    pub fn coefficient(&self, m: &Monomial) -> FieldElem {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.ring.field().zero())
    }

    fn check_ring(&self, other: &Poly) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        Ok(self.merge(other, None))
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        Ok(self.merge(other, Some(&-&self.ring.field().one())))
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        let mut acc: HashMap<Monomial, FieldElem> = HashMap::new();
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                let mn = m.checked_mul(n)?;
                let cd = c * d;
                match acc.get_mut(&mn) {
                    Some(e) => *e = &*e + &cd,
                    None => {
                        acc.insert(mn, cd);
                    }
                }
            }
        }
        Ok(Poly::from_terms(&self.ring, acc))
    }

    /// `self + scale * other`, with `scale = 1` when absent.
    fn merge(&self, other: &Poly, scale: Option<&FieldElem>) -> Poly {
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let scaled = |c: &FieldElem| match scale {
            Some(s) => c * s,
            None => c.clone(),
        };
        while i < self.terms.len() && j < other.terms.len() {
            let (m, c) = &self.terms[i];
            let (n, d) = &other.terms[j];
            match order.cmp(m, n) {
                Ordering::Greater => {
                    out.push((m.clone(), c.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((n.clone(), scaled(d)));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = c + &scaled(d);
                    if !s.is_zero() {
                        out.push((m.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|(n, d)| (n.clone(), scaled(d))));
        Poly { ring: self.ring.clone(), terms: out }
    }

    /// `self - c * m * g`, the basic reduction step.
    pub(crate) fn sub_scaled_shifted(&self, c: &FieldElem, m: &Monomial, g: &Poly) -> Result<Poly> {
        let shifted = g.mul_term(m, &-c)?;
        Ok(self.merge(&shifted, None))
    }

    /// Multiplication by the term `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &FieldElem) -> Result<Poly> {
        if c.is_zero() {
            return Ok(Poly::zero(&self.ring));
        }
        let terms = self
            .terms
            .iter()
            .map(|(n, d)| Ok((n.checked_mul(m)?, d * c)))
            .collect::<Result<Vec<_>>>()?;
        // Multiplication by a monomial preserves the order.
        Ok(Poly { ring: self.ring.clone(), terms })
    }

    pub fn scale(&self, c: &FieldElem) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect();
        Poly { ring: self.ring.clone(), terms }
    }

    /// Scales so that the leading coefficient is one. Zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading_coeff() {
            Some(c) if !c.is_one() => self.scale(&c.inv().expect("nonzero leading coefficient")),
            _ => self.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> Result<Poly> {
        let mut acc = Poly::one(&self.ring);
        for _ in 0..e {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    pub fn partial_derivative(&self, var: usize) -> Result<Poly> {
        if var >= self.ring.nvars() {
            return Err(Error::VariableOutOfRange(var));
        }
        let field = self.ring.field();
        let terms = self.terms.iter().filter(|(m, _)| m.0[var] > 0).map(|(m, c)| {
            let e = m.0[var];
            let mut n = m.clone();
            n.0[var] -= 1;
            (n, c * &field.from_i64(e as i64))
        });
        Ok(Poly::from_terms(&self.ring, terms))
    }

    /// Ring homomorphism sending variable `i` to `images[i]`, all in `target`.
    pub fn substitute(&self, images: &[Poly], target: &Arc<PolyRing>) -> Result<Poly> {
        if images.len() != self.ring.nvars() {
            return Err(Error::RingMismatch);
        }
        if images.iter().any(|p| !same_ring(&p.ring, target)) {
            return Err(Error::RingMismatch);
        }
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(target), p.clone()]).collect();
        let mut acc = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().checked_mul(&images[i])?;
                    powers[i].push(next);
                }
                t = t.checked_mul(&powers[i][e as usize])?;
            }
            acc = acc.checked_add(&t)?;
        }
        Ok(acc)
    }

    /// Value at a point given by one field element per variable.
    pub fn evaluate(&self, point: &[FieldElem]) -> Result<FieldElem> {
        if point.len() != self.ring.nvars() {
            return Err(Error::RingMismatch);
        }
        let mut acc = self.ring.field().zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t = t.checked_mul(&x.pow(e))?;
                }
            }
            acc = acc.checked_add(&t)?;
        }
        Ok(acc)
    }

    /// Relabels variable `i` as variable `var_map[i]` of `target` (same field).
    pub fn map_variables(&self, target: &Arc<PolyRing>, var_map: &[usize]) -> Poly {
        let n = target.nvars();
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0u32; n];
            for (i, &x) in m.0.iter().enumerate() {
                e[var_map[i]] += x;
            }
            (Monomial(e), c.clone())
        });
        Poly::from_terms(target, terms)
    }

    /// Same polynomial viewed in a ring with identical variables but another order.
    pub fn reorder(&self, target: &Arc<PolyRing>) -> Poly {
        debug_assert_eq!(target.nvars(), self.ring.nvars());
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| target.order().cmp(&b.0, &a.0));
        Poly { ring: target.clone(), terms }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("ring mismatch")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("ring mismatch")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("ring mismatch")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-&self.ring.field().one())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = if c.is_negative() { (true, -c) } else { (false, c.clone()) };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    let v = &self.ring.vars[i];
                    if e == 1 { v.clone() } else { format!("{v}^{e}") }
                })
                .collect();
            let coeff = if mag.is_simple() { mag.to_string() } else { format!("({mag})") };
            match (mono.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{coeff}")?,
                (false, true) => write!(f, "{}", mono.join("*"))?,
                (false, false) => write!(f, "{coeff}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring(field: Field, vars: &[&str], order: MonomialOrder) -> Arc<PolyRing> {
        PolyRing::new(field, vars.iter().map(|s| s.to_string()).collect(), order)
    }

    fn xy() -> (Arc<PolyRing>, Poly, Poly) {
        let r = ring(Field::Rational, &["x", "y"], MonomialOrder::GrevLex);
        let x = Poly::var(&r, 0);
        let y = Poly::var(&r, 1);
        (r, x, y)
    }

    #[test]
    fn difference_of_squares() {
        let (_, x, y) = xy();
        let p = &(&x + &y) * &(&x - &y);
        assert_eq!(p, &(&x * &x) - &(&y * &y));
        assert_eq!(p.to_string(), "x^2 - y^2");
    }

    #[test]
    fn additive_identity() {
        let (r, x, y) = xy();
        let f = &(&x * &y) + &Poly::constant(&r, r.field().from_i64(3));
        assert_eq!(&f + &Poly::zero(&r), f);
    }

    #[test]
    fn frobenius_in_characteristic_two() {
        let r = ring(Field::prime(2).unwrap(), &["x", "y"], MonomialOrder::GrevLex);
        let (x, y) = (Poly::var(&r, 0), Poly::var(&r, 1));
        let s = &x + &y;
        assert_eq!(&s * &s, &(&x * &x) + &(&y * &y));
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let (_, x, _) = xy();
        let other = ring(Field::Rational, &["x", "z"], MonomialOrder::GrevLex);
        let z = Poly::var(&other, 1);
        assert!(matches!(x.checked_add(&z), Err(Error::RingMismatch)));
        assert!(matches!(x.checked_mul(&z), Err(Error::RingMismatch)));
    }

    #[test]
    fn power_rule() {
        let r = ring(Field::Rational, &["s", "x"], MonomialOrder::GrevLex);
        let (s, x) = (Poly::var(&r, 0), Poly::var(&r, 1));
        let f = &(&x * &x) - &s;
        assert_eq!(f.partial_derivative(1).unwrap(), x.scale(&r.field().from_i64(2)));
        assert_eq!(f.partial_derivative(0).unwrap(), -&Poly::one(&r));
        assert!(matches!(f.partial_derivative(2), Err(Error::VariableOutOfRange(2))));
    }

    #[test]
    fn derivative_in_characteristic_two() {
        let r = ring(Field::prime(2).unwrap(), &["x"], MonomialOrder::GrevLex);
        let x = Poly::var(&r, 0);
        assert!((&x * &x).partial_derivative(0).unwrap().is_zero());
    }

    #[test]
    fn exponent_overflow_detected() {
        let (r, x, _) = xy();
        let big = Poly::monomial(&r, Monomial::new(vec![u32::MAX, 0]), r.field().one());
        assert!(matches!(big.checked_mul(&x), Err(Error::ExponentOverflow)));
    }

    #[test]
    fn lex_and_grevlex_leading_terms() {
        let lex = ring(Field::Rational, &["x", "y", "z"], MonomialOrder::Lex);
        let grl = ring(Field::Rational, &["x", "y", "z"], MonomialOrder::GrevLex);
        let mk = |r: &Arc<PolyRing>| {
            let (x, y, z) = (Poly::var(r, 0), Poly::var(r, 1), Poly::var(r, 2));
            &(&x + &(&y * &y)) + &(&(&z * &z) * &z)
        };
        assert_eq!(mk(&lex).leading_monomial().unwrap().exponents(), &[1, 0, 0]);
        assert_eq!(mk(&grl).leading_monomial().unwrap().exponents(), &[0, 0, 3]);
        // grevlex tie-break: x*z^2 < y^3 < ... (smaller last exponent wins)
        let a = Monomial::new(vec![1, 0, 2]);
        let b = Monomial::new(vec![0, 3, 0]);
        assert_eq!(MonomialOrder::GrevLex.cmp(&a, &b), Ordering::Less);
    }

    #[test]
    fn block_order_eliminates_prefix() {
        let order = MonomialOrder::block(1, MonomialOrder::GrevLex);
        let with_x = Monomial::new(vec![1, 0, 0]);
        let without = Monomial::new(vec![0, 5, 7]);
        assert_eq!(order.cmp(&with_x, &without), Ordering::Greater);
    }

    #[test]
    fn substitution_and_relabelling() {
        let (r, x, y) = xy();
        let s_ring = ring(Field::Rational, &["s"], MonomialOrder::GrevLex);
        let f = Poly::var(&s_ring, 0);
        // s -> x^2 + y
        let img = f.substitute(&[&(&x * &x) + &y], &r).unwrap();
        assert_eq!(img.to_string(), "x^2 + y");
        let moved = x.map_variables(&r, &[1, 0]);
        assert_eq!(moved, y);
    }

    #[test]
    fn display_rational_coefficients() {
        let r = ring(Field::Rational, &["x", "y", "t"], MonomialOrder::GrevLex);
        let (x, y, t) = (Poly::var(&r, 0), Poly::var(&r, 1), Poly::var(&r, 2));
        let q = r.field().from_rational(&num_rational::BigRational::new(3.into(), 4.into())).unwrap();
        let p = &(&(&(&x * &x) * &y) - &t.scale(&q)) + &Poly::one(&r);
        assert_eq!(p.to_string(), "x^2*y - 3/4*t + 1");
    }

    fn exps(n: usize) -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..4, n).prop_map(Monomial::new)
    }

    fn small_poly(r: Arc<PolyRing>) -> impl Strategy<Value = Poly> {
        proptest::collection::vec((exps(3), -5i64..5), 0..5).prop_map(move |ts| {
            let f = r.field().clone();
            Poly::from_terms(&r, ts.into_iter().map(|(m, c)| (m, f.from_i64(c))))
        })
    }

    fn orders() -> Vec<MonomialOrder> {
        vec![
            MonomialOrder::Lex,
            MonomialOrder::GrevLex,
            MonomialOrder::block(1, MonomialOrder::GrevLex),
            MonomialOrder::block(2, MonomialOrder::Lex),
        ]
    }

    proptest! {
        #[test]
        fn leibniz_rule(
            f in small_poly(ring(Field::Rational, &["x", "y", "z"], MonomialOrder::GrevLex)),
            g in small_poly(ring(Field::Rational, &["x", "y", "z"], MonomialOrder::GrevLex)),
            v in 0usize..3,
        ) {
            let lhs = (&f * &g).partial_derivative(v).unwrap();
            let rhs = &(&f * &g.partial_derivative(v).unwrap()) + &(&g * &f.partial_derivative(v).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn monomial_order_axioms(u in exps(3), v in exps(3), w in exps(3)) {
            let one = Monomial::one(3);
            for o in orders() {
                // total and antisymmetric
                let uv = o.cmp(&u, &v);
                prop_assert_eq!(uv.reverse(), o.cmp(&v, &u));
                prop_assert_eq!(uv == Ordering::Equal, u == v);
                // multiplicative
                if uv == Ordering::Less {
                    prop_assert_eq!(o.cmp(&u.checked_mul(&w).unwrap(), &v.checked_mul(&w).unwrap()), Ordering::Less);
                }
                // transitive
                if uv != Ordering::Greater && o.cmp(&v, &w) != Ordering::Greater {
                    prop_assert!(o.cmp(&u, &w) != Ordering::Greater);
                }
                // 1 is minimal
                prop_assert!(o.cmp(&one, &u) != Ordering::Greater);
            }
        }
    }
}
