//! Exact ground fields: the rationals, prime fields with word-sized modulus,
//! and univariate rational function fields over either (the latter is used
//! internally by the flatness test only).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A field descriptor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
    /// `k(t)` over the boxed base field.
    RationalFunctions(Box<Field>),
}

impl Field {
    /// The prime field with `p` elements. Rejects composite moduli and
    /// primes that do not fit in 32 bits (products must fit in a `u64`).
    pub fn prime(p: u64) -> Result<Field> {
        if p < 2 || p > u32::MAX as u64 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn rational_functions(base: Field) -> Field {
        Field::RationalFunctions(Box::new(base))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
            Field::RationalFunctions(base) => base.characteristic(),
        }
    }

    pub fn zero(&self) -> FieldElem {
        match self {
            Field::Rational => FieldElem::Rational(BigRational::zero()),
            Field::Prime(p) => FieldElem::Modular { value: 0, modulus: *p },
            Field::RationalFunctions(base) => {
                FieldElem::Function(Box::new(RationalFunction::zero(base)))
            }
        }
    }

    pub fn one(&self) -> FieldElem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> FieldElem {
        match self {
            Field::Rational => FieldElem::Rational(BigRational::from_integer(n.into())),
            Field::Prime(p) => FieldElem::Modular {
                value: n.rem_euclid(*p as i64) as u64,
                modulus: *p,
            },
            Field::RationalFunctions(base) => FieldElem::Function(Box::new(
                RationalFunction::constant(base, base.from_i64(n)),
            )),
        }
    }

    /// Embeds a rational number. Fails in characteristic `p` when the
    /// denominator is divisible by `p`.
    pub fn from_rational(&self, q: &BigRational) -> Result<FieldElem> {
        match self {
            Field::Rational => Ok(FieldElem::Rational(q.clone())),
            Field::Prime(p) => {
                let reduce = |n: &BigInt| -> u64 {
                    let m = BigInt::from(*p);
                    n.mod_floor(&m).to_u64().expect("residue fits in u64")
                };
                let num = FieldElem::Modular { value: reduce(q.numer()), modulus: *p };
                let den = FieldElem::Modular { value: reduce(q.denom()), modulus: *p };
                num.checked_div(&den)
            }
            Field::RationalFunctions(base) => Ok(FieldElem::Function(Box::new(
                RationalFunction::constant(base, base.from_rational(q)?),
            ))),
        }
    }

    /// `Σ coeffs[i] t^i` in `k(t)`, with coefficients from the base field.
    /// `None` unless `self` is a rational function field.
    pub fn from_univariate(&self, coeffs: Vec<FieldElem>) -> Option<FieldElem> {
        match self {
            Field::RationalFunctions(base) => Some(FieldElem::Function(Box::new(
                RationalFunction::from_poly(base, coeffs),
            ))),
            _ => None,
        }
    }

    /// The transcendental generator `t` of `k(t)`.
    pub fn generator(&self) -> Option<FieldElem> {
        match self {
            Field::RationalFunctions(base) => Some(FieldElem::Function(Box::new(
                RationalFunction::from_poly(base, vec![base.zero(), base.one()]),
            ))),
            _ => None,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
            Field::RationalFunctions(base) => write!(f, "{base}(t)"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of one of the supported fields, always in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElem {
    Rational(BigRational),
    Modular { value: u64, modulus: u64 },
    Function(Box<RationalFunction>),
}

impl FieldElem {
    pub fn field(&self) -> Field {
        match self {
            FieldElem::Rational(_) => Field::Rational,
            FieldElem::Modular { modulus, .. } => Field::Prime(*modulus),
            FieldElem::Function(r) => Field::rational_functions(r.base.clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Rational(q) => q.is_zero(),
            FieldElem::Modular { value, .. } => *value == 0,
            FieldElem::Function(r) => r.num.is_empty(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Rational(q) => q.is_one(),
            FieldElem::Modular { value, .. } => *value == 1,
            FieldElem::Function(r) => {
                r.num.len() == 1 && r.den.len() == 1 && r.num[0].is_one() && r.den[0].is_one()
            }
        }
    }

    pub fn checked_add(&self, other: &FieldElem) -> Result<FieldElem> {
        match (self, other) {
            (FieldElem::Rational(a), FieldElem::Rational(b)) => Ok(FieldElem::Rational(a + b)),
            (
                FieldElem::Modular { value: a, modulus: p },
                FieldElem::Modular { value: b, modulus: q },
            ) if p == q => Ok(FieldElem::Modular { value: (a + b) % p, modulus: *p }),
            (FieldElem::Function(a), FieldElem::Function(b)) if a.base == b.base => {
                Ok(FieldElem::Function(Box::new(a.add(b))))
            }
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn checked_sub(&self, other: &FieldElem) -> Result<FieldElem> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &FieldElem) -> Result<FieldElem> {
        match (self, other) {
            (FieldElem::Rational(a), FieldElem::Rational(b)) => Ok(FieldElem::Rational(a * b)),
            (
                FieldElem::Modular { value: a, modulus: p },
                FieldElem::Modular { value: b, modulus: q },
            ) if p == q => Ok(FieldElem::Modular { value: (a * b) % p, modulus: *p }),
            (FieldElem::Function(a), FieldElem::Function(b)) if a.base == b.base => {
                Ok(FieldElem::Function(Box::new(a.mul(b))))
            }
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn checked_div(&self, other: &FieldElem) -> Result<FieldElem> {
        if self.field() != other.field() {
            return Err(self.mismatch(other));
        }
        self.checked_mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<FieldElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            FieldElem::Rational(q) => FieldElem::Rational(q.recip()),
            FieldElem::Modular { value, modulus } => FieldElem::Modular {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
            FieldElem::Function(r) => FieldElem::Function(Box::new(r.recip())),
        })
    }

    fn neg_ref(&self) -> FieldElem {
        match self {
            FieldElem::Rational(q) => FieldElem::Rational(-q),
            FieldElem::Modular { value, modulus } => FieldElem::Modular {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
            FieldElem::Function(r) => FieldElem::Function(Box::new(r.neg())),
        }
    }

    fn mismatch(&self, other: &FieldElem) -> Error {
        Error::FieldMismatch(self.field().to_string(), other.field().to_string())
    }

    pub fn pow(&self, mut e: u32) -> FieldElem {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// True for elements printed without parentheses as a leading coefficient.
    pub(crate) fn is_simple(&self) -> bool {
        match self {
            FieldElem::Function(r) => r.den.len() == 1 && r.num.len() <= 1,
            _ => true,
        }
    }

    pub(crate) fn is_negative(&self) -> bool {
        match self {
            FieldElem::Rational(q) => q.is_negative(),
            _ => false,
        }
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

// Operator impls panic on mixed fields; callers inside the crate only combine
// elements drawn from one ring. Use the `checked_*` methods at API boundaries.
impl Add for &FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &FieldElem) -> FieldElem {
        self.checked_add(rhs).expect("field mismatch")
    }
}

impl Sub for &FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &FieldElem) -> FieldElem {
        self.checked_sub(rhs).expect("field mismatch")
    }
}

impl Mul for &FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &FieldElem) -> FieldElem {
        self.checked_mul(rhs).expect("field mismatch")
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        self.neg_ref()
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Rational(q) => write!(f, "{q}"),
            FieldElem::Modular { value, .. } => write!(f, "{value}"),
            FieldElem::Function(r) => write!(f, "{r}"),
        }
    }
}

/// Reduced quotient `num / den` of univariate polynomials over `base`, with
/// `den` monic. Coefficient vectors are little-endian and carry no trailing
/// zeros; the zero function has an empty numerator and denominator `1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    base: Field,
    num: Vec<FieldElem>,
    den: Vec<FieldElem>,
}

type Uni = Vec<FieldElem>;

fn uni_trim(mut p: Uni) -> Uni {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn uni_add(a: &[FieldElem], b: &[FieldElem]) -> Uni {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x + y,
            (Some(x), None) | (None, Some(x)) => x.clone(),
            (None, None) => unreachable!(),
        })
        .collect();
    uni_trim(out)
}

fn uni_neg(a: &[FieldElem]) -> Uni {
    a.iter().map(|c| -c).collect()
}

fn uni_mul(a: &[FieldElem], b: &[FieldElem]) -> Uni {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let zero = a[0].field().zero();
    let mut out = vec![zero; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    uni_trim(out)
}

fn uni_scale(a: &[FieldElem], c: &FieldElem) -> Uni {
    uni_trim(a.iter().map(|x| x * c).collect())
}

/// Long division, `b` nonzero.
fn uni_divrem(a: &[FieldElem], b: &[FieldElem]) -> (Uni, Uni) {
    let lead_inv = b.last().expect("nonzero divisor").inv().expect("nonzero lead");
    let mut rem: Uni = a.to_vec();
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let zero = b[0].field().zero();
    let mut quot = vec![zero; rem.len() - b.len() + 1];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() * &lead_inv;
        for (i, bc) in b.iter().enumerate() {
            rem[shift + i] = &rem[shift + i] - &(&c * bc);
        }
        quot[shift] = c;
        rem = uni_trim(rem);
    }
    (uni_trim(quot), rem)
}

fn uni_gcd(a: &[FieldElem], b: &[FieldElem]) -> Uni {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    while !y.is_empty() {
        let (_, r) = uni_divrem(&x, &y);
        x = std::mem::replace(&mut y, r);
    }
    x
}

impl RationalFunction {
    fn zero(base: &Field) -> Self {
        RationalFunction { base: base.clone(), num: Vec::new(), den: vec![base.one()] }
    }

    fn constant(base: &Field, c: FieldElem) -> Self {
        Self::from_poly(base, vec![c])
    }

    fn from_poly(base: &Field, num: Uni) -> Self {
        RationalFunction { base: base.clone(), num: uni_trim(num), den: vec![base.one()] }
    }

    fn new(base: &Field, num: Uni, den: Uni) -> Self {
        let num = uni_trim(num);
        let den = uni_trim(den);
        assert!(!den.is_empty(), "zero denominator");
        if num.is_empty() {
            return Self::zero(base);
        }
        let g = uni_gcd(&num, &den);
        let (num, _) = uni_divrem(&num, &g);
        let (den, _) = uni_divrem(&den, &g);
        let lead_inv = den.last().unwrap().inv().expect("nonzero lead");
        RationalFunction {
            base: base.clone(),
            num: uni_scale(&num, &lead_inv),
            den: uni_scale(&den, &lead_inv),
        }
    }

    fn add(&self, other: &Self) -> Self {
        let num = uni_add(&uni_mul(&self.num, &other.den), &uni_mul(&other.num, &self.den));
        Self::new(&self.base, num, uni_mul(&self.den, &other.den))
    }

    fn neg(&self) -> Self {
        RationalFunction { base: self.base.clone(), num: uni_neg(&self.num), den: self.den.clone() }
    }

    fn mul(&self, other: &Self) -> Self {
        Self::new(&self.base, uni_mul(&self.num, &other.num), uni_mul(&self.den, &other.den))
    }

    fn recip(&self) -> Self {
        Self::new(&self.base, self.den.clone(), self.num.clone())
    }

    /// Numerator coefficients, constant term first.
    pub fn numerator(&self) -> &[FieldElem] {
        &self.num
    }

    /// Monic denominator coefficients, constant term first.
    pub fn denominator(&self) -> &[FieldElem] {
        &self.den
    }

    pub fn base(&self) -> &Field {
        &self.base
    }
}

fn fmt_uni(p: &[FieldElem], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_empty() {
        return write!(f, "0");
    }
    let mut first = true;
    for (i, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        if !first {
            write!(f, " + ")?;
        }
        first = false;
        match (i, c.is_one()) {
            (0, _) => write!(f, "{c}")?,
            (1, true) => write!(f, "t")?,
            (1, false) => write!(f, "{c}*t")?,
            (_, true) => write!(f, "t^{i}")?,
            (_, false) => write!(f, "{c}*t^{i}")?,
        }
    }
    Ok(())
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.len() == 1 {
            if self.num.len() > 1 {
                write!(f, "(")?;
                fmt_uni(&self.num, f)?;
                return write!(f, ")");
            }
            return fmt_uni(&self.num, f);
        }
        write!(f, "(")?;
        fmt_uni(&self.num, f)?;
        write!(f, ")/(")?;
        fmt_uni(&self.den, f)?;
        write!(f, ")")
    }
}
