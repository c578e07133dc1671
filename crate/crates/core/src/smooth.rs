//! Smoothness of `B → A`: flatness plus the Jacobian criterion on every
//! component, at the relative dimension read off Krull dimensions.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{component_kernel, kahler_differentials, minors, FlatnessMode, RingMap};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::groebner::{saturate, Budget, Ideal};
use crate::poly::{Monomial, MonomialOrder, Poly, PolyRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FlatnessStatus {
    Verified,
    Declared,
    Failed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Smooth,
    NotSmooth,
    Undetermined,
}

/// `r_c = dim A_c - dim B_s` when `B_s → A_c` is injective, or the declared
/// value otherwise.
pub fn relative_dimension(f: &RingMap, c: usize, budget: &Budget) -> Result<usize> {
    if let Some(r) = f.reldim_override(c) {
        return Ok(r);
    }
    let src = f.source().component(f.routing()[c].source);
    let kernel = component_kernel(f, c, budget)?;
    for g in kernel.generators() {
        if !src.reduce(g)?.is_zero() {
            return Err(Error::NonDominant { component: c + 1 });
        }
    }
    let da = f.target().component(c).dimension();
    let db = src.dimension();
    da.checked_sub(db).ok_or_else(|| {
        Error::InvalidMap(format!("component {} has dimension {da} below its base dimension {db}", c + 1))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LocusKind {
    /// The locus is empty: the component is smooth.
    Empty,
    Proper,
    /// The `c`-minors generate the unit ideal but some `(c+1)`-minor does
    /// not vanish, so the Jacobian rank jumps between pieces of the component.
    MixedDimension,
}

/// `V(I_c + c×c minors)` with `c = n - r_c`.
#[derive(Clone, Debug)]
pub struct NonsmoothLocus {
    pub relative_dimension: usize,
    pub codimension: i64,
    pub ideal: Ideal,
    pub kind: LocusKind,
}

pub fn nonsmooth_locus(f: &RingMap, c: usize, budget: &Budget) -> Result<NonsmoothLocus> {
    let r = relative_dimension(f, c, budget)?;
    let comp = f.target().component(c);
    let n = comp.nvars();
    let codim = n as i64 - r as i64;
    let jac = f.jacobian(c)?;
    if codim < 0 {
        return Ok(NonsmoothLocus { relative_dimension: r, codimension: codim, ideal: comp.ideal().clone(), kind: LocusKind::Proper });
    }
    let size = codim as usize;
    let ideal = comp.ideal().with_generators(minors(&jac, n, size, comp.basis())?)?;
    if !ideal.groebner(budget)?.is_unit() {
        return Ok(NonsmoothLocus { relative_dimension: r, codimension: codim, ideal, kind: LocusKind::Proper });
    }
    let kind = if has_nonzero_minor(&jac, n, size + 1, comp)? { LocusKind::MixedDimension } else { LocusKind::Empty };
    Ok(NonsmoothLocus { relative_dimension: r, codimension: codim, ideal, kind })
}

fn has_nonzero_minor(jac: &[Vec<Poly>], n: usize, size: usize, comp: &crate::algebra::Component) -> Result<bool> {
    if size > jac.len() || size > n {
        return Ok(false);
    }
    Ok(!minors(jac, n, size, comp.basis())?.is_empty())
}

/// Largest `dim Ω_{A_c|B} ⊗ k(p)` over points `p` of the component: `n`
/// minus the least rank of the Jacobian on `V(I_c)`.
pub fn max_omega_rank(f: &RingMap, c: usize, budget: &Budget) -> Result<usize> {
    let comp = f.target().component(c);
    let n = comp.nvars();
    let jac = f.jacobian(c)?;
    for rho in 0..=n.min(jac.len()) {
        let ideal = if rho == n.min(jac.len()) {
            comp.ideal().clone()
        } else {
            comp.ideal().with_generators(minors(&jac, n, rho + 1, comp.basis())?)?
        };
        if !ideal.groebner(budget)?.is_unit() {
            return Ok(n - rho);
        }
    }
    Ok(0)
}

/// Flatness of `A` over `B`, decided per target component. A component over
/// a ground-field factor is free; over `k[t]` it is flat iff torsion free,
/// i.e. iff its ideal equals its extension-contraction through `k(t)[x]`.
pub fn flatness_check(f: &RingMap, budget: &Budget) -> Result<FlatnessStatus> {
    if let FlatnessMode::Tensor(a, b) = f.flatness_mode() {
        let (sa, sb) = (flatness_check(a, budget)?, flatness_check(b, budget)?);
        return Ok(match (sa, sb) {
            (FlatnessStatus::Failed, _) | (_, FlatnessStatus::Failed) => FlatnessStatus::Failed,
            (FlatnessStatus::Verified, FlatnessStatus::Verified) => FlatnessStatus::Verified,
            _ => FlatnessStatus::Declared,
        });
    }
    let mut unavailable = None;
    for c in 0..f.target().components().len() {
        let src = f.source().component(f.routing()[c].source);
        if src.nvars() == 0 {
            continue;
        }
        if src.nvars() == 1 && src.ideal().is_zero() {
            if !torsion_free_over_line(f, c, budget)? {
                return Ok(FlatnessStatus::Failed);
            }
            continue;
        }
        unavailable.get_or_insert(src.to_string());
    }
    match (unavailable, f.flatness_mode()) {
        (None, _) => Ok(FlatnessStatus::Verified),
        (Some(_), FlatnessMode::Declared) => Ok(FlatnessStatus::Declared),
        (Some(base), _) => Err(Error::FlatnessUnavailable(base)),
    }
}

fn torsion_free_over_line(f: &RingMap, c: usize, budget: &Budget) -> Result<bool> {
    let graph = f.graph(c)?;
    let rel = graph.relative_ideal()?;
    let rel_basis = rel.groebner(budget)?;
    let ring = &graph.ring;
    let base = ring.field().clone();
    let kt = Field::rational_functions(base.clone());
    let nx = ring.nvars() - 1;
    let kring = PolyRing::new(kt.clone(), ring.vars()[1..].to_vec(), MonomialOrder::GrevLex);
    let gens = rel.generators().iter().map(|g| to_function_coeffs(g, &kring, &kt)).collect();
    let gb = Ideal::new(&kring, gens)?.groebner(budget)?;
    let mut cleared = Vec::new();
    let mut h = Poly::one(ring);
    for g in gb.basis() {
        let g = clear_denominators(g, &kt);
        let lead = numerator(g.leading_coeff().expect("basis elements are nonzero"));
        h = h.checked_mul(&univariate(lead, ring))?;
        cleared.push(from_function_coeffs(&g, ring, nx));
    }
    let contraction = saturate(&Ideal::new(ring, cleared)?, &h, budget)?;
    for g in contraction.generators() {
        if !rel_basis.contains(g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn numerator(c: &FieldElem) -> &[FieldElem] {
    match c {
        FieldElem::Function(r) => r.numerator(),
        _ => unreachable!("coefficients lie in k(t)"),
    }
}

fn denominator(c: &FieldElem) -> &[FieldElem] {
    match c {
        FieldElem::Function(r) => r.denominator(),
        _ => unreachable!("coefficients lie in k(t)"),
    }
}

/// `p(t)` as a polynomial in the first variable of `ring`.
fn univariate(coeffs: &[FieldElem], ring: &Arc<PolyRing>) -> Poly {
    let n = ring.nvars();
    Poly::from_terms(
        ring,
        coeffs.iter().enumerate().map(|(i, c)| {
            let mut e = vec![0u32; n];
            e[0] = i as u32;
            (Monomial::new(e), c.clone())
        }),
    )
}

/// Views `g ∈ k[t, x]` as an element of `k(t)[x]`.
fn to_function_coeffs(g: &Poly, kring: &Arc<PolyRing>, kt: &Field) -> Poly {
    let mut grouped: BTreeMap<Vec<u32>, Vec<FieldElem>> = BTreeMap::new();
    let zero = g.ring().field().zero();
    for (m, c) in g.terms() {
        let e = m.exponents();
        let slot = grouped.entry(e[1..].to_vec()).or_default();
        let deg = e[0] as usize;
        if slot.len() <= deg {
            slot.resize(deg + 1, zero.clone());
        }
        slot[deg] = c.clone();
    }
    Poly::from_terms(
        kring,
        grouped.into_iter().map(|(e, coeffs)| (Monomial::new(e), kt.from_univariate(coeffs).expect("k(t)"))),
    )
}

/// Multiplies by denominators until every coefficient lies in `k[t]`.
fn clear_denominators(g: &Poly, kt: &Field) -> Poly {
    let mut g = g.clone();
    while let Some((_, c)) = g.terms().iter().find(|(_, c)| denominator(c).len() > 1) {
        let d = kt.from_univariate(denominator(c).to_vec()).expect("k(t)");
        g = g.scale(&d);
    }
    g
}

fn from_function_coeffs(g: &Poly, ring: &Arc<PolyRing>, nx: usize) -> Poly {
    let mut terms = Vec::new();
    for (m, c) in g.terms() {
        for (i, a) in numerator(c).iter().enumerate() {
            let mut e = Vec::with_capacity(nx + 1);
            e.push(i as u32);
            e.extend_from_slice(m.exponents());
            terms.push((Monomial::new(e), a.clone()));
        }
    }
    Poly::from_terms(ring, terms)
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentSmoothness {
    /// One-based component index.
    pub component: usize,
    pub relative_dimension: Option<usize>,
    pub codimension: Option<i64>,
    pub locus: Option<String>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SmoothnessReport {
    pub verdict: Verdict,
    pub flatness: Option<FlatnessStatus>,
    pub omega_zero: Option<bool>,
    pub components: Vec<ComponentSmoothness>,
    pub notes: Vec<String>,
}

impl SmoothnessReport {
    pub fn is_smooth(&self) -> bool {
        self.verdict == Verdict::Smooth
    }

    /// Relative dimensions of all components, if all are known.
    pub fn relative_dimensions(&self) -> Option<Vec<usize>> {
        self.components.iter().map(|c| c.relative_dimension).collect()
    }
}

/// Decides smoothness. Budget exhaustion anywhere yields an undetermined
/// verdict with a note; a missing flatness hypothesis is an error.
pub fn is_smooth(f: &RingMap, budget: &Budget) -> Result<SmoothnessReport> {
    let mut notes = Vec::new();
    let flatness = match flatness_check(f, budget) {
        Ok(s) => Some(s),
        Err(e @ Error::BudgetExhausted { .. }) => {
            notes.push(format!("flatness: {e}"));
            None
        }
        Err(e) => return Err(e),
    };
    let omega_zero = match kahler_differentials(f).and_then(|d| d.vanishes(budget)) {
        Ok(v) => Some(v),
        Err(e @ Error::BudgetExhausted { .. }) => {
            notes.push(format!("differentials: {e}"));
            None
        }
        Err(e) => return Err(e),
    };
    let mut components = Vec::new();
    for c in 0..f.target().components().len() {
        let entry = match nonsmooth_locus(f, c, budget) {
            Ok(locus) => {
                let (verdict, note) = match locus.kind {
                    LocusKind::Empty => (Verdict::Smooth, None),
                    LocusKind::Proper => (Verdict::NotSmooth, None),
                    LocusKind::MixedDimension => {
                        (Verdict::Undetermined, Some("mixed dimension; split components".to_string()))
                    }
                };
                ComponentSmoothness {
                    component: c + 1,
                    relative_dimension: Some(locus.relative_dimension),
                    codimension: Some(locus.codimension),
                    locus: Some(locus.ideal.to_string()),
                    verdict,
                    note,
                }
            }
            Err(e @ (Error::BudgetExhausted { .. } | Error::NonDominant { .. })) => ComponentSmoothness {
                component: c + 1,
                relative_dimension: None,
                codimension: None,
                locus: None,
                verdict: Verdict::Undetermined,
                note: Some(e.to_string()),
            },
            Err(e) => return Err(e),
        };
        components.push(entry);
    }
    let any = |v: Verdict| components.iter().any(|c| c.verdict == v);
    let verdict = if flatness == Some(FlatnessStatus::Failed) || any(Verdict::NotSmooth) {
        Verdict::NotSmooth
    } else if flatness.is_none() || any(Verdict::Undetermined) {
        Verdict::Undetermined
    } else {
        Verdict::Smooth
    };
    if flatness == Some(FlatnessStatus::Failed) {
        notes.push("not flat".into());
    }
    Ok(SmoothnessReport { verdict, flatness, omega_zero, components, notes })
}
