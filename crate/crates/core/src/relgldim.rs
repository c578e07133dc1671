//! Relative global dimension through the fiber formula: for a flat map it is
//! the largest relative dimension when the map is smooth and infinite
//! otherwise. Fibers give independent lower bounds.

use serde::Serialize;

use crate::algebra::{fiber_algebra, tensor_over_k, FiberPoint, PresentedAlgebra, RingMap};
use crate::error::{Error, Result};
use crate::extnat::ExtendedNat;
use crate::groebner::Budget;
use crate::smooth::{is_smooth, max_omega_rank, nonsmooth_locus, FlatnessStatus, LocusKind, Verdict};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GldimReport {
    pub value: ExtendedNat,
    /// Hypotheses the value depends on, such as `flat:declared`.
    pub hypotheses: Vec<String>,
    /// Upper bounds from the rank of `Ω` on components where they differ
    /// from the value.
    pub rank_bounds: Vec<RankBound>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankBound {
    /// One-based component index.
    pub component: usize,
    pub omega_rank: usize,
}

/// Global dimension of a fiber algebra: `dim A_c` on a regular component,
/// infinite on a singular one, maximised over components.
pub fn fiber_gldim(fiber: &PresentedAlgebra, budget: &Budget) -> Result<GldimReport> {
    let mut value = ExtendedNat::Finite(0);
    let mut notes = Vec::new();
    let f = RingMap::structure_map(fiber.clone());
    for c in 0..fiber.components().len() {
        let here = match nonsmooth_locus(&f, c, budget) {
            Ok(l) => match l.kind {
                LocusKind::Empty => ExtendedNat::Finite(l.relative_dimension as u64),
                LocusKind::Proper => ExtendedNat::Infinite,
                LocusKind::MixedDimension => {
                    notes.push(format!("component {}: mixed dimension; split components", c + 1));
                    ExtendedNat::AtLeast(0)
                }
            },
            Err(e @ Error::BudgetExhausted { .. }) => {
                notes.push(format!("component {}: {e}", c + 1));
                ExtendedNat::AtLeast(0)
            }
            Err(e) => return Err(e),
        };
        value = value.join(here);
    }
    Ok(GldimReport { value, hypotheses: Vec::new(), rank_bounds: Vec::new(), notes })
}

pub fn rel_gldim(f: &RingMap, budget: &Budget) -> Result<GldimReport> {
    let rep = is_smooth(f, budget)?;
    let mut hypotheses = Vec::new();
    if rep.flatness == Some(FlatnessStatus::Declared) {
        hypotheses.push("flat:declared".to_string());
    }
    let value = match rep.verdict {
        Verdict::Smooth => {
            let dims = rep.relative_dimensions().expect("smooth components have known dimension");
            ExtendedNat::Finite(dims.into_iter().max().unwrap_or(0) as u64)
        }
        Verdict::NotSmooth => ExtendedNat::Infinite,
        Verdict::Undetermined => ExtendedNat::AtLeast(0),
    };
    let mut notes = rep.notes;
    let mut rank_bounds = Vec::new();
    for c in &rep.components {
        if c.verdict != Verdict::NotSmooth {
            continue;
        }
        match max_omega_rank(f, c.component - 1, budget) {
            Ok(omega_rank) => rank_bounds.push(RankBound { component: c.component, omega_rank }),
            Err(e @ Error::BudgetExhausted { .. }) => notes.push(format!("component {}: rank bound: {e}", c.component)),
            Err(e) => return Err(e),
        }
    }
    notes.extend(rep.components.into_iter().filter_map(|c| c.note.map(|n| format!("component {}: {n}", c.component))));
    Ok(GldimReport { value, hypotheses, rank_bounds, notes })
}

/// Join of the fiber dimensions at the given points. Each fiber is a
/// base change of `A`, so this never exceeds the relative dimension.
pub fn rel_gldim_sampled_lower_bound(f: &RingMap, points: &[FiberPoint], budget: &Budget) -> Result<ExtendedNat> {
    let mut acc = ExtendedNat::Finite(0);
    for p in points {
        let fiber = fiber_algebra(f, p, budget)?;
        acc = acc.join(fiber_gldim(&fiber, budget)?.value);
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TensorCheck {
    pub left: ExtendedNat,
    pub right: ExtendedNat,
    pub product: ExtendedNat,
    /// Whether `product = left + right` with both factors determinate.
    pub additive: bool,
}

pub fn tensor_gldim_check(f: &RingMap, g: &RingMap, budget: &Budget) -> Result<TensorCheck> {
    let left = rel_gldim(f, budget)?.value;
    let right = rel_gldim(g, budget)?.value;
    let product = rel_gldim(&tensor_over_k(f, g, budget)?, budget)?.value;
    let additive = left.is_determinate() && right.is_determinate() && product == left.add(right);
    Ok(TensorCheck { left, right, product, additive })
}
