//! Finitely presented algebras (finite products of `k[x]/I`), maps between
//! them, and the constructions built on top: tensor products, the kernel of
//! multiplication, Kähler differentials, kernels and fibers.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::groebner::{eliminate, intersect, krull_dim_of_basis, Budget, GroebnerBasis, Ideal, KrullDim};
use crate::poly::{MonomialOrder, Poly, PolyRing};

/// One factor `k[x]/I` of a product, with `I` proper and a cached basis.
#[derive(Clone, Debug)]
pub struct Component {
    ideal: Ideal,
    basis: GroebnerBasis,
}

impl Component {
    pub fn new(ideal: Ideal, budget: &Budget) -> Result<Component> {
        let basis = ideal.groebner(budget)?;
        if basis.is_unit() {
            return Err(Error::InvalidAlgebra(format!("component ideal {ideal} is the unit ideal")));
        }
        Ok(Component { ideal, basis })
    }

    /// The polynomial ring itself.
    pub fn free(ring: &Arc<PolyRing>, budget: &Budget) -> Result<Component> {
        Component::new(Ideal::zero(ring), budget)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        self.ideal.ring()
    }

    pub fn nvars(&self) -> usize {
        self.ring().nvars()
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn basis(&self) -> &GroebnerBasis {
        &self.basis
    }

    pub fn reduce(&self, f: &Poly) -> Result<Poly> {
        self.basis.normal_form(f)
    }

    pub fn dimension(&self) -> usize {
        match krull_dim_of_basis(&self.basis) {
            KrullDim::Finite(d) => d,
            KrullDim::Empty => unreachable!("components are proper"),
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.ring().field(), self.ring().vars().join(","))?;
        if !self.ideal.is_zero() {
            write!(f, "/{}", self.ideal)?;
        }
        Ok(())
    }
}

/// `A = ∏ k[x^(c)]/I_c`. The empty product is the zero algebra.
#[derive(Clone, Debug)]
pub struct PresentedAlgebra {
    field: Field,
    components: Vec<Component>,
}

impl PresentedAlgebra {
    pub fn new(field: Field, components: Vec<Component>) -> Result<PresentedAlgebra> {
        if let Some(c) = components.iter().find(|c| c.ring().field() != &field) {
            return Err(Error::FieldMismatch(field.to_string(), c.ring().field().to_string()));
        }
        Ok(PresentedAlgebra { field, components })
    }

    pub fn zero(field: Field) -> PresentedAlgebra {
        PresentedAlgebra { field, components: Vec::new() }
    }

    /// The ground field as an algebra with one component and no variables.
    pub fn ground(field: Field) -> PresentedAlgebra {
        let ring = PolyRing::new(field.clone(), Vec::new(), MonomialOrder::GrevLex);
        let comp = Component::free(&ring, &Budget::default()).expect("k is a proper quotient of k");
        PresentedAlgebra { field, components: vec![comp] }
    }

    pub fn single(component: Component) -> PresentedAlgebra {
        let field = component.ring().field().clone();
        PresentedAlgebra { field, components: vec![component] }
    }

    /// `k[vars]/(gens)` with grevlex order.
    pub fn quotient(field: Field, vars: &[&str], gens: impl FnOnce(&Arc<PolyRing>) -> Vec<Poly>, budget: &Budget) -> Result<PresentedAlgebra> {
        let ring = PolyRing::new(field, vars.iter().map(|v| v.to_string()).collect(), MonomialOrder::GrevLex);
        let ideal = Ideal::new(&ring, gens(&ring))?;
        Ok(PresentedAlgebra::single(Component::new(ideal, budget)?))
    }

    /// Componentwise product of several algebras over the same field.
    pub fn product(factors: &[&PresentedAlgebra]) -> Result<PresentedAlgebra> {
        let field = factors.first().map(|a| a.field.clone()).ok_or_else(|| {
            Error::InvalidAlgebra("empty product; use the zero algebra".into())
        })?;
        let components = factors.iter().flat_map(|a| a.components.iter().cloned()).collect();
        PresentedAlgebra::new(field, components)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component(&self, c: usize) -> &Component {
        &self.components[c]
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn is_ground_field(&self) -> bool {
        self.components.len() == 1 && self.components[0].nvars() == 0
    }

    /// Whether this is `k[t]` (one free variable).
    pub fn is_affine_line(&self) -> bool {
        self.components.len() == 1 && self.components[0].nvars() == 1 && self.components[0].ideal.is_zero()
    }

    /// Maximum of the component dimensions; `Empty` for the zero algebra.
    pub fn dimension(&self) -> KrullDim {
        self.components
            .iter()
            .map(|c| c.dimension())
            .max()
            .map_or(KrullDim::Empty, KrullDim::Finite)
    }
}

impl fmt::Display for PresentedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// Where a target component gets its structure: the source component it is
/// fed from and the images of that component's variables.
#[derive(Clone, Debug)]
pub struct ComponentImage {
    pub source: usize,
    pub images: Vec<Poly>,
}

/// How the flatness hypothesis of a map is established.
#[derive(Clone, Debug)]
pub enum FlatnessMode {
    /// Decided by computation where the base allows it.
    Checked,
    /// Asserted by the user.
    Declared,
    /// A tensor product over `k` of two maps; flat when both factors are.
    Tensor(Box<RingMap>, Box<RingMap>),
}

/// A `k`-algebra map `B → A`. The projection `B → B_s` composed with the
/// map is the structure of every target component routed from `s`; target
/// components receive nothing from the other source factors.
#[derive(Clone, Debug)]
pub struct RingMap {
    source: PresentedAlgebra,
    target: PresentedAlgebra,
    routing: Vec<ComponentImage>,
    flatness: FlatnessMode,
    reldim: BTreeMap<usize, usize>,
}

impl RingMap {
    /// Validates shapes and that every source relation maps into `I_c`.
    pub fn new(source: PresentedAlgebra, target: PresentedAlgebra, routing: Vec<ComponentImage>) -> Result<RingMap> {
        if source.field != target.field {
            return Err(Error::FieldMismatch(source.field.to_string(), target.field.to_string()));
        }
        if routing.len() != target.components.len() {
            return Err(Error::InvalidMap(format!(
                "{} target components but {} images",
                target.components.len(),
                routing.len()
            )));
        }
        for (c, img) in routing.iter().enumerate() {
            let Some(src) = source.components.get(img.source) else {
                return Err(Error::InvalidMap(format!("component {} is fed from missing source {}", c + 1, img.source + 1)));
            };
            let tgt = &target.components[c];
            if img.images.len() != src.nvars() {
                return Err(Error::InvalidMap(format!(
                    "component {} needs {} images, got {}",
                    c + 1,
                    src.nvars(),
                    img.images.len()
                )));
            }
            if img.images.iter().any(|p| p.ring() != tgt.ring()) {
                return Err(Error::InvalidMap(format!("image outside the ring of component {}", c + 1)));
            }
            for g in src.ideal.generators() {
                let image = g.substitute(&img.images, tgt.ring())?;
                if !tgt.reduce(&image)?.is_zero() {
                    return Err(Error::InvalidMap(format!(
                        "relation {g} does not vanish in component {}",
                        c + 1
                    )));
                }
            }
        }
        Ok(RingMap { source, target, routing, flatness: FlatnessMode::Checked, reldim: BTreeMap::new() })
    }

    /// `k → A`.
    pub fn structure_map(target: PresentedAlgebra) -> RingMap {
        let source = PresentedAlgebra::ground(target.field.clone());
        let routing = target.components.iter().map(|_| ComponentImage { source: 0, images: Vec::new() }).collect();
        RingMap { source, target, routing, flatness: FlatnessMode::Checked, reldim: BTreeMap::new() }
    }

    pub fn declare_flat(&mut self) {
        self.flatness = FlatnessMode::Declared;
    }

    /// Supplies the relative dimension of a component whose structure map
    /// is not injective.
    pub fn set_reldim(&mut self, component: usize, value: usize) -> Result<()> {
        if component >= self.target.components.len() {
            return Err(Error::InvalidMap(format!("no component {}", component + 1)));
        }
        self.reldim.insert(component, value);
        Ok(())
    }

    pub fn source(&self) -> &PresentedAlgebra {
        &self.source
    }

    pub fn target(&self) -> &PresentedAlgebra {
        &self.target
    }

    pub fn routing(&self) -> &[ComponentImage] {
        &self.routing
    }

    pub fn flatness_mode(&self) -> &FlatnessMode {
        &self.flatness
    }

    pub fn reldim_override(&self, component: usize) -> Option<usize> {
        self.reldim.get(&component).copied()
    }

    /// Graph presentation of target component `c` over its source factor.
    pub fn graph(&self, c: usize) -> Result<GraphPresentation> {
        let img = &self.routing[c];
        let src = &self.source.components[img.source];
        let tgt = &self.target.components[c];
        let ns = src.nvars();
        let nx = tgt.nvars();
        let mut names: Vec<String> = src.ring().vars().iter().map(|v| format!("{v}@B")).collect();
        names.extend(tgt.ring().vars().iter().cloned());
        let ring = PolyRing::new(self.target.field.clone(), names, MonomialOrder::GrevLex);
        let y_pos: Vec<usize> = (0..ns).collect();
        let x_pos: Vec<usize> = (ns..ns + nx).collect();
        let source_relations = src.ideal.generators().iter().map(|g| g.map_variables(&ring, &y_pos)).collect();
        let target_relations = tgt.ideal.generators().iter().map(|g| g.map_variables(&ring, &x_pos)).collect();
        let graph_relations = img
            .images
            .iter()
            .enumerate()
            .map(|(i, phi)| &Poly::var(&ring, i) - &phi.map_variables(&ring, &x_pos))
            .collect();
        Ok(GraphPresentation { ring, source_vars: ns, source_relations, target_relations, graph_relations })
    }

    /// Rows of the relative Jacobian of component `c`, in the ring of `A_c`:
    /// derivatives of the relations of `I_c` followed by `-∂φ_i`.
    pub fn jacobian(&self, c: usize) -> Result<Vec<Vec<Poly>>> {
        let tgt = &self.target.components[c];
        let n = tgt.nvars();
        let mut rows = Vec::new();
        for g in tgt.ideal.generators() {
            rows.push((0..n).map(|j| g.partial_derivative(j)).collect::<Result<Vec<_>>>()?);
        }
        for phi in &self.routing[c].images {
            rows.push((0..n).map(|j| Ok(-&phi.partial_derivative(j)?)).collect::<Result<Vec<_>>>()?);
        }
        Ok(rows)
    }
}

/// `A_c = k[y, x]/(I_B(y) + I_c(x) + (y - φ(x)))` with the source variables first.
#[derive(Clone, Debug)]
pub struct GraphPresentation {
    pub ring: Arc<PolyRing>,
    pub source_vars: usize,
    pub source_relations: Vec<Poly>,
    pub target_relations: Vec<Poly>,
    pub graph_relations: Vec<Poly>,
}

impl GraphPresentation {
    /// `I_c(x) + (y - φ(x))`; the source relations are implied.
    pub fn relative_ideal(&self) -> Result<Ideal> {
        Ideal::new(&self.ring, self.target_relations.iter().chain(&self.graph_relations).cloned().collect())
    }

    pub fn full_ideal(&self) -> Result<Ideal> {
        Ideal::new(
            &self.ring,
            self.source_relations.iter().chain(&self.target_relations).chain(&self.graph_relations).cloned().collect(),
        )
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Determinant by cofactor expansion along the first row.
pub fn determinant(m: &[Vec<Poly>], ring: &Arc<PolyRing>) -> Result<Poly> {
    let n = m.len();
    if n == 0 {
        return Ok(Poly::one(ring));
    }
    let cols: Vec<usize> = (0..n).collect();
    det_rec(m, 0, &cols, ring)
}

fn det_rec(m: &[Vec<Poly>], row: usize, cols: &[usize], ring: &Arc<PolyRing>) -> Result<Poly> {
    if cols.len() == 1 {
        return Ok(m[row][cols[0]].clone());
    }
    let mut acc = Poly::zero(ring);
    for (k, &c) in cols.iter().enumerate() {
        if m[row][c].is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = m[row][c].checked_mul(&det_rec(m, row + 1, &rest, ring)?)?;
        acc = if k % 2 == 0 { acc.checked_add(&term)? } else { acc.checked_sub(&term)? };
    }
    Ok(acc)
}

/// Nonzero `size × size` minors of `m`, reduced modulo `basis`. Duplicates
/// are removed.
pub fn minors(m: &[Vec<Poly>], ncols: usize, size: usize, basis: &GroebnerBasis) -> Result<Vec<Poly>> {
    let ring = basis.ring();
    if size == 0 {
        return Ok(vec![Poly::one(ring)]);
    }
    if size > m.len() || size > ncols {
        return Ok(Vec::new());
    }
    let mut out: Vec<Poly> = Vec::new();
    for rows in combinations(m.len(), size) {
        for cols in combinations(ncols, size) {
            let sub: Vec<Vec<Poly>> = rows.iter().map(|&r| cols.iter().map(|&c| m[r][c].clone()).collect()).collect();
            let d = basis.normal_form(&determinant(&sub, ring)?)?;
            if !d.is_zero() && !out.contains(&d) {
                out.push(d);
            }
        }
    }
    Ok(out)
}

/// `Ω_{A_c/B}` for every component, presented as the cokernel of the
/// transposed relative Jacobian on the free module with basis `dx_j`.
#[derive(Clone, Debug)]
pub struct DifferentialsPresentation {
    pub components: Vec<ComponentDifferentials>,
}

#[derive(Clone, Debug)]
pub struct ComponentDifferentials {
    pub component: Component,
    pub jacobian: Vec<Vec<Poly>>,
}

impl ComponentDifferentials {
    pub fn ngens(&self) -> usize {
        self.component.nvars()
    }

    /// `Fit_k = I_c + (n-k)`-minors, as an ideal of `k[x]`.
    pub fn fitting_ideal(&self, k: usize) -> Result<Ideal> {
        let n = self.ngens();
        let gens = if k >= n {
            vec![Poly::one(self.component.ring())]
        } else {
            minors(&self.jacobian, n, n - k, &self.component.basis)?
        };
        self.component.ideal.with_generators(gens)
    }

    /// `Ω = 0` on this component iff `Fit_0` is the unit ideal.
    pub fn vanishes(&self, budget: &Budget) -> Result<bool> {
        Ok(self.fitting_ideal(0)?.groebner(budget)?.is_unit())
    }
}

impl DifferentialsPresentation {
    pub fn vanishes(&self, budget: &Budget) -> Result<bool> {
        for c in &self.components {
            if !c.vanishes(budget)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn kahler_differentials(f: &RingMap) -> Result<DifferentialsPresentation> {
    let components = (0..f.target.components.len())
        .map(|c| Ok(ComponentDifferentials { component: f.target.components[c].clone(), jacobian: f.jacobian(c)? }))
        .collect::<Result<Vec<_>>>()?;
    Ok(DifferentialsPresentation { components })
}

/// `ker(B_s → A_c)` as an ideal of the ring of the source component.
pub fn component_kernel(f: &RingMap, c: usize, budget: &Budget) -> Result<Ideal> {
    let g = f.graph(c)?;
    let nx = f.target.components[c].nvars();
    let drop: Vec<usize> = (g.source_vars..g.source_vars + nx).collect();
    let elim = eliminate(&g.full_ideal()?, &drop, budget)?;
    let src = &f.source.components[f.routing[c].source];
    let ident: Vec<usize> = (0..src.nvars()).collect();
    Ideal::new(src.ring(), elim.generators().iter().map(|p| p.map_variables(src.ring(), &ident)).collect())
}

/// Kernel of `B → A` per source component: the intersection of the kernels
/// towards the target components it feeds, or the unit ideal if it feeds none.
pub fn map_kernel(f: &RingMap, budget: &Budget) -> Result<Vec<Ideal>> {
    let mut out = Vec::with_capacity(f.source.components.len());
    for (s, src) in f.source.components.iter().enumerate() {
        let mut acc: Option<Ideal> = None;
        for c in (0..f.routing.len()).filter(|&c| f.routing[c].source == s) {
            let k = component_kernel(f, c, budget)?;
            acc = Some(match acc {
                None => k,
                Some(a) => intersect(&a, &k, budget)?,
            });
        }
        out.push(acc.unwrap_or_else(|| Ideal::unit(src.ring())));
    }
    Ok(out)
}

/// A rational point of one source component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberPoint {
    pub component: usize,
    pub coords: Vec<FieldElem>,
}

/// `A ⊗_B k(p)`: each component fed from the point's factor becomes
/// `k[x]/(I_c + (φ_i - p_i))`; empty fibers vanish from the product.
pub fn fiber_algebra(f: &RingMap, point: &FiberPoint, budget: &Budget) -> Result<PresentedAlgebra> {
    let Some(src) = f.source.components.get(point.component) else {
        return Err(Error::PointNotOnSpec(format!("no source component {}", point.component + 1)));
    };
    if point.coords.len() != src.nvars() {
        return Err(Error::PointNotOnSpec(format!("expected {} coordinates, got {}", src.nvars(), point.coords.len())));
    }
    if let Some(c) = point.coords.iter().find(|c| c.field() != f.source.field) {
        return Err(Error::FieldMismatch(f.source.field.to_string(), c.field().to_string()));
    }
    for g in src.ideal.generators() {
        if !g.evaluate(&point.coords)?.is_zero() {
            return Err(Error::PointNotOnSpec(format!("relation {g} does not vanish")));
        }
    }
    let mut comps = Vec::new();
    for (c, img) in f.routing.iter().enumerate() {
        if img.source != point.component {
            continue;
        }
        let tgt = &f.target.components[c];
        let extra = img
            .images
            .iter()
            .zip(&point.coords)
            .map(|(phi, p)| phi - &Poly::constant(tgt.ring(), p.clone()));
        let ideal = tgt.ideal.with_generators(extra)?;
        let basis = ideal.groebner(budget)?;
        if !basis.is_unit() {
            comps.push(Component { ideal, basis });
        }
    }
    PresentedAlgebra::new(f.target.field.clone(), comps)
}

fn primed(name: &str) -> String {
    format!("{name}'")
}

fn disjoint_names(left: &[String], right: &[String]) -> Vec<String> {
    let mut out: Vec<String> = left.to_vec();
    for v in right {
        let mut name = v.clone();
        while out.contains(&name) {
            name.push_str("_2");
        }
        out.push(name);
    }
    out
}

/// `A ⊗_B A`, one component per pair `(c, d)` fed from the same source
/// factor whose ideal is proper.
#[derive(Clone, Debug)]
pub struct Enveloping {
    pub algebra: PresentedAlgebra,
    /// The pair `(c, d)` behind each component; the left copy uses the
    /// first `n_c` variables.
    pub pairs: Vec<(usize, usize)>,
}

pub fn tensor_over_base(f: &RingMap, budget: &Budget) -> Result<Enveloping> {
    let a = &f.target;
    let mut comps = Vec::new();
    let mut pairs = Vec::new();
    for c in 0..a.components.len() {
        for d in 0..a.components.len() {
            if f.routing[c].source != f.routing[d].source {
                continue;
            }
            let (ac, ad) = (&a.components[c], &a.components[d]);
            let (nc, nd) = (ac.nvars(), ad.nvars());
            let mut names = ac.ring().vars().to_vec();
            names.extend(ad.ring().vars().iter().map(|v| primed(v)));
            let names = disjoint_names(&names[..nc], &names[nc..]);
            let ring = PolyRing::new(a.field.clone(), names, MonomialOrder::GrevLex);
            let left: Vec<usize> = (0..nc).collect();
            let right: Vec<usize> = (nc..nc + nd).collect();
            let mut gens: Vec<Poly> = ac.ideal.generators().iter().map(|g| g.map_variables(&ring, &left)).collect();
            gens.extend(ad.ideal.generators().iter().map(|g| g.map_variables(&ring, &right)));
            for (p, q) in f.routing[c].images.iter().zip(&f.routing[d].images) {
                gens.push(&p.map_variables(&ring, &left) - &q.map_variables(&ring, &right));
            }
            let ideal = Ideal::new(&ring, gens)?;
            let basis = ideal.groebner(budget)?;
            if !basis.is_unit() {
                comps.push(Component { ideal, basis });
                pairs.push((c, d));
            }
        }
    }
    Ok(Enveloping { algebra: PresentedAlgebra::new(a.field.clone(), comps)?, pairs })
}

/// `J = ker(A ⊗_B A → A)` per component of the enveloping algebra, each
/// with a certified basis of `I + J`.
#[derive(Clone, Debug)]
pub struct MultKernel {
    pub enveloping: Enveloping,
    pub ideals: Vec<Ideal>,
    pub bases: Vec<GroebnerBasis>,
}

impl MultKernel {
    /// Whether `J` is zero in `A ⊗_B A`, i.e. `A ⊗_B A → A` is injective.
    pub fn is_zero(&self) -> Result<bool> {
        for (k, j) in self.ideals.iter().enumerate() {
            let comp = &self.enveloping.algebra.components[k];
            for g in j.generators() {
                if !comp.reduce(g)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

pub fn mult_kernel(f: &RingMap, budget: &Budget) -> Result<MultKernel> {
    let enveloping = tensor_over_base(f, budget)?;
    let mut ideals = Vec::new();
    let mut bases = Vec::new();
    for (k, &(c, d)) in enveloping.pairs.iter().enumerate() {
        let comp = &enveloping.algebra.components[k];
        let ring = comp.ring();
        let j = if c == d {
            let n = f.target.components[c].nvars();
            Ideal::new(ring, (0..n).map(|i| &Poly::var(ring, i) - &Poly::var(ring, n + i)).collect())?
        } else {
            Ideal::unit(ring)
        };
        bases.push(comp.ideal.sum(&j)?.groebner(budget)?);
        ideals.push(j);
    }
    Ok(MultKernel { enveloping, ideals, bases })
}

/// `f ⊗_k g : B ⊗_k D → A ⊗_k C`. Variables clashing between the factors
/// are renamed with a `_2` suffix. Flatness is inherited from the factors.
pub fn tensor_over_k(f: &RingMap, g: &RingMap, budget: &Budget) -> Result<RingMap> {
    if f.source.field != g.source.field {
        return Err(Error::FieldMismatch(f.source.field.to_string(), g.source.field.to_string()));
    }
    let field = f.source.field.clone();
    let combine = |p: &Component, q: &Component| -> Result<(Component, Vec<usize>, Vec<usize>)> {
        let (np, nq) = (p.nvars(), q.nvars());
        let names = disjoint_names(p.ring().vars(), q.ring().vars());
        let ring = PolyRing::new(field.clone(), names, MonomialOrder::GrevLex);
        let left: Vec<usize> = (0..np).collect();
        let right: Vec<usize> = (np..np + nq).collect();
        let mut gens: Vec<Poly> = p.ideal.generators().iter().map(|h| h.map_variables(&ring, &left)).collect();
        gens.extend(q.ideal.generators().iter().map(|h| h.map_variables(&ring, &right)));
        Ok((Component::new(Ideal::new(&ring, gens)?, budget)?, left, right))
    };
    let nd = g.source.components.len();
    let mut source_comps = Vec::new();
    for s in &f.source.components {
        for t in &g.source.components {
            source_comps.push(combine(s, t)?.0);
        }
    }
    let mut target_comps = Vec::new();
    let mut routing = Vec::new();
    for (c, ac) in f.target.components.iter().enumerate() {
        for (d, cd) in g.target.components.iter().enumerate() {
            let (comp, left, right) = combine(ac, cd)?;
            let ring = comp.ring().clone();
            let (s, t) = (f.routing[c].source, g.routing[d].source);
            let mut images: Vec<Poly> = f.routing[c].images.iter().map(|p| p.map_variables(&ring, &left)).collect();
            images.extend(g.routing[d].images.iter().map(|p| p.map_variables(&ring, &right)));
            target_comps.push(comp);
            routing.push(ComponentImage { source: s * nd + t, images });
        }
    }
    let source = PresentedAlgebra::new(field.clone(), source_comps)?;
    let target = PresentedAlgebra::new(field, target_comps)?;
    let mut out = RingMap::new(source, target, routing)?;
    out.flatness = FlatnessMode::Tensor(Box::new(f.clone()), Box::new(g.clone()));
    Ok(out)
}
