//! Relative homological algebra for finite-dimensional commutative algebras:
//! induced modules, relative projectivity, the standard splicing resolution,
//! relative projective dimension and Tor, `cdim`, and the relative bar
//! complex computing `HH_*(A|B)`.

use std::collections::HashMap;

use rand::Rng;
use serde::Serialize;

use crate::algebra::PresentedAlgebra;
use crate::error::{Error, Result};
use crate::extnat::ExtendedNat;
use crate::field::{Field, FieldElem};
use crate::linalg::{add_scaled, is_zero_vector, unit_vector, zero_vector, EchelonSpan, Matrix, QuotientSpace, Vector};
use crate::poly::{Monomial, Poly};

/// A commutative, associative, unital algebra given by structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FDAlgebra {
    field: Field,
    labels: Vec<String>,
    /// `table[i][j]` holds the coordinates of `e_i e_j`.
    table: Vec<Vec<Vector>>,
    unit: Vector,
    /// Basis indices generating the algebra; linearity with respect to
    /// these suffices for linearity over the whole algebra.
    generators: Vec<usize>,
}

impl FDAlgebra {
    pub fn new(field: &Field, labels: Vec<String>, table: Vec<Vec<Vector>>, unit: Vector) -> Result<FDAlgebra> {
        let d = labels.len();
        let shape_ok = table.len() == d
            && unit.len() == d
            && table.iter().all(|row| row.len() == d && row.iter().all(|v| v.len() == d));
        if !shape_ok {
            return Err(Error::InvalidFd(format!("structure constants do not match dimension {d}")));
        }
        let mut a = FDAlgebra { field: field.clone(), labels, table, unit, generators: Vec::new() };
        a.validate()?;
        a.generators = a.find_generators();
        Ok(a)
    }

    fn find_generators(&self) -> Vec<usize> {
        let d = self.dim();
        let mut span = closure(self, vec![self.unit.clone()]);
        let mut gens = Vec::new();
        for i in 0..d {
            if span.len() == d {
                break;
            }
            let e = unit_vector(&self.field, d, i);
            if !in_span(&self.field, d, &span, &e) {
                gens.push(i);
                span.push(e);
                span = closure(self, span);
            }
        }
        gens
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    fn validate(&self) -> Result<()> {
        let d = self.dim();
        for i in 0..d {
            let e = unit_vector(&self.field, d, i);
            if self.mul(&self.unit, &e) != e {
                return Err(Error::InvalidFd(format!("unit law fails on {}", self.labels[i])));
            }
            for j in 0..d {
                if self.table[i][j] != self.table[j][i] {
                    return Err(Error::InvalidFd(format!(
                        "{} and {} do not commute",
                        self.labels[i], self.labels[j]
                    )));
                }
                for k in 0..d {
                    let left = self.mul(&self.table[i][j], &unit_vector(&self.field, d, k));
                    let right = self.mul(&unit_vector(&self.field, d, i), &self.table[j][k]);
                    if left != right {
                        return Err(Error::InvalidFd(format!(
                            "associativity fails on ({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &Vector {
        &self.table[i][j]
    }

    pub fn mul(&self, a: &[FieldElem], b: &[FieldElem]) -> Vector {
        let mut out = zero_vector(&self.field, self.dim());
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                add_scaled(&mut out, &(x * y), &self.table[i][j]);
            }
        }
        out
    }

    /// Matrix of `v ↦ a v`.
    pub fn left_mult(&self, a: &[FieldElem]) -> Matrix {
        let d = self.dim();
        let cols: Vec<Vector> = (0..d).map(|j| self.mul(a, &unit_vector(&self.field, d, j))).collect();
        Matrix::from_columns(&self.field, d, &cols)
    }

    /// `A ⊗_B A` together with the quotient of `A ⊗_k A` it is built from
    /// (ambient index `i·d + j` for `e_i ⊗ e_j`).
    pub fn enveloping(b: &FDSubalgebra) -> Result<(FDAlgebra, QuotientSpace)> {
        let a = &b.parent;
        let d = a.dim();
        let f = &a.field;
        let mut relations = Vec::new();
        for bl in &b.basis {
            for i in 0..d {
                let left = a.mul(&unit_vector(f, d, i), bl);
                for j in 0..d {
                    let right = a.mul(bl, &unit_vector(f, d, j));
                    let mut v = zero_vector(f, d * d);
                    for u in 0..d {
                        if !left[u].is_zero() {
                            v[u * d + j] = &v[u * d + j] + &left[u];
                        }
                        if !right[u].is_zero() {
                            v[i * d + u] = &v[i * d + u] - &right[u];
                        }
                    }
                    relations.push(v);
                }
            }
        }
        let space = QuotientSpace::new(f, d * d, relations);
        let n = space.dim();
        let pure = |x: &[FieldElem], y: &[FieldElem]| -> Vector {
            let mut v = zero_vector(f, d * d);
            for (u, xu) in x.iter().enumerate() {
                for (w, yw) in y.iter().enumerate() {
                    if !xu.is_zero() && !yw.is_zero() {
                        v[u * d + w] = xu * yw;
                    }
                }
            }
            v
        };
        let split = |s: usize| (space.lift_index(s) / d, space.lift_index(s) % d);
        let mut table = Vec::with_capacity(n);
        for s in 0..n {
            let (a1, b1) = split(s);
            let mut row = Vec::with_capacity(n);
            for t in 0..n {
                let (a2, b2) = split(t);
                row.push(space.project(&pure(&a.table[a1][a2], &a.table[b1][b2])));
            }
            table.push(row);
        }
        let unit = space.project(&pure(&a.unit, &a.unit));
        let labels = (0..n)
            .map(|s| {
                let (x, y) = split(s);
                format!("{}|{}", a.labels[x], a.labels[y])
            })
            .collect();
        Ok((FDAlgebra::new(f, labels, table, unit)?, space))
    }
}

fn in_span(field: &Field, d: usize, basis: &[Vector], v: &[FieldElem]) -> bool {
    if is_zero_vector(v) {
        return true;
    }
    let mut rows = basis.to_vec();
    rows.push(v.to_vec());
    Matrix::from_rows(field, d, rows).rank() == basis.len()
}

/// A basis of the span of all products of the seeds, seeds included.
fn closure(parent: &FDAlgebra, seeds: Vec<Vector>) -> Vec<Vector> {
    let d = parent.dim();
    let mut basis: Vec<Vector> = Vec::new();
    for v in seeds {
        if !in_span(&parent.field, d, &basis, &v) {
            basis.push(v);
        }
    }
    loop {
        let mut grew = false;
        let current = basis.clone();
        for (i, x) in current.iter().enumerate() {
            for y in &current[i..] {
                let p = parent.mul(x, y);
                if !in_span(&parent.field, d, &basis, &p) {
                    basis.push(p);
                    grew = true;
                }
            }
        }
        if !grew {
            return basis;
        }
    }
}

/// A unital subalgebra, stored as a basis of vectors in the parent.
#[derive(Clone, Debug)]
pub struct FDSubalgebra {
    parent: FDAlgebra,
    basis: Vec<Vector>,
    algebra: FDAlgebra,
}

impl FDSubalgebra {
    /// The span of all products of `1` and the generators.
    pub fn generated_by(parent: &FDAlgebra, generators: &[Vector]) -> Result<FDSubalgebra> {
        let d = parent.dim();
        if generators.iter().any(|g| g.len() != d) {
            return Err(Error::InvalidFd(format!("generators must have {d} coordinates")));
        }
        let mut seeds = vec![parent.unit.clone()];
        seeds.extend(generators.iter().cloned());
        let basis = closure(parent, seeds);
        FDSubalgebra::from_basis(parent, basis)
    }

    pub fn scalars(parent: &FDAlgebra) -> FDSubalgebra {
        FDSubalgebra::generated_by(parent, &[]).expect("k is a subalgebra")
    }

    pub fn whole(parent: &FDAlgebra) -> FDSubalgebra {
        let d = parent.dim();
        let gens: Vec<Vector> = (0..d).map(|i| unit_vector(&parent.field, d, i)).collect();
        FDSubalgebra::generated_by(parent, &gens).expect("A is a subalgebra of itself")
    }

    fn from_basis(parent: &FDAlgebra, basis: Vec<Vector>) -> Result<FDSubalgebra> {
        let f = &parent.field;
        let d = parent.dim();
        let mat = Matrix::from_columns(f, d, &basis);
        let coords = |v: &Vector| -> Result<Vector> {
            mat.solve(v).ok_or_else(|| Error::InvalidFd("subspace is not closed under multiplication".into()))
        };
        let mut table = Vec::new();
        for x in &basis {
            let mut row = Vec::new();
            for y in &basis {
                row.push(coords(&parent.mul(x, y))?);
            }
            table.push(row);
        }
        let unit = coords(&parent.unit)?;
        let labels = (0..basis.len()).map(|i| format!("b{}", i + 1)).collect();
        let algebra = FDAlgebra::new(f, labels, table, unit)?;
        Ok(FDSubalgebra { parent: parent.clone(), basis, algebra })
    }

    pub fn parent(&self) -> &FDAlgebra {
        &self.parent
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Basis vectors in parent coordinates.
    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// The subalgebra on its own basis `b1, b2, ..`.
    pub fn as_algebra(&self) -> &FDAlgebra {
        &self.algebra
    }
}

/// A finite-dimensional module, one action matrix per algebra basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FDModule {
    field: Field,
    dim: usize,
    actions: Vec<Matrix>,
}

impl FDModule {
    /// Validates the unit law and `ρ(e_i) ρ(e_j) = ρ(e_i e_j)`.
    pub fn new(algebra: &FDAlgebra, dim: usize, actions: Vec<Matrix>) -> Result<FDModule> {
        if actions.len() != algebra.dim() {
            return Err(Error::InvalidFd(format!(
                "expected {} action matrices, got {}",
                algebra.dim(),
                actions.len()
            )));
        }
        if actions.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::InvalidFd(format!("action matrices must be {dim}x{dim}")));
        }
        let m = FDModule { field: algebra.field.clone(), dim, actions };
        if m.act(&algebra.unit) != Matrix::identity(&m.field, dim) {
            return Err(Error::InvalidFd("the unit does not act as the identity".into()));
        }
        for i in 0..algebra.dim() {
            for j in 0..algebra.dim() {
                if m.actions[i].mul(&m.actions[j]) != m.act(&algebra.table[i][j]) {
                    return Err(Error::InvalidFd(format!(
                        "action is not multiplicative on ({}, {})",
                        algebra.labels[i], algebra.labels[j]
                    )));
                }
            }
        }
        Ok(m)
    }

    pub fn regular(algebra: &FDAlgebra) -> FDModule {
        let d = algebra.dim();
        let actions = (0..d).map(|i| algebra.left_mult(&unit_vector(&algebra.field, d, i))).collect();
        FDModule { field: algebra.field.clone(), dim: d, actions }
    }

    /// `A^g` with the diagonal action.
    pub fn free(algebra: &FDAlgebra, rank: usize) -> FDModule {
        let d = algebra.dim();
        let f = &algebra.field;
        let actions = (0..d)
            .map(|i| {
                let l = algebra.left_mult(&unit_vector(f, d, i));
                let mut m = Matrix::zeros(f, d * rank, d * rank);
                for g in 0..rank {
                    for r in 0..d {
                        for c in 0..d {
                            m.set(g * d + r, g * d + c, l.get(r, c).clone());
                        }
                    }
                }
                m
            })
            .collect();
        FDModule { field: f.clone(), dim: d * rank, actions }
    }

    /// `M / N` where `N` is the submodule generated by the given vectors.
    pub fn quotient(&self, generators: &[Vector]) -> FDModule {
        let mut span = Vec::new();
        for v in generators {
            for a in &self.actions {
                span.push(a.apply(v));
            }
        }
        let space = QuotientSpace::new(&self.field, self.dim, span);
        let actions = self
            .actions
            .iter()
            .map(|a| space.induced_map(&space, |i| a.column(i)))
            .collect();
        FDModule { field: self.field.clone(), dim: space.dim(), actions }
    }

    /// `A / I` for the ideal generated by the given elements.
    pub fn cyclic_quotient(algebra: &FDAlgebra, generators: &[Vector]) -> FDModule {
        FDModule::regular(algebra).quotient(generators)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.actions
    }

    /// Action of an arbitrary algebra element.
    pub fn act(&self, a: &[FieldElem]) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.dim, self.dim);
        for (x, m) in a.iter().zip(&self.actions) {
            if !x.is_zero() {
                out = out.add(&m.scale(x));
            }
        }
        out
    }

    /// The same space viewed as a module over a subalgebra.
    pub fn restrict(&self, b: &FDSubalgebra) -> FDModule {
        let actions = b.basis.iter().map(|v| self.act(v)).collect();
        FDModule { field: self.field.clone(), dim: self.dim, actions }
    }

    /// Whether `map : self → other` commutes with every action.
    pub fn is_linear_map(&self, other: &FDModule, map: &Matrix) -> bool {
        self.actions.iter().zip(&other.actions).all(|(a, b)| map.mul(a) == b.mul(map))
    }
}

/// `A ⊗_B V` as a quotient of `A ⊗_k V` (ambient index `i·m + j`).
#[derive(Clone, Debug)]
pub struct Induced {
    pub module: FDModule,
    pub space: QuotientSpace,
    n: usize,
    m: usize,
}

impl Induced {
    /// `v ↦ 1 ⊗ v`, which is `B`-linear.
    pub fn unit_map(&self, algebra: &FDAlgebra) -> Matrix {
        let f = &algebra.field;
        let cols: Vec<Vector> = (0..self.m)
            .map(|j| {
                let mut v = zero_vector(f, self.n * self.m);
                for (i, u) in algebra.unit.iter().enumerate() {
                    v[i * self.m + j] = u.clone();
                }
                self.space.project(&v)
            })
            .collect();
        Matrix::from_columns(f, self.space.dim(), &cols)
    }

    /// `μ : A ⊗_B M → M`, `a ⊗ v ↦ a v`, for an `A`-module `M` whose
    /// restriction was induced.
    pub fn mult_map(&self, module: &FDModule) -> Matrix {
        let cols: Vec<Vector> = (0..self.space.dim())
            .map(|s| {
                let idx = self.space.lift_index(s);
                module.actions[idx / self.m].column(idx % self.m)
            })
            .collect();
        Matrix::from_columns(&module.field, module.dim, &cols)
    }
}

/// Induction along `B ⊆ A` of a module over `B` (actions indexed by the
/// subalgebra basis).
pub fn induce(b: &FDSubalgebra, v: &FDModule) -> Induced {
    let a = &b.parent;
    let f = &a.field;
    let (n, m) = (a.dim(), v.dim);
    let mut relations = Vec::new();
    for (l, bl) in b.basis.iter().enumerate() {
        for i in 0..n {
            let eb = a.mul(&unit_vector(f, n, i), bl);
            for j in 0..m {
                let mut rel = zero_vector(f, n * m);
                for (u, c) in eb.iter().enumerate() {
                    if !c.is_zero() {
                        rel[u * m + j] = c.clone();
                    }
                }
                let bv = v.actions[l].column(j);
                for (w, c) in bv.iter().enumerate() {
                    if !c.is_zero() {
                        rel[i * m + w] = &rel[i * m + w] - c;
                    }
                }
                relations.push(rel);
            }
        }
    }
    let space = QuotientSpace::new(f, n * m, relations);
    let actions = (0..n)
        .map(|k| {
            space.induced_map(&space, |idx| {
                let (i, j) = (idx / m, idx % m);
                let prod = &a.table[k][i];
                let mut out = zero_vector(f, n * m);
                for (u, c) in prod.iter().enumerate() {
                    if !c.is_zero() {
                        out[u * m + j] = c.clone();
                    }
                }
                out
            })
        })
        .collect();
    let module = FDModule { field: f.clone(), dim: space.dim(), actions };
    Induced { module, space, n, m }
}

/// An `A`-linear section of `μ_M : A ⊗_B M → M`, if one exists.
pub fn rel_projective_test(b: &FDSubalgebra, module: &FDModule) -> Option<Matrix> {
    let f = &b.parent.field;
    let ind = induce(b, &module.restrict(b));
    let mu = ind.mult_map(module);
    section_of(f, &b.parent, &ind.module, module, &mu)
}

/// Greedy `A`-module generators among the given vectors: each chosen vector
/// lies outside the submodule generated by the earlier ones.
fn module_generators(actions: &[Matrix], candidates: impl IntoIterator<Item = Vector>) -> Vec<Vector> {
    let mut span = EchelonSpan::new();
    let mut chosen = Vec::new();
    for v in candidates {
        if span.contains(&v) {
            continue;
        }
        for a in actions {
            span.insert(&a.apply(&v));
        }
        chosen.push(v);
    }
    chosen
}

/// Solves for an `A`-linear `s : M → P` with `μ s = 1`. The unknowns are the
/// images `v_i` of module generators `g_i` of `M`; `A`-linearity becomes
/// `Σ a_i v_i = 0` for generators `(a_i)` of the relation module.
fn section_of(f: &Field, algebra: &FDAlgebra, p: &FDModule, m: &FDModule, mu: &Matrix) -> Option<Matrix> {
    let (pd, md, n) = (p.dim, m.dim, algebra.dim());
    if md == 0 {
        return Some(Matrix::zeros(f, pd, 0));
    }
    let gens = module_generators(&m.actions, (0..md).map(|j| unit_vector(f, md, j)));
    let r = gens.len();
    // φ : A^r → M, (a_i) ↦ Σ a_i g_i, with index i·n + k for e_k in slot i.
    let cols: Vec<Vector> = (0..r * n).map(|idx| m.actions[idx % n].apply(&gens[idx / n])).collect();
    let phi = Matrix::from_columns(f, md, &cols);
    let free_actions: Vec<Matrix> = (0..n)
        .map(|k| {
            let l = algebra.left_mult(&unit_vector(f, n, k));
            let mut big = Matrix::zeros(f, r * n, r * n);
            for i in 0..r {
                for x in 0..n {
                    for y in 0..n {
                        big.set(i * n + x, i * n + y, l.get(x, y).clone());
                    }
                }
            }
            big
        })
        .collect();
    let relations = module_generators(&free_actions, phi.nullspace());
    let unknowns = r * pd;
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for rel in &relations {
        // Σ_i Σ_k rel[i·n + k] ρ_P(e_k) v_i = 0
        let mut block = vec![Matrix::zeros(f, pd, pd); r];
        for (idx, c) in rel.iter().enumerate() {
            if !c.is_zero() {
                block[idx / n] = block[idx / n].add(&p.actions[idx % n].scale(c));
            }
        }
        for row in 0..pd {
            let mut eq = zero_vector(f, unknowns);
            for (i, blk) in block.iter().enumerate() {
                for t in 0..pd {
                    eq[i * pd + t] = blk.get(row, t).clone();
                }
            }
            if !is_zero_vector(&eq) {
                rows.push(eq);
                rhs.push(f.zero());
            }
        }
    }
    for (i, g) in gens.iter().enumerate() {
        for row in 0..md {
            let mut eq = zero_vector(f, unknowns);
            for t in 0..pd {
                eq[i * pd + t] = mu.get(row, t).clone();
            }
            rows.push(eq);
            rhs.push(g[row].clone());
        }
    }
    let sol = Matrix::from_rows(f, unknowns, rows).solve(&rhs)?;
    let images: Vec<&[FieldElem]> = sol.chunks(pd).collect();
    // s(e_j) = Σ a_i v_i where e_j = Σ a_i g_i.
    let basis_coords = phi.solve_matrix(&Matrix::identity(f, md)).expect("generators span M");
    let cols: Vec<Vector> = (0..md)
        .map(|j| {
            let mut out = zero_vector(f, pd);
            for idx in 0..r * n {
                let c = basis_coords.get(idx, j);
                if !c.is_zero() {
                    add_scaled(&mut out, c, &p.actions[idx % n].apply(images[idx / n]));
                }
            }
            out
        })
        .collect();
    Some(Matrix::from_columns(f, pd, &cols))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "tag", content = "value", rename_all = "snake_case")]
pub enum ResolutionStatus {
    /// The kernel `K_{n+1}` was relatively projective.
    TerminatedAt(usize),
    /// No relatively projective kernel up to `K_{N+1}`.
    Cutoff(usize),
}

/// `0 → T_k → .. → T_0 → M → 0` with `T_i = A ⊗_B K_{i+1}` for `i < k` and
/// `T_k = K_{k+1}`, together with a contracting `B`-linear homotopy.
#[derive(Clone, Debug)]
pub struct RelResolution {
    pub module: FDModule,
    pub terms: Vec<FDModule>,
    /// `f_0 : T_0 → M`, then `f_i : T_i → T_{i-1}`.
    pub differentials: Vec<Matrix>,
    /// `h_{-1} : M → T_0`, then `h_i : T_i → T_{i+1}` for `i < k`.
    pub homotopies: Vec<Matrix>,
    pub status: ResolutionStatus,
}

impl RelResolution {
    pub fn length(&self) -> usize {
        self.terms.len() - 1
    }

    /// `finite(n)` if it terminated at `n`, `at_least(N+1)` if cut off at `N`.
    pub fn pd(&self) -> ExtendedNat {
        match self.status {
            ResolutionStatus::TerminatedAt(n) => ExtendedNat::Finite(n as u64),
            ResolutionStatus::Cutoff(n) => ExtendedNat::AtLeast(n as u64 + 1),
        }
    }

    /// `f_i ∘ f_{i+1} = 0` for every `i`.
    pub fn is_complex(&self) -> bool {
        self.differentials.windows(2).all(|w| w[0].mul(&w[1]).is_zero())
    }

    /// `f_0 h_{-1} = 1` on `M` and `f_{i+1} h_i + h_{i-1} f_i = 1` on each term.
    pub fn is_contracted(&self) -> bool {
        let f = self.module.field.clone();
        if self.differentials[0].mul(&self.homotopies[0]) != Matrix::identity(&f, self.module.dim) {
            return false;
        }
        let k = self.length();
        (0..=k).all(|i| {
            let mut sum = self.homotopies[i].mul(&self.differentials[i]);
            if i < k {
                sum = sum.add(&self.differentials[i + 1].mul(&self.homotopies[i + 1]));
            }
            sum == Matrix::identity(&f, self.terms[i].dim)
        })
    }

    /// The differentials are `A`-linear and the homotopies `B`-linear.
    pub fn is_linear(&self, b: &FDSubalgebra) -> bool {
        let k = self.length();
        let source = |i: usize| &self.terms[i];
        let target = |i: usize| if i == 0 { &self.module } else { &self.terms[i - 1] };
        let diffs_ok = (0..=k).all(|i| source(i).is_linear_map(target(i), &self.differentials[i]));
        let hom_ok = (0..=k).all(|i| {
            let from = target(i).restrict(b);
            let to = source(i).restrict(b);
            from.is_linear_map(&to, &self.homotopies[i])
        });
        diffs_ok && hom_ok
    }
}

/// Splices `0 → K_{i+2} → A ⊗_B K_{i+1} → K_{i+1} → 0` starting from
/// `K_1 = M`, stopping at the first relatively projective kernel or after
/// testing `K_{N+1}`.
pub fn standard_resolution(b: &FDSubalgebra, module: &FDModule, cutoff: usize) -> RelResolution {
    let f = b.parent.field.clone();
    let mut terms = Vec::new();
    let mut differentials = Vec::new();
    let mut homotopies = Vec::new();
    let mut kernel = module.clone();
    let mut inclusion = Matrix::identity(&f, module.dim);
    let mut retraction: Option<Matrix> = None;
    let mut status = ResolutionStatus::Cutoff(cutoff);
    for i in 0..=cutoff {
        if rel_projective_test(b, &kernel).is_some() {
            status = ResolutionStatus::TerminatedAt(i);
            break;
        }
        if i == cutoff {
            break;
        }
        let ind = induce(b, &kernel.restrict(b));
        let mu = ind.mult_map(&kernel);
        let sigma = ind.unit_map(&b.parent);
        let p = ind.module;
        differentials.push(inclusion.mul(&mu));
        homotopies.push(match &retraction {
            None => sigma.clone(),
            Some(r) => sigma.mul(r),
        });
        let iota = Matrix::from_columns(&f, p.dim, &mu.nullspace());
        let actions: Vec<Matrix> = p
            .actions
            .iter()
            .map(|a| iota.solve_matrix(&a.mul(&iota)).expect("the kernel of μ is a submodule"))
            .collect();
        let complement = Matrix::identity(&f, p.dim).sub(&sigma.mul(&mu));
        let pi = iota.solve_matrix(&complement).expect("p - σμ(p) lies in the kernel");
        kernel = FDModule { field: f.clone(), dim: iota.cols(), actions };
        terms.push(p);
        inclusion = iota;
        retraction = Some(pi);
    }
    terms.push(kernel);
    differentials.push(inclusion);
    homotopies.push(retraction.unwrap_or_else(|| Matrix::identity(&f, module.dim)));
    RelResolution { module: module.clone(), terms, differentials, homotopies, status }
}

pub fn rel_pd(b: &FDSubalgebra, module: &FDModule, cutoff: usize) -> ExtendedNat {
    standard_resolution(b, module, cutoff).pd()
}

/// Graded spaces with boundaries `d_p : C_p → C_{p-1}` for `p ≥ 1`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub dims: Vec<usize>,
    /// `boundaries[p - 1]` is `d_p`.
    pub boundaries: Vec<Matrix>,
}

impl ChainComplex {
    pub fn is_complex(&self) -> bool {
        self.boundaries.windows(2).all(|w| w[0].mul(&w[1]).is_zero())
    }

    /// `dim ker d_p - rank d_{p+1}`; the top degree has no incoming boundary.
    pub fn homology(&self, p: usize) -> usize {
        let out_rank = if p == 0 { 0 } else { self.boundaries[p - 1].rank() };
        let in_rank = self.boundaries.get(p).map_or(0, |d| d.rank());
        self.dims[p] - out_rank - in_rank
    }
}

/// `M ⊗_A N` as a quotient of `M ⊗_k N` (ambient index `i·dim N + j`).
pub fn tensor_over(m: &FDModule, n: &FDModule) -> QuotientSpace {
    let f = &m.field;
    let (dm, dn) = (m.dim, n.dim);
    let mut relations = Vec::new();
    for (am, an) in m.actions.iter().zip(&n.actions) {
        for i in 0..dm {
            for j in 0..dn {
                let mut v = zero_vector(f, dm * dn);
                for u in 0..dm {
                    let c = am.get(u, i);
                    if !c.is_zero() {
                        v[u * dn + j] = c.clone();
                    }
                }
                for w in 0..dn {
                    let c = an.get(w, j);
                    if !c.is_zero() {
                        v[i * dn + w] = &v[i * dn + w] - c;
                    }
                }
                relations.push(v);
            }
        }
    }
    QuotientSpace::new(f, dm * dn, relations)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorDegree {
    pub degree: usize,
    /// `None` when the resolution was cut off at or below this degree.
    pub dim: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorResult {
    pub degrees: Vec<TorDegree>,
    pub status: ResolutionStatus,
}

/// `Tor^{(A,B)}_i(M, N)` for `i = 0..=max_degree` from the standard
/// resolution of `N`.
pub fn rel_tor(b: &FDSubalgebra, right: &FDModule, module: &FDModule, max_degree: usize, cutoff: usize) -> TorResult {
    let res = standard_resolution(b, module, cutoff);
    let complex = tensored_complex(right, &res);
    let k = res.length();
    let cut = matches!(res.status, ResolutionStatus::Cutoff(_));
    let degrees = (0..=max_degree)
        .map(|i| {
            let dim = if cut && i >= k {
                None
            } else if i > k {
                Some(0)
            } else {
                Some(complex.homology(i))
            };
            TorDegree { degree: i, dim }
        })
        .collect();
    TorResult { degrees, status: res.status }
}

/// `M ⊗_A T_•` for a resolution `T_•`.
pub fn tensored_complex(right: &FDModule, res: &RelResolution) -> ChainComplex {
    let spaces: Vec<QuotientSpace> = res.terms.iter().map(|t| tensor_over(right, t)).collect();
    let dims = spaces.iter().map(|s| s.dim()).collect();
    let dm = right.dim;
    let boundaries = (1..res.terms.len())
        .map(|i| {
            let (src, dst) = (&spaces[i], &spaces[i - 1]);
            let d = &res.differentials[i];
            let (sn, tn) = (res.terms[i].dim, res.terms[i - 1].dim);
            src.induced_map(dst, |idx| {
                let (a, j) = (idx / sn, idx % sn);
                let mut v = zero_vector(&right.field, dm * tn);
                for (c, x) in d.column(j).into_iter().enumerate() {
                    v[a * tn + c] = x;
                }
                v
            })
        })
        .collect();
    ChainComplex { dims, boundaries }
}

/// The pair `(A ⊗_B A, 1 ⊗ A)` and `A` as a module over `A ⊗_B A`.
pub struct EnvelopingPair {
    pub algebra: FDAlgebra,
    pub subalgebra: FDSubalgebra,
    pub module: FDModule,
}

pub fn enveloping_pair(b: &FDSubalgebra) -> Result<EnvelopingPair> {
    let a = &b.parent;
    let d = a.dim();
    let (r, space) = FDAlgebra::enveloping(b)?;
    let right: Vec<Vector> = (0..d)
        .map(|j| {
            let mut v = zero_vector(&a.field, d * d);
            for (i, u) in a.unit.iter().enumerate() {
                v[i * d + j] = u.clone();
            }
            space.project(&v)
        })
        .collect();
    let subalgebra = FDSubalgebra::generated_by(&r, &right)?;
    let actions = (0..r.dim())
        .map(|s| {
            let idx = space.lift_index(s);
            a.left_mult(&a.table[idx / d][idx % d])
        })
        .collect();
    let module = FDModule::new(&r, d, actions)?;
    Ok(EnvelopingPair { algebra: r, subalgebra, module })
}

/// `cdim(A, B) = pd_{(A ⊗_B A, A)} A`.
pub fn cdim_fd(b: &FDSubalgebra, cutoff: usize) -> Result<ExtendedNat> {
    let pair = enveloping_pair(b)?;
    Ok(rel_pd(&pair.subalgebra, &pair.module, cutoff))
}

/// Default bound on the ambient dimension `(dim A)^{n+1}` of a bar chain space.
pub const DEFAULT_CHAIN_LIMIT: usize = 1 << 14;

/// The relative cyclic bar complex `C_p = (A^{⊗_B (p+1)})_B` in degrees
/// `0..=top`, with the Hochschild boundary.
pub fn rel_bar_complex(b: &FDSubalgebra, top: usize, chain_limit: usize) -> Result<ChainComplex> {
    let a = &b.parent;
    let d = a.dim();
    let f = &a.field;
    let mut spaces: Vec<QuotientSpace> = Vec::new();
    for p in 0..=top {
        let ambient = (d as u128).pow(p as u32 + 1);
        if ambient > chain_limit as u128 {
            return Err(Error::ChainBudget { degree: p, limit: chain_limit, computed: p.checked_sub(1) });
        }
        spaces.push(QuotientSpace::new(f, ambient as usize, bar_relations(b, p)));
    }
    let mut boundaries = Vec::new();
    for p in 1..=top {
        let d_p = spaces[p].induced_map(&spaces[p - 1], |idx| hochschild_boundary(a, p, idx));
        boundaries.push(d_p);
    }
    let complex = ChainComplex { dims: spaces.iter().map(|s| s.dim()).collect(), boundaries };
    if !complex.is_complex() {
        return Err(Error::InvalidFd("bar boundary does not square to zero".into()));
    }
    Ok(complex)
}

fn digits(idx: usize, d: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    let mut x = idx;
    for slot in out.iter_mut().rev() {
        *slot = x % d;
        x /= d;
    }
    out
}

fn index_of(t: &[usize], d: usize) -> usize {
    t.iter().fold(0, |acc, &x| acc * d + x)
}

/// Adds `c · (t with position `pos` replaced by the vector `v`)`.
fn add_replaced(out: &mut [FieldElem], t: &[usize], pos: usize, v: &[FieldElem], c: &FieldElem, d: usize) {
    let mut t = t.to_vec();
    for (u, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        t[pos] = u;
        let i = index_of(&t, d);
        out[i] = &out[i] + &(c * x);
    }
}

fn bar_relations(b: &FDSubalgebra, p: usize) -> Vec<Vector> {
    let a = &b.parent;
    let d = a.dim();
    let f = &a.field;
    let len = p + 1;
    let ambient = d.pow(len as u32);
    let one = f.one();
    let minus = -&one;
    let mut out = Vec::new();
    for bl in &b.basis {
        // Multiples of the unit give trivial relations.
        if Matrix::from_rows(f, d, vec![bl.clone(), a.unit.clone()]).rank() < 2 {
            continue;
        }
        for idx in 0..ambient {
            let t = digits(idx, d, len);
            for pos in 0..p {
                let mut v = zero_vector(f, ambient);
                add_replaced(&mut v, &t, pos, &a.mul(&unit_vector(f, d, t[pos]), bl), &one, d);
                add_replaced(&mut v, &t, pos + 1, &a.mul(bl, &unit_vector(f, d, t[pos + 1])), &minus, d);
                out.push(v);
            }
            let mut v = zero_vector(f, ambient);
            add_replaced(&mut v, &t, 0, &a.mul(bl, &unit_vector(f, d, t[0])), &one, d);
            add_replaced(&mut v, &t, p, &a.mul(&unit_vector(f, d, t[p]), bl), &minus, d);
            out.push(v);
        }
    }
    out
}

fn hochschild_boundary(a: &FDAlgebra, p: usize, idx: usize) -> Vector {
    let d = a.dim();
    let f = &a.field;
    let t = digits(idx, d, p + 1);
    let mut out = zero_vector(f, d.pow(p as u32));
    let sign = |i: usize| if i.is_multiple_of(2) { f.one() } else { -&f.one() };
    for i in 0..p {
        let mut short: Vec<usize> = t[..i].to_vec();
        short.push(0);
        short.extend_from_slice(&t[i + 2..]);
        add_replaced(&mut out, &short, i, &a.table[t[i]][t[i + 1]], &sign(i), d);
    }
    let mut short: Vec<usize> = vec![0];
    short.extend_from_slice(&t[1..p]);
    add_replaced(&mut out, &short, 0, &a.table[t[p]][t[0]], &sign(p), d);
    out
}

/// `dim HH_p(A|B)` for `p = 0..=n`.
pub fn rel_bar_homology(b: &FDSubalgebra, n: usize, chain_limit: usize) -> Result<Vec<usize>> {
    let complex = rel_bar_complex(b, n + 1, chain_limit)?;
    Ok((0..=n).map(|p| complex.homology(p)).collect())
}

/// A random cyclic-or-two-generated quotient of a free module, of
/// dimension between 1 and `max_dim`.
pub fn random_module<R: Rng>(algebra: &FDAlgebra, max_dim: usize, rng: &mut R) -> FDModule {
    let f = &algebra.field;
    let d = algebra.dim();
    assert!(max_dim >= 1 && d >= 1, "need a nonzero algebra and max_dim >= 1");
    loop {
        let rank = rng.gen_range(1..=2);
        let free = FDModule::free(algebra, rank);
        let count = rng.gen_range(0..=free.dim);
        let gens: Vec<Vector> = (0..count)
            .map(|_| (0..free.dim).map(|_| f.from_i64(rng.gen_range(-2..=2))).collect())
            .collect();
        let m = free.quotient(&gens);
        if (1..=max_dim).contains(&m.dim) {
            return m;
        }
    }
}

/// A zero-dimensional presented algebra as structure constants, with the
/// bookkeeping to translate polynomials into coordinates.
#[derive(Clone, Debug)]
pub struct FdPresentation {
    pub algebra: FDAlgebra,
    pub presentation: PresentedAlgebra,
    /// Standard monomials of each component.
    pub standard: Vec<Vec<Monomial>>,
    /// Index of each component's first basis vector.
    pub offsets: Vec<usize>,
}

impl FdPresentation {
    /// Coordinates of `p` (a polynomial in component `c`'s ring), supported
    /// on that component.
    pub fn element_of(&self, c: usize, p: &Poly) -> Result<Vector> {
        let comp = self.presentation.component(c);
        let nf = comp.reduce(p)?;
        let mut v = zero_vector(&self.algebra.field, self.algebra.dim());
        for (m, x) in nf.terms() {
            let i = self.standard[c].iter().position(|s| s == m).expect("normal forms use standard monomials");
            v[self.offsets[c] + i] = x.clone();
        }
        Ok(v)
    }

    /// The idempotent of component `c`.
    pub fn idempotent(&self, c: usize) -> Vector {
        let one = Poly::one(self.presentation.component(c).ring());
        self.element_of(c, &one).expect("1 reduces")
    }

    /// A module given by matrices for each variable of each component and,
    /// for products, the idempotents. Validated against all relations.
    pub fn module_from_generators(&self, idempotents: &[Matrix], variables: &[Vec<Matrix>]) -> Result<FDModule> {
        let ncomp = self.standard.len();
        let dim = variables
            .iter()
            .flatten()
            .chain(idempotents)
            .map(|m| m.rows())
            .next()
            .ok_or_else(|| Error::InvalidFd("no action matrices given".into()))?;
        let f = &self.algebra.field;
        let ident = Matrix::identity(f, dim);
        if ncomp > 1 && idempotents.len() != ncomp {
            return Err(Error::InvalidFd(format!("expected {ncomp} idempotent actions")));
        }
        let mut actions = Vec::with_capacity(self.algebra.dim());
        for (c, monos) in self.standard.iter().enumerate() {
            let e = if ncomp > 1 { idempotents[c].clone() } else { ident.clone() };
            for m in monos {
                let mut act = e.clone();
                for (v, &k) in m.exponents().iter().enumerate() {
                    let x = variables
                        .get(c)
                        .and_then(|vs| vs.get(v))
                        .ok_or_else(|| Error::InvalidFd(format!("missing action for variable {} of component {}", v + 1, c + 1)))?;
                    for _ in 0..k {
                        act = act.mul(x);
                    }
                }
                actions.push(act);
            }
        }
        FDModule::new(&self.algebra, dim, actions)
    }
}

pub fn fd_from_presentation(a: &PresentedAlgebra) -> Result<FdPresentation> {
    let mut standard = Vec::new();
    let mut offsets = Vec::new();
    let mut labels = Vec::new();
    let multi = a.components().len() > 1;
    for (c, comp) in a.components().iter().enumerate() {
        let sm = comp
            .basis()
            .standard_monomials()
            .ok_or(Error::NotZeroDimensional { component: c + 1, dim: comp.dimension() })?;
        offsets.push(labels.len());
        for m in &sm {
            let l = Poly::monomial(comp.ring(), m.clone(), a.field().one()).to_string();
            labels.push(if multi { format!("{}:{l}", c + 1) } else { l });
        }
        standard.push(sm);
    }
    let dim = labels.len();
    let f = a.field();
    let index: Vec<HashMap<Monomial, usize>> =
        standard.iter().map(|sm| sm.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect()).collect();
    let mut owner = Vec::with_capacity(dim);
    for (c, sm) in standard.iter().enumerate() {
        owner.extend(sm.iter().map(|m| (c, m.clone())));
    }
    let mut table = vec![vec![zero_vector(f, dim); dim]; dim];
    for (i, (ci, mi)) in owner.iter().enumerate() {
        for (j, (cj, mj)) in owner.iter().enumerate() {
            if ci != cj {
                continue;
            }
            let comp = a.component(*ci);
            let prod = Poly::monomial(comp.ring(), mi.checked_mul(mj)?, f.one());
            for (m, x) in comp.reduce(&prod)?.terms() {
                table[i][j][offsets[*ci] + index[*ci][m]] = x.clone();
            }
        }
    }
    let mut unit = zero_vector(f, dim);
    for (c, sm) in standard.iter().enumerate() {
        if let Some(i) = sm.iter().position(|m| m.is_one()) {
            unit[offsets[c] + i] = f.one();
        }
    }
    let algebra = FDAlgebra::new(f, labels, table, unit)?;
    Ok(FdPresentation { algebra, presentation: a.clone(), standard, offsets })
}
