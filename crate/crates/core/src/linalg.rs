//! Dense exact linear algebra over the supported fields.

use std::fmt;

use crate::field::{Field, FieldElem};

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
}

pub type Vector = Vec<FieldElem>;

pub fn zero_vector(field: &Field, n: usize) -> Vector {
    vec![field.zero(); n]
}

pub fn unit_vector(field: &Field, n: usize, i: usize) -> Vector {
    let mut v = zero_vector(field, n);
    v[i] = field.one();
    v
}

pub fn is_zero_vector(v: &[FieldElem]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn add_scaled(acc: &mut [FieldElem], c: &FieldElem, v: &[FieldElem]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a = &*a + &(c * x);
        }
    }
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_rows(field: &Field, cols: usize, rows: Vec<Vector>) -> Matrix {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r);
        }
        Matrix { field: field.clone(), rows: nrows, cols, data }
    }

    pub fn from_columns(field: &Field, rows: usize, columns: &[Vector]) -> Matrix {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "ragged columns");
            for (i, x) in col.iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
            }
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &FieldElem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FieldElem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.data)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Matrix::zeros(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let row = other.row(k).to_vec();
                add_scaled(&mut out.data[i * other.cols..(i + 1) * other.cols], a, &row);
            }
        }
        out
    }

    pub fn apply(&self, v: &[FieldElem]) -> Vector {
        assert_eq!(self.cols, v.len(), "shape mismatch in application");
        let mut out = zero_vector(&self.field, self.rows);
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = self.get(i, j);
                if !a.is_zero() {
                    *o = &*o + &(a * x);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in sum");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in difference");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &FieldElem) -> Matrix {
        let data = self.data.iter().map(|a| a * c).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        out
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("pivot is nonzero");
            for j in c..m.cols {
                let x = m.get(r, j) * &inv;
                m.set(r, j, x);
            }
            let pivot_row: Vector = m.row(r).to_vec();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                let neg = -&f;
                let cols = m.cols;
                add_scaled(&mut m.data[i * cols..(i + 1) * cols], &neg, &pivot_row);
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : self · v = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = zero_vector(&self.field, self.cols);
            v[free] = self.field.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(i, free);
            }
            out.push(v);
        }
        out
    }

    /// Some `x` with `self · x = b`.
    pub fn solve(&self, b: &[FieldElem]) -> Option<Vector> {
        let cols: Vec<Vector> = vec![b.to_vec()];
        self.solve_matrix(&Matrix::from_columns(&self.field, self.rows, &cols)).map(|x| x.column(0))
    }

    /// Some `X` with `self · X = rhs`.
    pub fn solve_matrix(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, rhs.rows, "shape mismatch in solve");
        let aug = self.hstack(rhs);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(&self.field, self.cols, rhs.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(p, j, r.get(i, self.cols + j).clone());
            }
        }
        Some(x)
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "shape mismatch in hstack");
        let rows = (0..self.rows).map(|i| [self.row(i), other.row(i)].concat()).collect();
        Matrix::from_rows(&self.field, self.cols + other.cols, rows)
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "shape mismatch in vstack");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
                format!("[{}]", row.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// Incrementally grown subspace kept in echelon form, for membership tests.
#[derive(Clone, Debug)]
pub struct EchelonSpan {
    rows: Vec<(usize, Vector)>,
}

impl EchelonSpan {
    pub fn new() -> EchelonSpan {
        EchelonSpan { rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[FieldElem]) -> Vector {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            let c = v[*p].clone();
            if !c.is_zero() {
                add_scaled(&mut v, &-&c, row);
            }
        }
        v
    }

    pub fn contains(&self, v: &[FieldElem]) -> bool {
        is_zero_vector(&self.reduce(v))
    }

    /// Adds `v`; returns whether the span grew.
    pub fn insert(&mut self, v: &[FieldElem]) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv().expect("nonzero pivot");
        for x in r.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        self.rows.push((p, r));
        true
    }
}

impl Default for EchelonSpan {
    fn default() -> Self {
        EchelonSpan::new()
    }
}

/// `k^n / W` for a subspace `W` given by spanning vectors. Quotient
/// coordinates are the non-pivot coordinates of the reduced basis of `W`.
#[derive(Clone, Debug)]
pub struct QuotientSpace {
    field: Field,
    ambient: usize,
    reducer: Vec<(usize, Vector)>,
    free: Vec<usize>,
}

impl QuotientSpace {
    pub fn new(field: &Field, ambient: usize, relations: Vec<Vector>) -> QuotientSpace {
        let relations: Vec<Vector> = relations.into_iter().filter(|v| !is_zero_vector(v)).collect();
        let (r, pivots) = Matrix::from_rows(field, ambient, relations).rref();
        let reducer = pivots.iter().enumerate().map(|(i, &p)| (p, r.row(i).to_vec())).collect();
        let free = (0..ambient).filter(|c| !pivots.contains(c)).collect();
        QuotientSpace { field: field.clone(), ambient, reducer, free }
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Dimension of the relation subspace.
    pub fn relation_rank(&self) -> usize {
        self.reducer.len()
    }

    pub fn project(&self, v: &[FieldElem]) -> Vector {
        let mut v = v.to_vec();
        for (p, row) in &self.reducer {
            let c = v[*p].clone();
            if !c.is_zero() {
                add_scaled(&mut v, &-&c, row);
            }
        }
        self.free.iter().map(|&i| v[i].clone()).collect()
    }

    /// The ambient basis vector representing quotient basis vector `i`.
    pub fn lift_index(&self, i: usize) -> usize {
        self.free[i]
    }

    pub fn lift(&self, q: &[FieldElem]) -> Vector {
        let mut v = zero_vector(&self.field, self.ambient);
        for (x, &i) in q.iter().zip(&self.free) {
            v[i] = x.clone();
        }
        v
    }

    /// Matrix of `proj ∘ L ∘ lift` for an ambient map `L` given by the image
    /// of each ambient basis vector, into another quotient space.
    pub fn induced_map(&self, target: &QuotientSpace, image: impl Fn(usize) -> Vector) -> Matrix {
        let cols: Vec<Vector> = self.free.iter().map(|&i| target.project(&image(i))).collect();
        Matrix::from_columns(&self.field, target.dim(), &cols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> Field {
        Field::Rational
    }

    fn mat(rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(&q(), cols, rows.iter().map(|r| r.iter().map(|&x| q().from_i64(x)).collect()).collect())
    }

    #[test]
    fn rank_and_nullspace() {
        let m = mat(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(is_zero_vector(&m.apply(&ns[0])));
    }

    #[test]
    fn solve_detects_inconsistency() {
        let m = mat(&[&[1, 1], &[1, 1]]);
        assert!(m.solve(&[q().one(), q().zero()]).is_none());
        let x = m.solve(&[q().from_i64(2), q().from_i64(2)]).unwrap();
        assert_eq!(m.apply(&x), vec![q().from_i64(2), q().from_i64(2)]);
    }

    #[test]
    fn quotient_by_diagonal() {
        // k^2 / span{(1, -1)}: both basis vectors become equal.
        let qs = QuotientSpace::new(&q(), 2, vec![vec![q().one(), q().from_i64(-1)]]);
        assert_eq!(qs.dim(), 1);
        assert_eq!(qs.project(&[q().one(), q().zero()]), qs.project(&[q().zero(), q().one()]));
    }

    fn small_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            prop::collection::vec(-3i64..4, r * c).prop_map(move |xs| {
                let rows = xs.chunks(c).map(|ch| ch.iter().map(|&x| Field::Rational.from_i64(x)).collect()).collect();
                Matrix::from_rows(&Field::Rational, c, rows)
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_matrix()) {
            prop_assert_eq!(m.rank() + m.nullspace().len(), m.cols());
            for v in m.nullspace() {
                prop_assert!(is_zero_vector(&m.apply(&v)));
            }
        }

        #[test]
        fn rank_of_transpose(m in small_matrix()) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn projection_kills_relations(m in small_matrix()) {
            let qs = QuotientSpace::new(m.field(), m.cols(), (0..m.rows()).map(|i| m.row(i).to_vec()).collect());
            prop_assert_eq!(qs.dim() + m.rank(), m.cols());
            for i in 0..m.rows() {
                prop_assert!(is_zero_vector(&qs.project(m.row(i))));
            }
            for i in 0..qs.dim() {
                let e = unit_vector(m.field(), qs.dim(), i);
                prop_assert_eq!(qs.project(&qs.lift(&e)), e);
            }
        }
    }
}
