//! Dense matrices over a [`Field`] and the elimination routines built on them.
//!
//! Reduced row-echelon form is the canonical form used everywhere: pivots are
//! chosen as the first nonzero entry scanning left to right, and zero rows are
//! trimmed from the result.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{ensure_same, Elem, Field};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Arc<Field>,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

/// Output of [`Matrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: &Arc<Field>, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: &Arc<Field>, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_vec(field: &Arc<Field>, rows: usize, cols: usize, data: Vec<Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, got: data.len() });
        }
        for &x in &data {
            field.check(x as u32)?;
        }
        Ok(Matrix { field: field.clone(), rows, cols, data })
    }

    /// Builds a matrix from rows of equal length `cols`.
    pub fn from_rows<R: AsRef<[Elem]>>(field: &Arc<Field>, cols: usize, rows: &[R]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, got: r.len() });
            }
            data.extend_from_slice(r);
        }
        Self::from_vec(field, rows.len(), cols, data)
    }

    pub(crate) fn from_raw(field: &Arc<Field>, rows: usize, cols: usize, data: Vec<Elem>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Matrix { field: field.clone(), rows, cols, data }
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Elem] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Elem]> {
        // chunks_exact panics on a zero chunk size
        let cols = self.cols.max(1);
        self.data.chunks_exact(cols).take(if self.cols == 0 { 0 } else { self.rows })
    }

    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        ensure_same(&self.field, &other.field)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        let mut out = Matrix::zeros(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            let (lhs, dst) = (self.row(i), &mut out.data[i * other.cols..(i + 1) * other.cols]);
            for (k, &c) in lhs.iter().enumerate() {
                self.field.axpy(dst, c, other.row(k));
            }
        }
        Ok(out)
    }

    /// Row vector times matrix: `x · M`.
    pub fn vec_mul(&self, x: &[Elem]) -> Result<Vec<Elem>> {
        if x.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, got: x.len() });
        }
        let mut out = vec![0; self.cols];
        for (i, &c) in x.iter().enumerate() {
            self.field.axpy(&mut out, c, self.row(i));
        }
        Ok(out)
    }

    /// Matrix times column vector: `M · x`.
    pub fn mul_vec(&self, x: &[Elem]) -> Result<Vec<Elem>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, got: x.len() });
        }
        Ok(self.row_iter().map(|r| self.field.dot(r, x)).collect())
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for i in 0..self.rows {
            let r = self.row(i);
            data.extend(cols.iter().map(|&j| r[j]));
        }
        Matrix::from_raw(&self.field, self.rows, cols.len(), data)
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            data.extend_from_slice(self.row(i));
        }
        Matrix::from_raw(&self.field, rows.len(), self.cols, data)
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        ensure_same(&self.field, &other.field)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, got: other.cols });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix::from_raw(&self.field, self.rows + other.rows, self.cols, data))
    }

    pub fn rref(&self) -> Rref {
        let mut basis = EchelonBasis::new(&self.field, self.cols);
        for r in self.row_iter() {
            basis.insert(r.to_vec());
            if basis.is_full() {
                break;
            }
        }
        basis.into_rref()
    }

    pub fn rank(&self) -> usize {
        let mut basis = EchelonBasis::new(&self.field, self.cols);
        for r in self.row_iter() {
            basis.insert(r.to_vec());
            if basis.is_full() {
                break;
            }
        }
        basis.rank()
    }

    pub fn is_rref(&self) -> bool {
        self.rref().matrix == *self
    }

    /// Basis (in RREF) of the right null space `{x : M x = 0}`.
    pub fn kernel(&self) -> Matrix {
        let r = self.rref();
        null_space_of_rref(&r.matrix, &r.pivots)
    }

    /// Some `x` with `M x = y`, free variables set to zero; `None` when the
    /// system is inconsistent.
    pub fn solve(&self, y: &[Elem]) -> Result<Option<Vec<Elem>>> {
        Ok(self.solve_detailed(y)?.map(|s| s.solution))
    }

    /// Like [`Matrix::solve`] but also reports whether the solution is unique.
    pub fn solve_detailed(&self, y: &[Elem]) -> Result<Option<Solution>> {
        if y.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, got: y.len() });
        }
        let n = self.cols;
        let mut data = Vec::with_capacity(self.rows * (n + 1));
        for (i, r) in self.row_iter().enumerate() {
            data.extend_from_slice(r);
            data.push(y[i]);
        }
        if n == 0 {
            let consistent = y.iter().all(|&v| v == 0);
            return Ok(consistent.then(|| Solution { solution: Vec::new(), unique: true }));
        }
        let aug = Matrix::from_raw(&self.field, self.rows, n + 1, data);
        let r = aug.rref();
        if r.pivots.last() == Some(&n) {
            return Ok(None);
        }
        let mut x = vec![0; n];
        for (i, &p) in r.pivots.iter().enumerate() {
            x[p] = r.matrix.get(i, n);
        }
        Ok(Some(Solution { solution: x, unique: r.rank == n }))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub solution: Vec<Elem>,
    pub unique: bool,
}

/// Null space of a matrix already in RREF with the given pivots, returned in RREF.
pub(crate) fn null_space_of_rref(r: &Matrix, pivots: &[usize]) -> Matrix {
    let field = r.field();
    let n = r.cols();
    let mut is_pivot = vec![false; n];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&j| !is_pivot[j]).collect();
    let mut data = Vec::with_capacity(free.len() * n);
    for &f in &free {
        let mut v = vec![0; n];
        v[f] = 1;
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = field.neg(r.get(i, f));
        }
        data.extend_from_slice(&v);
    }
    Matrix::from_raw(field, free.len(), n, data).rref().matrix
}

/// An incrementally grown row space in semi-echelon form.
///
/// Every stored vector has a leading 1 at its pivot and a zero at the pivots of
/// all vectors inserted before it, so a candidate is reduced by a single pass
/// over the basis in insertion order.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    field: Arc<Field>,
    cols: usize,
    vectors: Vec<Vec<Elem>>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(field: &Arc<Field>, cols: usize) -> Self {
        EchelonBasis { field: field.clone(), cols, vectors: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_full(&self) -> bool {
        self.vectors.len() == self.cols
    }

    fn reduce(&self, v: &mut [Elem]) {
        for (b, &p) in self.vectors.iter().zip(&self.pivots) {
            let c = v[p];
            if c != 0 {
                self.field.axpy(v, self.field.neg(c), b);
            }
        }
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, mut v: Vec<Elem>) -> bool {
        debug_assert_eq!(v.len(), self.cols);
        if self.is_full() {
            return false;
        }
        self.reduce(&mut v);
        match v.iter().position(|&x| x != 0) {
            None => false,
            Some(p) => {
                let inv = self.field.inv(v[p]).expect("pivot is nonzero");
                self.field.scale(&mut v, inv);
                self.vectors.push(v);
                self.pivots.push(p);
                true
            }
        }
    }

    /// Canonical RREF of the span, zero rows trimmed.
    pub fn into_rref(mut self) -> Rref {
        let r = self.vectors.len();
        for i in (0..r).rev() {
            for j in i + 1..r {
                let c = self.vectors[i][self.pivots[j]];
                if c != 0 {
                    let (head, tail) = self.vectors.split_at_mut(j);
                    self.field.axpy(&mut head[i], self.field.neg(c), &tail[0]);
                }
            }
        }
        let mut order: Vec<usize> = (0..r).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        let mut data = Vec::with_capacity(r * self.cols);
        for &i in &order {
            data.extend_from_slice(&self.vectors[i]);
        }
        let pivots = order.iter().map(|&i| self.pivots[i]).collect();
        Rref { matrix: Matrix::from_raw(&self.field, r, self.cols, data), rank: r, pivots }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u32) -> Arc<Field> {
        Field::of_order(q).unwrap()
    }

    #[test]
    fn rref_examples() {
        let f = gf(2);
        let m = Matrix::from_rows(&f, 3, &[vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
        let r = m.rref();
        assert_eq!(r.matrix.to_rows(), vec![vec![1, 0, 1], vec![0, 1, 1]]);
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivots, vec![0, 1]);

        let id = Matrix::identity(&gf(7), 5);
        assert_eq!(id.rref().matrix, id);

        let f5 = gf(5);
        let m = Matrix::from_rows(&f5, 2, &[vec![2, 4], vec![1, 2]]).unwrap();
        let r = m.rref();
        assert_eq!(r.matrix.to_rows(), vec![vec![1, 2]]);
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn kernel_examples() {
        let f = gf(2);
        let m = Matrix::from_rows(&f, 3, &[vec![1, 1, 1]]).unwrap();
        let k = m.kernel();
        assert_eq!(k.to_rows(), vec![vec![1, 0, 1], vec![0, 1, 1]]);

        let full = Matrix::from_rows(&gf(5), 2, &[vec![1, 2], vec![3, 4]]).unwrap();
        assert_eq!(full.kernel().rows(), 0);

        let f5 = gf(5);
        let m = Matrix::from_rows(&f5, 3, &[vec![1, 2, 3]]).unwrap();
        let k = m.kernel();
        assert_eq!(k.rows(), 2);
        for row in k.row_iter() {
            assert_eq!(m.mul_vec(row).unwrap(), vec![0]);
        }
    }

    #[test]
    fn solve_examples() {
        let f = gf(11);
        let id = Matrix::identity(&f, 3);
        assert_eq!(id.solve(&[4, 0, 9]).unwrap(), Some(vec![4, 0, 9]));

        let f2 = gf(2);
        let m = Matrix::from_rows(&f2, 2, &[vec![1, 1]]).unwrap();
        assert_eq!(m.solve(&[1]).unwrap(), Some(vec![1, 0]));

        let m = Matrix::from_rows(&f2, 1, &[vec![1], vec![1]]).unwrap();
        assert_eq!(m.solve(&[0, 1]).unwrap(), None);
        assert!(m.solve(&[0]).is_err());
    }

    #[test]
    fn mixed_fields_rejected() {
        let a = Matrix::identity(&gf(5), 2);
        let b = Matrix::identity(&gf(7), 2);
        assert!(matches!(a.mul(&b), Err(Error::FieldMismatch { .. })));
    }

    #[test]
    fn empty_shapes() {
        let f = gf(3);
        let m = Matrix::zeros(&f, 0, 4);
        assert_eq!(m.rref().rank, 0);
        assert_eq!(m.kernel().rows(), 4);
        let z = Matrix::zeros(&f, 3, 0);
        assert_eq!(z.rank(), 0);
        assert_eq!(z.solve(&[0, 0, 0]).unwrap(), Some(vec![]));
    }
}
