//! Linear codes and the code algebra: duals, Schur products and powers,
//! t-closures, shortening and puncturing, sums and intersections.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{ensure_same, Elem, Field};
use crate::matrix::{null_space_of_rref, EchelonBasis, Matrix};
use crate::rng::{random_vector, rng_from_seed};

/// An `[n, k]` code, stored as its generator matrix in RREF with no zero rows.
///
/// Two codes are equal exactly when their generator matrices are identical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    gen: Matrix,
    pivots: Vec<usize>,
}

/// Which algebraic route [`LinearCode::closure_with`] takes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosureMethod {
    /// `(C^(t-1) * (C^(t))^⊥)^⊥`.
    DualFormula,
    /// Intersection over a basis `u` of `C^(t-1)` of `{a : a * u ∈ C^(t)}`.
    Definitional,
}

impl LinearCode {
    /// The span of the rows of `rows`.
    pub fn from_rows(field: &Arc<Field>, rows: &Matrix) -> Result<Self> {
        ensure_same(field, rows.field())?;
        Ok(Self::span_of(rows))
    }

    pub fn span_of(rows: &Matrix) -> Self {
        let r = rows.rref();
        LinearCode { gen: r.matrix, pivots: r.pivots }
    }

    pub(crate) fn from_basis(basis: EchelonBasis) -> Self {
        let r = basis.into_rref();
        LinearCode { gen: r.matrix, pivots: r.pivots }
    }

    pub fn zero(field: &Arc<Field>, n: usize) -> Self {
        LinearCode { gen: Matrix::zeros(field, 0, n), pivots: Vec::new() }
    }

    pub fn full(field: &Arc<Field>, n: usize) -> Self {
        LinearCode { gen: Matrix::identity(field, n), pivots: (0..n).collect() }
    }

    pub fn field(&self) -> &Arc<Field> {
        self.gen.field()
    }

    pub fn len(&self) -> usize {
        self.gen.cols()
    }

    pub fn dim(&self) -> usize {
        self.gen.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.len()
    }

    pub fn generator(&self) -> &Matrix {
        &self.gen
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn encode(&self, msg: &[Elem]) -> Result<Vec<Elem>> {
        self.gen.vec_mul(msg)
    }

    /// Membership test by reduction against the RREF generator.
    pub fn contains_word(&self, v: &[Elem]) -> bool {
        if v.len() != self.len() {
            return false;
        }
        let f = self.field();
        let mut w = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = w[p];
            if c != 0 {
                f.axpy(&mut w, f.neg(c), self.gen.row(i));
            }
        }
        w.iter().all(|&x| x == 0)
    }

    /// Whether `other ⊆ self`.
    pub fn contains(&self, other: &LinearCode) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(other.gen.row_iter().all(|r| self.contains_word(r)))
    }

    fn check_compatible(&self, other: &LinearCode) -> Result<()> {
        ensure_same(self.field(), other.field())?;
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch { expected: self.len(), got: other.len() });
        }
        Ok(())
    }

    pub fn dual(&self) -> LinearCode {
        let k = null_space_of_rref(&self.gen, &self.pivots);
        LinearCode::span_of(&k)
    }

    /// Parity-check matrix: the RREF generator of the dual.
    pub fn parity_check(&self) -> Matrix {
        self.dual().gen
    }

    /// `A * B`: the span of all componentwise products of basis vectors.
    pub fn schur(&self, other: &LinearCode) -> Result<LinearCode> {
        self.check_compatible(other)?;
        let f = self.field();
        let same = self == other;
        let mut basis = EchelonBasis::new(f, self.len());
        'outer: for i in 0..self.dim() {
            let start = if same { i } else { 0 };
            for j in start..other.dim() {
                basis.insert(f.hadamard(self.gen.row(i), other.gen.row(j)));
                if basis.is_full() {
                    break 'outer;
                }
            }
        }
        Ok(LinearCode::from_basis(basis))
    }

    pub fn square(&self) -> LinearCode {
        self.schur(self).expect("a code is compatible with itself")
    }

    /// `C^(t)`, with `C^(1) = C` and `C^(t) = C * C^(t-1)`.
    pub fn power(&self, t: usize) -> Result<LinearCode> {
        if t < 1 {
            return Err(Error::param("Schur power needs t >= 1"));
        }
        let mut acc = self.clone();
        for _ in 1..t {
            acc = self.schur(&acc)?;
        }
        Ok(acc)
    }

    /// The t-closure `{a : a * C^(t-1) ⊆ C^(t)}` via the dual formula.
    pub fn closure(&self, t: usize) -> Result<LinearCode> {
        self.closure_with(t, ClosureMethod::DualFormula)
    }

    pub fn closure_with(&self, t: usize, method: ClosureMethod) -> Result<LinearCode> {
        if t < 2 {
            return Err(Error::param("closure needs t >= 2"));
        }
        let lower = self.power(t - 1)?;
        let upper = self.schur(&lower)?;
        Ok(match method {
            ClosureMethod::DualFormula => lower.schur(&upper.dual())?.dual(),
            ClosureMethod::Definitional => {
                let mut acc = LinearCode::full(self.field(), self.len());
                for u in lower.gen.row_iter() {
                    acc = acc.intersect(&upper.preimage_under_product(u)?)?;
                }
                acc
            }
        })
    }

    /// Computes the closure both ways and fails if the routes disagree.
    pub fn closure_cross_validated(&self, t: usize) -> Result<LinearCode> {
        let a = self.closure_with(t, ClosureMethod::DualFormula)?;
        let b = self.closure_with(t, ClosureMethod::Definitional)?;
        if a != b {
            return Err(Error::param(format!(
                "closure routes disagree (dims {} and {})",
                a.dim(),
                b.dim()
            )));
        }
        Ok(a)
    }

    /// `{a : a * u ∈ self}`.
    fn preimage_under_product(&self, u: &[Elem]) -> Result<LinearCode> {
        let f = self.field();
        let n = self.len();
        let zeros: Vec<usize> = (0..n).filter(|&i| u[i] == 0).collect();
        let support: Vec<usize> = (0..n).filter(|&i| u[i] != 0).collect();
        let inv_u: Vec<Elem> = support.iter().map(|&i| f.inv(u[i])).collect::<Result<_>>()?;
        let vanishing = self.shorten(&zeros)?.scale_columns(&inv_u)?;
        let mut code = vanishing.extend_by_zeros(&zeros, n)?;
        let mut units = Matrix::zeros(f, zeros.len(), n);
        for (r, &z) in zeros.iter().enumerate() {
            units.set(r, z, 1);
        }
        code = code.sum(&LinearCode::span_of(&units))?;
        Ok(code)
    }

    /// Multiplies coordinate `i` of every codeword by `scales[i]`.
    pub fn scale_columns(&self, scales: &[Elem]) -> Result<LinearCode> {
        if scales.len() != self.len() {
            return Err(Error::DimensionMismatch { expected: self.len(), got: scales.len() });
        }
        let f = self.field();
        let mut g = self.gen.clone();
        for i in 0..g.rows() {
            for (x, &s) in g.row_mut(i).iter_mut().zip(scales) {
                *x = f.mul(*x, s);
            }
        }
        Ok(LinearCode::span_of(&g))
    }

    fn position_set(&self, positions: &[usize], n: usize) -> Result<BTreeSet<usize>> {
        let set: BTreeSet<usize> = positions.iter().copied().collect();
        if let Some(&bad) = set.iter().find(|&&i| i >= n) {
            return Err(Error::param(format!("position {} out of range for length {}", bad, n)));
        }
        Ok(set)
    }

    /// Words vanishing on `positions`, restricted to the remaining coordinates.
    pub fn shorten(&self, positions: &[usize]) -> Result<LinearCode> {
        let set = self.position_set(positions, self.len())?;
        let removed: Vec<usize> = set.iter().copied().collect();
        let kept: Vec<usize> = (0..self.len()).filter(|i| !set.contains(i)).collect();
        // coefficient vectors x with (x G)|_I = 0
        let coeffs = self.gen.select_columns(&removed).transpose().kernel();
        let words = coeffs.mul(&self.gen)?;
        Ok(LinearCode::span_of(&words.select_columns(&kept)))
    }

    /// Deletes the coordinates in `positions`.
    pub fn puncture(&self, positions: &[usize]) -> Result<LinearCode> {
        let set = self.position_set(positions, self.len())?;
        let kept: Vec<usize> = (0..self.len()).filter(|i| !set.contains(i)).collect();
        Ok(LinearCode::span_of(&self.gen.select_columns(&kept)))
    }

    /// Re-embeds a code of length `n_total - |positions|` by inserting zeros.
    pub fn extend_by_zeros(&self, positions: &[usize], n_total: usize) -> Result<LinearCode> {
        let set = self.position_set(positions, n_total)?;
        if self.len() + set.len() != n_total {
            return Err(Error::DimensionMismatch { expected: n_total - set.len(), got: self.len() });
        }
        let kept: Vec<usize> = (0..n_total).filter(|i| !set.contains(i)).collect();
        let mut g = Matrix::zeros(self.field(), self.dim(), n_total);
        for i in 0..self.dim() {
            let src = self.gen.row(i);
            let dst = g.row_mut(i);
            for (j, &c) in kept.iter().enumerate() {
                dst[c] = src[j];
            }
        }
        Ok(LinearCode::span_of(&g))
    }

    pub fn sum(&self, other: &LinearCode) -> Result<LinearCode> {
        self.check_compatible(other)?;
        Ok(LinearCode::span_of(&self.gen.vstack(&other.gen)?))
    }

    pub fn intersect(&self, other: &LinearCode) -> Result<LinearCode> {
        self.check_compatible(other)?;
        Ok(self.dual().sum(&other.dual())?.dual())
    }

    /// Draws `l × k` coefficient matrices until one has rank `l`; returns the
    /// spanned subcode.
    pub fn random_subcode(&self, l: usize, seed: u64) -> Result<LinearCode> {
        Ok(LinearCode::span_of(&self.random_subcode_generator(l, seed)?))
    }

    /// The unreduced generator `S · G` behind [`LinearCode::random_subcode`].
    pub fn random_subcode_generator(&self, l: usize, seed: u64) -> Result<Matrix> {
        let s = random_full_rank(self.field(), l, self.dim(), seed)?;
        s.mul(&self.gen)
    }

    /// Exact minimum distance by enumerating all `q^k` codewords.
    pub fn min_distance_bruteforce(&self) -> Result<usize> {
        let q = self.field().order() as f64;
        if (self.dim() as f64) * q.log2() > 24.0 {
            return Err(Error::TooLarge(format!(
                "q^k = {}^{} exceeds 2^24 codewords",
                self.field().order(),
                self.dim()
            )));
        }
        if self.is_zero() {
            return Ok(self.len() + 1);
        }
        let mut best = self.len();
        let mut stack = vec![0 as Elem; self.len()];
        self.enumerate_min(0, &mut stack, false, &mut best);
        Ok(best)
    }

    fn enumerate_min(&self, row: usize, acc: &mut Vec<Elem>, nonzero: bool, best: &mut usize) {
        if row == self.dim() {
            if nonzero {
                let w = acc.iter().filter(|&&x| x != 0).count();
                *best = (*best).min(w);
            }
            return;
        }
        let f = self.field();
        let base = acc.clone();
        for c in f.elements() {
            acc.copy_from_slice(&base);
            f.axpy(acc, c, self.gen.row(row));
            self.enumerate_min(row + 1, acc, nonzero || c != 0, best);
        }
        acc.copy_from_slice(&base);
    }

    /// Every codeword, in message order. Only for tiny codes.
    pub fn codewords(&self) -> Result<Vec<Vec<Elem>>> {
        let q = self.field().order() as usize;
        let total = q
            .checked_pow(self.dim() as u32)
            .filter(|&t| t <= 1 << 20)
            .ok_or_else(|| Error::TooLarge("too many codewords to list".into()))?;
        let mut out = Vec::with_capacity(total);
        for idx in 0..total {
            let mut msg = Vec::with_capacity(self.dim());
            let mut v = idx;
            for _ in 0..self.dim() {
                msg.push((v % q) as Elem);
                v /= q;
            }
            out.push(self.encode(&msg)?);
        }
        Ok(out)
    }
}

/// A uniformly drawn `rows × cols` matrix of full row rank.
pub fn random_full_rank(field: &Arc<Field>, rows: usize, cols: usize, seed: u64) -> Result<Matrix> {
    random_full_rank_with(field, rows, cols, &mut rng_from_seed(seed))
}

pub fn random_full_rank_with(
    field: &Arc<Field>,
    rows: usize,
    cols: usize,
    rng: &mut impl Rng,
) -> Result<Matrix> {
    if rows == 0 || rows > cols {
        return Err(Error::param(format!("subcode dimension {} out of range 1..={}", rows, cols)));
    }
    loop {
        let data = random_vector(field, rows * cols, rng);
        let m = Matrix::from_raw(field, rows, cols, data);
        if m.rank() == rows {
            return Ok(m);
        }
    }
}

pub fn hamming_weight(v: &[Elem]) -> usize {
    v.iter().filter(|&&x| x != 0).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u32) -> Arc<Field> {
        Field::of_order(q).unwrap()
    }

    fn code(f: &Arc<Field>, n: usize, rows: &[Vec<Elem>]) -> LinearCode {
        LinearCode::from_rows(f, &Matrix::from_rows(f, n, rows).unwrap()).unwrap()
    }

    fn random_code(f: &Arc<Field>, n: usize, k: usize, seed: u64) -> LinearCode {
        LinearCode::full(f, n).random_subcode(k, seed).unwrap()
    }

    #[test]
    fn from_rows_examples() {
        let f2 = gf(2);
        let c = code(&f2, 2, &[vec![1, 1], vec![1, 1]]);
        assert_eq!(c.dim(), 1);
        assert_eq!(c.generator().to_rows(), vec![vec![1, 1]]);
        let empty: Vec<Vec<Elem>> = vec![];
        assert_eq!(code(&f2, 3, &empty).dim(), 0);
        assert_eq!(code(&gf(5), 2, &[vec![1, 2], vec![2, 4]]).dim(), 1);
    }

    #[test]
    fn dual_examples() {
        let f = gf(4);
        assert!(LinearCode::full(&f, 5).dual().is_zero());
        let c = random_code(&f, 8, 3, 11);
        assert_eq!(c.dual().dim(), 5);
        assert_eq!(c.dual().dual(), c);
        for r in c.generator().row_iter() {
            for h in c.dual().generator().row_iter() {
                assert_eq!(f.dot(r, h), 0);
            }
        }
    }

    #[test]
    fn schur_examples() {
        let f = gf(5);
        let ones = code(&f, 4, &[vec![1, 1, 1, 1]]);
        let b = random_code(&f, 4, 2, 3);
        assert_eq!(ones.schur(&b).unwrap(), b);
        let f2 = gf(2);
        let full = LinearCode::full(&f2, 2);
        assert_eq!(full.square(), full);
        assert!(ones.schur(&LinearCode::full(&f, 5)).is_err());
        assert!(ones.schur(&LinearCode::full(&gf(7), 4)).is_err());
    }

    #[test]
    fn powers() {
        let f = gf(4);
        let c = random_code(&f, 8, 3, 5);
        assert_eq!(c.power(1).unwrap(), c);
        assert!(c.power(0).is_err());
        let rep = code(&f, 6, &[vec![1; 6]]);
        for t in 1..5 {
            assert_eq!(rep.power(t).unwrap(), rep);
        }
    }

    #[test]
    fn closure_examples() {
        let f = gf(4);
        let full = LinearCode::full(&f, 6);
        assert_eq!(full.closure_cross_validated(2).unwrap(), full);
        let rep = code(&f, 6, &[vec![1; 6]]);
        assert_eq!(rep.closure_cross_validated(2).unwrap(), rep);
        assert_eq!(rep.closure_cross_validated(3).unwrap(), rep);
        assert!(rep.closure(1).is_err());
        // zero code closes to the full space under the dual formula
        assert!(LinearCode::zero(&f, 4).closure(2).unwrap().is_full());
    }

    #[test]
    fn closure_routes_agree_on_random_codes() {
        for (q, n, k) in [(4, 10, 3), (5, 8, 4), (16, 12, 3), (7, 9, 2)] {
            let f = gf(q);
            for seed in 0..4 {
                let c = random_code(&f, n, k, seed);
                let cl = c.closure_cross_validated(2).unwrap();
                assert!(cl.contains(&c).unwrap());
            }
        }
    }

    #[test]
    fn shorten_examples() {
        let f = gf(4);
        let c = random_code(&f, 10, 4, 1);
        assert_eq!(c.shorten(&[]).unwrap(), c);
        let f2 = gf(2);
        assert_eq!(LinearCode::full(&f2, 2).shorten(&[0]).unwrap(), LinearCode::full(&f2, 1));
        assert!(c.shorten(&[10]).is_err());
    }

    #[test]
    fn shorten_puncture_duality() {
        let f = gf(4);
        for seed in 0..5 {
            let c = random_code(&f, 10, 4, seed);
            let i = [1, 4, 7];
            assert_eq!(c.shorten(&i).unwrap().dual(), c.dual().puncture(&i).unwrap());
        }
    }

    #[test]
    fn extend_examples() {
        let f = gf(4);
        let c = random_code(&f, 10, 4, 2);
        assert_eq!(c.extend_by_zeros(&[], 10).unwrap(), c);
        assert!(LinearCode::zero(&f, 7).extend_by_zeros(&[0, 3, 5], 10).unwrap().is_zero());
        let i = [0, 5, 9];
        let back = c.shorten(&i).unwrap().extend_by_zeros(&i, 10).unwrap();
        assert!(c.contains(&back).unwrap());
        assert!(c.extend_by_zeros(&[0], 12).is_err());
    }

    #[test]
    fn sums_and_intersections() {
        let f = gf(4);
        let a = random_code(&f, 8, 3, 7);
        let b = random_code(&f, 8, 4, 8);
        assert_eq!(a.sum(&a).unwrap(), a);
        assert_eq!(a.intersect(&a).unwrap(), a);
        let s = a.sum(&b).unwrap();
        let i = a.intersect(&b).unwrap();
        assert_eq!(s.dim() + i.dim(), a.dim() + b.dim());
        let f2 = gf(2);
        let e1 = code(&f2, 2, &[vec![1, 0]]);
        let e2 = code(&f2, 2, &[vec![0, 1]]);
        assert_eq!(e1.sum(&e2).unwrap(), LinearCode::full(&f2, 2));
    }

    #[test]
    fn random_subcodes() {
        let f = gf(49);
        let c = random_code(&f, 40, 10, 1);
        assert_eq!(c.random_subcode(10, 99).unwrap(), c);
        let s = c.random_subcode(4, 3).unwrap();
        assert_eq!(s.dim(), 4);
        assert!(c.contains(&s).unwrap());
        assert_ne!(s, c.random_subcode(4, 4).unwrap());
        assert!(c.random_subcode(0, 1).is_err());
        assert!(c.random_subcode(11, 1).is_err());
    }

    #[test]
    fn min_distance() {
        let f = gf(2);
        assert_eq!(code(&f, 8, &[vec![1; 8]]).min_distance_bruteforce().unwrap(), 8);
        let big = LinearCode::full(&gf(16), 10);
        assert!(big.min_distance_bruteforce().is_err());
    }
}
