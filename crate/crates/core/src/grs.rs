//! Generalized Reed–Solomon codes `GRS_k(a, b)`: polynomials of degree `< k`
//! evaluated at distinct points `a`, coordinate `i` scaled by `b_i`.

use std::collections::HashSet;
use std::sync::Arc;

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::matrix::Matrix;
use crate::rng::{distinct_elements, random_nonzero, rng_from_seed};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrsSpec {
    field: Arc<Field>,
    points: Vec<Elem>,
    multipliers: Vec<Elem>,
    k: usize,
}

impl GrsSpec {
    pub fn new(field: &Arc<Field>, points: Vec<Elem>, multipliers: Vec<Elem>, k: usize) -> Result<Self> {
        let n = points.len();
        if multipliers.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: multipliers.len() });
        }
        if n > field.order() as usize {
            return Err(Error::param(format!("length {} exceeds the field order", n)));
        }
        if k == 0 || k > n {
            return Err(Error::param(format!("GRS dimension {} out of range 1..={}", k, n)));
        }
        for &x in points.iter().chain(&multipliers) {
            field.check(x as u32)?;
        }
        let mut seen = HashSet::new();
        if let Some(&dup) = points.iter().find(|&&x| !seen.insert(x)) {
            return Err(Error::param(format!("evaluation point {} repeated", dup)));
        }
        if multipliers.contains(&0) {
            return Err(Error::param("column multipliers must be nonzero"));
        }
        Ok(GrsSpec { field: field.clone(), points, multipliers, k })
    }

    /// Random distinct points and nonzero multipliers drawn from `seed`.
    pub fn random(field: &Arc<Field>, n: usize, k: usize, seed: u64) -> Result<Self> {
        if n > field.order() as usize {
            return Err(Error::param(format!("length {} exceeds the field order", n)));
        }
        let mut rng = rng_from_seed(seed);
        let points = distinct_elements(field, n, &mut rng);
        let multipliers = (0..n).map(|_| random_nonzero(field, &mut rng)).collect();
        Self::new(field, points, multipliers, k)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn points(&self) -> &[Elem] {
        &self.points
    }

    pub fn multipliers(&self) -> &[Elem] {
        &self.multipliers
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn with_dim(&self, k: usize) -> Result<Self> {
        Self::new(&self.field, self.points.clone(), self.multipliers.clone(), k)
    }

    /// Unreduced generator: row `j` is `(b_i a_i^j)_i`.
    pub fn evaluation_matrix(&self) -> Matrix {
        let f = &self.field;
        let n = self.len();
        let mut m = Matrix::zeros(f, self.k, n);
        let mut cur = self.multipliers.clone();
        for j in 0..self.k {
            m.row_mut(j).copy_from_slice(&cur);
            for (c, &a) in cur.iter_mut().zip(&self.points) {
                *c = f.mul(*c, a);
            }
        }
        m
    }

    pub fn code(&self) -> LinearCode {
        LinearCode::span_of(&self.evaluation_matrix())
    }

    /// `b⊥_i = 1 / (b_i ∏_{j≠i} (a_i − a_j))`, so that
    /// `GRS_k(a, b)^⊥ = GRS_{n−k}(a, b⊥)`.
    pub fn dual_multipliers(&self) -> Vec<Elem> {
        let f = &self.field;
        let lag = lagrange_denominators(f, &self.points);
        self.multipliers
            .iter()
            .zip(&lag)
            .map(|(&b, &d)| f.inv(f.mul(b, d)).expect("distinct points and nonzero multipliers"))
            .collect()
    }

    /// The dual as a GRS spec; `None` when `k = n` (the dual is zero).
    pub fn dual_spec(&self) -> Option<GrsSpec> {
        (self.k < self.len()).then(|| GrsSpec {
            field: self.field.clone(),
            points: self.points.clone(),
            multipliers: self.dual_multipliers(),
            k: self.len() - self.k,
        })
    }

    /// `GRS_{2k-1}(a, b*b)`, clamped to the full space when `2k − 1 > n`.
    pub fn square_spec(&self) -> GrsSpec {
        let f = &self.field;
        GrsSpec {
            field: f.clone(),
            points: self.points.clone(),
            multipliers: self.multipliers.iter().map(|&b| f.mul(b, b)).collect(),
            k: (2 * self.k - 1).min(self.len()),
        }
    }

    /// Largest t for which the GRS error-correcting pair exists.
    pub fn max_correctable(&self) -> usize {
        (self.len() - self.k) / 2
    }
}

/// `∏_{j≠i} (a_i − a_j)` for each i.
pub fn lagrange_denominators(field: &Field, points: &[Elem]) -> Vec<Elem> {
    points
        .iter()
        .enumerate()
        .map(|(i, &ai)| {
            points
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(1, |acc, (_, &aj)| field.mul(acc, field.sub(ai, aj)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluation_rows() {
        let f = Field::prime(5).unwrap();
        let s = GrsSpec::new(&f, vec![0, 1, 2], vec![1, 1, 1], 2).unwrap();
        assert_eq!(s.evaluation_matrix().to_rows(), vec![vec![1, 1, 1], vec![0, 1, 2]]);
        let s1 = GrsSpec::new(&f, vec![0, 1, 2], vec![3, 1, 4], 1).unwrap();
        assert_eq!(s1.code().generator().to_rows(), vec![vec![1, 2, 3]]);
    }

    #[test]
    fn invalid_specs() {
        let f = Field::prime(5).unwrap();
        assert!(GrsSpec::new(&f, vec![0, 1, 1], vec![1, 1, 1], 2).is_err());
        assert!(GrsSpec::new(&f, vec![0, 1, 2], vec![1, 0, 1], 2).is_err());
        assert!(GrsSpec::new(&f, vec![0, 1, 2], vec![1, 1, 1], 0).is_err());
        assert!(GrsSpec::new(&f, vec![0, 1, 2], vec![1, 1], 1).is_err());
    }

    #[test]
    fn grs_is_mds() {
        let f = Field::prime(5).unwrap();
        let s = GrsSpec::new(&f, vec![0, 1, 2, 3], vec![1, 1, 1, 1], 2).unwrap();
        assert_eq!(s.code().min_distance_bruteforce().unwrap(), 3);
    }

    #[test]
    fn dual_is_grs() {
        let f = Field::of_order(16).unwrap();
        for seed in 0..5 {
            let s = GrsSpec::random(&f, 12, 5, seed).unwrap();
            assert_eq!(s.code().dual(), s.dual_spec().unwrap().code());
        }
    }

    #[test]
    fn square_example() {
        let f = Field::prime(5).unwrap();
        let s = GrsSpec::new(&f, vec![0, 1, 2, 3], vec![1, 1, 1, 1], 2).unwrap();
        let sq = s.code().square();
        assert_eq!(sq.dim(), 3);
        assert_eq!(sq, s.with_dim(3).unwrap().code());
    }
}
