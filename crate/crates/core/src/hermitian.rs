//! One-point codes `C(mP∞)` on the Hermitian curve `y^q0 + y = x^(q0+1)`
//! over GF(q0²).
//!
//! The evaluation set is all `q0³` affine points, ordered by the index of `x`
//! and then of `y`. `L(mP∞)` is spanned by the monomials `x^i y^j` with
//! `0 ≤ j < q0` and pole order `i·q0 + j·(q0+1) ≤ m`.

use std::sync::Arc;

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::field::{prime_power, Elem, Field};
use crate::matrix::Matrix;

/// The curve together with its canonically ordered rational affine points.
#[derive(Debug, PartialEq, Eq)]
pub struct HermitianCurve {
    field: Arc<Field>,
    q0: u32,
    points: Vec<(Elem, Elem)>,
}

impl HermitianCurve {
    pub fn new(q0: u32) -> Result<Arc<Self>> {
        let (p, e) = prime_power(q0)
            .ok_or_else(|| Error::param(format!("q0 = {} is not a prime power", q0)))?;
        let field = Field::new(p, 2 * e)?;
        Self::over(&field, q0)
    }

    /// The curve over an explicitly given GF(q0²).
    pub fn over(field: &Arc<Field>, q0: u32) -> Result<Arc<Self>> {
        if (q0 as u64) * (q0 as u64) != field.order() as u64 {
            return Err(Error::param(format!("field of order {} is not GF({}^2)", field.order(), q0)));
        }
        let mut points = Vec::with_capacity((q0 as usize).pow(3));
        for x in field.elements() {
            let rhs = field.pow(x, q0 as u64 + 1);
            for y in field.elements() {
                if field.add(field.pow(y, q0 as u64), y) == rhs {
                    points.push((x, y));
                }
            }
        }
        Ok(Arc::new(HermitianCurve { field: field.clone(), q0, points }))
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn q0(&self) -> u32 {
        self.q0
    }

    pub fn points(&self) -> &[(Elem, Elem)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn genus(&self) -> usize {
        let q0 = self.q0 as usize;
        q0 * (q0 - 1) / 2
    }
}

/// The code `C(X, P, mP∞)`. Negative `m` gives the zero code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianSpec {
    curve: Arc<HermitianCurve>,
    m: i64,
}

impl HermitianSpec {
    pub fn new(q0: u32, m: i64) -> Result<Self> {
        Ok(HermitianSpec { curve: HermitianCurve::new(q0)?, m })
    }

    pub fn on_curve(curve: &Arc<HermitianCurve>, m: i64) -> Self {
        HermitianSpec { curve: curve.clone(), m }
    }

    pub fn curve(&self) -> &Arc<HermitianCurve> {
        &self.curve
    }

    pub fn field(&self) -> &Arc<Field> {
        self.curve.field()
    }

    pub fn q0(&self) -> u32 {
        self.curve.q0
    }

    pub fn degree(&self) -> i64 {
        self.m
    }

    pub fn len(&self) -> usize {
        self.curve.len()
    }

    pub fn genus(&self) -> usize {
        self.curve.genus()
    }

    pub fn with_degree(&self, m: i64) -> Self {
        HermitianSpec { curve: self.curve.clone(), m }
    }

    /// Exponents `(i, j)` of the monomial basis of `L(mP∞)`.
    pub fn monomials(&self) -> Vec<(u64, u64)> {
        let q0 = self.q0() as i64;
        let mut out = Vec::new();
        for j in 0..q0 {
            let mut i = 0;
            while i * q0 + j * (q0 + 1) <= self.m {
                out.push((i as u64, j as u64));
                i += 1;
            }
        }
        out
    }

    pub fn evaluation_matrix(&self) -> Matrix {
        let f = self.field();
        let mons = self.monomials();
        let n = self.len();
        let mut g = Matrix::zeros(f, mons.len(), n);
        for (r, &(i, j)) in mons.iter().enumerate() {
            let row = g.row_mut(r);
            for (c, &(x, y)) in self.curve.points.iter().enumerate() {
                row[c] = f.mul(f.pow(x, i), f.pow(y, j));
            }
        }
        g
    }

    pub fn code(&self) -> LinearCode {
        LinearCode::span_of(&self.evaluation_matrix())
    }

    /// Riemann–Roch dimension, exact for `2g − 2 < m < n`.
    pub fn expected_dim(&self) -> Option<usize> {
        let g = self.genus() as i64;
        let n = self.len() as i64;
        (self.m > 2 * g - 2 && self.m < n).then(|| (self.m + 1 - g) as usize)
    }

    /// Whether `m ≥ n + 2g − 1`, where evaluation fills the whole space.
    pub fn is_full_space(&self) -> bool {
        self.m >= self.len() as i64 + 2 * self.genus() as i64 - 1
    }

    /// The spec of the dual code: degree `n + 2g − 2 − m`.
    pub fn dual(&self) -> HermitianSpec {
        let m_dual = self.len() as i64 + 2 * self.genus() as i64 - 2 - self.m;
        self.with_degree(m_dual)
    }

    /// Goppa lower bound `n − m` on the minimum distance (1 when vacuous).
    pub fn distance_bound(&self) -> usize {
        (self.len() as i64 - self.m).max(1) as usize
    }

    /// Largest t for which [`crate::ecp::build_ecp_hermitian`] succeeds.
    pub fn max_correctable(&self) -> Option<usize> {
        let v = self.len() as i64 - self.m - 1 - self.genus() as i64;
        (v >= 0).then_some((v / 2) as usize)
    }
}
