//! Error-correcting pairs.
//!
//! A t-ECP for a code `C` is a pair `(A, B)` with `A * B ⊆ C⊥`, `dim A > t`,
//! `d(B⊥) > t` and `d(A) + d(C) > n`. Decoding a received word `y` first
//! finds a nonzero `a ∈ A` with `⟨a * y, b⟩ = 0` for every `b ∈ B`; the
//! error support lies inside the zero set of `a`, and the error values follow
//! from the syndrome restricted to those positions.

use std::fmt;

use crate::code::{hamming_weight, LinearCode};
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::grs::GrsSpec;
use crate::hermitian::HermitianSpec;
use crate::matrix::Matrix;

/// Designed lower bounds on the minimum distances the ECP conditions need.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DistanceBounds {
    pub a: usize,
    pub code: usize,
    pub b_dual: usize,
}

#[derive(Clone, Debug)]
pub struct EcpPair {
    a: LinearCode,
    b: LinearCode,
    code: LinearCode,
    parity: Matrix,
    t: usize,
    bounds: DistanceBounds,
}

/// The inequality an [`EcpPair`] violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EcpCondition {
    Lengths,
    DimensionOfA,
    ProductInDual,
    DistanceOfBDual,
    DistanceSum,
}

impl fmt::Display for EcpCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EcpCondition::Lengths => "lengths and fields agree",
            EcpCondition::DimensionOfA => "dim A >= t + 1",
            EcpCondition::ProductInDual => "A * B ⊆ C⊥",
            EcpCondition::DistanceOfBDual => "d(B⊥) > t",
            EcpCondition::DistanceSum => "d(A) + d(C) > n",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EcpCertificate {
    pub t: usize,
    pub n: usize,
    pub dim_a: usize,
    pub dim_b: usize,
    pub bounds: DistanceBounds,
    pub failed: Option<EcpCondition>,
}

impl EcpCertificate {
    pub fn passed(&self) -> bool {
        self.failed.is_none()
    }
}

/// A successful decode together with the locator used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decoded {
    pub codeword: Vec<Elem>,
    pub error: Vec<Elem>,
    pub locator: Vec<Elem>,
}

impl EcpPair {
    pub fn new(a: LinearCode, b: LinearCode, code: LinearCode, t: usize, bounds: DistanceBounds) -> Self {
        let parity = code.parity_check();
        EcpPair { a, b, code, parity, t, bounds }
    }

    pub fn a(&self) -> &LinearCode {
        &self.a
    }

    pub fn b(&self) -> &LinearCode {
        &self.b
    }

    pub fn code(&self) -> &LinearCode {
        &self.code
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn bounds(&self) -> DistanceBounds {
        self.bounds
    }

    /// Checks every ECP condition, reporting the first one that fails.
    pub fn validate(&self) -> EcpCertificate {
        let n = self.code.len();
        let mut cert = EcpCertificate {
            t: self.t,
            n,
            dim_a: self.a.dim(),
            dim_b: self.b.dim(),
            bounds: self.bounds,
            failed: None,
        };
        let compatible = [&self.a, &self.b].iter().all(|c| c.len() == n && c.field() == self.code.field());
        cert.failed = if !compatible {
            Some(EcpCondition::Lengths)
        } else if self.a.dim() < self.t + 1 {
            Some(EcpCondition::DimensionOfA)
        } else if !self.product_in_dual() {
            Some(EcpCondition::ProductInDual)
        } else if self.bounds.b_dual <= self.t {
            Some(EcpCondition::DistanceOfBDual)
        } else if self.bounds.a + self.bounds.code <= n {
            Some(EcpCondition::DistanceSum)
        } else {
            None
        };
        cert
    }

    fn product_in_dual(&self) -> bool {
        // C ⊥ A*B  ⇔  (a * c) · Bᵀ = 0 for all basis vectors a, c
        let f = self.code.field();
        let bt = self.b.generator().transpose();
        self.a.generator().row_iter().all(|ra| {
            self.code.generator().row_iter().all(|c| {
                let prod = f.hadamard(ra, c);
                bt.vec_mul(&prod).is_ok_and(|v| v.iter().all(|&x| x == 0))
            })
        })
    }

    pub fn decode(&self, y: &[Elem]) -> Result<Vec<Elem>> {
        Ok(self.decode_detailed(y)?.codeword)
    }

    pub fn decode_detailed(&self, y: &[Elem]) -> Result<Decoded> {
        let n = self.code.len();
        if y.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: y.len() });
        }
        let f = self.code.field();
        let syndrome = self.parity.mul_vec(y)?;
        if syndrome.iter().all(|&s| s == 0) {
            let mut locator = vec![0; n];
            if let Some(r) = self.a.generator().row_iter().next() {
                locator.copy_from_slice(r);
            }
            return Ok(Decoded { codeword: y.to_vec(), error: vec![0; n], locator });
        }

        // locating system: columns indexed by A's basis, rows by B's basis
        let ay: Vec<Vec<Elem>> = self.a.generator().row_iter().map(|r| f.hadamard(r, y)).collect();
        let mut m = Matrix::zeros(f, self.b.dim(), self.a.dim());
        for (r, rb) in self.b.generator().row_iter().enumerate() {
            for (s, v) in ay.iter().enumerate() {
                m.set(r, s, f.dot(rb, v));
            }
        }
        let kernel = m.kernel();
        if kernel.rows() == 0 {
            return Err(Error::Decode("locating kernel is trivial".into()));
        }

        for coeffs in kernel.row_iter() {
            let locator = self.a.generator().vec_mul(coeffs)?;
            let zeros: Vec<usize> = (0..n).filter(|&i| locator[i] == 0).collect();
            let restricted = self.parity.select_columns(&zeros);
            let Some(sol) = restricted.solve_detailed(&syndrome)? else {
                continue;
            };
            if !sol.unique {
                continue;
            }
            let mut error = vec![0; n];
            for (&pos, &v) in zeros.iter().zip(&sol.solution) {
                error[pos] = v;
            }
            if hamming_weight(&error) > self.t {
                continue;
            }
            let codeword = y.iter().zip(&error).map(|(&a, &e)| f.sub(a, e)).collect();
            return Ok(Decoded { codeword, error, locator });
        }
        Err(Error::Decode(format!("no error pattern of weight <= {} found", self.t)))
    }
}

pub fn ecp_validate(pair: &EcpPair) -> EcpCertificate {
    pair.validate()
}

pub fn ecp_decode(pair: &EcpPair, y: &[Elem]) -> Result<Vec<Elem>> {
    pair.decode(y)
}

/// `A = GRS_{t+1}(a, 1)`, `B = GRS_{n−k−t}(a, b⊥)`, so `A * B ⊆ GRS_{n−k}(a, b⊥) = C⊥`.
pub fn build_ecp_grs(spec: &GrsSpec, t: usize) -> Result<EcpPair> {
    let n = spec.len();
    let k = spec.dim();
    if t > spec.max_correctable() {
        return Err(Error::param(format!("t = {} exceeds (n - k)/2 = {}", t, spec.max_correctable())));
    }
    let field = spec.field();
    let a = GrsSpec::new(field, spec.points().to_vec(), vec![1; n], t + 1)?.code();
    let b_dim = n - k - t;
    let b = if b_dim == 0 {
        LinearCode::zero(field, n)
    } else {
        GrsSpec::new(field, spec.points().to_vec(), spec.dual_multipliers(), b_dim)?.code()
    };
    let bounds = DistanceBounds { a: n - t, code: n - k + 1, b_dual: n - k - t + 1 };
    Ok(EcpPair::new(a, b, spec.code(), t, bounds))
}

/// `A = C((t+g)P∞)`, `B = C((m⊥ − t − g)P∞)` with `m⊥ = n + 2g − 2 − m`.
pub fn build_ecp_hermitian(spec: &HermitianSpec, t: usize) -> Result<EcpPair> {
    let max = spec.max_correctable();
    if max.is_none_or(|max| t > max) {
        return Err(Error::param(format!(
            "t = {} exceeds (n - m - 1 - g)/2 for q0 = {}, m = {}",
            t,
            spec.q0(),
            spec.degree()
        )));
    }
    let n = spec.len() as i64;
    let g = spec.genus() as i64;
    let m = spec.degree();
    let t_i = t as i64;
    let m_dual = spec.dual().degree();
    let a = spec.with_degree(t_i + g).code();
    let b = spec.with_degree(m_dual - t_i - g).code();
    let bounds = DistanceBounds {
        a: (n - t_i - g) as usize,
        code: spec.distance_bound(),
        b_dual: (n - m - t_i - g).max(0) as usize,
    };
    Ok(EcpPair::new(a, b, spec.code(), t, bounds))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn grs_pair_small() {
        let f = Field::prime(5).unwrap();
        let s = GrsSpec::new(&f, vec![0, 1, 2, 3], vec![1, 1, 1, 1], 2).unwrap();
        let pair = build_ecp_grs(&s, 1).unwrap();
        assert_eq!(pair.a().dim(), 2);
        assert_eq!(pair.b().dim(), 1);
        assert!(pair.validate().passed());
        assert!(build_ecp_grs(&s, 2).is_err());
    }

    #[test]
    fn grs_pair_t0_is_membership() {
        let f = Field::prime(13).unwrap();
        let s = GrsSpec::random(&f, 12, 4, 9).unwrap();
        let pair = build_ecp_grs(&s, 0).unwrap();
        assert!(pair.a().generator().to_rows() == vec![vec![1; 12]]);
        assert!(pair.validate().passed());
        let c = s.code().encode(&[1, 2, 3, 4]).unwrap();
        assert_eq!(pair.decode(&c).unwrap(), c);
        let mut y = c.clone();
        y[3] = f.add(y[3], 1);
        assert!(pair.decode(&y).is_err());
    }

    #[test]
    fn degenerate_pair_fails_dimension() {
        let s = HermitianSpec::new(2, 3).unwrap();
        let c = s.code();
        let n = c.len();
        let pair = EcpPair::new(
            c.dual(),
            LinearCode::full(c.field(), n),
            c.clone(),
            n,
            DistanceBounds { a: 1, code: 1, b_dual: n + 1 },
        );
        let cert = pair.validate();
        assert_eq!(cert.failed, Some(EcpCondition::DimensionOfA));
    }

    #[test]
    fn hermitian_pair_small() {
        let s = HermitianSpec::new(2, 3).unwrap();
        let pair = build_ecp_hermitian(&s, 1).unwrap();
        assert_eq!(pair.a(), &s.with_degree(2).code());
        assert_eq!(pair.b(), &s.with_degree(3).code());
        assert_eq!(pair.a().dim(), 2);
        assert_eq!(pair.b().dim(), 3);
        let cert = pair.validate();
        assert!(cert.passed(), "{:?}", cert);
        assert!(cert.bounds.b_dual >= 3);
        assert!(build_ecp_hermitian(&s, 3).is_err());
    }

    #[test]
    fn hermitian_pair_table_scale_exists() {
        let s = HermitianSpec::new(7, 170).unwrap();
        assert_eq!(s.max_correctable(), Some(75));
        let pair = build_ecp_hermitian(&s, 54).unwrap();
        assert!(pair.validate().passed());
        assert_eq!(pair.a().dim(), 55);
    }

    #[test]
    fn zero_error_returns_input() {
        let s = HermitianSpec::new(3, 8).unwrap();
        let t = s.max_correctable().unwrap();
        let pair = build_ecp_hermitian(&s, t).unwrap();
        let c = s.code().generator().row(2).to_vec();
        assert_eq!(pair.decode(&c).unwrap(), c);
    }
}
