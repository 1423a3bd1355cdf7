//! Genus-zero key recovery: Sidelnikov–Shestakov reconstruction of GRS
//! evaluation points, recovery of column multipliers for a subcode, and the
//! complete attack on GRS-subcode public keys.
//!
//! In systematic form `[I | R]` of `GRS_k(a, b)` on information set `I`,
//! `R[i][c] = β_c / ((a_c − a_i) α_i)`. Quotients of four such entries are
//! cross-ratios of evaluation points, which pins down `a` up to a Möbius
//! transformation; any representative of that orbit yields the same family of
//! codes once multipliers are recomputed.

use std::time::Instant;

use crate::attack::{elapsed_ms, StageTimings};
use crate::code::LinearCode;
use crate::crypto::{MessageDecoder, PublicKey};
use crate::ecp::build_ecp_grs;
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::grs::{lagrange_denominators, GrsSpec};
use crate::matrix::Matrix;

/// Finds `(a, b)` with `GRS_k(a, b) = c`, normalized to `a_0 = 0`, `a_1 = 1`.
pub fn ss_recover(c: &LinearCode, k: usize) -> Result<GrsSpec> {
    let f = c.field();
    let n = c.len();
    let fail = |msg: &str| Error::attack("ss-recover", msg.to_string());
    if c.dim() != k || k == 0 {
        return Err(fail("code dimension does not match k"));
    }
    if n > f.order() as usize {
        return Err(fail("length exceeds the number of affine points"));
    }
    if k == n {
        return GrsSpec::new(f, canonical_points(n), vec![1; n], k);
    }
    let points = if k == 1 || k == n - 1 {
        // every choice of distinct points works; multipliers absorb the rest
        canonical_points(n)
    } else {
        reconstruct_points(c, k).ok_or_else(|| fail("systematic form is not that of a GRS code"))?
    };
    let multipliers =
        recover_multipliers(c, &points, k)?.ok_or_else(|| fail("no multipliers for reconstructed points"))?;
    let spec = GrsSpec::new(f, points, multipliers, k)?;
    if spec.code() != *c {
        return Err(fail("reconstructed GRS code differs from the input"));
    }
    Ok(spec)
}

fn canonical_points(n: usize) -> Vec<Elem> {
    (0..n as Elem).collect()
}

/// Cross-ratio reconstruction for `2 ≤ k ≤ n − 2`.
fn reconstruct_points(c: &LinearCode, k: usize) -> Option<Vec<Elem>> {
    let f = c.field();
    let n = c.len();
    if c.pivots() != (0..k).collect::<Vec<_>>().as_slice() {
        return None;
    }
    let g = c.generator();
    let r = |i: usize, col: usize| g.get(i, col);
    if (0..k).any(|i| (k..n).any(|col| r(i, col) == 0)) {
        return None;
    }
    let div = |a: Elem, b: Elem| f.div(a, b).ok();
    // projective frame: a_0 = 0, a_1 = 1, a_k = ∞
    let (p, q, inf, c1) = (0, 1, k, k + 1);
    let mut affine: Vec<Option<Elem>> = vec![None; n];
    affine[p] = Some(0);
    affine[q] = Some(1);
    for col in k + 1..n {
        // CR(a_p, a_q; a_col, ∞) = a_col / (a_col − 1)
        let quot = div(f.mul(r(p, col), r(q, inf)), f.mul(r(q, col), r(p, inf)))?;
        let lambda = f.inv(quot).ok()?;
        if lambda == 1 {
            return None;
        }
        affine[col] = Some(div(lambda, f.sub(lambda, 1))?);
    }
    let y = affine[c1]?;
    for i in 2..k {
        // CR(a_i, 0; y, ∞) = (y − a_i) / y
        let quot = div(f.mul(r(i, c1), r(p, inf)), f.mul(r(p, c1), r(i, inf)))?;
        let lambda = f.inv(quot).ok()?;
        affine[i] = Some(f.mul(y, f.sub(1, lambda)));
    }

    // send ∞ to an affine point via x ↦ 1/(x − z)
    let used: Vec<Elem> = affine.iter().flatten().copied().collect();
    let z = f.elements().find(|e| !used.contains(e))?;
    let moved: Vec<Elem> = affine
        .iter()
        .map(|a| match a {
            None => Some(0),
            Some(x) => f.inv(f.sub(*x, z)).ok(),
        })
        .collect::<Option<_>>()?;
    // then renormalize a_0 = 0, a_1 = 1
    let scale = f.inv(f.sub(moved[1], moved[0])).ok()?;
    let points: Vec<Elem> = moved.iter().map(|&x| f.mul(f.sub(x, moved[0]), scale)).collect();
    let mut sorted = points.clone();
    sorted.sort_unstable();
    sorted.dedup();
    (sorted.len() == n).then_some(points)
}

/// Solves `Σ_i c_i γ_i a_i^j = 0` over the rows `c` of `c_pub` and
/// `j < n − k`; a one-dimensional all-nonzero solution `γ` gives
/// `b_i = 1 / (γ_i ∏_{j≠i} (a_i − a_j))`. Returns `None` unless the result
/// satisfies `c_pub ⊆ GRS_k(a, b)`.
pub fn recover_multipliers(c_pub: &LinearCode, points: &[Elem], k: usize) -> Result<Option<Vec<Elem>>> {
    let f = c_pub.field();
    let n = c_pub.len();
    if points.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: points.len() });
    }
    if k == 0 || k >= n {
        return Ok(None);
    }
    // validates distinctness
    GrsSpec::new(f, points.to_vec(), vec![1; n], k)?;
    let checks = n - k;
    let mut rows = Matrix::zeros(f, c_pub.dim() * checks, n);
    let mut r = 0;
    for word in c_pub.generator().row_iter() {
        let mut cur = word.to_vec();
        for _ in 0..checks {
            rows.row_mut(r).copy_from_slice(&cur);
            r += 1;
            for (x, &a) in cur.iter_mut().zip(points) {
                *x = f.mul(*x, a);
            }
        }
    }
    let kernel = rows.kernel();
    if kernel.rows() != 1 {
        return Ok(None);
    }
    let gamma = kernel.row(0);
    if gamma.contains(&0) {
        return Ok(None);
    }
    let lag = lagrange_denominators(f, points);
    let b: Vec<Elem> = gamma
        .iter()
        .zip(&lag)
        .map(|(&g, &l)| f.inv(f.mul(g, l)))
        .collect::<Result<_>>()?;
    let spec = GrsSpec::new(f, points.to_vec(), b, k)?;
    Ok(spec.code().contains(c_pub)?.then(|| spec.multipliers().to_vec()))
}

/// A GRS structure recovered from a public key; `certified` means the public
/// code was checked to lie inside `GRS_k(a, b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecoveredGrs {
    pub spec: GrsSpec,
    pub certified: bool,
}

#[derive(Clone, Debug)]
pub struct GrsAttack {
    pub recovered: RecoveredGrs,
    pub decoder: MessageDecoder,
    pub square_dim: usize,
    pub timings: StageTimings,
}

/// Square the public code, infer k from `dim C^(2) = 2k − 1`, reconstruct
/// the points from the square, recover multipliers for the public code, and
/// build an ECP decoder for `pk.t()` errors.
pub fn grs_full_attack(pk: &PublicKey) -> Result<GrsAttack> {
    let c_pub = pk.code();
    let n = c_pub.len();
    let mut timings = StageTimings::default();

    let start = Instant::now();
    let square = c_pub.square();
    timings.square_ms = elapsed_ms(start);
    let sq_dim = square.dim();
    if square.is_full() {
        return Err(Error::attack("square", format!("square of the public code is F_q^{}", n)));
    }
    if sq_dim.is_multiple_of(2) {
        return Err(Error::attack("k-inference", format!("square dimension {} is even", sq_dim)));
    }
    let k = sq_dim.div_ceil(2);

    let start = Instant::now();
    let square_spec = ss_recover(&square, sq_dim)?;
    let b = recover_multipliers(&c_pub, square_spec.points(), k)?
        .ok_or_else(|| Error::attack("multipliers", "no consistent multipliers for the public code"))?;
    let spec = GrsSpec::new(c_pub.field(), square_spec.points().to_vec(), b, k)?;
    timings.closure_ms = elapsed_ms(start);

    let start = Instant::now();
    let pair = build_ecp_grs(&spec, pk.t()).map_err(|e| Error::attack("ecp", e.to_string()))?;
    let decoder = MessageDecoder::new(pair, pk.generator(), None)?;
    timings.ecp_ms = elapsed_ms(start);

    Ok(GrsAttack {
        recovered: RecoveredGrs { spec, certified: true },
        decoder,
        square_dim: sq_dim,
        timings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::random_full_rank;
    use crate::field::Field;

    #[test]
    fn small_grs_roundtrip() {
        let f = Field::prime(5).unwrap();
        let s = GrsSpec::new(&f, vec![0, 1, 2, 3], vec![1, 1, 1, 1], 2).unwrap();
        let r = ss_recover(&s.code(), 2).unwrap();
        assert_eq!(r.code(), s.code());
        assert_eq!(&r.points()[..2], &[0, 1]);
    }

    #[test]
    fn dimension_one() {
        let f = Field::prime(11).unwrap();
        let v = vec![3, 1, 4, 1, 5, 9, 2, 6];
        let c = LinearCode::span_of(&Matrix::from_rows(&f, 8, &[v]).unwrap());
        let r = ss_recover(&c, 1).unwrap();
        assert_eq!(r.code(), c);
    }

    #[test]
    fn random_grs_codes() {
        for (q, n, k) in [(61, 60, 39), (16, 15, 5), (23, 20, 11), (13, 12, 10), (49, 40, 7)] {
            let f = Field::of_order(q).unwrap();
            for seed in 0..3 {
                let s = GrsSpec::random(&f, n, k, seed).unwrap();
                let r = ss_recover(&s.code(), k).unwrap();
                assert_eq!(r.code(), s.code(), "q={} n={} k={}", q, n, k);
            }
        }
    }

    #[test]
    fn random_code_is_rejected() {
        let f = Field::prime(11).unwrap();
        let g = random_full_rank(&f, 3, 8, 4).unwrap();
        let c = LinearCode::span_of(&g);
        assert!(ss_recover(&c, 3).is_err());
    }

    #[test]
    fn multipliers_for_whole_code_and_subcode() {
        let f = Field::prime(61).unwrap();
        let s = GrsSpec::random(&f, 60, 20, 8).unwrap();
        let b = recover_multipliers(&s.code(), s.points(), 20).unwrap().unwrap();
        let again = GrsSpec::new(&f, s.points().to_vec(), b, 20).unwrap();
        assert_eq!(again.code(), s.code());

        let sub = s.code().random_subcode(10, 2).unwrap();
        let b = recover_multipliers(&sub, s.points(), 20).unwrap().unwrap();
        let enclosing = GrsSpec::new(&f, s.points().to_vec(), b, 20).unwrap();
        assert!(enclosing.code().contains(&sub).unwrap());

        let mut wrong = s.points().to_vec();
        let spare = f.elements().find(|e| !wrong.contains(e)).unwrap();
        wrong[7] = spare;
        assert_eq!(recover_multipliers(&sub, &wrong, 20).unwrap(), None);
    }
}
