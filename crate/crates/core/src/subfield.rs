//! Subfield subcodes `C ∩ F^n` and the resistance experiment.

use crate::attack::attack_recover_code;
use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::field::{prime_power, Elem, Field};
use crate::matrix::Matrix;

/// Degree `e` of the subfield of order `sub_order` inside `field`.
fn subfield_degree(field: &Field, sub_order: u32) -> Result<u32> {
    let (p, e) = prime_power(sub_order)
        .ok_or_else(|| Error::param(format!("{} is not a prime power", sub_order)))?;
    if p != field.characteristic() || !field.degree().is_multiple_of(e) {
        return Err(Error::param(format!("GF({}) is not a subfield of {}", sub_order, field)));
    }
    Ok(e)
}

/// `C ∩ GF(sub_order)^n`, returned as its `F_q`-span (extension of scalars).
///
/// Writes each coordinate as `Σ_u x_u γ^u` with `x_u ∈ F_p` and `γ` a
/// primitive element of the subfield, then solves `H a = 0` over `F_p` by
/// expanding every `F_q` entry into its base-p digits.
pub fn subfield_subcode(c: &LinearCode, sub_order: u32) -> Result<LinearCode> {
    let f = c.field();
    let n = c.len();
    let e = subfield_degree(f, sub_order)? as usize;
    if e as u32 == f.degree() {
        return Ok(c.clone());
    }
    let m = f.degree() as usize;
    let gamma = f.pow(f.primitive(), ((f.order() - 1) / (sub_order - 1)) as u64);
    let basis: Vec<Elem> = (0..e).map(|u| f.pow(gamma, u as u64)).collect();
    let h = c.parity_check();
    let r = h.rows();
    let fp = Field::prime(f.characteristic())?;

    let mut sys = Matrix::zeros(&fp, r * m, n * e);
    for i in 0..n {
        for (u, &beta) in basis.iter().enumerate() {
            for row in 0..r {
                let digits = f.digits(f.mul(beta, h.get(row, i)));
                for (d, &x) in digits.iter().enumerate() {
                    sys.set(row * m + d, i * e + u, x as Elem);
                }
            }
        }
    }
    let kernel = sys.kernel();
    let mut words = Matrix::zeros(f, kernel.rows(), n);
    for (w, x) in kernel.row_iter().enumerate() {
        for i in 0..n {
            let mut a = 0;
            for (u, &beta) in basis.iter().enumerate() {
                let coeff = x[i * e + u];
                a = f.add(a, f.mul(coeff, beta));
            }
            words.set(w, i, a);
        }
    }
    Ok(LinearCode::span_of(&words))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubfieldReport {
    pub n: usize,
    pub enclosing_dim: usize,
    pub subcode_dim: usize,
    pub square_dim: usize,
    pub recovered_dim: usize,
    /// The subfield subcode is zero; nothing to attack.
    pub trivial: bool,
    /// The square filled the whole space.
    pub degenerate: bool,
    /// The closure is strictly inside the enclosing code.
    pub proper_subcode: bool,
    /// The closure differs from the enclosing code.
    pub resistant: bool,
}

/// Builds `C ∩ F^n`, extends scalars back to `F_q`, and runs the closure
/// attack against it.
pub fn subfield_resistance(enclosing: &LinearCode, sub_order: u32) -> Result<SubfieldReport> {
    let sub = subfield_subcode(enclosing, sub_order)?;
    let n = enclosing.len();
    let mut report = SubfieldReport {
        n,
        enclosing_dim: enclosing.dim(),
        subcode_dim: sub.dim(),
        square_dim: 0,
        recovered_dim: 0,
        trivial: sub.is_zero(),
        degenerate: false,
        proper_subcode: false,
        resistant: false,
    };
    if report.trivial {
        return Ok(report);
    }
    let out = attack_recover_code(&sub);
    report.square_dim = out.square_dim;
    report.recovered_dim = out.code.dim();
    report.degenerate = out.degenerate;
    report.proper_subcode = out.code != *enclosing && enclosing.contains(&out.code)?;
    report.resistant = out.code != *enclosing;
    Ok(report)
}
