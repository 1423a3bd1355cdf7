//! Finite fields GF(p^m) with q = p^m ≤ 2^16.
//!
//! An element is stored as its integer index in `[0, q)`: the coefficient
//! vector `(c0, .., c_{m-1})` of its polynomial representative, packed
//! little-endian in base p. Index 0 is the additive identity and index 1 the
//! multiplicative identity.
//!
//! Multiplication goes through log/antilog tables built from the smallest
//! primitive element. Small fields (q ≤ 256) additionally carry full
//! multiplication and addition tables, which the row operations of the
//! linear algebra layer use in their inner loops.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A field element, encoded as described in the module docs.
pub type Elem = u16;

/// Largest supported field order.
pub const MAX_ORDER: u32 = 1 << 16;

const SMALL_TABLE_LIMIT: u32 = 256;

/// The operations accepted by [`Field::arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Inv,
    Pow,
}

pub struct Field {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    primitive: Elem,
    exp: Vec<Elem>,
    log: Vec<u32>,
    neg: Vec<Elem>,
    mul_table: Option<Vec<Elem>>,
    add_table: Option<Vec<Elem>>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self)
    }
}

/// Text form: `GF <p> <m> <c0> .. <cm>`, modulus coefficients ascending.
impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF {} {}", self.p, self.m)?;
        for c in &self.modulus {
            write!(f, " {}", c)?;
        }
        Ok(())
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^e` when it is a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while !q.is_multiple_of(p) {
        p += 1;
    }
    let mut e = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p, e))
}

// Dense polynomials over GF(p), ascending coefficients.

fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p);
    while r.len() > db {
        let top = r.len() - 1;
        let coef = r[top] * lead_inv % p;
        let shift = top - db;
        for (i, &bi) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - coef * bi % p) % p;
        }
        poly_trim(&mut r);
    }
    r
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut v = low;
            for _ in 0..d {
                g.push((v % p as u64) as u32);
                v /= p as u64;
            }
            g.push(1);
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree `m` over GF(p),
/// ordering candidates by the base-p integer formed from `c0..c_{m-1}`.
pub fn default_modulus(p: u32, m: u32) -> Vec<u32> {
    let count = (p as u64).pow(m);
    for low in 0..count {
        let mut f = Vec::with_capacity(m as usize + 1);
        let mut v = low;
        for _ in 0..m {
            f.push((v % p as u64) as u32);
            v /= p as u64;
        }
        f.push(1);
        if m == 1 || (f[0] != 0 && is_irreducible(&f, p)) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl Field {
    /// GF(p^m) with the default modulus.
    pub fn new(p: u32, m: u32) -> Result<Arc<Field>> {
        Self::check_size(p, m)?;
        Self::with_modulus(p, m, default_modulus(p, m))
    }

    /// GF(q) for a prime power q.
    pub fn of_order(q: u32) -> Result<Arc<Field>> {
        let (p, m) = prime_power(q)
            .ok_or_else(|| Error::InvalidField(format!("{} is not a prime power", q)))?;
        Self::new(p, m)
    }

    pub fn prime(p: u32) -> Result<Arc<Field>> {
        Self::new(p, 1)
    }

    fn check_size(p: u32, m: u32) -> Result<u32> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("characteristic {} is not prime", p)));
        }
        if m == 0 {
            return Err(Error::InvalidField("extension degree must be at least 1".into()));
        }
        let q = (p as u64).checked_pow(m).filter(|&q| q <= MAX_ORDER as u64);
        q.map(|q| q as u32).ok_or_else(|| {
            Error::InvalidField(format!("GF({}^{}) exceeds the supported order 2^16", p, m))
        })
    }

    pub fn with_modulus(p: u32, m: u32, modulus: Vec<u32>) -> Result<Arc<Field>> {
        let q = Self::check_size(p, m)?;
        if modulus.len() != m as usize + 1 {
            return Err(Error::InvalidField(format!(
                "modulus needs {} coefficients, got {}",
                m + 1,
                modulus.len()
            )));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField("modulus coefficient out of range".into()));
        }
        if modulus[m as usize] != 1 {
            return Err(Error::InvalidField("modulus is not monic".into()));
        }
        if m > 1 && (modulus[0] == 0 || !is_irreducible(&modulus, p)) {
            return Err(Error::InvalidField("modulus is reducible".into()));
        }

        let mut field = Field {
            p,
            m,
            q,
            modulus,
            primitive: 0,
            exp: Vec::new(),
            log: Vec::new(),
            neg: Vec::new(),
            mul_table: None,
            add_table: None,
        };
        field.neg = (0..q).map(|x| field.neg_digits(x as Elem)).collect();
        field.build_log_tables();
        if q <= SMALL_TABLE_LIMIT {
            let mut mt = vec![0; (q * q) as usize];
            for a in 1..q {
                for b in 1..q {
                    mt[(a * q + b) as usize] = field.mul_log(a as Elem, b as Elem);
                }
            }
            field.mul_table = Some(mt);
            if p != 2 {
                let mut at = vec![0; (q * q) as usize];
                for a in 0..q {
                    for b in 0..q {
                        at[(a * q + b) as usize] = field.add_digits(a as Elem, b as Elem);
                    }
                }
                field.add_table = Some(at);
            }
        }
        Ok(Arc::new(field))
    }

    /// Multiplication straight from the polynomial representation.
    fn mul_poly(&self, a: Elem, b: Elem) -> Elem {
        let m = self.m as usize;
        let p = self.p;
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u32; 2 * m - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        for top in (m..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            for i in 0..m {
                let sub = c * self.modulus[i] % p;
                prod[top - m + i] = (prod[top - m + i] + p - sub) % p;
            }
            prod[top] = 0;
        }
        self.from_digits(&prod[..m])
    }

    fn build_log_tables(&mut self) {
        let q = self.q as usize;
        let order = q - 1;
        let mut exp = vec![0 as Elem; 2 * order.max(1)];
        let mut log = vec![0u32; q];
        for g in 1..q as u32 {
            let g = g as Elem;
            let mut x: Elem = 1;
            let mut ok = true;
            for (i, slot) in exp.iter_mut().take(order).enumerate() {
                if i > 0 && x == 1 {
                    ok = false;
                    break;
                }
                *slot = x;
                x = self.mul_poly(x, g);
            }
            if ok && x == 1 {
                self.primitive = g;
                break;
            }
        }
        for i in 0..order {
            log[exp[i] as usize] = i as u32;
            exp[i + order] = exp[i];
        }
        self.exp = exp;
        self.log = log;
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The smallest (by index) element of multiplicative order q − 1.
    pub fn primitive(&self) -> Elem {
        self.primitive
    }

    pub fn contains(&self, x: u32) -> bool {
        x < self.q
    }

    pub fn check(&self, x: u32) -> Result<Elem> {
        if self.contains(x) {
            Ok(x as Elem)
        } else {
            Err(Error::InvalidElement { value: x, order: self.q })
        }
    }

    /// Base-p digits `c0..c_{m-1}` of an element.
    pub fn digits(&self, x: Elem) -> Vec<u32> {
        let mut v = x as u32;
        (0..self.m)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> Elem {
        digits.iter().rev().fold(0u32, |acc, &d| acc * self.p + d) as Elem
    }

    fn add_digits(&self, a: Elem, b: Elem) -> Elem {
        let (mut a, mut b) = (a as u32, b as u32);
        let mut out = 0u32;
        let mut scale = 1u32;
        for _ in 0..self.m {
            out += ((a % self.p + b % self.p) % self.p) * scale;
            a /= self.p;
            b /= self.p;
            scale *= self.p;
        }
        out as Elem
    }

    fn neg_digits(&self, a: Elem) -> Elem {
        let mut a = a as u32;
        let mut out = 0u32;
        let mut scale = 1u32;
        for _ in 0..self.m {
            out += ((self.p - a % self.p) % self.p) * scale;
            a /= self.p;
            scale *= self.p;
        }
        out as Elem
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            a ^ b
        } else if let Some(t) = &self.add_table {
            t[a as usize * self.q as usize + b as usize]
        } else if self.m == 1 {
            ((a as u32 + b as u32) % self.p) as Elem
        } else {
            self.add_digits(a, b)
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    fn mul_log(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.mul_table {
            Some(t) => t[a as usize * self.q as usize + b as usize],
            None => self.mul_log(a, b),
        }
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        let order = self.q - 1;
        Ok(self.exp[((order - self.log[a as usize]) % order) as usize])
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let order = (self.q - 1) as u64;
        let l = self.log[a as usize] as u64 % order;
        self.exp[((l * (e % order)) % order) as usize]
    }

    /// `log_g(a)` for the primitive element g; `None` for zero.
    pub fn log(&self, a: Elem) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    /// `g^i` for the primitive element g.
    pub fn exp(&self, i: u64) -> Elem {
        self.exp[(i % (self.q as u64 - 1)) as usize]
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: Elem) -> Option<u32> {
        let l = self.log(a)?;
        let n = self.q - 1;
        Some(n / gcd(n, l))
    }

    /// Single entry point over the basic operations. For `Pow` the second
    /// operand is the exponent; for `Inv` it is ignored.
    pub fn arith(&self, op: ArithOp, x: u32, y: u64) -> Result<Elem> {
        let x = self.check(x)?;
        let elem_y = || -> Result<Elem> {
            u32::try_from(y)
                .map_err(|_| Error::InvalidElement { value: u32::MAX, order: self.q })
                .and_then(|v| self.check(v))
        };
        Ok(match op {
            ArithOp::Add => self.add(x, elem_y()?),
            ArithOp::Sub => self.sub(x, elem_y()?),
            ArithOp::Mul => self.mul(x, elem_y()?),
            ArithOp::Inv => self.inv(x)?,
            ArithOp::Pow => self.pow(x, y),
        })
    }

    /// `dst += f * src`, the row operation behind every elimination.
    pub fn axpy(&self, dst: &mut [Elem], f: Elem, src: &[Elem]) {
        debug_assert_eq!(dst.len(), src.len());
        if f == 0 {
            return;
        }
        let q = self.q as usize;
        if let Some(mt) = &self.mul_table {
            let mrow = &mt[f as usize * q..(f as usize + 1) * q];
            if self.p == 2 {
                for (d, &s) in dst.iter_mut().zip(src) {
                    *d ^= mrow[s as usize];
                }
            } else {
                let at = self.add_table.as_ref().expect("odd small fields carry an add table");
                for (d, &s) in dst.iter_mut().zip(src) {
                    *d = at[*d as usize * q + mrow[s as usize] as usize];
                }
            }
        } else if self.p == 2 {
            let lf = self.log[f as usize] as usize;
            for (d, &s) in dst.iter_mut().zip(src) {
                if s != 0 {
                    *d ^= self.exp[lf + self.log[s as usize] as usize];
                }
            }
        } else if self.m == 1 {
            let p = self.p;
            let f = f as u32;
            for (d, &s) in dst.iter_mut().zip(src) {
                *d = ((*d as u32 + f * s as u32) % p) as Elem;
            }
        } else {
            for (d, &s) in dst.iter_mut().zip(src) {
                *d = self.add(*d, self.mul_log(f, s));
            }
        }
    }

    pub fn scale(&self, v: &mut [Elem], f: Elem) {
        for x in v.iter_mut() {
            *x = self.mul(*x, f);
        }
    }

    pub fn dot(&self, a: &[Elem], b: &[Elem]) -> Elem {
        if self.m == 1 {
            let p = self.p as u64;
            let s = a.iter().zip(b).fold(0u64, |acc, (&x, &y)| (acc + x as u64 * y as u64) % p);
            return s as Elem;
        }
        a.iter().zip(b).fold(0, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }

    /// Componentwise product.
    pub fn hadamard(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        a.iter().zip(b).map(|(&x, &y)| self.mul(x, y)).collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.q as Elem
    }

    /// Elements of the subfield of order `p^e`, in increasing index order.
    pub fn subfield_elements(&self, e: u32) -> Result<Vec<Elem>> {
        if e == 0 || !self.m.is_multiple_of(e) {
            return Err(Error::InvalidParameter(format!(
                "GF({}^{}) has no subfield of degree {}",
                self.p, self.m, e
            )));
        }
        let sub_q = self.p.pow(e) as u64;
        Ok(self.elements().filter(|&x| self.pow(x, sub_q) == x).collect())
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn ensure_same(a: &Field, b: &Field) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::FieldMismatch { left: a.to_string(), right: b.to_string() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_products() {
        let f = Field::new(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.mul(2, 3), 1);
    }

    #[test]
    fn gf7_inverse() {
        let f = Field::prime(7).unwrap();
        assert_eq!(f.inv(3).unwrap(), 5);
        assert!(matches!(f.inv(0), Err(Error::ZeroInverse)));
    }

    #[test]
    fn primitive_elements() {
        assert_eq!(Field::prime(2).unwrap().primitive(), 1);
        assert_eq!(Field::prime(7).unwrap().primitive(), 3);
        let f = Field::new(2, 2).unwrap();
        let g = f.primitive();
        assert!(g == 2 || g == 3);
        // brute-force order check
        for field in [Field::new(2, 4).unwrap(), Field::new(7, 2).unwrap(), Field::new(3, 4).unwrap()] {
            let g = field.primitive();
            let mut x = g;
            let mut order = 1;
            while x != 1 {
                x = field.mul(x, g);
                order += 1;
            }
            assert_eq!(order, field.order() - 1);
        }
    }

    #[test]
    fn default_moduli() {
        assert_eq!(Field::new(2, 4).unwrap().modulus(), &[1, 1, 0, 0, 1]);
        assert_eq!(Field::new(7, 2).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(Field::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(Field::new(4, 1).is_err());
        assert!(Field::new(2, 17).is_err());
        assert!(Field::with_modulus(2, 2, vec![1, 0, 1]).is_err());
        assert!(Field::with_modulus(2, 2, vec![1, 1, 0]).is_err());
        assert!(Field::with_modulus(3, 2, vec![2, 0, 1]).is_err());
    }

    #[test]
    fn arith_dispatch() {
        let f = Field::new(2, 2).unwrap();
        assert_eq!(f.arith(ArithOp::Mul, 2, 2).unwrap(), 3);
        assert_eq!(f.arith(ArithOp::Pow, 2, 3).unwrap(), 1);
        assert!(f.arith(ArithOp::Inv, 0, 0).is_err());
        assert!(f.arith(ArithOp::Add, 4, 0).is_err());
    }

    #[test]
    fn encoding_roundtrip() {
        let f = Field::new(3, 3).unwrap();
        for x in f.elements() {
            assert_eq!(f.from_digits(&f.digits(x)), x);
        }
    }

    #[test]
    fn large_field_paths_agree_with_polynomial_product() {
        // log/antilog path (q > 256) against schoolbook multiplication
        for f in [Field::new(2, 10).unwrap(), Field::prime(257).unwrap(), Field::new(17, 2).unwrap()] {
            for a in (0..f.order()).step_by(37) {
                for b in (0..f.order()).step_by(41) {
                    assert_eq!(f.mul(a as Elem, b as Elem), f.mul_poly(a as Elem, b as Elem));
                }
            }
        }
    }

    #[test]
    fn axpy_matches_scalar_ops() {
        for f in [
            Field::new(2, 4).unwrap(),
            Field::new(7, 2).unwrap(),
            Field::prime(61).unwrap(),
            Field::new(2, 10).unwrap(),
            Field::prime(257).unwrap(),
            Field::new(17, 2).unwrap(),
        ] {
            let q = f.order();
            let src: Vec<Elem> = (0..50).map(|i| ((i * 7919 + 3) % q) as Elem).collect();
            let dst0: Vec<Elem> = (0..50).map(|i| ((i * 104729 + 11) % q) as Elem).collect();
            let c = (q / 3 + 1) as Elem;
            let mut dst = dst0.clone();
            f.axpy(&mut dst, c, &src);
            for i in 0..50 {
                assert_eq!(dst[i], f.add(dst0[i], f.mul(c, src[i])));
            }
        }
    }

    #[test]
    fn subfields() {
        let f = Field::new(2, 4).unwrap();
        assert_eq!(f.subfield_elements(2).unwrap().len(), 4);
        assert_eq!(f.subfield_elements(1).unwrap(), vec![0, 1]);
        assert!(f.subfield_elements(3).is_err());
    }
}
