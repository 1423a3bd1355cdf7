//! The McEliece-type scheme: the public key is an unstructured generator of a
//! random `l`-dimensional subcode of a secret GRS or Hermitian code, and a
//! ciphertext is a codeword of that subcode plus an error of weight exactly t.

use std::sync::Arc;

use rand::seq::SliceRandom;

use crate::code::{hamming_weight, random_full_rank_with, LinearCode};
use crate::ecp::{build_ecp_grs, build_ecp_hermitian, EcpPair};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::matrix::Matrix;
use crate::rng::{random_nonzero, random_positions, rng_from_seed};
use crate::spec::CodeSpec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PublicKey {
    gen: Matrix,
    t: usize,
}

impl PublicKey {
    pub fn new(gen: Matrix, t: usize) -> Result<Self> {
        if t == 0 {
            return Err(Error::param("error capacity must be at least 1"));
        }
        if gen.rows() == 0 || gen.rank() != gen.rows() {
            return Err(Error::param("public generator must have full row rank"));
        }
        Ok(PublicKey { gen, t })
    }

    pub fn field(&self) -> &Arc<Field> {
        self.gen.field()
    }

    pub fn generator(&self) -> &Matrix {
        &self.gen
    }

    pub fn len(&self) -> usize {
        self.gen.cols()
    }

    /// Dimension `l` of the public code.
    pub fn dim(&self) -> usize {
        self.gen.rows()
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn code(&self) -> LinearCode {
        LinearCode::span_of(&self.gen)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SecretKey {
    spec: CodeSpec,
    selection: Matrix,
    seed: u64,
    t: usize,
    permutation: Option<Vec<usize>>,
}

impl SecretKey {
    pub fn new(
        spec: CodeSpec,
        selection: Matrix,
        seed: u64,
        t: usize,
        permutation: Option<Vec<usize>>,
    ) -> Result<Self> {
        let k = spec.code().dim();
        if selection.cols() != k {
            return Err(Error::DimensionMismatch { expected: k, got: selection.cols() });
        }
        if selection.rank() != selection.rows() {
            return Err(Error::param("selection matrix must have full row rank"));
        }
        if let Some(p) = &permutation {
            let mut sorted = p.clone();
            sorted.sort_unstable();
            if sorted != (0..spec.len()).collect::<Vec<_>>() {
                return Err(Error::param("column permutation is not a permutation of 0..n"));
            }
        }
        Ok(SecretKey { spec, selection, seed, t, permutation })
    }

    pub fn spec(&self) -> &CodeSpec {
        &self.spec
    }

    pub fn selection(&self) -> &Matrix {
        &self.selection
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn permutation(&self) -> Option<&[usize]> {
        self.permutation.as_deref()
    }

    /// The enclosing code in public coordinates.
    pub fn enclosing_code(&self) -> LinearCode {
        let c = self.spec.code();
        match &self.permutation {
            None => c,
            Some(p) => LinearCode::span_of(&c.generator().select_columns(p)),
        }
    }

    /// `S · G`, column-permuted when the key carries a permutation.
    pub fn public_generator(&self) -> Result<Matrix> {
        let g = self.selection.mul(self.spec.code().generator())?;
        Ok(match &self.permutation {
            None => g,
            Some(p) => g.select_columns(p),
        })
    }

    pub fn public_key(&self) -> Result<PublicKey> {
        PublicKey::new(self.public_generator()?, self.t)
    }

    pub fn decoder(&self) -> Result<MessageDecoder> {
        let pair = structural_pair(&self.spec, self.t)?;
        MessageDecoder::new(pair, &self.public_generator()?, self.permutation.clone())
    }
}

/// The ECP the key owner decodes with.
pub fn structural_pair(spec: &CodeSpec, t: usize) -> Result<EcpPair> {
    match spec {
        CodeSpec::Grs(s) => build_ecp_grs(s, t),
        CodeSpec::Hermitian(s) => build_ecp_hermitian(s, t),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ciphertext {
    field: Arc<Field>,
    word: Vec<Elem>,
}

impl Ciphertext {
    pub fn new(field: &Arc<Field>, word: Vec<Elem>) -> Result<Self> {
        for &x in &word {
            field.check(x as u32)?;
        }
        Ok(Ciphertext { field: field.clone(), word })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn word(&self) -> &[Elem] {
        &self.word
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct KeygenOptions {
    /// Overrides the designed error capacity.
    pub t: Option<usize>,
    /// Applies a secret column permutation (off by default).
    pub permute: bool,
}

#[derive(Clone, Debug)]
pub struct KeyPair {
    pub public: PublicKey,
    pub secret: SecretKey,
    /// `C(l+1, 2) < dim C(2E)`: the square of the public code cannot reach
    /// `C(2E)`, so the closure attack is not expected to apply.
    pub resistant_by_square_constraint: bool,
}

/// `l(l+1)/2`.
pub fn pair_count(l: usize) -> usize {
    l * (l + 1) / 2
}

/// `dim C(2E)`, from Riemann–Roch where it applies.
pub fn double_code_dim(spec: &CodeSpec) -> usize {
    let n = spec.len();
    match spec {
        CodeSpec::Grs(s) => (2 * s.dim() - 1).min(n),
        CodeSpec::Hermitian(s) => {
            let d = s.with_degree(2 * s.degree());
            if d.is_full_space() {
                n
            } else {
                d.expected_dim().unwrap_or_else(|| d.code().dim())
            }
        }
    }
}

/// Designed error capacity.
///
/// GRS: `⌊(n − k)/2⌋`. Hermitian: `⌊(d* − 1 − g)/2⌋` with
/// `d* = deg E − 2g + 2`, raised to 1 when that is smaller and capped at the
/// capacity of the structural pair.
pub fn designed_capacity(spec: &CodeSpec) -> Result<usize> {
    let max = spec.max_correctable().unwrap_or(0);
    if max == 0 {
        return Err(Error::param("the enclosing code cannot correct a single error"));
    }
    Ok(match spec {
        CodeSpec::Grs(_) => max,
        CodeSpec::Hermitian(s) => {
            let g = s.genus() as i64;
            let designed = s.degree() - 2 * g + 2;
            let t = (designed - 1 - g).div_euclid(2).max(1) as usize;
            t.min(max)
        }
    })
}

pub fn keygen(spec: &CodeSpec, l: usize, seed: u64, opts: KeygenOptions) -> Result<KeyPair> {
    let enclosing = spec.code();
    let k = enclosing.dim();
    if l == 0 || l > k {
        return Err(Error::param(format!("subcode dimension {} out of range 1..={}", l, k)));
    }
    let t = match opts.t {
        None => designed_capacity(spec)?,
        Some(t) => {
            let max = spec.max_correctable().unwrap_or(0);
            if t == 0 || t > max {
                return Err(Error::param(format!("t = {} outside 1..={}", t, max)));
            }
            t
        }
    };
    let mut rng = rng_from_seed(seed);
    let selection = random_full_rank_with(spec.field(), l, k, &mut rng)?;
    let permutation = opts.permute.then(|| {
        let mut p: Vec<usize> = (0..spec.len()).collect();
        p.shuffle(&mut rng);
        p
    });
    let secret = SecretKey::new(spec.clone(), selection, seed, t, permutation)?;
    let public = secret.public_key()?;
    Ok(KeyPair {
        public,
        secret,
        resistant_by_square_constraint: pair_count(l) < double_code_dim(spec),
    })
}

/// Samples an error vector of weight exactly `t`.
pub fn random_error(field: &Field, n: usize, t: usize, rng: &mut impl rand::Rng) -> Vec<Elem> {
    let mut e = vec![0; n];
    for pos in random_positions(n, t, rng) {
        e[pos] = random_nonzero(field, rng);
    }
    e
}

pub fn encrypt(pk: &PublicKey, msg: &[Elem], seed: u64) -> Result<Ciphertext> {
    let mut y = pk.gen.vec_mul(msg)?;
    let f = pk.field();
    let e = random_error(f, pk.len(), pk.t, &mut rng_from_seed(seed));
    for (a, b) in y.iter_mut().zip(&e) {
        *a = f.add(*a, *b);
    }
    Ciphertext::new(f, y)
}

pub fn decrypt(sk: &SecretKey, ct: &Ciphertext) -> Result<Vec<Elem>> {
    sk.decoder()?.decrypt(ct)
}

/// Decodes in an enclosing code through an ECP, then solves `m · G_pub = c`.
#[derive(Clone, Debug)]
pub struct MessageDecoder {
    pair: EcpPair,
    public_t: Matrix,
    permutation: Option<Vec<usize>>,
}

impl MessageDecoder {
    pub fn new(pair: EcpPair, public_gen: &Matrix, permutation: Option<Vec<usize>>) -> Result<Self> {
        if public_gen.cols() != pair.code().len() {
            return Err(Error::DimensionMismatch { expected: pair.code().len(), got: public_gen.cols() });
        }
        Ok(MessageDecoder { pair, public_t: public_gen.transpose(), permutation })
    }

    pub fn pair(&self) -> &EcpPair {
        &self.pair
    }

    /// The codeword of the public code closest to `y`, within capacity.
    pub fn decode_codeword(&self, y: &[Elem]) -> Result<Vec<Elem>> {
        let Some(p) = &self.permutation else {
            return self.pair.decode(y);
        };
        // public coordinate j holds secret coordinate p[j]
        let mut secret_y = vec![0; y.len()];
        for (j, &src) in p.iter().enumerate() {
            secret_y[src] = y[j];
        }
        let c = self.pair.decode(&secret_y)?;
        Ok(p.iter().map(|&src| c[src]).collect())
    }

    pub fn decode_message(&self, y: &[Elem]) -> Result<Vec<Elem>> {
        let c = self.decode_codeword(y)?;
        match self.public_t.solve_detailed(&c)? {
            Some(s) if s.unique => Ok(s.solution),
            _ => Err(Error::Decode("decoded codeword lies outside the public code".into())),
        }
    }

    pub fn decrypt(&self, ct: &Ciphertext) -> Result<Vec<Elem>> {
        self.decode_message(ct.word())
    }
}

/// Weight of `y − m·G`, for checks on ciphertexts.
pub fn error_weight(pk: &PublicKey, msg: &[Elem], y: &[Elem]) -> Result<usize> {
    let c = pk.gen.vec_mul(msg)?;
    let f = pk.field();
    let diff: Vec<Elem> = c.iter().zip(y).map(|(&a, &b)| f.sub(b, a)).collect();
    Ok(hamming_weight(&diff))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grs::GrsSpec;
    use crate::hermitian::HermitianSpec;

    #[test]
    fn capacities() {
        let h = CodeSpec::from(HermitianSpec::new(2, 3).unwrap());
        assert_eq!(designed_capacity(&h).unwrap(), 1);
        let f = Field::prime(61).unwrap();
        let g = CodeSpec::from(GrsSpec::random(&f, 60, 20, 1).unwrap());
        assert_eq!(designed_capacity(&g).unwrap(), 20);
    }

    #[test]
    fn keygen_contains_public_code() {
        let f = Field::prime(61).unwrap();
        let spec = CodeSpec::from(GrsSpec::random(&f, 60, 20, 1).unwrap());
        let kp = keygen(&spec, 10, 5, KeygenOptions::default()).unwrap();
        assert_eq!(kp.public.t(), 20);
        assert_eq!(kp.public.dim(), 10);
        assert!(spec.code().contains(&kp.public.code()).unwrap());
        assert!(!kp.public.generator().is_rref());
        assert!(keygen(&spec, 0, 5, KeygenOptions::default()).is_err());
        assert!(keygen(&spec, 21, 5, KeygenOptions::default()).is_err());
    }

    #[test]
    fn full_dimension_key_is_enclosing_code() {
        let spec = CodeSpec::from(HermitianSpec::new(2, 3).unwrap());
        let kp = keygen(&spec, 3, 1, KeygenOptions::default()).unwrap();
        assert_eq!(kp.public.code(), spec.code());
    }

    #[test]
    fn encryption_weight() {
        let spec = CodeSpec::from(HermitianSpec::new(3, 8).unwrap());
        let kp = keygen(&spec, 4, 2, KeygenOptions::default()).unwrap();
        for seed in 0..10 {
            let msg = vec![1, 0, 5, 7];
            let ct = encrypt(&kp.public, &msg, seed).unwrap();
            assert_eq!(error_weight(&kp.public, &msg, ct.word()).unwrap(), kp.public.t());
            assert_eq!(decrypt(&kp.secret, &ct).unwrap(), msg);
        }
        let zero = encrypt(&kp.public, &[0; 4], 3).unwrap();
        assert_eq!(hamming_weight(zero.word()), kp.public.t());
    }

    #[test]
    fn permuted_keys_roundtrip() {
        let f = Field::prime(13).unwrap();
        let spec = CodeSpec::from(GrsSpec::random(&f, 12, 4, 3).unwrap());
        let opts = KeygenOptions { permute: true, ..Default::default() };
        let kp = keygen(&spec, 3, 8, opts).unwrap();
        assert!(kp.secret.permutation().is_some());
        assert!(kp.secret.enclosing_code().contains(&kp.public.code()).unwrap());
        let msg = vec![3, 1, 4];
        let ct = encrypt(&kp.public, &msg, 77).unwrap();
        assert_eq!(decrypt(&kp.secret, &ct).unwrap(), msg);
    }

    #[test]
    fn t_override_bounds() {
        let spec = CodeSpec::from(HermitianSpec::new(7, 170).unwrap());
        let over = KeygenOptions { t: Some(76), ..Default::default() };
        assert!(keygen(&spec, 50, 1, over).is_err());
    }
}
