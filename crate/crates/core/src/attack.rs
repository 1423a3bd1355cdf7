//! The square-code distinguisher and the closure attack.
//!
//! For a random subcode `C` of an AG code `C(E)` with enough dimension, the
//! square `C^(2)` equals `C(2E)`; when `deg E ≤ (n−2)/2` the 2-closure of
//! `C` is then `C(E)` itself. Enclosing codes of larger degree are handled by
//! closing shortenings of `C` and summing the re-embedded results.

use std::fmt;
use std::time::Instant;

use crate::code::LinearCode;
use crate::crypto::{pair_count, MessageDecoder, PublicKey};
use crate::ecp::build_ecp_hermitian;
use crate::error::{Error, Result};
use crate::hermitian::HermitianSpec;
use crate::rng::{random_positions, rng_from_seed, trial_seed};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    AlgebraicLike,
    RandomLike,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::AlgebraicLike => "algebraic-like",
            Verdict::RandomLike => "random-like",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistinguisherReport {
    pub n: usize,
    pub l: usize,
    pub sq_dim: usize,
    /// `min(n, l(l+1)/2)`, the square dimension of a random code.
    pub random_expectation: usize,
    pub verdict: Verdict,
}

pub fn distinguish(c: &LinearCode) -> DistinguisherReport {
    report_for_square(c, &c.square())
}

fn report_for_square(c: &LinearCode, square: &LinearCode) -> DistinguisherReport {
    let n = c.len();
    let l = c.dim();
    let random_expectation = n.min(pair_count(l));
    let sq_dim = square.dim();
    DistinguisherReport {
        n,
        l,
        sq_dim,
        random_expectation,
        verdict: if sq_dim < random_expectation { Verdict::AlgebraicLike } else { Verdict::RandomLike },
    }
}

/// Wall-clock milliseconds per stage.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct StageTimings {
    pub square_ms: f64,
    pub closure_ms: f64,
    pub ecp_ms: f64,
    pub decode_ms: f64,
}

impl StageTimings {
    pub fn total_ms(&self) -> f64 {
        self.square_ms + self.closure_ms + self.ecp_ms + self.decode_ms
    }
}

pub(crate) fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

#[derive(Clone, Debug)]
pub struct ClosureOutcome {
    pub code: LinearCode,
    pub square_dim: usize,
    /// The square filled the whole space, so the closure carries no information.
    pub degenerate: bool,
    pub timings: StageTimings,
}

/// Step 1: the 2-closure `(C * (C^(2))⊥)⊥` of the public code.
pub fn attack_recover_code(c_pub: &LinearCode) -> ClosureOutcome {
    let start = Instant::now();
    let square = c_pub.square();
    let square_ms = elapsed_ms(start);
    let start = Instant::now();
    let degenerate = square.is_full();
    let code = if degenerate {
        LinearCode::full(c_pub.field(), c_pub.len())
    } else {
        c_pub.schur(&square.dual()).expect("same length and field").dual()
    };
    let closure_ms = elapsed_ms(start);
    ClosureOutcome {
        code,
        square_dim: square.dim(),
        degenerate,
        timings: StageTimings { square_ms, closure_ms, ..Default::default() },
    }
}

/// Smallest shortening size `s` with `deg E − s ≤ (n − s − 2)/2`.
pub fn shortening_size(divisor_degree: i64, n: usize) -> usize {
    (2 * divisor_degree - n as i64 + 2).max(0) as usize
}

#[derive(Clone, Debug)]
pub struct ShorteningOutcome {
    pub code: LinearCode,
    /// Dimension of the running sum after each contributing trial.
    pub dims: Vec<usize>,
    pub trials_run: usize,
    pub degenerate_trials: usize,
    pub timings: StageTimings,
}

/// Closes `trials` random shortenings of size `s` and sums the re-embedded
/// closures, stopping once two consecutive sums agree.
pub fn attack_with_shortening(
    c_pub: &LinearCode,
    s: usize,
    trials: usize,
    seed: u64,
) -> Result<ShorteningOutcome> {
    let n = c_pub.len();
    if s >= n {
        return Err(Error::param(format!("shortening size {} must be below n = {}", s, n)));
    }
    let mut sum: Option<LinearCode> = None;
    let mut dims = Vec::new();
    let mut degenerate_trials = 0;
    let mut timings = StageTimings::default();
    let mut trials_run = 0;
    for i in 0..trials {
        trials_run += 1;
        let mut rng = rng_from_seed(trial_seed(seed, i as u64));
        let positions = random_positions(n, s, &mut rng);
        let short = c_pub.shorten(&positions)?;
        if short.is_zero() {
            degenerate_trials += 1;
            continue;
        }
        let out = attack_recover_code(&short);
        timings.square_ms += out.timings.square_ms;
        timings.closure_ms += out.timings.closure_ms;
        if out.degenerate {
            degenerate_trials += 1;
            continue;
        }
        let piece = out.code.extend_by_zeros(&positions, n)?;
        let next = match &sum {
            None => piece,
            Some(acc) => acc.sum(&piece)?,
        };
        let stalled = sum.as_ref() == Some(&next);
        dims.push(next.dim());
        sum = Some(next);
        if stalled {
            break;
        }
    }
    match sum {
        Some(code) => Ok(ShorteningOutcome { code, dims, trials_run, degenerate_trials, timings }),
        None => Err(Error::attack("shortening", "every shortening was degenerate")),
    }
}

/// Blind variant: increases `s` from 0 until the closure is non-degenerate.
pub fn attack_with_shortening_sweep(
    c_pub: &LinearCode,
    trials: usize,
    seed: u64,
) -> Result<(usize, ShorteningOutcome)> {
    let direct = attack_recover_code(c_pub);
    if !direct.degenerate {
        let dims = vec![direct.code.dim()];
        return Ok((
            0,
            ShorteningOutcome {
                code: direct.code,
                dims,
                trials_run: 1,
                degenerate_trials: 0,
                timings: direct.timings,
            },
        ));
    }
    for s in 1..c_pub.dim() {
        if let Ok(out) = attack_with_shortening(c_pub, s, trials, seed) {
            return Ok((s, out));
        }
    }
    Err(Error::attack("shortening", "no shortening size gave a non-degenerate closure"))
}

/// Outcome of the Hermitian pipeline.
#[derive(Clone, Debug)]
pub struct HermitianAttack {
    pub recovered: LinearCode,
    pub decoder: MessageDecoder,
    pub square_dim: usize,
    pub shortening_size: usize,
    pub timings: StageTimings,
}

/// Recovers the enclosing code blindly, checks it against `C(oracle m)`, then
/// builds the structural ECP for that degree.
///
/// The oracle spec only instantiates the decoder; the recovered code must
/// equal the oracle code exactly or the attack is reported as failed.
pub fn hermitian_full_attack(
    pk: &PublicKey,
    oracle: &HermitianSpec,
    shortening_trials: usize,
    seed: u64,
) -> Result<HermitianAttack> {
    let c_pub = pk.code();
    if c_pub.len() != oracle.len() || c_pub.field() != oracle.field() {
        return Err(Error::attack("closure", "public key does not match the oracle curve"));
    }
    let expected = oracle.code();
    let mut out = attack_recover_code(&c_pub);
    let mut timings = out.timings;
    let square_dim = out.square_dim;
    let mut s_used = 0;
    if (out.degenerate || out.code != expected) && shortening_trials > 0 {
        let s = shortening_size(oracle.degree(), oracle.len());
        if s > 0 && s < c_pub.dim() {
            if let Ok(short) = attack_with_shortening(&c_pub, s, shortening_trials, seed) {
                timings.square_ms += short.timings.square_ms;
                timings.closure_ms += short.timings.closure_ms;
                out.code = short.code;
                out.degenerate = false;
                s_used = s;
            }
        }
    }
    if out.degenerate {
        return Err(Error::attack("closure", "square of the public code is the full space"));
    }
    if out.code != expected {
        return Err(Error::attack(
            "verify",
            format!("closure attack failed: recovered dimension {} vs {}", out.code.dim(), expected.dim()),
        ));
    }
    let start = Instant::now();
    let pair = build_ecp_hermitian(oracle, pk.t()).map_err(|e| Error::attack("ecp", e.to_string()))?;
    let decoder = MessageDecoder::new(pair, pk.generator(), None)?;
    timings.ecp_ms = elapsed_ms(start);
    Ok(HermitianAttack { recovered: out.code, decoder, square_dim, shortening_size: s_used, timings })
}
