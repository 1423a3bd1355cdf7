//! Seeded randomness.
//!
//! Every randomized operation takes an explicit 64-bit seed and draws from
//! ChaCha8 seeded with it; the stream is stable across platforms. Trial `i` of
//! a batch seeded with `s` uses seed `s ^ i`.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::{Elem, Field};

pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn trial_seed(seed: u64, trial: u64) -> u64 {
    seed ^ trial
}

pub fn random_element(field: &Field, rng: &mut impl Rng) -> Elem {
    rng.gen_range(0..field.order()) as Elem
}

pub fn random_nonzero(field: &Field, rng: &mut impl Rng) -> Elem {
    rng.gen_range(1..field.order()) as Elem
}

pub fn random_vector(field: &Field, len: usize, rng: &mut impl Rng) -> Vec<Elem> {
    (0..len).map(|_| random_element(field, rng)).collect()
}

/// `count` distinct positions out of `0..n`, sorted.
pub fn random_positions(n: usize, count: usize, rng: &mut impl Rng) -> Vec<usize> {
    let mut v = index::sample(rng, n, count).into_vec();
    v.sort_unstable();
    v
}

/// `count` distinct field elements in random order.
pub fn distinct_elements(field: &Field, count: usize, rng: &mut impl Rng) -> Vec<Elem> {
    index::sample(rng, field.order() as usize, count).into_iter().map(|x| x as Elem).collect()
}
