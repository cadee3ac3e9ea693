use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::relation::BinaryRelation;
use crate::universe::Universe;

/// Largest universe for which every relation can be enumerated.
pub const MAX_EXHAUSTIVE_N: usize = 4;

/// Largest universe accepted by sampled sweeps.
pub const MAX_SAMPLED_N: usize = 8;

/// Number of relations on an `n`-element universe, `2^(n²)`.
pub fn relation_count(n: usize) -> u64 {
    1u64 << (n * n)
}

/// All relations on `{1..n}` in increasing order of their row-major encoding,
/// where pair `(x, y)` is bit `x * n + y`.
pub fn enumerate_relations(n: usize) -> Result<impl Iterator<Item = BinaryRelation>> {
    if !(1..=MAX_EXHAUSTIVE_N).contains(&n) {
        return Err(Error::SizeOutOfRange(n));
    }
    let u = Universe::numbered(n)?.shared();
    Ok((0..relation_count(n)).map(move |code| BinaryRelation::from_code(Arc::clone(&u), code)))
}

/// Encodings of `count` uniformly random relations on `n` elements, derived
/// only from `seed` and `n`.
pub fn sample_codes(n: usize, count: usize, seed: u64) -> Vec<u64> {
    assert!((1..=MAX_SAMPLED_N).contains(&n));
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let mask = if n * n == 64 {
        u64::MAX
    } else {
        relation_count(n) - 1
    };
    (0..count).map(|_| rng.gen::<u64>() & mask).collect()
}
