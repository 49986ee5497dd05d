use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Deterministic generator for a given seed and call-site salt.
pub(crate) fn seeded(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}
