//! Seed derivation for nested deterministic randomness.
//!
//! Every stochastic step in the workspace draws from a ChaCha stream seeded
//! through these mixers, keyed by *what* is being sampled (subgraph
//! fingerprint, shot counter, instance index) rather than by *when* — so
//! results do not depend on exploration order or thread interleaving.

/// splitmix64 finalizer: a bijective avalanche over `u64`.
fn splitmix(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derives an independent stream seed from a master seed and one salt.
pub fn mix(seed: u64, salt: u64) -> u64 {
    splitmix(seed ^ splitmix(salt))
}

/// Derives an independent stream seed from a master seed and two salts.
pub fn mix3(seed: u64, salt_a: u64, salt_b: u64) -> u64 {
    splitmix(mix(seed, salt_a) ^ splitmix(salt_b ^ 0x5851_f42d_4c95_7f2d))
}
