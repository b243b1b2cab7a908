//! Deterministic seed splitting.
//!
//! Parallel work derives one RNG stream per task with
//! `child_seed(parent, index) = splitmix64(splitmix64(parent) ^ index)`,
//! so results never depend on how tasks are scheduled across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

/// One step of the SplitMix64 finaliser.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of the `index`-th child task of `parent`.
pub fn child_seed(parent: u64, index: u64) -> u64 {
    splitmix64(splitmix64(parent) ^ index)
}

/// The RNG used everywhere in the crate.
pub fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn children_are_distinct_and_stable() {
        let a: Vec<u64> = (0..64).map(|i| child_seed(7, i)).collect();
        let mut b = a.clone();
        b.sort_unstable();
        b.dedup();
        assert_eq!(b.len(), 64);
        assert_eq!(a[3], child_seed(7, 3));
        assert_ne!(child_seed(7, 0), child_seed(8, 0));
    }
}
