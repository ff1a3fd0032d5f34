//! Reproducible per-replica random streams.
//!
//! Every Monte Carlo replica draws from its own counter-based stream so that
//! results are byte-identical regardless of how replicas are scheduled across
//! worker threads. Stream `i` is seeded with `mix64(master_seed, i)`, where
//! `mix64` is pinned bit-exactly below:
//!
//! ```text
//! mix64(seed, i) = splitmix64_mix(seed + (i + 1) * 0x9E3779B97F4A7C15)   (wrapping)
//! splitmix64_mix(z):
//!     z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9                           (wrapping)
//!     z = (z ^ (z >> 27)) * 0x94D049BB133111EB                           (wrapping)
//!     return z ^ (z >> 31)
//! ```
//!
//! This is the SplitMix64 output function, with the replica index advancing
//! the underlying Weyl sequence. Reproducing the streams in another
//! implementation requires reproducing `mix64` and the ChaCha8 generator; the
//! statistical outputs do not depend on the stream layout.

use rand_chacha::ChaCha8Rng;
use rand_chacha::rand_core::SeedableRng;

/// Generator used for every sampling task in this crate.
pub type ReplicaRng = ChaCha8Rng;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

fn splitmix64_mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives the seed for replica `index` from a 64-bit master seed.
pub fn mix64(master_seed: u64, index: u64) -> u64 {
    splitmix64_mix(master_seed.wrapping_add((index.wrapping_add(1)).wrapping_mul(GOLDEN_GAMMA)))
}

/// Independent stream for one replica of a Monte Carlo run.
pub fn replica_rng(master_seed: u64, index: u64) -> ReplicaRng {
    ReplicaRng::seed_from_u64(mix64(master_seed, index))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn mix64_is_stable() {
        // Frozen values; a change here silently breaks every seeded output.
        assert_eq!(mix64(0, 0), splitmix64_mix(GOLDEN_GAMMA));
        assert_eq!(mix64(42, 0), 0x35fa_6d02_e9a5_4e62_u64 ^ mix64(42, 0) ^ mix64(42, 0));
        assert_ne!(mix64(42, 0), mix64(42, 1));
        assert_ne!(mix64(42, 0), mix64(43, 0));
    }

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let mut a = replica_rng(7, 3);
        let mut b = replica_rng(7, 3);
        let mut c = replica_rng(7, 4);
        let xs: Vec<u64> = (0..8).map(|_| a.random()).collect();
        let ys: Vec<u64> = (0..8).map(|_| b.random()).collect();
        let zs: Vec<u64> = (0..8).map(|_| c.random()).collect();
        assert_eq!(xs, ys);
        assert_ne!(xs, zs);
    }
}
