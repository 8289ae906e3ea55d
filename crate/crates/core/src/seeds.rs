//! Counter-based seed derivation.
//!
//! Every random stream in the crate is keyed by a `(master_seed, counter)`
//! pair pushed through the SplitMix64 finalizer. Streams derived from
//! distinct counters are independent and order-insensitive, so sweeps can
//! sample instance 7 before instance 3 and still reproduce bit-identical
//! results.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;

/// SplitMix64 output mixer (Steele, Lea & Flood's finalizer).
#[inline]
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derive a stream seed for `(master_seed, counter)`.
///
/// `counter` is first mixed on its own so that nearby counters land far
/// apart, then folded into the master seed and finalized again.
#[inline]
pub fn derive(master_seed: u64, counter: u64) -> u64 {
    splitmix64(master_seed ^ splitmix64(counter))
}

/// Derive a sub-stream two levels deep, e.g. `(master, instance, replicate)`.
#[inline]
pub fn derive2(master_seed: u64, counter_a: u64, counter_b: u64) -> u64 {
    derive(derive(master_seed, counter_a), counter_b)
}

/// ChaCha12 stream for a derived seed. ChaCha is platform-stable, so the
/// same seed reproduces the same draws on any target.
pub fn stream(seed: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derive_is_pure_and_counter_sensitive() {
        assert_eq!(derive(42, 0), derive(42, 0));
        assert_ne!(derive(42, 0), derive(42, 1));
        assert_ne!(derive(42, 0), derive(43, 0));
    }

    #[test]
    fn splitmix_reference_values() {
        // Reference outputs of the SplitMix64 step function from the
        // published algorithm, state seeded with 0 and 1.
        assert_eq!(splitmix64(0), 0xe220a8397b1dcdaf);
        assert_eq!(splitmix64(1), 0x910a2dec89025cc1);
    }
}
