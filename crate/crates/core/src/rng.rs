//! Seeded random streams and seed derivation for reproducible parallel runs.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Deterministic pseudorandom stream used by every sampling routine.
pub type RandomStream = ChaCha8Rng;

/// Creates a stream from a 64-bit seed.
pub fn stream_from_seed(seed: u64) -> RandomStream {
    ChaCha8Rng::seed_from_u64(seed)
}

/// SplitMix64 finalizer.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of one operating point of a sweep.
pub fn point_seed(master_seed: u64, point_index: u64) -> u64 {
    mix64(mix64(master_seed) ^ point_index.wrapping_mul(0xd1b5_4a32_d192_ed03))
}

/// Seed of one frame within an operating point.
pub fn frame_seed(point_seed: u64, frame_index: u64) -> u64 {
    mix64(point_seed ^ mix64(frame_index.wrapping_add(0x8cb9_2ba7_2f3d_8dd7)))
}
