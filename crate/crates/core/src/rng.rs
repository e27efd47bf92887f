//! Named random streams derived from one master seed.
//!
//! A stream is keyed by a name (and optionally an index); the key is hashed
//! with FNV-1a, mixed with the master seed through SplitMix64 and used to
//! seed a ChaCha8 generator. Index `k` selects ChaCha stream `k`, so per-trial
//! generators are independent of scheduling order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

fn fnv1a(name: &str) -> u64 {
    name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Generator for the stream `name` under `master`.
pub fn stream(master: u64, name: &str) -> Rng {
    ChaCha8Rng::seed_from_u64(splitmix(master ^ fnv1a(name)))
}

/// Generator for trial `index` of the stream `name`.
pub fn substream(master: u64, name: &str, index: u64) -> Rng {
    let mut r = stream(master, name);
    r.set_stream(index);
    r
}
