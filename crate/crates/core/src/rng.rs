use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The single random stream owned by one run.
///
/// Two streams created from the same seed produce identical sequences on
/// every platform.
#[derive(Clone, Debug)]
pub struct RunRng(ChaCha8Rng);

impl RunRng {
    pub fn from_seed(seed: u64) -> Self {
        Self(ChaCha8Rng::seed_from_u64(seed))
    }

    /// Uniform index in `0..len`. Panics on `len == 0`.
    pub fn index(&mut self, len: usize) -> usize {
        self.0.gen_range(0..len)
    }

    /// `true` with probability exactly `1/n`.
    pub fn one_in(&mut self, n: usize) -> bool {
        self.0.gen_range(0..n) == 0
    }

    pub fn coin(&mut self) -> bool {
        self.0.gen()
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        items.shuffle(&mut self.0);
    }

    /// Uniform choice among `candidates`; consumes randomness only when
    /// there is more than one.
    pub fn pick<T: Copy>(&mut self, candidates: &[T]) -> T {
        match candidates.len() {
            0 => panic!("pick from an empty candidate list"),
            1 => candidates[0],
            len => candidates[self.index(len)],
        }
    }
}

/// Derives the seed of run `index` from a master seed.
///
/// This is the SplitMix64 output function applied to
/// `master + (index + 1) * 0x9E3779B97F4A7C15`.
pub fn mix_seed(master: u64, index: u64) -> u64 {
    let mut z = master.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
