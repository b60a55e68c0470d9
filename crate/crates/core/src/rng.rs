//! Counter-mixing random streams.
//!
//! Every stream is a SplitMix64 generator. The exact algorithm, so that any
//! other implementation can reproduce the same numbers:
//!
//! ```text
//! GAMMA = 0x9E3779B97F4A7C15
//! mix64(z):
//!     z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//!     z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//!     return z ^ (z >> 31)
//! next_u64():  state += GAMMA; return mix64(state)
//! next_f64():  (next_u64() >> 11) * 2^-53            in [0, 1)
//! derive(master, index) = mix64(master ^ mix64(index + GAMMA))
//! ```
//!
//! All arithmetic is wrapping 64-bit. For a fixed master, `derive` is a
//! bijection in `index`, so per-trial seeds never collide.

/// Golden-ratio increment used by SplitMix64.
pub const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// The SplitMix64 finalizer. A bijection on `u64`.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Master seed for an experiment. Identical seeds give identical streams.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RandomSeed(pub u64);

impl RandomSeed {
    pub fn master(self) -> u64 {
        self.0
    }

    /// Seed of the `index`-th independent sub-stream.
    pub fn derive(self, index: u64) -> RandomSeed {
        RandomSeed(derive_trial_seed(self.0, index))
    }

    pub fn stream(self) -> SplitMix64 {
        SplitMix64::new(self.0)
    }
}

impl From<u64> for RandomSeed {
    fn from(v: u64) -> Self {
        RandomSeed(v)
    }
}

/// Mixes `(master, trial_index)` into the seed used by trial `trial_index`.
pub fn derive_trial_seed(master: u64, trial_index: u64) -> u64 {
    mix64(master ^ mix64(trial_index.wrapping_add(GOLDEN_GAMMA)))
}

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        mix64(self.state)
    }

    /// Uniform in `[0, 1)` with 53 bits of resolution.
    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal draw by the Box–Muller transform.
    ///
    /// Consumes exactly two `u64`s: `u1 = 1 - next_f64()` (so `u1` is in
    /// `(0, 1]`), then `u2 = next_f64()`, and returns
    /// `sqrt(-2 ln u1) * cos(2 pi u2)`. The sine branch is discarded so the
    /// stream position never depends on call history.
    #[inline]
    pub fn next_standard_normal(&mut self) -> f64 {
        let u1 = 1.0 - self.next_f64();
        let u2 = self.next_f64();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }
}
