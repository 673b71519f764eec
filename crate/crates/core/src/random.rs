//! Reproducible fan generation.
//!
//! All randomness comes from SplitMix64 (`state += 0x9E3779B97F4A7C15`, then
//! `z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9`, `z = (z ^ (z >> 27)) *
//! 0x94D049BB133111EB`, output `z ^ (z >> 31)`), seeded with the raw seed as
//! its initial state. Integers in `0..n` are drawn as `next_u64() % n` and
//! reals in `[0, 1)` as `(next_u64() >> 11) * 2^-53`. Any implementation that
//! follows these rules reproduces the same corpora.

use rand_core::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::fan::Fan;

pub(crate) struct Stream(SplitMix64);

impl Stream {
    pub(crate) fn new(seed: u64) -> Self {
        Stream(SplitMix64::seed_from_u64(seed))
    }

    pub(crate) fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    pub(crate) fn below(&mut self, n: u64) -> u64 {
        debug_assert!(n > 0);
        self.next_u64() % n
    }

    pub(crate) fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

/// The six base fans, in the order the generator indexes them:
/// the projective plane, then F_0 through F_4.
pub fn base_fans() -> [Fan; 6] {
    [
        Fan::projective_plane(),
        Fan::hirzebruch(0),
        Fan::hirzebruch(1),
        Fan::hirzebruch(2),
        Fan::hirzebruch(3),
        Fan::hirzebruch(4),
    ]
}

/// A base fan chosen by the first draw, then `n_blowups` blow-ups, each at
/// cone index `draw % d` of the current fan.
pub fn random_fan(seed: u64, n_blowups: usize) -> Fan {
    let mut rng = Stream::new(seed);
    let bases = base_fans();
    let mut fan = bases[rng.below(bases.len() as u64) as usize].clone();
    for _ in 0..n_blowups {
        let cone = rng.below(fan.len() as u64) as usize;
        fan = fan
            .blow_up(cone)
            .expect("desk-scale blow-ups stay far from i64 overflow");
    }
    fan
}

/// `count` fans from one master seed. For each fan the master stream yields
/// the blow-up count (`draw % (max_blowups + 1)`) and then the fan seed.
pub fn corpus(seed: u64, count: usize, max_blowups: usize) -> Vec<Fan> {
    let mut rng = Stream::new(seed);
    (0..count)
        .map(|_| {
            let n = rng.below(max_blowups as u64 + 1) as usize;
            let fan_seed = rng.next_u64();
            random_fan(fan_seed, n)
        })
        .collect()
}
