//! Seeded random fuzzy measures.
//!
//! Each measure is built in one pass: the nonempty proper subsets are visited
//! in a uniformly shuffled order and every value is drawn uniformly between the
//! largest value already assigned to one of its subsets and the smallest value
//! already assigned to one of its supersets. The result is exactly monotone.
//! The distribution is not uniform over the order polytope.
//!
//! Batch item `k` uses the seed `seed ^ splitmix64(k)`, so items can be
//! generated independently and in any order.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::families::make_k_interactive;
use crate::lattice::{FuzzyMeasure, SetFunction, SubsetMask, Universe};

pub const MAX_RANDOM_CRITERIA: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub n: usize,
    pub seed: u64,
    pub count: usize,
}

impl GeneratorConfig {
    pub fn new(n: usize, seed: u64, count: usize) -> Result<Self> {
        if !(2..=MAX_RANDOM_CRITERIA).contains(&n) {
            return Err(Error::arg(format!(
                "random generation supports 2..={MAX_RANDOM_CRITERIA} criteria, got {n}"
            )));
        }
        if count == 0 {
            return Err(Error::arg("sample count must be at least 1"));
        }
        Ok(GeneratorConfig { n, seed, count })
    }
}

/// SplitMix64 finalizer (Steele, Lea and Flood).
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed used for batch item `k`.
pub fn derive_seed(seed: u64, k: usize) -> u64 {
    seed ^ splitmix64(k as u64)
}

pub fn random_measure(n: usize, seed: u64) -> Result<FuzzyMeasure> {
    GeneratorConfig::new(n, seed, 1)?;
    let u = Universe::new(n)?;
    let full = u.full();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<SubsetMask> = u.subsets().filter(|&a| a != SubsetMask::EMPTY && a != full).collect();
    order.shuffle(&mut rng);

    let mut values = vec![0.0; u.size()];
    let mut assigned = vec![false; u.size()];
    values[full.index()] = 1.0;
    assigned[0] = true;
    assigned[full.index()] = true;

    for a in order {
        let lower = a
            .submasks()
            .filter(|&c| c != a && assigned[c.index()])
            .map(|c| values[c.index()])
            .fold(0.0, f64::max);
        let upper = u
            .complement(a)
            .submasks()
            .filter(|s| !s.is_empty())
            .map(|s| a.union(s))
            .filter(|c| assigned[c.index()])
            .map(|c| values[c.index()])
            .fold(1.0, f64::min);
        let draw: f64 = rng.gen();
        values[a.index()] = (lower + draw * (upper - lower)).clamp(lower, upper);
        assigned[a.index()] = true;
    }
    Ok(FuzzyMeasure::from_trusted(SetFunction::new(u, values)?))
}

pub fn random_batch(config: &GeneratorConfig) -> Result<Vec<FuzzyMeasure>> {
    GeneratorConfig::new(config.n, config.seed, config.count)?;
    (0..config.count)
        .map(|k| random_measure(config.n, derive_seed(config.seed, k)))
        .collect()
}

/// A k-interactive measure whose levels `<= k` come from `random_measure(n, seed)`
/// and whose `K` is the largest value that sample assigns on level `k + 1`.
pub fn random_k_interactive(n: usize, k: usize, seed: u64) -> Result<FuzzyMeasure> {
    let base = random_measure(n, seed)?;
    let big_k = base
        .universe()
        .subsets()
        .filter(|a| a.len() == k + 1)
        .map(|a| base.get(a))
        .fold(0.0, f64::max);
    make_k_interactive(base.as_set_function(), k, big_k)
}
