//! Monte Carlo estimate of the MPTQ and MSTD proportions among subsets of
//! `{1..n}`.
//!
//! Samples are split over a fixed number of shards, each with its own
//! ChaCha stream derived from the seed, so the estimate depends only on
//! `(n, samples, seed)` and not on how many threads run the shards.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::counter::{PairCounter, PairTables};
use crate::error::{Error, Result};

const SHARDS: u64 = 64;
const Z_95: f64 = 1.959_963_984_540_054;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Proportion {
    pub hits: u64,
    pub estimate: f64,
    /// 95% Wilson score interval.
    pub interval: (f64, f64),
}

impl Proportion {
    fn new(hits: u64, samples: u64) -> Self {
        let n = samples as f64;
        let p = hits as f64 / n;
        let z2 = Z_95 * Z_95;
        let denom = 1.0 + z2 / n;
        let centre = (p + z2 / (2.0 * n)) / denom;
        let half = Z_95 * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
        let lower = if hits == 0 {
            0.0
        } else {
            (centre - half).max(0.0)
        };
        let upper = if hits == samples {
            1.0
        } else {
            (centre + half).min(1.0)
        };
        Proportion {
            hits,
            estimate: p,
            interval: (lower, upper),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityEstimate {
    pub n: u64,
    pub samples: u64,
    pub seed: u64,
    pub mptq: Proportion,
    pub mstd: Proportion,
}

impl DensityEstimate {
    pub fn mptq_hits(&self) -> u64 {
        self.mptq.hits
    }

    pub fn mstd_hits(&self) -> u64 {
        self.mstd.hits
    }
}

fn run_shard(
    mult: &PairTables,
    add: &PairTables,
    n: usize,
    count: u64,
    seed: u64,
    shard: u64,
) -> (u64, u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(shard);
    let mut products = PairCounter::new(mult);
    let mut sums = PairCounter::new(add);
    let (mut mptq, mut mstd) = (0, 0);
    for _ in 0..count {
        let mut word = 0u64;
        for i in 0..n {
            if i % 64 == 0 {
                word = rng.gen();
            }
            if word >> (i % 64) & 1 == 1 {
                products.insert(i);
                sums.insert(i);
            }
        }
        mptq += (products.sym_size() > products.dir_size()) as u64;
        mstd += (sums.sym_size() > sums.dir_size()) as u64;
        products.clear();
        sums.clear();
    }
    (mptq, mstd)
}

/// Classify `samples` uniformly random subsets of `{1..n}` (each element
/// present with probability 1/2).
pub fn density_estimate(n: u64, samples: u64, seed: u64) -> Result<DensityEstimate> {
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    if n == 0 || n > 1 << 20 {
        return Err(Error::InvalidArgument(format!(
            "universe bound {n} out of range"
        )));
    }
    let values: Vec<u64> = (1..=n).collect();
    let signed: Vec<i64> = values.iter().map(|&v| v as i64).collect();
    let mult = PairTables::integer_products(&values);
    let add = PairTables::integer_sums(&signed);
    let (mptq, mstd) = (0..SHARDS)
        .into_par_iter()
        .map(|shard| {
            let count = samples / SHARDS + u64::from(shard < samples % SHARDS);
            run_shard(&mult, &add, n as usize, count, seed, shard)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    Ok(DensityEstimate {
        n,
        samples,
        seed,
        mptq: Proportion::new(mptq, samples),
        mstd: Proportion::new(mstd, samples),
    })
}
