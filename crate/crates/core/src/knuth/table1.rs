//! Path counts from the root of the pyramid model next to the RW0 and RW1
//! estimates of the same counts.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::pyramid::{pyramid_estimate, WalkRule};
use crate::diagram::DEFAULT_BUDGET;
use crate::error::{Error, Result};
use crate::growth::{pyramid_counts, pyramid_model, PyramidState};
use crate::rng::derive;

/// Largest `n` with an exact column.
pub const TABLE1_MAX_N: usize = 13;

mod decimal {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table1Row {
    pub n: usize,
    #[serde(with = "decimal")]
    pub exact: BigUint,
    pub rw0_mean: f64,
    pub rw0_std: f64,
    pub rw1_mean: f64,
    pub rw1_std: f64,
    #[serde(rename = "N")]
    pub samples: usize,
    pub seed: u64,
}

impl Table1Row {
    pub const CSV_HEADER: &'static str = "n,exact,rw0_mean,rw0_std,rw1_mean,rw1_std,N,seed";

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.n,
            self.exact,
            self.rw0_mean,
            self.rw0_std,
            self.rw1_mean,
            self.rw1_std,
            self.samples,
            self.seed
        )
    }
}

/// Seeds of the RW0 and RW1 runs for row `n` under `seed`.
pub fn table1_seeds(seed: u64, n: usize) -> (u64, u64) {
    (derive(seed, 2 * n as u64), derive(seed, 2 * n as u64 + 1))
}

/// One row per `(seed, n)`, seeds in the outer loop.
pub fn table1_experiment(ns: &[usize], samples: usize, seeds: &[u64]) -> Result<Vec<Table1Row>> {
    let n_max = ns.iter().copied().max().unwrap_or(0);
    if n_max > TABLE1_MAX_N {
        return Err(Error::budget("the exact column", TABLE1_MAX_N));
    }
    let model = pyramid_model(None)?;
    let exact = pyramid_counts(&model, n_max, DEFAULT_BUDGET)?;
    let root = PyramidState::single();
    let mut rows = Vec::with_capacity(ns.len() * seeds.len());
    for &seed in seeds {
        for &n in ns {
            let (s0, s1) = table1_seeds(seed, n);
            let rw0 = pyramid_estimate(&model, &root, n, &WalkRule::Grw, samples, s0)?;
            let rw1 = pyramid_estimate(&model, &root, n, &WalkRule::rw1(), samples, s1)?;
            rows.push(Table1Row {
                n,
                exact: exact[n].clone(),
                rw0_mean: rw0.mean,
                rw0_std: rw0.sample_std,
                rw1_mean: rw1.mean,
                rw1_std: rw1.sample_std,
                samples,
                seed,
            });
        }
    }
    Ok(rows)
}
