//! The Young lattice of integer partitions and the Plancherel growth process.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::chain::{CentralKernel, HarmonicFn};
use crate::diagram::{DiagramModel, WeightedEdge};
use crate::error::{Error, Result};
use crate::scalar::{factorial, Exact};

/// Largest partition size accepted by the hook-length routines.
pub const MAX_EXACT_SIZE: u32 = 64;

/// Weakly decreasing positive parts, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid(format!("{parts:?} is not a partition")));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn conjugate(&self) -> Vec<u32> {
        let width = self.0.first().copied().unwrap_or(0);
        (0..width)
            .map(|j| self.0.iter().filter(|&&p| p > j).count() as u32)
            .collect()
    }

    /// Hook lengths, row by row.
    pub fn hooks(&self) -> Vec<u32> {
        let conj = self.conjugate();
        let mut out = Vec::with_capacity(self.size() as usize);
        for (i, &row) in self.0.iter().enumerate() {
            for j in 0..row {
                let arm = row - j - 1;
                let leg = conj[j as usize] - i as u32 - 1;
                out.push(arm + leg + 1);
            }
        }
        out
    }

    pub fn contains(&self, other: &Partition) -> bool {
        other.0.len() <= self.0.len() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("∅");
        }
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All partitions of `n` in reverse lexicographic order.
pub fn partitions(n: u32) -> Vec<Partition> {
    fn rec(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for p in (1..=n.min(max)).rev() {
            prefix.push(p);
            rec(n - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Number of standard Young tableaux of shape `lambda`: `n! / prod hooks`.
pub fn young_dim(lambda: &Partition) -> BigUint {
    assert!(
        lambda.size() <= MAX_EXACT_SIZE,
        "partition size {} exceeds {MAX_EXACT_SIZE}",
        lambda.size()
    );
    let hooks = lambda
        .hooks()
        .into_iter()
        .fold(BigUint::one(), |acc, h| acc * h);
    factorial(lambda.size() as u64) / hooks
}

/// Unweighted Young lattice: `lambda -> mu` when `mu` adds one box.
#[derive(Debug, Clone, Copy, Default)]
pub struct YoungModel;

impl DiagramModel for YoungModel {
    type Vertex = Partition;
    type Weight = Exact;

    fn name(&self) -> String {
        "young".into()
    }
    fn root(&self) -> Partition {
        Partition::empty()
    }
    fn level(&self, v: &Partition) -> usize {
        v.size() as usize
    }
    /// A box appended to row 0, 1, ... where allowed, then a new row.
    fn children(&self, v: &Partition) -> Vec<WeightedEdge<Partition, Exact>> {
        let mut out = Vec::new();
        for i in 0..v.0.len() {
            if i == 0 || v.0[i - 1] > v.0[i] {
                let mut parts = v.0.clone();
                parts[i] += 1;
                out.push(WeightedEdge::new(Partition(parts), Exact::one()));
            }
        }
        let mut parts = v.0.clone();
        parts.push(1);
        out.push(WeightedEdge::new(Partition(parts), Exact::one()));
        out
    }
    fn may_reach(&self, from: &Partition, to: &Partition) -> bool {
        to.contains(from)
    }
}

/// `phi(lambda) = dim(lambda) / |lambda|!`.
#[derive(Debug, Clone, Copy, Default)]
pub struct PlancherelHarmonic;

impl HarmonicFn<Partition> for PlancherelHarmonic {
    type Value = Exact;

    fn eval(&self, v: &Partition) -> Exact {
        Exact::new(young_dim(v).into(), factorial(v.size() as u64).into())
    }

    fn description(&self) -> String {
        "dim(lambda)/|lambda|!".into()
    }
}

/// The Plancherel growth process: `p(lambda -> mu) = dim(mu) / ((n+1) dim(lambda))`.
pub fn plancherel_kernel() -> CentralKernel<YoungModel, PlancherelHarmonic> {
    CentralKernel::new(YoungModel, PlancherelHarmonic).expect("Plancherel function is harmonic")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..8).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15]);
    }

    #[test]
    fn hooks_of_two_one() {
        let p = Partition::new(vec![2, 1]).unwrap();
        assert_eq!(p.hooks(), vec![3, 1, 1]);
        assert_eq!(young_dim(&p), BigUint::from(2u32));
    }

    #[test]
    fn rejects_non_partitions() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
    }
}
