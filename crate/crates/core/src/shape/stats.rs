use rand::Rng as _;
use rand_distr::{Beta, Distribution};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{derive, stream, Rng};
use crate::tree::{subtree_fractions, weighted_fraction_cdf, GrowthRule};

/// Outcome of a distribution comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistributionTestReport {
    /// Kolmogorov-Smirnov sup-distance.
    pub statistic: f64,
    pub sample_size: usize,
    pub target: String,
    pub threshold: f64,
    pub passed: bool,
    /// Samples dropped because the measured quantity was undefined.
    pub excluded: usize,
}

/// One-sample KS distance between `samples` and the CDF `cdf`.
pub fn ks_statistic(samples: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut xs = samples.to_vec();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}

/// Two-sample KS distance.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> f64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j, mut d) = (0, 0, 0.0f64);
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}

/// Limit law of the first-child fraction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum FractionTarget {
    Uniform,
    /// Density `h_{x,y}` of the preferential binary tree.
    Weighted { x: f64, y: f64 },
}

impl FractionTarget {
    pub fn cdf(&self, t: f64) -> f64 {
        match *self {
            FractionTarget::Uniform => t.clamp(0.0, 1.0),
            FractionTarget::Weighted { x, y } => weighted_fraction_cdf(x, y, t),
        }
    }

    fn describe(&self) -> String {
        match self {
            FractionTarget::Uniform => "Uniform(0,1)".into(),
            FractionTarget::Weighted { x, y } => format!("h_{{{x},{y}}}"),
        }
    }
}

/// KS test of `|tau^(i1)| / |tau^(i)|` after `steps` insertions, over
/// `chains` independent chains, against `target`.
pub fn fraction_test(
    rule: &GrowthRule,
    node: &[u8],
    steps: usize,
    chains: usize,
    seed: u64,
    target: FractionTarget,
    threshold: f64,
) -> Result<DistributionTestReport> {
    if steps == 0 || chains == 0 {
        return Err(Error::param("steps and chains must be at least 1"));
    }
    let sample = subtree_fractions(rule, node, steps, chains, seed)?;
    if sample.fractions.is_empty() {
        return Err(Error::Invalid("the node was never populated".into()));
    }
    let statistic = ks_statistic(&sample.fractions, |t| target.cdf(t));
    Ok(DistributionTestReport {
        statistic,
        sample_size: sample.fractions.len(),
        target: target.describe(),
        threshold,
        passed: statistic < threshold,
        excluded: sample.excluded,
    })
}

/// Block sizes of a Chinese restaurant process with `n` customers:
/// customer `m + 1` joins block `i` with probability `x_i / (m + gamma)`
/// and opens a new block with probability `gamma / (m + gamma)`.
pub fn crp_blocks(gamma: f64, n: usize, rng: &mut Rng) -> Vec<u32> {
    let mut blocks: Vec<u32> = Vec::new();
    for m in 0..n {
        let u = rng.gen::<f64>() * (m as f64 + gamma);
        let mut acc = 0.0;
        let mut joined = false;
        for b in blocks.iter_mut() {
            acc += *b as f64;
            if u < acc {
                *b += 1;
                joined = true;
                break;
            }
        }
        if !joined {
            blocks.push(1);
        }
    }
    blocks
}

/// Stick-breaking frequencies `theta_k = U_k prod_{j<k}(1 - U_j)` with
/// `U_k ~ Beta(1, gamma)`, until the rest of the stick is below `tail`.
pub fn gem_frequencies(gamma: f64, tail: f64, rng: &mut Rng) -> Result<Vec<f64>> {
    let beta = Beta::new(1.0, gamma).map_err(|e| Error::param(e.to_string()))?;
    let mut rest = 1.0;
    let mut out = Vec::new();
    while rest > tail {
        let u: f64 = beta.sample(rng);
        out.push(rest * u);
        rest *= 1.0 - u;
    }
    Ok(out)
}

fn top_k(mut v: Vec<f64>, k: usize) -> Vec<f64> {
    v.sort_by(|a, b| b.total_cmp(a));
    v.resize(k, 0.0);
    v
}

/// Sorted block frequencies of the CRP against sorted stick-breaking
/// frequencies.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrpComparison {
    pub gamma: f64,
    pub n: usize,
    pub samples: usize,
    /// Mean of the `k`-th largest frequency, CRP side.
    pub crp_means: Vec<f64>,
    /// Mean of the `k`-th largest frequency, stick-breaking side.
    pub gem_means: Vec<f64>,
    /// `|crp_means - gem_means|` per coordinate.
    pub mean_differences: Vec<f64>,
    /// Two-sample KS distance of the largest frequency.
    pub largest: DistributionTestReport,
}

/// Compares the top `k_top` sorted block frequencies of CRP states of size
/// `n` with sorted GEM(`gamma`) samples, `samples` per side.
pub fn crp_pd_test(gamma: f64, n: usize, samples: usize, k_top: usize, seed: u64) -> Result<CrpComparison> {
    if !(gamma > 0.0) || n == 0 || samples == 0 || k_top == 0 {
        return Err(Error::param("gamma > 0 and positive n, samples, k"));
    }
    let crp_seed = derive(seed, 1);
    let gem_seed = derive(seed, 2);
    let crp: Vec<Vec<f64>> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let blocks = crp_blocks(gamma, n, &mut stream(crp_seed, i as u64));
            top_k(blocks.iter().map(|&b| b as f64 / n as f64).collect(), k_top)
        })
        .collect();
    let gem: Vec<Vec<f64>> = (0..samples)
        .into_par_iter()
        .map(|i| Ok(top_k(gem_frequencies(gamma, 1e-12, &mut stream(gem_seed, i as u64))?, k_top)))
        .collect::<Result<_>>()?;
    let mean = |rows: &[Vec<f64>], k: usize| rows.iter().map(|r| r[k]).sum::<f64>() / rows.len() as f64;
    let crp_means: Vec<f64> = (0..k_top).map(|k| mean(&crp, k)).collect();
    let gem_means: Vec<f64> = (0..k_top).map(|k| mean(&gem, k)).collect();
    let mean_differences = crp_means.iter().zip(&gem_means).map(|(a, b)| (a - b).abs()).collect();
    let first = |rows: &[Vec<f64>]| rows.iter().map(|r| r[0]).collect::<Vec<f64>>();
    let statistic = ks_two_sample(&first(&crp), &first(&gem));
    // 1.36 sqrt(2/m) is the asymptotic 5% point of the two-sample statistic
    let threshold = 1.3 * 1.36 * (2.0 / samples as f64).sqrt();
    Ok(CrpComparison {
        gamma,
        n,
        samples,
        crp_means,
        gem_means,
        mean_differences,
        largest: DistributionTestReport {
            statistic,
            sample_size: samples,
            target: format!("GEM({gamma}) largest frequency"),
            threshold,
            passed: statistic < threshold,
            excluded: 0,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ks_of_exact_quantiles_is_small() {
        let xs: Vec<f64> = (0..100).map(|i| (i as f64 + 0.5) / 100.0).collect();
        assert!((ks_statistic(&xs, |t| t) - 0.005).abs() < 1e-12);
        assert_eq!(ks_two_sample(&xs, &xs), 0.0);
        assert_eq!(ks_two_sample(&[0.0, 0.1], &[0.5, 0.6]), 1.0);
    }

    #[test]
    fn crp_conserves_customers() {
        let b = crp_blocks(1.0, 500, &mut stream(1, 0));
        assert_eq!(b.iter().sum::<u32>(), 500);
        let g = gem_frequencies(2.0, 1e-9, &mut stream(1, 1)).unwrap();
        assert!((g.iter().sum::<f64>() - 1.0).abs() < 1e-8);
    }
}
