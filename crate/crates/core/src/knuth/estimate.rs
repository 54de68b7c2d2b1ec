use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::proposal::{check_support, ProposalKernel};
use crate::chain::choose_index;
use crate::diagram::{DiagramModel, WeightedEdge};
use crate::error::{Error, Result};
use crate::rng::{stream, Rng};
use crate::scalar::Scalar;

/// Mean and spread of `N` trajectory costs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateResult {
    pub mean: f64,
    /// Sample standard deviation with the `N - 1` denominator (0 when `N = 1`).
    pub sample_std: f64,
    /// `ln(mean)`, usable when `mean` overflows.
    pub log_mean: f64,
    pub samples: usize,
    /// Per-trajectory costs, when requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub costs: Option<Vec<f64>>,
}

impl EstimateResult {
    /// Summarizes costs given by their logarithms. Costs are rescaled by
    /// the largest one before summing, so equal costs give a spread of
    /// exactly 0.
    pub fn from_log_costs(log_costs: &[f64], keep_costs: bool) -> Result<Self> {
        let n = log_costs.len();
        if n == 0 {
            return Err(Error::param("at least one trajectory is needed"));
        }
        let top = log_costs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let scaled: Vec<f64> = log_costs.iter().map(|l| (l - top).exp()).collect();
        let mean = scaled.iter().sum::<f64>() / n as f64;
        let var = if n > 1 {
            scaled.iter().map(|u| (u - mean) * (u - mean)).sum::<f64>() / (n - 1) as f64
        } else {
            0.0
        };
        let scale = top.exp();
        Ok(EstimateResult {
            mean: mean * scale,
            sample_std: var.sqrt() * scale,
            log_mean: top + mean.ln(),
            samples: n,
            costs: keep_costs.then(|| log_costs.iter().map(|l| l.exp()).collect()),
        })
    }
}

/// Estimate computed in the model's own arithmetic.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactEstimate<W> {
    pub mean: W,
    /// Unbiased sample variance (0 when `N = 1`).
    pub variance: W,
    pub costs: Vec<W>,
}

impl<W: Scalar> ExactEstimate<W> {
    /// Standard deviation when it is representable (always in float mode,
    /// for perfect squares in exact mode).
    pub fn sample_std(&self) -> Option<W> {
        self.variance.sqrt()
    }
}

fn draw_child<M, P>(
    model: &M,
    proposal: &P,
    x: &M::Vertex,
    step: usize,
    depth: usize,
    rng: &mut Rng,
) -> Result<(WeightedEdge<M::Vertex, M::Weight>, M::Weight)>
where
    M: DiagramModel,
    P: ProposalKernel<M> + ?Sized,
{
    let mut children = model.children(x);
    if children.is_empty() {
        return Err(Error::DeadEnd(x.to_string()));
    }
    let q = proposal.probabilities(model, x, &children, step, depth)?;
    check_support(&children, &q)?;
    let floats: Vec<f64> = q.iter().map(Scalar::to_f64).collect();
    let i = choose_index(&floats, rng).ok_or_else(|| Error::DeadEnd(x.to_string()))?;
    let qi = q[i].clone();
    Ok((children.swap_remove(i), qi))
}

/// `ln c(s)` of one trajectory, `c(s) = w_s / prod q`.
pub fn trajectory_log_cost<M, P>(
    model: &M,
    proposal: &P,
    x: &M::Vertex,
    depth: usize,
    rng: &mut Rng,
) -> Result<f64>
where
    M: DiagramModel,
    P: ProposalKernel<M> + ?Sized,
{
    let mut v = x.clone();
    let mut log_cost = 0.0;
    for step in 0..depth {
        let (edge, q) = draw_child(model, proposal, &v, step, depth, rng)?;
        log_cost += edge.weight.ln() - q.ln();
        v = edge.child;
    }
    Ok(log_cost)
}

/// `ln c(s)` for `N` independent trajectories; trajectory `k` uses stream
/// `k` of `seed`.
pub fn knuth_log_costs<M, P>(
    model: &M,
    x: &M::Vertex,
    depth: usize,
    proposal: &P,
    samples: usize,
    seed: u64,
) -> Result<Vec<f64>>
where
    M: DiagramModel,
    P: ProposalKernel<M> + ?Sized,
{
    if samples == 0 {
        return Err(Error::param("N must be at least 1"));
    }
    (0..samples)
        .into_par_iter()
        .map(|k| trajectory_log_cost(model, proposal, x, depth, &mut stream(seed, k as u64)))
        .collect()
}

/// Knuth's estimator of `d(x, X_{level(x) + depth})`: the mean of
/// `c(s) = w_s / prod q(s_i, s_{i+1})` over `N` trajectories of `q`.
pub fn knuth_estimate<M, P>(
    model: &M,
    x: &M::Vertex,
    depth: usize,
    proposal: &P,
    samples: usize,
    seed: u64,
) -> Result<EstimateResult>
where
    M: DiagramModel,
    P: ProposalKernel<M> + ?Sized,
{
    EstimateResult::from_log_costs(&knuth_log_costs(model, x, depth, proposal, samples, seed)?, false)
}

/// Same estimator with costs multiplied out in the model's arithmetic.
/// Draws the same trajectories as [`knuth_estimate`] for the same seed.
pub fn knuth_estimate_exact<M, P>(
    model: &M,
    x: &M::Vertex,
    depth: usize,
    proposal: &P,
    samples: usize,
    seed: u64,
) -> Result<ExactEstimate<M::Weight>>
where
    M: DiagramModel,
    P: ProposalKernel<M> + ?Sized,
{
    if samples == 0 {
        return Err(Error::param("N must be at least 1"));
    }
    let costs: Vec<M::Weight> = (0..samples)
        .into_par_iter()
        .map(|k| {
            let mut rng = stream(seed, k as u64);
            let mut v = x.clone();
            let mut cost = M::Weight::one();
            for step in 0..depth {
                let (edge, q) = draw_child(model, proposal, &v, step, depth, &mut rng)?;
                cost = cost * edge.weight / q;
                v = edge.child;
            }
            Ok(cost)
        })
        .collect::<Result<_>>()?;
    let n = M::Weight::from_u64(samples as u64);
    let mean = costs.iter().fold(M::Weight::zero(), |a, c| a + c.clone()) / n.clone();
    let variance = if samples > 1 {
        costs.iter().fold(M::Weight::zero(), |a, c| {
            let d = c.clone() - mean.clone();
            a + d.clone() * d
        }) / M::Weight::from_u64(samples as u64 - 1)
    } else {
        M::Weight::zero()
    };
    Ok(ExactEstimate {
        mean,
        variance,
        costs,
    })
}
