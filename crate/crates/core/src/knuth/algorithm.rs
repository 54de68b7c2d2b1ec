//! The approximate MERW: at every step, estimate the continuation count of
//! each child with Knuth's estimator and move proportionally to it.

use serde::{Deserialize, Serialize};

use super::estimate::knuth_log_costs;
use super::proposal::ProposalKernel;
use super::pyramid::{pyramid_log_costs, WalkRule};
use super::EstimateResult;
use crate::chain::{choose_index, PathSample};
use crate::diagram::DiagramModel;
use crate::error::{Error, Result};
use crate::growth::{PyramidModel, PyramidState};
use crate::rng::{derive, stream};
use crate::scalar::Scalar;

/// Parameters of one approximate-MERW run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApproxParams {
    /// Path length.
    pub n: usize,
    /// Exploration depth of each estimate.
    pub depth: usize,
    /// Trajectories per estimate.
    pub samples: usize,
    pub seed: u64,
}

impl ApproxParams {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.depth == 0 || self.samples == 0 {
            return Err(Error::param("n, d and N must be at least 1"));
        }
        Ok(())
    }

    /// Seed of the estimate for child `j` at step `i`.
    fn estimate_seed(&self, i: usize, j: usize) -> u64 {
        derive(derive(self.seed, i as u64 + 1), j as u64)
    }
}

/// Sampled path with, for each step, the estimates `W(x)` of the
/// children of the current vertex in the model's child order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApproxMerwSample<V> {
    pub sample: PathSample<V>,
    pub tables: Vec<Vec<f64>>,
}

/// Draws a child with probability proportional to `w(x, y) W(y)`, given
/// `ln w + ln W` per child.
fn draw(log_weights: &[f64], rng: &mut crate::rng::Rng) -> Result<(usize, f64)> {
    let top = log_weights.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let rel: Vec<f64> = log_weights.iter().map(|l| (l - top).exp()).collect();
    let total: f64 = rel.iter().sum();
    let i = choose_index(&rel, rng).ok_or_else(|| Error::Invalid("all estimates vanish".into()))?;
    Ok((i, rel[i] / total))
}

fn run<V: Clone>(
    root: V,
    params: &ApproxParams,
    mut children: impl FnMut(&V) -> Vec<(V, f64)>,
    mut estimate: impl FnMut(&V, u64) -> Result<EstimateResult>,
) -> Result<ApproxMerwSample<V>> {
    params.validate()?;
    let mut rng = stream(params.seed, 0);
    let mut current = root;
    let mut vertices = vec![current.clone()];
    let mut step_probs = Vec::with_capacity(params.n);
    let mut log_prob = 0.0;
    let mut tables = Vec::with_capacity(params.n);
    for i in 0..params.n {
        let kids = children(&current);
        let mut table = Vec::with_capacity(kids.len());
        let mut log_weights = Vec::with_capacity(kids.len());
        for (j, (child, log_w)) in kids.iter().enumerate() {
            let est = estimate(child, params.estimate_seed(i, j))?;
            table.push(est.mean);
            log_weights.push(log_w + est.log_mean);
        }
        let (j, p) = draw(&log_weights, &mut rng)?;
        current = kids[j].0.clone();
        vertices.push(current.clone());
        step_probs.push(p);
        log_prob += p.ln();
        tables.push(table);
    }
    Ok(ApproxMerwSample {
        sample: PathSample {
            vertices,
            step_probs,
            log_prob,
        },
        tables,
    })
}

/// The approximate MERW on any diagram, from the root: `n` steps, each child scored
/// by `N` trajectories of `q` of length `d`.
pub fn merw_approx_sample<M, P>(
    model: &M,
    proposal: &P,
    params: &ApproxParams,
) -> Result<ApproxMerwSample<M::Vertex>>
where
    M: DiagramModel,
    P: ProposalKernel<M> + ?Sized,
{
    run(
        model.root(),
        params,
        |v| {
            model
                .children(v)
                .into_iter()
                .map(|e| (e.child, e.weight.ln()))
                .collect()
        },
        |x, seed| {
            let costs = knuth_log_costs(model, x, params.depth, proposal, params.samples, seed)?;
            EstimateResult::from_log_costs(&costs, false)
        },
    )
}

/// The approximate MERW on the pyramid model with the fast walker. Follows the same
/// path as [`merw_approx_sample`] on `FloatView<PyramidModel>` for equal
/// parameters.
pub fn pyramid_merw_approx_sample(
    model: &PyramidModel,
    rule: &WalkRule,
    params: &ApproxParams,
) -> Result<ApproxMerwSample<PyramidState>> {
    run(
        PyramidState::single(),
        params,
        |v| model.moves(v).into_iter().map(|c| (c, 0.0)).collect(),
        |x, seed| {
            let costs = pyramid_log_costs(model, x, params.depth, rule, params.samples, seed)?;
            EstimateResult::from_log_costs(&costs, false)
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{ChainModel, FloatView};
    use crate::growth::pyramid_model;
    use crate::knuth::OutDegreePower;

    #[test]
    fn single_path_model() {
        let m = ChainModel::unweighted();
        let p = ApproxParams { n: 4, depth: 2, samples: 3, seed: 9 };
        let s = merw_approx_sample(&m, &super::super::Grw, &p).unwrap();
        assert_eq!(s.sample.vertices, vec![0, 1, 2, 3, 4]);
        assert!(s.sample.step_probs.iter().all(|&q| q == 1.0));
    }

    #[test]
    fn fast_and_generic_agree() {
        let m = pyramid_model(None).unwrap();
        let p = ApproxParams { n: 6, depth: 4, samples: 20, seed: 5 };
        let a = pyramid_merw_approx_sample(&m, &WalkRule::rw1(), &p).unwrap();
        let b = merw_approx_sample(&FloatView(m), &OutDegreePower::scheduled(), &p).unwrap();
        assert_eq!(a, b);
    }
}
