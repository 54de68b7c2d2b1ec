use rand::Rng as _;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::MarkovKernel;
use crate::error::{Error, Result};
use crate::rng::{stream, Rng};
use crate::scalar::Scalar;

/// A sampled trajectory with the probability of each step.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathSample<V> {
    pub vertices: Vec<V>,
    pub step_probs: Vec<f64>,
    /// Sum of the log step probabilities; finite even when the product underflows.
    pub log_prob: f64,
}

impl<V> PathSample<V> {
    pub fn last(&self) -> &V {
        self.vertices.last().expect("a path always holds its start")
    }
}

/// Index drawn with probability proportional to `weights`.
pub fn choose_index(weights: &[f64], rng: &mut Rng) -> Option<usize> {
    let total: f64 = weights.iter().sum();
    if !(total > 0.0) || !total.is_finite() {
        return None;
    }
    let mut u = rng.gen::<f64>() * total;
    for (i, w) in weights.iter().enumerate() {
        if u < *w {
            return Some(i);
        }
        u -= w;
    }
    weights.iter().rposition(|w| *w > 0.0)
}

/// Runs the kernel for `steps` steps from its start vertex.
pub fn sample_path<K: MarkovKernel>(
    kernel: &K,
    steps: usize,
    rng: &mut Rng,
) -> Result<PathSample<K::Vertex>> {
    let mut current = kernel.start();
    let mut vertices = vec![current.clone()];
    let mut step_probs = Vec::with_capacity(steps);
    let mut log_prob = 0.0;
    for _ in 0..steps {
        let row = kernel.transitions(&current)?;
        let probs: Vec<f64> = row.iter().map(|(_, p)| p.to_f64()).collect();
        let i = choose_index(&probs, rng)
            .ok_or_else(|| Error::DeadEnd(current.to_string()))?;
        let p = probs[i] / probs.iter().sum::<f64>();
        step_probs.push(p);
        log_prob += p.ln();
        current = row[i].0.clone();
        vertices.push(current.clone());
    }
    Ok(PathSample {
        vertices,
        step_probs,
        log_prob,
    })
}

/// `count` independent trajectories; trajectory `i` uses stream `i` of `seed`.
pub fn sample_many<K: MarkovKernel>(
    kernel: &K,
    steps: usize,
    count: usize,
    seed: u64,
) -> Result<Vec<PathSample<K::Vertex>>> {
    (0..count)
        .into_par_iter()
        .map(|i| sample_path(kernel, steps, &mut stream(seed, i as u64)))
        .collect()
}
