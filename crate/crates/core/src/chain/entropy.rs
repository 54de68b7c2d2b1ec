use num_traits::Zero;
use serde::Serialize;

use super::{path_probability, MarkovKernel};
use crate::diagram::{collect_paths, DiagramModel, PathIter};
use crate::error::Result;
use crate::scalar::Scalar;

/// Weighted path entropy of a law on length-`n` root paths.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntropyReport {
    /// `ln d(root, X_n)`, the maximum of the weighted entropy.
    pub log_total_weight: f64,
    /// `D_KL(nu || mu_n)`; zero when no law is supplied.
    pub kl_divergence: f64,
    /// `sum_s nu(s) ln(w_s / nu(s))`, computed directly from the paths.
    pub entropy_hw: f64,
}

/// Entropy of `nu` (or of the weight-proportional law `mu_n` when `nu` is
/// `None`) over all root paths of length `n`.
pub fn path_entropy<M, K>(
    model: &M,
    n: usize,
    nu: Option<&K>,
    limit: usize,
) -> Result<EntropyReport>
where
    M: DiagramModel,
    K: MarkovKernel<Vertex = M::Vertex>,
{
    let paths = collect_paths(PathIter::new(model, model.root(), n), limit)?;
    let total = paths
        .iter()
        .fold(M::Weight::zero(), |acc, (_, w)| acc + w.clone());
    let ln_total = total.ln();
    let mut kl = 0.0;
    let mut hw = 0.0;
    for (path, w) in &paths {
        let ln_w = w.ln();
        let ln_mu = ln_w - ln_total;
        let ln_nu = match nu {
            Some(k) => path_probability(k, path)?.ln(),
            None => ln_mu,
        };
        if ln_nu == f64::NEG_INFINITY {
            continue;
        }
        let p = ln_nu.exp();
        kl += p * (ln_nu - ln_mu);
        hw += p * (ln_w - ln_nu);
    }
    Ok(EntropyReport {
        log_total_weight: ln_total,
        kl_divergence: kl,
        entropy_hw: hw,
    })
}
