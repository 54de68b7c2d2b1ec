use super::model::PreferentialWeights;
use super::prefix::{Node, PrefixTree};
use crate::error::{Error, Result};
use crate::scalar::{factorial, Scalar};

/// Total weight of increasing labelings completing `tau` into `sigma`.
///
/// Unweighted: `|sigma \ tau|! / prod_{i in sigma \ tau} |sigma^(i)|`.
/// With preferential weights every internal node `i` of `sigma` that is
/// new or was a leaf of `tau` contributes the extra factor
/// `sum_j |sigma^(ij)| w_{i,ij} / (|sigma^(i)| - 1)`: the chance-weighted
/// choice of which child subtree receives `i`'s first descendant.
pub fn increasing_tree_dimension<S: Scalar>(
    tau: &PrefixTree,
    sigma: &PrefixTree,
    weights: Option<&PreferentialWeights<S>>,
) -> Result<S> {
    if !tau.is_subset(sigma) {
        return Err(Error::Invalid(format!("{tau} is not contained in {sigma}")));
    }
    let new: Vec<&Node> = sigma.nodes().filter(|v| !tau.contains(v)).collect();
    let hooks = new
        .iter()
        .fold(S::one(), |acc, v| acc * S::from_u64(sigma.subtree_size(v) as u64));
    let mut value = S::from_big(&factorial(new.len() as u64)) / hooks;
    if let Some(w) = weights {
        for v in sigma.internal() {
            let fresh = !tau.contains(v) || tau.is_leaf(v);
            if !fresh {
                continue;
            }
            let d = w.arity();
            let num = (1..=d).fold(S::zero(), |acc, j| {
                let size = sigma.subtree_size(&PrefixTree::child(v, j));
                acc + S::from_u64(size as u64) * w.weight(v, j)
            });
            value = value * num / S::from_u64(sigma.subtree_size(v) as u64 - 1);
        }
    }
    Ok(value)
}
