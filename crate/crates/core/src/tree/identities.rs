//! Hook-length identities for trees, checked by exhaustive enumeration.

use num_traits::{One, Zero};

use super::dimension::increasing_tree_dimension;
use super::labels::{label_harmonic, LabelField};
use super::model::{DaryTreeModel, PreferentialWeights};
use super::prefix::{Node, PrefixTree};
use crate::chain::{identity_residual, HarmonicFn};
use crate::error::{Error, Result};
use crate::scalar::{Exact, Scalar};

/// Largest tree size accepted by the exhaustive enumerator.
pub const MAX_ENUM_SIZE: usize = 12;

/// All `d`-ary trees with exactly `n` nodes (`n >= 1`).
///
/// Built recursively from the child-size compositions of `n - 1`, without
/// going through the diagram model, so that it can serve as an oracle.
pub fn enumerate_dary_trees(d: u8, n: usize) -> Result<Vec<PrefixTree>> {
    if n == 0 {
        return Err(Error::param("trees have at least one node"));
    }
    if n > MAX_ENUM_SIZE {
        return Err(Error::budget("tree enumeration size", MAX_ENUM_SIZE));
    }
    Ok(shapes(d, n)
        .into_iter()
        .map(|nodes| PrefixTree::from_nodes(nodes).expect("generated trees are prefix-closed"))
        .collect())
}

/// Node lists (relative to a root at `[]`) of all trees of size `n`.
fn shapes(d: u8, n: usize) -> Vec<Vec<Node>> {
    if n == 0 {
        return vec![];
    }
    let mut out = Vec::new();
    let mut sizes = vec![0usize; d as usize];
    compositions(n - 1, 0, &mut sizes, &mut |sizes| {
        // Cartesian product of the subtrees in every slot.
        let mut partial: Vec<Vec<Node>> = vec![vec![Vec::new()]];
        for (j, &k) in sizes.iter().enumerate() {
            if k == 0 {
                continue;
            }
            let subs = shapes(d, k);
            let mut next = Vec::with_capacity(partial.len() * subs.len());
            for base in &partial {
                for sub in &subs {
                    let mut nodes = base.clone();
                    nodes.extend(sub.iter().map(|v| {
                        let mut c = vec![j as u8 + 1];
                        c.extend_from_slice(v);
                        c
                    }));
                    next.push(nodes);
                }
            }
            partial = next;
        }
        out.extend(partial);
    });
    out
}

fn compositions(rest: usize, idx: usize, sizes: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if idx + 1 == sizes.len() {
        sizes[idx] = rest;
        f(sizes);
        return;
    }
    for k in 0..=rest {
        sizes[idx] = k;
        compositions(rest - k, idx + 1, sizes, f);
    }
}

/// `sum_{|sigma| = n} d(root, sigma) prod_{i in sigma} alpha_i - 1`, with the
/// trees enumerated directly.
pub fn comb2_residual(labels: &LabelField<Exact>, n: usize) -> Result<Exact> {
    let phi = label_harmonic(labels.clone(), None)?;
    let mut total = Exact::zero();
    for sigma in enumerate_dary_trees(labels.arity(), n)? {
        if sigma.height() > labels.depth() {
            return Err(Error::param("label field is too shallow for this size"));
        }
        let dim: Exact = increasing_tree_dimension(&PrefixTree::root(), &sigma, None)?;
        total += dim * phi.eval(&sigma);
    }
    Ok(total - Exact::one())
}

/// The same identity obtained from the generic diagram machinery: forward
/// dimensions on the tree model at level `n - 1`.
pub fn comb2_residual_via_diagram(labels: &LabelField<Exact>, n: usize, budget: usize) -> Result<Exact> {
    let model = DaryTreeModel::<Exact>::new(labels.arity())?;
    let phi = label_harmonic(labels.clone(), None)?;
    identity_residual(&model, &phi, n.saturating_sub(1), budget)
}

/// `sum_{tau in B_d(n)} n! / prod_v |tau^(v)| d^(|tau^(v)| - 1) - 1`.
pub fn comb3_residual(d: u8, n: usize) -> Result<Exact> {
    let mut total = Exact::zero();
    for tau in enumerate_dary_trees(d, n)? {
        total += uniform_term(&tau, d);
    }
    Ok(total - Exact::one())
}

/// `n! / prod_v |tau^(v)| d^(|tau^(v)|-1)`.
fn uniform_term(tau: &PrefixTree, d: u8) -> Exact {
    let n = tau.size() as u64;
    let mut denom = Exact::one();
    for v in tau.nodes() {
        let s = tau.subtree_size(v) as u64;
        denom *= Exact::from_u64(s) * Scalar::pow(&Exact::from_u64(d as u64), s as u32 - 1);
    }
    Exact::from_big(&crate::scalar::factorial(n)) / denom
}

/// Left and right-hand sides of the weighted Han identity for homogeneous
/// first-child weights `w`.
pub fn comb4_sides(w: &[Exact], n: usize) -> Result<(Exact, Exact)> {
    let weights = PreferentialWeights::homogeneous(w.to_vec())?;
    let d = weights.arity();
    let mean = w.iter().fold(Exact::zero(), |a, b| a + b) / Exact::from_u64(d as u64);
    let mut lhs = Exact::zero();
    for tau in enumerate_dary_trees(d, n)? {
        let mut num = Exact::one();
        for v in tau.internal() {
            let spread = (1..=d).fold(Exact::zero(), |acc, j| {
                acc + Exact::from_u64(tau.subtree_size(&PrefixTree::child(v, j)) as u64)
                    * weights.weight(v, j)
            });
            num *= spread / Exact::from_u64(tau.subtree_size(v) as u64 - 1);
        }
        let mut denom = Exact::one();
        for v in tau.nodes() {
            let s = tau.subtree_size(v) as u64;
            denom *= Exact::from_u64(s) * Scalar::pow(&Exact::from_u64(d as u64), s as u32 - 1);
        }
        lhs += num / denom * Scalar::pow(&mean, tau.leaves().len() as u32);
    }
    let rhs = Scalar::pow(&mean, n as u32) / Exact::from_big(&crate::scalar::factorial(n as u64));
    Ok((lhs, rhs))
}

pub fn comb4_residual(w: &[Exact], n: usize) -> Result<Exact> {
    let (lhs, rhs) = comb4_sides(w, n)?;
    Ok(lhs - rhs)
}

/// The expanded `d = 2, n = 3` instance:
/// `(1/12) m^3 + (1/48) (sum_{i,j} w_i w_j) m` with `m = (w_1 + w_2)/2`.
pub fn comb4_expanded_n3(w1: &Exact, w2: &Exact) -> Exact {
    let m = (w1 + w2) / Exact::from_u64(2);
    let pairs = (w1 + w2) * (w1 + w2);
    Scalar::pow(&m, 3) / Exact::from_u64(12) + pairs * m / Exact::from_u64(48)
}
