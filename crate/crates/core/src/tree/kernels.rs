//! Closed-form central chains on `d`-ary trees: the search-tree process,
//! its Dirichlet (IDLA) generalization and the preferential binary tree.

use std::marker::PhantomData;

use statrs::function::gamma::ln_gamma;

use super::model::{DaryTreeModel, PreferentialWeights};
use super::prefix::PrefixTree;
use crate::chain::{CentralKernel, HarmonicFn};
use crate::error::{Error, Result};
use crate::scalar::{factorial, Scalar};

/// `phi(tau) = prod_{k=1}^{|tau|-1} 1 / (1 + (d-1) k)`.
///
/// Also harmonic for preferential weights summing to `d` at every node,
/// since a leaf's `d` slots then carry total weight `d` either way.
#[derive(Debug, Clone, Copy)]
pub struct BstHarmonic<S> {
    d: u8,
    _marker: PhantomData<fn() -> S>,
}

impl<S> BstHarmonic<S> {
    pub fn new(d: u8) -> Self {
        BstHarmonic {
            d,
            _marker: PhantomData,
        }
    }
}

impl<S: Scalar> HarmonicFn<PrefixTree> for BstHarmonic<S> {
    type Value = S;

    fn eval(&self, tau: &PrefixTree) -> S {
        let d = self.d as u64;
        (1..tau.size() as u64).fold(S::one(), |acc, k| acc / S::from_u64(1 + (d - 1) * k))
    }

    fn description(&self) -> String {
        format!("prod_k 1/(1+{}k)", self.d - 1)
    }
}

/// The `d`-ary search tree process: every one of the `1 + (d-1)|tau|`
/// empty slots is filled with the same probability. With weights, a slot
/// below a leaf `i` has its probability multiplied by `w_{i,ij}`.
pub fn bst_kernel<S: Scalar>(
    d: u8,
    weights: Option<PreferentialWeights<S>>,
) -> Result<CentralKernel<DaryTreeModel<S>, BstHarmonic<S>>> {
    let model = match weights {
        None => DaryTreeModel::new(d)?,
        Some(w) => {
            if w.arity() != d {
                return Err(Error::param("weight vector length differs from the arity"));
            }
            if !w.sums_to_arity() {
                return Err(Error::param("preferential weights must sum to d at every node"));
            }
            DaryTreeModel::weighted(w)
        }
    };
    CentralKernel::new(model, BstHarmonic::new(d))
}

/// Closed-form slot probability of the (possibly weighted) search-tree chain.
pub fn bst_slot_probability<S: Scalar>(
    model: &DaryTreeModel<S>,
    tau: &PrefixTree,
    node: &[u8],
    j: u8,
) -> S {
    let d = model.arity() as u64;
    model.edge_weight(tau, node, j) / S::from_u64(1 + (d - 1) * tau.size() as u64)
}

/// Annealed harmonic function of a tree in an i.i.d. Dirichlet(`a`)
/// environment:
/// `prod_{i internal} prod_j (a_j)^(n_ij rising) / (A)^(|tau^(i)|-1 rising)`.
#[derive(Debug, Clone)]
pub struct IdlaHarmonic<S> {
    a: Vec<S>,
}

impl<S: Scalar> IdlaHarmonic<S> {
    pub fn new(a: Vec<S>) -> Result<Self> {
        if a.len() < 2 || a.iter().any(|v| *v <= S::zero()) {
            return Err(Error::param("Dirichlet parameters must be positive, at least two"));
        }
        Ok(IdlaHarmonic { a })
    }

    pub fn total(&self) -> S {
        self.a.iter().fold(S::zero(), |acc, v| acc + v.clone())
    }
}

fn rising<S: Scalar>(x: &S, n: usize) -> S {
    (0..n).fold(S::one(), |acc, k| acc * (x.clone() + S::from_u64(k as u64)))
}

impl<S: Scalar> HarmonicFn<PrefixTree> for IdlaHarmonic<S> {
    type Value = S;

    fn eval(&self, tau: &PrefixTree) -> S {
        let total = self.total();
        let mut value = S::one();
        for v in tau.internal() {
            for (j, a) in self.a.iter().enumerate() {
                let n = tau.subtree_size(&PrefixTree::child(v, j as u8 + 1));
                value = value * rising(a, n);
            }
            value = value / rising(&total, tau.subtree_size(v) - 1);
        }
        value
    }

    fn description(&self) -> String {
        "annealed Dirichlet product".into()
    }
}

pub fn idla_annealed_kernel<S: Scalar>(
    a: Vec<S>,
) -> Result<CentralKernel<DaryTreeModel<S>, IdlaHarmonic<S>>> {
    let d = a.len() as u8;
    CentralKernel::new(DaryTreeModel::new(d)?, IdlaHarmonic::new(a)?)
}

/// Probability of adding `ij` under the annealed chain, as the product of
/// walk steps `(a_c + |tau^(vc)|) / (A + |tau^(v)| - 1)` along the path from
/// the root to the new node.
pub fn idla_transition<S: Scalar>(a: &[S], tau: &PrefixTree, node: &[u8], j: u8) -> S {
    let total = a.iter().fold(S::zero(), |acc, v| acc + v.clone());
    let mut target = node.to_vec();
    target.push(j);
    let mut p = S::one();
    for depth in 0..target.len() {
        let v = &target[..depth];
        let c = target[depth];
        let num = a[c as usize - 1].clone()
            + S::from_u64(tau.subtree_size(&target[..=depth]) as u64);
        let den = total.clone() + S::from_u64(tau.subtree_size(v) as u64 - 1);
        p = p * num / den;
    }
    p
}

/// `ln` of the annealed harmonic function through log-gamma, for real `a`.
pub fn idla_log_phi(a: &[f64], tau: &PrefixTree) -> f64 {
    let total: f64 = a.iter().sum();
    let mut acc = 0.0;
    for v in tau.internal() {
        for (j, &aj) in a.iter().enumerate() {
            let n = tau.subtree_size(&PrefixTree::child(v, j as u8 + 1)) as f64;
            acc += ln_gamma(aj + n) - ln_gamma(aj);
        }
        let m = (tau.subtree_size(v) - 1) as f64;
        acc -= ln_gamma(total + m) - ln_gamma(total);
    }
    acc
}

/// Harmonic function of the preferential binary tree with homogeneous
/// first-child weights `(x, y)`:
/// `phi(tau) = (1/|tau|!) (2/(x+y))^|int tau|`.
#[derive(Debug, Clone)]
pub struct WeightedBstHarmonic<S> {
    x: S,
    y: S,
}

impl<S: Scalar> WeightedBstHarmonic<S> {
    pub fn new(x: S, y: S) -> Result<Self> {
        if x <= S::zero() || y <= S::zero() {
            return Err(Error::param("x and y must be positive"));
        }
        Ok(WeightedBstHarmonic { x, y })
    }

    fn scale(&self) -> S {
        S::from_u64(2) / (self.x.clone() + self.y.clone())
    }
}

impl<S: Scalar> HarmonicFn<PrefixTree> for WeightedBstHarmonic<S> {
    type Value = S;

    fn eval(&self, tau: &PrefixTree) -> S {
        let internal = tau.internal().len() as u32;
        self.scale().pow(internal) / S::from_big(&factorial(tau.size() as u64))
    }

    fn description(&self) -> String {
        "(1/|tau|!) (2/(x+y))^|int tau|".into()
    }
}

/// The unique MERW of the preferential binary tree.
pub fn weighted_bst_merw<S: Scalar>(
    x: S,
    y: S,
) -> Result<CentralKernel<DaryTreeModel<S>, WeightedBstHarmonic<S>>> {
    let phi = WeightedBstHarmonic::new(x.clone(), y.clone())?;
    let model = DaryTreeModel::weighted(PreferentialWeights::binary(x, y)?);
    CentralKernel::new(model, phi)
}

/// Closed-form transition of the preferential binary MERW: below a leaf,
/// child `j` has probability `2 w_j / ((x+y)(|tau|+1))`; the empty slot of
/// an incomplete internal node has `1/(|tau|+1)`.
pub fn weighted_bst_transition<S: Scalar>(x: &S, y: &S, tau: &PrefixTree, node: &[u8], j: u8) -> S {
    let n1 = S::from_u64(tau.size() as u64 + 1);
    if tau.is_leaf(node) {
        let w = if j == 1 { x.clone() } else { y.clone() };
        S::from_u64(2) * w / ((x.clone() + y.clone()) * n1)
    } else {
        S::one() / n1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::MarkovKernel;
    use crate::scalar::Exact;

    #[test]
    fn bst_root_row_is_uniform() {
        let k = bst_kernel::<Exact>(2, None).unwrap();
        let t = PrefixTree::parse("1,2").unwrap();
        let row = k.transitions(&t).unwrap();
        assert_eq!(row.len(), 4);
        assert!(row.iter().all(|(_, p)| *p == Exact::ratio(1, 4)));
    }

    #[test]
    fn idla_example_step() {
        let a = vec![Exact::from_u64(1), Exact::from_u64(2)];
        let t = PrefixTree::parse("1").unwrap();
        assert_eq!(idla_transition(&a, &t, &[], 2), Exact::ratio(1, 2));
        let k = idla_annealed_kernel(a).unwrap();
        let row = k.transitions(&t).unwrap();
        let p2 = row
            .iter()
            .find(|(s, _)| s.contains(&[2]))
            .map(|(_, p)| p.clone())
            .unwrap();
        assert_eq!(p2, Exact::ratio(1, 2));
    }
}
