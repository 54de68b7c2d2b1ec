use std::collections::BTreeMap;

use super::prefix::{Node, PrefixTree};
use crate::diagram::{DiagramModel, WeightedEdge};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `w_{i,ij}`: weight of adding child `j` of node `i` when `i` has no
/// children yet. Later children of an internal node always carry weight 1.
#[derive(Debug, Clone, PartialEq)]
pub struct PreferentialWeights<S> {
    default: Vec<S>,
    overrides: BTreeMap<Node, Vec<S>>,
}

impl<S: Scalar> PreferentialWeights<S> {
    /// The same vector `(w_1, ..., w_d)` at every node.
    pub fn homogeneous(w: Vec<S>) -> Result<Self> {
        Self::check(&w)?;
        Ok(PreferentialWeights {
            default: w,
            overrides: BTreeMap::new(),
        })
    }

    /// Binary weights `(x, y)`.
    pub fn binary(x: S, y: S) -> Result<Self> {
        Self::homogeneous(vec![x, y])
    }

    pub fn with_override(mut self, node: Node, w: Vec<S>) -> Result<Self> {
        Self::check(&w)?;
        if w.len() != self.default.len() {
            return Err(Error::param("override has the wrong arity"));
        }
        self.overrides.insert(node, w);
        Ok(self)
    }

    fn check(w: &[S]) -> Result<()> {
        if w.len() < 2 {
            return Err(Error::param("need at least two child weights"));
        }
        if w.iter().any(|v| *v <= S::zero()) {
            return Err(Error::param("preferential weights must be positive"));
        }
        Ok(())
    }

    pub fn arity(&self) -> u8 {
        self.default.len() as u8
    }

    pub fn at(&self, node: &[u8]) -> &[S] {
        self.overrides.get(node).unwrap_or(&self.default)
    }

    pub fn weight(&self, node: &[u8], j: u8) -> S {
        self.at(node)[j as usize - 1].clone()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.overrides.is_empty()
    }

    pub fn homogeneous_vector(&self) -> Option<&[S]> {
        self.is_homogeneous().then_some(self.default.as_slice())
    }

    /// True when every node's weights sum to its arity `d`.
    pub fn sums_to_arity(&self) -> bool {
        let d = S::from_u64(self.arity() as u64);
        std::iter::once(&self.default)
            .chain(self.overrides.values())
            .all(|w| w.iter().fold(S::zero(), |a, b| a + b.clone()) == d)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> PreferentialWeights<T> {
        PreferentialWeights {
            default: self.default.iter().map(&f).collect(),
            overrides: self
                .overrides
                .iter()
                .map(|(k, v)| (k.clone(), v.iter().map(&f).collect()))
                .collect(),
        }
    }
}

/// Trees growing inside the complete `d`-ary tree, one node per step.
///
/// Level `n` holds the trees with `n + 1` nodes. Children of `tau` are
/// listed node by node in canonical order, and for each node by child index
/// `1..=d`.
#[derive(Debug, Clone)]
pub struct DaryTreeModel<S> {
    d: u8,
    weights: Option<PreferentialWeights<S>>,
}

impl<S: Scalar> DaryTreeModel<S> {
    pub fn new(d: u8) -> Result<Self> {
        if d < 2 {
            return Err(Error::param("arity must be at least 2"));
        }
        Ok(DaryTreeModel { d, weights: None })
    }

    pub fn weighted(weights: PreferentialWeights<S>) -> Self {
        DaryTreeModel {
            d: weights.arity(),
            weights: Some(weights),
        }
    }

    pub fn arity(&self) -> u8 {
        self.d
    }

    pub fn weights(&self) -> Option<&PreferentialWeights<S>> {
        self.weights.as_ref()
    }

    /// Weight of the edge `tau -> tau + {ij}`.
    pub fn edge_weight(&self, tau: &PrefixTree, node: &[u8], j: u8) -> S {
        match &self.weights {
            Some(w) if tau.is_leaf(node) => w.weight(node, j),
            _ => S::one(),
        }
    }

    /// Empty slots `(i, j)` of `tau`, in child order.
    pub fn slots(&self, tau: &PrefixTree) -> Vec<(Node, u8)> {
        let mut out = Vec::new();
        for v in tau.nodes() {
            for j in 1..=self.d {
                if !tau.contains(&PrefixTree::child(v, j)) {
                    out.push((v.clone(), j));
                }
            }
        }
        out
    }
}

impl<S: Scalar> DiagramModel for DaryTreeModel<S> {
    type Vertex = PrefixTree;
    type Weight = S;

    fn name(&self) -> String {
        match &self.weights {
            None => format!("{}-ary trees", self.d),
            Some(_) => format!("{}-ary trees (preferential weights)", self.d),
        }
    }
    fn root(&self) -> PrefixTree {
        PrefixTree::root()
    }
    fn level(&self, v: &PrefixTree) -> usize {
        v.size() - 1
    }
    fn children(&self, tau: &PrefixTree) -> Vec<WeightedEdge<PrefixTree, S>> {
        self.slots(tau)
            .into_iter()
            .map(|(v, j)| {
                let w = self.edge_weight(tau, &v, j);
                WeightedEdge::new(tau.with(PrefixTree::child(&v, j)), w)
            })
            .collect()
    }
    fn out_degree(&self, tau: &PrefixTree) -> usize {
        1 + (self.d as usize - 1) * tau.size()
    }
    fn may_reach(&self, from: &PrefixTree, to: &PrefixTree) -> bool {
        from.is_subset(to)
    }
}
