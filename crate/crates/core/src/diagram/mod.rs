//! Weighted Bratteli diagrams and exact finite-horizon path counting.
//!
//! A diagram is graded: every edge goes from level `n` to level `n + 1`,
//! there is a single root at level 0, and every vertex has at least one
//! child. Models only describe the local structure ([`DiagramModel`]);
//! level sets are never materialized except by the explicit forward sweeps
//! in [`dimension`].

mod dimension;
mod paths;
mod toy;

pub use dimension::{
    default_budget, finite_horizon_kernel, forward_level, gelfand_marginal, gelfand_mass,
    martin_kernel, Dimensions, HorizonRow, DEFAULT_BUDGET,
};
pub use paths::{collect_paths, paths_between, PathIter};
pub use toy::{ChainModel, ExplicitDiagram, ExplicitVertex, Side, ToyOne, ToyOneVertex, ToyTwo, ToyTwoVertex};

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_traits::One;

use crate::scalar::Scalar;

/// A child together with the weight of the edge leading to it.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedEdge<V, W> {
    pub child: V,
    pub weight: W,
}

impl<V, W> WeightedEdge<V, W> {
    pub fn new(child: V, weight: W) -> Self {
        WeightedEdge { child, weight }
    }
}

pub trait DiagramModel: Send + Sync {
    type Vertex: Clone + Eq + Hash + Ord + Debug + Display + Send + Sync;
    type Weight: Scalar;

    fn name(&self) -> String;
    fn root(&self) -> Self::Vertex;
    fn level(&self, v: &Self::Vertex) -> usize;

    /// Children of `v` in the model's documented, deterministic order.
    /// Every weight must be strictly positive.
    fn children(&self, v: &Self::Vertex) -> Vec<WeightedEdge<Self::Vertex, Self::Weight>>;

    fn out_degree(&self, v: &Self::Vertex) -> usize {
        self.children(v).len()
    }

    /// Cheap necessary condition for `to` to be reachable from `from`.
    /// Used only for pruning; the default never prunes.
    fn may_reach(&self, _from: &Self::Vertex, _to: &Self::Vertex) -> bool {
        true
    }
}

impl<M: DiagramModel + ?Sized> DiagramModel for &M {
    type Vertex = M::Vertex;
    type Weight = M::Weight;

    fn name(&self) -> String {
        (**self).name()
    }
    fn root(&self) -> Self::Vertex {
        (**self).root()
    }
    fn level(&self, v: &Self::Vertex) -> usize {
        (**self).level(v)
    }
    fn children(&self, v: &Self::Vertex) -> Vec<WeightedEdge<Self::Vertex, Self::Weight>> {
        (**self).children(v)
    }
    fn out_degree(&self, v: &Self::Vertex) -> usize {
        (**self).out_degree(v)
    }
    fn may_reach(&self, from: &Self::Vertex, to: &Self::Vertex) -> bool {
        (**self).may_reach(from, to)
    }
}

/// The same diagram with weights converted to binary64.
#[derive(Debug, Clone)]
pub struct FloatView<M>(pub M);

impl<M: DiagramModel> DiagramModel for FloatView<M> {
    type Vertex = M::Vertex;
    type Weight = f64;

    fn name(&self) -> String {
        format!("{} (float)", self.0.name())
    }
    fn root(&self) -> Self::Vertex {
        self.0.root()
    }
    fn level(&self, v: &Self::Vertex) -> usize {
        self.0.level(v)
    }
    fn children(&self, v: &Self::Vertex) -> Vec<WeightedEdge<Self::Vertex, f64>> {
        self.0
            .children(v)
            .into_iter()
            .map(|e| WeightedEdge::new(e.child, e.weight.to_f64()))
            .collect()
    }
    fn out_degree(&self, v: &Self::Vertex) -> usize {
        self.0.out_degree(v)
    }
    fn may_reach(&self, from: &Self::Vertex, to: &Self::Vertex) -> bool {
        self.0.may_reach(from, to)
    }
}

/// Product of edge weights along a vertex sequence; `None` if two
/// consecutive vertices are not joined by an edge.
pub fn path_weight<M: DiagramModel>(model: &M, path: &[M::Vertex]) -> Option<M::Weight> {
    let mut acc = M::Weight::one();
    for pair in path.windows(2) {
        let edge = model
            .children(&pair[0])
            .into_iter()
            .find(|e| e.child == pair[1])?;
        acc = acc * edge.weight;
    }
    Some(acc)
}
