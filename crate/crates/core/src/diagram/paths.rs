use num_traits::One;

use super::{DiagramModel, WeightedEdge};
use crate::error::{Error, Result};

struct Frame<V, W> {
    edges: Vec<WeightedEdge<V, W>>,
    next: usize,
}

/// Depth-first stream of every path from a vertex down to a fixed level,
/// in child order, each with its weight `w_s`.
pub struct PathIter<'m, M: DiagramModel> {
    model: &'m M,
    target: usize,
    endpoint: Option<M::Vertex>,
    stack: Vec<Frame<M::Vertex, M::Weight>>,
    path: Vec<M::Vertex>,
    weights: Vec<M::Weight>,
    pending_trivial: bool,
}

impl<'m, M: DiagramModel> PathIter<'m, M> {
    pub fn new(model: &'m M, x: M::Vertex, n: usize) -> Self {
        Self::build(model, x, n, None)
    }

    fn build(model: &'m M, x: M::Vertex, n: usize, endpoint: Option<M::Vertex>) -> Self {
        let lx = model.level(&x);
        let mut it = PathIter {
            model,
            target: n,
            endpoint,
            stack: Vec::new(),
            path: vec![x.clone()],
            weights: vec![M::Weight::one()],
            pending_trivial: false,
        };
        if lx == n {
            it.pending_trivial = it.endpoint.as_ref().map_or(true, |z| *z == x);
        } else if lx < n && it.keep(&x) {
            let edges = it.children(&x);
            it.stack.push(Frame { edges, next: 0 });
        }
        it
    }

    fn keep(&self, v: &M::Vertex) -> bool {
        match &self.endpoint {
            Some(z) => self.model.may_reach(v, z),
            None => true,
        }
    }

    fn children(&self, v: &M::Vertex) -> Vec<WeightedEdge<M::Vertex, M::Weight>> {
        let mut edges = self.model.children(v);
        if self.endpoint.is_some() {
            edges.retain(|e| self.keep(&e.child));
        }
        edges
    }
}

impl<'m, M: DiagramModel> Iterator for PathIter<'m, M> {
    type Item = (Vec<M::Vertex>, M::Weight);

    fn next(&mut self) -> Option<Self::Item> {
        if self.pending_trivial {
            self.pending_trivial = false;
            return Some((self.path.clone(), M::Weight::one()));
        }
        loop {
            let top = self.stack.last_mut()?;
            if top.next == top.edges.len() {
                self.stack.pop();
                self.path.pop();
                self.weights.pop();
                continue;
            }
            let edge = top.edges[top.next].clone();
            top.next += 1;
            let w = self.weights.last().unwrap().clone() * edge.weight;
            if self.model.level(&edge.child) == self.target {
                if let Some(z) = &self.endpoint {
                    if edge.child != *z {
                        continue;
                    }
                }
                let mut out = self.path.clone();
                out.push(edge.child);
                return Some((out, w));
            }
            let edges = self.children(&edge.child);
            self.path.push(edge.child);
            self.weights.push(w);
            self.stack.push(Frame { edges, next: 0 });
        }
    }
}

/// All paths from `x` to `z`, pruned with the model's reachability test.
pub fn paths_between<'m, M: DiagramModel>(
    model: &'m M,
    x: M::Vertex,
    z: M::Vertex,
) -> PathIter<'m, M> {
    let n = model.level(&z);
    PathIter::build(model, x, n, Some(z))
}

/// Collects a path stream, failing once more than `limit` paths appear.
pub fn collect_paths<M: DiagramModel>(
    iter: PathIter<'_, M>,
    limit: usize,
) -> Result<Vec<(Vec<M::Vertex>, M::Weight)>> {
    let mut out = Vec::new();
    for item in iter {
        if out.len() == limit {
            return Err(Error::budget("enumerating paths", limit));
        }
        out.push(item);
    }
    Ok(out)
}
