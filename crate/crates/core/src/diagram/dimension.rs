use std::collections::{BTreeMap, HashMap};
use std::sync::RwLock;

use num_traits::{One, Zero};

use super::DiagramModel;
use crate::error::{Error, Result};

/// Default number of memo entries before counting gives up.
pub const DEFAULT_BUDGET: usize = 10_000_000;

/// Memo budget, overridable through the `MERW_BUDGET` environment variable.
pub fn default_budget() -> usize {
    std::env::var("MERW_BUDGET")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

/// Memoized combinatorial dimensions `d(x, X_n)` for one model.
///
/// Entries are keyed by `(vertex, n - level(vertex))`, so a single table
/// serves every horizon. The table is safe to share between threads; two
/// threads racing on the same key compute the same value.
pub struct Dimensions<'m, M: DiagramModel> {
    model: &'m M,
    memo: RwLock<HashMap<(M::Vertex, usize), M::Weight>>,
    budget: usize,
}

impl<'m, M: DiagramModel> Dimensions<'m, M> {
    pub fn new(model: &'m M) -> Self {
        Self::with_budget(model, default_budget())
    }

    pub fn with_budget(model: &'m M, budget: usize) -> Self {
        Dimensions {
            model,
            memo: RwLock::new(HashMap::new()),
            budget,
        }
    }

    pub fn model(&self) -> &'m M {
        self.model
    }

    pub fn memo_len(&self) -> usize {
        self.memo.read().unwrap().len()
    }

    /// `d(x, X_n)`: total weight of all paths from `x` down to level `n`.
    pub fn to_level(&self, x: &M::Vertex, n: usize) -> Result<M::Weight> {
        let lx = self.model.level(x);
        if lx > n {
            return Err(Error::LevelMismatch {
                expected: n,
                found: lx,
            });
        }
        if lx == n {
            return Ok(M::Weight::one());
        }
        let key = (x.clone(), n - lx);
        if let Some(v) = self.memo.read().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let mut acc = M::Weight::zero();
        for e in self.model.children(x) {
            acc = acc + e.weight * self.to_level(&e.child, n)?;
        }
        if acc.is_zero() {
            return Err(Error::DeadEnd(x.to_string()));
        }
        let mut memo = self.memo.write().unwrap();
        if memo.len() >= self.budget {
            return Err(Error::budget("counting paths", self.budget));
        }
        memo.insert(key, acc.clone());
        Ok(acc)
    }

    /// `d(x, z)`: total weight of all paths from `x` to `z` (0 if none).
    pub fn to_vertex(&self, x: &M::Vertex, z: &M::Vertex) -> Result<M::Weight> {
        let target = self.model.level(z);
        if self.model.level(x) > target {
            return Ok(M::Weight::zero());
        }
        let layer = forward_level(self.model, x, target, Some(z), self.budget)?;
        Ok(layer.get(z).cloned().unwrap_or_else(M::Weight::zero))
    }
}

/// Forward sweep from `x`: returns `d(x, y)` for every `y` at level `n`
/// reachable from `x`. With `toward = Some(z)` the sweep keeps only
/// vertices that may still reach `z`.
pub fn forward_level<M: DiagramModel>(
    model: &M,
    x: &M::Vertex,
    n: usize,
    toward: Option<&M::Vertex>,
    budget: usize,
) -> Result<BTreeMap<M::Vertex, M::Weight>> {
    let lx = model.level(x);
    if lx > n {
        return Err(Error::LevelMismatch {
            expected: n,
            found: lx,
        });
    }
    let mut layer = BTreeMap::new();
    layer.insert(x.clone(), M::Weight::one());
    for _ in lx..n {
        let mut next: BTreeMap<M::Vertex, M::Weight> = BTreeMap::new();
        for (v, dv) in &layer {
            for e in model.children(v) {
                if let Some(z) = toward {
                    if !model.may_reach(&e.child, z) {
                        continue;
                    }
                }
                let add = dv.clone() * e.weight;
                match next.get_mut(&e.child) {
                    Some(slot) => *slot = slot.clone() + add,
                    None => {
                        next.insert(e.child, add);
                    }
                }
            }
            if next.len() > budget {
                return Err(Error::budget("sweeping a level set", budget));
            }
        }
        layer = next;
    }
    Ok(layer)
}

/// One row of the finite-horizon kernel `p_n` together with `phi_n(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HorizonRow<V, W> {
    pub transitions: Vec<(V, W)>,
    pub phi_n: W,
}

/// `p_n(x, y) = w(x,y) d(y, X_n) / d(x, X_n)` over the children of `x`
/// with a continuation, and `phi_n(x) = d(x, X_n) / d(root, X_n)`.
pub fn finite_horizon_kernel<M: DiagramModel>(
    dims: &Dimensions<'_, M>,
    x: &M::Vertex,
    n: usize,
) -> Result<HorizonRow<M::Vertex, M::Weight>> {
    let model = dims.model();
    let lx = model.level(x);
    if lx >= n {
        return Err(Error::LevelMismatch {
            expected: n.saturating_sub(1),
            found: lx,
        });
    }
    let total = dims.to_level(x, n)?;
    let mut transitions = Vec::new();
    for e in model.children(x) {
        let dy = dims.to_level(&e.child, n)?;
        if dy.is_zero() {
            continue;
        }
        transitions.push((e.child, e.weight * dy / total.clone()));
    }
    let phi_n = total / dims.to_level(&model.root(), n)?;
    Ok(HorizonRow { transitions, phi_n })
}

/// `m_n(y) = d(root, y) / d(root, X_n)`.
pub fn gelfand_marginal<M: DiagramModel>(
    dims: &Dimensions<'_, M>,
    n: usize,
    y: &M::Vertex,
) -> Result<M::Weight> {
    let model = dims.model();
    let ly = model.level(y);
    if ly != n {
        return Err(Error::LevelMismatch {
            expected: n,
            found: ly,
        });
    }
    let root = model.root();
    Ok(dims.to_vertex(&root, y)? / dims.to_level(&root, n)?)
}

/// Gelfand mass of a set of level-`n` vertices given by a predicate.
pub fn gelfand_mass<M: DiagramModel>(
    model: &M,
    n: usize,
    budget: usize,
    mut member: impl FnMut(&M::Vertex) -> bool,
) -> Result<M::Weight> {
    let layer = forward_level(model, &model.root(), n, None, budget)?;
    let mut total = M::Weight::zero();
    let mut part = M::Weight::zero();
    for (v, d) in layer {
        if member(&v) {
            part = part + d.clone();
        }
        total = total + d;
    }
    Ok(part / total)
}

/// Martin kernel `K(x, z) = d(x, z) / d(root, z)`.
pub fn martin_kernel<M: DiagramModel>(
    dims: &Dimensions<'_, M>,
    x: &M::Vertex,
    z: &M::Vertex,
) -> Result<M::Weight> {
    let root = dims.model().root();
    let dz = dims.to_vertex(&root, z)?;
    if dz.is_zero() {
        return Err(Error::Unreachable(z.to_string()));
    }
    Ok(dims.to_vertex(x, z)? / dz)
}
