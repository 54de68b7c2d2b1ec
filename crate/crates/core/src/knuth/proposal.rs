use serde::{Deserialize, Serialize};

use crate::diagram::{DiagramModel, Dimensions, WeightedEdge};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Exponents of the out-degree proposal along a trajectory of `depth`
/// transitions.
///
/// In terms of the size `i` of the current state, `gamma(1) = 2.5`, then
/// linear down to `gamma(depth - 2) = 1`, and `gamma(depth - 1) = 0`.
/// Transition `t` (0-based) uses `gamma(max(t, 1))`, and the final
/// transition is uniform. Below depth 4 the linear part is undefined:
/// every transition uses 1 except the last, which uses 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GammaSchedule {
    depth: usize,
    values: Vec<f64>,
}

impl GammaSchedule {
    pub fn new(depth: usize) -> Self {
        let values = (0..depth).map(|t| scheduled_gamma(t, depth)).collect();
        GammaSchedule { depth, values }
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Exponent of every transition, in order.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn at_step(&self, step: usize) -> f64 {
        self.values.get(step).copied().unwrap_or(0.0)
    }
}

fn scheduled_gamma(step: usize, depth: usize) -> f64 {
    let i = step.max(1);
    if step + 1 >= depth {
        0.0
    } else if depth < 4 {
        1.0
    } else {
        2.5 - 1.5 * (i - 1) as f64 / (depth - 3) as f64
    }
}

/// Exponent rule of [`OutDegreePower`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum GammaSpec {
    /// [`GammaSchedule`] built for the trajectory depth.
    Scheduled,
    Constant(f64),
    /// Exponent of transition `t` is entry `t`; 0 past the end.
    PerStep(Vec<f64>),
}

impl GammaSpec {
    pub fn at(&self, step: usize, depth: usize) -> f64 {
        match self {
            GammaSpec::Scheduled => scheduled_gamma(step, depth),
            GammaSpec::Constant(g) => *g,
            GammaSpec::PerStep(v) => v.get(step).copied().unwrap_or(0.0),
        }
    }
}

/// Proposal kernel `q` of the estimator.
pub trait ProposalKernel<M: DiagramModel>: Sync {
    fn name(&self) -> String;

    /// Probabilities over `children` (in order) of `x`, for transition
    /// `step` of a trajectory of `depth` transitions. They must sum to 1.
    fn probabilities(
        &self,
        model: &M,
        x: &M::Vertex,
        children: &[WeightedEdge<M::Vertex, M::Weight>],
        step: usize,
        depth: usize,
    ) -> Result<Vec<M::Weight>>;
}

fn normalize<S: Scalar>(raw: Vec<S>) -> Vec<S> {
    let total = raw.iter().fold(S::zero(), |a, b| a + b.clone());
    raw.into_iter().map(|v| v / total.clone()).collect()
}

/// Generic random walk (RW0): proportional to edge weights, uniform on
/// unweighted diagrams.
#[derive(Debug, Clone, Copy, Default)]
pub struct Grw;

impl<M: DiagramModel> ProposalKernel<M> for Grw {
    fn name(&self) -> String {
        "RW0".into()
    }

    fn probabilities(
        &self,
        _model: &M,
        _x: &M::Vertex,
        children: &[WeightedEdge<M::Vertex, M::Weight>],
        _step: usize,
        _depth: usize,
    ) -> Result<Vec<M::Weight>> {
        Ok(normalize(children.iter().map(|e| e.weight.clone()).collect()))
    }
}

/// RW1: proportional to `w(x, y) K(y)^gamma`, where `K(y)` is the number
/// of children of `y`.
#[derive(Debug, Clone, PartialEq)]
pub struct OutDegreePower {
    pub gamma: GammaSpec,
}

impl OutDegreePower {
    pub fn scheduled() -> Self {
        OutDegreePower {
            gamma: GammaSpec::Scheduled,
        }
    }

    pub fn constant(gamma: f64) -> Self {
        OutDegreePower {
            gamma: GammaSpec::Constant(gamma),
        }
    }
}

/// `k^gamma`, shared with the specialized samplers so both produce the
/// same floating-point values.
pub(crate) fn degree_power(k: usize, gamma: f64) -> f64 {
    if gamma == 0.0 {
        1.0
    } else {
        (k as f64).powf(gamma)
    }
}

impl<M: DiagramModel> ProposalKernel<M> for OutDegreePower {
    fn name(&self) -> String {
        match self.gamma {
            GammaSpec::Scheduled => "RW1".into(),
            GammaSpec::Constant(g) => format!("out-degree^{g}"),
            GammaSpec::PerStep(_) => "out-degree^gamma(t)".into(),
        }
    }

    fn probabilities(
        &self,
        model: &M,
        _x: &M::Vertex,
        children: &[WeightedEdge<M::Vertex, M::Weight>],
        step: usize,
        depth: usize,
    ) -> Result<Vec<M::Weight>> {
        let gamma = self.gamma.at(step, depth);
        Ok(normalize(
            children
                .iter()
                .map(|e| {
                    let k = degree_power(model.out_degree(&e.child), gamma);
                    e.weight.clone() * M::Weight::from_f64(k)
                })
                .collect(),
        ))
    }
}

/// The exact finite-horizon kernel toward level `level(start) + depth`.
/// With it every trajectory has the same cost.
pub struct FiniteHorizon<'d, 'm, M: DiagramModel> {
    dims: &'d Dimensions<'m, M>,
}

impl<'d, 'm, M: DiagramModel> FiniteHorizon<'d, 'm, M> {
    pub fn new(dims: &'d Dimensions<'m, M>) -> Self {
        FiniteHorizon { dims }
    }
}

impl<M: DiagramModel> ProposalKernel<M> for FiniteHorizon<'_, '_, M> {
    fn name(&self) -> String {
        "finite horizon".into()
    }

    fn probabilities(
        &self,
        model: &M,
        x: &M::Vertex,
        children: &[WeightedEdge<M::Vertex, M::Weight>],
        step: usize,
        depth: usize,
    ) -> Result<Vec<M::Weight>> {
        let horizon = model.level(x) + depth - step;
        let total = self.dims.to_level(x, horizon)?;
        children
            .iter()
            .map(|e| Ok(e.weight.clone() * self.dims.to_level(&e.child, horizon)? / total.clone()))
            .collect()
    }
}

/// Rejects proposals that leave a child unreachable.
pub(crate) fn check_support<V: std::fmt::Display, S: Scalar>(
    children: &[WeightedEdge<V, S>],
    q: &[S],
) -> Result<()> {
    if q.len() != children.len() {
        return Err(Error::Invalid("proposal row has the wrong length".into()));
    }
    match q.iter().position(|p| p.is_zero() || *p < S::zero()) {
        Some(i) => Err(Error::ZeroProposal(children[i].child.to_string())),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schedule_endpoints() {
        let s = GammaSchedule::new(10);
        assert_eq!(s.values().len(), 10);
        assert_eq!(&s.values()[..2], &[2.5, 2.5]);
        assert!((s.values()[8] - 1.0).abs() < 1e-15);
        assert_eq!(s.values()[9], 0.0);
        assert_eq!(GammaSchedule::new(3).values(), &[1.0, 1.0, 0.0]);
        assert_eq!(GammaSchedule::new(2).values(), &[1.0, 0.0]);
        assert_eq!(GammaSchedule::new(1).values(), &[0.0]);
    }
}
