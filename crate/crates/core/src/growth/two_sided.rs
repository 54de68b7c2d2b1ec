//! The comb extended to both sides: a box may also open a new column to
//! the left of the current profile.

use std::marker::PhantomData;

use super::profile::Profile;
use crate::chain::{CentralKernel, HarmonicFn};
use crate::diagram::{DiagramModel, WeightedEdge};
use crate::error::{Error, Result};
use crate::scalar::{Exact, Scalar};

/// Profiles of arbitrary shape. Children: one extra box on each column from
/// left to right, then a new column on the left, then one on the right.
#[derive(Debug, Clone, Default)]
pub struct TwoSidedModel<S = Exact> {
    _marker: PhantomData<fn() -> S>,
}

impl<S: Scalar> TwoSidedModel<S> {
    pub fn new() -> Self {
        TwoSidedModel {
            _marker: PhantomData,
        }
    }
}

impl<S: Scalar> DiagramModel for TwoSidedModel<S> {
    type Vertex = Profile;
    type Weight = S;

    fn name(&self) -> String {
        "two-sided comb".into()
    }
    fn root(&self) -> Profile {
        Profile::single()
    }
    fn level(&self, v: &Profile) -> usize {
        v.size() as usize - 1
    }
    fn children(&self, v: &Profile) -> Vec<WeightedEdge<Profile, S>> {
        let mut out = Vec::with_capacity(v.heights.len() + 2);
        for k in 0..v.heights.len() {
            let mut h = v.heights.clone();
            h[k] += 1;
            out.push(WeightedEdge::new(Profile { offset: v.offset, heights: h }, S::one()));
        }
        let mut left = vec![1];
        left.extend_from_slice(&v.heights);
        out.push(WeightedEdge::new(Profile { offset: v.offset - 1, heights: left }, S::one()));
        let mut right = v.heights.clone();
        right.push(1);
        out.push(WeightedEdge::new(Profile { offset: v.offset, heights: right }, S::one()));
        out
    }
    fn out_degree(&self, v: &Profile) -> usize {
        v.heights.len() + 2
    }
    fn may_reach(&self, from: &Profile, to: &Profile) -> bool {
        from.columns().all(|c| from.height_at(c) <= to.height_at(c))
    }
}

/// Boundary point `(theta, alpha, beta)`: `theta_0` for the first column,
/// `right[k-1] = theta_k` and `left[k-1] = theta_{-k}` for `k >= 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoSidedParams<S> {
    pub theta0: S,
    pub right: Vec<S>,
    pub left: Vec<S>,
    pub alpha: S,
    pub beta: S,
}

impl<S: Scalar> TwoSidedParams<S> {
    pub fn new(theta0: S, right: Vec<S>, left: Vec<S>, alpha: S, beta: S) -> Result<Self> {
        let nonneg = |v: &S| *v >= S::zero();
        if !(nonneg(&theta0) && nonneg(&alpha) && nonneg(&beta))
            || !right.iter().chain(&left).all(nonneg)
        {
            return Err(Error::param("parameters must be non-negative"));
        }
        let sum = |v: &[S]| v.iter().fold(S::zero(), |a, b| a + b.clone());
        if sum(&right) > alpha || sum(&left) > beta {
            return Err(Error::param("side frequencies exceed their side mass"));
        }
        let total = theta0.clone() + alpha.clone() + beta.clone();
        if !S::negligible(&(total - S::one()), &S::one(), 1e-12) {
            return Err(Error::param("alpha + beta + theta_0 must equal 1"));
        }
        Ok(TwoSidedParams { theta0, right, left, alpha, beta })
    }

    /// `theta == 0`, `alpha = beta = 1/2`.
    pub fn merw() -> Self {
        let half = S::one() / S::from_u64(2);
        TwoSidedParams {
            theta0: S::zero(),
            right: Vec::new(),
            left: Vec::new(),
            alpha: half.clone(),
            beta: half,
        }
    }

    fn theta(&self, column: i32) -> S {
        let get = |v: &[S], k: usize| v.get(k - 1).cloned().unwrap_or_else(S::zero);
        match column {
            0 => self.theta0.clone(),
            c if c > 0 => get(&self.right, c as usize),
            c => get(&self.left, (-c) as usize),
        }
    }
}

/// `phi(x) = prod_k theta_k^(x_k - 1)
///   prod_{m=0}^{q-1} (alpha - theta_1 - ... - theta_m)
///   prod_{m=0}^{p-1} (beta - theta_{-1} - ... - theta_{-m})`
/// for a profile on columns `-p..=q`.
#[derive(Debug, Clone)]
pub struct TwoSidedHarmonic<S> {
    params: TwoSidedParams<S>,
}

impl<S: Scalar> HarmonicFn<Profile> for TwoSidedHarmonic<S> {
    type Value = S;

    fn eval(&self, x: &Profile) -> S {
        let p = &self.params;
        let mut value = S::one();
        for c in x.columns() {
            value = value * p.theta(c).pow(x.height_at(c) - 1);
        }
        let last = x.offset + x.heights.len() as i32 - 1;
        let mut mass = p.alpha.clone();
        for m in 0..last.max(0) {
            if m > 0 {
                mass = mass - p.theta(m);
            }
            value = value * mass.clone();
        }
        let mut mass = p.beta.clone();
        for m in 0..(-x.offset).max(0) {
            if m > 0 {
                mass = mass - p.theta(-m);
            }
            value = value * mass.clone();
        }
        value
    }

    fn description(&self) -> String {
        "two-sided comb extremal function".into()
    }
}

pub fn two_sided_kernel<S: Scalar>(
    params: TwoSidedParams<S>,
) -> Result<CentralKernel<TwoSidedModel<S>, TwoSidedHarmonic<S>>> {
    CentralKernel::new(TwoSidedModel::new(), TwoSidedHarmonic { params })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::MarkovKernel;

    #[test]
    fn merw_is_symmetric_walk() {
        let k = two_sided_kernel(TwoSidedParams::<Exact>::merw()).unwrap();
        let row = k.transitions(&Profile::single()).unwrap();
        assert_eq!(row.len(), 2);
        assert!(row.iter().all(|(_, p)| *p == Exact::ratio(1, 2)));
    }
}
