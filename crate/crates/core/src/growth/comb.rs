//! The aggregation (comb) model: boxes join existing groups or open a new
//! one to the right. Paths from the root of length `n - 1` are the set
//! partitions of `{1, ..., n}`.

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;
use statrs::function::gamma::ln_gamma;

use crate::chain::{CentralKernel, HarmonicFn};
use crate::diagram::{forward_level, DiagramModel, WeightedEdge};
use crate::error::{Error, Result};
use crate::scalar::{Exact, Scalar};

/// Group sizes `(x_1, ..., x_k)` in creation order; level is `size - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::Invalid(format!("{parts:?} is not a composition")));
        }
        Ok(Composition(parts))
    }

    pub fn unit() -> Self {
        Composition(vec![1])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn groups(&self) -> usize {
        self.0.len()
    }

    /// Parts sorted in decreasing order.
    pub fn sorted(&self) -> Vec<u32> {
        let mut v = self.0.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Unweighted comb model. Children of `x`: `x + e_1, ..., x + e_k`, then
/// `(x, 1)`.
#[derive(Debug, Clone, Default)]
pub struct CombModel<S = Exact> {
    max_groups: Option<usize>,
    _marker: PhantomData<fn() -> S>,
}

impl<S: Scalar> CombModel<S> {
    pub fn new() -> Self {
        CombModel {
            max_groups: None,
            _marker: PhantomData,
        }
    }

    /// Variant in which at most `n` groups may exist.
    pub fn bounded(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::param("need at least one group"));
        }
        Ok(CombModel {
            max_groups: Some(n),
            _marker: PhantomData,
        })
    }

    pub fn max_groups(&self) -> Option<usize> {
        self.max_groups
    }
}

pub fn comb_model() -> CombModel<Exact> {
    CombModel::new()
}

impl<S: Scalar> DiagramModel for CombModel<S> {
    type Vertex = Composition;
    type Weight = S;

    fn name(&self) -> String {
        match self.max_groups {
            None => "comb".into(),
            Some(n) => format!("comb (at most {n} groups)"),
        }
    }
    fn root(&self) -> Composition {
        Composition::unit()
    }
    fn level(&self, v: &Composition) -> usize {
        v.size() as usize - 1
    }
    fn children(&self, v: &Composition) -> Vec<WeightedEdge<Composition, S>> {
        let mut out = Vec::with_capacity(v.0.len() + 1);
        for i in 0..v.0.len() {
            let mut p = v.0.clone();
            p[i] += 1;
            out.push(WeightedEdge::new(Composition(p), S::one()));
        }
        if self.max_groups.map_or(true, |n| v.0.len() < n) {
            let mut p = v.0.clone();
            p.push(1);
            out.push(WeightedEdge::new(Composition(p), S::one()));
        }
        out
    }
    fn out_degree(&self, v: &Composition) -> usize {
        v.0.len() + usize::from(self.max_groups.map_or(true, |n| v.0.len() < n))
    }
    fn may_reach(&self, from: &Composition, to: &Composition) -> bool {
        from.0.len() <= to.0.len() && from.0.iter().zip(&to.0).all(|(a, b)| a <= b)
    }
}

/// Extremal harmonic function of the comb:
/// `phi(x) = prod theta_i^(x_i - 1) prod_{k=1}^{l-1} (1 - theta_1 - ... - theta_k)`.
/// Entries of `theta` beyond its length are zero.
#[derive(Debug, Clone)]
pub struct CombHarmonic<S> {
    theta: Vec<S>,
}

impl<S: Scalar> CombHarmonic<S> {
    pub fn new(theta: Vec<S>) -> Result<Self> {
        let mut sum = S::zero();
        for t in &theta {
            if *t < S::zero() {
                return Err(Error::param("theta must be non-negative"));
            }
            sum = sum + t.clone();
        }
        if sum > S::one() {
            return Err(Error::param("theta must sum to at most 1"));
        }
        Ok(CombHarmonic { theta })
    }

    fn theta(&self, i: usize) -> S {
        self.theta.get(i).cloned().unwrap_or_else(S::zero)
    }
}

impl<S: Scalar> HarmonicFn<Composition> for CombHarmonic<S> {
    type Value = S;

    fn eval(&self, x: &Composition) -> S {
        let mut value = S::one();
        let mut partial = S::zero();
        for (i, &xi) in x.0.iter().enumerate() {
            if i > 0 {
                value = value * (S::one() - partial.clone());
            }
            value = value * self.theta(i).pow(xi - 1);
            partial = partial + self.theta(i);
        }
        value
    }

    fn description(&self) -> String {
        "prod theta_i^(x_i-1) prod (1 - theta_1 - ... - theta_k)".into()
    }
}

/// Central chain joining group `i` with probability `theta_i` and opening
/// a new group with probability `1 - sum_{j <= k} theta_j`.
pub fn comb_kernel<S: Scalar>(theta: Vec<S>) -> Result<CentralKernel<CombModel<S>, CombHarmonic<S>>> {
    CentralKernel::new(CombModel::new(), CombHarmonic::new(theta)?)
}

/// MERW of the variant limited to `n` groups: `theta_k = 1/n` for `k <= n`.
pub fn bounded_comb_kernel<S: Scalar>(
    n: usize,
) -> Result<CentralKernel<CombModel<S>, CombHarmonic<S>>> {
    let theta = vec![S::one() / S::from_u64(n as u64); n];
    CentralKernel::new(CombModel::bounded(n)?, CombHarmonic::new(theta)?)
}

/// `d(root, X_{n-1})` on the comb, i.e. the Bell number `B_n` (`n >= 1`).
pub fn bell_from_diagram(n: usize, budget: usize) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::param("the comb starts at one box"));
    }
    let model = comb_model();
    let layer = forward_level(&model, &model.root(), n - 1, None, budget)?;
    Ok(layer.values().map(|d| d.to_integer().to_biguint().expect("counts are non-negative")).sum())
}

/// `S(n, k)` for `k = 1..=n` from diagram counts grouped by the number of
/// groups of the endpoint.
pub fn stirling_from_diagram(n: usize, budget: usize) -> Result<Vec<BigUint>> {
    if n == 0 {
        return Err(Error::param("the comb starts at one box"));
    }
    let model = comb_model();
    let layer = forward_level(&model, &model.root(), n - 1, None, budget)?;
    let mut by_k: BTreeMap<usize, BigUint> = BTreeMap::new();
    for (x, d) in layer {
        *by_k.entry(x.groups()).or_default() +=
            d.to_integer().to_biguint().expect("counts are non-negative");
    }
    Ok((1..=n).map(|k| by_k.remove(&k).unwrap_or_default()).collect())
}

/// `sum_k S(n, k) X (X - 1) ... (X - k + 1) - X^n`.
pub fn stirling_identity_residual(n: usize, x: &Exact, budget: usize) -> Result<Exact> {
    let s = stirling_from_diagram(n, budget)?;
    let mut total = Exact::zero();
    let mut falling = Exact::one();
    for (k, snk) in s.iter().enumerate() {
        falling = falling * (x - Exact::from_u64(k as u64));
        total = total + Exact::from_big(snk) * &falling;
    }
    Ok(total - Scalar::pow(x, n as u32))
}

/// Annealed harmonic function of the Chinese restaurant process with
/// parameter `gamma`:
/// `phi(x) = gamma^k prod_i B(x_i, x_{i+1} + ... + x_k + gamma)`.
///
/// Since every `x_i` is an integer the beta values are rational whenever
/// `gamma` is; they are evaluated as `(x_i - 1)! / (b)^(x_i rising)`.
#[derive(Debug, Clone)]
pub struct CrpHarmonic<S> {
    gamma: S,
}

impl<S: Scalar> CrpHarmonic<S> {
    pub fn new(gamma: S) -> Result<Self> {
        if gamma <= S::zero() {
            return Err(Error::param("gamma must be positive"));
        }
        Ok(CrpHarmonic { gamma })
    }
}

impl<S: Scalar> HarmonicFn<Composition> for CrpHarmonic<S> {
    type Value = S;

    fn eval(&self, x: &Composition) -> S {
        let mut value = self.gamma.pow(x.0.len() as u32);
        let mut tail = self.gamma.clone();
        for &xi in x.0.iter().rev() {
            // B(xi, tail) = (xi - 1)! / (tail (tail + 1) ... (tail + xi - 1))
            for m in 0..xi {
                if m > 0 {
                    value = value * S::from_u64(m as u64);
                }
                value = value / (tail.clone() + S::from_u64(m as u64));
            }
            tail = tail + S::from_u64(xi as u64);
        }
        value
    }

    fn description(&self) -> String {
        "gamma^k prod B(x_i, x_{i+1}+...+x_k+gamma)".into()
    }
}

/// The same function through log-gamma, for real `gamma`.
#[derive(Debug, Clone, Copy)]
pub struct CrpLogGamma {
    gamma: f64,
}

impl CrpLogGamma {
    pub fn new(gamma: f64) -> Result<Self> {
        if !(gamma > 0.0) {
            return Err(Error::param("gamma must be positive"));
        }
        Ok(CrpLogGamma { gamma })
    }

    pub fn ln_eval(&self, x: &Composition) -> f64 {
        let g = self.gamma;
        let mut acc = x.0.len() as f64 * g.ln();
        let mut tail = g;
        for &xi in x.0.iter().rev() {
            let a = xi as f64;
            acc += ln_gamma(a) + ln_gamma(tail) - ln_gamma(a + tail);
            tail += a;
        }
        acc
    }
}

impl HarmonicFn<Composition> for CrpLogGamma {
    type Value = f64;

    fn eval(&self, x: &Composition) -> f64 {
        self.ln_eval(x).exp()
    }

    fn description(&self) -> String {
        "gamma^k prod B(x_i, ...) via log-gamma".into()
    }
}

/// Chinese restaurant process: join group `i` with probability
/// `x_i / (n + gamma)`, open a new one with probability `gamma / (n + gamma)`.
pub fn crp_kernel<S: Scalar>(gamma: S) -> Result<CentralKernel<CombModel<S>, CrpHarmonic<S>>> {
    CentralKernel::new(CombModel::new(), CrpHarmonic::new(gamma)?)
}

/// Closed-form CRP row for `x`.
pub fn crp_transitions<S: Scalar>(gamma: &S, x: &Composition) -> Vec<(Composition, S)> {
    let n = S::from_u64(x.size() as u64);
    let denom = n + gamma.clone();
    let mut out = Vec::new();
    for i in 0..x.0.len() {
        let mut p = x.0.clone();
        p[i] += 1;
        out.push((Composition(p), S::from_u64(x.0[i] as u64) / denom.clone()));
    }
    let mut p = x.0.clone();
    p.push(1);
    out.push((Composition(p), gamma.clone() / denom));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::MarkovKernel;

    #[test]
    fn crp_from_two() {
        let k = crp_kernel(Exact::one()).unwrap();
        let row = k.transitions(&Composition::new(vec![2]).unwrap()).unwrap();
        assert_eq!(row[0].1, Exact::ratio(2, 3));
        assert_eq!(row[1].1, Exact::ratio(1, 3));
    }

    #[test]
    fn zero_theta_always_opens_groups() {
        let k = comb_kernel(Vec::<Exact>::new()).unwrap();
        let row = k.transitions(&Composition::new(vec![1, 1]).unwrap()).unwrap();
        assert_eq!(row.len(), 1);
        assert_eq!(row[0].0.parts(), &[1, 1, 1]);
    }

    #[test]
    fn stirling_small() {
        let s = stirling_from_diagram(3, 1000).unwrap();
        assert_eq!(s, vec![1u32.into(), 3u32.into(), 1u32.into()]);
        let r = stirling_identity_residual(3, &Exact::from_u64(2), 1000).unwrap();
        assert!(r.is_zero());
    }
}
