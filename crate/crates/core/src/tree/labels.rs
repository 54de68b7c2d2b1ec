use std::collections::BTreeMap;

use rand::Rng as _;

use super::model::PreferentialWeights;
use super::prefix::{show_node, Node, PrefixTree};
use crate::chain::HarmonicFn;
use crate::error::{Error, Result};
use crate::rng::Rng;
use crate::scalar::{Exact, Scalar};

/// Mass labels `alpha_i` on the complete `d`-ary tree down to a fixed depth,
/// with `alpha_root = 1` and `alpha_i = sum_j alpha_ij`.
///
/// `alpha_i` is the asymptotic share of descendants of `i` along a path of
/// the associated extremal chain; `alpha_ij / alpha_i` is the fragmentation
/// law at `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct LabelField<S> {
    d: u8,
    depth: usize,
    values: BTreeMap<Node, S>,
}

impl<S: Scalar> LabelField<S> {
    /// Builds the field from per-node fragmentation vectors. `split(i)` must
    /// return `d` non-negative numbers summing to 1.
    pub fn from_fragmentation(
        d: u8,
        depth: usize,
        mut split: impl FnMut(&[u8]) -> Vec<S>,
    ) -> Result<Self> {
        let mut values = BTreeMap::new();
        values.insert(Vec::new(), S::one());
        let mut frontier = vec![Vec::new()];
        for _ in 0..depth {
            let mut next = Vec::new();
            for v in frontier {
                let nu = split(&v);
                if nu.len() != d as usize {
                    return Err(Error::param("fragmentation vector has the wrong arity"));
                }
                let alpha = values[&v].clone();
                for (j, p) in nu.into_iter().enumerate() {
                    if p < S::zero() {
                        return Err(Error::param("negative fragmentation weight"));
                    }
                    let c = PrefixTree::child(&v, j as u8 + 1);
                    values.insert(c.clone(), alpha.clone() * p);
                    next.push(c);
                }
            }
            frontier = next;
        }
        let field = LabelField { d, depth, values };
        field.validate()?;
        Ok(field)
    }

    /// `alpha_i = d^-|i|`, the uniform fragmentation.
    pub fn uniform(d: u8, depth: usize) -> Self {
        let share = S::one() / S::from_u64(d as u64);
        Self::from_fragmentation(d, depth, |_| vec![share.clone(); d as usize])
            .expect("uniform split is valid")
    }

    pub fn arity(&self) -> u8 {
        self.d
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn get(&self, node: &[u8]) -> Option<&S> {
        self.values.get(node)
    }

    /// Checks `alpha_root = 1` and mass conservation at every inner level.
    pub fn validate(&self) -> Result<()> {
        if self.values.get(&Vec::new()) != Some(&S::one()) {
            return Err(Error::Invalid("alpha at the root must be 1".into()));
        }
        for (v, a) in &self.values {
            if v.len() >= self.depth {
                continue;
            }
            let sum = (1..=self.d).fold(S::zero(), |acc, j| {
                acc + self.values[&PrefixTree::child(v, j)].clone()
            });
            if !S::negligible(&(sum - a.clone()), a, 1e-12) {
                return Err(Error::Invalid(format!(
                    "labels do not conserve mass at {}",
                    show_node(v)
                )));
            }
        }
        Ok(())
    }
}

impl LabelField<Exact> {
    /// Random rational fragmentation: each split is proportional to
    /// integers drawn from `1..=max_weight`, with a zero now and then so
    /// that skeletons smaller than the full tree also appear.
    pub fn random_rational(d: u8, depth: usize, max_weight: u64, rng: &mut Rng) -> Self {
        Self::from_fragmentation(d, depth, |_| {
            let mut raw: Vec<u64> = (0..d)
                .map(|_| {
                    if rng.gen_bool(0.15) {
                        0
                    } else {
                        rng.gen_range(1..=max_weight)
                    }
                })
                .collect();
            if raw.iter().all(|&r| r == 0) {
                raw[0] = 1;
            }
            let total: u64 = raw.iter().sum();
            raw.into_iter()
                .map(|r| Exact::ratio(r as i64, total as i64))
                .collect()
        })
        .expect("random split is valid")
    }
}

/// Extremal harmonic function attached to a label field.
///
/// Unweighted: `phi(tau) = prod_{i in tau} alpha_i`. With preferential
/// weights each internal node also contributes
/// `alpha_i / sum_j alpha_ij w_{i,ij}`.
#[derive(Debug, Clone)]
pub struct LabelHarmonic<S> {
    labels: LabelField<S>,
    weights: Option<PreferentialWeights<S>>,
}

pub fn label_harmonic<S: Scalar>(
    labels: LabelField<S>,
    weights: Option<PreferentialWeights<S>>,
) -> Result<LabelHarmonic<S>> {
    labels.validate()?;
    if let Some(w) = &weights {
        if w.arity() != labels.arity() {
            return Err(Error::param("weights and labels disagree on the arity"));
        }
    }
    Ok(LabelHarmonic { labels, weights })
}

impl<S: Scalar> LabelHarmonic<S> {
    pub fn labels(&self) -> &LabelField<S> {
        &self.labels
    }

    fn alpha(&self, node: &[u8]) -> S {
        self.labels.get(node).cloned().unwrap_or_else(|| {
            panic!(
                "node {} lies below the label depth {}",
                show_node(node),
                self.labels.depth()
            )
        })
    }
}

impl<S: Scalar> HarmonicFn<PrefixTree> for LabelHarmonic<S> {
    type Value = S;

    fn eval(&self, tau: &PrefixTree) -> S {
        let mut value = S::one();
        for v in tau.nodes() {
            let a = self.alpha(v);
            if a.is_zero() {
                return S::zero();
            }
            value = value * a;
        }
        if let Some(w) = &self.weights {
            for v in tau.internal() {
                let denom = (1..=self.labels.arity()).fold(S::zero(), |acc, j| {
                    acc + self.alpha(&PrefixTree::child(v, j)) * w.weight(v, j)
                });
                value = value * self.alpha(v) / denom;
            }
        }
        value
    }

    fn description(&self) -> String {
        match self.weights {
            None => "prod alpha_i".into(),
            Some(_) => "prod alpha_i * prod_int alpha_i / sum_j alpha_ij w_ij".into(),
        }
    }
}
