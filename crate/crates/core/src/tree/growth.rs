//! Fast samplers for tree growth chains, for runs far beyond what the
//! generic kernel (which re-derives rows from the harmonic function) can
//! handle. Trees are stored as an arena with subtree sizes.

use rand::Rng as _;

use crate::error::{Error, Result};
use crate::rng::{stream, Rng};

/// Growth rule of a fast sampler.
#[derive(Debug, Clone, PartialEq)]
pub enum GrowthRule {
    /// `d`-ary search tree: every empty slot equally likely.
    Bst { d: u8 },
    /// Preferential binary tree with first-child weights `(x, y)`.
    WeightedBinary { x: f64, y: f64 },
    /// Annealed Dirichlet(`a`) environment: a walk from the root that goes
    /// to child `j` with probability `(a_j + n_j) / (A + n)`.
    Idla { a: Vec<f64> },
}

impl GrowthRule {
    pub fn arity(&self) -> usize {
        match self {
            GrowthRule::Bst { d } => *d as usize,
            GrowthRule::WeightedBinary { .. } => 2,
            GrowthRule::Idla { a } => a.len(),
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            GrowthRule::Bst { d } if *d < 2 => Err(Error::param("arity must be at least 2")),
            GrowthRule::WeightedBinary { x, y } if !(*x > 0.0 && *y > 0.0) => {
                Err(Error::param("x and y must be positive"))
            }
            GrowthRule::Idla { a } if a.len() < 2 || a.iter().any(|v| !(*v > 0.0)) => {
                Err(Error::param("Dirichlet parameters must be positive"))
            }
            _ => Ok(()),
        }
    }
}

const EMPTY: u32 = u32::MAX;

/// Tree stored as an arena: node 0 is the root.
#[derive(Debug, Clone)]
pub struct ArenaTree {
    d: usize,
    children: Vec<u32>,
    sizes: Vec<u32>,
}

impl ArenaTree {
    pub fn new(d: usize) -> Self {
        ArenaTree {
            d,
            children: vec![EMPTY; d],
            sizes: vec![1],
        }
    }

    pub fn size(&self) -> usize {
        self.sizes.len()
    }

    pub fn child(&self, v: usize, j: usize) -> Option<usize> {
        let c = self.children[v * self.d + j];
        (c != EMPTY).then_some(c as usize)
    }

    pub fn subtree_size(&self, v: usize) -> usize {
        self.sizes[v] as usize
    }

    /// Node at the given child-index path (indices from 1), if present.
    pub fn find(&self, path: &[u8]) -> Option<usize> {
        let mut v = 0;
        for &j in path {
            v = self.child(v, j as usize - 1)?;
        }
        Some(v)
    }

    fn is_leaf(&self, v: usize) -> bool {
        (0..self.d).all(|j| self.child(v, j).is_none())
    }

    fn attach(&mut self, path: &[usize], parent: usize, j: usize) {
        let id = self.sizes.len() as u32;
        self.children[parent * self.d + j] = id;
        self.children.extend(std::iter::repeat(EMPTY).take(self.d));
        self.sizes.push(1);
        for &v in path {
            self.sizes[v] += 1;
        }
    }

    /// Adds one node according to `rule`.
    pub fn grow(&mut self, rule: &GrowthRule, rng: &mut Rng) {
        let mut path = Vec::new();
        let mut v = 0usize;
        loop {
            path.push(v);
            let weights: Vec<f64> = match rule {
                GrowthRule::Bst { d } => (0..self.d)
                    .map(|j| match self.child(v, j) {
                        Some(c) => 1.0 + (*d as f64 - 1.0) * self.sizes[c] as f64,
                        None => 1.0,
                    })
                    .collect(),
                GrowthRule::WeightedBinary { x, y } => {
                    if self.is_leaf(v) {
                        vec![*x, *y]
                    } else {
                        (0..2)
                            .map(|j| match self.child(v, j) {
                                Some(c) => self.sizes[c] as f64 + 1.0,
                                None => 1.0,
                            })
                            .collect()
                    }
                }
                GrowthRule::Idla { a } => (0..self.d)
                    .map(|j| a[j] + self.child(v, j).map_or(0.0, |c| self.sizes[c] as f64))
                    .collect(),
            };
            let total: f64 = weights.iter().sum();
            let mut u = rng.gen::<f64>() * total;
            let mut j = weights.len() - 1;
            for (k, w) in weights.iter().enumerate() {
                if u < *w {
                    j = k;
                    break;
                }
                u -= w;
            }
            match self.child(v, j) {
                Some(c) => v = c,
                None => {
                    self.attach(&path, v, j);
                    return;
                }
            }
        }
    }
}

/// Grows a tree to `size` nodes.
pub fn grow_tree(rule: &GrowthRule, size: usize, rng: &mut Rng) -> Result<ArenaTree> {
    rule.validate()?;
    let mut tree = ArenaTree::new(rule.arity());
    while tree.size() < size {
        tree.grow(rule, rng);
    }
    Ok(tree)
}

/// Outcome of a batch of fraction measurements.
#[derive(Debug, Clone, PartialEq)]
pub struct FractionSample {
    pub fractions: Vec<f64>,
    /// Chains in which the node was never populated.
    pub excluded: usize,
}

/// `|tau^(i1)| / |tau^(i)|` after `steps` insertions, over independent
/// chains seeded from `(seed, chain index)`.
pub fn subtree_fractions(
    rule: &GrowthRule,
    node: &[u8],
    steps: usize,
    chains: usize,
    seed: u64,
) -> Result<FractionSample> {
    use rayon::prelude::*;
    rule.validate()?;
    let results: Vec<Option<f64>> = (0..chains)
        .into_par_iter()
        .map(|c| {
            let mut rng = stream(seed, c as u64);
            let tree = grow_tree(rule, steps + 1, &mut rng).ok()?;
            let v = tree.find(node)?;
            let first = tree.child(v, 0).map_or(0, |c| tree.subtree_size(c));
            Some(first as f64 / tree.subtree_size(v) as f64)
        })
        .collect();
    let excluded = results.iter().filter(|r| r.is_none()).count();
    Ok(FractionSample {
        fractions: results.into_iter().flatten().collect(),
        excluded,
    })
}

/// Limit distribution function of the first-child fraction of the
/// preferential binary tree: `(2 y t + (x - y) t^2) / (x + y)`.
pub fn weighted_fraction_cdf(x: f64, y: f64, t: f64) -> f64 {
    let t = t.clamp(0.0, 1.0);
    (2.0 * y * t + (x - y) * t * t) / (x + y)
}
