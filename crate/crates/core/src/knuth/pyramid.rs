//! Allocation-free trajectories on the pyramid model.
//!
//! Produces the same draws and costs as the generic estimator run on
//! `FloatView<PyramidModel>` with the same seed, at a fraction of the cost:
//! states are plain height vectors edited in place and out-degrees are
//! counted without building the successor states.

use rayon::prelude::*;

use super::estimate::EstimateResult;
use super::proposal::{degree_power, GammaSpec};
use crate::chain::choose_index;
use crate::error::{Error, Result};
use crate::growth::{PyramidModel, PyramidState};
use crate::rng::{stream, Rng};

/// Proposal of the pyramid walker.
#[derive(Debug, Clone, PartialEq)]
pub enum WalkRule {
    /// Uniform over the successors (RW0).
    Grw,
    /// Proportional to the successors' out-degree raised to `gamma` (RW1
    /// with [`GammaSpec::Scheduled`]).
    OutDegreePower(GammaSpec),
}

impl WalkRule {
    pub fn rw1() -> Self {
        WalkRule::OutDegreePower(GammaSpec::Scheduled)
    }

    fn gamma(&self, step: usize, depth: usize) -> f64 {
        match self {
            WalkRule::Grw => 0.0,
            WalkRule::OutDegreePower(g) => g.at(step, depth),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Move {
    Up(usize),
    Left,
    Right,
}

/// Columns of a virtual profile that accept a box, given by an accessor.
fn count_legal(len: usize, get: impl Fn(usize) -> u32) -> usize {
    let mut top = 0;
    let mut a = 0;
    let mut b = 0;
    for k in 0..len {
        let v = get(k);
        if v > top {
            top = v;
            a = k;
            b = k;
        } else if v == top {
            b = k;
        }
    }
    (0..len)
        .filter(|&k| {
            if k < a {
                get(k) < get(k + 1)
            } else if k > b {
                get(k) < get(k - 1)
            } else {
                true
            }
        })
        .count()
}

struct Walker {
    max_base: Option<usize>,
    moves: Vec<Move>,
    weights: Vec<f64>,
}

impl Walker {
    fn new(model: &PyramidModel) -> Self {
        Walker {
            max_base: model.max_base(),
            moves: Vec::new(),
            weights: Vec::new(),
        }
    }

    fn extensions(&self, len: usize) -> usize {
        if self.max_base.map_or(true, |b| len < b) {
            2
        } else {
            0
        }
    }

    fn out_degree(&self, h: &mut [u32], m: Move) -> usize {
        let len = h.len();
        match m {
            Move::Up(k) => {
                h[k] += 1;
                let d = count_legal(len, |i| h[i]);
                h[k] -= 1;
                d + self.extensions(len)
            }
            Move::Left => {
                count_legal(len + 1, |i| if i == 0 { 1 } else { h[i - 1] }) + self.extensions(len + 1)
            }
            Move::Right => {
                count_legal(len + 1, |i| if i == len { 1 } else { h[i] }) + self.extensions(len + 1)
            }
        }
    }

    /// Fills `moves` in the model's child order.
    fn list_moves(&mut self, h: &[u32]) {
        self.moves.clear();
        self.moves
            .extend(crate::growth::legal_increments(h).map(Move::Up));
        if self.extensions(h.len()) > 0 {
            self.moves.push(Move::Left);
            self.moves.push(Move::Right);
        }
    }

    /// One trajectory from `h`; returns `ln c(s)`.
    fn log_cost(&mut self, h: &mut Vec<u32>, depth: usize, rule: &WalkRule, rng: &mut Rng) -> Result<f64> {
        let mut log_cost = 0.0;
        for step in 0..depth {
            self.list_moves(h);
            let gamma = rule.gamma(step, depth);
            self.weights.clear();
            for i in 0..self.moves.len() {
                let raw = if gamma == 0.0 {
                    1.0
                } else {
                    degree_power(self.out_degree(h, self.moves[i]), gamma)
                };
                self.weights.push(1.0 * raw);
            }
            let total = self.weights.iter().fold(0.0, |a, b| a + b);
            for w in &mut self.weights {
                *w /= total;
            }
            let i = choose_index(&self.weights, rng)
                .ok_or_else(|| Error::DeadEnd(format!("{h:?}")))?;
            log_cost += 1.0_f64.ln() - self.weights[i].ln();
            match self.moves[i] {
                Move::Up(k) => h[k] += 1,
                Move::Left => h.insert(0, 1),
                Move::Right => h.push(1),
            }
        }
        Ok(log_cost)
    }
}

/// `ln c(s)` for `N` trajectories of `depth` steps from `start`.
pub fn pyramid_log_costs(
    model: &PyramidModel,
    start: &PyramidState,
    depth: usize,
    rule: &WalkRule,
    samples: usize,
    seed: u64,
) -> Result<Vec<f64>> {
    if samples == 0 {
        return Err(Error::param("N must be at least 1"));
    }
    (0..samples)
        .into_par_iter()
        .map_init(
            || Walker::new(model),
            |walker, k| {
                let mut h = start.heights.clone();
                walker.log_cost(&mut h, depth, rule, &mut stream(seed, k as u64))
            },
        )
        .collect()
}

/// Knuth's estimator on the pyramid model through the fast walker.
pub fn pyramid_estimate(
    model: &PyramidModel,
    start: &PyramidState,
    depth: usize,
    rule: &WalkRule,
    samples: usize,
    seed: u64,
) -> Result<EstimateResult> {
    EstimateResult::from_log_costs(&pyramid_log_costs(model, start, depth, rule, samples, seed)?, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{DiagramModel, FloatView};
    use crate::growth::{pyramid_model, Profile};
    use crate::knuth::{knuth_log_costs, Grw, OutDegreePower};

    #[test]
    fn out_degrees_match_model() {
        for max_base in [None, Some(3)] {
            let m = pyramid_model(max_base).unwrap();
            let w = Walker::new(&m);
            for heights in [vec![1], vec![1, 2, 2, 1], vec![2, 1, 1], vec![1, 3]] {
                let v = Profile::new(0, heights.clone()).unwrap();
                let mut h = heights.clone();
                let mut walker = Walker::new(&m);
                walker.list_moves(&h);
                let slow: Vec<usize> = m.moves(&v).iter().map(|c| m.out_degree(c)).collect();
                let fast: Vec<usize> = walker.moves.iter().map(|&mv| w.out_degree(&mut h, mv)).collect();
                assert_eq!(fast, slow, "{heights:?}");
            }
        }
    }

    #[test]
    fn matches_generic_estimator() {
        let m = pyramid_model(None).unwrap();
        let fm = FloatView(m);
        let start = Profile::new(0, vec![1, 2]).unwrap();
        for depth in [0, 1, 5, 9] {
            let a = pyramid_log_costs(&m, &start, depth, &WalkRule::Grw, 50, 3).unwrap();
            let b = knuth_log_costs(&fm, &start, depth, &Grw, 50, 3).unwrap();
            assert_eq!(a, b);
            let a = pyramid_log_costs(&m, &start, depth, &WalkRule::rw1(), 50, 3).unwrap();
            let b = knuth_log_costs(&fm, &start, depth, &OutDegreePower::scheduled(), 50, 3).unwrap();
            assert_eq!(a, b);
        }
    }
}
