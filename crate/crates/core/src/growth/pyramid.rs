//! Pyramidal growth: a box goes on top of a column or starts a new column
//! at either end, as long as the profile stays unimodal.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use serde::Serialize;

use super::profile::Profile;
use crate::diagram::{DiagramModel, WeightedEdge};
use crate::error::{Error, Result};
use crate::scalar::Exact;

/// Pyramid model, optionally with a bound on the number of columns.
///
/// Children of a state, in order: one more box on column `k` for each
/// column from left to right where the result stays unimodal, then a new
/// column on the left, then one on the right. All weights are 1.
#[derive(Debug, Clone, Copy, Default)]
pub struct PyramidModel {
    max_base: Option<usize>,
}

pub fn pyramid_model(max_base: Option<usize>) -> Result<PyramidModel> {
    if max_base == Some(0) {
        return Err(Error::param("the base bound must be at least 1"));
    }
    Ok(PyramidModel { max_base })
}

/// Columns where one more box keeps `h` unimodal, for unimodal `h`.
///
/// Inside the plateau of maxima every column qualifies; left of it a column
/// qualifies when it is strictly below its right neighbour, and symmetrically
/// on the right.
pub fn legal_increments(h: &[u32]) -> impl Iterator<Item = usize> + '_ {
    let top = h.iter().copied().max().unwrap_or(0);
    let a = h.iter().position(|&v| v == top).unwrap_or(0);
    let b = h.iter().rposition(|&v| v == top).unwrap_or(0);
    (0..h.len()).filter(move |&k| {
        if k < a {
            h[k] < h[k + 1]
        } else if k > b {
            h[k] < h[k - 1]
        } else {
            true
        }
    })
}

impl PyramidModel {
    pub fn max_base(&self) -> Option<usize> {
        self.max_base
    }

    fn may_extend(&self, v: &Profile) -> bool {
        self.max_base.map_or(true, |b| v.heights.len() < b)
    }

    /// Successor states in child order.
    pub fn moves(&self, v: &Profile) -> Vec<Profile> {
        let mut out = Vec::with_capacity(v.heights.len() + 2);
        for k in legal_increments(&v.heights) {
            let mut h = v.heights.clone();
            h[k] += 1;
            out.push(Profile { offset: v.offset, heights: h });
        }
        if self.may_extend(v) {
            let mut left = Vec::with_capacity(v.heights.len() + 1);
            left.push(1);
            left.extend_from_slice(&v.heights);
            out.push(Profile { offset: v.offset - 1, heights: left });
            let mut right = v.heights.clone();
            right.push(1);
            out.push(Profile { offset: v.offset, heights: right });
        }
        out
    }
}

impl DiagramModel for PyramidModel {
    type Vertex = Profile;
    type Weight = Exact;

    fn name(&self) -> String {
        match self.max_base {
            None => "pyramid".into(),
            Some(b) => format!("pyramid (base at most {b})"),
        }
    }
    fn root(&self) -> Profile {
        Profile::single()
    }
    fn level(&self, v: &Profile) -> usize {
        v.size() as usize - 1
    }
    fn children(&self, v: &Profile) -> Vec<WeightedEdge<Profile, Exact>> {
        self.moves(v)
            .into_iter()
            .map(|c| WeightedEdge::new(c, Exact::one()))
            .collect()
    }
    fn out_degree(&self, v: &Profile) -> usize {
        legal_increments(&v.heights).count() + if self.may_extend(v) { 2 } else { 0 }
    }
    fn may_reach(&self, from: &Profile, to: &Profile) -> bool {
        from.columns().all(|c| from.height_at(c) <= to.height_at(c))
    }
}

/// Number of growth paths of length `n` from the single box, for
/// `n = 0..=n_max`.
///
/// Profiles that differ only by a translation have the same future, so the
/// sweep keys states by their heights alone.
pub fn pyramid_counts(model: &PyramidModel, n_max: usize, budget: usize) -> Result<Vec<BigUint>> {
    let mut layer: HashMap<Vec<u32>, BigUint> = HashMap::new();
    layer.insert(vec![1], BigUint::one());
    let mut out = vec![BigUint::one()];
    for _ in 0..n_max {
        let mut next: HashMap<Vec<u32>, BigUint> = HashMap::with_capacity(layer.len() * 3);
        for (h, count) in &layer {
            let v = Profile { offset: 0, heights: h.clone() };
            for c in model.moves(&v) {
                *next.entry(c.heights).or_insert_with(BigUint::zero) += count;
            }
        }
        if next.len() > budget {
            return Err(Error::budget("sweeping pyramid levels", budget));
        }
        out.push(next.values().sum());
        layer = next;
    }
    Ok(out)
}

/// Three fixed columns `l, c, r` with possibly empty columns, starting
/// empty. A box may go on any column unless the centre would end up
/// strictly below both sides. Level `n` holds the states with `n` boxes.
#[derive(Debug, Clone, Copy, Default)]
pub struct FrameModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FrameState {
    pub l: u32,
    pub c: u32,
    pub r: u32,
}

impl FrameState {
    /// Position `(c - l, c - r)` of the associated Kreweras walk.
    pub fn walk_position(&self) -> (i64, i64) {
        (
            self.c as i64 - self.l as i64,
            self.c as i64 - self.r as i64,
        )
    }

    pub fn is_legal(&self) -> bool {
        !(self.c < self.l && self.c < self.r)
    }
}

impl fmt::Display for FrameState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{}]", self.l, self.c, self.r)
    }
}

impl DiagramModel for FrameModel {
    type Vertex = FrameState;
    type Weight = Exact;

    fn name(&self) -> String {
        "three-column frame".into()
    }
    fn root(&self) -> FrameState {
        FrameState { l: 0, c: 0, r: 0 }
    }
    fn level(&self, v: &FrameState) -> usize {
        (v.l + v.c + v.r) as usize
    }
    fn children(&self, v: &FrameState) -> Vec<WeightedEdge<FrameState, Exact>> {
        let candidates = [
            FrameState { l: v.l + 1, ..*v },
            FrameState { c: v.c + 1, ..*v },
            FrameState { r: v.r + 1, ..*v },
        ];
        candidates
            .into_iter()
            .filter(FrameState::is_legal)
            .map(|s| WeightedEdge::new(s, Exact::one()))
            .collect()
    }
    fn may_reach(&self, from: &FrameState, to: &FrameState) -> bool {
        from.l <= to.l && from.c <= to.c && from.r <= to.r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::growth::profile::is_unimodal;

    #[test]
    fn fast_increment_rule_matches_validator() {
        let shapes: [&[u32]; 6] = [&[1], &[1, 2, 2, 1], &[1, 3, 2], &[2, 2, 1, 1], &[1, 1, 1], &[3, 1]];
        for h in shapes {
            let fast: Vec<usize> = legal_increments(h).collect();
            let slow: Vec<usize> = (0..h.len())
                .filter(|&k| {
                    let mut g = h.to_vec();
                    g[k] += 1;
                    is_unimodal(&g)
                })
                .collect();
            assert_eq!(fast, slow, "{h:?}");
        }
    }

    #[test]
    fn column_of_two_successors() {
        let m = pyramid_model(None).unwrap();
        let v = Profile::new(0, vec![2]).unwrap();
        let deg: Vec<usize> = m.moves(&v).iter().map(|c| m.out_degree(c)).collect();
        assert_eq!(deg, vec![3, 4, 4]);
    }
}
