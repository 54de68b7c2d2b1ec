//! Small hand-made diagrams: a single chain, two toy diagrams that
//! exhibit a MERW without full support and a non-unique MERW, and a
//! diagram given by an explicit edge list.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use super::{DiagramModel, WeightedEdge};
use crate::error::{Error, Result};
use crate::scalar::{Exact, Scalar};

/// One vertex per level, joined by edges of a fixed weight.
#[derive(Debug, Clone)]
pub struct ChainModel {
    pub weight: Exact,
}

impl ChainModel {
    pub fn unweighted() -> Self {
        ChainModel { weight: Exact::one() }
    }
}

impl DiagramModel for ChainModel {
    type Vertex = usize;
    type Weight = Exact;

    fn name(&self) -> String {
        "chain".into()
    }
    fn root(&self) -> usize {
        0
    }
    fn level(&self, v: &usize) -> usize {
        *v
    }
    fn children(&self, v: &usize) -> Vec<WeightedEdge<usize, Exact>> {
        vec![WeightedEdge::new(v + 1, self.weight.clone())]
    }
    fn may_reach(&self, from: &usize, to: &usize) -> bool {
        from <= to
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    L,
    R,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::L => "l",
            Side::R => "r",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ToyOneVertex {
    Root,
    At(usize, Side),
}

impl fmt::Display for ToyOneVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ToyOneVertex::Root => f.write_str("∅"),
            ToyOneVertex::At(n, s) => write!(f, "{n}_{s}"),
        }
    }
}

/// Two vertices per level. The `l` branch may jump to the `r` branch at
/// every step but never back, so `d(root, n_r) = n` and the `r` side carries
/// almost all the paths.
#[derive(Debug, Clone, Default)]
pub struct ToyOne;

impl DiagramModel for ToyOne {
    type Vertex = ToyOneVertex;
    type Weight = Exact;

    fn name(&self) -> String {
        "toy-one".into()
    }
    fn root(&self) -> ToyOneVertex {
        ToyOneVertex::Root
    }
    fn level(&self, v: &ToyOneVertex) -> usize {
        match v {
            ToyOneVertex::Root => 0,
            ToyOneVertex::At(n, _) => *n,
        }
    }
    fn children(&self, v: &ToyOneVertex) -> Vec<WeightedEdge<ToyOneVertex, Exact>> {
        let one = |v| WeightedEdge::new(v, Exact::one());
        match v {
            ToyOneVertex::Root => vec![
                one(ToyOneVertex::At(1, Side::L)),
                one(ToyOneVertex::At(1, Side::R)),
            ],
            ToyOneVertex::At(n, Side::L) => vec![
                one(ToyOneVertex::At(n + 1, Side::L)),
                one(ToyOneVertex::At(n + 1, Side::R)),
            ],
            ToyOneVertex::At(n, Side::R) => vec![one(ToyOneVertex::At(n + 1, Side::R))],
        }
    }
    fn may_reach(&self, from: &ToyOneVertex, to: &ToyOneVertex) -> bool {
        match (from, to) {
            (ToyOneVertex::At(_, Side::R), ToyOneVertex::At(_, Side::L)) => false,
            _ => self.level(from) <= self.level(to),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ToyTwoVertex {
    Root,
    Node { side: Side, level: usize, index: u64 },
}

impl fmt::Display for ToyTwoVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ToyTwoVertex::Root => f.write_str("∅"),
            ToyTwoVertex::Node { side, level, index } => write!(f, "{side}{level}.{index}"),
        }
    }
}

/// Two disjoint trees hanging from the root. Vertices of the left tree at
/// level `n` have 1, 4, 1 children for `n = 1, 2, 3 (mod 3)`; the right
/// tree uses 2, 1, 2. The share of paths ending on the left therefore
/// cycles through 1/2, 1/3, 2/3 and the truncated MERWs never settle.
#[derive(Debug, Clone, Default)]
pub struct ToyTwo;

impl ToyTwo {
    pub fn branching(side: Side, level: usize) -> u64 {
        let pattern = match side {
            Side::L => [1, 4, 1],
            Side::R => [2, 1, 2],
        };
        pattern[(level - 1) % 3]
    }
}

impl DiagramModel for ToyTwo {
    type Vertex = ToyTwoVertex;
    type Weight = Exact;

    fn name(&self) -> String {
        "toy-two".into()
    }
    fn root(&self) -> ToyTwoVertex {
        ToyTwoVertex::Root
    }
    fn level(&self, v: &ToyTwoVertex) -> usize {
        match v {
            ToyTwoVertex::Root => 0,
            ToyTwoVertex::Node { level, .. } => *level,
        }
    }
    fn children(&self, v: &ToyTwoVertex) -> Vec<WeightedEdge<ToyTwoVertex, Exact>> {
        match v {
            ToyTwoVertex::Root => [Side::L, Side::R]
                .into_iter()
                .map(|side| {
                    WeightedEdge::new(
                        ToyTwoVertex::Node {
                            side,
                            level: 1,
                            index: 0,
                        },
                        Exact::one(),
                    )
                })
                .collect(),
            ToyTwoVertex::Node { side, level, index } => {
                let b = Self::branching(*side, *level);
                (0..b)
                    .map(|j| {
                        WeightedEdge::new(
                            ToyTwoVertex::Node {
                                side: *side,
                                level: level + 1,
                                index: index * b + j,
                            },
                            Exact::one(),
                        )
                    })
                    .collect()
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExplicitVertex {
    pub level: usize,
    pub name: String,
}

impl fmt::Display for ExplicitVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.name, self.level)
    }
}

/// A diagram given by an edge list. Vertices on the deepest listed level
/// continue forever along a single unit-weight chain, so the diagram has
/// no dead ends.
#[derive(Debug, Clone)]
pub struct ExplicitDiagram {
    root: String,
    depth: usize,
    edges: BTreeMap<String, Vec<(String, Exact)>>,
    levels: BTreeMap<String, usize>,
}

impl ExplicitDiagram {
    pub fn new(root: &str, edges: &[(&str, &str, Exact)]) -> Result<Self> {
        let mut adj: BTreeMap<String, Vec<(String, Exact)>> = BTreeMap::new();
        for (p, c, w) in edges {
            if *w <= Exact::from_u64(0) {
                return Err(Error::param(format!("edge {p}->{c} has weight {w}")));
            }
            adj.entry(p.to_string())
                .or_default()
                .push((c.to_string(), w.clone()));
        }
        let mut levels = BTreeMap::new();
        levels.insert(root.to_string(), 0usize);
        let mut frontier = vec![root.to_string()];
        while let Some(v) = frontier.pop() {
            let lv = levels[&v];
            for (c, _) in adj.get(&v).map(|x| x.as_slice()).unwrap_or(&[]) {
                match levels.get(c) {
                    Some(&l) if l != lv + 1 => {
                        return Err(Error::Invalid(format!("vertex {c} sits on two levels")))
                    }
                    Some(_) => {}
                    None => {
                        levels.insert(c.clone(), lv + 1);
                        frontier.push(c.clone());
                    }
                }
            }
        }
        let depth = levels.values().copied().max().unwrap_or(0);
        for (v, &l) in &levels {
            if l < depth && !adj.contains_key(v) {
                return Err(Error::DeadEnd(v.clone()));
            }
        }
        Ok(ExplicitDiagram {
            root: root.to_string(),
            depth,
            edges: adj,
            levels,
        })
    }

    /// Root with two children; the first has two continuations and the
    /// second one, so every finite-horizon kernel splits the root 2/3 to 1/3.
    pub fn sample() -> Self {
        let one = Exact::one;
        ExplicitDiagram::new(
            "a",
            &[
                ("a", "b", one()),
                ("a", "c", one()),
                ("b", "d", one()),
                ("b", "e", one()),
                ("c", "e", one()),
            ],
        )
        .expect("well-formed sample")
    }
}

impl DiagramModel for ExplicitDiagram {
    type Vertex = ExplicitVertex;
    type Weight = Exact;

    fn name(&self) -> String {
        "explicit".into()
    }
    fn root(&self) -> ExplicitVertex {
        ExplicitVertex {
            level: 0,
            name: self.root.clone(),
        }
    }
    fn level(&self, v: &ExplicitVertex) -> usize {
        v.level
    }
    fn children(&self, v: &ExplicitVertex) -> Vec<WeightedEdge<ExplicitVertex, Exact>> {
        if v.level >= self.depth {
            return vec![WeightedEdge::new(
                ExplicitVertex {
                    level: v.level + 1,
                    name: v.name.clone(),
                },
                Exact::one(),
            )];
        }
        debug_assert_eq!(self.levels.get(&v.name), Some(&v.level));
        self.edges
            .get(&v.name)
            .map(|list| {
                list.iter()
                    .map(|(c, w)| {
                        WeightedEdge::new(
                            ExplicitVertex {
                                level: v.level + 1,
                                name: c.clone(),
                            },
                            w.clone(),
                        )
                    })
                    .collect()
            })
            .unwrap_or_default()
    }
}
