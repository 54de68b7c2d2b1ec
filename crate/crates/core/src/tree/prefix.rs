use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A node is the sequence of child indices leading to it from the root.
/// Indices start at 1.
pub type Node = Vec<u8>;

/// Finite prefix-closed set of nodes, always containing the root.
///
/// Nodes are kept in lexicographic order, which is also the canonical
/// encoding used for hashing, ordering and display.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrefixTree {
    nodes: BTreeSet<Node>,
}

impl Default for PrefixTree {
    fn default() -> Self {
        Self::root()
    }
}

impl PrefixTree {
    pub fn root() -> Self {
        let mut nodes = BTreeSet::new();
        nodes.insert(Vec::new());
        PrefixTree { nodes }
    }

    pub fn from_nodes<I: IntoIterator<Item = Node>>(nodes: I) -> Result<Self> {
        let mut set: BTreeSet<Node> = nodes.into_iter().collect();
        set.insert(Vec::new());
        for v in &set {
            if v.contains(&0) {
                return Err(Error::Invalid(format!("node {v:?} uses index 0")));
            }
            if !v.is_empty() && !set.contains(&v[..v.len() - 1]) {
                return Err(Error::Invalid(format!(
                    "node {} has no parent in the tree",
                    show_node(v)
                )));
            }
        }
        Ok(PrefixTree { nodes: set })
    }

    /// Parses `"1,12,2"`-style lists of digit strings (the root is implicit).
    pub fn parse(s: &str) -> Result<Self> {
        let nodes = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .map(str::trim)
            .filter(|t| !t.is_empty() && *t != "∅")
            .map(|t| {
                t.chars()
                    .map(|c| {
                        c.to_digit(10)
                            .map(|d| d as u8)
                            .ok_or_else(|| Error::Invalid(format!("bad node {t}")))
                    })
                    .collect::<Result<Node>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_nodes(nodes)
    }

    pub fn size(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> impl Iterator<Item = &Node> {
        self.nodes.iter()
    }

    pub fn contains(&self, node: &[u8]) -> bool {
        self.nodes.contains(node)
    }

    pub fn is_subset(&self, other: &PrefixTree) -> bool {
        self.nodes.is_subset(&other.nodes)
    }

    /// New tree with `node` added; its parent must already be present.
    pub fn with(&self, node: Node) -> PrefixTree {
        debug_assert!(self.contains(&node[..node.len() - 1]));
        let mut nodes = self.nodes.clone();
        nodes.insert(node);
        PrefixTree { nodes }
    }

    pub fn child(node: &[u8], j: u8) -> Node {
        let mut c = node.to_vec();
        c.push(j);
        c
    }

    /// Children of `node` present in the tree, in index order.
    pub fn children_of<'a>(&'a self, node: &'a [u8]) -> impl Iterator<Item = &'a Node> + 'a {
        let depth = node.len();
        self.nodes
            .range(node.to_vec()..)
            .skip(1)
            .take_while(move |v| v.starts_with(node))
            .filter(move |v| v.len() == depth + 1)
    }

    pub fn is_leaf(&self, node: &[u8]) -> bool {
        self.children_of(node).next().is_none()
    }

    /// `|tau^(i)|`: number of nodes having `node` as a prefix (0 if absent).
    pub fn subtree_size(&self, node: &[u8]) -> usize {
        self.nodes
            .range(node.to_vec()..)
            .take_while(|v| v.starts_with(node))
            .count()
    }

    pub fn leaves(&self) -> Vec<&Node> {
        self.nodes.iter().filter(|v| self.is_leaf(v)).collect()
    }

    pub fn internal(&self) -> Vec<&Node> {
        self.nodes.iter().filter(|v| !self.is_leaf(v)).collect()
    }

    /// Internal nodes missing at least one of the children `1..=d`.
    pub fn incomplete(&self, d: u8) -> usize {
        self.internal()
            .into_iter()
            .filter(|v| (1..=d).any(|j| !self.contains(&Self::child(v, j))))
            .count()
    }

    pub fn max_index(&self) -> u8 {
        self.nodes.iter().flat_map(|v| v.iter().copied()).max().unwrap_or(0)
    }

    pub fn height(&self) -> usize {
        self.nodes.iter().map(Vec::len).max().unwrap_or(0)
    }
}

pub fn show_node(node: &[u8]) -> String {
    if node.is_empty() {
        return "∅".into();
    }
    if node.iter().all(|&j| j < 10) {
        node.iter().map(|j| char::from(b'0' + j)).collect()
    } else {
        node.iter().map(u8::to_string).collect::<Vec<_>>().join(".")
    }
}

impl fmt::Display for PrefixTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.nodes.iter().map(|v| show_node(v)).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Serialize for PrefixTree {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structure_queries() {
        let t = PrefixTree::parse("1,2,11,12").unwrap();
        assert_eq!(t.size(), 5);
        assert_eq!(t.subtree_size(&[1]), 3);
        assert_eq!(t.subtree_size(&[]), 5);
        assert_eq!(t.subtree_size(&[2, 1]), 0);
        assert!(t.is_leaf(&[2]));
        assert!(!t.is_leaf(&[1]));
        assert_eq!(t.leaves().len(), 3);
        assert_eq!(t.incomplete(2), 0);
        assert_eq!(t.to_string(), "{∅,1,11,12,2}");
        let kids: Vec<_> = t.children_of(&[]).cloned().collect();
        assert_eq!(kids, vec![vec![1], vec![2]]);
    }

    #[test]
    fn leaf_and_incomplete_counts_satisfy_binary_relation() {
        let t = PrefixTree::parse("1,11,112,2").unwrap();
        let l = t.leaves().len();
        let k = t.incomplete(2);
        assert_eq!(2 * l + k, t.size() + 1);
    }

    #[test]
    fn rejects_orphans() {
        assert!(PrefixTree::parse("12").is_err());
    }
}
