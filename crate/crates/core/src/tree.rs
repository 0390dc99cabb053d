//! Finite binary trees and the leftmost-path coloring `f(x, s) = σ_s(x)`,
//! where `σ_s` is the leftmost node of length `s`.
//!
//! Tree file format: one binary string per line; an empty line is the root.

use std::collections::BTreeSet;

use crate::coloring::FiniteColoring;
use crate::error::{Error, Result};
use crate::pattern::Color;

/// A finite prefix-closed set of binary strings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryTree {
    // Same-length strings compare lexicographically, so the first node of a
    // given length is the leftmost one.
    nodes: BTreeSet<Vec<Color>>,
}

impl BinaryTree {
    /// Validates prefix closure.
    pub fn new(nodes: impl IntoIterator<Item = Vec<Color>>) -> Result<Self> {
        let nodes: BTreeSet<Vec<Color>> = nodes.into_iter().collect();
        if nodes.iter().flatten().any(|&b| b > 1) {
            return Err(Error::Precondition(
                "tree nodes must be binary strings".into(),
            ));
        }
        for node in &nodes {
            if !node.is_empty() && !nodes.contains(&node[..node.len() - 1]) {
                return Err(Error::Precondition(format!(
                    "tree is not prefix-closed: parent of {} missing",
                    show(node)
                )));
            }
        }
        Ok(BinaryTree { nodes })
    }

    /// The prefix closure of the given strings.
    pub fn from_paths<'a>(paths: impl IntoIterator<Item = &'a [Color]>) -> Self {
        let mut nodes = BTreeSet::new();
        for path in paths {
            for k in 0..=path.len() {
                nodes.insert(path[..k].to_vec());
            }
        }
        BinaryTree { nodes }
    }

    /// Every binary string of length at most `depth`.
    pub fn full(depth: usize) -> Self {
        let mut nodes = BTreeSet::new();
        for len in 0..=depth {
            for bits in 0u64..(1u64 << len) {
                nodes.insert(
                    (0..len)
                        .map(|k| ((bits >> (len - 1 - k)) & 1) as Color)
                        .collect(),
                );
            }
        }
        BinaryTree { nodes }
    }

    pub fn depth(&self) -> Option<usize> {
        self.nodes.iter().map(Vec::len).max()
    }

    pub fn contains(&self, node: &[Color]) -> bool {
        self.nodes.contains(node)
    }

    pub fn level(&self, len: usize) -> impl Iterator<Item = &Vec<Color>> {
        self.nodes.iter().filter(move |n| n.len() == len)
    }

    /// `σ_len`, the leftmost node of the given length.
    pub fn leftmost(&self, len: usize) -> Option<&Vec<Color>> {
        self.level(len).next()
    }

    pub fn parse_file(text: &str) -> Result<Self> {
        let mut nodes = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let node = line
                .trim()
                .chars()
                .map(|ch| match ch {
                    '0' => Ok(0),
                    '1' => Ok(1),
                    other => Err(Error::Parse {
                        line: idx + 1,
                        reason: format!("unexpected character `{other}`"),
                    }),
                })
                .collect::<Result<Vec<Color>>>()?;
            nodes.push(node);
        }
        Self::new(nodes)
    }

    pub fn to_file_string(&self) -> String {
        let mut out = String::new();
        for node in &self.nodes {
            out.push_str(&show(node));
            out.push('\n');
        }
        out
    }
}

fn show(node: &[Color]) -> String {
    node.iter()
        .map(|&b| if b == 0 { '0' } else { '1' })
        .collect()
}

/// `f(x, s) = σ_s(x)` for `x < s < N`; needs a node at every level below `N`.
pub fn tree_to_coloring(tree: &BinaryTree, window: usize) -> Result<FiniteColoring> {
    let mut columns = Vec::with_capacity(window);
    for s in 0..window {
        let sigma = tree
            .leftmost(s)
            .ok_or_else(|| Error::Precondition(format!("tree has no node at level {s}")))?;
        columns.push(sigma.clone());
    }
    Ok(FiniteColoring::from_fn(window, |x, s| columns[s][x]))
}

/// Some node of length `depth` is constant on the coordinates of `U` below `depth`.
pub fn homogeneous_for_tree(tree: &BinaryTree, u: &[usize], depth: usize) -> Result<bool> {
    match tree.depth() {
        Some(d) if depth <= d => {}
        _ => {
            return Err(Error::Precondition(format!(
                "depth {depth} exceeds the tree depth {:?}",
                tree.depth()
            )))
        }
    }
    Ok(tree.level(depth).any(|sigma| {
        let mut colors = u.iter().filter(|&&i| i < depth).map(|&i| sigma[i]);
        match colors.next() {
            None => true,
            Some(c) => colors.all(|d| d == c),
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_tree_gives_zero_coloring() {
        let f = tree_to_coloring(&BinaryTree::full(6), 6).unwrap();
        assert_eq!(f, FiniteColoring::constant(6, 0));
    }

    #[test]
    fn all_ones_branch() {
        let t = BinaryTree::from_paths([&[1u8; 7][..]]);
        assert_eq!(
            tree_to_coloring(&t, 7).unwrap(),
            FiniteColoring::constant(7, 1)
        );
    }

    #[test]
    fn dead_end_moves_the_leftmost_path() {
        // `00` dies at level 2, so σ_s = 01…1 from level 3 on.
        let t =
            BinaryTree::from_paths([&[0u8, 0][..], &[0u8, 1, 1, 1, 1, 1, 1][..], &[1u8; 7][..]]);
        let f = tree_to_coloring(&t, 7).unwrap();
        assert!((1..7).all(|s| f.get(0, s) == 0));
        assert_eq!(f.get(1, 2), 0);
        assert!((3..7).all(|s| f.get(1, s) == 1));
    }

    #[test]
    fn missing_level_is_rejected() {
        let t = BinaryTree::from_paths([&[0u8, 1][..]]);
        assert!(tree_to_coloring(&t, 3).is_ok());
        assert!(tree_to_coloring(&t, 4).is_err());
    }

    #[test]
    fn homogeneity() {
        let full = BinaryTree::full(5);
        assert!(homogeneous_for_tree(&full, &[0, 1, 3], 5).unwrap());
        let alt = BinaryTree::from_paths([&[0u8, 1, 0, 1][..]]);
        assert!(homogeneous_for_tree(&alt, &[0, 2], 4).unwrap());
        assert!(!homogeneous_for_tree(&alt, &[0, 1], 4).unwrap());
        assert!(homogeneous_for_tree(&alt, &[], 4).unwrap());
        assert!(homogeneous_for_tree(&alt, &[0], 5).is_err());
    }

    #[test]
    fn file_round_trip() {
        let t = BinaryTree::from_paths([&[0u8, 1][..], &[1u8][..]]);
        let text = t.to_file_string();
        assert_eq!(text, "\n0\n01\n1\n");
        assert_eq!(BinaryTree::parse_file(&text).unwrap(), t);
        assert!(BinaryTree::parse_file("\n01\n").is_err());
        assert!(matches!(
            BinaryTree::parse_file("\n0\n2\n"),
            Err(Error::Parse { line: 3, .. })
        ));
    }
}
