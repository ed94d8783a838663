use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

/// A planar binary rooted tree: a leaf, or an ordered graft `B₊(T₁, T₂)`.
///
/// Subtrees are shared, so enumerating all trees of a given size costs one
/// allocation per tree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PBTree(Arc<Node>);

#[derive(PartialEq, Eq, Hash)]
enum Node {
    Leaf,
    Graft {
        left: PBTree,
        right: PBTree,
        leaves: usize,
    },
}

impl PBTree {
    pub fn leaf() -> Self {
        Self(Arc::new(Node::Leaf))
    }

    pub fn graft(left: PBTree, right: PBTree) -> Self {
        let leaves = left.leaves() + right.leaves();
        Self(Arc::new(Node::Graft {
            left,
            right,
            leaves,
        }))
    }

    pub fn is_leaf(&self) -> bool {
        matches!(*self.0, Node::Leaf)
    }

    pub fn children(&self) -> Option<(&PBTree, &PBTree)> {
        match &*self.0 {
            Node::Leaf => None,
            Node::Graft { left, right, .. } => Some((left, right)),
        }
    }

    pub fn leaves(&self) -> usize {
        match &*self.0 {
            Node::Leaf => 1,
            Node::Graft { leaves, .. } => *leaves,
        }
    }

    /// `|T|`, counted directly.
    pub fn vertices(&self) -> usize {
        match self.children() {
            None => 1,
            Some((l, r)) => 1 + l.vertices() + r.vertices(),
        }
    }

    /// `|T̂|`: the vertices that are not leaves.
    pub fn internal_vertices(&self) -> usize {
        match self.children() {
            None => 0,
            Some((l, r)) => 1 + l.internal_vertices() + r.internal_vertices(),
        }
    }

    /// `T̂!` by the binary recursion `(l(T) - 1) T̂₁! T̂₂!`, with `1` for a leaf.
    pub fn reduced_factorial(&self) -> BigUint {
        match self.children() {
            None => BigUint::one(),
            Some((l, r)) => {
                BigUint::from(self.leaves() - 1) * l.reduced_factorial() * r.reduced_factorial()
            }
        }
    }

    /// The tree with every leaf deleted; `None` for the empty tree.
    pub fn reduced(&self) -> Option<RootedTree> {
        let (l, r) = self.children()?;
        Some(RootedTree::with_children(
            [l.reduced(), r.reduced()].into_iter().flatten().collect(),
        ))
    }

    /// Balanced parentheses: `()` for a leaf, `(T₁T₂)` for a graft.
    pub fn serialize(&self) -> String {
        let mut s = String::with_capacity(4 * self.leaves());
        self.write_to(&mut s);
        s
    }

    fn write_to(&self, s: &mut String) {
        s.push('(');
        if let Some((l, r)) = self.children() {
            l.write_to(s);
            r.write_to(s);
        }
        s.push(')');
    }

    pub fn parse(text: &str) -> Result<Self> {
        let bytes = text.trim().as_bytes();
        let (tree, used) = parse_at(bytes, 0)?;
        if used != bytes.len() {
            return Err(parse_error(text, used, "trailing input"));
        }
        Ok(tree)
    }
}

fn parse_error(text: &str, pos: usize, what: &str) -> Error {
    Error::InvalidArgument(format!("tree {text:?}: {what} at offset {pos}"))
}

fn parse_at(b: &[u8], pos: usize) -> Result<(PBTree, usize)> {
    let text = String::from_utf8_lossy(b);
    if b.get(pos) != Some(&b'(') {
        return Err(parse_error(&text, pos, "expected '('"));
    }
    match b.get(pos + 1) {
        Some(b')') => Ok((PBTree::leaf(), pos + 2)),
        Some(b'(') => {
            let (left, p) = parse_at(b, pos + 1)?;
            let (right, p) = parse_at(b, p)?;
            if b.get(p) != Some(&b')') {
                return Err(parse_error(&text, p, "expected ')' after two subtrees"));
            }
            Ok((PBTree::graft(left, right), p + 1))
        }
        _ => Err(parse_error(&text, pos + 1, "unexpected character")),
    }
}

impl fmt::Debug for PBTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

impl fmt::Display for PBTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

/// All planar binary trees with `m` leaves, ordered by the size of the left
/// subtree, then recursively.
pub fn enumerate_pbtrees(m: usize) -> Result<Vec<PBTree>> {
    if m == 0 {
        return Err(Error::InvalidArgument(
            "a tree has at least one leaf".into(),
        ));
    }
    Ok(enumerate_up_to(m).pop().expect("m >= 1"))
}

/// `layers[k - 1]` holds every tree with `k` leaves, for `k = 1..=m`.
pub fn enumerate_up_to(m: usize) -> Vec<Vec<PBTree>> {
    let mut layers: Vec<Vec<PBTree>> = Vec::with_capacity(m);
    if m == 0 {
        return layers;
    }
    layers.push(vec![PBTree::leaf()]);
    for size in 2..=m {
        let mut layer = Vec::new();
        for k in 1..size {
            for l in &layers[k - 1] {
                for r in &layers[size - k - 1] {
                    layer.push(PBTree::graft(l.clone(), r.clone()));
                }
            }
        }
        layers.push(layer);
    }
    layers
}

/// `C_k` by `C_0 = 1`, `C_k = Σ_{i<k} C_i C_(k-1-i)`.
pub fn catalan(k: usize) -> BigUint {
    let mut c = vec![BigUint::one()];
    for j in 1..=k {
        let next = (0..j).map(|i| &c[i] * &c[j - 1 - i]).sum();
        c.push(next);
    }
    c.swap_remove(k)
}

/// A rooted tree with ordered children of any number.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootedTree {
    children: Vec<RootedTree>,
}

impl RootedTree {
    pub fn singleton() -> Self {
        Self::with_children(Vec::new())
    }

    pub fn with_children(children: Vec<RootedTree>) -> Self {
        Self { children }
    }

    /// The chain with `m >= 1` vertices.
    pub fn chain(m: usize) -> Self {
        assert!(m >= 1, "a chain has at least one vertex");
        let mut t = Self::singleton();
        for _ in 1..m {
            t = Self::with_children(vec![t]);
        }
        t
    }

    pub fn children(&self) -> &[RootedTree] {
        &self.children
    }

    pub fn vertices(&self) -> usize {
        1 + self
            .children
            .iter()
            .map(RootedTree::vertices)
            .sum::<usize>()
    }

    /// `T! = |T| T₁! ⋯ T_d!`.
    pub fn factorial(&self) -> BigUint {
        self.children
            .iter()
            .fold(BigUint::from(self.vertices()), |acc, c| acc * c.factorial())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_pbtrees(1).unwrap(), vec![PBTree::leaf()]);
        let three: Vec<String> = enumerate_pbtrees(3)
            .unwrap()
            .iter()
            .map(PBTree::serialize)
            .collect();
        assert_eq!(three, vec!["(()(()()))", "((()())())"]);
        assert!(enumerate_pbtrees(0).is_err());
    }

    #[test]
    fn counts_are_catalan_and_distinct() {
        let layers = enumerate_up_to(10);
        for (i, layer) in layers.iter().enumerate() {
            assert_eq!(BigUint::from(layer.len()), catalan(i));
            let names: HashSet<String> = layer.iter().map(PBTree::serialize).collect();
            assert_eq!(names.len(), layer.len());
        }
        assert_eq!(layers[9].len(), 4862);
    }

    #[test]
    fn vertex_counts() {
        for layer in enumerate_up_to(7) {
            for t in layer {
                assert_eq!(t.vertices(), 2 * t.leaves() - 1);
                assert_eq!(t.internal_vertices(), t.leaves() - 1);
            }
        }
    }

    #[test]
    fn reduced_factorials_of_small_trees() {
        assert_eq!(PBTree::leaf().reduced_factorial(), BigUint::one());
        let cherry = PBTree::graft(PBTree::leaf(), PBTree::leaf());
        assert_eq!(cherry.reduced_factorial(), BigUint::one());
        for t in enumerate_pbtrees(3).unwrap() {
            assert_eq!(t.reduced_factorial(), BigUint::from(2u8));
        }
    }

    #[test]
    fn binary_recursion_matches_general_factorial() {
        for layer in enumerate_up_to(8) {
            for t in layer {
                let general = t.reduced().map_or_else(BigUint::one, |r| r.factorial());
                assert_eq!(t.reduced_factorial(), general, "{t}");
            }
        }
    }

    #[test]
    fn chain_factorial_is_factorial() {
        let mut f = BigUint::one();
        for m in 1..=10 {
            f *= BigUint::from(m);
            assert_eq!(RootedTree::chain(m).factorial(), f);
        }
    }

    #[test]
    fn parse_round_trip() {
        for t in enumerate_pbtrees(5).unwrap() {
            assert_eq!(PBTree::parse(&t.serialize()).unwrap(), t);
        }
        assert!(PBTree::parse("(()").is_err());
        assert!(PBTree::parse("(()()())").is_err());
        assert!(PBTree::parse("()x").is_err());
    }
}
