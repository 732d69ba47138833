//! Tree view of terms and enumeration of `(n, σ)`-types.
//!
//! A canonical term is read as a labelled ordered rooted tree: leaves for
//! points, `+`-vertices with `ι`-labelled edges for finite sums and `ω`/`ω*`
//! vertices with one repeat block for infinite sums. The type of an
//! `n`-point subset is the subtree spanned by the branches of its points,
//! with `ι` labels kept, `ω` block labels erased and vertices renumbered in
//! BFS order.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::term::ChainTerm;

/// Upper limit on the number of types materialized by one enumeration.
pub const MAX_TYPES: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SigmaTree {
    Leaf,
    Plus(Vec<SigmaTree>),
    Omega(Box<SigmaTree>),
    OmegaStar(Box<SigmaTree>),
}

impl SigmaTree {
    pub fn height(&self) -> usize {
        match self {
            SigmaTree::Leaf => 0,
            SigmaTree::Plus(cs) => 1 + cs.iter().map(|c| c.height()).max().unwrap_or(0),
            SigmaTree::Omega(b) | SigmaTree::OmegaStar(b) => 1 + b.height(),
        }
    }

    /// Largest finite-sum arity, i.e. `w + 1` for `ι`-labels `ι_0 … ι_w`.
    pub fn max_arity(&self) -> usize {
        match self {
            SigmaTree::Leaf => 0,
            SigmaTree::Plus(cs) => cs.iter().map(|c| c.max_arity()).max().unwrap_or(0).max(cs.len()),
            SigmaTree::Omega(b) | SigmaTree::OmegaStar(b) => b.max_arity(),
        }
    }
}

/// The tree of a term; `None` for the empty chain.
pub fn sigma_tree(term: &ChainTerm) -> Option<SigmaTree> {
    fn go(t: &ChainTerm) -> SigmaTree {
        match t {
            ChainTerm::One => SigmaTree::Leaf,
            ChainTerm::FinSum(cs) => SigmaTree::Plus(cs.iter().map(go).collect()),
            ChainTerm::OmegaSum { repeat, .. } => SigmaTree::Omega(Box::new(go(repeat))),
            ChainTerm::OmegaStarSum { repeat, .. } => SigmaTree::OmegaStar(Box::new(go(repeat))),
            ChainTerm::Zero => unreachable!("canonical nonzero terms have no empty summands"),
        }
    }
    match term.canonicalize() {
        ChainTerm::Zero => None,
        t => Some(go(&t)),
    }
}

/// A type as a nested tree, before BFS numbering.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeNode {
    Leaf,
    /// Children with their retained `ι` index.
    Plus(Vec<(usize, TypeNode)>),
    Omega(Vec<TypeNode>),
    OmegaStar(Vec<TypeNode>),
}

impl TypeNode {
    pub fn leaves(&self) -> usize {
        match self {
            TypeNode::Leaf => 1,
            TypeNode::Plus(cs) => cs.iter().map(|(_, c)| c.leaves()).sum(),
            TypeNode::Omega(cs) | TypeNode::OmegaStar(cs) => cs.iter().map(|c| c.leaves()).sum(),
        }
    }
}

impl fmt::Display for TypeNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn list<T>(f: &mut fmt::Formatter<'_>, items: &[T], each: impl Fn(&mut fmt::Formatter<'_>, &T) -> fmt::Result) -> fmt::Result {
            f.write_str("{")?;
            for (i, it) in items.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                each(f, it)?;
            }
            f.write_str("}")
        }
        match self {
            TypeNode::Leaf => f.write_str("1"),
            TypeNode::Plus(cs) => {
                f.write_str("+")?;
                list(f, cs, |f, (i, c)| write!(f, "{i}:{c}"))
            }
            TypeNode::Omega(cs) => {
                f.write_str("w")?;
                list(f, cs, |f, c| write!(f, "{c}"))
            }
            TypeNode::OmegaStar(cs) => {
                f.write_str("w*")?;
                list(f, cs, |f, c| write!(f, "{c}"))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum VertexLabel {
    #[serde(rename = "1")]
    Point,
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "ω")]
    Omega,
    #[serde(rename = "ω*")]
    OmegaStar,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TypeEdge {
    pub vertex: usize,
    /// `ι` index for edges out of `+`-vertices; absent for `ω`/`ω*` edges.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iota: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TypeVertex {
    pub id: usize,
    pub label: VertexLabel,
    pub children: Vec<TypeEdge>,
}

/// An `(n, σ)`-type with vertices `0..p` numbered in BFS order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TypeTree {
    pub vertices: Vec<TypeVertex>,
}

impl TypeTree {
    pub fn from_node(root: &TypeNode) -> TypeTree {
        let mut vertices = Vec::new();
        let mut queue: VecDeque<&TypeNode> = VecDeque::from([root]);
        let mut next_id = 1;
        while let Some(node) = queue.pop_front() {
            let id = vertices.len();
            let (label, kids): (VertexLabel, Vec<(Option<usize>, &TypeNode)>) = match node {
                TypeNode::Leaf => (VertexLabel::Point, Vec::new()),
                TypeNode::Plus(cs) => (VertexLabel::Plus, cs.iter().map(|(i, c)| (Some(*i), c)).collect()),
                TypeNode::Omega(cs) => (VertexLabel::Omega, cs.iter().map(|c| (None, c)).collect()),
                TypeNode::OmegaStar(cs) => (VertexLabel::OmegaStar, cs.iter().map(|c| (None, c)).collect()),
            };
            let children = kids
                .into_iter()
                .map(|(iota, c)| {
                    queue.push_back(c);
                    next_id += 1;
                    TypeEdge {
                        vertex: next_id - 1,
                        iota,
                    }
                })
                .collect();
            vertices.push(TypeVertex { id, label, children });
        }
        TypeTree { vertices }
    }

    pub fn to_node(&self) -> TypeNode {
        fn go(t: &TypeTree, v: usize) -> TypeNode {
            let vx = &t.vertices[v];
            match vx.label {
                VertexLabel::Point => TypeNode::Leaf,
                VertexLabel::Plus => TypeNode::Plus(
                    vx.children
                        .iter()
                        .map(|e| (e.iota.unwrap_or(0), go(t, e.vertex)))
                        .collect(),
                ),
                VertexLabel::Omega => TypeNode::Omega(vx.children.iter().map(|e| go(t, e.vertex)).collect()),
                VertexLabel::OmegaStar => {
                    TypeNode::OmegaStar(vx.children.iter().map(|e| go(t, e.vertex)).collect())
                }
            }
        }
        go(self, 0)
    }

    pub fn leaf_count(&self) -> usize {
        self.vertices.iter().filter(|v| v.children.is_empty()).count()
    }

    pub fn height(&self) -> usize {
        let mut depth = vec![0usize; self.vertices.len()];
        for v in &self.vertices {
            for e in &v.children {
                depth[e.vertex] = depth[v.id] + 1;
            }
        }
        depth.into_iter().max().unwrap_or(0)
    }

    /// Out-degrees of the `ω`/`ω*` vertices, in BFS order.
    pub fn omega_outdegrees(&self) -> Vec<usize> {
        self.vertices
            .iter()
            .filter(|v| matches!(v.label, VertexLabel::Omega | VertexLabel::OmegaStar))
            .map(|v| v.children.len())
            .collect()
    }

    /// Checks the structural invariants of a type: BFS numbering, leaves
    /// labelled by points, inner vertices by `+`/`ω`/`ω*`, and strictly
    /// increasing `ι` labels exactly on `+`-edges.
    pub fn is_well_formed(&self) -> bool {
        if self.vertices.is_empty() {
            return false;
        }
        let mut expected = 1;
        for (i, v) in self.vertices.iter().enumerate() {
            if v.id != i {
                return false;
            }
            let leaf = v.children.is_empty();
            if leaf != (v.label == VertexLabel::Point) {
                return false;
            }
            for e in &v.children {
                if e.vertex != expected || e.iota.is_some() != (v.label == VertexLabel::Plus) {
                    return false;
                }
                expected += 1;
            }
            if v.label == VertexLabel::Plus && !v.children.windows(2).all(|w| w[0].iota < w[1].iota) {
                return false;
            }
        }
        expected == self.vertices.len()
    }
}

impl fmt::Display for TypeTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_node())
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::Domain("the subset size n must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// All `(n, σ)`-types of the term, without duplicates, in a deterministic order.
pub fn enumerate_types(term: &ChainTerm, n: usize) -> Result<Vec<TypeTree>> {
    check_n(n)?;
    let Some(tree) = sigma_tree(term) else {
        return Ok(Vec::new());
    };
    let count = count_on_tree(&tree, n);
    if count > BigUint::from(MAX_TYPES) {
        return Err(Error::Guard(format!("{count} types of size {n} exceed the limit of {MAX_TYPES}")));
    }
    Ok(types_on_tree(&tree, n)
        .iter()
        .map(TypeTree::from_node)
        .collect())
}

/// Number of `(n, σ)`-types, counted without materializing them.
pub fn count_types(term: &ChainTerm, n: usize) -> Result<BigUint> {
    check_n(n)?;
    Ok(sigma_tree(term).map_or_else(BigUint::zero, |t| count_on_tree(&t, n)))
}

/// Out-degrees of the `ω`/`ω*` vertices of a type, in BFS order.
pub fn omega_outdegrees(t: &TypeTree) -> Vec<usize> {
    t.omega_outdegrees()
}

// Types with exactly n points below one tree node.
fn types_on_tree(tree: &SigmaTree, n: usize) -> Vec<TypeNode> {
    match tree {
        SigmaTree::Leaf => {
            if n == 1 {
                vec![TypeNode::Leaf]
            } else {
                Vec::new()
            }
        }
        SigmaTree::Plus(children) => {
            let per_child: Vec<Vec<Vec<TypeNode>>> = children
                .iter()
                .map(|c| (0..=n).map(|k| if k == 0 { Vec::new() } else { types_on_tree(c, k) }).collect())
                .collect();
            let mut out = Vec::new();
            let mut acc = Vec::new();
            plus_rec(&per_child, 0, n, &mut acc, &mut out);
            out
        }
        SigmaTree::Omega(block) | SigmaTree::OmegaStar(block) => {
            let by_size: Vec<Vec<TypeNode>> = (0..=n)
                .map(|k| if k == 0 { Vec::new() } else { types_on_tree(block, k) })
                .collect();
            let mut out = Vec::new();
            let mut acc = Vec::new();
            seq_rec(&by_size, n, &mut acc, &mut out);
            let star = matches!(tree, SigmaTree::OmegaStar(_));
            out.into_iter()
                .map(|seq| if star { TypeNode::OmegaStar(seq) } else { TypeNode::Omega(seq) })
                .collect()
        }
    }
}

// Distribute `left` points over children `i..` of a `+`-vertex.
fn plus_rec(
    per_child: &[Vec<Vec<TypeNode>>],
    i: usize,
    left: usize,
    acc: &mut Vec<(usize, TypeNode)>,
    out: &mut Vec<TypeNode>,
) {
    if left == 0 {
        out.push(TypeNode::Plus(acc.clone()));
        return;
    }
    if i == per_child.len() {
        return;
    }
    // child i unused
    plus_rec(per_child, i + 1, left, acc, out);
    for k in 1..=left {
        for t in &per_child[i][k] {
            acc.push((i, t.clone()));
            plus_rec(per_child, i + 1, left - k, acc, out);
            acc.pop();
        }
    }
}

// Ordered sequences of block types with positive sizes summing to `left`.
fn seq_rec(by_size: &[Vec<TypeNode>], left: usize, acc: &mut Vec<TypeNode>, out: &mut Vec<Vec<TypeNode>>) {
    if left == 0 {
        if !acc.is_empty() {
            out.push(acc.clone());
        }
        return;
    }
    // larger blocks first, so fewer-block sequences come first
    for k in (1..=left).rev() {
        for t in &by_size[k] {
            acc.push(t.clone());
            seq_rec(by_size, left - k, acc, out);
            acc.pop();
        }
    }
}

fn count_on_tree(tree: &SigmaTree, n: usize) -> BigUint {
    counts_up_to(tree, n).swap_remove(n)
}

// counts[k] = number of k-types of the node, for k = 0..=n (counts[0] = 0).
fn counts_up_to(tree: &SigmaTree, n: usize) -> Vec<BigUint> {
    let mut counts = vec![BigUint::zero(); n + 1];
    match tree {
        SigmaTree::Leaf => {
            if n >= 1 {
                counts[1] = BigUint::one();
            }
        }
        SigmaTree::Plus(children) => {
            // ways[k] = ways to place k points on the children seen so far
            let mut ways = vec![BigUint::zero(); n + 1];
            ways[0] = BigUint::one();
            for c in children {
                let cc = counts_up_to(c, n);
                let mut next = ways.clone();
                for (k, w) in ways.iter().enumerate() {
                    for j in 1..=n - k {
                        next[k + j] += w * &cc[j];
                    }
                }
                ways = next;
            }
            counts[1..].clone_from_slice(&ways[1..]);
        }
        SigmaTree::Omega(block) | SigmaTree::OmegaStar(block) => {
            let cb = counts_up_to(block, n);
            // seqs[k] = nonempty-or-empty sequences with total size k
            let mut seqs = vec![BigUint::zero(); n + 1];
            seqs[0] = BigUint::one();
            for k in 1..=n {
                let mut s = BigUint::zero();
                for j in 1..=k {
                    s += &cb[j] * &seqs[k - j];
                }
                seqs[k] = s;
            }
            counts[1..].clone_from_slice(&seqs[1..]);
        }
    }
    counts
}
