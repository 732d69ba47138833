//! Finite terms denoting countable scattered chains.
//!
//! A term is built from the empty chain, the one-point chain, finite sums and
//! eventually constant ω- and ω*-indexed sums. An ω-sum carries a finite
//! prefix of blocks followed by a repeat block that is used for every
//! remaining index. For ω*-sums the blocks are indexed right to left, so
//! `prefix[0]` is the rightmost block.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChainTerm {
    Zero,
    One,
    FinSum(Vec<ChainTerm>),
    OmegaSum {
        prefix: Vec<ChainTerm>,
        repeat: Box<ChainTerm>,
    },
    OmegaStarSum {
        prefix: Vec<ChainTerm>,
        repeat: Box<ChainTerm>,
    },
}

/// Whether the chain has a finite initial (left) or final (right) segment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Tail {
    Fin,
    Inf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TailDescriptor {
    pub left: Tail,
    pub right: Tail,
}

impl TailDescriptor {
    pub const FINITE: TailDescriptor = TailDescriptor {
        left: Tail::Fin,
        right: Tail::Fin,
    };

    pub fn swap(self) -> TailDescriptor {
        TailDescriptor {
            left: self.right,
            right: self.left,
        }
    }
}

impl fmt::Display for TailDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = |t: Tail| match t {
            Tail::Fin => "FIN",
            Tail::Inf => "INF",
        };
        write!(f, "({}, {})", s(self.left), s(self.right))
    }
}

/// One step of a root-to-leaf path in the tree view of a canonical term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Step {
    /// Child `i` of a finite sum.
    Iota(usize),
    /// Block `k` of an ω- or ω*-sum (block index, not chain position).
    Block(usize),
}

pub type Address = Vec<Step>;

/// Orientation of an infinite sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl ChainTerm {
    /// The finite chain with `n` points.
    pub fn finite(n: usize) -> ChainTerm {
        match n {
            0 => ChainTerm::Zero,
            1 => ChainTerm::One,
            _ => ChainTerm::FinSum(vec![ChainTerm::One; n]),
        }
    }

    pub fn omega() -> ChainTerm {
        ChainTerm::omega_of(ChainTerm::One)
    }

    pub fn omega_star() -> ChainTerm {
        ChainTerm::omega_star_of(ChainTerm::One)
    }

    /// `ω* + ω`, the integers.
    pub fn zeta() -> ChainTerm {
        ChainTerm::FinSum(vec![ChainTerm::omega_star(), ChainTerm::omega()])
    }

    /// Σ_{k∈ω} block, with an empty prefix.
    pub fn omega_of(block: ChainTerm) -> ChainTerm {
        ChainTerm::OmegaSum {
            prefix: Vec::new(),
            repeat: Box::new(block),
        }
    }

    /// Σ_{k∈ω*} block, with an empty prefix.
    pub fn omega_star_of(block: ChainTerm) -> ChainTerm {
        ChainTerm::OmegaStarSum {
            prefix: Vec::new(),
            repeat: Box::new(block),
        }
    }

    /// `ω^k` as k nested ω-sums over a point.
    pub fn omega_power(k: usize) -> ChainTerm {
        ChainTerm::omega_delta(&vec![Sign::Plus; k])
    }

    /// `ω^(δ_0) · … · ω^(δ_{k-1})`; the last factor is the outermost sum.
    pub fn omega_delta(signs: &[Sign]) -> ChainTerm {
        signs.iter().fold(ChainTerm::One, |inner, s| match s {
            Sign::Plus => ChainTerm::omega_of(inner),
            Sign::Minus => ChainTerm::omega_star_of(inner),
        })
    }

    pub fn fin_sum(children: Vec<ChainTerm>) -> Result<ChainTerm> {
        if children.len() < 2 {
            return Err(Error::Arity(children.len()));
        }
        Ok(ChainTerm::FinSum(children))
    }

    pub fn omega_sum(prefix: Vec<ChainTerm>, repeat: ChainTerm) -> Result<ChainTerm> {
        if repeat.is_zero() {
            return Err(Error::ZeroRepeat);
        }
        Ok(ChainTerm::OmegaSum {
            prefix,
            repeat: Box::new(repeat),
        })
    }

    pub fn omega_star_sum(prefix: Vec<ChainTerm>, repeat: ChainTerm) -> Result<ChainTerm> {
        if repeat.is_zero() {
            return Err(Error::ZeroRepeat);
        }
        Ok(ChainTerm::OmegaStarSum {
            prefix,
            repeat: Box::new(repeat),
        })
    }

    /// Sum of two terms, without any simplification.
    pub fn plus(self, other: ChainTerm) -> ChainTerm {
        ChainTerm::FinSum(vec![self, other])
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ChainTerm::Zero)
    }

    /// True for `FinSum[1, 1, …]`, the printed form of a finite chain ≥ 2.
    pub(crate) fn is_all_ones(children: &[ChainTerm]) -> bool {
        children.len() >= 2 && children.iter().all(|c| *c == ChainTerm::One)
    }

    /// Cardinality of the denoted chain when it is finite.
    pub fn size_if_finite(&self) -> Option<usize> {
        match self {
            ChainTerm::Zero => Some(0),
            ChainTerm::One => Some(1),
            ChainTerm::FinSum(cs) => cs.iter().map(|c| c.size_if_finite()).sum(),
            ChainTerm::OmegaSum { prefix, repeat } | ChainTerm::OmegaStarSum { prefix, repeat } => {
                if repeat.size_if_finite() == Some(0) {
                    prefix.iter().map(|c| c.size_if_finite()).sum()
                } else {
                    None
                }
            }
        }
    }

    pub fn is_finite(&self) -> bool {
        self.size_if_finite().is_some()
    }

    /// Maximum nesting depth of infinite sums.
    pub fn omega_depth(&self) -> usize {
        match self {
            ChainTerm::Zero | ChainTerm::One => 0,
            ChainTerm::FinSum(cs) => cs.iter().map(|c| c.omega_depth()).max().unwrap_or(0),
            ChainTerm::OmegaSum { prefix, repeat } | ChainTerm::OmegaStarSum { prefix, repeat } => {
                let inner = prefix
                    .iter()
                    .chain(std::iter::once(repeat.as_ref()))
                    .map(|c| c.omega_depth())
                    .max()
                    .unwrap_or(0);
                inner + 1
            }
        }
    }

    /// Number of constructor nodes.
    pub fn node_count(&self) -> usize {
        match self {
            ChainTerm::Zero | ChainTerm::One => 1,
            ChainTerm::FinSum(cs) => 1 + cs.iter().map(|c| c.node_count()).sum::<usize>(),
            ChainTerm::OmegaSum { prefix, repeat } | ChainTerm::OmegaStarSum { prefix, repeat } => {
                1 + prefix.iter().map(|c| c.node_count()).sum::<usize>() + repeat.node_count()
            }
        }
    }

    /// Well-ordered iff no ω*-sum with an infinite tail survives canonicalization.
    pub fn is_well_ordered(&self) -> bool {
        match self.canonicalize() {
            ChainTerm::Zero | ChainTerm::One => true,
            t => !t.contains_omega_star(),
        }
    }

    /// Whether an `ω`-sum (`ω*`-sum with `star`) occurs; on canonical terms
    /// this decides (reverse) well-orderedness without canonicalizing again.
    pub(crate) fn contains_infinite_sum(&self, star: bool) -> bool {
        match self {
            ChainTerm::Zero | ChainTerm::One => false,
            ChainTerm::FinSum(cs) => cs.iter().any(|c| c.contains_infinite_sum(star)),
            ChainTerm::OmegaSum { prefix, repeat } | ChainTerm::OmegaStarSum { prefix, repeat } => {
                matches!(self, ChainTerm::OmegaStarSum { .. }) == star
                    || prefix.iter().any(|c| c.contains_infinite_sum(star))
                    || repeat.contains_infinite_sum(star)
            }
        }
    }

    fn contains_omega_star(&self) -> bool {
        match self {
            ChainTerm::Zero | ChainTerm::One => false,
            ChainTerm::FinSum(cs) => cs.iter().any(|c| c.contains_omega_star()),
            ChainTerm::OmegaSum { prefix, repeat } => {
                prefix.iter().any(|c| c.contains_omega_star()) || repeat.contains_omega_star()
            }
            ChainTerm::OmegaStarSum { .. } => true,
        }
    }

    /// The same chain with the order reversed.
    pub fn reverse(&self) -> ChainTerm {
        match self {
            ChainTerm::Zero => ChainTerm::Zero,
            ChainTerm::One => ChainTerm::One,
            ChainTerm::FinSum(cs) => ChainTerm::FinSum(cs.iter().rev().map(|c| c.reverse()).collect()),
            // block indices are kept; only the direction of the index set flips
            ChainTerm::OmegaSum { prefix, repeat } => ChainTerm::OmegaStarSum {
                prefix: prefix.iter().map(|c| c.reverse()).collect(),
                repeat: Box::new(repeat.reverse()),
            },
            ChainTerm::OmegaStarSum { prefix, repeat } => ChainTerm::OmegaSum {
                prefix: prefix.iter().map(|c| c.reverse()).collect(),
                repeat: Box::new(repeat.reverse()),
            },
        }
    }

    /// Left/right tail finiteness. A nonempty chain has a finite left tail
    /// iff it has a least element, and symmetrically on the right.
    pub fn tails(&self) -> TailDescriptor {
        TailDescriptor {
            left: self.left_tail(),
            right: self.reverse_right_tail(),
        }
    }

    fn left_tail(&self) -> Tail {
        match self {
            ChainTerm::Zero | ChainTerm::One => Tail::Fin,
            ChainTerm::FinSum(cs) => cs
                .iter()
                .find(|c| c.size_if_finite() != Some(0))
                .map_or(Tail::Fin, |c| c.left_tail()),
            ChainTerm::OmegaSum { prefix, repeat } => prefix
                .iter()
                .chain(std::iter::once(repeat.as_ref()))
                .find(|c| c.size_if_finite() != Some(0))
                .map_or(Tail::Fin, |c| c.left_tail()),
            ChainTerm::OmegaStarSum { repeat, prefix } => {
                if repeat.size_if_finite() == Some(0) {
                    // degenerate: only the prefix contributes
                    prefix
                        .iter()
                        .rev()
                        .find(|c| c.size_if_finite() != Some(0))
                        .map_or(Tail::Fin, |c| c.left_tail())
                } else {
                    Tail::Inf
                }
            }
        }
    }

    fn reverse_right_tail(&self) -> Tail {
        self.reverse().left_tail()
    }

    /// Normal form: no empty summands, flat finite sums, unary sums
    /// collapsed and ω-sum prefixes hoisted into a surrounding finite sum.
    pub fn canonicalize(&self) -> ChainTerm {
        match self {
            ChainTerm::Zero => ChainTerm::Zero,
            ChainTerm::One => ChainTerm::One,
            ChainTerm::FinSum(cs) => {
                let parts = cs.iter().map(|c| c.canonicalize()).collect();
                ChainTerm::flatten_sum(parts)
            }
            ChainTerm::OmegaSum { prefix, repeat } => {
                let repeat = repeat.canonicalize();
                let mut parts: Vec<ChainTerm> = prefix.iter().map(|c| c.canonicalize()).collect();
                if !repeat.is_zero() {
                    parts.push(ChainTerm::omega_of(repeat));
                }
                ChainTerm::flatten_sum(parts)
            }
            ChainTerm::OmegaStarSum { prefix, repeat } => {
                let repeat = repeat.canonicalize();
                let mut parts = Vec::with_capacity(prefix.len() + 1);
                if !repeat.is_zero() {
                    parts.push(ChainTerm::omega_star_of(repeat));
                }
                parts.extend(prefix.iter().rev().map(|c| c.canonicalize()));
                ChainTerm::flatten_sum(parts)
            }
        }
    }

    /// Builds a canonical sum from canonical parts.
    pub(crate) fn flatten_sum(parts: Vec<ChainTerm>) -> ChainTerm {
        let mut out = Vec::with_capacity(parts.len());
        for p in parts {
            match p {
                ChainTerm::Zero => {}
                ChainTerm::FinSum(inner) => out.extend(inner),
                other => out.push(other),
            }
        }
        match out.len() {
            0 => ChainTerm::Zero,
            1 => out.pop().unwrap(),
            _ => ChainTerm::FinSum(out),
        }
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonicalize()
    }

    /// Removes the least point. `None` when the chain has no least point.
    pub(crate) fn drop_first(&self) -> Option<ChainTerm> {
        match self {
            ChainTerm::Zero => None,
            ChainTerm::One => Some(ChainTerm::Zero),
            ChainTerm::FinSum(cs) => {
                let i = cs.iter().position(|c| c.size_if_finite() != Some(0))?;
                let mut parts = cs[..i].to_vec();
                parts.push(cs[i].drop_first()?);
                parts.extend_from_slice(&cs[i + 1..]);
                Some(ChainTerm::FinSum(parts).canonicalize())
            }
            ChainTerm::OmegaSum { .. } => match self.canonicalize() {
                ChainTerm::OmegaSum { prefix, repeat } if prefix.is_empty() => {
                    let head = repeat.drop_first()?;
                    Some(ChainTerm::FinSum(vec![head, ChainTerm::OmegaSum { prefix, repeat }]).canonicalize())
                }
                c => c.drop_first(),
            },
            ChainTerm::OmegaStarSum { .. } => match self.canonicalize() {
                ChainTerm::OmegaStarSum { .. } => None,
                c => c.drop_first(),
            },
        }
    }

    /// Removes the greatest point. `None` when the chain has no greatest point.
    pub(crate) fn drop_last(&self) -> Option<ChainTerm> {
        self.reverse().drop_first().map(|t| t.reverse())
    }

    /// Visits every node with its child-index path in the raw (non-canonical)
    /// term. For infinite sums the children are the prefix entries followed by
    /// the repeat block.
    pub fn walk<'a>(&'a self, f: &mut dyn FnMut(&[usize], &'a ChainTerm)) {
        fn go<'a>(t: &'a ChainTerm, path: &mut Vec<usize>, f: &mut dyn FnMut(&[usize], &'a ChainTerm)) {
            f(path, t);
            for (i, c) in t.children().into_iter().enumerate() {
                path.push(i);
                go(c, path, f);
                path.pop();
            }
        }
        go(self, &mut Vec::new(), f)
    }

    /// Raw children, as addressed by [`ChainTerm::walk`].
    pub fn children(&self) -> Vec<&ChainTerm> {
        match self {
            ChainTerm::Zero | ChainTerm::One => Vec::new(),
            ChainTerm::FinSum(cs) => cs.iter().collect(),
            ChainTerm::OmegaSum { prefix, repeat } | ChainTerm::OmegaStarSum { prefix, repeat } => {
                prefix.iter().chain(std::iter::once(repeat.as_ref())).collect()
            }
        }
    }
}

impl fmt::Display for ChainTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::print(self))
    }
}

/// Terms serialize as their printed text.
impl Serialize for ChainTerm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&crate::syntax::print(self))
    }
}
