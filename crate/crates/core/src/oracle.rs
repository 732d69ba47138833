//! Brute-force ground truth at small scale.
//!
//! Everything here works on finite truncations of terms and enumerates
//! exhaustively, with explicit size guards instead of timeouts so results are
//! deterministic.

use std::collections::{BTreeSet, HashMap, HashSet};

use itertools::Itertools;
use serde::Serialize;

use crate::condense::theta_related;
use crate::error::{Error, Result};
use crate::ramsey::{exact_family, ExactFamily};
use crate::term::{Address, ChainTerm, Step};
use crate::types::{TypeNode, TypeTree};

/// Largest number of positions materialized by [`expand`].
pub const MAX_POSITIONS: usize = 1 << 20;
/// Largest number of subsets or colorings any single enumeration visits.
pub const MAX_ENUMERATION: u128 = 1 << 24;

/// The first `depth` blocks of every `ω`-sum (the last `depth` of every
/// `ω*`-sum) of a canonical term, as addresses in chain order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteExpansion {
    pub term: ChainTerm,
    pub depth: usize,
    pub positions: Vec<Address>,
}

impl FiniteExpansion {
    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }
}

pub fn expand(term: &ChainTerm, depth: usize) -> Result<FiniteExpansion> {
    if depth == 0 {
        return Err(Error::Domain("expansion depth must be at least 1".into()));
    }
    let term = term.canonicalize();
    let size = expansion_size(&term, depth);
    if size > MAX_POSITIONS as u128 {
        return Err(Error::Guard(format!(
            "expanding {term} to depth {depth} gives {size} positions, limit {MAX_POSITIONS}"
        )));
    }
    let mut positions = Vec::with_capacity(size as usize);
    let mut path = Vec::new();
    expand_into(&term, depth, &mut path, &mut positions);
    Ok(FiniteExpansion { term, depth, positions })
}

fn expansion_size(t: &ChainTerm, depth: usize) -> u128 {
    match t {
        ChainTerm::Zero => 0,
        ChainTerm::One => 1,
        ChainTerm::FinSum(cs) => cs.iter().map(|c| expansion_size(c, depth)).sum(),
        ChainTerm::OmegaSum { prefix, repeat } | ChainTerm::OmegaStarSum { prefix, repeat } => {
            let p: u128 = prefix.iter().map(|c| expansion_size(c, depth)).sum();
            p.saturating_add(expansion_size(repeat, depth).saturating_mul(depth as u128))
        }
    }
}

// `t` is canonical, so ω-sums have no prefix.
fn expand_into(t: &ChainTerm, depth: usize, path: &mut Address, out: &mut Vec<Address>) {
    let visit = |step: Step, child: &ChainTerm, path: &mut Address, out: &mut Vec<Address>| {
        path.push(step);
        expand_into(child, depth, path, out);
        path.pop();
    };
    match t {
        ChainTerm::Zero => {}
        ChainTerm::One => out.push(path.clone()),
        ChainTerm::FinSum(cs) => {
            for (i, c) in cs.iter().enumerate() {
                visit(Step::Iota(i), c, path, out);
            }
        }
        ChainTerm::OmegaSum { repeat, .. } => {
            for k in 0..depth {
                visit(Step::Block(k), repeat, path, out);
            }
        }
        ChainTerm::OmegaStarSum { repeat, .. } => {
            for k in (0..depth).rev() {
                visit(Step::Block(k), repeat, path, out);
            }
        }
    }
}

/// The type of the subset at the given positions: the subtree of the term
/// tree spanned by their addresses, keeping `ι` labels only.
pub fn classify_embedding(exp: &FiniteExpansion, points: &[usize]) -> Result<TypeTree> {
    if points.is_empty() {
        return Err(Error::Domain("cannot classify an empty subset".into()));
    }
    if !points.windows(2).all(|w| w[0] < w[1]) || points[points.len() - 1] >= exp.len() {
        return Err(Error::Domain(format!(
            "points must be strictly increasing positions below {}",
            exp.len()
        )));
    }
    let addrs: Vec<&[Step]> = points.iter().map(|&p| exp.positions[p].as_slice()).collect();
    Ok(TypeTree::from_node(&type_of(&exp.term, &addrs)))
}

// Addresses are in chain order, so each child's share is a contiguous run.
fn type_of(t: &ChainTerm, addrs: &[&[Step]]) -> TypeNode {
    if *t == ChainTerm::One {
        return TypeNode::Leaf;
    }
    let groups: Vec<(Step, Vec<&[Step]>)> = addrs
        .iter()
        .chunk_by(|a| a[0])
        .into_iter()
        .map(|(step, g)| (step, g.map(|a| &a[1..]).collect()))
        .collect();
    match t {
        ChainTerm::FinSum(cs) => TypeNode::Plus(
            groups
                .into_iter()
                .map(|(step, g)| match step {
                    Step::Iota(i) => (i, type_of(&cs[i], &g)),
                    Step::Block(_) => unreachable!("finite sums are addressed by ι"),
                })
                .collect(),
        ),
        ChainTerm::OmegaSum { repeat, .. } | ChainTerm::OmegaStarSum { repeat, .. } => {
            let seq = groups.into_iter().map(|(_, g)| type_of(repeat, &g)).collect();
            if matches!(t, ChainTerm::OmegaSum { .. }) {
                TypeNode::Omega(seq)
            } else {
                TypeNode::OmegaStar(seq)
            }
        }
        ChainTerm::One | ChainTerm::Zero => unreachable!("leaves handled above, no positions in 0"),
    }
}

fn check_enumeration(what: &str, count: u128) -> Result<()> {
    if count > MAX_ENUMERATION {
        Err(Error::Guard(format!("{what} would visit {count} cases, limit {MAX_ENUMERATION}")))
    } else {
        Ok(())
    }
}

fn binomial_u128(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128) / (i as u128 + 1))
}

/// The types of all `n`-subsets of `expand(term, depth)`.
pub fn realized_types(term: &ChainTerm, n: usize, depth: usize) -> Result<BTreeSet<TypeTree>> {
    if n == 0 {
        return Err(Error::Domain("the subset size n must be at least 1".into()));
    }
    let exp = expand(term, depth)?;
    check_enumeration("realized_types", binomial_u128(exp.len(), n))?;
    (0..exp.len())
        .combinations(n)
        .map(|pts| classify_embedding(&exp, &pts))
        .collect()
}

/// Number of distinct joint order patterns of tuples of strictly increasing
/// sequences of lengths `m` drawn from `{1..ground}`.
pub fn brute_pattern_count(m: &[usize], ground: usize) -> Result<u64> {
    let total: usize = m.iter().sum();
    if ground > 8 {
        return Err(Error::Guard(format!("ground set {ground} exceeds 8")));
    }
    if total > ground {
        return Err(Error::Domain(format!(
            "a ground set of {ground} cannot host sequences of total length {total}"
        )));
    }
    let mut patterns: HashSet<Vec<Vec<usize>>> = HashSet::new();
    let choices = m.iter().map(|&mi| (1..=ground).combinations(mi).collect::<Vec<_>>());
    for tuple in choices.multi_cartesian_product() {
        // rank-compress the values actually used
        let used: Vec<usize> = tuple.iter().flatten().copied().sorted().dedup().collect();
        let rank = |v: &usize| used.binary_search(v).expect("value is used");
        patterns.insert(tuple.iter().map(|seq| seq.iter().map(rank).collect()).collect());
    }
    // multi_cartesian_product yields nothing for an empty factor list
    Ok(if m.is_empty() { 1 } else { patterns.len() as u64 })
}

/// Whether every `k`-coloring of the `n`-subsets of `{1..big_n}` has a
/// monochromatic `m`-subset, by exhausting all colorings.
pub fn ramsey_check(big_n: usize, n: usize, k: usize, m: usize) -> Result<bool> {
    if n == 0 || k == 0 {
        return Err(Error::Domain("need n ≥ 1 and at least one color".into()));
    }
    let subsets: Vec<Vec<usize>> = (0..big_n).combinations(n).collect();
    let colorings = (k as u128).checked_pow(subsets.len() as u32).unwrap_or(u128::MAX);
    check_enumeration("ramsey_check", colorings)?;
    if m < n {
        // m-subsets contain no n-subsets and are vacuously monochromatic
        return Ok(big_n >= m);
    }
    let index: HashMap<&[usize], usize> = subsets.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
    let targets: Vec<Vec<usize>> = (0..big_n)
        .combinations(m)
        .map(|sup| sup.into_iter().combinations(n).map(|s| index[s.as_slice()]).collect())
        .collect();
    if targets.is_empty() {
        return Ok(false);
    }
    let mut coloring = vec![0usize; subsets.len()];
    loop {
        let monochromatic = targets
            .iter()
            .any(|t| t.iter().all(|&e| coloring[e] == coloring[t[0]]));
        if !monochromatic {
            return Ok(false);
        }
        // next coloring in base k
        let mut i = 0;
        while i < coloring.len() && coloring[i] + 1 == k {
            coloring[i] = 0;
            i += 1;
        }
        if i == coloring.len() {
            return Ok(true);
        }
        coloring[i] += 1;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessVerdict {
    /// Every copy at this scale realizes at least `t` colors.
    HoldsAtScale,
    Fails,
    /// The term is outside the supported family.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub verdict: WitnessVerdict,
    pub scale: usize,
    /// Fewest colors seen in a copy; absent when inconclusive.
    pub min_colors: Option<usize>,
    pub copies: usize,
}

/// Checks at scale `N` the lower-bound coloring for chains equivalent to
/// `ω + r` (or `r + ω*`): an `n`-subset is colored by the set of tail points
/// it contains, the `ω`-part carrying the constant coloring. Copies of the
/// depth `N − 1` truncation fix the tail pointwise and map the `ω`-part
/// increasingly, so each one omits exactly one `ω`-point.
pub fn witness_lower_bound(term: &ChainTerm, n: usize, t: usize, big_n: usize) -> Result<WitnessReport> {
    let inconclusive = WitnessReport {
        verdict: WitnessVerdict::Inconclusive,
        scale: big_n,
        min_colors: None,
        copies: 0,
    };
    let r = match exact_family(term) {
        Some(ExactFamily::OmegaPlus(r)) => r,
        _ => return Ok(inconclusive),
    };
    if n == 0 {
        return Err(Error::Domain("the subset size n must be at least 1".into()));
    }
    if big_n < n + r + 2 {
        return Err(Error::Domain(format!("scale {big_n} is below n + r + 2 = {}", n + r + 2)));
    }
    // points 0..big_n are the ω-part, big_n.. the tail
    let ground = big_n + r;
    check_enumeration("witness_lower_bound", binomial_u128(ground - 1, n).saturating_mul(big_n as u128))?;
    let color = |s: &[usize]| -> Vec<usize> { s.iter().copied().filter(|&p| p >= big_n).collect() };
    let mut min_colors = usize::MAX;
    for omitted in 0..big_n {
        let image: Vec<usize> = (0..ground).filter(|&p| p != omitted).collect();
        let colors: HashSet<Vec<usize>> = image.iter().copied().combinations(n).map(|s| color(&s)).collect();
        min_colors = min_colors.min(colors.len());
    }
    Ok(WitnessReport {
        verdict: if min_colors >= t {
            WitnessVerdict::HoldsAtScale
        } else {
            WitnessVerdict::Fails
        },
        scale: big_n,
        min_colors: Some(min_colors),
        copies: big_n,
    })
}

/// Result of comparing the pointwise condensation relation with a direct
/// interval count on a finite expansion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThetaCheck {
    pub depth: usize,
    pub positions: usize,
    /// Classes of the relation "the interval between the two points has the
    /// same size at depth `N` and `2N`", restricted to the expansion.
    pub oracle_classes: usize,
    /// Pairs on which that relation and [`theta_related`] disagree.
    pub mismatches: usize,
}

impl ThetaCheck {
    pub fn consistent(&self) -> bool {
        self.mismatches == 0
    }
}

/// An interval of a chain is finite iff its truncations stop growing, so two
/// points of `expand(t, N)` are oracle-related iff the number of positions
/// between them is the same in `expand(t, N)` and `expand(t, 2N)`.
pub fn theta_check(term: &ChainTerm, depth: usize) -> Result<ThetaCheck> {
    let small = expand(term, depth)?;
    let large = expand(term, 2 * depth)?;
    check_enumeration("theta_check", binomial_u128(small.len(), 2))?;
    let at: HashMap<&Address, usize> = large.positions.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let big_index: Vec<usize> = small.positions.iter().map(|a| at[a]).collect();
    let related = |i: usize, j: usize| big_index[j] - big_index[i] == j - i;
    let mut mismatches = 0;
    for j in 0..small.len() {
        for i in 0..j {
            if related(i, j) != theta_related(&small.term, &small.positions[i], &small.positions[j]) {
                mismatches += 1;
            }
        }
    }
    // the relation is convex, so classes are maximal runs of related neighbours
    let oracle_classes = if small.is_empty() {
        0
    } else {
        1 + (1..small.len()).filter(|&j| !related(j - 1, j)).count()
    };
    Ok(ThetaCheck {
        depth,
        positions: small.len(),
        oracle_classes,
        mismatches,
    })
}

/// Cantor normal form `ω^{e_1}·c_1 + … + ω^{e_k}·c_k` with `e_1 > … > e_k`
/// and all `c_i ≥ 1`, as `(e_i, c_i)` pairs. The derived order on the pairs
/// is the ordinal order.
pub type Cnf = Vec<(usize, usize)>;

/// The order type of a well-ordered term; `None` otherwise. Well-ordered
/// chains embed into each other exactly when their ordinals compare.
pub fn ordinal(term: &ChainTerm) -> Option<Cnf> {
    fn go(t: &ChainTerm) -> Option<Cnf> {
        match t {
            ChainTerm::Zero => Some(Vec::new()),
            ChainTerm::One => Some(vec![(0, 1)]),
            ChainTerm::FinSum(cs) => cs.iter().try_fold(Vec::new(), |acc, c| Some(ordinal_add(acc, go(c)?))),
            ChainTerm::OmegaSum { prefix, repeat } => {
                let head = prefix.iter().try_fold(Vec::new(), |acc, c| Some(ordinal_add(acc, go(c)?)))?;
                // R·ω = ω^(e+1) for the leading exponent e of R
                let e = go(repeat)?.first()?.0;
                Some(ordinal_add(head, vec![(e + 1, 1)]))
            }
            ChainTerm::OmegaStarSum { .. } => None,
        }
    }
    if term.is_well_ordered() {
        go(&term.canonicalize())
    } else {
        None
    }
}

fn ordinal_add(mut a: Cnf, b: Cnf) -> Cnf {
    let Some(&(lead, c)) = b.first() else { return a };
    // summands of a below ω^lead are absorbed
    a.retain(|&(e, _)| e >= lead);
    match a.last_mut() {
        Some((e, ca)) if *e == lead => *ca += c,
        _ => a.push((lead, c)),
    }
    a.extend_from_slice(&b[1..]);
    a
}

/// All nonempty canonical terms with at most `max_nodes` constructor nodes
/// before canonicalization, built from points, finite sums and prefix-free
/// `ω`/`ω*`-sums.
pub fn small_terms(max_nodes: usize) -> BTreeSet<ChainTerm> {
    // exact[k] = raw terms with exactly k nodes
    let mut exact: Vec<Vec<ChainTerm>> = vec![Vec::new(), vec![ChainTerm::One]];
    for k in 2..=max_nodes {
        let mut here: Vec<ChainTerm> = Vec::new();
        for r in &exact[k - 1] {
            here.push(ChainTerm::omega_of(r.clone()));
            here.push(ChainTerm::omega_star_of(r.clone()));
        }
        // finite sums of at least two children sharing k - 1 nodes
        let mut stack: Vec<(Vec<ChainTerm>, usize)> = vec![(Vec::new(), k - 1)];
        while let Some((children, left)) = stack.pop() {
            if left == 0 {
                if children.len() >= 2 {
                    here.push(ChainTerm::FinSum(children));
                }
                continue;
            }
            for size in 1..=left {
                for c in &exact[size] {
                    let mut next = children.clone();
                    next.push(c.clone());
                    stack.push((next, left - size));
                }
            }
        }
        exact.push(here);
    }
    exact.into_iter().flatten().map(|t| t.canonicalize()).collect()
}

/// Number of permutations `σ` of `len` elements with `σ_1 < σ_2 > σ_3 < …`.
pub fn alternating_permutations(len: usize) -> Result<u64> {
    if len > 9 {
        return Err(Error::Guard(format!("{len}! permutations exceeds the enumeration limit")));
    }
    Ok((0..len)
        .permutations(len)
        .filter(|p| p.windows(2).enumerate().all(|(i, w)| (w[0] < w[1]) == (i % 2 == 0)))
        .count() as u64)
}
