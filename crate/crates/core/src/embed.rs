//! Sound, incomplete embeddability between chain terms.
//!
//! A `Yes` verdict is backed by a derivation in a small rule system; every
//! other situation is reported as `Unknown`, never as a refutation.
//!
//! Rules, on canonical terms:
//!
//! * `R1` structural equality.
//! * `R2` the empty chain embeds anywhere, a point embeds in any nonempty chain.
//! * `R3` a finite chain embeds in any infinite chain and in any finite chain that is no smaller.
//! * `R4` summand-wise: consecutive groups of summands of `a` go to strictly increasing summands of `b`.
//! * `R5` `Σ_ω R ↪ Σ_ω S` when `R ↪ S + … + S` (k copies).
//! * `R6` `a ↪ Σ_ω S` when `a ↪ S^k` or `a ↪ S^k + Σ_ω S`, for `k` up to the unroll depth.
//! * `R7` `a ↪ b_0 + … + b_l` when `a ↪ b_j`.
//! * `R8` every rule is also tried on the reversed pair.
//! * `R9` `Σ_ω R ↪ c + Σ_ω R`.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::Serialize;

use crate::term::ChainTerm;

pub const DEFAULT_UNROLL: usize = 4;
const DEFAULT_MAX_DEPTH: usize = 40;
const DEFAULT_BUDGET: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Outcome {
    Yes,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbedVerdict {
    pub outcome: Outcome,
    /// Rule names of the derivation, in application order; empty unless `Yes`.
    pub trace: Vec<String>,
}

impl EmbedVerdict {
    fn from_proof(proof: Option<Vec<&'static str>>) -> EmbedVerdict {
        match proof {
            Some(rules) => EmbedVerdict {
                outcome: Outcome::Yes,
                trace: rules.into_iter().map(String::from).collect(),
            },
            None => EmbedVerdict::unknown(),
        }
    }

    fn unknown() -> EmbedVerdict {
        EmbedVerdict {
            outcome: Outcome::Unknown,
            trace: Vec::new(),
        }
    }

    pub fn is_yes(&self) -> bool {
        self.outcome == Outcome::Yes
    }
}

type Proof = Vec<&'static str>;
type Pair = (ChainTerm, ChainTerm);

/// One embeddability query with its own memo table.
pub struct EmbedChecker {
    unroll: usize,
    max_depth: usize,
    budget: usize,
    calls: usize,
    memo: HashMap<Pair, Option<Proof>>,
    active: HashSet<Pair>,
    shape: HashMap<ChainTerm, Shape>,
}

/// Embedding-monotone facts about a term: its rank, whether it is
/// well-ordered, and whether its reverse is.
#[derive(Clone, Copy)]
struct Shape {
    rank: usize,
    well_ordered: bool,
    reverse_well_ordered: bool,
}

impl Default for EmbedChecker {
    fn default() -> Self {
        EmbedChecker::new(DEFAULT_UNROLL)
    }
}

impl EmbedChecker {
    pub fn new(unroll: usize) -> EmbedChecker {
        EmbedChecker {
            unroll: unroll.max(1),
            max_depth: DEFAULT_MAX_DEPTH,
            budget: DEFAULT_BUDGET,
            calls: 0,
            memo: HashMap::new(),
            active: HashSet::new(),
            shape: HashMap::new(),
        }
    }

    pub fn with_budget(mut self, max_depth: usize, calls: usize) -> EmbedChecker {
        self.max_depth = max_depth;
        self.budget = calls;
        self
    }

    pub fn embeds(&mut self, a: &ChainTerm, b: &ChainTerm) -> EmbedVerdict {
        let proof = self.prove(&a.canonicalize(), &b.canonicalize(), 0);
        EmbedVerdict::from_proof(proof)
    }

    fn prove(&mut self, a: &ChainTerm, b: &ChainTerm, depth: usize) -> Option<Proof> {
        let direct = (a.clone(), b.clone());
        if let Some(hit) = self.memo.get(&direct) {
            return hit.clone();
        }
        // a pair and its mirror image are the same question
        let mirrored = (a.reverse(), b.reverse());
        let key = if mirrored < direct { mirrored } else { direct };
        if self.active.contains(&key) || depth > self.max_depth || self.calls >= self.budget {
            return None;
        }
        self.calls += 1;
        let (x, y) = &key;
        if self.refuted(x, y) {
            self.remember(key, None);
            return None;
        }
        self.active.insert(key.clone());

        let mut proof = self.rules(x, y, depth);
        if proof.is_none() {
            let (rx, ry) = (x.reverse(), y.reverse());
            if (&rx, &ry) != (x, y) {
                proof = self.rules(&rx, &ry, depth).map(|mut p| {
                    p.insert(0, "R8");
                    p
                });
            }
        }
        self.active.remove(&key);
        self.remember(key, proof.clone());
        proof
    }

    // stores the answer under both orientations so lookups need no reversal
    fn remember(&mut self, key: Pair, proof: Option<Proof>) {
        let mirrored = (key.0.reverse(), key.1.reverse());
        if mirrored != key {
            self.memo.insert(mirrored, proof.clone());
        }
        self.memo.insert(key, proof);
    }

    fn rules(&mut self, a: &ChainTerm, b: &ChainTerm, depth: usize) -> Option<Proof> {
        if a == b {
            return Some(vec!["R1"]);
        }
        if a.is_zero() || (*a == ChainTerm::One && !b.is_zero()) {
            return Some(vec!["R2"]);
        }
        match (a.size_if_finite(), b.size_if_finite()) {
            (Some(n), Some(m)) => return (n <= m).then(|| vec!["R3"]),
            (Some(_), None) => return Some(vec!["R3"]),
            (None, Some(_)) => return None,
            (None, None) => {}
        }
        if let (ChainTerm::OmegaSum { .. }, ChainTerm::FinSum(bs)) = (a, b) {
            if bs.last() == Some(a) {
                return Some(vec!["R9"]);
            }
        }
        if let (ChainTerm::OmegaSum { repeat: r, .. }, ChainTerm::OmegaSum { repeat: s, .. }) = (a, b) {
            for k in 1..=self.unroll {
                if let Some(p) = self.prove(r, &repeated(s, k), depth + 1) {
                    return Some(prepend("R5", p));
                }
            }
        }
        if let Some(p) = self.summandwise(a, b, depth) {
            return Some(p);
        }
        if let ChainTerm::OmegaSum { repeat: s, .. } = b {
            for k in 1..=self.unroll {
                if let Some(p) = self.prove(a, &repeated(s, k), depth + 1) {
                    return Some(prepend("R6", p));
                }
                let mut unrolled = vec![s.as_ref().clone(); k];
                unrolled.push(b.clone());
                let target = ChainTerm::flatten_sum(unrolled);
                if let Some(p) = self.prove(a, &target, depth + 1) {
                    return Some(prepend("R6", p));
                }
            }
        }
        None
    }

    fn shape(&mut self, t: &ChainTerm) -> Shape {
        if let Some(s) = self.shape.get(t) {
            return *s;
        }
        let s = Shape {
            rank: crate::condense::fc_rank(t).unwrap_or(0),
            // `t` is canonical
            well_ordered: !t.contains_infinite_sum(true),
            reverse_well_ordered: !t.contains_infinite_sum(false),
        };
        self.shape.insert(t.clone(), s);
        s
    }

    /// Necessary conditions for `a ↪ b`: ranks cannot grow, and suborders of
    /// well-ordered (or reverse well-ordered) chains are again so. Failing one
    /// proves non-embeddability, which the search then need not explore.
    fn refuted(&mut self, a: &ChainTerm, b: &ChainTerm) -> bool {
        if a.is_zero() || b.is_zero() {
            return false;
        }
        let (sa, sb) = (self.shape(a), self.shape(b));
        sa.rank > sb.rank
            || (sb.well_ordered && !sa.well_ordered)
            || (sb.reverse_well_ordered && !sa.reverse_well_ordered)
    }

    /// R4/R7: split `a` into consecutive groups mapped to increasing summands of `b`.
    fn summandwise(&mut self, a: &ChainTerm, b: &ChainTerm, depth: usize) -> Option<Proof> {
        let xs = summands(a);
        let ys = summands(b);
        if xs.len() == 1 && ys.len() == 1 {
            return None;
        }
        let rule = if xs.len() > 1 { "R4" } else { "R7" };
        let mut failed = HashSet::new();
        let proof = self.match_groups(a, b, &xs, &ys, 0, 0, depth, &mut failed)?;
        Some(prepend(rule, proof))
    }

    #[allow(clippy::too_many_arguments)]
    fn match_groups(
        &mut self,
        a: &ChainTerm,
        b: &ChainTerm,
        xs: &[ChainTerm],
        ys: &[ChainTerm],
        i: usize,
        j: usize,
        depth: usize,
        failed: &mut HashSet<(usize, usize)>,
    ) -> Option<Proof> {
        if i == xs.len() {
            return Some(Vec::new());
        }
        if j == ys.len() || failed.contains(&(i, j)) {
            return None;
        }
        for target in j..ys.len() {
            for end in (i + 1..=xs.len()).rev() {
                let group = ChainTerm::flatten_sum(xs[i..end].to_vec());
                if group == *a && ys[target] == *b {
                    continue;
                }
                if let Some(mut p) = self.prove(&group, &ys[target], depth + 1) {
                    if let Some(rest) = self.match_groups(a, b, xs, ys, end, target + 1, depth, failed) {
                        p.extend(rest);
                        return Some(p);
                    }
                }
            }
        }
        failed.insert((i, j));
        None
    }
}

fn summands(t: &ChainTerm) -> Vec<ChainTerm> {
    match t {
        ChainTerm::FinSum(cs) => cs.clone(),
        other => vec![other.clone()],
    }
}

fn repeated(s: &ChainTerm, k: usize) -> ChainTerm {
    ChainTerm::flatten_sum(vec![s.clone(); k])
}

fn prepend(rule: &'static str, mut p: Proof) -> Proof {
    p.insert(0, rule);
    p
}

/// Whether `a ↪ b` can be certified.
pub fn embeds(a: &ChainTerm, b: &ChainTerm) -> EmbedVerdict {
    EmbedChecker::default().embeds(a, b)
}

/// `a ≡ b`: both directions certified.
pub fn equivalent(a: &ChainTerm, b: &ChainTerm) -> EmbedVerdict {
    let there = embeds(a, b);
    let back = embeds(b, a);
    if there.is_yes() && back.is_yes() {
        let mut trace: Vec<String> = there.trace.iter().map(|r| format!("fwd:{r}")).collect();
        trace.extend(back.trace.iter().map(|r| format!("bwd:{r}")));
        EmbedVerdict {
            outcome: Outcome::Yes,
            trace,
        }
    } else {
        EmbedVerdict::unknown()
    }
}

/// Which block indices of an infinite sum to drop. The kept index set is
/// cofinite; finite-sum children are never dropped.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RestrictionSpec {
    pub dropped: BTreeSet<usize>,
    /// Child-index path (as in [`ChainTerm::walk`]) of the one infinite sum
    /// to restrict; `None` restricts every infinite sum.
    pub target: Option<Vec<usize>>,
}

impl RestrictionSpec {
    pub fn drop(indices: impl IntoIterator<Item = usize>) -> RestrictionSpec {
        RestrictionSpec {
            dropped: indices.into_iter().collect(),
            target: None,
        }
    }

    pub fn at(mut self, path: Vec<usize>) -> RestrictionSpec {
        self.target = Some(path);
        self
    }
}

/// Restricts the block index sets of infinite sums to the kept indices.
///
/// Operates on the term as written, since canonical terms have no prefixes
/// and restriction of the constant tail is the identity. Returns a canonical
/// term. A target path that does not address an infinite sum leaves the term
/// unchanged.
pub fn restrict(term: &ChainTerm, spec: &RestrictionSpec) -> ChainTerm {
    fn go(t: &ChainTerm, spec: &RestrictionSpec, path: &mut Vec<usize>) -> ChainTerm {
        let applies = spec.target.as_deref().is_none_or(|p| p == path.as_slice());
        let recurse = |cs: &[ChainTerm], offset: usize, path: &mut Vec<usize>| -> Vec<ChainTerm> {
            cs.iter()
                .enumerate()
                .map(|(i, c)| {
                    path.push(offset + i);
                    let r = go(c, spec, path);
                    path.pop();
                    r
                })
                .collect()
        };
        match t {
            ChainTerm::Zero | ChainTerm::One => t.clone(),
            ChainTerm::FinSum(cs) => ChainTerm::FinSum(recurse(cs, 0, path)),
            ChainTerm::OmegaSum { prefix, repeat } | ChainTerm::OmegaStarSum { prefix, repeat } => {
                let kept: Vec<ChainTerm> = recurse(prefix, 0, path)
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !(applies && spec.dropped.contains(i)))
                    .map(|(_, c)| c)
                    .collect();
                let repeat = Box::new(recurse(std::slice::from_ref(repeat), prefix.len(), path).remove(0));
                match t {
                    ChainTerm::OmegaSum { .. } => ChainTerm::OmegaSum { prefix: kept, repeat },
                    _ => ChainTerm::OmegaStarSum { prefix: kept, repeat },
                }
            }
        }
    }
    go(term, spec, &mut Vec::new()).canonicalize()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IncreasingNode {
    /// Child-index path of the infinite sum in the term as written.
    pub path: Vec<usize>,
    pub holds: Outcome,
    /// Indices `i` whose link `block_i ↪ block_{i+1}` could not be certified.
    pub uncertified: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IncreasingReport {
    pub nodes: Vec<IncreasingNode>,
}

impl IncreasingReport {
    pub fn all_hold(&self) -> bool {
        self.nodes.iter().all(|n| n.holds == Outcome::Yes)
    }
}

/// Checks `block_0 ↪ block_1 ↪ …` for every infinite sum of the term as
/// written. Constant block sequences hold vacuously.
pub fn check_increasing(term: &ChainTerm) -> IncreasingReport {
    let mut nodes = Vec::new();
    term.walk(&mut |path, t| {
        if let ChainTerm::OmegaSum { prefix, repeat } | ChainTerm::OmegaStarSum { prefix, repeat } = t {
            let blocks: Vec<&ChainTerm> = prefix.iter().chain(std::iter::once(repeat.as_ref())).collect();
            let uncertified: Vec<usize> = blocks
                .windows(2)
                .enumerate()
                .filter(|(_, w)| !embeds(w[0], w[1]).is_yes())
                .map(|(i, _)| i)
                .collect();
            nodes.push(IncreasingNode {
                path: path.to_vec(),
                holds: if uncertified.is_empty() {
                    Outcome::Yes
                } else {
                    Outcome::Unknown
                },
                uncertified,
            });
        }
    });
    IncreasingReport { nodes }
}

/// Certifies that restricting the block index sets yields an equivalent chain.
pub fn lemma_eq_check(term: &ChainTerm, spec: &RestrictionSpec) -> EmbedVerdict {
    let restricted = restrict(term, spec);
    equivalent(&term.canonicalize(), &restricted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    fn p(s: &str) -> ChainTerm {
        parse(s).unwrap()
    }

    fn yes(a: &str, b: &str) -> bool {
        embeds(&p(a), &p(b)).is_yes()
    }

    #[test]
    fn embeds_examples() {
        assert!(yes("w[1]", "w*[1] + w[1]"));
        assert!(!yes("w[1] + 1", "w[1]"));
        assert!(yes("w[1]", "w[w[1]]"));
    }

    #[test]
    fn equivalent_examples() {
        assert!(equivalent(&p("1 + w[1]"), &p("w[1]")).is_yes());
        assert!(!equivalent(&p("w[1]"), &p("w*[1]")).is_yes());
        for s in ["1", "w[1] + 3", "w*[w[1]] + w[2]", "w^(+,-,+)"] {
            assert!(equivalent(&p(s), &p(s)).is_yes());
        }
    }

    #[test]
    fn basic_rules() {
        assert!(yes("0", "0"));
        assert!(yes("1", "w*[1]"));
        assert!(!yes("1", "0"));
        assert!(yes("3", "w*[1]"));
        assert!(yes("3", "2 + 2"));
        assert!(!yes("5", "2 + 2"));
        assert!(!yes("w[1]", "7"));
        assert!(!yes("w*[1]", "w[1]"));
        assert!(!yes("w[1]", "w*[1]"));
        assert!(yes("w*[1]", "w*[1] + w[1]"));
        assert!(yes("w[2]", "w[1]"));
        assert!(yes("w[1]", "w[2]"));
        assert!(yes("w[1] + w[1]", "w[w[1]]"));
        assert!(yes("w*[1]", "w[w*[1]]"));
        assert!(yes("w[1]", "w*[w[1]]"));
    }

    #[test]
    fn trace_names_rules() {
        let v = embeds(&p("w[1]"), &p("w*[1] + w[1]"));
        assert_eq!(v.outcome, Outcome::Yes);
        assert_eq!(v.trace, vec!["R9".to_string()]);
        let v = embeds(&p("w[1]"), &p("w*[1] + w[1] + 1"));
        assert_eq!(v.trace, vec!["R7".to_string(), "R1".to_string()]);
        assert!(embeds(&p("w[1] + 1"), &p("w[1]")).trace.is_empty());
    }

    #[test]
    fn tiny_budget_gives_unknown() {
        let mut c = EmbedChecker::new(4).with_budget(0, 0);
        assert_eq!(c.embeds(&p("w[1]"), &p("w[w[1]]")).outcome, Outcome::Unknown);
    }

    #[test]
    fn restrict_examples() {
        let w = ChainTerm::omega();
        assert_eq!(restrict(&w, &RestrictionSpec::drop([0, 1, 2])), w);
        assert_eq!(restrict(&p("w[3; 1]"), &RestrictionSpec::drop([0])), w);
        let t = p("w[1] + 2");
        assert_eq!(restrict(&t, &RestrictionSpec::drop([5])), t.canonicalize());
        assert_eq!(restrict(&p("w[3; 2; 1]"), &RestrictionSpec::default()), p("3 + 2 + w[1]").canonicalize());
    }

    #[test]
    fn restrict_targets_one_node() {
        let t = p("w[2; 1] + w[3; 1]");
        let only_second = RestrictionSpec::drop([0]).at(vec![1]);
        assert_eq!(restrict(&t, &only_second), p("2 + w[1] + w[1]").canonicalize());
        let nowhere = RestrictionSpec::drop([0]).at(vec![7]);
        assert_eq!(restrict(&t, &nowhere), t.canonicalize());
    }

    #[test]
    fn increasing_examples() {
        assert!(check_increasing(&p("w[1; w[1]]")).all_hold());
        let bad = check_increasing(&p("w[w[1]; 1]"));
        assert!(!bad.all_hold());
        assert_eq!(bad.nodes[0].uncertified, vec![0]);
        assert!(check_increasing(&p("w[w*[1] + 5]")).all_hold());
        assert!(check_increasing(&p("3")).nodes.is_empty());
    }

    #[test]
    fn lemma_eq_examples() {
        assert!(lemma_eq_check(&ChainTerm::omega(), &RestrictionSpec::drop(0..10)).is_yes());
        assert!(lemma_eq_check(&ChainTerm::omega_power(2), &RestrictionSpec::drop([1, 3])).is_yes());
        assert!(lemma_eq_check(&p("w[1; w[1]]"), &RestrictionSpec::drop([0])).is_yes());
    }
}
