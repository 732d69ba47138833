//! Finite condensation as a term rewrite.
//!
//! Two points are identified when only finitely many points lie between
//! them. The quotient of a term is computed structurally: adjacent summands
//! share a class exactly when the left one has a greatest point and the right
//! one a least point, which is read off the [`TailDescriptor`]s.
//!
//! [`TailDescriptor`]: crate::term::TailDescriptor

use crate::error::{Error, Result};
use crate::term::{ChainTerm, Step, Tail};

/// The finite condensation `A/θ_A` of a nonempty term, in canonical form.
pub fn fin_condense(term: &ChainTerm) -> Result<ChainTerm> {
    let t = term.canonicalize();
    if t.is_zero() {
        return Err(Error::ZeroInput("finite condensation"));
    }
    Ok(condense(&t))
}

/// Number of condensation steps until the term collapses to a point.
pub fn fc_rank(term: &ChainTerm) -> Result<usize> {
    let mut t = term.canonicalize();
    if t.is_zero() {
        return Err(Error::ZeroInput("condensation rank"));
    }
    // the ω-nesting depth drops by one per step, and finite chains collapse in one
    let bound = t.omega_depth() + 1;
    for rank in 0..=bound {
        if t == ChainTerm::One {
            return Ok(rank);
        }
        t = condense(&t);
    }
    Err(Error::Domain(format!("condensation of {term} did not reach a point within {bound} steps")))
}

/// Same quantity as [`fc_rank`]; for countable scattered chains the finite
/// condensation rank and the Hausdorff rank agree.
pub fn hausdorff_rank(term: &ChainTerm) -> Result<usize> {
    fc_rank(term)
}

/// The sequence `A, A^[1], A^[2], …, 1` of iterated condensations.
pub fn condense_steps(term: &ChainTerm) -> Result<Vec<ChainTerm>> {
    let mut t = term.canonicalize();
    if t.is_zero() {
        return Err(Error::ZeroInput("condensation rank"));
    }
    // the ω-nesting depth drops by one per step, and finite chains collapse in one
    let bound = t.omega_depth() + 1;
    let mut steps = vec![t.clone()];
    while t != ChainTerm::One {
        if steps.len() > bound {
            return Err(Error::Domain(format!(
                "condensation of {term} did not reach a point within {bound} steps"
            )));
        }
        t = condense(&t);
        steps.push(t.clone());
    }
    Ok(steps)
}

// `t` is canonical and nonzero; so is the result.
fn condense(t: &ChainTerm) -> ChainTerm {
    if t.is_finite() {
        return ChainTerm::One;
    }
    match t {
        ChainTerm::FinSum(children) => {
            let mut pieces: Vec<ChainTerm> = Vec::with_capacity(children.len());
            let mut open_right = false;
            for child in children {
                let tails = child.tails();
                let c = condense(child);
                if open_right && tails.left == Tail::Fin {
                    // the shared class leaves both neighbours and sits between
                    // them as one point, so the result is mirror-symmetric
                    while pieces.last().is_some_and(|p| p.is_zero()) {
                        pieces.pop();
                    }
                    let prev = pieces.pop().expect("a FIN right tail comes from a nonempty piece");
                    pieces.push(prev.drop_last().expect("a chain with a greatest point condenses to one"));
                    pieces.push(ChainTerm::One);
                    pieces.push(c.drop_first().expect("a chain with a least point condenses to one"));
                } else {
                    pieces.push(c);
                }
                open_right = tails.right == Tail::Fin;
            }
            ChainTerm::flatten_sum(pieces)
        }
        ChainTerm::OmegaSum { repeat, .. } | ChainTerm::OmegaStarSum { repeat, .. } => {
            let block = repeat.as_ref();
            if block.is_finite() {
                return ChainTerm::One;
            }
            let tails = block.tails();
            let cb = condense(block);
            let forward = matches!(t, ChainTerm::OmegaSum { .. });
            if tails.left == Tail::Inf || tails.right == Tail::Inf {
                return if forward {
                    ChainTerm::omega_of(cb)
                } else {
                    ChainTerm::omega_star_of(cb)
                };
            }
            // fin(B) = first + M + last; the last class of each block fuses
            // with the first class of the next one in chain order
            let middle = cb
                .drop_first()
                .and_then(|m| m.drop_last())
                .expect("an infinite chain with both endpoints has at least two classes");
            if forward {
                ChainTerm::flatten_sum(vec![
                    ChainTerm::One,
                    ChainTerm::omega_of(ChainTerm::flatten_sum(vec![middle, ChainTerm::One])),
                ])
            } else {
                ChainTerm::flatten_sum(vec![
                    ChainTerm::omega_star_of(ChainTerm::flatten_sum(vec![ChainTerm::One, middle])),
                    ChainTerm::One,
                ])
            }
        }
        ChainTerm::Zero | ChainTerm::One => unreachable!("finite terms handled above"),
    }
}

/// Whether the points at addresses `x` and `y` of a canonical term lie in the
/// same condensation class, decided pointwise: the closed interval between
/// them must be finite.
pub fn theta_related(term: &ChainTerm, x: &[Step], y: &[Step]) -> bool {
    if x == y {
        return true;
    }
    let (lo, hi) = if address_lt(term, x, y) { (x, y) } else { (y, x) };
    between_finite(term, lo, hi)
}

/// Chain order of two addresses in a canonical term.
pub fn address_lt(term: &ChainTerm, x: &[Step], y: &[Step]) -> bool {
    let mut t = term;
    for (a, b) in x.iter().zip(y) {
        if a != b {
            return match (t, a, b) {
                (ChainTerm::OmegaStarSum { .. }, Step::Block(i), Step::Block(j)) => i > j,
                _ => a < b,
            };
        }
        t = descend(t, *a);
    }
    false
}

fn descend(t: &ChainTerm, s: Step) -> &ChainTerm {
    match (t, s) {
        (ChainTerm::FinSum(cs), Step::Iota(i)) => &cs[i],
        (ChainTerm::OmegaSum { repeat, .. }, Step::Block(_))
        | (ChainTerm::OmegaStarSum { repeat, .. }, Step::Block(_)) => repeat,
        _ => panic!("address step {s:?} does not match term {t}"),
    }
}

fn between_finite(t: &ChainTerm, x: &[Step], y: &[Step]) -> bool {
    match (t, x[0], y[0]) {
        (_, a, b) if a == b => between_finite(descend(t, a), &x[1..], &y[1..]),
        (ChainTerm::FinSum(cs), Step::Iota(i), Step::Iota(j)) => {
            after_finite(&cs[i], &x[1..])
                && cs[i + 1..j].iter().all(|c| c.is_finite())
                && before_finite(&cs[j], &y[1..])
        }
        (ChainTerm::OmegaSum { repeat, .. }, Step::Block(i), Step::Block(j)) => {
            after_finite(repeat, &x[1..]) && (j == i + 1 || repeat.is_finite()) && before_finite(repeat, &y[1..])
        }
        (ChainTerm::OmegaStarSum { repeat, .. }, Step::Block(i), Step::Block(j)) => {
            after_finite(repeat, &x[1..]) && (i == j + 1 || repeat.is_finite()) && before_finite(repeat, &y[1..])
        }
        _ => panic!("malformed addresses for {t}"),
    }
}

fn after_finite(t: &ChainTerm, x: &[Step]) -> bool {
    match (t, x.first()) {
        (ChainTerm::One, None) => true,
        (ChainTerm::FinSum(cs), Some(&Step::Iota(i))) => {
            after_finite(&cs[i], &x[1..]) && cs[i + 1..].iter().all(|c| c.is_finite())
        }
        (ChainTerm::OmegaSum { .. }, _) => false,
        (ChainTerm::OmegaStarSum { repeat, .. }, Some(&Step::Block(k))) => {
            after_finite(repeat, &x[1..]) && (k == 0 || repeat.is_finite())
        }
        _ => panic!("malformed address for {t}"),
    }
}

fn before_finite(t: &ChainTerm, x: &[Step]) -> bool {
    match (t, x.first()) {
        (ChainTerm::One, None) => true,
        (ChainTerm::FinSum(cs), Some(&Step::Iota(i))) => {
            before_finite(&cs[i], &x[1..]) && cs[..i].iter().all(|c| c.is_finite())
        }
        (ChainTerm::OmegaStarSum { .. }, _) => false,
        (ChainTerm::OmegaSum { repeat, .. }, Some(&Step::Block(k))) => {
            before_finite(repeat, &x[1..]) && (k == 0 || repeat.is_finite())
        }
        _ => panic!("malformed address for {t}"),
    }
}
