//! Big Ramsey degree values and bounds.
//!
//! Upper bounds come from the type decomposition: every `n`-subset has one
//! of finitely many types, and the subsets of a fixed type are coded by
//! tuples of finite subsets of block indices, one per `ω`/`ω*` vertex. The
//! product Ramsey constant for such tuples is the number of ways the tuples
//! can be interleaved, which [`pattern_count`] computes. Summing over types
//! bounds `T(n, S)`.
//!
//! Exact values are only reported for a closed list of families where they
//! are known: finite chains, chains equivalent to `ω + r` and their reverses.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{binomial, serialize_biguint};
use crate::term::ChainTerm;
use crate::types::{enumerate_types, omega_outdegrees};

/// Number of weak-order merge patterns of `s` strictly increasing sequences
/// of lengths `m[0], …, m[s-1]`: joint placements into a common chain where
/// ties are allowed across sequences but not within one.
///
/// With `f(k) = Π_i C(k, m_i)` the number of placements into `{1..k}` and
/// `g(k)` the surjective ones, `f(k) = Σ_{j ≤ k} C(k, j) g(j)`; the table of
/// `g` is filled bottom-up and the answer is `Σ_k g(k)`.
pub fn pattern_count(m: &[usize]) -> Result<BigUint> {
    if m.contains(&0) {
        return Err(Error::Domain("pattern lengths must be at least 1".into()));
    }
    let total: usize = m.iter().sum();
    let mut onto: Vec<BigUint> = Vec::with_capacity(total + 1);
    let mut sum = BigUint::zero();
    for k in 0..=total {
        let placements: BigUint = m.iter().map(|&mi| binomial(k, mi)).product();
        let covered: BigUint = (0..k).map(|j| binomial(k, j) * &onto[j]).sum();
        let g = placements - covered;
        sum += &g;
        onto.push(g);
    }
    Ok(sum)
}

/// `Σ_τ D_τ` over all `(n, σ)`-types, with `D_τ` the pattern count of the
/// `ω`-vertex out-degrees (1 for types without `ω`-vertices, whose
/// `ι`-address fixes the realization).
pub fn spectrum_upper(term: &ChainTerm, n: usize) -> Result<BigUint> {
    if n == 0 {
        return Ok(BigUint::one());
    }
    let mut total = BigUint::zero();
    for t in enumerate_types(term, n)? {
        total += pattern_count(&omega_outdegrees(&t))?;
    }
    Ok(total)
}

/// `T(n, B + r) = Σ_{j=0}^{min(n,r)} C(r, j) · T(n − j, B)` for a chain `B`
/// without a greatest element whose self-embeddings fix the tail.
/// `spec_b` must contain `T(k, B)` for every `k` used, with `T(0, B) = 1`.
pub fn tail_formula(spec_b: &BTreeMap<usize, BigUint>, r: usize, n: usize) -> Result<BigUint> {
    let mut total = BigUint::zero();
    for j in 0..=n.min(r) {
        let t = spec_b.get(&(n - j)).ok_or(Error::MissingSpectrum(n - j))?;
        total += binomial(r, j) * t;
    }
    Ok(total)
}

/// `spec(ω)` on `0..=n`: all ones.
pub fn omega_spectrum(n: usize) -> BTreeMap<usize, BigUint> {
    (0..=n).map(|k| (k, BigUint::one())).collect()
}

/// The `n`-th tangent number `tan^{(2n−1)}(0)`, the big Ramsey degree of `n`
/// in the rationals.
pub fn devlin(n: usize) -> Result<BigUint> {
    Ok(devlin_sequence(n)?.pop().expect("n ≥ 1"))
}

/// Tangent numbers `T_1, …, T_n` by the in-place triangle recurrence
/// `T_j ← (j − k) T_{j−1} + (j − k + 2) T_j`.
pub fn devlin_sequence(n: usize) -> Result<Vec<BigUint>> {
    if n == 0 {
        return Err(Error::Domain("tangent numbers are indexed from 1".into()));
    }
    // t[j-1] holds T_j; seeded with (j-1)!
    let mut t: Vec<BigUint> = Vec::with_capacity(n);
    t.push(BigUint::one());
    for j in 1..n {
        let next = &t[j - 1] * BigUint::from(j);
        t.push(next);
    }
    for k in 2..=n {
        for j in k..=n {
            t[j - 1] = &t[j - 2] * BigUint::from(j - k) + &t[j - 1] * BigUint::from(j - k + 2);
        }
    }
    Ok(t)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SpectrumKind {
    Exact,
    UpperBound,
    /// `T(n, S) = ∞`; only chains of infinite rank have such entries, and the
    /// term grammar cannot express them.
    Infinite,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumEntry {
    pub n: usize,
    #[serde(serialize_with = "serialize_biguint")]
    pub value: BigUint,
    pub kind: SpectrumKind,
    pub provenance: String,
}

/// Exact families recognized by [`spectrum`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExactFamily {
    /// A finite chain with this many points.
    Finite(usize),
    /// Equivalent to `ω + r` or to its reverse `r + ω*`.
    OmegaPlus(usize),
}

/// Recognizes chains of the form `l + Σ_ω m + r` (isomorphic to `ω + r`) and
/// their reverses, as well as finite chains.
pub fn exact_family(term: &ChainTerm) -> Option<ExactFamily> {
    let t = term.canonicalize();
    if let Some(m) = t.size_if_finite() {
        return Some(ExactFamily::Finite(m));
    }
    omega_plus_tail(&t).or_else(|| omega_plus_tail(&t.reverse())).map(ExactFamily::OmegaPlus)
}

fn omega_plus_tail(t: &ChainTerm) -> Option<usize> {
    let omega_like = |c: &ChainTerm| matches!(c, ChainTerm::OmegaSum { repeat, .. } if repeat.is_finite());
    match t {
        c if omega_like(c) => Some(0),
        ChainTerm::FinSum(cs) => {
            let pos = cs.iter().position(omega_like)?;
            let rest_finite = cs.iter().enumerate().all(|(i, c)| i == pos || *c == ChainTerm::One);
            rest_finite.then(|| cs.len() - pos - 1)
        }
        _ => None,
    }
}

/// `T(1, S), …, T(n_max, S)`: exact on the known families, otherwise the
/// type-sum upper bound.
pub fn spectrum(term: &ChainTerm, n_max: usize) -> Result<Vec<SpectrumEntry>> {
    let t = term.canonicalize();
    if t.is_zero() {
        return Err(Error::ZeroInput("the big Ramsey spectrum"));
    }
    let family = exact_family(&t);
    if let Some(ExactFamily::Finite(m)) = family {
        if n_max > m {
            return Err(Error::Domain(format!(
                "T({n_max}, S) is undefined for a chain with {m} points"
            )));
        }
    }
    (1..=n_max)
        .map(|n| {
            let (value, kind, provenance) = match family {
                Some(ExactFamily::Finite(m)) => (binomial(m, n), SpectrumKind::Exact, "finite-chain".to_string()),
                Some(ExactFamily::OmegaPlus(0)) => (BigUint::one(), SpectrumKind::Exact, "ramsey(omega)".to_string()),
                Some(ExactFamily::OmegaPlus(r)) => (
                    tail_formula(&omega_spectrum(n), r, n)?,
                    SpectrumKind::Exact,
                    format!("tail-formula(omega + {r})"),
                ),
                None => (spectrum_upper(&t, n)?, SpectrumKind::UpperBound, "type-sum".to_string()),
            };
            Ok(SpectrumEntry {
                n,
                value,
                kind,
                provenance,
            })
        })
        .collect()
}

/// Whether the exact values are nondecreasing in `n`.
pub fn check_monotone(entries: &[SpectrumEntry]) -> Result<bool> {
    if let Some(e) = entries.iter().find(|e| e.kind != SpectrumKind::Exact) {
        return Err(Error::MixedKinds(format!(
            "monotonicity is only checked on exact entries, T({}, S) is {:?}",
            e.n, e.kind
        )));
    }
    Ok(entries.windows(2).all(|w| w[0].value <= w[1].value))
}
