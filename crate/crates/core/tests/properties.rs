use proptest::prelude::*;

use scattered::condense::{fc_rank, fin_condense};
use scattered::embed::{embeds, restrict, RestrictionSpec};
use scattered::oracle::{classify_embedding, expand};
use scattered::ramsey::{exact_family, pattern_count, spectrum, spectrum_upper};
use scattered::types::{count_types, enumerate_types, sigma_tree};
use scattered::{parse, print, ChainTerm};

fn leaf() -> impl Strategy<Value = ChainTerm> {
    prop_oneof![3 => Just(ChainTerm::One), 1 => (2usize..4).prop_map(ChainTerm::finite)]
}

/// Raw terms, prefixes included.
fn term(depth: u32) -> impl Strategy<Value = ChainTerm> {
    leaf().prop_recursive(depth, 12, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..4).prop_map(ChainTerm::FinSum),
            (prop::collection::vec(inner.clone(), 0..3), inner.clone())
                .prop_map(|(prefix, r)| ChainTerm::OmegaSum { prefix, repeat: Box::new(r) }),
            (prop::collection::vec(inner.clone(), 0..3), inner)
                .prop_map(|(prefix, r)| ChainTerm::OmegaStarSum { prefix, repeat: Box::new(r) }),
        ]
    })
}

fn drops() -> impl Strategy<Value = RestrictionSpec> {
    prop::collection::btree_set(0usize..4, 0..3).prop_map(RestrictionSpec::drop)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn print_then_parse_is_identity(t in term(3)) {
        prop_assert_eq!(parse(&print(&t)).unwrap(), t);
    }

    #[test]
    fn reverse_is_an_involution(t in term(3)) {
        prop_assert_eq!(t.reverse().reverse(), t.clone());
        prop_assert_eq!(t.reverse().tails(), t.tails().swap());
    }

    #[test]
    fn canonicalize_is_idempotent(t in term(3)) {
        let c = t.canonicalize();
        prop_assert!(c.is_canonical());
        prop_assert_eq!(c.canonicalize(), c.clone());
        prop_assert_eq!(c.size_if_finite(), t.size_if_finite());
        prop_assert_eq!(c.tails(), t.tails());
        let mut has_sum = false;
        c.walk(&mut |_, n| has_sum |= matches!(n, ChainTerm::OmegaSum { .. } | ChainTerm::OmegaStarSum { .. }));
        prop_assert_eq!(has_sum, c.size_if_finite().is_none());
    }

    #[test]
    fn condensation_commutes_with_reversal(t in term(3)) {
        let c = fin_condense(&t).unwrap();
        prop_assert!(c.is_canonical());
        prop_assert_eq!(fin_condense(&t.reverse()).unwrap(), c.reverse());
        prop_assert_eq!(fc_rank(&t.reverse()).unwrap(), fc_rank(&t).unwrap());
    }

    #[test]
    fn condensation_lowers_rank_by_one(t in term(3)) {
        let rank = fc_rank(&t).unwrap();
        prop_assert_eq!(rank == 0, t.canonicalize() == ChainTerm::One);
        if rank >= 1 {
            prop_assert_eq!(fc_rank(&fin_condense(&t).unwrap()).unwrap(), rank - 1);
        }
    }

    #[test]
    fn unrolling_a_block_keeps_the_rank(block in term(2)) {
        // Σ_ω B and B + Σ_ω B denote the same chain
        let sum = ChainTerm::omega_of(block.clone());
        let unrolled = ChainTerm::omega_sum(vec![block.clone()], block.clone()).unwrap();
        prop_assert_eq!(fc_rank(&sum).unwrap(), fc_rank(&unrolled).unwrap());
        let star = ChainTerm::omega_star_of(block.clone());
        let star_unrolled = ChainTerm::omega_star_sum(vec![block.clone()], block).unwrap();
        prop_assert_eq!(fc_rank(&star).unwrap(), fc_rank(&star_unrolled).unwrap());
    }

    #[test]
    fn embeds_commutes_with_reversal(a in term(2), b in term(2)) {
        prop_assert_eq!(embeds(&a, &b).outcome, embeds(&a.reverse(), &b.reverse()).outcome);
    }

    #[test]
    fn embeds_is_reflexive(a in term(3)) {
        prop_assert!(embeds(&a, &a).is_yes());
    }

    #[test]
    fn restriction_embeds_back(t in term(3), spec in drops()) {
        let r = restrict(&t, &spec);
        prop_assert!(r.is_canonical());
        prop_assert!(embeds(&r, &t).is_yes(), "{} ↾ {:?} = {}", t, spec, r);
    }

    #[test]
    fn empty_restriction_is_identity(t in term(3)) {
        prop_assert_eq!(restrict(&t, &RestrictionSpec::drop([])), t.canonicalize());
    }

    #[test]
    fn spectra_match_their_mirror(t in term(2)) {
        let n = t.size_if_finite().unwrap_or(2).min(2);
        prop_assert_eq!(spectrum(&t, n), spectrum(&t.reverse(), n));
    }

    #[test]
    fn type_sum_bounds_exact_values(t in term(2)) {
        if exact_family(&t).is_some() {
            let n = t.size_if_finite().unwrap_or(3).min(3);
            for entry in spectrum(&t, n).unwrap() {
                prop_assert!(spectrum_upper(&t, entry.n).unwrap() >= entry.value);
            }
        }
    }

    #[test]
    fn pattern_count_ignores_order(m in prop::collection::vec(1usize..4, 0..4), seed in any::<u64>()) {
        let mut shuffled = m.clone();
        let len = shuffled.len().max(1);
        shuffled.rotate_left(seed as usize % len);
        shuffled.reverse();
        prop_assert_eq!(pattern_count(&m).unwrap(), pattern_count(&shuffled).unwrap());
    }

    #[test]
    fn types_are_well_formed(t in term(2), n in 1usize..4) {
        let height = sigma_tree(&t).unwrap().height();
        let types = enumerate_types(&t, n).unwrap();
        prop_assert_eq!(count_types(&t, n).unwrap(), types.len().into());
        for ty in &types {
            prop_assert!(ty.is_well_formed());
            prop_assert_eq!(ty.leaf_count(), n);
            prop_assert!(ty.height() <= height);
        }
    }

    #[test]
    fn classified_subsets_are_enumerated(t in term(2), picks in prop::collection::btree_set(0usize..40, 1..4)) {
        let exp = expand(&t, 3).unwrap();
        let points: Vec<usize> = picks.into_iter().filter(|&p| p < exp.len()).collect();
        if !points.is_empty() {
            let ty = classify_embedding(&exp, &points).unwrap();
            prop_assert!(enumerate_types(&t, points.len()).unwrap().contains(&ty));
        }
    }
}
