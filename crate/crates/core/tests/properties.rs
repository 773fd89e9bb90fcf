//! Cross-module invariants on randomly generated inputs.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use proptest::prelude::*;

use npd_core::characters::{an_character_table, sn_character_table};
use npd_core::class_products::{frobenius_count, FactorizationQuery, Target};
use npd_core::derangements::two_derangement_decompose;
use npd_core::symbols::SymbolXY;
use npd_core::Permutation;

fn perm(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Permutation> {
    n.prop_flat_map(|n| Just((0..n).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn same_degree_triple(
    n: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = [Permutation; 3]> {
    n.prop_flat_map(|n| {
        let p = || Just((0..n).collect::<Vec<_>>()).prop_shuffle();
        (p(), p(), p())
    })
    .prop_map(|(a, b, c)| [a, b, c].map(|v| Permutation::from_images(v).unwrap()))
}

fn even_perm(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Permutation> {
    perm(n).prop_map(|p| {
        if p.is_even() {
            p
        } else {
            p.mul(&Permutation::cycle(p.degree(), &[0, 1]).unwrap())
        }
    })
}

fn symbol() -> impl Strategy<Value = SymbolXY> {
    let side = || prop::collection::btree_set(0usize..14, 0..7);
    (side(), side()).prop_map(|(x, y): (BTreeSet<usize>, BTreeSet<usize>)| {
        SymbolXY::new(x.into_iter().collect(), y.into_iter().collect()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn multiplication_is_associative([a, b, c] in same_degree_triple(1..=12)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn parity_is_a_homomorphism([a, b, _] in same_degree_triple(1..=12)) {
        prop_assert_eq!(a.mul(&b).is_even(), a.is_even() == b.is_even());
        prop_assert_eq!(a.is_even(), (a.degree() - a.num_cycles()) % 2 == 0);
    }

    #[test]
    fn inverse_and_conjugation([a, g, _] in same_degree_triple(1..=12)) {
        prop_assert!(a.mul(&a.inverse()).is_identity());
        prop_assert_eq!(a.inv_mul(&g), a.inverse().mul(&g));
        prop_assert_eq!(a.conjugate_by(&g).cycle_type(), a.cycle_type());
        prop_assert_eq!(a.cycle_type().size(), a.degree());
    }

    #[test]
    fn cycle_notation_round_trips(p in perm(1..=15)) {
        prop_assert_eq!(Permutation::parse_cycles(p.degree(), &p.to_cycle_string()).unwrap(), p);
    }

    #[test]
    fn even_permutations_split_into_two_even_derangements(g in even_perm(5..=20)) {
        let d = two_derangement_decompose(&g).unwrap();
        prop_assert!(d.is_valid_for(&g), "{} -> {} * {}", g, d.d1, d.d2);
    }

    #[test]
    fn symbol_rank_forms_and_shift(s in symbol()) {
        prop_assert_eq!(s.rank_direct(), s.rank_by_inefficiency());
        prop_assert_eq!(s.shift_both().rank(), s.rank());
        prop_assert_eq!(s.shift_both().defect(), s.defect());
        prop_assert!(s.normalized().equivalent(&s));
        prop_assert_eq!(s.swap().rank(), s.rank());
    }

    #[test]
    fn hook_and_cohook_removal_lower_rank(s in symbol(), d in 1usize..8) {
        for h in s.hooks(d) {
            let t = s.remove_hook(&h).unwrap();
            prop_assert_eq!(t.rank(), s.rank() - d as i64);
            prop_assert_eq!(t.defect(), s.defect());
        }
        for h in s.cohooks(d) {
            let t = s.remove_cohook(&h).unwrap();
            prop_assert_eq!(t.rank(), s.rank() - d as i64);
            prop_assert_eq!((t.defect() - s.defect()).abs(), 2);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// Summing the count over every target element recovers `|C_1||C_2|`.
    #[test]
    fn frobenius_counts_partition_pairs(n in 3usize..=7, alt in any::<bool>(), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let table = if alt && n >= 4 { an_character_table(n) } else { sn_character_table(n) }.unwrap();
        let k = table.num_classes();
        let (c1, c2) = (i.index(k), j.index(k));
        let size = |c: usize| BigInt::from(table.classes[c].class_size.clone());
        let total: BigInt = (0..k)
            .map(|t| {
                let q = FactorizationQuery::new(vec![c1, c2], Target::Class(t));
                frobenius_count(&table, &q).unwrap() * size(t)
            })
            .sum();
        prop_assert_eq!(total, size(c1) * size(c2));
    }
}
