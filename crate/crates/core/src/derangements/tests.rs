use super::*;
use crate::perm::enumerate_group;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn brute_an_derangements(n: usize) -> u64 {
    par_count(n, GroupKind::An, Permutation::is_derangement).unwrap()
}

#[test]
fn small_derangement_counts() {
    let a5 = derangements(&GroupAction::natural(5, GroupKind::An).unwrap());
    assert_eq!(a5.count, 24);
    assert_eq!(a5.proportion, BigRational::new(2.into(), 5.into()));
    let a4 = derangements(&GroupAction::natural(4, GroupKind::An).unwrap());
    assert_eq!(a4.count, 3);
    assert_eq!(a4.proportion, BigRational::new(1.into(), 4.into()));
    let s4 = derangements(&GroupAction::natural(4, GroupKind::Sn).unwrap());
    assert_eq!(s4.count, 9);
    // !4 by inclusion–exclusion
    assert_eq!(s4.count, (6 * 2) - 4 + 1);
}

#[test]
fn inclusion_exclusion_matches_brute_force() {
    for n in 2..=9 {
        assert_eq!(
            an_derangement_count(n),
            BigUint::from(brute_an_derangements(n)),
            "n = {n}"
        );
    }
    assert_eq!(an_derangement_count(4), BigUint::from(3u32));
    assert_eq!(an_derangement_count(5), BigUint::from(24u32));
}

#[test]
fn nine_is_close_to_inverse_e() {
    let c = an_derangement_count(9).to_f64().unwrap();
    let half = 181_440.0;
    assert!((c / half - (-1f64).exp()).abs() < 0.01);
}

#[test]
fn bonferroni_betweenness() {
    for n in 4..=14 {
        let r = an_derangement_bonferroni(n);
        assert!(r.between_consecutive, "n = {n}");
        assert_eq!(r.partial_sums.len(), n - 1);
    }
}

#[test]
fn actions_are_class_and_inverse_closed() {
    let actions = [
        GroupAction::natural(5, GroupKind::An).unwrap(),
        GroupAction::natural(5, GroupKind::Sn).unwrap(),
        GroupAction::k_subsets(6, 2, GroupKind::An).unwrap(),
        GroupAction::k_subsets(6, 3, GroupKind::Sn).unwrap(),
        GroupAction::natural(7, GroupKind::An).unwrap(),
    ];
    for a in &actions {
        let r = derangements(a);
        assert!(r.class_closed && r.inverse_closed, "{}", a.label());
        assert!(r.proportion > BigRational::zero() && r.proportion < BigRational::one());
        assert_eq!(
            r.witness_classes.iter().map(|c| c.size).sum::<usize>(),
            a.order()
        );
    }
}

#[test]
fn action_laws() {
    let a = GroupAction::k_subsets(6, 2, GroupKind::An).unwrap();
    assert_eq!(a.num_points(), 15);
    let els = a.elements();
    for g in els.iter().step_by(17) {
        for h in els.iter().step_by(23) {
            for p in 0..a.num_points() {
                assert_eq!(a.act(&g.mul(h), p), a.act(g, a.act(h, p)));
            }
        }
    }
    let e = Permutation::identity(6);
    assert!((0..15).all(|p| a.act(&e, p) == p));
}

#[test]
fn explicit_dihedral_group() {
    let r = Permutation::cycle(5, &[0, 1, 2, 3, 4]).unwrap();
    let s = Permutation::from_cycles(5, &[vec![1, 4], vec![2, 3]]).unwrap();
    let d10 = GroupAction::explicit(&[r, s]).unwrap();
    assert_eq!(d10.order(), 10);
    let rep = derangements(&d10);
    assert_eq!(rep.count, 4);
    assert!(rep.class_closed && rep.inverse_closed);
    let stab = Permutation::cycle(4, &[1, 2]).unwrap();
    assert!(matches!(
        GroupAction::explicit(&[stab]),
        Err(DerangementError::NotTransitive)
    ));
}

#[test]
fn ell_sets() {
    assert_eq!(ell_set(12), vec![9, 11]);
    assert_eq!(ell_set(16), vec![13, 15]);
    assert_eq!(ell_set(17), vec![13, 15, 17]);
}

#[test]
fn ell_cycle_enumeration_counts() {
    assert_eq!(ell_cycles(7, 5).len(), 21 * 24);
    assert_eq!(ell_cycles(6, 6).len(), 120);
    assert!(ell_cycles(6, 4).iter().all(|c| c.num_fixed_points() == 2));
}

#[test]
fn ell_criterion() {
    let a7 = GroupAction::natural(7, GroupKind::An).unwrap();
    assert_eq!(derangement_ell_criterion(&a7).unwrap(), Some(7));
    let a8 = GroupAction::natural(8, GroupKind::An).unwrap();
    assert_eq!(derangement_ell_criterion(&a8).unwrap(), None);
    let pairs = GroupAction::k_subsets(7, 2, GroupKind::An).unwrap();
    let l = derangement_ell_criterion(&pairs).unwrap().unwrap();
    assert!([5, 7].contains(&l));
    // independent check against the stabilizer of the base point
    assert!(pairs
        .elements()
        .iter()
        .filter(|g| pairs.act(g, 0) == 0)
        .all(|g| g.cycle_type().parts() != [l].as_slice()
            && !(g.num_fixed_points() + l == 7 && g.num_cycles() == 8 - l)));
}

#[test]
fn ell_cycle_factorizations() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (x1, x2) = two_ell_cycle_factorization(&Permutation::identity(7), 7, &mut rng).unwrap();
    assert_eq!(x1.mul(&x2), Permutation::identity(7));
    let g = Permutation::cycle(5, &[0, 1, 2, 3, 4]).unwrap();
    let (x1, x2) = two_ell_cycle_factorization(&g, 5, &mut rng).unwrap();
    assert_eq!(x1.mul(&x2), g);
    assert_eq!(g.pow(2).mul(&g.inverse()), g);
    for g in enumerate_group(6, GroupKind::An).unwrap() {
        let (x1, x2) = two_ell_cycle_factorization(&g, 5, &mut rng).unwrap();
        assert_eq!(x1.mul(&x2), g);
        assert_eq!(x1.cycle_type().parts(), &[5, 1]);
        assert_eq!(x2.cycle_type().parts(), &[5, 1]);
    }
    assert!(
        two_ell_cycle_factorization(&Permutation::cycle(6, &[0, 1]).unwrap(), 5, &mut rng).is_err()
    );
}

#[test]
fn decomposition_is_sound_for_small_degrees() {
    for n in 5..=9 {
        let bad: Vec<String> = enumerate_group(n, GroupKind::An)
            .unwrap()
            .collect::<Vec<_>>()
            .par_iter()
            .filter(|g| !two_derangement_decompose(g).is_ok_and(|d| d.is_valid_for(g)))
            .map(|g| g.to_string())
            .collect();
        assert!(bad.is_empty(), "n = {n}: {bad:?}");
    }
}

#[test]
fn explicit_long_cycle_formula() {
    // 1-based g = (1,…,n-1) gives gh = (1,n-2)(2,4,…,n-4,n-1,n,3,5,…,n-3)
    for n in [12usize, 14, 16] {
        let g = Permutation::cycle(n, &(0..n - 1).collect::<Vec<_>>()).unwrap();
        let d = two_derangement_decompose(&g).unwrap();
        assert_eq!(d.route, Route::LongCycleFixedPoint);
        assert!(d.is_valid_for(&g));
        let mut second: Vec<usize> = (1..=n - 5).step_by(2).collect();
        second.extend([n - 2, n - 1, 2]);
        second.extend((4..=n - 4).step_by(2));
        let expected = Permutation::from_cycles(n, &[vec![0, n - 3], second]).unwrap();
        assert_eq!(d.d1, expected);
    }
}

#[test]
fn every_route_is_exercised() {
    let n = 12;
    let cyc = |pts: &[&[usize]]| {
        Permutation::from_cycles(n, &pts.iter().map(|c| c.to_vec()).collect::<Vec<_>>()).unwrap()
    };
    let cases = [
        (Permutation::identity(n), Route::Identity),
        (cyc(&[&[0, 1, 2]]), Route::FixedPoints),
        (
            cyc(&[&[0, 1, 2, 3, 4], &[5, 6, 7, 8, 9, 10, 11]]),
            Route::OddCycleBlock,
        ),
        (
            cyc(&[&[0, 1, 2], &[3, 4, 5, 6, 7, 8, 9, 10, 11]]),
            Route::ThreeCycle,
        ),
        (
            cyc(&[&[0, 1], &[2, 3, 4, 5], &[6, 7], &[8, 9, 10, 11]]),
            Route::EvenCycleBlock,
        ),
        (
            cyc(&[&[0, 1], &[2, 3], &[4, 5], &[6, 7], &[8, 9], &[10, 11]]),
            Route::TwoTranspositions,
        ),
        (
            cyc(&[&[0, 1, 2, 3], &[4, 5, 6, 7, 8, 9, 10, 11]]),
            Route::Bicyclic,
        ),
        (
            cyc(&[&[3, 0, 5, 1, 2, 4, 6, 7, 8, 9], &[10, 11]]),
            Route::LongCycleTransposition,
        ),
        (
            cyc(&[&[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11]]),
            Route::LongCycleFixedPoint,
        ),
    ];
    for (g, route) in cases {
        let d = two_derangement_decompose(&g).unwrap();
        assert_eq!(d.route, route, "{g}");
        assert!(d.is_valid_for(&g), "{g}");
        assert!(!d.fallback_used);
    }
    let small = Permutation::from_cycles(6, &[vec![0, 1], vec![2, 3]]).unwrap();
    assert!(two_derangement_decompose(&small)
        .unwrap()
        .is_valid_for(&small));
}

#[test]
fn case_tree_is_total_for_even_degrees() {
    for n in [12usize, 14] {
        let failures = (0..100_000u64)
            .into_par_iter()
            .filter(|&i| {
                let mut rng = ChaCha8Rng::seed_from_u64(i);
                let g = random_even_permutation(n, &mut rng);
                let d = two_derangement_decompose_with_rng(&g, &mut rng).unwrap();
                d.fallback_used || !d.is_valid_for(&g)
            })
            .count();
        assert_eq!(failures, 0, "n = {n}");
    }
}

#[test]
fn d_squared_covers() {
    for a in [
        GroupAction::natural(5, GroupKind::An).unwrap(),
        GroupAction::k_subsets(6, 2, GroupKind::An).unwrap(),
        GroupAction::natural(7, GroupKind::An).unwrap(),
    ] {
        let r = verify_d_squared(&a);
        assert!(r.covers_group, "{}: {:?}", r.action, r.gaps);
    }
    // A_4 has D = V_4 \ {e}, so D² = V_4
    let r = verify_d_squared(&GroupAction::natural(4, GroupKind::An).unwrap());
    assert_eq!(r.gaps.len(), 8);
}

/// Pairs `(d1, d2)` of even derangements with `d1 d2 = target`, by scanning
/// all of `S_n`.
fn brute_pairs(n: usize, target: &Permutation) -> (usize, usize) {
    let ds: HashSet<Permutation> = enumerate_group(n, GroupKind::Sn)
        .unwrap()
        .filter(|p| p.is_even() && p.is_derangement())
        .collect();
    let pairs = ds
        .iter()
        .filter(|d| ds.contains(&d.inverse().mul(target)))
        .count();
    (ds.len(), pairs)
}

#[test]
fn representation_ratios() {
    let c = Permutation::cycle(7, &[0, 1, 2]).unwrap();
    let (d, pairs) = brute_pairs(7, &c);
    let expected = BigRational::new(BigInt::from(pairs * 2520), BigInt::from(d * d));
    assert_eq!(three_cycle_representation_ratio(7).unwrap(), expected);
    let id = representation_ratio(7, &Permutation::identity(7)).unwrap();
    assert_eq!(id, BigRational::new(BigInt::from(2520), BigInt::from(d)));
    // increases towards e from below
    let r: Vec<f64> = (7..=9)
        .map(|n| {
            three_cycle_representation_ratio(n)
                .unwrap()
                .to_f64()
                .unwrap()
        })
        .collect();
    assert!(r.windows(2).all(|w| w[0] < w[1]) && r[2] < std::f64::consts::E);
    assert!(three_cycle_representation_ratio(6).is_err());
}
