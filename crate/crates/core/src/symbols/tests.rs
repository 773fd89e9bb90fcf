use super::*;
use crate::linear::zsygmondy_prime;
use std::collections::HashSet;

fn sym(x: &[usize], y: &[usize]) -> SymbolXY {
    SymbolXY::new(x.to_vec(), y.to_vec()).unwrap()
}

/// Partition numbers by the pentagonal recurrence.
fn partition_numbers(n: usize) -> Vec<u64> {
    let mut p = vec![0i64; n + 1];
    p[0] = 1;
    for m in 1..=n {
        let mut k = 1i64;
        loop {
            let g1 = (k * (3 * k - 1) / 2) as usize;
            if g1 > m {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            p[m] += sign * p[m - g1];
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if g2 <= m {
                p[m] += sign * p[m - g2];
            }
            k += 1;
        }
    }
    p.into_iter().map(|v| v as u64).collect()
}

fn bipartitions(r: usize) -> u64 {
    let p = partition_numbers(r);
    (0..=r).map(|a| p[a] * p[r - a]).sum()
}

/// `k`-subsets of `ℕ` with inefficiency at most `max_i`.
fn subsets_with_inefficiency(k: usize, max_i: i64) -> Vec<Vec<usize>> {
    fn rec(k: usize, start: usize, budget: i64, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let pos = cur.len();
        let mut v = start;
        // each later entry is at least one more than the previous
        while (v as i64 - pos as i64) * (k - pos) as i64 <= budget {
            cur.push(v);
            rec(k, v + 1, budget - (v as i64 - pos as i64), cur, out);
            cur.pop();
            v += 1;
        }
    }
    let mut out = Vec::new();
    rec(k, 0, max_i, &mut Vec::new(), &mut out);
    out
}

/// Classes of rank `r` by searching set pairs directly.
fn brute_classes(r: usize) -> HashSet<SymbolXY> {
    let mut out = HashSet::new();
    for a in 0..=2 * r + 3 {
        for b in 0..=a {
            let xs = subsets_with_inefficiency(a, r as i64);
            let ys = subsets_with_inefficiency(b, r as i64);
            for x in &xs {
                for y in &ys {
                    let s = SymbolXY {
                        x: x.clone(),
                        y: y.clone(),
                    };
                    if s.rank_direct() == r as i64
                        && !(x.first() == Some(&0) && y.first() == Some(&0))
                    {
                        out.insert(s.normalized());
                    }
                }
            }
        }
    }
    out
}

#[test]
fn shift_and_inefficiency() {
    assert_eq!(shift(&[]), vec![0]);
    assert_eq!(shift(&[1, 3]), vec![0, 2, 4]);
    assert_eq!(inefficiency(&[1, 3]), 3);
    assert_eq!(inefficiency(&[0, 2, 4]), 3);
    assert_eq!(inefficiency(&[0, 1, 2, 3]), 0);
    assert_eq!(inefficiency(&[1]), 1);
    for n in 1..10 {
        assert_eq!(inefficiency(&[0, n]), n as i64 - 1);
    }
}

#[test]
fn rank_examples() {
    assert_eq!(sym(&[0], &[]).rank(), 0);
    assert_eq!(sym(&[1], &[]).rank(), 1);
    assert_eq!(sym(&[1], &[]).rank_by_inefficiency(), 1);
    for n in 1..12 {
        assert_eq!(sym(&[0, n], &[1]).rank(), n as i64);
    }
}

#[test]
fn equivalence() {
    let s = sym(&[1, 3], &[0]);
    assert!(s.equivalent(&s.swap()));
    assert!(s.equivalent(&sym(&[0, 2, 4], &[0, 1])));
    assert_eq!(sym(&[0, 2, 4], &[0, 1]).minimal(), s);
    assert!(!s.equivalent(&sym(&[1, 3], &[1])));
    for r in 0..=6 {
        for s in enumerate_symbols(r, |_| true).unwrap() {
            let t = s.shift_both().swap().shift_both();
            assert_eq!(t.rank(), s.rank());
            assert_eq!(t.defect().abs(), s.defect().abs());
            assert_eq!(inefficiency(&shift(s.x())), inefficiency(s.x()));
        }
    }
}

#[test]
fn hook_scans() {
    assert!(sym(&[0, 1, 2], &[3])
        .hooks(2)
        .iter()
        .all(|h| h.side == Side::Y));
    assert_eq!(
        sym(&[0, 2], &[]).hooks(1),
        vec![HookRecord {
            side: Side::X,
            b: 1,
            c: 2,
            d: 1,
            kind: HookKind::Hook
        }]
    );
    let s = sym(&[0, 6], &[1]);
    assert!(s.hooks(6).is_empty());
    assert_eq!(
        s.cohooks(6),
        vec![HookRecord {
            side: Side::X,
            b: 0,
            c: 6,
            d: 6,
            kind: HookKind::Cohook
        }]
    );
    assert!((1..5).all(|d| sym(&[0], &[0]).cohooks(d).is_empty()));
    let deg = sym(&[1, 4], &[1, 4]);
    for d in 1..5 {
        let c = deg.cohooks(d);
        let xs: Vec<_> = c
            .iter()
            .filter(|h| h.side == Side::X)
            .map(|h| (h.b, h.c))
            .collect();
        let ys: Vec<_> = c
            .iter()
            .filter(|h| h.side == Side::Y)
            .map(|h| (h.b, h.c))
            .collect();
        assert_eq!(xs, ys);
    }
}

#[test]
fn removals() {
    let s = sym(&[0, 2], &[]);
    let h = s.hooks(1)[0];
    let t = s.remove_hook(&h).unwrap();
    assert_eq!(t, sym(&[0, 1], &[]));
    assert_eq!(inefficiency(t.x()), 0);
    let s = sym(&[0, 7], &[1]);
    let c = s.cohooks(7)[0];
    let t = s.remove_cohook(&c).unwrap();
    assert_eq!(t, sym(&[0], &[0, 1]));
    assert_eq!(t.rank(), 0);
    assert!(s.remove_hook(&c).is_err());
    assert!(matches!(
        s.remove_cohook(&h),
        Err(SymbolError::NotACohook(..))
    ));
}

#[test]
fn removals_drop_rank_by_length() {
    for r in 0..=8 {
        for s in enumerate_symbols(r, |_| true).unwrap() {
            for h in s.all_of_kind(HookKind::Hook) {
                let t = s.remove_hook(&h).unwrap();
                assert_eq!(s.rank() - t.rank(), h.d as i64, "{s} {h:?}");
                let side = |x: &SymbolXY| match h.side {
                    Side::X => inefficiency(x.x()),
                    Side::Y => inefficiency(x.y()),
                };
                assert_eq!(side(&s) - side(&t), h.d as i64);
                assert!(s.rank() >= h.d as i64);
            }
            for h in s.all_of_kind(HookKind::Cohook) {
                let t = s.remove_cohook(&h).unwrap();
                assert_eq!(s.rank() - t.rank(), h.d as i64, "{s} {h:?}");
                assert_eq!((s.defect() - t.defect()).abs(), 2);
            }
            if r == 0 {
                assert!(s.all_of_kind(HookKind::Cohook).is_empty());
            }
        }
    }
}

#[test]
fn disjoint_hooks_need_rank() {
    for r in 0..=10 {
        for s in enumerate_symbols(r, |_| true).unwrap() {
            let hooks = s.all_of_kind(HookKind::Hook);
            for (i, h) in hooks.iter().enumerate() {
                for g in &hooks[i + 1..] {
                    let disjoint =
                        h.side != g.side || [h.b, h.c].iter().all(|v| *v != g.b && *v != g.c);
                    if disjoint {
                        assert!(h.d + g.d - 1 <= r, "{s} {h:?} {g:?}");
                    }
                }
            }
        }
    }
}

#[test]
fn enumeration_matches_direct_search() {
    for r in 0..=6 {
        let fast: HashSet<SymbolXY> = enumerate_symbols(r, |_| true)
            .unwrap()
            .into_iter()
            .collect();
        assert_eq!(fast, brute_classes(r), "r = {r}");
    }
    assert_eq!(enumerate_symbols(1, |d| d % 2 == 1).unwrap().len(), 2);
    assert_eq!(enumerate_symbols(2, |d| d % 2 == 1).unwrap().len(), 6);
    let totals: Vec<usize> = (1..=4)
        .map(|r| enumerate_symbols(r, |_| true).unwrap().len())
        .collect();
    assert_eq!(totals, vec![4, 11, 22, 47]);
    assert!(enumerate_symbols(17, |_| true).is_err());
}

#[test]
fn enumeration_is_normalized() {
    for r in 0..=12 {
        let all = enumerate_symbols(r, |_| true).unwrap();
        let set: HashSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), all.len());
        for s in &all {
            assert_eq!(&s.normalized(), s);
            assert_eq!(s.rank_direct(), r as i64);
            assert_eq!(s.rank_by_inefficiency(), r as i64);
        }
    }
}

#[test]
fn defect_one_counts_are_bipartitions() {
    for r in 0..=12 {
        assert_eq!(
            enumerate_symbols(r, |d| d == 1).unwrap().len() as u64,
            bipartitions(r),
            "r = {r}"
        );
    }
    // B_4 has 20 + 5 unipotent characters
    assert_eq!(
        classify_surviving_symbols(4, DefectClass::Odd, &[])
            .unwrap()
            .len(),
        25
    );
}

#[test]
fn constrained_counts_stabilize() {
    use HookKind::{Cohook as C, Hook as H};
    for (k, k2) in [(0usize, 1usize), (0, 2), (1, 2)] {
        for (a, b) in [(H, H), (C, C), (H, C), (C, H)] {
            let counts: Vec<usize> = (12..=16)
                .map(|r| count_constrained(r, &[(a, r - k), (b, r - k2)]).unwrap())
                .collect();
            assert!(
                counts.windows(2).all(|w| w[0] == w[1]),
                "({k},{k2}) {a:?}/{b:?}: {counts:?}"
            );
        }
    }
    assert!(count_constrained(5, &[(H, 6)]).is_err());
}

#[test]
fn four_survivors() {
    for n in [6, 8, 10] {
        let got = classify_surviving_symbols(
            n,
            DefectClass::Odd,
            &[(HookKind::Cohook, n), (HookKind::Hook, n - 1)],
        )
        .unwrap();
        let mut expected = expected_four(n).to_vec();
        expected.sort();
        assert_eq!(got, expected, "n = {n}");
    }
    for n in [7, 9, 11] {
        let got = classify_surviving_symbols(
            n,
            DefectClass::Odd,
            &[(HookKind::Hook, n), (HookKind::Cohook, n - 1)],
        )
        .unwrap();
        let mut expected = expected_four(n).to_vec();
        expected.sort();
        assert_eq!(got, expected, "n = {n}");
    }
}

#[test]
fn hook_length_multisets() {
    assert_eq!(sym(&[0], &[]).all_hook_cohook_lengths(), (vec![], vec![]));
    assert!(sym(&[0, 7], &[1]).all_hook_cohook_lengths().1.contains(&7));
    for r in 0..=5 {
        for s in enumerate_symbols(r, |_| true).unwrap() {
            let t = s.shift_both().shift_both().swap();
            assert_eq!(s.all_hook_cohook_lengths(), t.all_hook_cohook_lengths());
        }
    }
}

#[test]
fn denominators() {
    let trivial = sym(&[0], &[]);
    assert!([3u64, 5, 7, 31]
        .iter()
        .all(|&l| !trivial.denominator_divisible(2, l)));
    for n in 4..=8u32 {
        let l = zsygmondy_prime(2, 2 * n).unwrap();
        assert!(sym(&[0, n as usize], &[1]).denominator_divisible(2, l));
    }
    let big = 4099; // prime above 2^12
    for s in enumerate_symbols(6, |_| true).unwrap() {
        assert!(!s.denominator_divisible(2, big));
    }
}

#[test]
fn serializes_as_nested_lists() {
    assert_eq!(
        serde_json::to_string(&sym(&[0, 3], &[1])).unwrap(),
        "[[0,3],[1]]"
    );
    assert_eq!(sym(&[0, 3], &[1]).to_string(), "({0,3},{1})");
}
