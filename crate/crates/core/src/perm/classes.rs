//! Conjugacy classes of `S_n` and `A_n`, with canonical representatives and
//! class identification for split `A_n` classes.

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::{GroupKind, Permutation};
use crate::partition::{partitions, Partition};

/// The two `A_n` classes inside a split `S_n` class. `Plus` holds the
/// canonical representative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Half {
    Plus,
    Minus,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClassLabel {
    pub cycle_type: Partition,
    /// Set only for split `A_n` classes.
    pub half: Option<Half>,
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_type)?;
        match self.half {
            Some(Half::Plus) => write!(f, "+"),
            Some(Half::Minus) => write!(f, "-"),
            None => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugacyClassSn {
    pub cycle_type: Partition,
    pub class_size: BigUint,
    pub centralizer_order: BigUint,
    pub splits_in_an: bool,
    pub half: Option<Half>,
}

impl ConjugacyClassSn {
    pub fn label(&self) -> ClassLabel {
        ClassLabel {
            cycle_type: self.cycle_type.clone(),
            half: self.half,
        }
    }
}

pub(crate) fn splits(cycle_type: &Partition) -> bool {
    cycle_type.size() > 1 && cycle_type.splits_in_alternating()
}

/// Classes in ascending lexicographic order of cycle type, `(1^n)` first.
/// For `A_n` only even types appear and a split type yields `Plus` then
/// `Minus`, each of half size.
pub fn conjugacy_classes(n: usize, kind: GroupKind) -> Vec<ConjugacyClassSn> {
    let mut out = Vec::new();
    for cycle_type in partitions(n).into_iter().rev() {
        let z = cycle_type.centralizer_order();
        let size = cycle_type.class_size();
        let split = splits(&cycle_type);
        match kind {
            GroupKind::Sn => out.push(ConjugacyClassSn {
                cycle_type,
                class_size: size,
                centralizer_order: z,
                splits_in_an: split,
                half: None,
            }),
            GroupKind::An if !cycle_type.is_even_type() => {}
            GroupKind::An if split => {
                for half in [Half::Plus, Half::Minus] {
                    out.push(ConjugacyClassSn {
                        cycle_type: cycle_type.clone(),
                        class_size: &size / 2u32,
                        centralizer_order: z.clone(),
                        splits_in_an: true,
                        half: Some(half),
                    });
                }
            }
            GroupKind::An => out.push(ConjugacyClassSn {
                cycle_type,
                class_size: size,
                centralizer_order: if n >= 2 { z / 2u32 } else { z },
                splits_in_an: false,
                half: None,
            }),
        }
    }
    out
}

/// Cycles on consecutive points, longest first.
fn canonical(cycle_type: &Partition) -> Permutation {
    let n = cycle_type.size();
    let mut images = Vec::with_capacity(n);
    let mut start = 0;
    for &len in cycle_type.parts() {
        for k in 0..len {
            images.push(start + (k + 1) % len);
        }
        start += len;
    }
    Permutation::from_images_unchecked(images)
}

/// A fixed element of the labelled class.
pub fn representative(label: &ClassLabel) -> Permutation {
    let r = canonical(&label.cycle_type);
    match label.half {
        Some(Half::Minus) => {
            let t = Permutation::cycle(r.degree(), &[0, 1]).expect("degree at least 2");
            r.conjugate_by(&t)
        }
        _ => r,
    }
}

/// The class of `sigma` in `S_n` or `A_n`. `sigma` must be even for `An`.
pub fn class_label(sigma: &Permutation, kind: GroupKind) -> ClassLabel {
    let cycle_type = sigma.cycle_type();
    if kind == GroupKind::Sn || !splits(&cycle_type) {
        return ClassLabel {
            cycle_type,
            half: None,
        };
    }
    // Parts are distinct, so the cycles of sigma sorted by length pair off
    // uniquely with the canonical cycles; pi carries one onto the other.
    let mut cycles = sigma.cycles();
    cycles.sort_by_key(|c| std::cmp::Reverse(c.len()));
    let mut pi = Vec::with_capacity(sigma.degree());
    for c in &cycles {
        pi.extend_from_slice(c);
    }
    let pi = Permutation::from_images_unchecked(pi);
    let half = if pi.is_even() {
        Half::Plus
    } else {
        Half::Minus
    };
    ClassLabel {
        cycle_type,
        half: Some(half),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::enumerate_group;
    use num_traits::ToPrimitive;
    use std::collections::{HashMap, HashSet};

    fn sizes(n: usize, kind: GroupKind) -> Vec<u64> {
        conjugacy_classes(n, kind)
            .iter()
            .map(|c| c.class_size.to_u64().unwrap())
            .collect()
    }

    /// Orbits of the group acting on itself by conjugation.
    fn brute_classes(n: usize, kind: GroupKind) -> Vec<HashSet<Permutation>> {
        let elems: Vec<_> = enumerate_group(n, kind).unwrap().collect();
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for x in &elems {
            if seen.contains(x) {
                continue;
            }
            let orbit: HashSet<_> = elems.iter().map(|g| x.conjugate_by(g)).collect();
            seen.extend(orbit.iter().cloned());
            out.push(orbit);
        }
        out
    }

    #[test]
    fn small_examples() {
        assert_eq!(sizes(3, GroupKind::Sn), vec![1, 3, 2]);
        assert_eq!(sizes(5, GroupKind::An), vec![1, 15, 20, 12, 12]);
        // (3,1) has distinct odd parts and splits in A_4
        assert_eq!(sizes(4, GroupKind::An), vec![1, 3, 4, 4]);
        let mut b: Vec<usize> = brute_classes(4, GroupKind::An)
            .iter()
            .map(HashSet::len)
            .collect();
        b.sort();
        assert_eq!(b, vec![1, 3, 4, 4]);
    }

    #[test]
    fn class_sizes_sum_to_order() {
        for n in 1..=9 {
            for kind in [GroupKind::Sn, GroupKind::An] {
                let total: BigUint = conjugacy_classes(n, kind)
                    .iter()
                    .map(|c| &c.class_size)
                    .sum();
                assert_eq!(total, kind.order(n));
                for c in conjugacy_classes(n, kind) {
                    assert_eq!(&c.class_size * &c.centralizer_order, kind.order(n));
                }
            }
        }
    }

    #[test]
    fn labels_match_brute_force_classes() {
        for n in 1..=7 {
            for kind in [GroupKind::Sn, GroupKind::An] {
                let classes = conjugacy_classes(n, kind);
                let brute = brute_classes(n, kind);
                assert_eq!(brute.len(), classes.len(), "n={n} {kind:?}");
                let expected: HashMap<ClassLabel, u64> = classes
                    .iter()
                    .map(|c| (c.label(), c.class_size.to_u64().unwrap()))
                    .collect();
                for orbit in brute {
                    let labels: HashSet<_> = orbit.iter().map(|s| class_label(s, kind)).collect();
                    assert_eq!(labels.len(), 1);
                    let label = labels.into_iter().next().unwrap();
                    assert_eq!(expected[&label], orbit.len() as u64);
                    assert!(orbit.contains(&representative(&label)));
                }
            }
        }
    }

    #[test]
    fn conjugation_preserves_cycle_counts() {
        let s6: Vec<_> = enumerate_group(5, GroupKind::Sn).unwrap().collect();
        for s in &s6 {
            for t in s6.iter().step_by(7) {
                assert_eq!(t.conjugate_by(s).num_cycles(), t.num_cycles());
                assert_eq!(t.conjugate_by(s).cycle_type(), t.cycle_type());
            }
        }
    }

    #[test]
    fn parity_agrees_with_cycle_count_on_s6() {
        for s in enumerate_group(6, GroupKind::Sn).unwrap() {
            // transposition count: sum over cycles of (len - 1)
            let t: usize = s.cycles().iter().map(|c| c.len() - 1).sum();
            assert_eq!(s.is_even(), t.is_multiple_of(2));
            assert_eq!(s.is_even(), s.num_cycles() % 2 == 0);
        }
    }
}
