//! Integer partitions: parts kept weakly decreasing and strictly positive.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::perm::factorial;

#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Sorts and drops zero parts.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// Accepts only weakly decreasing positive parts.
    pub fn new(parts: Vec<usize>) -> Option<Self> {
        let ok = parts.iter().all(|&p| p > 0) && parts.windows(2).all(|w| w[0] >= w[1]);
        ok.then_some(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (0..width)
            .map(|j| self.parts.iter().filter(|&&p| p > j).count())
            .collect();
        Partition { parts }
    }

    pub fn is_self_conjugate(&self) -> bool {
        *self == self.conjugate()
    }

    /// Number of boxes `(i, i)` in the diagram.
    pub fn durfee(&self) -> usize {
        self.parts
            .iter()
            .enumerate()
            .take_while(|(i, &p)| p > *i)
            .count()
    }

    /// Hook lengths at the diagonal boxes, top-left first.
    pub fn diagonal_hooks(&self) -> Vec<usize> {
        let conj = self.conjugate();
        (0..self.durfee())
            .map(|i| self.parts[i] + conj.parts[i] - 2 * i - 1)
            .collect()
    }

    /// All hook lengths, row by row.
    pub fn hook_lengths(&self) -> Vec<usize> {
        let conj = self.conjugate();
        let mut out = Vec::with_capacity(self.size());
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row {
                out.push(row - j + conj.parts[j] - i - 1);
            }
        }
        out
    }

    /// `n! / ∏ hooks`.
    pub fn hook_length_degree(&self) -> BigUint {
        let prod: BigUint = self.hook_lengths().into_iter().map(BigUint::from).product();
        factorial(self.size()) / prod
    }

    /// Multiplicity of each part size, indexed by size.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.parts.first().copied().unwrap_or(0) + 1];
        for &p in &self.parts {
            m[p] += 1;
        }
        m
    }

    /// `z_λ = ∏ i^{m_i} m_i!`, the centralizer order in `S_n`.
    pub fn centralizer_order(&self) -> BigUint {
        let mut z = BigUint::one();
        for (i, &m) in self.multiplicities().iter().enumerate().skip(1) {
            z *= BigUint::from(i).pow(m as u32) * factorial(m);
        }
        z
    }

    /// Size of the `S_n` class of this cycle type.
    pub fn class_size(&self) -> BigUint {
        factorial(self.size()) / self.centralizer_order()
    }

    pub fn all_parts_odd(&self) -> bool {
        self.parts.iter().all(|p| p % 2 == 1)
    }

    pub fn parts_distinct(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] != w[1])
    }

    /// Even permutations of this type form one `S_n` class that splits in
    /// `A_n` exactly when the parts are odd and distinct.
    pub fn splits_in_alternating(&self) -> bool {
        self.all_parts_odd() && self.parts_distinct()
    }

    /// Sign of a permutation of this cycle type.
    pub fn is_even_type(&self) -> bool {
        (self.size() - self.len()).is_multiple_of(2)
    }

    /// Removes the part `k` once, keeping order.
    pub fn without_part(&self, k: usize) -> Option<Partition> {
        let pos = self.parts.iter().position(|&p| p == k)?;
        let mut parts = self.parts.clone();
        parts.remove(pos);
        Some(Partition { parts })
    }

    /// Lexicographic comparison of the part sequences.
    pub fn lex_cmp(&self, other: &Partition) -> Ordering {
        self.parts.cmp(&other.parts)
    }

    /// Positions `λ_i - i + L - 1` (a beta-set with `L` beads, decreasing).
    pub fn beta_set(&self, beads: usize) -> Vec<usize> {
        debug_assert!(beads >= self.len());
        (0..beads)
            .map(|i| self.parts.get(i).copied().unwrap_or(0) + beads - 1 - i)
            .collect()
    }

    /// Inverse of [`Partition::beta_set`]; the input must be strictly
    /// decreasing.
    pub fn from_beta_set(beta: &[usize]) -> Partition {
        let l = beta.len();
        Partition::from_unsorted(
            beta.iter()
                .enumerate()
                .map(|(i, &b)| b + i + 1 - l)
                .collect(),
        )
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lex_cmp(other)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.parts.iter().map(usize::to_string).collect();
        write!(f, "({})", body.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = String;

    /// Accepts `(3,1,1)`, `3,1,1`, `3 1 1` or `[3,1,1]`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s
            .trim()
            .trim_matches(|c| matches!(c, '(' | ')' | '[' | ']'));
        let parts = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|e| format!("bad part {t:?}: {e}"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Partition::from_unsorted(parts))
    }
}

/// All partitions of `n` in decreasing lexicographic order, `(n)` first.
pub fn partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    rec(n, n, &mut cur, &mut out);
    out
}

/// Partitions of `n` with at most `max_len` parts, each at most `max_part`.
pub fn partitions_bounded(n: usize, max_len: usize, max_part: usize) -> Vec<Partition> {
    partitions(n)
        .into_iter()
        .filter(|p| p.len() <= max_len && p.parts.first().is_none_or(|&x| x <= max_part))
        .collect()
}

/// Partitions of `n` into distinct odd parts.
pub fn distinct_odd_partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        let mut p = rem.min(max);
        if p.is_multiple_of(2) {
            p = p.saturating_sub(1);
        }
        while p >= 1 {
            cur.push(p);
            rec(rem - p, p.saturating_sub(2), cur, out);
            cur.pop();
            if p < 2 {
                break;
            }
            p -= 2;
        }
    }
    rec(n, n, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=12).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]);
    }

    #[test]
    fn partitions_descending_lex() {
        let p4: Vec<Vec<usize>> = partitions(4).into_iter().map(|p| p.parts).collect();
        assert_eq!(
            p4,
            vec![
                vec![4],
                vec![3, 1],
                vec![2, 2],
                vec![2, 1, 1],
                vec![1, 1, 1, 1]
            ]
        );
    }

    #[test]
    fn conjugate_and_hooks() {
        let l = part(&[4, 2, 1]);
        assert_eq!(l.conjugate(), part(&[3, 2, 1, 1]));
        assert_eq!(l.hook_lengths(), vec![6, 4, 2, 1, 3, 1, 1]);
        assert_eq!(l.diagonal_hooks(), vec![6, 1]);
        assert_eq!(part(&[2, 2]).diagonal_hooks(), vec![3, 1]);
        assert_eq!(part(&[3, 1, 1]).hook_length_degree(), BigUint::from(6u32));
        assert_eq!(part(&[3, 2]).hook_length_degree(), BigUint::from(5u32));
    }

    #[test]
    fn class_sizes() {
        assert_eq!(part(&[2, 1]).class_size(), BigUint::from(3u32));
        assert_eq!(part(&[3]).class_size(), BigUint::from(2u32));
        assert_eq!(part(&[2, 2]).centralizer_order(), BigUint::from(8u32));
        assert_eq!(part(&[5]).class_size(), BigUint::from(24u32));
    }

    #[test]
    fn distinct_odd() {
        let d: Vec<Vec<usize>> = distinct_odd_partitions(9)
            .into_iter()
            .map(|p| p.parts)
            .collect();
        assert_eq!(d, vec![vec![9], vec![5, 3, 1]]);
        for n in 0..25 {
            let brute = partitions(n)
                .into_iter()
                .filter(Partition::splits_in_alternating)
                .count();
            let sc = partitions(n)
                .into_iter()
                .filter(Partition::is_self_conjugate)
                .count();
            assert_eq!(distinct_odd_partitions(n).len(), brute);
            assert_eq!(brute, sc);
        }
    }

    #[test]
    fn parse_forms() {
        for s in ["(3,1,1)", "3,1,1", "3 1 1", "[1,3,1]"] {
            assert_eq!(s.parse::<Partition>().unwrap(), part(&[3, 1, 1]));
        }
        assert!("3,x".parse::<Partition>().is_err());
    }

    proptest! {
        #[test]
        fn beta_set_round_trip(n in 0usize..14, pick in 0usize..1000, extra in 0usize..4) {
            let all = partitions(n);
            let l = &all[pick % all.len()];
            let beta = l.beta_set(l.len() + extra);
            prop_assert_eq!(&Partition::from_beta_set(&beta), l);
        }

        #[test]
        fn conjugation_is_involution(n in 0usize..16, pick in 0usize..1000) {
            let all = partitions(n);
            let l = &all[pick % all.len()];
            prop_assert_eq!(&l.conjugate().conjugate(), l);
            prop_assert_eq!(l.conjugate().size(), n);
            prop_assert_eq!(l.hook_length_degree(), l.conjugate().hook_length_degree());
        }
    }

    #[test]
    fn class_sizes_sum_to_factorial() {
        for n in 0..12 {
            let total: BigUint = partitions(n).iter().map(Partition::class_size).sum();
            assert_eq!(total, factorial(n));
        }
    }
}
