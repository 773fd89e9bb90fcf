//! Permutations of `{0..n-1}` with their cycle structure. Conjugacy
//! classes of `S_n` and `A_n` live in `classes`.
//!
//! Composition convention: `a.compose(&b)` applies `b` first, then `a`, so
//! `a.compose(&b).apply(i) == a.apply(b.apply(i))`. Counting results are
//! independent of this choice; explicit factorizations are not.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::partition::Partition;

mod classes;
mod enumerate;

pub use classes::{
    class_label, conjugacy_classes, representative, ClassLabel, ConjugacyClassSn, Half,
};
pub use enumerate::{
    enumerate_group, enumerate_group_with_guard, factorial, par_count, par_map_chunks,
    GroupEnumeration, DEFAULT_ENUMERATION_GUARD,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("image list is not a bijection of 0..{0}")]
    NotABijection(usize),
    #[error("cannot parse permutation: {0}")]
    Parse(String),
    #[error("group of order {order} exceeds the enumeration guard {guard}")]
    SizeGuardExceeded { order: BigUint, guard: u64 },
}

/// Which of the two groups on `n` points an operation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupKind {
    Sn,
    An,
}

impl GroupKind {
    pub fn order(self, n: usize) -> BigUint {
        match self {
            GroupKind::Sn => factorial(n),
            GroupKind::An if n >= 2 => factorial(n) / 2u32,
            GroupKind::An => BigUint::one(),
        }
    }

    pub fn label(self, n: usize) -> String {
        match self {
            GroupKind::Sn => format!("S{n}"),
            GroupKind::An => format!("A{n}"),
        }
    }
}

impl FromStr for GroupKind {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "sn" | "s" | "symmetric" => Ok(GroupKind::Sn),
            "an" | "a" | "alternating" => Ok(GroupKind::An),
            _ => Err(PermError::Parse(format!("unknown group kind {s:?}"))),
        }
    }
}

/// A bijection of `{0..n-1}`. Immutable once built.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(PermError::NotABijection(n));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Caller guarantees `images` is a bijection.
    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// Builds a permutation of degree `n` from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if p >= n || touched[p] {
                    return Err(PermError::NotABijection(n));
                }
                touched[p] = true;
                images[p] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    /// The cycle `(points[0] points[1] ...)` on `n` points.
    pub fn cycle(n: usize, points: &[usize]) -> Result<Self, PermError> {
        Permutation::from_cycles(n, &[points.to_vec()])
    }

    /// Parses cycle notation such as `(0 1)(2 3 4)`; the degree must be given.
    pub fn parse_cycles(n: usize, s: &str) -> Result<Self, PermError> {
        let mut cycles = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| PermError::Parse(s.to_string()))?;
            let close = open
                .find(')')
                .ok_or_else(|| PermError::Parse(s.to_string()))?;
            let body = &open[..close];
            let points = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| PermError::Parse(s.to_string()))
                })
                .collect::<Result<Vec<_>, _>>()?;
            if !points.is_empty() {
                cycles.push(points);
            }
            rest = open[close + 1..].trim_start();
        }
        Permutation::from_cycles(n, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.mul(other))
    }

    /// Same as [`Permutation::compose`] for callers that already know the
    /// degrees agree.
    #[inline]
    pub fn mul(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&j| self.images[j]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    /// `self⁻¹ ∘ other`, without materializing the inverse.
    #[inline]
    pub fn inv_mul(&self, other: &Permutation) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation {
            images: other.images.iter().map(|&k| inv[k]).collect(),
        }
    }

    /// `g ∘ self ∘ g⁻¹`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        let mut out = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            out[g.images[i]] = g.images[j];
        }
        Permutation { images: out }
    }

    pub fn pow(&self, e: i64) -> Permutation {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = Permutation::identity(self.degree());
        for _ in 0..e.unsigned_abs() {
            out = base.mul(&out);
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Disjoint cycles including fixed points, each starting at its least
    /// point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut j = self.images[start];
            while j != start {
                seen[j] = true;
                cycle.push(j);
                j = self.images[j];
            }
            out.push(cycle);
        }
        out
    }

    /// Orbit length of every point under `⟨σ⟩`.
    pub fn orbit_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.degree()];
        for cycle in self.cycles() {
            for &p in &cycle {
                sizes[p] = cycle.len();
            }
        }
        sizes
    }

    pub fn cycle_type(&self) -> Partition {
        Partition::from_unsorted(self.cycles().iter().map(Vec::len).collect())
    }

    /// `p(σ)`: number of cycles, fixed points included.
    pub fn num_cycles(&self) -> usize {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut count = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                j = self.images[j];
            }
        }
        count
    }

    pub fn is_even(&self) -> bool {
        (self.degree() - self.num_cycles()).is_multiple_of(2)
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.degree())
            .filter(|&i| self.images[i] == i)
            .collect()
    }

    pub fn num_fixed_points(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &j)| *i == j)
            .count()
    }

    pub fn is_derangement(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i != j)
    }

    /// `|Σ_k(σ)|` for `k = 1..=n`: points whose orbit has size at most `k`.
    pub fn sigma_k_sizes(&self) -> Vec<usize> {
        let n = self.degree();
        let mut by_len = vec![0usize; n + 1];
        for cycle in self.cycles() {
            by_len[cycle.len()] += cycle.len();
        }
        let mut acc = 0;
        (1..=n)
            .map(|k| {
                acc += by_len[k];
                acc
            })
            .collect()
    }

    /// `E(σ) = Σ e_k / k` with `n^{e_1+…+e_k} = max(|Σ_k|, 1)`.
    ///
    /// The clamp at 1 puts all mass on the first non-empty level when small
    /// orbits are absent.
    pub fn e_statistic(&self) -> f64 {
        let n = self.degree() as f64;
        let mut prev = 0.0;
        let mut total = 0.0;
        for (k, &s) in self.sigma_k_sizes().iter().enumerate() {
            let level = (s.max(1) as f64).ln() / n.ln();
            total += (level - prev) / (k + 1) as f64;
            prev = level;
        }
        total
    }

    /// Restriction to an invariant point set, relabelled to `0..points.len()`
    /// in the order given.
    pub fn restrict(&self, points: &[usize]) -> Option<Permutation> {
        let mut index = vec![usize::MAX; self.degree()];
        for (k, &p) in points.iter().enumerate() {
            index[p] = k;
        }
        let mut images = Vec::with_capacity(points.len());
        for &p in points {
            let k = index[self.images[p]];
            if k == usize::MAX {
                return None;
            }
            images.push(k);
        }
        Some(Permutation { images })
    }

    /// Inverse of [`Permutation::restrict`]: acts on `points` as `local`
    /// does on `0..points.len()` and fixes everything else.
    pub fn embed(n: usize, points: &[usize], local: &Permutation) -> Permutation {
        let mut images: Vec<usize> = (0..n).collect();
        for (k, &p) in points.iter().enumerate() {
            images[p] = points[local.images[k]];
        }
        Permutation { images }
    }

    /// Product of permutations with pairwise disjoint supports.
    pub fn disjoint_product(parts: &[Permutation]) -> Permutation {
        let n = parts.first().map_or(0, Permutation::degree);
        let mut images: Vec<usize> = (0..n).collect();
        for p in parts {
            for (i, &j) in p.images.iter().enumerate() {
                if i != j {
                    debug_assert_eq!(images[i], i, "supports overlap");
                    images[i] = j;
                }
            }
        }
        Permutation { images }
    }

    /// Cycle notation with fixed points omitted; the identity prints as `()`.
    pub fn to_cycle_string(&self) -> String {
        let mut s = String::new();
        for cycle in self.cycles().into_iter().filter(|c| c.len() > 1) {
            s.push('(');
            let body: Vec<String> = cycle.iter().map(usize::to_string).collect();
            s.push_str(&body.join(" "));
            s.push(')');
        }
        if s.is_empty() {
            s.push_str("()");
        }
        s
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.images.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let images = Vec::<usize>::deserialize(deserializer)?;
        Permutation::from_images(images).map_err(serde::de::Error::custom)
    }
}
