//! Deterministic streaming enumeration of `S_n` and `A_n`.
//!
//! Elements come out in lexicographic order of their image lists. A range
//! of lexicographic ranks can be enumerated on its own, which is how the
//! parallel helpers split the work.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use super::{GroupKind, PermError, Permutation};

/// Groups with more elements than this are refused unless a larger guard
/// is passed explicitly.
pub const DEFAULT_ENUMERATION_GUARD: u64 = 500_000_000;

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

fn factorial_u64(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Streams the elements of `S_n` or `A_n` whose lexicographic `S_n` rank
/// lies in a fixed range.
#[derive(Debug, Clone)]
pub struct GroupEnumeration {
    current: Option<Vec<usize>>,
    remaining: u64,
    kind: GroupKind,
}

impl GroupEnumeration {
    fn new(n: usize, kind: GroupKind, start: u64, len: u64) -> Self {
        let current = (len > 0).then(|| unrank(n, start));
        GroupEnumeration {
            current,
            remaining: len,
            kind,
        }
    }
}

impl Iterator for GroupEnumeration {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        loop {
            if self.remaining == 0 {
                return None;
            }
            let cur = self.current.as_mut()?;
            let out = Permutation::from_images_unchecked(cur.clone());
            self.remaining -= 1;
            if self.remaining > 0 && !next_permutation(cur) {
                self.remaining = 0;
            }
            if self.kind == GroupKind::Sn || out.is_even() {
                return Some(out);
            }
        }
    }
}

/// Advances to the next permutation in lexicographic order; false at the
/// last one.
fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// The permutation of lexicographic rank `r` in `S_n`.
fn unrank(n: usize, mut r: u64) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..n).collect();
    let mut out = Vec::with_capacity(n);
    for k in (0..n).rev() {
        let f = factorial_u64(k);
        let idx = (r / f) as usize;
        r %= f;
        out.push(pool.remove(idx));
    }
    out
}

fn checked_sn_order(n: usize, kind: GroupKind, guard: u64) -> Result<u64, PermError> {
    let order = kind.order(n);
    match order.to_u64() {
        Some(o) if o <= guard => Ok(factorial_u64(n)),
        _ => Err(PermError::SizeGuardExceeded { order, guard }),
    }
}

/// All elements of the group, each exactly once, in a fixed order.
pub fn enumerate_group(n: usize, kind: GroupKind) -> Result<GroupEnumeration, PermError> {
    enumerate_group_with_guard(n, kind, DEFAULT_ENUMERATION_GUARD)
}

pub fn enumerate_group_with_guard(
    n: usize,
    kind: GroupKind,
    guard: u64,
) -> Result<GroupEnumeration, PermError> {
    let total = checked_sn_order(n, kind, guard)?;
    Ok(GroupEnumeration::new(n, kind, 0, total))
}

/// Runs `f` on disjoint chunks of the group in parallel; results come back
/// in chunk order, so folds over them are deterministic.
pub fn par_map_chunks<R, F>(n: usize, kind: GroupKind, f: F) -> Result<Vec<R>, PermError>
where
    R: Send,
    F: Fn(GroupEnumeration) -> R + Sync,
{
    let total = checked_sn_order(n, kind, DEFAULT_ENUMERATION_GUARD)?;
    let chunk = total.div_ceil(256).max(1024);
    let starts: Vec<u64> = (0..total).step_by(chunk as usize).collect();
    Ok(starts
        .into_par_iter()
        .map(|s| f(GroupEnumeration::new(n, kind, s, chunk.min(total - s))))
        .collect())
}

/// Number of group elements satisfying `pred`, counted in parallel.
pub fn par_count<F>(n: usize, kind: GroupKind, pred: F) -> Result<u64, PermError>
where
    F: Fn(&Permutation) -> bool + Sync,
{
    Ok(
        par_map_chunks(n, kind, |it| it.filter(|p| pred(p)).count() as u64)?
            .into_iter()
            .sum(),
    )
}
