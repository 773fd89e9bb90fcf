//! Symbols `(X, Y)` of finite subsets of `ℕ` up to swap and simultaneous
//! shift: rank, defect, hooks, cohooks and enumeration by rank.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::linear::multiplicative_order;
use crate::partition::{partitions, Partition};

/// Largest rank [`enumerate_symbols`] accepts by default.
pub const DEFAULT_RANK_BOUND: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymbolError {
    #[error("{0:?} is not a hook of {1}")]
    NotAHook(HookRecord, SymbolXY),
    #[error("{0:?} is not a cohook of {1}")]
    NotACohook(HookRecord, SymbolXY),
    #[error("rank {rank} exceeds the bound {bound}")]
    SizeGuardExceeded { rank: usize, bound: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// Entries strictly increasing on both sides.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymbolXY {
    x: Vec<usize>,
    y: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Side {
    X,
    Y,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HookKind {
    Hook,
    Cohook,
}

/// Entry `c` on `side` paired with `b = c - d`; for a hook `b` is absent
/// from `side`, for a cohook from the other side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct HookRecord {
    pub side: Side,
    pub b: usize,
    pub c: usize,
    pub d: usize,
    pub kind: HookKind,
}

/// `(kind, length)`: the symbol must have some hook or cohook of that length.
pub type Constraint = (HookKind, usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DefectClass {
    Odd,
    TwoModFour,
    ZeroModFour,
    Any,
}

impl DefectClass {
    pub fn contains(self, defect: usize) -> bool {
        match self {
            DefectClass::Odd => defect % 2 == 1,
            DefectClass::TwoModFour => defect % 4 == 2,
            DefectClass::ZeroModFour => defect.is_multiple_of(4),
            DefectClass::Any => true,
        }
    }
}

/// `i(X) = Σx - C(|X|, 2)`.
pub fn inefficiency(x: &[usize]) -> i64 {
    let k = x.len() as i64;
    x.iter().map(|&v| v as i64).sum::<i64>() - k * (k - 1) / 2
}

/// `{0} ∪ {x + 1}`.
pub fn shift(x: &[usize]) -> Vec<usize> {
    std::iter::once(0).chain(x.iter().map(|v| v + 1)).collect()
}

fn sorted_set(v: Vec<usize>) -> Option<Vec<usize>> {
    let set: BTreeSet<usize> = v.iter().copied().collect();
    (set.len() == v.len()).then(|| set.into_iter().collect())
}

impl SymbolXY {
    /// `None` if either side repeats an entry.
    pub fn new(x: Vec<usize>, y: Vec<usize>) -> Option<Self> {
        Some(SymbolXY {
            x: sorted_set(x)?,
            y: sorted_set(y)?,
        })
    }

    pub fn x(&self) -> &[usize] {
        &self.x
    }

    pub fn y(&self) -> &[usize] {
        &self.y
    }

    fn side(&self, s: Side) -> &[usize] {
        match s {
            Side::X => &self.x,
            Side::Y => &self.y,
        }
    }

    /// `|X| - |Y|`.
    pub fn defect(&self) -> i64 {
        self.x.len() as i64 - self.y.len() as i64
    }

    /// `-⌊(|X|+|Y|-1)²/4⌋ + ΣX + ΣY`.
    pub fn rank_direct(&self) -> i64 {
        let s = (self.x.len() + self.y.len()) as i64 - 1;
        let sum: i64 = self.x.iter().chain(&self.y).map(|&v| v as i64).sum();
        sum - (s * s).div_euclid(4)
    }

    /// `i(X) + i(Y) + ⌊(|X|-|Y|)²/4⌋`.
    pub fn rank_by_inefficiency(&self) -> i64 {
        let d = self.defect();
        inefficiency(&self.x) + inefficiency(&self.y) + d * d / 4
    }

    pub fn rank(&self) -> i64 {
        let r = self.rank_direct();
        debug_assert_eq!(r, self.rank_by_inefficiency());
        r
    }

    pub fn swap(&self) -> SymbolXY {
        SymbolXY {
            x: self.y.clone(),
            y: self.x.clone(),
        }
    }

    pub fn shift_both(&self) -> SymbolXY {
        SymbolXY {
            x: shift(&self.x),
            y: shift(&self.y),
        }
    }

    /// Un-shifts until `0 ∉ X ∩ Y`.
    pub fn minimal(&self) -> SymbolXY {
        let mut s = self.clone();
        while s.x.first() == Some(&0) && s.y.first() == Some(&0) {
            s.x = s.x[1..].iter().map(|v| v - 1).collect();
            s.y = s.y[1..].iter().map(|v| v - 1).collect();
        }
        s
    }

    /// Minimal, with defect ≥ 0 and, at defect 0, the smaller of the two
    /// orientations.
    pub fn normalized(&self) -> SymbolXY {
        let m = self.minimal();
        let w = m.swap();
        match m.defect() {
            d if d < 0 => w,
            0 if w < m => w,
            _ => m,
        }
    }

    pub fn equivalent(&self, other: &SymbolXY) -> bool {
        self.normalized() == other.normalized()
    }

    /// `X = Y`; such a class carries two unipotent characters.
    pub fn is_degenerate(&self) -> bool {
        self.x == self.y
    }

    pub fn hooks(&self, d: usize) -> Vec<HookRecord> {
        assert!(d >= 1);
        let mut out = Vec::new();
        for side in [Side::X, Side::Y] {
            let set = self.side(side);
            for &c in set {
                if c >= d && set.binary_search(&(c - d)).is_err() {
                    out.push(HookRecord {
                        side,
                        b: c - d,
                        c,
                        d,
                        kind: HookKind::Hook,
                    });
                }
            }
        }
        out
    }

    pub fn cohooks(&self, d: usize) -> Vec<HookRecord> {
        assert!(d >= 1);
        let mut out = Vec::new();
        for (side, other) in [(Side::X, Side::Y), (Side::Y, Side::X)] {
            let other_set = self.side(other);
            for &c in self.side(side) {
                if c >= d && other_set.binary_search(&(c - d)).is_err() {
                    out.push(HookRecord {
                        side,
                        b: c - d,
                        c,
                        d,
                        kind: HookKind::Cohook,
                    });
                }
            }
        }
        out
    }

    /// All hooks or cohooks of every length.
    pub fn all_of_kind(&self, kind: HookKind) -> Vec<HookRecord> {
        let max = self.x.iter().chain(&self.y).copied().max().unwrap_or(0);
        (1..=max)
            .flat_map(|d| match kind {
                HookKind::Hook => self.hooks(d),
                HookKind::Cohook => self.cohooks(d),
            })
            .collect()
    }

    pub fn has(&self, (kind, d): Constraint) -> bool {
        d >= 1
            && match kind {
                HookKind::Hook => !self.hooks(d).is_empty(),
                HookKind::Cohook => !self.cohooks(d).is_empty(),
            }
    }

    fn replace(&self, side: Side, f: impl FnOnce(&mut Vec<usize>, &mut Vec<usize>)) -> SymbolXY {
        let mut s = self.clone();
        match side {
            Side::X => f(&mut s.x, &mut s.y),
            Side::Y => f(&mut s.y, &mut s.x),
        }
        s.x.sort_unstable();
        s.y.sort_unstable();
        s
    }

    /// Replaces `c` by `b` on the hook's side.
    pub fn remove_hook(&self, h: &HookRecord) -> Result<SymbolXY, SymbolError> {
        if h.kind != HookKind::Hook || !self.hooks(h.d).contains(h) {
            return Err(SymbolError::NotAHook(*h, self.clone()));
        }
        Ok(self.replace(h.side, |own, _| {
            let i = own.binary_search(&h.c).unwrap();
            own[i] = h.b;
        }))
    }

    /// Moves `c` off the cohook's side and puts `b` on the other side.
    pub fn remove_cohook(&self, h: &HookRecord) -> Result<SymbolXY, SymbolError> {
        if h.kind != HookKind::Cohook || !self.cohooks(h.d).contains(h) {
            return Err(SymbolError::NotACohook(*h, self.clone()));
        }
        Ok(self.replace(h.side, |own, other| {
            own.retain(|&v| v != h.c);
            other.push(h.b);
        }))
    }

    /// Lengths `c - b` of all hooks and of all cohooks, sorted.
    pub fn all_hook_cohook_lengths(&self) -> (Vec<usize>, Vec<usize>) {
        let lengths = |k| {
            let mut v: Vec<usize> = self.all_of_kind(k).iter().map(|h| h.d).collect();
            v.sort_unstable();
            v
        };
        (lengths(HookKind::Hook), lengths(HookKind::Cohook))
    }

    /// Whether the prime `ℓ ∤ q` divides `∏_hooks (q^d - 1) ∏_cohooks (q^d + 1)`.
    pub fn denominator_divisible(&self, q: u64, l: u64) -> bool {
        assert!(!q.is_multiple_of(l), "ℓ must not divide q");
        let o = multiplicative_order(q, l) as usize;
        let (hooks, cohooks) = self.all_hook_cohook_lengths();
        hooks.iter().any(|d| d % o == 0) || cohooks.iter().any(|d| (2 * d) % o == 0 && d % o != 0)
    }
}

impl fmt::Display for SymbolXY {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| {
            v.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "({{{}}},{{{}}})", join(&self.x), join(&self.y))
    }
}

impl Serialize for SymbolXY {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [&self.x, &self.y].serialize(s)
    }
}

/// Increasing beta-set of `p` with `beads` beads.
fn beads(p: &Partition, beads: usize) -> Vec<usize> {
    let mut v = p.beta_set(beads);
    v.reverse();
    v
}

/// The minimal symbol of defect `d ≥ 0` built from the partitions with
/// `i(X) = |α|`, `i(Y) = |β|`.
pub fn symbol_from_partitions(alpha: &Partition, beta: &Partition, d: usize) -> SymbolXY {
    let l = beta.len().max(alpha.len().saturating_sub(d));
    SymbolXY {
        x: beads(alpha, l + d),
        y: beads(beta, l),
    }
}

/// One normalized representative per class of rank `r` whose defect passes
/// `defect_filter`. Classes of defect `d > 0` correspond to ordered pairs
/// `(α, β)` with `|α| + |β| = r - ⌊d²/4⌋`; at `d = 0` pairs are unordered.
pub fn enumerate_symbols(
    r: usize,
    defect_filter: impl Fn(usize) -> bool,
) -> Result<Vec<SymbolXY>, SymbolError> {
    enumerate_symbols_with_bound(r, defect_filter, DEFAULT_RANK_BOUND)
}

pub fn enumerate_symbols_with_bound(
    r: usize,
    defect_filter: impl Fn(usize) -> bool,
    bound: usize,
) -> Result<Vec<SymbolXY>, SymbolError> {
    if r > bound {
        return Err(SymbolError::SizeGuardExceeded { rank: r, bound });
    }
    let parts: Vec<Vec<Partition>> = (0..=r).map(partitions).collect();
    let mut out = Vec::new();
    for d in (0..).take_while(|d| d * d / 4 <= r) {
        if !defect_filter(d) {
            continue;
        }
        let s = r - d * d / 4;
        for a in 0..=s {
            for alpha in &parts[a] {
                for beta in &parts[s - a] {
                    let sym = symbol_from_partitions(alpha, beta, d);
                    if d > 0 || sym.normalized() == sym {
                        out.push(sym);
                    }
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Rank-`r` classes, all defects, satisfying every constraint.
pub fn count_constrained(r: usize, constraints: &[Constraint]) -> Result<usize, SymbolError> {
    if let Some(&(_, d)) = constraints.iter().find(|(_, d)| *d > r || *d == 0) {
        return Err(SymbolError::InvalidParameter(format!(
            "length {d} outside 1..={r}"
        )));
    }
    Ok(enumerate_symbols(r, |_| true)?
        .iter()
        .filter(|s| constraints.iter().all(|&c| s.has(c)))
        .count())
}

pub fn classify_surviving_symbols(
    r: usize,
    defect_class: DefectClass,
    required: &[Constraint],
) -> Result<Vec<SymbolXY>, SymbolError> {
    Ok(enumerate_symbols(r, |d| defect_class.contains(d))?
        .into_iter()
        .filter(|s| required.iter().all(|&c| s.has(c)))
        .collect())
}

/// The four rank-`n` symbols that survive in the odd-defect classification
/// with the required hook and cohook of lengths `n`, `n-1`.
pub fn expected_four(n: usize) -> [SymbolXY; 4] {
    let s = |x: Vec<usize>, y: Vec<usize>| SymbolXY::new(x, y).unwrap();
    let steinberg = s((0..=n).collect(), (1..=n).collect());
    if n.is_multiple_of(2) {
        let mut x2: Vec<usize> = (0..=n - 2).collect();
        x2.push(n);
        [
            s(vec![n], vec![]),
            s(vec![0, n], vec![1]),
            s(x2, (1..n).collect()),
            steinberg,
        ]
    } else {
        let mut y2: Vec<usize> = (1..=n - 2).collect();
        y2.push(n);
        [
            s(vec![n], vec![]),
            s(vec![1, n], vec![0]),
            s((0..n).collect(), y2),
            steinberg,
        ]
    }
}

#[cfg(test)]
mod tests;
