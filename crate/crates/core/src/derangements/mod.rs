//! Derangements of transitive actions of `S_n`, `A_n` and small explicit
//! permutation groups. The decomposition of even permutations into two
//! even derangements lives in `decompose`.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::perm::{
    class_label, enumerate_group, factorial, par_count, GroupKind, PermError, Permutation,
};

mod decompose;

pub use decompose::{
    random_even_permutation, two_derangement_decompose, two_derangement_decompose_with_rng,
    two_ell_cycle_factorization, Decomposition, Route,
};

/// Largest explicit group a closure computation will build.
pub const EXPLICIT_GROUP_GUARD: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DerangementError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("no factorization found for {0}")]
    SearchExhausted(String),
    #[error("action is not transitive")]
    NotTransitive,
    #[error("group too large: {0}")]
    SizeGuardExceeded(String),
    #[error("{0}")]
    Perm(#[from] PermError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ActionKind {
    Natural,
    KSubsets(usize),
    /// A subgroup of `S_N` given by generators, acting on `{0..N-1}`.
    Explicit,
}

/// A transitive action with materialized group elements and point images.
pub struct GroupAction {
    pub n: usize,
    pub kind: ActionKind,
    /// `None` for explicit subgroups.
    pub group: Option<GroupKind>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    /// `k`-subsets in lexicographic order.
    subsets: Vec<Vec<usize>>,
    subset_index: HashMap<u64, usize>,
    derangement: Vec<bool>,
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            if n - x < k - cur.len() {
                break;
            }
            cur.push(x);
            rec(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn mask(points: &[usize]) -> u64 {
    points.iter().fold(0, |m, &p| m | (1 << p))
}

impl GroupAction {
    fn build(
        n: usize,
        kind: ActionKind,
        group: Option<GroupKind>,
        elements: Vec<Permutation>,
    ) -> Result<Self, DerangementError> {
        let subsets = match kind {
            ActionKind::KSubsets(k) => k_subsets(n, k),
            _ => Vec::new(),
        };
        let subset_index = subsets
            .iter()
            .enumerate()
            .map(|(i, s)| (mask(s), i))
            .collect();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        let mut action = GroupAction {
            n,
            kind,
            group,
            elements,
            index,
            subsets,
            subset_index,
            derangement: Vec::new(),
        };
        action.derangement = action
            .elements
            .par_iter()
            .map(|g| action.is_derangement(g))
            .collect();
        if !action.is_transitive() {
            return Err(DerangementError::NotTransitive);
        }
        Ok(action)
    }

    pub fn natural(n: usize, group: GroupKind) -> Result<Self, DerangementError> {
        let elements = enumerate_group(n, group)?.collect();
        GroupAction::build(n, ActionKind::Natural, Some(group), elements)
    }

    /// Action on `k`-subsets of `{0..n-1}`.
    pub fn k_subsets(n: usize, k: usize, group: GroupKind) -> Result<Self, DerangementError> {
        if k == 0 || k >= n || n > 64 {
            return Err(DerangementError::InvalidParameter(format!(
                "need 0 < k < n <= 64, got k={k}, n={n}"
            )));
        }
        let elements = enumerate_group(n, group)?.collect();
        GroupAction::build(n, ActionKind::KSubsets(k), Some(group), elements)
    }

    /// The subgroup of `S_N` generated by `generators`, acting on `{0..N-1}`.
    pub fn explicit(generators: &[Permutation]) -> Result<Self, DerangementError> {
        let n = generators.first().map_or(0, Permutation::degree);
        if generators.iter().any(|g| g.degree() != n) {
            return Err(DerangementError::InvalidParameter(
                "generators of mixed degree".into(),
            ));
        }
        let id = Permutation::identity(n);
        let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
        let mut order = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in generators {
                let y = g.mul(&x);
                if seen.insert(y.clone()) {
                    if seen.len() > EXPLICIT_GROUP_GUARD {
                        return Err(DerangementError::SizeGuardExceeded(format!(
                            "more than {EXPLICIT_GROUP_GUARD} elements"
                        )));
                    }
                    order.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        order.sort();
        GroupAction::build(n, ActionKind::Explicit, None, order)
    }

    /// Size of `Ω`.
    pub fn num_points(&self) -> usize {
        match self.kind {
            ActionKind::KSubsets(_) => self.subsets.len(),
            _ => self.n,
        }
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn act(&self, g: &Permutation, point: usize) -> usize {
        match self.kind {
            ActionKind::KSubsets(_) => {
                let image: Vec<usize> = self.subsets[point].iter().map(|&x| g.apply(x)).collect();
                self.subset_index[&mask(&image)]
            }
            _ => g.apply(point),
        }
    }

    /// `g` as a permutation of `Ω`.
    pub fn image_permutation(&self, g: &Permutation) -> Permutation {
        Permutation::from_images((0..self.num_points()).map(|p| self.act(g, p)).collect())
            .expect("group elements act bijectively")
    }

    pub fn is_derangement(&self, g: &Permutation) -> bool {
        (0..self.num_points()).all(|p| self.act(g, p) != p)
    }

    fn is_transitive(&self) -> bool {
        let orbit: HashSet<usize> = self.elements.iter().map(|g| self.act(g, 0)).collect();
        orbit.len() == self.num_points()
    }

    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn label(&self) -> String {
        let group = self.group.map_or_else(
            || format!("<{} elements>", self.order()),
            |k| k.label(self.n),
        );
        match self.kind {
            ActionKind::Natural => format!("{group} natural"),
            ActionKind::KSubsets(k) => format!("{group} on {k}-subsets"),
            ActionKind::Explicit => format!("{group} on {} points", self.n),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassBreakdown {
    pub class: String,
    pub size: usize,
    pub derangements: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct DerangementReport {
    pub count: usize,
    pub order: usize,
    /// `δ = count / |G|`.
    pub proportion: BigRational,
    /// Per conjugacy class for `S_n` and `A_n`, per cycle type on `Ω`
    /// for explicit groups.
    pub witness_classes: Vec<ClassBreakdown>,
    /// Derangement status is constant on every class.
    pub class_closed: bool,
    /// `D = D⁻¹`.
    pub inverse_closed: bool,
}

pub fn derangements(action: &GroupAction) -> DerangementReport {
    let mut by_class: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    for (g, &d) in action.elements.iter().zip(&action.derangement) {
        let key = match action.group {
            Some(kind) => class_label(g, kind).to_string(),
            None => action.image_permutation(g).cycle_type().to_string(),
        };
        let e = by_class.entry(key).or_default();
        e.0 += 1;
        e.1 += d as usize;
    }
    let class_closed = match action.group {
        Some(_) => by_class.values().all(|&(size, d)| d == 0 || d == size),
        // conjugation by each element, checked on derangements only
        None => action
            .elements
            .iter()
            .zip(&action.derangement)
            .filter(|(_, &d)| d)
            .all(|(x, _)| {
                action
                    .elements
                    .iter()
                    .all(|g| action.derangement[action.index[&x.conjugate_by(g)]])
            }),
    };
    let inverse_closed = action
        .elements
        .iter()
        .zip(&action.derangement)
        .all(|(g, &d)| action.derangement[action.index[&g.inverse()]] == d);
    let count = action.derangement.iter().filter(|&&d| d).count();
    DerangementReport {
        count,
        order: action.order(),
        proportion: BigRational::new(count.into(), action.order().into()),
        witness_classes: by_class
            .into_iter()
            .map(|(class, (size, derangements))| ClassBreakdown {
                class,
                size,
                derangements,
            })
            .collect(),
        class_closed,
        inverse_closed,
    }
}

/// `|A_n ∩ Stab(R)|` for `|R| = r`.
fn an_pointwise_stabilizer(n: usize, r: usize) -> BigUint {
    if n - r >= 2 {
        factorial(n - r) / 2u32
    } else {
        BigUint::from(1u32)
    }
}

/// Derangements of `A_n` on `n` points, by inclusion–exclusion over the
/// fixed point set.
pub fn an_derangement_count(n: usize) -> BigUint {
    let mut total = BigInt::zero();
    let mut binom = BigUint::from(1u32);
    for r in 0..=n {
        let term = BigInt::from(&binom * an_pointwise_stabilizer(n, r));
        if r % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
        binom = binom * (n - r) / (r + 1);
    }
    total.to_biguint().expect("count is nonnegative")
}

#[derive(Debug, Clone, Serialize)]
pub struct BonferroniReport {
    pub n: usize,
    pub count: BigUint,
    /// `S_R = Σ_{r ≤ R} (-1)^r n! / (2 r!)` for `R = 0..=n-2`.
    pub partial_sums: Vec<BigRational>,
    /// The count lies between `S_R` and `S_{R+1}` for every `R ≤ n-3`.
    pub between_consecutive: bool,
}

pub fn an_derangement_bonferroni(n: usize) -> BonferroniReport {
    let count = an_derangement_count(n);
    let nf = BigInt::from(factorial(n));
    let mut partial_sums = Vec::new();
    let mut acc = BigRational::zero();
    for r in 0..=n.saturating_sub(2) {
        let term = BigRational::new(nf.clone(), BigInt::from(factorial(r)) * 2);
        if r % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
        partial_sums.push(acc.clone());
    }
    let c = BigRational::from_integer(BigInt::from(count.clone()));
    let between_consecutive = partial_sums.windows(2).all(|w| {
        let (lo, hi) = if w[0] <= w[1] {
            (&w[0], &w[1])
        } else {
            (&w[1], &w[0])
        };
        lo <= &c && &c <= hi
    });
    BonferroniReport {
        n,
        count,
        partial_sums,
        between_consecutive,
    }
}

/// `#{(d_1, d_2) ∈ D × D : d_1 d_2 = target} · |A_n| / |D|²` on the natural
/// action of `A_n`.
pub fn representation_ratio(
    n: usize,
    target: &Permutation,
) -> Result<BigRational, DerangementError> {
    if target.degree() != n || !target.is_even() {
        return Err(DerangementError::InvalidParameter(format!(
            "{target} is not in A{n}"
        )));
    }
    let pairs = par_count(n, GroupKind::An, |d| {
        d.is_derangement() && d.inv_mul(target).is_derangement()
    })?;
    let d = BigInt::from(an_derangement_count(n));
    let order = BigInt::from(GroupKind::An.order(n));
    Ok(BigRational::new(BigInt::from(pairs) * order, &d * &d))
}

/// Representation ratio of the 3-cycle `(0 1 2)`.
pub fn three_cycle_representation_ratio(n: usize) -> Result<BigRational, DerangementError> {
    if !(7..=10).contains(&n) {
        return Err(DerangementError::InvalidParameter(format!(
            "need 7 <= n <= 10, got {n}"
        )));
    }
    representation_ratio(n, &Permutation::cycle(n, &[0, 1, 2])?)
}

/// Odd `ℓ` with `⌊3n/4⌋ ≤ ℓ ≤ n`.
pub fn ell_set(n: usize) -> Vec<usize> {
    (3 * n / 4..=n).filter(|l| l % 2 == 1).collect()
}

/// Calls `f` on every `ℓ`-cycle on `n` points, each once, until it
/// returns `true`; returns that cycle.
pub fn find_ell_cycle(
    n: usize,
    ell: usize,
    mut f: impl FnMut(&Permutation) -> bool,
) -> Option<Permutation> {
    if ell < 2 || ell > n {
        return None;
    }
    for support in k_subsets(n, ell) {
        let (&first, rest) = support.split_first().unwrap();
        let mut rest = rest.to_vec();
        loop {
            let mut cyc = vec![first];
            cyc.extend_from_slice(&rest);
            let c = Permutation::cycle(n, &cyc).unwrap();
            if f(&c) {
                return Some(c);
            }
            if !next_perm(&mut rest) {
                break;
            }
        }
    }
    None
}

/// Every `ℓ`-cycle on `n` points, each once.
pub fn ell_cycles(n: usize, ell: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    find_ell_cycle(n, ell, |c| {
        out.push(c.clone());
        false
    });
    out
}

fn next_perm(v: &mut [usize]) -> bool {
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

/// The largest `ℓ ∈ L_n` such that no `ℓ`-cycle fixes point `0` of `Ω`,
/// for `A_n` acting transitively.
pub fn derangement_ell_criterion(action: &GroupAction) -> Result<Option<usize>, DerangementError> {
    if action.group != Some(GroupKind::An) || action.n < 5 {
        return Err(DerangementError::InvalidParameter(
            "needs A_n with n >= 5".into(),
        ));
    }
    for ell in ell_set(action.n).into_iter().rev() {
        if ell_cycles(action.n, ell)
            .par_iter()
            .all(|c| action.act(c, 0) != 0)
        {
            return Ok(Some(ell));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Serialize)]
pub struct DSquaredReport {
    pub action: String,
    pub order: usize,
    pub derangements: usize,
    /// Elements with no factorization `d_1 d_2`, as cycle strings.
    pub gaps: Vec<String>,
    pub covers_group: bool,
}

/// Checks `D² = G` element by element.
pub fn verify_d_squared(action: &GroupAction) -> DSquaredReport {
    let ds: Vec<&Permutation> = action
        .elements
        .iter()
        .zip(&action.derangement)
        .filter(|(_, &d)| d)
        .map(|(g, _)| g)
        .collect();
    // neighbouring derangements in sorted order tend to fail together, so
    // candidates are visited with a stride coprime to their number
    let len = ds.len();
    let stride = (len / 2 + 1..)
        .find(|s| num_integer::gcd(*s, len) == 1)
        .unwrap_or(1);
    let gaps: Vec<String> = action
        .elements
        .par_iter()
        .filter(|g| {
            !(0..len).any(|i| action.derangement[action.index[&ds[i * stride % len].inv_mul(g)]])
        })
        .map(|g| g.to_string())
        .collect();
    DSquaredReport {
        action: action.label(),
        order: action.order(),
        derangements: ds.len(),
        covers_group: gaps.is_empty(),
        gaps,
    }
}

/// `δ` as a float.
pub fn proportion_f64(r: &DerangementReport) -> f64 {
    r.proportion.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests;
