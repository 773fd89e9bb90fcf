//! Materialized `S_n` or `A_n`. Elements are kept in lexicographic order
//! with a rank index; small groups also carry a Cayley table.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::perm::{
    class_label, conjugacy_classes, enumerate_group_with_guard, ClassLabel, ConjugacyClassSn,
    GroupKind, PermError, Permutation,
};

/// Largest group this handle will materialize.
pub const MATERIALIZE_GUARD: u64 = 4_000_000;
/// Largest group that also gets a Cayley table.
pub const CAYLEY_GUARD: usize = 2_600;

pub struct EnumeratedGroup {
    pub n: usize,
    pub kind: GroupKind,
    elements: Vec<Permutation>,
    /// `S_n` lexicographic rank to element index, `u32::MAX` if absent.
    index: Vec<u32>,
    classes: Vec<ConjugacyClassSn>,
    class_of: Vec<usize>,
    cayley: Option<Vec<u32>>,
    identity: usize,
}

/// Lexicographic rank in `S_n`.
pub fn lex_rank(p: &Permutation) -> usize {
    let n = p.degree();
    let mut used = 0u64;
    let mut rank = 0usize;
    for (k, &v) in p.images().iter().enumerate() {
        let smaller = (used & ((1u64 << v) - 1)).count_ones() as usize;
        rank = rank * (n - k) + (v - smaller);
        used |= 1 << v;
    }
    rank
}

impl EnumeratedGroup {
    pub fn new(n: usize, kind: GroupKind) -> Result<Self, PermError> {
        let elements: Vec<Permutation> =
            enumerate_group_with_guard(n, kind, MATERIALIZE_GUARD)?.collect();
        let sn_order = (1..=n).product::<usize>();
        let mut index = vec![u32::MAX; sn_order];
        for (i, e) in elements.iter().enumerate() {
            index[lex_rank(e)] = i as u32;
        }
        let classes = conjugacy_classes(n, kind);
        let class_idx: HashMap<ClassLabel, usize> = classes
            .iter()
            .enumerate()
            .map(|(i, c)| (c.label(), i))
            .collect();
        let class_of = elements
            .par_iter()
            .map(|e| class_idx[&class_label(e, kind)])
            .collect();
        let identity = index[0] as usize;
        let mut g = EnumeratedGroup {
            n,
            kind,
            elements,
            index,
            classes,
            class_of,
            cayley: None,
            identity,
        };
        if g.order() <= CAYLEY_GUARD {
            let table = g
                .elements
                .par_iter()
                .flat_map_iter(|a| {
                    let g = &g;
                    g.elements
                        .iter()
                        .map(move |b| g.index_of(&a.mul(b)).unwrap() as u32)
                })
                .collect();
            g.cayley = Some(table);
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        if p.degree() != self.n {
            return None;
        }
        match self.index[lex_rank(p)] {
            u32::MAX => None,
            i => Some(i as usize),
        }
    }

    /// Index of `a ∘ b`.
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.cayley {
            Some(t) => t[a * self.order() + b] as usize,
            None => self.index[lex_rank(&self.elements[a].mul(&self.elements[b]))] as usize,
        }
    }

    /// Index of `a⁻¹ ∘ b`.
    #[inline]
    pub fn inv_mul(&self, a: usize, b: usize) -> usize {
        self.index[lex_rank(&self.elements[a].inv_mul(&self.elements[b]))] as usize
    }

    pub fn classes(&self) -> &[ConjugacyClassSn] {
        &self.classes
    }

    /// Class index, in the order of [`conjugacy_classes`] and of character
    /// tables.
    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn class_members(&self, class: usize) -> Vec<usize> {
        (0..self.order())
            .filter(|&i| self.class_of[i] == class)
            .collect()
    }

    /// Index of a fixed element of the class.
    pub fn class_representative(&self, class: usize) -> usize {
        self.class_of
            .iter()
            .position(|&c| c == class)
            .expect("classes are nonempty")
    }

    pub fn indices_of(&self, perms: &[Permutation]) -> Result<Vec<usize>, PermError> {
        perms
            .iter()
            .map(|p| self.index_of(p).ok_or(PermError::NotABijection(self.n)))
            .collect()
    }
}

/// A union of conjugacy classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalSubset {
    pub n: usize,
    pub kind: GroupKind,
    pub member_classes: BTreeSet<usize>,
    pub size: BigUint,
}

impl NormalSubset {
    pub fn from_classes(n: usize, kind: GroupKind, member_classes: BTreeSet<usize>) -> Self {
        let classes = conjugacy_classes(n, kind);
        let size = member_classes.iter().map(|&c| &classes[c].class_size).sum();
        NormalSubset {
            n,
            kind,
            member_classes,
            size,
        }
    }

    /// Classes whose representatives satisfy `pred`.
    pub fn from_predicate(n: usize, kind: GroupKind, pred: impl Fn(&Permutation) -> bool) -> Self {
        let members = conjugacy_classes(n, kind)
            .iter()
            .enumerate()
            .filter(|(_, c)| pred(&crate::perm::representative(&c.label())))
            .map(|(i, _)| i)
            .collect();
        NormalSubset::from_classes(n, kind, members)
    }

    pub fn whole(n: usize, kind: GroupKind) -> Self {
        let k = conjugacy_classes(n, kind).len();
        NormalSubset::from_classes(n, kind, (0..k).collect())
    }

    pub fn contains_class(&self, c: usize) -> bool {
        self.member_classes.contains(&c)
    }

    pub fn size_u64(&self) -> u64 {
        self.size.to_u64().unwrap_or(u64::MAX)
    }

    pub fn is_empty(&self) -> bool {
        self.size.is_zero()
    }

    pub fn elements(&self, g: &EnumeratedGroup) -> Vec<usize> {
        (0..g.order())
            .filter(|&i| self.member_classes.contains(&g.class_of(i)))
            .collect()
    }
}
