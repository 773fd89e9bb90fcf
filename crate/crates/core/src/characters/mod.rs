//! Irreducible characters of symmetric and alternating groups.
//!
//! Values come from the Murnaghan–Nakayama rule on beta-sets: removing a
//! rim `d`-hook moves one bead from position `b` to an empty `b - d`, with
//! height equal to the number of beads strictly in between.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::partition::{partitions, Partition};

mod table;
mod unipotent;

pub use table::{
    an_character_table, an_character_table_with_bound, sn_character_table,
    sn_character_table_with_bound, CharLabel, CharacterTable, DEFAULT_AN_TABLE_BOUND,
    DEFAULT_SN_TABLE_BOUND,
};
pub use unipotent::{unipotent_gl_degree, verify_adegree_bound, ADegreeReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharError {
    #[error("partition sizes differ: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("n = {n} exceeds the table bound {bound}")]
    SizeGuardExceeded { n: usize, bound: usize },
    #[error("degree quotient is not an integer")]
    NonIntegerDegree,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RimHookRemoval {
    pub source: Partition,
    pub result: Partition,
    pub length: usize,
    /// Rows spanned minus one.
    pub height: usize,
    pub sign: i8,
}

pub fn hook_lengths(lambda: &Partition) -> Vec<usize> {
    lambda.hook_lengths()
}

/// `n! / ∏ h`.
pub fn degree_hook_formula(lambda: &Partition) -> BigInt {
    BigInt::from(lambda.hook_length_degree())
}

/// `(result, height)` for every rim `d`-hook of the partition with the given
/// beta-set, in order of decreasing top row.
fn removals_on_beta(beta: &[usize], d: usize) -> Vec<(Vec<usize>, usize)> {
    let mut out = Vec::new();
    for (i, &b) in beta.iter().enumerate() {
        if b < d || beta.contains(&(b - d)) {
            continue;
        }
        let target = b - d;
        let height = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut next: Vec<usize> = beta.to_vec();
        next[i] = target;
        next.sort_unstable_by(|a, b| b.cmp(a));
        out.push((next, height));
    }
    out
}

/// All rim hooks of length `d`.
pub fn rim_hook_removals(lambda: &Partition, d: usize) -> Vec<RimHookRemoval> {
    if d == 0 {
        return Vec::new();
    }
    let beta = lambda.beta_set(lambda.len());
    removals_on_beta(&beta, d)
        .into_iter()
        .map(|(next, height)| RimHookRemoval {
            source: lambda.clone(),
            result: Partition::from_beta_set(&next),
            length: d,
            height,
            sign: if height % 2 == 0 { 1 } else { -1 },
        })
        .collect()
}

/// Memoized evaluator for `χ^λ(μ)` with a fixed class `μ`.
pub(crate) struct MnEvaluator {
    mu: Vec<usize>,
    memo: HashMap<(Vec<usize>, usize), BigInt>,
}

impl MnEvaluator {
    pub(crate) fn new(mu: &Partition) -> Self {
        MnEvaluator {
            mu: mu.parts().to_vec(),
            memo: HashMap::new(),
        }
    }

    /// Value at the shape with beta-set `beta` on the class `mu[idx..]`.
    fn eval(&mut self, beta: Vec<usize>, idx: usize) -> BigInt {
        if idx == self.mu.len() {
            return BigInt::one();
        }
        let key = (beta, idx);
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let d = self.mu[idx];
        let mut total = BigInt::zero();
        for (next, height) in removals_on_beta(&key.0, d) {
            let v = self.eval(next, idx + 1);
            if height % 2 == 0 {
                total += v;
            } else {
                total -= v;
            }
        }
        self.memo.insert(key, total.clone());
        total
    }

    pub(crate) fn value(&mut self, lambda: &Partition) -> BigInt {
        let beta = lambda.beta_set(lambda.len());
        self.eval(beta, 0)
    }
}

/// `χ^λ` on the class of cycle type `μ`.
pub fn mn_character(lambda: &Partition, mu: &Partition) -> Result<BigInt, CharError> {
    if lambda.size() != mu.size() {
        return Err(CharError::SizeMismatch(lambda.size(), mu.size()));
    }
    Ok(MnEvaluator::new(mu).value(lambda))
}

/// Every `λ ⊢ n` with `χ^λ(μ1) χ^λ(μ2) ≠ 0`, with both values, in
/// decreasing lexicographic order of `λ`.
pub fn classify_nonvanishing_pair(
    n: usize,
    mu1: &Partition,
    mu2: &Partition,
) -> Result<Vec<(Partition, BigInt, BigInt)>, CharError> {
    for mu in [mu1, mu2] {
        if mu.size() != n {
            return Err(CharError::SizeMismatch(n, mu.size()));
        }
    }
    let mut e1 = MnEvaluator::new(mu1);
    let mut e2 = MnEvaluator::new(mu2);
    let mut out = Vec::new();
    for lambda in partitions(n) {
        let v1 = e1.value(&lambda);
        if v1.is_zero() {
            continue;
        }
        let v2 = e2.value(&lambda);
        if !v2.is_zero() {
            out.push((lambda, v1, v2));
        }
    }
    Ok(out)
}
