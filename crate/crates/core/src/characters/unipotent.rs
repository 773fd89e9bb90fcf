//! Unipotent character degrees of `GL_n(q)` and the degree lower bound for
//! partitions with a long first row.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::CharError;
use crate::partition::{partitions, Partition};

/// `q^{Σ C(λ_i, 2)} ∏_{j=1}^n (q^j - 1) / ∏_{boxes} (q^h - 1)`.
pub fn unipotent_gl_degree(lambda: &Partition, q: u64) -> Result<BigInt, CharError> {
    if q < 2 {
        return Err(CharError::InvalidParameter(format!(
            "q = {q} must be at least 2"
        )));
    }
    if lambda.is_empty() {
        return Err(CharError::InvalidParameter("empty partition".into()));
    }
    let qb = BigInt::from(q);
    let qm1 = |e: usize| qb.pow(e as u32) - BigInt::one();
    let exp: usize = lambda
        .parts()
        .iter()
        .map(|&l| l * l.saturating_sub(1) / 2)
        .sum();
    let num: BigInt = (1..=lambda.size()).map(qm1).product::<BigInt>() * qb.pow(exp as u32);
    let den: BigInt = lambda.hook_lengths().into_iter().map(qm1).product();
    let (quot, rem) = num.div_rem(&den);
    if !rem.is_zero() {
        return Err(CharError::NonIntegerDegree);
    }
    Ok(quot)
}

#[derive(Debug, Clone, Serialize)]
pub struct ADegreeReport {
    pub n: usize,
    pub l: usize,
    pub q: u64,
    /// The bound is `q^{exponent / 2}`.
    pub exponent: i64,
    pub checked: usize,
    pub all_pass: bool,
    /// `min over λ of log_q(degree) - exponent / 2`.
    pub min_log_margin: f64,
    pub witness: Option<Partition>,
}

/// Checks `degree(λ) > q^{(n² - n - 5L² + 3L - 4)/2}` for every `λ ⊢ n` with
/// `λ_1 = n - L`, exactly, by comparing `degree²` with `q^{exponent}`.
pub fn verify_adegree_bound(n: usize, l: usize, q: u64) -> Result<ADegreeReport, CharError> {
    if n <= 2 * l {
        return Err(CharError::InvalidParameter(format!(
            "need n > 2L, got n={n}, L={l}"
        )));
    }
    if q < 2 {
        return Err(CharError::InvalidParameter(format!(
            "q = {q} must be at least 2"
        )));
    }
    let (ni, li) = (n as i64, l as i64);
    let exponent = ni * ni - ni - 5 * li * li + 3 * li - 4;
    let qb = BigInt::from(q);
    let mut report = ADegreeReport {
        n,
        l,
        q,
        exponent,
        checked: 0,
        all_pass: true,
        min_log_margin: f64::INFINITY,
        witness: None,
    };
    for lambda in partitions(n).into_iter().filter(|p| p.parts()[0] == n - l) {
        let deg = unipotent_gl_degree(&lambda, q)?;
        // q^{exponent} < 1 ≤ degree² when the exponent is negative
        let pass = exponent < 0 || &deg * &deg > qb.pow(exponent as u32);
        let log_deg = deg.to_f64().map_or(f64::INFINITY, f64::ln) / (q as f64).ln();
        let margin = log_deg - exponent as f64 / 2.0;
        report.checked += 1;
        report.all_pass &= pass;
        if margin < report.min_log_margin {
            report.min_log_margin = margin;
            report.witness = Some(lambda);
        }
    }
    Ok(report)
}
