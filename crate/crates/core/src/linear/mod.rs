//! `SL_n(F_q)` at small size: fixed-space strata, transvections, Gaussian
//! binomials and primitive prime divisors.

use std::collections::{BTreeMap, HashSet};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cycle_stats::cyclotomic_polynomial;

mod field;

pub use field::Fq;

/// Largest `|SL_n(F_q)|` a census will stream through.
pub const CENSUS_GUARD: u64 = 25_000_000;
/// Largest `|SL_n(F_q)|` that is materialized.
pub const MATERIALIZE_GUARD: u64 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinearError {
    #[error("unsupported field size {0}")]
    UnsupportedField(usize),
    #[error("|SL_{n}(F_{q})| = {order} exceeds the guard {guard}")]
    SizeGuardExceeded {
        n: usize,
        q: usize,
        order: BigUint,
        guard: u64,
    },
    #[error("matrix is not in SL_{0}")]
    NotSpecialLinear(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// Square matrix over `F_q`, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct MatrixFq {
    pub n: usize,
    pub entries: Vec<u8>,
}

impl MatrixFq {
    pub fn identity(n: usize) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        MatrixFq { n, entries }
    }

    /// A matrix of `SL_n(F_q)`.
    pub fn special_linear(f: &Fq, n: usize, entries: Vec<u8>) -> Result<Self, LinearError> {
        if entries.len() != n * n || entries.iter().any(|&x| x as usize >= f.q) {
            return Err(LinearError::InvalidParameter(format!(
                "need {} entries in 0..{}",
                n * n,
                f.q
            )));
        }
        let m = MatrixFq { n, entries };
        if m.det(f) != 1 {
            return Err(LinearError::NotSpecialLinear(n));
        }
        Ok(m)
    }

    /// `I + c·E_{ij}`, `i ≠ j`.
    pub fn elementary(n: usize, i: usize, j: usize, c: u8) -> Self {
        let mut m = MatrixFq::identity(n);
        m.entries[i * n + j] = c;
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.entries[i * self.n + j]
    }

    pub fn is_identity(&self) -> bool {
        *self == MatrixFq::identity(self.n)
    }

    pub fn mul(&self, f: &Fq, other: &MatrixFq) -> MatrixFq {
        let n = self.n;
        let mut entries = vec![0u8; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let cell = &mut entries[i * n + j];
                    *cell = f.add(*cell, f.mul(a, other.get(k, j)));
                }
            }
        }
        MatrixFq { n, entries }
    }

    pub fn det(&self, f: &Fq) -> u8 {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut det = 1u8;
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| a[r * n + col] != 0) else {
                return 0;
            };
            if piv != col {
                for j in 0..n {
                    a.swap(piv * n + j, col * n + j);
                }
                det = f.neg(det);
            }
            let p = a[col * n + col];
            det = f.mul(det, p);
            let pinv = f.inv(p).unwrap();
            for r in col + 1..n {
                let factor = f.mul(a[r * n + col], pinv);
                if factor != 0 {
                    for j in col..n {
                        a[r * n + j] = f.sub(a[r * n + j], f.mul(factor, a[col * n + j]));
                    }
                }
            }
        }
        det
    }

    /// `None` if singular.
    pub fn inverse(&self, f: &Fq) -> Option<MatrixFq> {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut b = MatrixFq::identity(n).entries;
        for col in 0..n {
            let piv = (col..n).find(|&r| a[r * n + col] != 0)?;
            for j in 0..n {
                a.swap(piv * n + j, col * n + j);
                b.swap(piv * n + j, col * n + j);
            }
            let pinv = f.inv(a[col * n + col]).unwrap();
            for j in 0..n {
                a[col * n + j] = f.mul(a[col * n + j], pinv);
                b[col * n + j] = f.mul(b[col * n + j], pinv);
            }
            for r in (0..n).filter(|&r| r != col) {
                let factor = a[r * n + col];
                if factor != 0 {
                    for j in 0..n {
                        a[r * n + j] = f.sub(a[r * n + j], f.mul(factor, a[col * n + j]));
                        b[r * n + j] = f.sub(b[r * n + j], f.mul(factor, b[col * n + j]));
                    }
                }
            }
        }
        Some(MatrixFq { n, entries: b })
    }

    pub fn rank(&self, f: &Fq) -> usize {
        rank_of_rows(f, self.n, self.entries.clone())
    }

    /// `dim ker(M - I)`.
    pub fn fixed_space_dim(&self, f: &Fq) -> usize {
        let n = self.n;
        let mut a = self.entries.clone();
        for i in 0..n {
            a[i * n + i] = f.sub(a[i * n + i], 1);
        }
        n - rank_of_rows(f, n, a)
    }

    /// Non-identity with a fixed hyperplane; within `SL_n` this forces
    /// unipotence.
    pub fn is_transvection(&self, f: &Fq) -> bool {
        !self.is_identity() && self.fixed_space_dim(f) + 1 == self.n
    }
}

/// Rank of a row-major matrix with `cols` columns.
fn rank_of_rows(f: &Fq, cols: usize, mut a: Vec<u8>) -> usize {
    let rows = a.len() / cols.max(1);
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| a[r * cols + col] != 0) else {
            continue;
        };
        for j in 0..cols {
            a.swap(piv * cols + j, rank * cols + j);
        }
        let pinv = f.inv(a[rank * cols + col]).unwrap();
        for r in rank + 1..rows {
            let factor = f.mul(a[r * cols + col], pinv);
            if factor != 0 {
                for j in col..cols {
                    a[r * cols + j] = f.sub(a[r * cols + j], f.mul(factor, a[rank * cols + j]));
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `q^{n(n-1)/2} ∏_{j=2}^n (q^j - 1)`.
pub fn sl_order(n: usize, q: usize) -> BigUint {
    let q = BigUint::from(q);
    let mut order = q.pow((n * n.saturating_sub(1) / 2) as u32);
    for j in 2..=n {
        order *= q.pow(j as u32) - 1u32;
    }
    order
}

fn check_guard(n: usize, q: usize, guard: u64) -> Result<(), LinearError> {
    let order = sl_order(n, q);
    if order > BigUint::from(guard) {
        return Err(LinearError::SizeGuardExceeded { n, q, order, guard });
    }
    Ok(())
}

fn all_vectors(q: usize, n: usize) -> Vec<Vec<u8>> {
    let total = q.pow(n as u32);
    (0..total)
        .map(|mut v| {
            (0..n)
                .map(|_| {
                    let d = (v % q) as u8;
                    v /= q;
                    d
                })
                .collect()
        })
        .collect()
}

/// Linearly independent `(n-1)`-tuples of rows, flattened.
fn independent_prefixes(f: &Fq, n: usize, vectors: &[Vec<u8>]) -> Vec<Vec<u8>> {
    let mut level: Vec<Vec<u8>> = vec![Vec::new()];
    for k in 0..n.saturating_sub(1) {
        level = level
            .par_iter()
            .flat_map_iter(|prefix| {
                vectors.iter().filter_map(move |v| {
                    let mut rows = prefix.clone();
                    rows.extend_from_slice(v);
                    (rank_of_rows(f, n, rows.clone()) == k + 1).then_some(rows)
                })
            })
            .collect();
    }
    level
}

/// Folds `visit` over `SL_n(F_q)` in parallel, one accumulator per
/// independent prefix, merged with `merge`.
fn fold_sl<A, V, M>(
    f: &Fq,
    n: usize,
    guard: u64,
    init: impl Fn() -> A + Sync,
    visit: V,
    merge: M,
) -> Result<A, LinearError>
where
    A: Send,
    V: Fn(&mut A, &MatrixFq) + Sync,
    M: Fn(A, A) -> A + Sync,
{
    if n == 0 {
        return Err(LinearError::InvalidParameter("n must be positive".into()));
    }
    check_guard(n, f.q, guard)?;
    let vectors = all_vectors(f.q, n);
    let prefixes = independent_prefixes(f, n, &vectors);
    Ok(prefixes
        .par_iter()
        .map(|prefix| {
            let mut acc = init();
            let mut m = MatrixFq {
                n,
                entries: prefix.clone(),
            };
            m.entries.resize(n * n, 0);
            // det is linear in the last row: det = Σ_j r_j c_j
            let cof: Vec<u8> = (0..n)
                .map(|j| {
                    let mut e = m.clone();
                    e.entries[(n - 1) * n + j] = 1;
                    e.det(f)
                })
                .collect();
            for v in &vectors {
                let d = v
                    .iter()
                    .zip(&cof)
                    .fold(0, |s, (&x, &c)| f.add(s, f.mul(x, c)));
                if d == 1 {
                    m.entries[(n - 1) * n..].copy_from_slice(v);
                    visit(&mut acc, &m);
                }
            }
            acc
        })
        .reduce(&init, &merge))
}

/// All of `SL_n(F_q)`, in a fixed order.
pub fn sl_elements(f: &Fq, n: usize) -> Result<Vec<MatrixFq>, LinearError> {
    fold_sl(
        f,
        n,
        MATERIALIZE_GUARD,
        Vec::new,
        |acc, m| acc.push(m.clone()),
        |mut a, b| {
            a.extend(b);
            a
        },
    )
}

/// `[k choose m]_q`.
pub fn gaussian_binomial(k: u32, m: u32, q: u64) -> BigUint {
    if m > k {
        return BigUint::zero();
    }
    let q = BigUint::from(q);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..m {
        num *= q.pow(k) - q.pow(i);
        den *= q.pow(m) - q.pow(i);
    }
    num / den
}

/// `q^{m(k-m)} ≤ [k choose m]_q < 4 q^{m(k-m)}`.
pub fn grassmannian_sandwich(k: u32, m: u32, q: u64) -> bool {
    let g = gaussian_binomial(k, m, q);
    let lower = BigUint::from(q).pow(m * (k - m));
    lower <= g && g < lower * 4u32
}

#[derive(Debug, Clone, Serialize)]
pub struct StratumCensus {
    pub n: usize,
    pub q: usize,
    /// `m ↦ |SL_n(F_q)_m|`, fixed space of dimension exactly `m`.
    pub counts: BTreeMap<usize, u64>,
    pub order: u64,
    pub order_matches_formula: bool,
    /// `|SL_{≥m}| < 16 q^{-m²} |SL|` for `1 ≤ m ≤ n-1`.
    pub upper_bound_holds: bool,
    /// `|SL_{≥n}| < 16 q^{1-n²} |SL|`.
    pub upper_bound_top_holds: bool,
    /// `|SL_m| ≥ (1 - 128 q^{-m}) q^{-m²} |SL|` for `0 ≤ m ≤ n`.
    pub lower_bound_holds: bool,
    /// Strata where the lower bound is positive, hence informative.
    pub lower_bound_informative: Vec<usize>,
}

impl StratumCensus {
    /// `|SL_{≥m}|`.
    pub fn at_least(&self, m: usize) -> u64 {
        self.counts.range(m..).map(|(_, c)| c).sum()
    }

    pub fn all_pass(&self) -> bool {
        self.order_matches_formula
            && self.upper_bound_holds
            && self.upper_bound_top_holds
            && self.lower_bound_holds
    }
}

pub fn stratum_census(n: usize, q: usize) -> Result<StratumCensus, LinearError> {
    stratum_census_with_guard(n, q, CENSUS_GUARD)
}

pub fn stratum_census_with_guard(
    n: usize,
    q: usize,
    guard: u64,
) -> Result<StratumCensus, LinearError> {
    let f = Fq::new(q)?;
    let counts_vec = fold_sl(
        &f,
        n,
        guard,
        || vec![0u64; n + 1],
        |acc, m| acc[m.fixed_space_dim(&f)] += 1,
        |a, b| a.iter().zip(&b).map(|(x, y)| x + y).collect(),
    )?;
    let counts: BTreeMap<usize, u64> = counts_vec.into_iter().enumerate().collect();
    let order: u64 = counts.values().sum();
    let sl = BigUint::from(order);
    let qb = BigUint::from(q);
    let mut census = StratumCensus {
        n,
        q,
        counts,
        order,
        order_matches_formula: sl == sl_order(n, q),
        upper_bound_holds: true,
        upper_bound_top_holds: true,
        lower_bound_holds: true,
        lower_bound_informative: Vec::new(),
    };
    for m in 1..n {
        let lhs = BigUint::from(census.at_least(m)) * qb.pow((m * m) as u32);
        census.upper_bound_holds &= lhs < &sl * 16u32;
    }
    // |SL_{≥n}| q^{n²-1} < 16 |SL|
    census.upper_bound_top_holds =
        BigUint::from(census.at_least(n)) * qb.pow((n * n - 1) as u32) < &sl * 16u32;
    for m in 0..=n {
        // |SL_m| q^{m²+m} ≥ (q^m - 128) |SL|
        let lhs = BigInt::from(census.counts[&m]) * BigInt::from(qb.pow((m * m + m) as u32));
        let rhs = (BigInt::from(qb.pow(m as u32)) - 128) * BigInt::from(sl.clone());
        census.lower_bound_holds &= lhs >= rhs;
        if rhs > BigInt::zero() {
            census.lower_bound_informative.push(m);
        }
    }
    Ok(census)
}

#[derive(Debug, Clone, Serialize)]
pub struct FixedQReport {
    pub n: usize,
    pub q: usize,
    pub s: usize,
    pub t: usize,
    pub order: usize,
    pub s_size: usize,
    pub t_size: usize,
    pub s_fraction: BigRational,
    pub t_fraction: BigRational,
    pub transvections: usize,
    /// Pairs `(σ, ρ)`, `σ ∈ S`, `ρ` a transvection, with `σ⁻¹ρ ∈ T`.
    pub hits: usize,
    /// `t ≥ s + 2`; otherwise `hits` is reported but not asserted.
    pub separation_ok: bool,
    pub no_transvection: bool,
    pub pass: bool,
}

/// Whether `S T` meets the transvections, for the strata `S = SL_s`,
/// `T = SL_t`.
pub fn fixed_q_product_check(
    n: usize,
    q: usize,
    s: usize,
    t: usize,
) -> Result<FixedQReport, LinearError> {
    if s > n || t > n {
        return Err(LinearError::InvalidParameter(format!(
            "strata must lie in 0..={n}"
        )));
    }
    let f = Fq::new(q)?;
    let all = sl_elements(&f, n)?;
    let dims: Vec<usize> = all.par_iter().map(|m| m.fixed_space_dim(&f)).collect();
    let pick = |d: usize| -> Vec<&MatrixFq> {
        all.iter()
            .zip(&dims)
            .filter(|(_, &x)| x == d)
            .map(|(m, _)| m)
            .collect()
    };
    let s_set = pick(s);
    let t_set: HashSet<&MatrixFq> = pick(t).into_iter().collect();
    let transvections: Vec<&MatrixFq> = all.iter().filter(|m| m.is_transvection(&f)).collect();
    let hits = s_set
        .par_iter()
        .map(|sigma| {
            let inv = sigma.inverse(&f).expect("SL is invertible");
            transvections
                .iter()
                .filter(|rho| t_set.contains(&inv.mul(&f, rho)))
                .count()
        })
        .sum();
    let order = all.len();
    let separation_ok = t >= s + 2;
    Ok(FixedQReport {
        n,
        q,
        s,
        t,
        order,
        s_size: s_set.len(),
        t_size: t_set.len(),
        s_fraction: BigRational::new(s_set.len().into(), order.into()),
        t_fraction: BigRational::new(t_set.len().into(), order.into()),
        transvections: transvections.len(),
        hits,
        separation_ok,
        no_transvection: hits == 0,
        pass: !separation_ok || hits == 0,
    })
}

/// Smallest prime `ℓ | q^e - 1` with `ord_ℓ(q) = e`.
pub fn zsygmondy_prime(q: u64, e: u32) -> Option<u64> {
    assert!(q >= 2 && e >= 1);
    let phi: BigInt = cyclotomic_polynomial(e as usize)
        .iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| acc * BigInt::from(q) + c);
    let mut rest = phi.to_biguint().expect("Φ_e(q) > 0 for q ≥ 2");
    // primes dividing both Φ_e(q) and e are not primitive
    for r in (2..=e as u64).filter(|r| (e as u64).is_multiple_of(*r) && is_prime_u64(*r)) {
        while (&rest % r).is_zero() {
            rest /= r;
        }
    }
    if rest.is_one() {
        return None;
    }
    // primitive divisors are ≡ 1 mod e
    let step = e as u64;
    let mut l = step + 1;
    while BigUint::from(l) * l <= rest {
        if is_prime_u64(l) && (&rest % l).is_zero() {
            return Some(l);
        }
        l += step;
    }
    rest.to_u64()
}

fn is_prime_u64(n: u64) -> bool {
    n >= 2
        && (2u64..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// Multiplicative order of `q` modulo a prime `l ∤ q`.
pub fn multiplicative_order(q: u64, l: u64) -> u64 {
    let mut x = q % l;
    let mut k = 1;
    while x != 1 {
        x = (x as u128 * q as u128 % l as u128) as u64;
        k += 1;
    }
    k
}
