//! Statistics of the cycle count `p(σ)` over `S_n` and `A_n`.

use std::collections::BTreeSet;
use std::io::{self, Read, Write};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::partition::distinct_odd_partitions;
use crate::perm::{enumerate_group, factorial, GroupKind, PermError, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycleStatsError {
    #[error("invalid window: {0}")]
    InvalidWindow(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("{0}")]
    Perm(#[from] PermError),
}

/// Unsigned Stirling numbers of the first kind, `c[n][k]` for `n ≤ n_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StirlingTable {
    rows: Vec<Vec<BigUint>>,
}

impl StirlingTable {
    pub fn new(n_max: usize) -> Self {
        let mut rows = vec![vec![BigUint::one()]];
        for n in 0..n_max {
            let prev = &rows[n];
            let row = (0..=n + 1)
                .map(|k| {
                    let stay = if k <= n {
                        prev[k].clone() * n
                    } else {
                        BigUint::zero()
                    };
                    let grow = if k >= 1 {
                        prev[k - 1].clone()
                    } else {
                        BigUint::zero()
                    };
                    stay + grow
                })
                .collect();
            rows.push(row);
        }
        StirlingTable { rows }
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn get(&self, n: usize, k: usize) -> BigUint {
        self.rows
            .get(n)
            .and_then(|r| r.get(k))
            .cloned()
            .unwrap_or_default()
    }

    pub fn row(&self, n: usize) -> &[BigUint] {
        &self.rows[n]
    }

    /// Length-prefixed rows: `u32` entry count, then per entry a `u32` byte
    /// length and little-endian bytes.
    pub fn write_to<W: Write>(&self, mut w: W) -> io::Result<()> {
        w.write_all(&(self.rows.len() as u32).to_le_bytes())?;
        for row in &self.rows {
            w.write_all(&(row.len() as u32).to_le_bytes())?;
            for x in row {
                let bytes = x.to_bytes_le();
                w.write_all(&(bytes.len() as u32).to_le_bytes())?;
                w.write_all(&bytes)?;
            }
        }
        Ok(())
    }

    pub fn read_from<R: Read>(mut r: R) -> io::Result<Self> {
        let mut word = [0u8; 4];
        let mut next_u32 = |r: &mut R| -> io::Result<usize> {
            r.read_exact(&mut word)?;
            Ok(u32::from_le_bytes(word) as usize)
        };
        let num_rows = next_u32(&mut r)?;
        let mut rows = Vec::with_capacity(num_rows);
        for _ in 0..num_rows {
            let len = next_u32(&mut r)?;
            let mut row = Vec::with_capacity(len);
            for _ in 0..len {
                let nbytes = next_u32(&mut r)?;
                let mut buf = vec![0u8; nbytes];
                r.read_exact(&mut buf)?;
                row.push(BigUint::from_bytes_le(&buf));
            }
            rows.push(row);
        }
        Ok(StirlingTable { rows })
    }
}

pub fn stirling_first(n: usize, k: usize) -> BigUint {
    StirlingTable::new(n).get(n, k)
}

/// `P_{n,m,a}`: elements with `p(σ) ≡ a (mod m)`; for `A_n` also
/// `p(σ) ≡ n (mod 2)`.
pub fn count_p_mod(n: usize, m: usize, a: usize, kind: GroupKind) -> BigUint {
    count_p_mod_with(&StirlingTable::new(n), n, m, a, kind)
}

pub fn count_p_mod_with(
    table: &StirlingTable,
    n: usize,
    m: usize,
    a: usize,
    kind: GroupKind,
) -> BigUint {
    assert!(m >= 1, "modulus must be positive");
    (0..=n)
        .filter(|&k| k % m == a % m)
        .filter(|&k| kind == GroupKind::Sn || (n - k).is_multiple_of(2))
        .map(|k| table.get(n, k))
        .sum()
}

/// `max_a |m P_{n,m,a} / n! - 1|` over `S_n`.
pub fn equidistribution_deviation(n: usize, m: usize) -> f64 {
    let table = StirlingTable::new(n);
    let nf = BigInt::from(factorial(n));
    (0..m)
        .map(|a| {
            let p = BigInt::from(count_p_mod_with(&table, n, m, a, GroupKind::Sn)) * m;
            (BigRational::new(p, nf.clone()) - BigRational::one())
                .abs()
                .to_f64()
                .unwrap()
        })
        .fold(0.0, f64::max)
}

/// Polynomials over ℤ, lowest degree first, no trailing zeros.
type Poly = Vec<BigInt>;

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// Quotient and remainder by a monic divisor.
fn poly_divrem_monic(a: &Poly, d: &Poly) -> (Poly, Poly) {
    let mut r = a.clone();
    let dd = d.len() - 1;
    if r.len() <= dd {
        return (Vec::new(), trim(r));
    }
    let mut q = vec![BigInt::zero(); r.len() - dd];
    for i in (dd..r.len()).rev() {
        let c = r[i].clone();
        if c.is_zero() {
            continue;
        }
        q[i - dd] = c.clone();
        for (j, dj) in d.iter().enumerate() {
            r[i - dd + j] -= &c * dj;
        }
    }
    (trim(q), trim(r))
}

/// `Φ_m` as integer coefficients.
pub fn cyclotomic_polynomial(m: usize) -> Vec<BigInt> {
    assert!(m >= 1);
    let mut num: Poly = vec![BigInt::zero(); m + 1];
    num[0] = BigInt::from(-1);
    num[m] = BigInt::one();
    for d in (1..m).filter(|d| m.is_multiple_of(*d)) {
        let (q, r) = poly_divrem_monic(&num, &cyclotomic_polynomial(d));
        debug_assert!(r.is_empty());
        num = q;
    }
    num
}

#[derive(Debug, Clone, Serialize)]
pub struct RisingFactorialReport {
    pub n: usize,
    pub m: usize,
    /// `Σ_a ζ^a P_{n,m,a}` reduced mod `Φ_m`.
    pub lhs: Vec<String>,
    /// `ζ(ζ+1)⋯(ζ+n-1)` reduced mod `Φ_m`.
    pub rhs: Vec<String>,
    pub holds: bool,
}

/// Checks `Σ_a ζ^a P_{n,m,a} = ζ(ζ+1)⋯(ζ+n-1)` in `ℤ[x]/Φ_m`.
pub fn rising_factorial_identity_check(n: usize, m: usize) -> RisingFactorialReport {
    assert!(m >= 1);
    let phi = cyclotomic_polynomial(m);
    let table = StirlingTable::new(n);
    let mut lhs: Poly = vec![BigInt::zero(); m];
    for (a, slot) in lhs.iter_mut().enumerate() {
        *slot = BigInt::from(count_p_mod_with(&table, n, m, a, GroupKind::Sn));
    }
    let lhs = poly_divrem_monic(&trim(lhs), &phi).1;
    let mut rhs: Poly = vec![BigInt::one()];
    for j in 0..n {
        rhs = poly_mul(&rhs, &vec![BigInt::from(j), BigInt::one()]);
        rhs = poly_divrem_monic(&rhs, &phi).1;
    }
    let show = |p: &Poly| p.iter().map(BigInt::to_string).collect();
    RisingFactorialReport {
        n,
        m,
        holds: lhs == rhs,
        lhs: show(&lhs),
        rhs: show(&rhs),
    }
}

/// Residue windows for the two normal subsets of `A_n` whose product avoids
/// 3-cycles: `S` has `p(σ) mod m ∈ {2, 4, …, 2k-2}` and `T` has
/// `p(σ) mod m ∈ {2k+2, …, 2l-2}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidueSetPair {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub l: usize,
    pub s_residues: BTreeSet<usize>,
    pub t_residues: BTreeSet<usize>,
    /// No `s + δ ≡ t (mod m)` with `δ ∈ {-2, 0, 2}`.
    pub gap_ok: bool,
}

impl ResidueSetPair {
    pub fn in_s(&self, sigma: &Permutation) -> bool {
        sigma.is_even() && self.s_residues.contains(&(sigma.num_cycles() % self.m))
    }

    pub fn in_t(&self, sigma: &Permutation) -> bool {
        sigma.is_even() && self.t_residues.contains(&(sigma.num_cycles() % self.m))
    }

    fn size(&self, residues: &BTreeSet<usize>) -> BigUint {
        let table = StirlingTable::new(self.n);
        residues
            .iter()
            .map(|&a| count_p_mod_with(&table, self.n, self.m, a, GroupKind::An))
            .sum()
    }

    pub fn s_size(&self) -> BigUint {
        self.size(&self.s_residues)
    }

    pub fn t_size(&self) -> BigUint {
        self.size(&self.t_residues)
    }
}

pub fn build_alt_sets(
    n: usize,
    m: usize,
    k: usize,
    l: usize,
) -> Result<ResidueSetPair, CycleStatsError> {
    if m.is_multiple_of(2) {
        return Err(CycleStatsError::InvalidParameter(format!(
            "m = {m} must be odd"
        )));
    }
    if !(0 < k && k < l && l <= m) {
        return Err(CycleStatsError::InvalidParameter(format!(
            "need 0 < k < l <= m, got k={k}, l={l}, m={m}"
        )));
    }
    let s_residues: BTreeSet<usize> = (1..k).map(|j| (2 * j) % m).collect();
    let t_residues: BTreeSet<usize> = (k + 1..l).map(|j| (2 * j) % m).collect();
    if let Some(r) = s_residues.intersection(&t_residues).next() {
        return Err(CycleStatsError::InvalidWindow(format!(
            "residue {r} lies in both windows"
        )));
    }
    let gap_ok = s_residues.iter().all(|&s| {
        [m - 2, 0, 2]
            .iter()
            .all(|&d| !t_residues.contains(&((s + d) % m)))
    });
    Ok(ResidueSetPair {
        n,
        m,
        k,
        l,
        s_residues,
        t_residues,
        gap_ok,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct GapReport {
    pub n: usize,
    pub s_size: u64,
    pub t_size: u64,
    pub s_fraction: f64,
    pub t_fraction: f64,
    /// 3-cycles `c` with some `s ∈ S`, `s⁻¹c ∈ T`.
    pub three_cycles_hit: u64,
    pub three_cycles_total: u64,
    pub no_three_cycle: bool,
    /// `p(s⁻¹c) - p(s) ∈ {-2, 0, 2}` for every `s ∈ A_n` and 3-cycle `c`.
    pub p_difference_lemma: bool,
}

fn three_cycles(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in a + 1..n {
                if c != b {
                    out.push(Permutation::cycle(n, &[a, b, c]).unwrap());
                }
            }
        }
    }
    out
}

/// Brute force over `A_n` for arbitrary membership predicates.
pub fn three_cycle_gap_check_with<FS, FT>(
    n: usize,
    in_s: FS,
    in_t: FT,
) -> Result<GapReport, CycleStatsError>
where
    FS: Fn(&Permutation) -> bool + Sync,
    FT: Fn(&Permutation) -> bool + Sync,
{
    struct Scan {
        in_s: bool,
        in_t: bool,
        lemma: bool,
        hits: Vec<usize>,
    }
    let elems: Vec<Permutation> = enumerate_group(n, GroupKind::An)?.collect();
    let cycles = three_cycles(n);
    let scans: Vec<Scan> = elems
        .par_iter()
        .map(|x| {
            let in_s = in_s(x);
            let px = x.num_cycles() as i64;
            let mut scan = Scan {
                in_s,
                in_t: in_t(x),
                lemma: true,
                hits: Vec::new(),
            };
            for (ci, c) in cycles.iter().enumerate() {
                let tau = x.inv_mul(c);
                scan.lemma &= matches!(tau.num_cycles() as i64 - px, -2 | 0 | 2);
                if in_s && in_t(&tau) {
                    scan.hits.push(ci);
                }
            }
            scan
        })
        .collect();
    let s_size = scans.iter().filter(|e| e.in_s).count() as u64;
    let t_size = scans.iter().filter(|e| e.in_t).count() as u64;
    let hit: BTreeSet<usize> = scans.iter().flat_map(|e| e.hits.iter().copied()).collect();
    let order = elems.len() as f64;
    Ok(GapReport {
        n,
        s_size,
        t_size,
        s_fraction: s_size as f64 / order,
        t_fraction: t_size as f64 / order,
        three_cycles_hit: hit.len() as u64,
        three_cycles_total: cycles.len() as u64,
        no_three_cycle: hit.is_empty(),
        p_difference_lemma: scans.iter().all(|e| e.lemma),
    })
}

pub fn three_cycle_gap_check(pair: &ResidueSetPair) -> Result<GapReport, CycleStatsError> {
    three_cycle_gap_check_with(pair.n, |s| pair.in_s(s), |t| pair.in_t(t))
}

/// Number of `σ ∈ S_n` whose cycle type has distinct odd parts.
pub fn count_split_type(n: usize) -> BigUint {
    distinct_odd_partitions(n)
        .iter()
        .map(|p| p.class_size())
        .sum()
}

/// `count_split_type(n) / n!` in floating point.
pub fn split_type_fraction(n: usize) -> f64 {
    BigRational::new(
        BigInt::from(count_split_type(n)),
        BigInt::from(factorial(n)),
    )
    .to_f64()
    .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::partitions;
    use proptest::prelude::*;

    fn brute_p_counts(n: usize, kind: GroupKind) -> Vec<u64> {
        let mut c = vec![0u64; n + 1];
        for s in enumerate_group(n, kind).unwrap() {
            c[s.num_cycles()] += 1;
        }
        c
    }

    #[test]
    fn stirling_examples() {
        for n in 1..12 {
            assert_eq!(stirling_first(n, n), BigUint::one());
            assert_eq!(stirling_first(n, 1), factorial(n - 1));
        }
        assert_eq!(stirling_first(4, 2), BigUint::from(11u32));
        let t = StirlingTable::new(20);
        for n in 0..=20 {
            assert_eq!(t.row(n).iter().sum::<BigUint>(), factorial(n));
        }
    }

    #[test]
    fn stirling_matches_enumeration() {
        let t = StirlingTable::new(8);
        for n in 0..=8 {
            let brute = brute_p_counts(n, GroupKind::Sn);
            for (k, &b) in brute.iter().enumerate() {
                assert_eq!(t.get(n, k), BigUint::from(b));
            }
        }
    }

    #[test]
    fn stirling_cache_round_trip() {
        let t = StirlingTable::new(25);
        let mut buf = Vec::new();
        t.write_to(&mut buf).unwrap();
        assert_eq!(StirlingTable::read_from(&buf[..]).unwrap(), t);
    }

    #[test]
    fn count_p_mod_examples() {
        assert_eq!(count_p_mod(6, 1, 0, GroupKind::Sn), factorial(6));
        assert_eq!(count_p_mod(4, 2, 0, GroupKind::Sn), BigUint::from(12u32));
        let brute = enumerate_group(7, GroupKind::An)
            .unwrap()
            .filter(|s| s.num_cycles() % 5 == 2)
            .count();
        assert_eq!(count_p_mod(7, 5, 2, GroupKind::An), BigUint::from(brute));
    }

    #[test]
    fn count_p_mod_matches_brute_force() {
        for n in 1..=9 {
            for kind in [GroupKind::Sn, GroupKind::An] {
                let brute = brute_p_counts(n, kind);
                for m in 1..=9 {
                    for a in 0..m {
                        let want: u64 = (0..=n).filter(|k| k % m == a).map(|k| brute[k]).sum();
                        assert_eq!(
                            count_p_mod(n, m, a, kind),
                            BigUint::from(want),
                            "n={n} m={m} a={a}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn residues_sum_to_order() {
        for n in 1..=30 {
            for m in [1, 2, 3, 5, 7, 11] {
                let table = StirlingTable::new(n);
                let total: BigUint = (0..m)
                    .map(|a| count_p_mod_with(&table, n, m, a, GroupKind::Sn))
                    .sum();
                assert_eq!(total, factorial(n));
            }
        }
    }

    #[test]
    fn cyclotomic_polys() {
        let ints = |v: Vec<BigInt>| {
            v.into_iter()
                .map(|x| x.to_i64().unwrap())
                .collect::<Vec<_>>()
        };
        assert_eq!(ints(cyclotomic_polynomial(1)), vec![-1, 1]);
        assert_eq!(ints(cyclotomic_polynomial(3)), vec![1, 1, 1]);
        assert_eq!(ints(cyclotomic_polynomial(6)), vec![1, -1, 1]);
        assert_eq!(ints(cyclotomic_polynomial(12)), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn rising_factorial_examples() {
        let r = rising_factorial_identity_check(5, 1);
        assert!(r.holds);
        assert_eq!(r.lhs, vec!["120".to_string()]);
        assert!(rising_factorial_identity_check(6, 3).holds);
        assert!(rising_factorial_identity_check(9, 7).holds);
        for n in 0..=12 {
            for m in [1, 2, 3, 4, 5, 6, 7, 9] {
                assert!(rising_factorial_identity_check(n, m).holds, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn equidistribution_trend() {
        for m in [3, 5, 7] {
            assert!(equidistribution_deviation(30, m) < equidistribution_deviation(10, m));
        }
    }

    #[test]
    fn alt_set_examples() {
        let p = build_alt_sets(7, 7, 2, 4).unwrap();
        assert_eq!(p.s_residues, BTreeSet::from([2]));
        assert_eq!(p.t_residues, BTreeSet::from([6]));
        assert!(p.gap_ok);
        let p = build_alt_sets(8, 9, 2, 4).unwrap();
        assert_eq!(
            (p.s_residues.clone(), p.t_residues.clone()),
            (BTreeSet::from([2]), BTreeSet::from([6]))
        );
        let p = build_alt_sets(7, 7, 1, 3).unwrap();
        assert!(p.s_residues.is_empty());
        assert_eq!(p.s_size(), BigUint::zero());
        assert!(matches!(
            build_alt_sets(7, 8, 2, 4),
            Err(CycleStatsError::InvalidParameter(_))
        ));
        assert!(matches!(
            build_alt_sets(5, 3, 2, 4),
            Err(CycleStatsError::InvalidParameter(_))
        ));
    }

    #[test]
    fn windows_are_disjoint_and_gapped_for_odd_moduli() {
        for m in (1..=31).step_by(2) {
            for l in 2..=m {
                for k in 1..l {
                    let p = build_alt_sets(m, m, k, l).unwrap();
                    assert!(p.gap_ok, "m={m} k={k} l={l}");
                    assert_eq!(p.s_residues.len(), k - 1);
                    assert_eq!(p.t_residues.len(), l - k - 1);
                }
            }
        }
    }

    #[test]
    fn gap_check_on_small_instance() {
        let p = build_alt_sets(7, 7, 2, 4).unwrap();
        let r = three_cycle_gap_check(&p).unwrap();
        assert!(r.no_three_cycle && r.p_difference_lemma);
        assert_eq!(BigUint::from(r.s_size), p.s_size());
        assert_eq!(BigUint::from(r.t_size), p.t_size());
        let control = three_cycle_gap_check_with(6, |_| true, |_| true).unwrap();
        assert_eq!(control.three_cycles_hit, control.three_cycles_total);
        assert!(control.p_difference_lemma);
    }

    #[test]
    fn p_difference_lemma_exhaustive() {
        for n in 3..=6 {
            let a: Vec<Permutation> = enumerate_group(n, GroupKind::An).unwrap().collect();
            for s in &a {
                for t in &a {
                    if s.mul(t).cycle_type().parts().first() == Some(&3)
                        && s.mul(t).num_cycles() == n - 2
                    {
                        let d = t.num_cycles() as i64 - s.num_cycles() as i64;
                        assert!(matches!(d, -2 | 0 | 2));
                    }
                }
            }
        }
    }

    #[test]
    fn split_type_examples() {
        assert_eq!(count_split_type(1), BigUint::one());
        assert_eq!(count_split_type(3), BigUint::from(2u32));
        assert_eq!(count_split_type(4), BigUint::from(8u32));
        for n in 1..=9 {
            let brute = enumerate_group(n, GroupKind::Sn)
                .unwrap()
                .filter(|s| s.cycle_type().splits_in_alternating())
                .count();
            assert_eq!(count_split_type(n), BigUint::from(brute));
        }
    }

    #[test]
    fn split_type_bound() {
        for n in 10..=100 {
            assert!(
                split_type_fraction(n) <= 2.0 / (n as f64 / 2.0).ln(),
                "n={n}"
            );
        }
    }

    proptest! {
        #[test]
        fn stirling_recurrence(n in 0usize..40, k in 0usize..41) {
            let t = StirlingTable::new(n + 1);
            let lhs = t.get(n + 1, k);
            let rhs = t.get(n, k) * n + if k > 0 { t.get(n, k - 1) } else { BigUint::zero() };
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn split_count_is_class_size_sum(n in 1usize..40) {
            let direct: BigUint = partitions(n)
                .iter()
                .filter(|p| p.splits_in_alternating())
                .map(|p| p.class_size())
                .sum();
            prop_assert_eq!(count_split_type(n), direct);
        }
    }
}
