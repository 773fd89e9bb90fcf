//! Counting factorizations over conjugacy classes with character sums, and
//! the brute-force and bound checks built around them.
//!
//! Products follow the global convention: the tuple `(x_1, …, x_k)`
//! multiplies to `x_1 ∘ ⋯ ∘ x_k`.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::characters::{CharError, CharacterTable};
use crate::group::{EnumeratedGroup, NormalSubset};
use crate::perm::{class_label, PermError, Permutation};
use crate::surd::Surd;

mod words;

pub use words::{word_image, Word, WordImage};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProductError {
    #[error("class index {0} out of range")]
    InvalidClass(usize),
    #[error("character sum is not a nonnegative integer: {0}")]
    NonIntegerCount(String),
    #[error("query has no factors")]
    EmptyQuery,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("{0}")]
    Perm(#[from] PermError),
    #[error("{0}")]
    Char(#[from] CharError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    Class(usize),
    Element(Permutation),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationQuery {
    pub classes: Vec<usize>,
    pub target: Target,
}

impl FactorizationQuery {
    pub fn new(classes: Vec<usize>, target: Target) -> Self {
        FactorizationQuery { classes, target }
    }
}

fn check_class(table: &CharacterTable, c: usize) -> Result<(), ProductError> {
    if c < table.num_classes() {
        Ok(())
    } else {
        Err(ProductError::InvalidClass(c))
    }
}

fn target_class(table: &CharacterTable, target: &Target) -> Result<usize, ProductError> {
    match target {
        Target::Class(c) => check_class(table, *c).map(|_| *c),
        Target::Element(g) => {
            if g.degree() != table.n || (table.kind == crate::GroupKind::An && !g.is_even()) {
                return Err(ProductError::InvalidParameter(format!(
                    "{g} is not in {}",
                    table.group_label
                )));
            }
            let label = class_label(g, table.kind);
            table
                .class_index(&label)
                .ok_or(ProductError::InvalidClass(usize::MAX))
        }
    }
}

fn class_size(table: &CharacterTable, c: usize) -> BigInt {
    BigInt::from(table.classes[c].class_size.clone())
}

/// `(∏|C_i| / |G|) Σ_χ χ(C_1)⋯χ(C_k) χ(g)‾ / χ(1)^{k-1}`, exactly.
fn frobenius_value(table: &CharacterTable, classes: &[usize], g: usize) -> Surd {
    let mut sum = Surd::zero();
    for row in &table.values {
        let mut term = row[g].conj();
        for &c in classes {
            term = term * &row[c];
        }
        let deg = row[0].rational_part();
        let denom = num_traits::pow(deg, classes.len() - 1);
        sum += &(&term / &denom);
    }
    let prod: BigInt = classes.iter().map(|&c| class_size(table, c)).product();
    let scale = BigRational::new(prod, BigInt::from(table.order()));
    &sum * &Surd::from_rational(scale)
}

/// Number of tuples in `C_1 × ⋯ × C_k` whose product is a fixed element of
/// the target class.
pub fn frobenius_count(
    table: &CharacterTable,
    query: &FactorizationQuery,
) -> Result<BigInt, ProductError> {
    if query.classes.is_empty() {
        return Err(ProductError::EmptyQuery);
    }
    for &c in &query.classes {
        check_class(table, c)?;
    }
    let g = target_class(table, &query.target)?;
    let v = frobenius_value(table, &query.classes, g);
    match v.as_integer() {
        Some(i) if !i.is_negative() => Ok(i),
        _ => Err(ProductError::NonIntegerCount(v.to_string())),
    }
}

/// Distribution of products `s_1 ∘ ⋯ ∘ s_k` over the group.
pub fn product_counts(group: &EnumeratedGroup, subsets: &[Vec<usize>]) -> Vec<u128> {
    let order = group.order();
    let mut dist = vec![0u128; order];
    let Some((last, rest)) = subsets.split_last() else {
        dist[group.identity()] = 1;
        return dist;
    };
    for &x in last {
        dist[x] += 1;
    }
    for subset in rest.iter().rev() {
        let support: Vec<(usize, u128)> = dist
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| (i, c))
            .collect();
        dist = subset
            .par_chunks(64.max(subset.len() / 64))
            .map(|chunk| {
                let mut local = vec![0u128; order];
                for &s in chunk {
                    for &(y, c) in &support {
                        local[group.mul(s, y)] += c;
                    }
                }
                local
            })
            .reduce(
                || vec![0u128; order],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            );
    }
    dist
}

/// Exact number of tuples from explicit subsets multiplying to `target`.
pub fn bruteforce_count(
    group: &EnumeratedGroup,
    subsets: &[Vec<Permutation>],
    target: &Permutation,
) -> Result<u128, ProductError> {
    if subsets.is_empty() {
        return Err(ProductError::EmptyQuery);
    }
    let g = group
        .index_of(target)
        .ok_or_else(|| ProductError::InvalidParameter(format!("{target} not in group")))?;
    let idx: Vec<Vec<usize>> = subsets
        .iter()
        .map(|s| group.indices_of(s))
        .collect::<Result<_, _>>()?;
    Ok(match idx.len() {
        1 => idx[0].contains(&g) as u128,
        2 => {
            let mut in_t = vec![false; group.order()];
            idx[1].iter().for_each(|&t| in_t[t] = true);
            idx[0]
                .par_iter()
                .filter(|&&s| in_t[group.inv_mul(s, g)])
                .count() as u128
        }
        _ => {
            let tail = product_counts(group, &idx[1..]);
            idx[0].iter().map(|&s| tail[group.inv_mul(s, g)]).sum()
        }
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CoverReport {
    pub c1: usize,
    pub c2: usize,
    /// Factorizations of one element of each class.
    pub counts: Vec<BigInt>,
    pub covered: BTreeSet<usize>,
    pub cover_nontrivial: bool,
}

/// Classes met by `C_1 C_2`.
pub fn class_product_cover(
    table: &CharacterTable,
    c1: usize,
    c2: usize,
) -> Result<CoverReport, ProductError> {
    let counts = (0..table.num_classes())
        .map(|c| {
            frobenius_count(
                table,
                &FactorizationQuery::new(vec![c1, c2], Target::Class(c)),
            )
        })
        .collect::<Result<Vec<_>, _>>()?;
    let covered: BTreeSet<usize> = (0..counts.len())
        .filter(|&c| counts[c].is_positive())
        .collect();
    // class 0 is the identity class
    let cover_nontrivial = (1..counts.len()).all(|c| covered.contains(&c));
    Ok(CoverReport {
        c1,
        c2,
        counts,
        covered,
        cover_nontrivial,
    })
}

/// `m(G)`: least degree of a non-principal irreducible character.
pub fn min_nontrivial_degree(table: &CharacterTable) -> Option<BigInt> {
    let triv = table.trivial_index();
    table
        .degrees()
        .into_iter()
        .enumerate()
        .filter(|(i, _)| *i != triv)
        .map(|(_, d)| d)
        .min()
}

#[derive(Debug, Clone, Serialize)]
pub struct GowersReport {
    pub sizes: [usize; 3],
    pub order: usize,
    pub m: u64,
    pub hypothesis: bool,
    pub abc_is_group: bool,
    /// Hypothesis implies conclusion.
    pub consistent: bool,
}

/// Tests `|A||B||C| m(G) ≥ |G|³` and, independently, `ABC = G`.
pub fn gowers_check(
    group: &EnumeratedGroup,
    table: &CharacterTable,
    a: &[Permutation],
    b: &[Permutation],
    c: &[Permutation],
) -> Result<GowersReport, ProductError> {
    let m = min_nontrivial_degree(table)
        .and_then(|d| d.to_u64())
        .unwrap_or(1);
    let order = group.order();
    let (ia, ib, ic) = (
        group.indices_of(a)?,
        group.indices_of(b)?,
        group.indices_of(c)?,
    );
    let lhs = BigUint::from(ia.len()) * ib.len() * ic.len() * m;
    let hypothesis = lhs >= BigUint::from(order).pow(3);
    let mut ab = vec![false; order];
    for &x in &ia {
        for &y in &ib {
            ab[group.mul(x, y)] = true;
        }
    }
    let mut abc = vec![false; order];
    for (x, _) in ab.iter().enumerate().filter(|(_, &hit)| hit) {
        for &z in &ic {
            abc[group.mul(x, z)] = true;
        }
    }
    let abc_is_group = abc.iter().all(|&h| h);
    Ok(GowersReport {
        sizes: [ia.len(), ib.len(), ic.len()],
        order,
        m,
        hypothesis,
        abc_is_group,
        consistent: !hypothesis || abc_is_group,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct BnpReport {
    pub t: usize,
    pub alpha: BigRational,
    pub hypothesis_met: bool,
    pub expected: BigRational,
    /// `max_g |N_g - E| / E`.
    pub max_relative_deviation: f64,
    /// `α^{-1/2}`.
    pub allowed_relative_deviation: f64,
    pub bound_holds: bool,
    pub mass_conserved: bool,
    pub pass: bool,
}

/// Exact convolution check of `|N_g - E| ≤ α^{-1/2} E` for every `g`,
/// compared as `(N_g - E)² α ≤ E²`. Without an explicit `α`, the largest
/// value allowed by the hypothesis is used.
pub fn bnp_bound_check(
    group: &EnumeratedGroup,
    table: &CharacterTable,
    subsets: &[Vec<Permutation>],
    alpha: Option<BigRational>,
) -> Result<BnpReport, ProductError> {
    let t = subsets.len();
    if t < 3 {
        return Err(ProductError::InvalidParameter(format!(
            "need t >= 3, got {t}"
        )));
    }
    let m = min_nontrivial_degree(table).unwrap_or_else(BigInt::one);
    let order = BigInt::from(group.order());
    let idx: Vec<Vec<usize>> = subsets
        .iter()
        .map(|s| group.indices_of(s))
        .collect::<Result<_, _>>()?;
    let prod: BigInt = idx.iter().map(|s| BigInt::from(s.len())).product();
    let alpha_max = BigRational::new(
        &prod * num_traits::pow(m, t - 2),
        num_traits::pow(order.clone(), t),
    );
    let alpha = alpha.unwrap_or_else(|| alpha_max.clone());
    let hypothesis_met = alpha.is_positive() && alpha <= alpha_max;
    let expected = BigRational::new(prod.clone(), order);
    let counts = product_counts(group, &idx);
    let mass: u128 = counts.iter().sum();
    let mass_conserved = BigInt::from(mass) == prod;
    let mut bound_holds = true;
    let mut max_dev = 0.0f64;
    for &n in &counts {
        let dev = BigRational::from_integer(BigInt::from(n)) - &expected;
        if &dev * &dev * &alpha > &expected * &expected {
            bound_holds = false;
        }
        if expected.is_positive() {
            max_dev = max_dev.max((dev.abs() / &expected).to_f64().unwrap_or(f64::INFINITY));
        }
    }
    let allowed = alpha.to_f64().map_or(f64::INFINITY, |a| 1.0 / a.sqrt());
    Ok(BnpReport {
        t,
        pass: mass_conserved && (!hypothesis_met || bound_holds),
        alpha,
        hypothesis_met,
        expected,
        max_relative_deviation: max_dev,
        allowed_relative_deviation: allowed,
        bound_holds,
        mass_conserved,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZetaValue {
    /// Present when `s` is an integer.
    pub exact: Option<BigRational>,
    pub approx: f64,
}

/// `ζ^G(s) = Σ_χ χ(1)^{-s}`.
pub fn witten_zeta(table: &CharacterTable, s: &BigRational) -> ZetaValue {
    let degrees = table.degrees();
    let exact = s.is_integer().then(|| {
        let e = s.to_integer().to_i32().expect("exponent fits in i32");
        degrees
            .iter()
            .map(|d| {
                num_traits::pow(
                    BigRational::from_integer(d.clone()),
                    e.unsigned_abs() as usize,
                )
            })
            .map(|p| if e > 0 { p.recip() } else { p })
            .sum::<BigRational>()
    });
    let sf = s.to_f64().unwrap_or(f64::NAN);
    let approx = match &exact {
        Some(v) => v.to_f64().unwrap_or(f64::NAN),
        None => degrees
            .iter()
            .map(|d| d.to_f64().unwrap_or(f64::INFINITY).powf(-sf))
            .sum(),
    };
    ZetaValue { exact, approx }
}

#[derive(Debug, Clone, Serialize)]
pub struct UniformBoundReport {
    /// `Pr_{C1,C2,C3}(g)`, exact.
    pub probability: BigRational,
    /// `|Pr(g) - 1/|G||`, exact.
    pub lhs: BigRational,
    /// `Σ_{χ≠1} |χ(C1)χ(C2)χ(C3)| / χ(1)`.
    pub rhs: f64,
    /// The same sum divided by `|G|`.
    pub rhs_scaled: f64,
    pub pass: bool,
    pub pass_scaled: bool,
}

/// Compares the exact deviation of `Pr_{C1,C2,C3}(g)` from uniform with the
/// character-sum bound, both as a bare sum and divided by `|G|`.
pub fn triple_class_uniform_bound(
    table: &CharacterTable,
    c1: usize,
    c2: usize,
    c3: usize,
    g: usize,
) -> Result<UniformBoundReport, ProductError> {
    for c in [c1, c2, c3, g] {
        check_class(table, c)?;
    }
    let count = frobenius_count(
        table,
        &FactorizationQuery::new(vec![c1, c2, c3], Target::Class(g)),
    )?;
    let sizes: BigInt = [c1, c2, c3].iter().map(|&c| class_size(table, c)).product();
    let order = BigInt::from(table.order());
    let probability = BigRational::new(count, sizes);
    let lhs = (&probability - BigRational::new(BigInt::one(), order.clone())).abs();
    let triv = table.trivial_index();
    let rhs: f64 = table
        .values
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != triv)
        .map(|(_, row)| {
            let deg = row[0].rational_part().to_f64().unwrap();
            row[c1].abs_f64() * row[c2].abs_f64() * row[c3].abs_f64() / deg
        })
        .sum();
    let rhs_scaled = rhs / order.to_f64().unwrap();
    let lhs_f = lhs.to_f64().unwrap();
    let tol = |r: f64| 1e-12 * r.max(1.0);
    Ok(UniformBoundReport {
        pass: lhs_f <= rhs + tol(rhs),
        pass_scaled: lhs_f <= rhs_scaled + tol(rhs_scaled),
        probability,
        lhs,
        rhs,
        rhs_scaled,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct DistributionReport {
    /// `N_g = #{(s, t) ∈ S × T : s ∘ t = g}` on one element of each class.
    pub class_counts: Vec<u64>,
    /// `‖Pr_{S,T} - U_G‖₁`.
    pub l1: BigRational,
    /// `max_g |Pr(g)·|G| - 1|`.
    pub linf_ratio: BigRational,
    pub l1_f64: f64,
    pub linf_ratio_f64: f64,
}

/// Exact distance of `Pr_{S,T}` from uniform for normal `S`, `T`. The
/// distribution is a class function, so one element per class suffices.
pub fn product_distribution_distance(
    group: &EnumeratedGroup,
    s: &NormalSubset,
    t: &NormalSubset,
) -> Result<DistributionReport, ProductError> {
    if s.is_empty() || t.is_empty() {
        return Err(ProductError::InvalidParameter("empty subset".into()));
    }
    let s_elems = s.elements(group);
    let class_counts: Vec<u64> = (0..group.classes().len())
        .map(|c| {
            let g = group.class_representative(c);
            s_elems
                .par_iter()
                .filter(|&&x| t.contains_class(group.class_of(group.inv_mul(x, g))))
                .count() as u64
        })
        .collect();
    let order = BigInt::from(group.order());
    let st = BigInt::from(s.size.clone()) * BigInt::from(t.size.clone());
    let mut l1 = BigRational::zero();
    let mut linf = BigRational::zero();
    for (c, &n) in class_counts.iter().enumerate() {
        let ratio = BigRational::new(BigInt::from(n) * &order, st.clone()) - BigRational::one();
        let size = BigInt::from(group.classes()[c].class_size.clone());
        l1 += ratio.abs() * BigRational::new(size, order.clone());
        if ratio.abs() > linf {
            linf = ratio.abs();
        }
    }
    Ok(DistributionReport {
        class_counts,
        l1_f64: l1.to_f64().unwrap_or(f64::NAN),
        linf_ratio_f64: linf.to_f64().unwrap_or(f64::NAN),
        l1,
        linf_ratio: linf,
    })
}
