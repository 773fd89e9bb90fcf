//! Two-derangement decomposition on the natural action of `A_n`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{ell_set, find_ell_cycle, DerangementError};
use crate::perm::{enumerate_group, GroupKind, Permutation};

/// Random samples tried before an exhaustive scan.
const SAMPLE_LIMIT: usize = 20_000;
/// Even degrees at or below this are decomposed by direct search.
const SEARCH_DEGREE: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    Identity,
    /// Odd degree: two `n`-cycles.
    OddCycles,
    /// Even degree at most 10.
    SmallSearch,
    /// At least two fixed points.
    FixedPoints,
    /// An odd cycle of length `5..=n-5` splits off as a block.
    OddCycleBlock,
    ThreeCycle,
    /// Two even cycles of total length `6..=n-6` split off as a block.
    EvenCycleBlock,
    TwoTranspositions,
    /// `a`-cycle times `(n-a)`-cycle, `a` even, `4 ≤ a ≤ n-4`.
    Bicyclic,
    /// `(n-2)`-cycle times a transposition.
    LongCycleTransposition,
    /// `(n-1)`-cycle with one fixed point.
    LongCycleFixedPoint,
    Fallback,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub d1: Permutation,
    pub d2: Permutation,
    /// Route taken at the top level.
    pub route: Route,
    /// Some level fell through to exhaustive search.
    pub fallback_used: bool,
}

impl Decomposition {
    fn new(d1: Permutation, d2: Permutation, route: Route) -> Self {
        let fallback_used = route == Route::Fallback;
        Decomposition {
            d1,
            d2,
            route,
            fallback_used,
        }
    }

    pub fn is_valid_for(&self, g: &Permutation) -> bool {
        self.d1.is_even()
            && self.d2.is_even()
            && self.d1.is_derangement()
            && self.d2.is_derangement()
            && &self.d1.mul(&self.d2) == g
    }
}

/// Uniform element of `A_n`.
pub fn random_even_permutation(n: usize, rng: &mut impl Rng) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    let p = Permutation::from_images(images).unwrap();
    if p.is_even() || n < 2 {
        p
    } else {
        p.mul(&Permutation::cycle(n, &[0, 1]).unwrap())
    }
}

fn random_ell_cycle(m: usize, ell: usize, rng: &mut impl Rng) -> Permutation {
    let mut pts: Vec<usize> = (0..m).collect();
    pts.shuffle(rng);
    Permutation::cycle(m, &pts[..ell]).unwrap()
}

fn is_ell_cycle(p: &Permutation, ell: usize) -> bool {
    p.num_fixed_points() + ell == p.degree()
        && p.cycles().iter().filter(|c| c.len() > 1).count() == 1
}

/// `g = x1 x2` with `x1`, `x2` both `ℓ`-cycles, for even `g` on `m` points
/// and `ℓ ∈ L_m ∪ {m, m-2}`.
pub fn two_ell_cycle_factorization(
    g: &Permutation,
    ell: usize,
    rng: &mut impl Rng,
) -> Result<(Permutation, Permutation), DerangementError> {
    let m = g.degree();
    let admissible = ell_set(m).contains(&ell) || ell == m || (ell + 2 == m && m >= 5);
    if !admissible || !g.is_even() || m < 3 {
        return Err(DerangementError::InvalidParameter(format!(
            "no {ell}-cycle factorization of {g} on {m} points"
        )));
    }
    for _ in 0..SAMPLE_LIMIT {
        let x1 = random_ell_cycle(m, ell, rng);
        let x2 = x1.inv_mul(g);
        if is_ell_cycle(&x2, ell) {
            return Ok((x1, x2));
        }
    }
    find_ell_cycle(m, ell, |x1| is_ell_cycle(&x1.inv_mul(g), ell))
        .map(|x1| {
            let x2 = x1.inv_mul(g);
            (x1, x2)
        })
        .ok_or_else(|| DerangementError::SearchExhausted(g.to_string()))
}

/// Decomposition with a fixed default seed.
pub fn two_derangement_decompose(g: &Permutation) -> Result<Decomposition, DerangementError> {
    two_derangement_decompose_with_rng(g, &mut ChaCha8Rng::seed_from_u64(0))
}

/// `g = d1 d2` with `d1`, `d2` even derangements of `{0..n-1}`, `n ≥ 5`.
pub fn two_derangement_decompose_with_rng(
    g: &Permutation,
    rng: &mut impl Rng,
) -> Result<Decomposition, DerangementError> {
    if g.degree() < 5 || !g.is_even() {
        return Err(DerangementError::InvalidParameter(format!(
            "{g} is not in A_n with n >= 5"
        )));
    }
    decompose(g, rng)
}

fn search(
    g: &Permutation,
    rng: &mut impl Rng,
    route: Route,
) -> Result<Decomposition, DerangementError> {
    let n = g.degree();
    let ok = |d: &Permutation| d.is_derangement() && d.inv_mul(g).is_derangement();
    for _ in 0..SAMPLE_LIMIT {
        let d = random_even_permutation(n, rng);
        if ok(&d) {
            let d2 = d.inv_mul(g);
            return Ok(Decomposition::new(d, d2, route));
        }
    }
    let mut all = enumerate_group(n, GroupKind::An)?;
    let d = all
        .find(|d| ok(d))
        .ok_or_else(|| DerangementError::SearchExhausted(g.to_string()))?;
    let d2 = d.inv_mul(g);
    Ok(Decomposition::new(d, d2, Route::Fallback))
}

fn complement(n: usize, points: &[usize]) -> Vec<usize> {
    (0..n).filter(|p| !points.contains(p)).collect()
}

/// Decomposes `g` on `block` and its complement separately.
fn split_blocks(
    g: &Permutation,
    block: Vec<usize>,
    rng: &mut impl Rng,
    route: Route,
) -> Result<Decomposition, DerangementError> {
    let n = g.degree();
    let rest = complement(n, &block);
    let a = decompose(&g.restrict(&block).expect("block is invariant"), rng)?;
    let b = decompose(&g.restrict(&rest).expect("complement is invariant"), rng)?;
    let join = |x: &Permutation, y: &Permutation| {
        Permutation::disjoint_product(&[
            Permutation::embed(n, &block, x),
            Permutation::embed(n, &rest, y),
        ])
    };
    Ok(Decomposition {
        d1: join(&a.d1, &b.d1),
        d2: join(&a.d2, &b.d2),
        route,
        fallback_used: a.fallback_used || b.fallback_used,
    })
}

/// `s ∘ (d1, d2)` on the complement of `s`'s support, with `s1 s2 = s`
/// supported on `support`.
fn with_fixed_prefix(
    g: &Permutation,
    support: &[usize],
    s1: Permutation,
    s2: Permutation,
    rng: &mut impl Rng,
    route: Route,
) -> Result<Decomposition, DerangementError> {
    let n = g.degree();
    let rest = complement(n, support);
    let h = decompose(&g.restrict(&rest).expect("complement is invariant"), rng)?;
    Ok(Decomposition {
        d1: Permutation::disjoint_product(&[s1, Permutation::embed(n, &rest, &h.d1)]),
        d2: Permutation::disjoint_product(&[s2, Permutation::embed(n, &rest, &h.d2)]),
        route,
        fallback_used: h.fallback_used,
    })
}

/// Conjugates `(gh, h⁻¹)` for a normal form `g0 = π⁻¹ g π` back to `g`.
fn normal_form_pair(
    g: &Permutation,
    pi: &Permutation,
    h: &Permutation,
    route: Route,
) -> Decomposition {
    let g0 = g.conjugate_by(&pi.inverse());
    let d1 = g0.mul(h).conjugate_by(pi);
    let d2 = h.inverse().conjugate_by(pi);
    Decomposition::new(d1, d2, route)
}

fn decompose(g: &Permutation, rng: &mut impl Rng) -> Result<Decomposition, DerangementError> {
    let n = g.degree();
    if g.is_identity() {
        let d = if n % 2 == 1 {
            Permutation::cycle(n, &(0..n).collect::<Vec<_>>())?
        } else {
            Permutation::from_cycles(n, &[vec![0, 1], (2..n).collect()])?
        };
        let inv = d.inverse();
        return Ok(Decomposition::new(d, inv, Route::Identity));
    }
    if n % 2 == 1 {
        let (x1, x2) = two_ell_cycle_factorization(g, n, rng)?;
        return Ok(Decomposition::new(x1, x2, Route::OddCycles));
    }
    if n <= SEARCH_DEGREE {
        return search(g, rng, Route::SmallSearch);
    }

    let fixed = g.fixed_points();
    if fixed.len() >= 2 {
        let (i, j) = (fixed[0], fixed[1]);
        let rest = complement(n, &[i, j]);
        let local = g.restrict(&rest).expect("complement is invariant");
        let (x1, x2) = two_ell_cycle_factorization(&local, n - 2, rng)?;
        let t = Permutation::cycle(n, &[i, j])?;
        let d1 = Permutation::embed(n, &rest, &x1).mul(&t);
        let d2 = Permutation::embed(n, &rest, &x2).mul(&t);
        return Ok(Decomposition::new(d1, d2, Route::FixedPoints));
    }

    let cycles: Vec<Vec<usize>> = g.cycles().into_iter().filter(|c| c.len() > 1).collect();
    if let Some(c) = cycles
        .iter()
        .find(|c| c.len() % 2 == 1 && (5..=n - 5).contains(&c.len()))
    {
        return split_blocks(g, c.clone(), rng, Route::OddCycleBlock);
    }
    if let Some(c) = cycles.iter().find(|c| c.len() == 3) {
        let s = Permutation::cycle(n, c)?.inverse();
        return with_fixed_prefix(g, c, s.clone(), s, rng, Route::ThreeCycle);
    }

    let evens: Vec<&Vec<usize>> = cycles.iter().filter(|c| c.len() % 2 == 0).collect();
    for (a, ca) in evens.iter().enumerate() {
        for cb in &evens[a + 1..] {
            let s = ca.len() + cb.len();
            if (6..=n - 6).contains(&s) {
                let block = ca.iter().chain(cb.iter()).copied().collect();
                return split_blocks(g, block, rng, Route::EvenCycleBlock);
            }
        }
    }
    for (a, ca) in evens.iter().enumerate() {
        for cb in &evens[a + 1..] {
            if ca.len() == 2 && cb.len() == 2 {
                let (p, q, r, s) = (ca[0], ca[1], cb[0], cb[1]);
                let s1 = Permutation::from_cycles(n, &[vec![p, r], vec![q, s]])?;
                let s2 = Permutation::from_cycles(n, &[vec![p, s], vec![q, r]])?;
                return with_fixed_prefix(g, &[p, q, r, s], s1, s2, rng, Route::TwoTranspositions);
            }
        }
    }

    if cycles.len() == 2 && fixed.is_empty() {
        let (long, short) = if cycles[0].len() >= cycles[1].len() {
            (&cycles[0], &cycles[1])
        } else {
            (&cycles[1], &cycles[0])
        };
        if short.len() % 2 == 0 && short.len() >= 4 {
            return Ok(Decomposition::new(g.pow(2), g.inverse(), Route::Bicyclic));
        }
        if short.len() == 2 {
            // g0 = (0 1 … n-3)(n-2 n-1), h = (0 1 … n-4 n-2)(n-3 n-1)
            let pi = Permutation::from_images(long.iter().chain(short.iter()).copied().collect())?;
            let mut hc: Vec<usize> = (0..n - 3).collect();
            hc.push(n - 2);
            let h = Permutation::from_cycles(n, &[hc, vec![n - 3, n - 1]])?;
            return Ok(normal_form_pair(g, &pi, &h, Route::LongCycleTransposition));
        }
    }
    if cycles.len() == 1 && fixed.len() == 1 && cycles[0].len() == n - 1 {
        // g0 = (0 1 … n-2), h = (0 n-4)(1 2 … n-5 n-3 n-2 n-1)
        let pi = Permutation::from_images(cycles[0].iter().chain(fixed.iter()).copied().collect())?;
        let mut hc: Vec<usize> = (1..n - 4).collect();
        hc.extend([n - 3, n - 2, n - 1]);
        let h = Permutation::from_cycles(n, &[vec![0, n - 4], hc])?;
        return Ok(normal_form_pair(g, &pi, &h, Route::LongCycleFixedPoint));
    }

    search(g, rng, Route::Fallback)
}
