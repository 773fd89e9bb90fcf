use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use npd_core::derangements::{
    an_derangement_bonferroni, an_derangement_count, derangement_ell_criterion, ell_set,
    random_even_permutation, three_cycle_representation_ratio, two_derangement_decompose_with_rng,
    verify_d_squared, Decomposition, GroupAction,
};
use npd_core::perm::{enumerate_group, factorial, par_count};
use npd_core::{GroupKind, Permutation};

use crate::{ActionSpec, Job, Outcome, SuiteConfig};

pub fn asymptotics(cfg: &SuiteConfig) -> Vec<Job> {
    let mut jobs = Vec::new();
    if cfg.admits(9) {
        jobs.push(
            Job::new("a9-derangement-density", |_| {
                let d = par_count(9, GroupKind::An, Permutation::is_derangement)?;
                let density = d as f64 / (factorial(9) / 2u32).to_f64().unwrap();
                Ok(Outcome::within(std::f64::consts::E.recip(), density, 0.01)
                    .with_detail(json!({ "derangements": d })))
            })
            .param("n", 9),
        );
        jobs.push(
            Job::new("three-cycle-ratio-9", |_| {
                let r = three_cycle_representation_ratio(9)?;
                Ok(
                    Outcome::within(std::f64::consts::E, r.to_f64().unwrap_or(f64::NAN), 0.15)
                        .with_detail(json!({ "exact": r.to_string() })),
                )
            })
            .param("n", 9),
        );
    }
    for n in cfg.ns(2..=9) {
        jobs.push(
            Job::new(format!("inclusion-exclusion-A{n}"), move |_| {
                let brute = par_count(n, GroupKind::An, Permutation::is_derangement)?;
                Ok(Outcome::eq(
                    BigUint::from(brute).to_string(),
                    an_derangement_count(n).to_string(),
                ))
            })
            .param("n", n),
        );
    }
    let ns: Vec<usize> = (4..=20)
        .filter(|&n| cfg.max_n.is_none_or(|m| n <= m))
        .collect();
    if !ns.is_empty() {
        jobs.push(
            Job::new("bonferroni-betweenness", move |_| {
                let failing: Vec<usize> = ns
                    .iter()
                    .copied()
                    .filter(|&n| !an_derangement_bonferroni(n).between_consecutive)
                    .collect();
                Ok(Outcome::eq(Vec::<usize>::new(), failing))
            })
            .param("n_max", cfg.max_n.unwrap_or(20).min(20)),
        );
    }
    jobs
}

/// Independent validity test, not the library's own.
fn valid(g: &Permutation, d: &Decomposition) -> bool {
    let even_derangement =
        |p: &Permutation| p.is_even() && (0..p.degree()).all(|i| p.apply(i) != i);
    even_derangement(&d.d1)
        && even_derangement(&d.d2)
        && d.d1.compose(&d.d2).ok().as_ref() == Some(g)
}

fn tally(
    results: Vec<Result<(bool, Decomposition), String>>,
) -> (usize, BTreeMap<String, usize>, usize, Vec<String>) {
    let (mut ok, mut routes, mut fallback, mut errors) = (0, BTreeMap::new(), 0, Vec::new());
    for r in results {
        match r {
            Ok((v, d)) => {
                ok += v as usize;
                fallback += d.fallback_used as usize;
                let route = serde_json::to_value(d.route)
                    .ok()
                    .and_then(|v| v.as_str().map(String::from));
                *routes.entry(route.unwrap_or_default()).or_insert(0) += 1;
            }
            Err(e) if errors.len() < 5 => errors.push(e),
            Err(_) => {}
        }
    }
    (ok, routes, fallback, errors)
}

fn decompose_one(g: &Permutation, seed: u64) -> Result<(bool, Decomposition), String> {
    let d = two_derangement_decompose_with_rng(g, &mut ChaCha8Rng::seed_from_u64(seed))
        .map_err(|e| e.to_string())?;
    Ok((valid(g, &d), d))
}

pub fn an_two_derangements(cfg: &SuiteConfig) -> Vec<Job> {
    let mut jobs: Vec<Job> = cfg
        .ns(5..=9)
        .into_iter()
        .map(|n| {
            Job::new(format!("A{n}-exhaustive"), move |seed| {
                let elems: Vec<Permutation> = enumerate_group(n, GroupKind::An)?.collect();
                let results: Vec<_> = elems
                    .par_iter()
                    .enumerate()
                    .map(|(i, g)| decompose_one(g, seed.wrapping_add(i as u64)))
                    .collect();
                let (ok, routes, fallback, errors) = tally(results);
                Ok(Outcome::eq(elems.len(), ok).with_detail(
                    json!({ "routes": routes, "fallback_used": fallback, "errors": errors }),
                ))
            })
            .param("n", n)
        })
        .collect();
    const SAMPLES: usize = 2_000;
    for n in [12usize, 14] {
        if !cfg.admits(n) {
            continue;
        }
        jobs.push(
            Job::new(format!("A{n}-random"), move |seed| {
                let results: Vec<_> = (0..SAMPLES)
                    .into_par_iter()
                    .map(|i| {
                        let mut rng = ChaCha8Rng::seed_from_u64(seed);
                        rng.set_stream(i as u64);
                        let g = random_even_permutation(n, &mut rng);
                        decompose_one(&g, seed.wrapping_add(i as u64))
                    })
                    .collect();
                let (ok, routes, fallback, errors) = tally(results);
                Ok(Outcome::eq(SAMPLES, ok).with_detail(
                    json!({ "routes": routes, "fallback_used": fallback, "errors": errors }),
                ))
            })
            .param("n", n)
            .param("samples", SAMPLES),
        );
    }
    jobs
}

fn build_action(
    n: usize,
    act: ActionSpec,
) -> Result<GroupAction, npd_core::derangements::DerangementError> {
    match act {
        ActionSpec::Natural => GroupAction::natural(n, GroupKind::An),
        ActionSpec::Subsets(k) => GroupAction::k_subsets(n, k, GroupKind::An),
    }
}

fn action_cases(
    cfg: &SuiteConfig,
    defaults: &[(usize, ActionSpec)],
    default_range: std::ops::RangeInclusive<usize>,
) -> Vec<(usize, ActionSpec)> {
    match cfg.action {
        Some(act) => cfg
            .ns(default_range)
            .into_iter()
            .map(|n| (n, act))
            .collect(),
        None => defaults
            .iter()
            .copied()
            .filter(|(n, _)| cfg.admits(*n))
            .collect(),
    }
}

pub fn d_squared(cfg: &SuiteConfig) -> Vec<Job> {
    let mut defaults: Vec<(usize, ActionSpec)> =
        (5..=9).map(|n| (n, ActionSpec::Natural)).collect();
    defaults.extend([(6, ActionSpec::Subsets(2)), (7, ActionSpec::Subsets(2))]);
    action_cases(cfg, &defaults, 5..=9)
        .into_iter()
        .map(|(n, act)| {
            Job::new(format!("A{n}-{act}"), move |_| {
                let action = build_action(n, act)?;
                let r = verify_d_squared(&action);
                let gaps: Vec<&String> = r.gaps.iter().take(5).collect();
                Ok(Outcome::holds(r.covers_group).with_detail(json!({
                    "order": r.order,
                    "derangements": r.derangements,
                    "gap_count": r.gaps.len(),
                    "gaps": gaps,
                })))
            })
            .param("n", n)
            .param("action", act.to_string())
        })
        .collect()
}

/// Largest `ℓ ∈ L_n` whose cycles fix no `k`-subset. An `ℓ`-cycle fixes
/// exactly the unions of its orbits, which have sizes `ℓ` and `1` (`n-ℓ`
/// times).
fn ell_oracle(n: usize, k: usize) -> Option<usize> {
    ell_set(n)
        .into_iter()
        .rev()
        .find(|&l| !(k <= n - l || (l <= k && k - l <= n - l)))
}

pub fn ell_criterion(cfg: &SuiteConfig) -> Vec<Job> {
    let mut defaults: Vec<(usize, ActionSpec)> =
        (5..=9).map(|n| (n, ActionSpec::Natural)).collect();
    defaults.extend([
        (6, ActionSpec::Subsets(2)),
        (7, ActionSpec::Subsets(2)),
        (8, ActionSpec::Subsets(2)),
        (7, ActionSpec::Subsets(3)),
    ]);
    action_cases(cfg, &defaults, 5..=9)
        .into_iter()
        .map(|(n, act)| {
            let k = match act {
                ActionSpec::Natural => 1,
                ActionSpec::Subsets(k) => k,
            };
            Job::new(format!("A{n}-{act}"), move |_| {
                let action = build_action(n, act)?;
                Ok(Outcome::eq(
                    ell_oracle(n, k),
                    derangement_ell_criterion(&action)?,
                ))
            })
            .param("n", n)
            .param("action", act.to_string())
        })
        .collect()
}
