use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Signed;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use npd_core::characters::{an_character_table, sn_character_table, CharError, CharacterTable};
use npd_core::class_products::{
    bnp_bound_check, bruteforce_count, class_product_cover, frobenius_count, gowers_check,
    min_nontrivial_degree, product_counts, product_distribution_distance,
    triple_class_uniform_bound, word_image, FactorizationQuery, Target, Word,
};
use npd_core::group::{EnumeratedGroup, NormalSubset};
use npd_core::{GroupKind, Permutation};

use crate::{Job, Outcome, SuiteConfig};

fn table(n: usize, kind: GroupKind) -> Result<CharacterTable, CharError> {
    match kind {
        GroupKind::Sn => sn_character_table(n),
        GroupKind::An => an_character_table(n),
    }
}

fn members(g: &EnumeratedGroup, class: usize) -> Vec<Permutation> {
    g.class_members(class)
        .into_iter()
        .map(|i| g.element(i).clone())
        .collect()
}

const SMALL_GROUPS: [(usize, GroupKind); 6] = [
    (3, GroupKind::Sn),
    (4, GroupKind::Sn),
    (5, GroupKind::Sn),
    (4, GroupKind::An),
    (5, GroupKind::An),
    (6, GroupKind::An),
];

pub fn frobenius_bruteforce(cfg: &SuiteConfig) -> Vec<Job> {
    SMALL_GROUPS
        .iter()
        .filter(|(n, _)| cfg.admits(*n))
        .map(|&(n, kind)| {
            Job::new(format!("{}-all-class-triples", kind.label(n)), move |_| {
                let t = table(n, kind)?;
                let g = EnumeratedGroup::new(n, kind)?;
                let k = t.num_classes();
                let cls: Vec<Vec<Permutation>> = (0..k).map(|c| members(&g, c)).collect();
                let mut agree = 0usize;
                let mut mismatches = Vec::new();
                for c1 in 0..k {
                    for c2 in 0..k {
                        for target in 0..k {
                            let f = frobenius_count(
                                &t,
                                &FactorizationQuery::new(vec![c1, c2], Target::Class(target)),
                            )?;
                            let rep = g.element(g.class_representative(target));
                            let b = bruteforce_count(&g, &[cls[c1].clone(), cls[c2].clone()], rep)?;
                            if f == BigInt::from(b) {
                                agree += 1;
                            } else if mismatches.len() < 5 {
                                mismatches.push(json!([
                                    c1,
                                    c2,
                                    target,
                                    f.to_string(),
                                    b.to_string()
                                ]));
                            }
                        }
                    }
                }
                Ok(Outcome::eq(k * k * k, agree)
                    .with_detail(json!({ "classes": k, "mismatches": mismatches })))
            })
            .param("group", kind.label(n))
        })
        .collect()
}

pub fn class_cover(cfg: &SuiteConfig) -> Vec<Job> {
    [(5, GroupKind::An), (5, GroupKind::Sn), (6, GroupKind::An)]
        .into_iter()
        .filter(|(n, _)| cfg.admits(*n))
        .map(|(n, kind)| {
            Job::new(format!("{}-class-pairs", kind.label(n)), move |_| {
                let t = table(n, kind)?;
                let g = EnumeratedGroup::new(n, kind)?;
                let k = t.num_classes();
                let mut want = Vec::new();
                let mut got = Vec::new();
                for c1 in 0..k {
                    for c2 in c1..k {
                        let dist = product_counts(&g, &[g.class_members(c1), g.class_members(c2)]);
                        let hit: BTreeSet<usize> = (0..g.order())
                            .filter(|&x| dist[x] > 0)
                            .map(|x| g.class_of(x))
                            .collect();
                        want.push(hit);
                        got.push(class_product_cover(&t, c1, c2)?.covered);
                    }
                }
                Ok(Outcome::eq(want, got))
            })
            .param("group", kind.label(n))
        })
        .collect()
}

#[derive(Clone, Copy)]
enum Family {
    NonIdentity,
    Whole,
    LargestClasses,
}

fn family_subsets(g: &EnumeratedGroup, family: Family, t: usize) -> Vec<Vec<Permutation>> {
    let all = || g.elements().to_vec();
    match family {
        Family::Whole => vec![all(); t],
        Family::NonIdentity => vec![all().into_iter().filter(|p| !p.is_identity()).collect(); t],
        Family::LargestClasses => {
            let mut order: Vec<usize> = (0..g.classes().len()).collect();
            // stable: ties keep class order
            order.sort_by(|a, b| g.classes()[*b].class_size.cmp(&g.classes()[*a].class_size));
            order.iter().take(t).map(|&c| members(g, c)).collect()
        }
    }
}

pub fn bnp_inequality(cfg: &SuiteConfig) -> Vec<Job> {
    let configs = [
        (4, GroupKind::Sn, Family::NonIdentity, 3, "nonidentity"),
        (4, GroupKind::Sn, Family::Whole, 3, "whole"),
        (5, GroupKind::Sn, Family::NonIdentity, 3, "nonidentity"),
        (
            5,
            GroupKind::Sn,
            Family::LargestClasses,
            3,
            "largest-classes",
        ),
        (
            5,
            GroupKind::An,
            Family::LargestClasses,
            3,
            "largest-classes",
        ),
        (5, GroupKind::An, Family::NonIdentity, 4, "nonidentity"),
        (5, GroupKind::An, Family::Whole, 4, "whole"),
    ];
    let mut jobs: Vec<Job> = configs
        .into_iter()
        .filter(|c| cfg.admits(c.0))
        .map(|(n, kind, family, t, label)| {
            Job::new(format!("{}-{label}-t{t}", kind.label(n)), move |_| {
                let g = EnumeratedGroup::new(n, kind)?;
                let tab = table(n, kind)?;
                let r = bnp_bound_check(&g, &tab, &family_subsets(&g, family, t), None)?;
                Ok(Outcome::holds(r.pass).with_detail(json!({
                    "hypothesis_met": r.hypothesis_met,
                    "bound_holds": r.bound_holds,
                    "mass_conserved": r.mass_conserved,
                    "alpha": r.alpha.to_string(),
                    "max_relative_deviation": r.max_relative_deviation,
                    "allowed_relative_deviation": r.allowed_relative_deviation,
                })))
            })
            .param("group", kind.label(n))
            .param("family", label)
            .param("t", t)
        })
        .collect();
    for (n, kind) in [(4, GroupKind::Sn), (5, GroupKind::Sn), (5, GroupKind::An)] {
        if !cfg.admits(n) {
            continue;
        }
        jobs.push(
            Job::new(
                format!("{}-uniform-bound-all-triples", kind.label(n)),
                move |_| {
                    let tab = table(n, kind)?;
                    let k = tab.num_classes();
                    let (mut total, mut pass, mut pass_scaled) = (0usize, 0usize, 0usize);
                    let mut failures = Vec::new();
                    for c1 in 0..k {
                        for c2 in c1..k {
                            for c3 in c2..k {
                                for g in 0..k {
                                    let r = triple_class_uniform_bound(&tab, c1, c2, c3, g)?;
                                    total += 1;
                                    pass += r.pass as usize;
                                    pass_scaled += r.pass_scaled as usize;
                                    if !r.pass && failures.len() < 5 {
                                        failures.push(json!([c1, c2, c3, g]));
                                    }
                                }
                            }
                        }
                    }
                    Ok(Outcome::eq(total, pass)
                        .with_detail(json!({ "pass_scaled": pass_scaled, "failures": failures })))
                },
            )
            .param("group", kind.label(n)),
        );
    }
    jobs
}

pub fn gowers(cfg: &SuiteConfig) -> Vec<Job> {
    if !cfg.admits(5) {
        return Vec::new();
    }
    const TRIPLES: usize = 100;
    vec![Job::new("A5-random-triples", |seed| {
        let g = EnumeratedGroup::new(5, GroupKind::An)?;
        let tab = an_character_table(5)?;
        let order = g.order();
        let m = min_nontrivial_degree(&tab)
            .and_then(|d| u64::try_from(d).ok())
            .unwrap_or(1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (mut consistent, mut covering, mut sizes) = (0usize, 0usize, Vec::new());
        let mut tried = 0usize;
        while sizes.len() < TRIPLES {
            tried += 1;
            let abc: [usize; 3] = [
                rng.gen_range(1..=order),
                rng.gen_range(1..=order),
                rng.gen_range(1..=order),
            ];
            if abc.iter().map(|&x| x as u64).product::<u64>() * m < (order as u64).pow(3) {
                continue;
            }
            let pick = |rng: &mut ChaCha8Rng, k: usize| -> Vec<Permutation> {
                sample(rng, order, k)
                    .into_iter()
                    .map(|i| g.element(i).clone())
                    .collect()
            };
            let (a, b, c) = (
                pick(&mut rng, abc[0]),
                pick(&mut rng, abc[1]),
                pick(&mut rng, abc[2]),
            );
            let r = gowers_check(&g, &tab, &a, &b, &c)?;
            if !r.hypothesis {
                continue;
            }
            sizes.push(abc);
            consistent += r.consistent as usize;
            covering += r.abc_is_group as usize;
        }
        Ok(Outcome::eq(TRIPLES, consistent).with_detail(
            json!({ "samples_drawn": tried, "abc_is_group": covering, "sizes": sizes }),
        ))
    })
    .param("group", "A5")
    .param("triples", TRIPLES)]
}

type Law = fn(&[Permutation]) -> Permutation;

pub fn word_images(cfg: &SuiteConfig) -> Vec<Job> {
    let cases: [(usize, GroupKind, &str, usize, Law); 6] = [
        (3, GroupKind::Sn, "x", 1, |v| v[0].clone()),
        (3, GroupKind::Sn, "x^2", 1, |v| v[0].mul(&v[0])),
        (4, GroupKind::Sn, "[x,y]", 2, |v| {
            v[0].inverse().mul(&v[1].inverse()).mul(&v[0]).mul(&v[1])
        }),
        (4, GroupKind::Sn, "x^2*y^2", 2, |v| {
            v[0].mul(&v[0]).mul(&v[1]).mul(&v[1])
        }),
        (5, GroupKind::An, "x^2", 1, |v| v[0].mul(&v[0])),
        (5, GroupKind::An, "[x,y]", 2, |v| {
            v[0].inverse().mul(&v[1].inverse()).mul(&v[0]).mul(&v[1])
        }),
    ];
    cases
        .into_iter()
        .filter(|c| cfg.admits(c.0))
        .map(|(n, kind, src, arity, law)| {
            Job::new(format!("{}-{src}", kind.label(n)), move |_| {
                let g = EnumeratedGroup::new(n, kind)?;
                let word: Word = src.parse()?;
                let img = word_image(&g, &word)?;
                let mut seen = vec![false; g.order()];
                let mut tuple = vec![0usize; arity];
                loop {
                    let vals: Vec<Permutation> =
                        tuple.iter().map(|&i| g.element(i).clone()).collect();
                    seen[g.index_of(&law(&vals)).expect("closed")] = true;
                    let Some(pos) = tuple.iter().rposition(|&i| i + 1 < g.order()) else {
                        break;
                    };
                    tuple[pos] += 1;
                    tuple[pos + 1..].iter_mut().for_each(|i| *i = 0);
                }
                let want = seen.iter().filter(|&&s| s).count();
                let closed = img.conjugation_closed;
                Ok(Outcome::eq(want, img.image_size)
                    .with_detail(json!({ "conjugation_closed": closed })))
            })
            .param("group", kind.label(n))
            .param("word", src)
        })
        .collect()
}

pub fn mixing_l1(cfg: &SuiteConfig) -> Vec<Job> {
    let ns = cfg.ns(6..=9);
    if ns.len() < 2 {
        return Vec::new();
    }
    vec![Job::new("an-natural-dd-l1-decreasing", move |_| {
        let mut exact = Vec::new();
        let mut approx = Vec::new();
        for &n in &ns {
            let g = EnumeratedGroup::new(n, GroupKind::An)?;
            let d = NormalSubset::from_predicate(n, GroupKind::An, Permutation::is_derangement);
            let r = product_distribution_distance(&g, &d, &d)?;
            approx.push(r.l1_f64);
            exact.push(r.l1);
        }
        let decreasing = exact.windows(2).all(|w| (&w[1] - &w[0]).is_negative());
        let exact: Vec<String> = exact.iter().map(ToString::to_string).collect();
        Ok(Outcome::holds(decreasing)
            .with_detail(json!({ "n": ns, "l1": approx, "l1_exact": exact })))
    })
    .param("n", cfg.ns(6..=9))]
}
