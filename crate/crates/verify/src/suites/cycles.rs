use num_bigint::BigUint;
use serde_json::json;

use npd_core::cycle_stats::{
    build_alt_sets, count_p_mod, count_split_type, equidistribution_deviation,
    rising_factorial_identity_check, split_type_fraction, three_cycle_gap_check,
    three_cycle_gap_check_with,
};
use npd_core::perm::par_map_chunks;
use npd_core::GroupKind;

use crate::{Job, Outcome, SuiteConfig};

/// `hist[k]` = elements with exactly `k` cycles, by enumeration.
fn cycle_histogram(n: usize, kind: GroupKind) -> Result<Vec<u64>, npd_core::perm::PermError> {
    let parts = par_map_chunks(n, kind, |it| {
        let mut h = vec![0u64; n + 1];
        for p in it {
            h[p.num_cycles()] += 1;
        }
        h
    })?;
    Ok(parts.into_iter().fold(vec![0u64; n + 1], |mut acc, h| {
        acc.iter_mut().zip(h).for_each(|(a, b)| *a += b);
        acc
    }))
}

pub fn cycle_mod_counts(cfg: &SuiteConfig) -> Vec<Job> {
    let mut jobs = Vec::new();
    for kind in [GroupKind::Sn, GroupKind::An] {
        for n in cfg.ns(1..=9) {
            jobs.push(
                Job::new(format!("{}-m1..9", kind.label(n)), move |_| {
                    let hist = cycle_histogram(n, kind)?;
                    let (mut want, mut got) = (Vec::new(), Vec::new());
                    for m in 1..=9usize {
                        for a in 0..m {
                            let brute: u64 = (0..=n).filter(|k| k % m == a).map(|k| hist[k]).sum();
                            want.push(brute.to_string());
                            got.push(count_p_mod(n, m, a, kind).to_string());
                        }
                    }
                    Ok(Outcome::eq(want, got))
                })
                .param("group", kind.label(n)),
            );
        }
    }
    for m in [3usize, 5, 7] {
        jobs.push(
            Job::new(format!("deviation-trend-m{m}"), move |_| {
                let (d10, d30) = (
                    equidistribution_deviation(10, m),
                    equidistribution_deviation(30, m),
                );
                Ok(Outcome::holds(d30 < d10).with_detail(json!({ "n10": d10, "n30": d30 })))
            })
            .param("m", m),
        );
    }
    jobs
}

pub fn rising_factorial(cfg: &SuiteConfig) -> Vec<Job> {
    [1usize, 3, 5, 7]
        .into_iter()
        .map(|m| {
            let ns = cfg.ns(1..=12);
            Job::new(format!("m{m}"), move |_| {
                let failing: Vec<usize> = ns
                    .iter()
                    .copied()
                    .filter(|&n| !rising_factorial_identity_check(n, m).holds)
                    .collect();
                Ok(Outcome::eq(Vec::<usize>::new(), failing).with_detail(json!({ "ns": ns })))
            })
            .param("m", m)
            .param("n_max", cfg.ns(1..=12).last().copied())
        })
        .collect()
}

pub fn alt_threecycle_gap(cfg: &SuiteConfig) -> Vec<Job> {
    let mut jobs: Vec<Job> = [(7usize, 7usize, 2usize, 4usize), (8, 9, 2, 4)]
        .into_iter()
        .filter(|&(n, ..)| cfg.admits(n))
        .flat_map(|(n, m, k, l)| {
            let gap = Job::new(format!("n{n}-m{m}-k{k}-l{l}-no-three-cycle"), move |_| {
                let pair = build_alt_sets(n, m, k, l)?;
                let r = three_cycle_gap_check(&pair)?;
                Ok(Outcome::eq(0u64, r.three_cycles_hit).with_detail(json!({
                    "s_size": r.s_size,
                    "t_size": r.t_size,
                    "s_fraction": r.s_fraction,
                    "t_fraction": r.t_fraction,
                    "three_cycles_total": r.three_cycles_total,
                })))
            });
            let sizes = Job::new(format!("n{n}-m{m}-k{k}-l{l}-set-sizes"), move |_| {
                let pair = build_alt_sets(n, m, k, l)?;
                let r = three_cycle_gap_check(&pair)?;
                Ok(Outcome::eq(
                    [pair.s_size().to_string(), pair.t_size().to_string()],
                    [r.s_size.to_string(), r.t_size.to_string()],
                ))
            });
            [gap, sizes].map(|j| j.param("n", n).param("m", m).param("k", k).param("l", l))
        })
        .collect();
    if cfg.admits(6) {
        jobs.push(
            Job::new("A6-p-difference-lemma", |_| {
                let r = three_cycle_gap_check_with(6, |_| false, |_| false)?;
                Ok(Outcome::holds(r.p_difference_lemma))
            })
            .param("n", 6),
        );
        // S = T = A_6: every 3-cycle is a product
        jobs.push(
            Job::new("A6-control-whole-group", |_| {
                let r = three_cycle_gap_check_with(6, |_| true, |_| true)?;
                Ok(Outcome::eq(6 * 5 * 4 / 3, r.three_cycles_hit))
            })
            .param("n", 6),
        );
    }
    jobs
}

pub fn split_type_bound(cfg: &SuiteConfig) -> Vec<Job> {
    let mut jobs: Vec<Job> = cfg
        .ns(1..=9)
        .into_iter()
        .map(|n| {
            Job::new(format!("S{n}-brute-force"), move |_| {
                let brute: u64 = par_map_chunks(n, GroupKind::Sn, |it| {
                    it.filter(|p| {
                        let mut lens: Vec<usize> = p.cycles().iter().map(Vec::len).collect();
                        lens.sort_unstable();
                        lens.iter().all(|l| l % 2 == 1) && lens.windows(2).all(|w| w[0] != w[1])
                    })
                    .count() as u64
                })?
                .into_iter()
                .sum();
                Ok(Outcome::eq(
                    BigUint::from(brute).to_string(),
                    count_split_type(n).to_string(),
                ))
            })
            .param("n", n)
        })
        .collect();
    let ns: Vec<usize> = (10..=100)
        .filter(|&n| cfg.max_n.is_none_or(|m| n <= m))
        .collect();
    if !ns.is_empty() {
        let (lo, hi) = (ns[0], ns[ns.len() - 1]);
        jobs.push(
            Job::new("fraction-below-2-over-log-half-n", move |_| {
                let failing: Vec<usize> = ns
                    .iter()
                    .copied()
                    .filter(|&n| split_type_fraction(n) > 2.0 / (n as f64 / 2.0).ln())
                    .collect();
                Ok(Outcome::eq(Vec::<usize>::new(), failing))
            })
            .param("n_min", lo)
            .param("n_max", hi),
        );
    }
    jobs
}
