use serde_json::json;

use npd_core::symbols::{
    classify_surviving_symbols, count_constrained, enumerate_symbols, DefectClass, HookKind,
    SymbolXY,
};

use crate::{Job, Outcome, SuiteConfig};

fn rank_cap(cfg: &SuiteConfig, default: usize) -> usize {
    cfg.max_n.map_or(default, |m| m.min(default))
}

/// Partition numbers by Euler's pentagonal recurrence.
fn partition_numbers(n: usize) -> Vec<u64> {
    let mut p = vec![0i64; n + 1];
    p[0] = 1;
    for i in 1..=n {
        let mut k = 1i64;
        loop {
            let g1 = (k * (3 * k - 1) / 2) as usize;
            if g1 > i {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            p[i] += sign * p[i - g1];
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if g2 <= i {
                p[i] += sign * p[i - g2];
            }
            k += 1;
        }
    }
    p.into_iter().map(|x| x as u64).collect()
}

pub fn symbols_core(cfg: &SuiteConfig) -> Vec<Job> {
    let r12 = rank_cap(cfg, 12);
    let r8 = rank_cap(cfg, 8);
    vec![
        Job::new("rank-forms-agree", move |_| {
            let mut checked = 0usize;
            let mut bad = Vec::new();
            for r in 0..=r12 {
                for s in enumerate_symbols(r, |_| true)? {
                    checked += 1;
                    if s.rank_direct() != s.rank_by_inefficiency() || s.rank_direct() != r as i64 {
                        bad.push(s.to_string());
                    }
                }
            }
            Ok(Outcome::eq(Vec::<String>::new(), bad).with_detail(json!({ "symbols": checked })))
        })
        .param("rank_max", r12),
        Job::new("removal-lowers-rank-by-d", move |_| {
            let (mut removals, mut bad) = (0usize, Vec::new());
            for r in 1..=r8 {
                for s in enumerate_symbols(r, |_| true)? {
                    for d in 1..=r {
                        let hooks = s.hooks(d).into_iter().map(|h| s.remove_hook(&h));
                        let cohooks = s.cohooks(d).into_iter().map(|h| s.remove_cohook(&h));
                        for t in hooks.chain(cohooks) {
                            removals += 1;
                            if t?.rank() != (r - d) as i64 {
                                bad.push(format!("{s} d={d}"));
                            }
                        }
                    }
                }
            }
            Ok(Outcome::eq(Vec::<String>::new(), bad).with_detail(json!({ "removals": removals })))
        })
        .param("rank_max", r8),
        Job::new("defect-one-bipartitions", move |_| {
            let p = partition_numbers(r12);
            let want: Vec<u64> = (0..=r12)
                .map(|r| (0..=r).map(|a| p[a] * p[r - a]).sum())
                .collect();
            let got = (0..=r12)
                .map(|r| enumerate_symbols(r, |d| d == 1).map(|v| v.len() as u64))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Outcome::eq(want, got))
        })
        .param("rank_max", r12),
    ]
}

pub fn symbols_bounded(cfg: &SuiteConfig) -> Vec<Job> {
    use HookKind::{Cohook as C, Hook as H};
    let r_max = rank_cap(cfg, 16);
    let r_min = 12.min(r_max);
    let mut jobs = Vec::new();
    for (k, k2) in [(0usize, 1usize), (0, 2), (1, 2)] {
        for (a, b) in [(H, H), (H, C), (C, H), (C, C)] {
            let name = |h: HookKind| if h == H { "hook" } else { "cohook" };
            jobs.push(
                Job::new(format!("k{k}-k{k2}-{}-{}", name(a), name(b)), move |_| {
                    let counts = (r_min..=r_max)
                        .map(|r| count_constrained(r, &[(a, r - k), (b, r - k2)]))
                        .collect::<Result<Vec<_>, _>>()?;
                    let stable = counts.windows(2).all(|w| w[0] == w[1]);
                    Ok(Outcome::holds(stable).with_detail(json!({ "counts": counts })))
                })
                .param("k", k)
                .param("k_prime", k2)
                .param("ranks", [r_min, r_max]),
            );
        }
    }
    jobs
}

fn set(v: impl IntoIterator<Item = usize>) -> String {
    let items: Vec<String> = v.into_iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

/// The four survivors, written out by hand.
fn four_survivors(n: usize) -> Vec<String> {
    let top = format!("({},{})", set(0..=n), set(1..=n));
    let mut out = if n.is_multiple_of(2) {
        vec![
            format!("({},{{}})", set([n])),
            format!("({},{})", set([0, n]), set([1])),
            format!("({},{})", set((0..=n - 2).chain([n])), set(1..n)),
            top,
        ]
    } else {
        vec![
            format!("({},{{}})", set([n])),
            format!("({},{})", set([1, n]), set([0])),
            format!("({},{})", set(0..n), set((1..=n - 2).chain([n]))),
            top,
        ]
    };
    out.sort();
    out
}

pub fn symbols_classify(cfg: &SuiteConfig) -> Vec<Job> {
    (6..=11usize)
        .filter(|&n| cfg.admits(n))
        .map(|n| {
            // even n: n-cohook and (n-1)-hook; odd n: the reverse
            let required = if n % 2 == 0 {
                [(HookKind::Cohook, n), (HookKind::Hook, n - 1)]
            } else {
                [(HookKind::Hook, n), (HookKind::Cohook, n - 1)]
            };
            Job::new(format!("odd-defect-rank{n}"), move |_| {
                let got = classify_surviving_symbols(n, DefectClass::Odd, &required)?;
                let mut got: Vec<String> = got.iter().map(SymbolXY::to_string).collect();
                got.sort();
                Ok(Outcome::eq(four_survivors(n), got))
            })
            .param("n", n)
        })
        .collect()
}
