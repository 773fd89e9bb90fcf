use num_bigint::BigUint;
use num_traits::One;
use serde_json::json;

use npd_core::linear::{
    fixed_q_product_check, gaussian_binomial, grassmannian_sandwich, stratum_census,
};

use crate::{Job, Outcome, SuiteConfig};

const CENSUS_CASES: [(usize, usize); 5] = [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2)];

fn q_admitted(cfg: &SuiteConfig, q: usize) -> bool {
    cfg.qs.as_ref().is_none_or(|qs| qs.contains(&(q as u64)))
}

pub fn sl_strata(cfg: &SuiteConfig) -> Vec<Job> {
    let mut jobs = Vec::new();
    for (n, q) in CENSUS_CASES {
        if !cfg.admits(n) || !q_admitted(cfg, q) {
            continue;
        }
        jobs.push(
            Job::new(format!("SL{n}-F{q}-bounds"), move |_| {
                let c = stratum_census(n, q)?;
                Ok(Outcome::holds(c.all_pass()).with_detail(json!({
                    "counts": c.counts,
                    "order_matches_formula": c.order_matches_formula,
                    "upper_bound_holds": c.upper_bound_holds,
                    "upper_bound_top_holds": c.upper_bound_top_holds,
                    "lower_bound_holds": c.lower_bound_holds,
                    "lower_bound_informative": c.lower_bound_informative,
                })))
            })
            .param("n", n)
            .param("q", q),
        );
        // only the identity fixes everything; transvections fill the hyperplane stratum
        jobs.push(
            Job::new(format!("SL{n}-F{q}-top-strata"), move |_| {
                let c = stratum_census(n, q)?;
                let (qn, qn1) = ((q as u64).pow(n as u32), (q as u64).pow(n as u32 - 1));
                let transvections = (qn - 1) * (qn1 - 1) / (q as u64 - 1);
                Ok(Outcome::eq(
                    [1, transvections],
                    [c.counts[&n], c.counts[&(n - 1)]],
                ))
            })
            .param("n", n)
            .param("q", q),
        );
    }
    jobs
}

pub fn fixedq_transvection(cfg: &SuiteConfig) -> Vec<Job> {
    let cases: Vec<(usize, usize, usize, usize)> = match (cfg.s, cfg.t) {
        (Some(s), Some(t)) => {
            let n = cfg.n_range.as_ref().map_or(4, |r| *r.start());
            let q = cfg
                .qs
                .as_ref()
                .and_then(|qs| qs.first())
                .map_or(2, |&q| q as usize);
            vec![(n, q, s, t)]
        }
        _ => [(4, 2, 0, 2), (3, 3, 0, 2)]
            .into_iter()
            .filter(|&(n, q, ..)| cfg.admits(n) && q_admitted(cfg, q))
            .collect(),
    };
    cases
        .into_iter()
        .map(|(n, q, s, t)| {
            Job::new(format!("SL{n}-F{q}-s{s}-t{t}"), move |_| {
                let r = fixed_q_product_check(n, q, s, t)?;
                let outcome = if r.separation_ok {
                    Outcome::eq(0, r.hits)
                } else {
                    Outcome::holds(r.pass)
                };
                Ok(outcome.with_detail(json!({
                    "order": r.order,
                    "s_size": r.s_size,
                    "t_size": r.t_size,
                    "transvections": r.transvections,
                    "hits": r.hits,
                    "separation_ok": r.separation_ok,
                })))
            })
            .param("n", n)
            .param("q", q)
            .param("s", s)
            .param("t", t)
        })
        .collect()
}

/// `[k, m]_q` by the q-Pascal recurrence.
fn pascal(k: u32, q: u64) -> Vec<Vec<BigUint>> {
    let mut rows = vec![vec![BigUint::one()]];
    for kk in 1..=k as usize {
        let prev = &rows[kk - 1];
        let row = (0..=kk)
            .map(|m| match m {
                0 => BigUint::one(),
                m if m == kk => BigUint::one(),
                m => &prev[m - 1] + BigUint::from(q).pow(m as u32) * &prev[m],
            })
            .collect();
        rows.push(row);
    }
    rows
}

pub fn gauss_binomial(cfg: &SuiteConfig) -> Vec<Job> {
    let k_max = cfg.max_n.map_or(10, |m| m.min(10)) as u32;
    cfg.qs_or(&[2, 3, 4, 5, 7, 8, 9])
        .into_iter()
        .map(|q| {
            Job::new(format!("q{q}-sandwich"), move |_| {
                let rows = pascal(k_max, q);
                let mut failing = Vec::new();
                for k in 0..=k_max {
                    for m in 0..=k {
                        let g = gaussian_binomial(k, m, q);
                        let low = BigUint::from(q).pow(m * (k - m));
                        let direct = low <= g && g < &low * 4u32;
                        if g != rows[k as usize][m as usize]
                            || !direct
                            || !grassmannian_sandwich(k, m, q)
                        {
                            failing.push([k, m]);
                        }
                    }
                }
                Ok(Outcome::eq(Vec::<[u32; 2]>::new(), failing))
            })
            .param("q", q)
            .param("k_max", k_max)
        })
        .collect()
}
