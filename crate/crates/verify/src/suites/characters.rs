use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::json;

use npd_core::characters::{
    an_character_table, classify_nonvanishing_pair, degree_hook_formula, sn_character_table,
    verify_adegree_bound, CharacterTable,
};
use npd_core::class_products::witten_zeta as zeta;
use npd_core::perm::factorial;
use npd_core::Partition;

use crate::{Job, Outcome, SuiteConfig};

fn table_jobs(
    n: usize,
    label: &'static str,
    build: fn(usize) -> Result<CharacterTable, npd_core::characters::CharError>,
    order: BigInt,
) -> Vec<Job> {
    let orth = Job::new(format!("{label}{n}-orthogonality"), move |_| {
        let t = build(n)?;
        let res = t.check_orthogonality();
        Ok(Outcome::holds(res.is_ok())
            .with_detail(json!({ "classes": t.num_classes(), "error": res.err() })))
    })
    .param("n", n);
    let squares = Job::new(format!("{label}{n}-degree-square-sum"), move |_| {
        let t = build(n)?;
        let sum: BigInt = t.degrees().iter().map(|d| d * d).sum();
        Ok(Outcome::eq(order.to_string(), sum.to_string()))
    })
    .param("n", n);
    vec![orth, squares]
}

pub fn sym_char_orthogonality(cfg: &SuiteConfig) -> Vec<Job> {
    let mut jobs = Vec::new();
    for n in cfg.ns(1..=10) {
        jobs.extend(table_jobs(
            n,
            "S",
            sn_character_table,
            BigInt::from(factorial(n)),
        ));
        jobs.push(
            Job::new(format!("S{n}-hook-degrees"), move |_| {
                let t = sn_character_table(n)?;
                let bad: Vec<String> = t
                    .char_labels
                    .iter()
                    .zip(t.degrees())
                    .filter(|(l, d)| degree_hook_formula(&l.partition) != *d)
                    .map(|(l, _)| l.partition.to_string())
                    .collect();
                Ok(Outcome::eq(Vec::<String>::new(), bad))
            })
            .param("n", n),
        );
    }
    for n in cfg.ns(2..=9) {
        // |A_1| = 1
        jobs.extend(table_jobs(
            n,
            "A",
            an_character_table,
            (BigInt::from(factorial(n)) / BigInt::from(2)).max(BigInt::one()),
        ));
    }
    jobs
}

pub fn twelve_characters(cfg: &SuiteConfig) -> Vec<Job> {
    let mut jobs = Vec::new();
    for n in cfg.ns(10..=14) {
        let mu1 = Partition::new(vec![n - 3, 3]).expect("n >= 6");
        let mu2 = Partition::new(vec![n - 4, 4]).expect("n >= 8");
        let pair = (mu1.to_string(), mu2.to_string());
        let (m1, m2) = (mu1.clone(), mu2.clone());
        jobs.push(
            Job::new(format!("n{n}-count"), move |_| {
                let found = classify_nonvanishing_pair(n, &m1, &m2)?;
                let labels: Vec<String> = found.iter().map(|(l, _, _)| l.to_string()).collect();
                Ok(Outcome::eq(12, found.len()).with_detail(labels))
            })
            .param("n", n)
            .param("classes", &pair),
        );
        jobs.push(
            Job::new(format!("n{n}-unit-products"), move |_| {
                let found = classify_nonvanishing_pair(n, &mu1, &mu2)?;
                let products: Vec<String> =
                    found.iter().map(|(_, a, b)| (a * b).to_string()).collect();
                let units = found.iter().all(|(_, a, b)| (a * b).magnitude().is_one());
                Ok(Outcome::holds(units).with_detail(products))
            })
            .param("n", n)
            .param("classes", &pair),
        );
    }
    jobs
}

pub fn unipotent_degree_bound(cfg: &SuiteConfig) -> Vec<Job> {
    let mut jobs = Vec::new();
    for q in cfg.qs_or(&[2, 3]) {
        for l in 0..=3usize {
            let ns: Vec<usize> = cfg.ns(1..=12).into_iter().filter(|&n| n > 2 * l).collect();
            if ns.is_empty() {
                continue;
            }
            jobs.push(
                Job::new(format!("q{q}-L{l}"), move |_| {
                    let mut failing = Vec::new();
                    let mut checked = 0;
                    for &n in &ns {
                        let r = verify_adegree_bound(n, l, q)?;
                        checked += r.checked;
                        if !r.all_pass {
                            failing.push(
                                json!({ "n": n, "witness": r.witness.map(|w| w.to_string()) }),
                            );
                        }
                    }
                    Ok(Outcome::holds(failing.is_empty()).with_detail(
                        json!({ "ns": ns, "characters_checked": checked, "failing": failing }),
                    ))
                })
                .param("q", q)
                .param("L", l),
            );
        }
    }
    jobs
}

fn rational(s: &BigRational) -> String {
    s.to_string()
}

pub fn witten_zeta(cfg: &SuiteConfig) -> Vec<Job> {
    let mut jobs = Vec::new();
    if cfg.admits(3) {
        jobs.push(
            Job::new("S3-s1", |_| {
                let z = zeta(&sn_character_table(3)?, &BigRational::one());
                Ok(Outcome::eq("5/2", z.exact.as_ref().map(rational)))
            })
            .param("group", "S3")
            .param("s", 1),
        );
    }
    if cfg.admits(5) {
        jobs.push(
            Job::new("A5-s2", |_| {
                // degrees 1, 3, 3, 4, 5
                let want: BigRational = [1, 3, 3, 4, 5]
                    .iter()
                    .map(|&d| BigRational::new(1.into(), (d * d).into()))
                    .sum();
                let z = zeta(
                    &an_character_table(5)?,
                    &BigRational::from_integer(2.into()),
                );
                Ok(Outcome::eq(rational(&want), z.exact.as_ref().map(rational)))
            })
            .param("group", "A5")
            .param("s", 2),
        );
    }
    // ζ(0) counts irreducibles, which equals the number of partitions of n
    const PARTITION_COUNTS: [usize; 9] = [1, 1, 2, 3, 5, 7, 11, 15, 22];
    for n in cfg.ns(1..=8) {
        jobs.push(
            Job::new(format!("S{n}-s0"), move |_| {
                let z = zeta(&sn_character_table(n)?, &BigRational::zero());
                let want = BigRational::from_integer(PARTITION_COUNTS[n].into());
                Ok(Outcome::eq(rational(&want), z.exact.as_ref().map(rational)))
            })
            .param("group", format!("S{n}"))
            .param("s", 0),
        );
    }
    if !cfg.admits(5) {
        return jobs;
    }
    jobs.push(
        Job::new("S5-s-half", |_| {
            let z = zeta(
                &sn_character_table(5)?,
                &BigRational::new(1.into(), 2.into()),
            );
            // degrees 1, 1, 4, 4, 5, 5, 6
            let want: f64 = [1.0f64, 1.0, 4.0, 4.0, 5.0, 5.0, 6.0]
                .iter()
                .map(|d| d.powf(-0.5))
                .sum();
            Ok(Outcome::within(want, z.approx, 1e-12))
        })
        .param("group", "S5")
        .param("s", "1/2"),
    );
    jobs
}
