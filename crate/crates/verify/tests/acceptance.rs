//! Acceptance criteria, one line each. Runs without the libtest harness so
//! every criterion is reported even after a failure.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use npd_verify::{run_suite, CheckResult, SuiteConfig};

struct Criterion {
    id: u32,
    title: &'static str,
    budget: Duration,
    run: fn() -> Verdict,
}

struct Verdict {
    checks: Vec<CheckResult>,
    /// Check names that must be present.
    required: Vec<String>,
    extra_failures: Vec<String>,
}

fn suite(name: &str, cfg: SuiteConfig) -> Vec<CheckResult> {
    run_suite(name, &cfg).expect("registered suite")
}

fn range(lo: usize, hi: usize) -> SuiteConfig {
    SuiteConfig {
        n_range: Some(lo..=hi),
        ..SuiteConfig::default()
    }
}

fn verdict(checks: Vec<CheckResult>, required: &[String]) -> Verdict {
    Verdict {
        checks,
        required: required.to_vec(),
        extra_failures: Vec::new(),
    }
}

fn names(fmt: impl Fn(usize) -> String, ns: impl IntoIterator<Item = usize>) -> Vec<String> {
    ns.into_iter().map(fmt).collect()
}

fn c1() -> Verdict {
    let mut req = names(|n| format!("S{n}-orthogonality"), 1..=10);
    req.extend(names(|n| format!("S{n}-degree-square-sum"), 1..=10));
    req.extend(names(|n| format!("S{n}-hook-degrees"), 1..=10));
    verdict(suite("sym-char-orthogonality", range(1, 10)), &req)
}

fn c2() -> Verdict {
    let req: Vec<String> = ["S3", "S4", "S5", "A4", "A5", "A6"]
        .iter()
        .map(|g| format!("{g}-all-class-triples"))
        .collect();
    verdict(suite("frobenius-bruteforce", SuiteConfig::default()), &req)
}

fn c3() -> Verdict {
    let mut req = names(|n| format!("n{n}-count"), 10..=14);
    req.extend(names(|n| format!("n{n}-unit-products"), 10..=14));
    verdict(suite("twelve-characters", range(10, 14)), &req)
}

fn c4() -> Verdict {
    let mut checks = suite("an-two-derangements", range(5, 9));
    checks.extend(suite("d-squared", range(5, 9)));
    let mut req = names(|n| format!("A{n}-exhaustive"), 5..=9);
    req.extend(names(|n| format!("A{n}-natural"), 5..=9));
    req.extend(["A6-subsets:2".to_string(), "A7-subsets:2".to_string()]);
    verdict(checks, &req)
}

fn c5() -> Verdict {
    let req = [
        "n7-m7-k2-l4-no-three-cycle",
        "n8-m9-k2-l4-no-three-cycle",
        "A6-p-difference-lemma",
    ]
    .map(String::from);
    verdict(suite("alt-threecycle-gap", SuiteConfig::default()), &req)
}

fn c6() -> Verdict {
    let wanted = ["a9-derangement-density", "three-cycle-ratio-9"];
    let checks = suite("derangement-asymptotics", SuiteConfig::default())
        .into_iter()
        .filter(|c| wanted.contains(&c.check_name.as_str()))
        .collect();
    verdict(checks, &wanted.map(String::from))
}

fn c7() -> Verdict {
    let mut checks = suite("sl-strata", SuiteConfig::default());
    checks.extend(
        suite("fixedq-transvection", SuiteConfig::default())
            .into_iter()
            .filter(|c| c.check_name == "SL4-F2-s0-t2"),
    );
    let mut req: Vec<String> = [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2)]
        .iter()
        .map(|(n, q)| format!("SL{n}-F{q}-bounds"))
        .collect();
    req.push("SL4-F2-s0-t2".into());
    verdict(checks, &req)
}

fn c8() -> Verdict {
    let req: Vec<String> = [2, 3, 4, 5, 7, 8, 9]
        .iter()
        .map(|q| format!("q{q}-sandwich"))
        .collect();
    let checks = suite("gauss-binomial", SuiteConfig::default());
    let mut v = verdict(checks, &req);
    if v.checks.iter().any(|c| c.params["k_max"] != 10) {
        v.extra_failures.push("k_max below 10".into());
    }
    v
}

fn c9() -> Verdict {
    let mut checks = suite("cycle-mod-counts", range(1, 9));
    checks.extend(suite("rising-factorial", range(1, 12)));
    let mut req = names(|n| format!("S{n}-m1..9"), 1..=9);
    req.extend(names(|n| format!("A{n}-m1..9"), 1..=9));
    req.extend(names(|m| format!("deviation-trend-m{m}"), [3, 5, 7]));
    req.extend(names(|m| format!("m{m}"), [1, 3, 5, 7]));
    verdict(checks, &req)
}

fn c10() -> Verdict {
    let mut checks = suite("symbols-core", SuiteConfig::default());
    checks.extend(suite("symbols-bounded", SuiteConfig::default()));
    checks.extend(suite("symbols-classify", SuiteConfig::default()));
    let mut req: Vec<String> = [
        "rank-forms-agree",
        "removal-lowers-rank-by-d",
        "defect-one-bipartitions",
    ]
    .map(String::from)
    .to_vec();
    for (k, k2) in [(0, 1), (0, 2), (1, 2)] {
        for kinds in ["hook-hook", "hook-cohook", "cohook-hook", "cohook-cohook"] {
            req.push(format!("k{k}-k{k2}-{kinds}"));
        }
    }
    req.extend(names(|n| format!("odd-defect-rank{n}"), 6..=11));
    verdict(checks, &req)
}

fn c11() -> Verdict {
    let cfg = SuiteConfig {
        n_range: Some(1..=12),
        qs: Some(vec![2, 3]),
        ..SuiteConfig::default()
    };
    let mut req = Vec::new();
    for q in [2, 3] {
        req.extend(names(|l| format!("q{q}-L{l}"), 0..=3));
    }
    verdict(suite("unipotent-degree-bound", cfg), &req)
}

fn c12() -> Verdict {
    let mut checks = suite("bnp-inequality", SuiteConfig::default());
    checks.extend(suite("gowers", SuiteConfig::with_seed(42)));
    let req = [
        "S4-uniform-bound-all-triples",
        "S5-uniform-bound-all-triples",
        "A5-uniform-bound-all-triples",
        "A5-random-triples",
    ]
    .map(String::from);
    verdict(checks, &req)
}

fn c13() -> Verdict {
    verdict(
        suite("mixing-l1", range(6, 9)),
        &["an-natural-dd-l1-decreasing".to_string()],
    )
}

fn c14() -> Verdict {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_npd"))
            .args(["verify", "--suite", "all", "--seed", "42"])
            .output()
            .expect("npd runs")
    };
    let (a, b) = (run(), run());
    let mut extra = Vec::new();
    if a.stdout.is_empty() {
        extra.push("empty output".into());
    }
    if a.stdout != b.stdout {
        extra.push("outputs differ".into());
    }
    if a.status.code() != b.status.code() {
        extra.push("exit codes differ".into());
    }
    let lines = a.stdout.iter().filter(|&&c| c == b'\n').count();
    if lines < 200 {
        extra.push(format!("only {lines} result lines"));
    }
    Verdict {
        checks: Vec::new(),
        required: Vec::new(),
        extra_failures: extra,
    }
}

const CRITERIA: &[Criterion] = &[
    Criterion { id: 1, title: "S_n character tables: orthogonality, degree squares, hook degrees, n = 1..10", budget: Duration::from_secs(60), run: c1 },
    Criterion { id: 2, title: "Frobenius counts equal brute force on all class triples of S3 S4 S5 A4 A5 A6", budget: Duration::from_secs(120), run: c2 },
    Criterion { id: 3, title: "exactly twelve nonvanishing characters with unit products, n = 10..14", budget: Duration::from_secs(60), run: c3 },
    Criterion { id: 4, title: "every g in A_n is a product of two derangements and D^2 = A_n, n = 5..9, pairs on 6 and 7", budget: Duration::from_secs(600), run: c4 },
    Criterion { id: 5, title: "no 3-cycle in S*T for (7,7,2,4) and (8,9,2,4); cycle-count difference lemma on A6", budget: Duration::from_secs(300), run: c5 },
    Criterion { id: 6, title: "A9 derangement density 1/e +- 0.01 and 3-cycle representation ratio e +- 0.15", budget: Duration::from_secs(600), run: c6 },
    Criterion { id: 7, title: "SL_n(q) stratum bounds for five (n,q); no transvection in SL4(2) strata 0 * 2", budget: Duration::from_secs(300), run: c7 },
    Criterion { id: 8, title: "Gaussian binomial sandwich, k <= 10, q in {2,3,4,5,7,8,9}", budget: Duration::from_secs(1), run: c8 },
    Criterion { id: 9, title: "cycle-count residues vs brute force, rising factorial identity, deviation trend", budget: Duration::from_secs(120), run: c9 },
    Criterion { id: 10, title: "symbol ranks, hook removal, bipartitions, stabilization, four survivors", budget: Duration::from_secs(600), run: c10 },
    Criterion { id: 11, title: "unipotent degree bound, n <= 12, L <= 3, q in {2,3}", budget: Duration::from_secs(30), run: c11 },
    Criterion { id: 12, title: "convolution and uniform bounds on S4 S5 A5; 100 random A5 triples", budget: Duration::from_secs(300), run: c12 },
    Criterion { id: 13, title: "l1 distance of D*D from uniform strictly decreasing, A6..A9", budget: Duration::from_secs(600), run: c13 },
    Criterion { id: 14, title: "two runs of `verify --suite all --seed 42` are byte-identical", budget: Duration::from_secs(1200), run: c14 },
];

fn main() -> ExitCode {
    // libtest flags such as --list or a name filter are accepted and ignored
    if std::env::args().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let mut failed = Vec::new();
    for c in CRITERIA {
        let start = Instant::now();
        let v = (c.run)();
        let elapsed = start.elapsed();
        let mut problems = v.extra_failures;
        for name in &v.required {
            if !v.checks.iter().any(|r| &r.check_name == name) {
                problems.push(format!("missing check {name}"));
            }
        }
        for r in &v.checks {
            if let Some(reason) = &r.skipped {
                problems.push(format!("{}/{} skipped: {reason}", r.suite, r.check_name));
            } else if !r.pass {
                problems.push(format!(
                    "{}/{}: expected {} got {}",
                    r.suite, r.check_name, r.expected, r.actual
                ));
            }
        }
        if elapsed > c.budget {
            problems.push(format!(
                "over budget ({:.1} s > {} s)",
                elapsed.as_secs_f64(),
                c.budget.as_secs()
            ));
        }
        let status = if problems.is_empty() { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} {status} [{} checks, {:.2} s / {} s] {}",
            c.id,
            v.checks.len(),
            elapsed.as_secs_f64(),
            c.budget.as_secs(),
            c.title
        );
        for p in &problems {
            println!("    {p}");
        }
        if !problems.is_empty() {
            failed.push(c.id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria pass", CRITERIA.len());
        ExitCode::SUCCESS
    } else {
        println!(
            "acceptance: {} of {} criteria fail: {failed:?}",
            failed.len(),
            CRITERIA.len()
        );
        ExitCode::FAILURE
    }
}
