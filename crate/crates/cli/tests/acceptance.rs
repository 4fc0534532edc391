//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness and exits nonzero if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::Instant;

use verlinde::checks::{self, CheckResult, PairKind, VerifyOptions};
use verlinde::theory::{Kac, SingletTheory, TheoryConfig};
use verlinde_cli::{cmd_table, cmd_verify, Format, RunConfig};

const SL2_PAIRS: [(i64, i64); 4] = [(3, 2), (5, 2), (4, 3), (5, 3)];
const SINGLET_P: [i64; 4] = [2, 3, 4, 5];

struct Outcome {
    passed: bool,
    detail: String,
}

fn summarize(results: Vec<CheckResult>) -> Outcome {
    let passed = results.iter().all(|c| c.passed);
    let cases: usize = results.iter().map(|c| c.cases).sum();
    let worst = results.iter().map(|c| c.max_deviation).fold(0.0f64, f64::max);
    let mut detail = format!("{} checks, {cases} cases, max deviation {worst:.3e}", results.len());
    if let Some(bad) = results.iter().find(|c| !c.passed) {
        detail.push_str(&format!("; first failure {} ({:.3e} > {:.0e}) {}", bad.name, bad.max_deviation, bad.threshold, bad.error.clone().unwrap_or_default()));
    }
    Outcome { passed, detail }
}

fn minimal_pairs() -> Vec<Kac> {
    let mut out = Vec::new();
    for u in 2..=7 {
        for v in 2..=7 {
            if let Ok(k) = Kac::new(u, v) {
                out.push(k);
            }
        }
    }
    out
}

fn sl2_kacs() -> Vec<Kac> {
    SL2_PAIRS.iter().map(|&(u, v)| Kac::new(u, v).unwrap()).collect()
}

fn singlets() -> Vec<SingletTheory> {
    SINGLET_P.iter().map(|&p| SingletTheory::new(p).unwrap()).collect()
}

fn opts() -> VerifyOptions {
    VerifyOptions { samples: 20, seed: 42, pairs: 50, multisets: 1000, ..VerifyOptions::default() }
}

fn c1() -> Outcome {
    summarize(minimal_pairs().iter().map(checks::check_verlinde).collect())
}

fn c2() -> Outcome {
    summarize(minimal_pairs().iter().map(checks::check_smatrix).collect())
}

fn c3() -> Outcome {
    let o = opts();
    summarize(
        singlets()
            .iter()
            .flat_map(|t| [checks::check_singlet_limits(t, &o), checks::check_singlet_limit_order(t, &o)])
            .collect(),
    )
}

fn c4() -> Outcome {
    let o = opts();
    summarize(singlets().iter().map(|t| checks::check_singlet_euler(t, &o)).collect())
}

fn c5() -> Outcome {
    let o = opts();
    summarize(sl2_kacs().iter().flat_map(|k| [checks::check_sl2_series(k, &o), checks::check_sl2_limits(k, &o)]).collect())
}

fn c6() -> Outcome {
    let o = opts();
    summarize(
        sl2_kacs()
            .iter()
            .flat_map(|k| [PairKind::StdStd, PairKind::StdD, PairKind::DD].map(|kind| checks::check_sl2_homomorphism(k, kind, &o)))
            .collect(),
    )
}

fn c7() -> Outcome {
    let o = opts();
    summarize(sl2_kacs().iter().map(|k| checks::check_projective_round_trip(k, &o)).collect())
}

fn c8() -> Outcome {
    let o = opts();
    summarize(singlets().iter().map(|t| checks::check_singlet_qn_qv(t, &o)).collect())
}

fn c9() -> Outcome {
    let mut runs = 0;
    let mut mismatches = Vec::new();
    let json = |t: TheoryConfig<f64>| RunConfig::new(t).with_format(Format::Json).without_timestamp();
    let mut sl2_window = json(TheoryConfig::Sl2(Kac::new(3, 2).unwrap()));
    sl2_window.window.lam = Some(vec!["0.31".into(), "1.2".into()]);
    let tables = [json(TheoryConfig::Minimal(Kac::new(5, 2).unwrap())), json(TheoryConfig::Minimal(Kac::new(7, 4).unwrap())), sl2_window];
    for cfg in &tables {
        runs += 1;
        if cmd_table(cfg) != cmd_table(cfg) {
            mismatches.push(format!("table {}", cfg.theory.name()));
        }
    }
    let verifies = [
        (json(TheoryConfig::Sl2(Kac::new(3, 2).unwrap())), "all"),
        (json(TheoryConfig::Singlet(SingletTheory::new(3).unwrap())), "all"),
        (json(TheoryConfig::Minimal(Kac::new(5, 2).unwrap())), "all"),
    ];
    for (cfg, suite) in &verifies {
        runs += 1;
        if cmd_verify(cfg, suite) != cmd_verify(cfg, suite) {
            mismatches.push(format!("verify {}", cfg.theory.name()));
        }
    }
    // the binary writing files with equal flags
    let dir = std::env::temp_dir().join(format!("verlinde-acceptance-{}", std::process::id()));
    let _ = std::fs::create_dir_all(&dir);
    for (name, args) in [
        ("table", vec!["table", "--theory", "minimal", "--u", "4", "--v", "3", "--format", "csv"]),
        ("verify", vec!["verify", "--theory", "sl2", "--u", "5", "--v", "3", "homomorphism", "--format", "json"]),
    ] {
        runs += 1;
        let mut bytes = Vec::new();
        for i in 0..2 {
            let path = dir.join(format!("{name}-{i}.out"));
            let status = Command::new(env!("CARGO_BIN_EXE_verlinde"))
                .args(&args)
                .args(["--no-timestamp", "--output", path.to_str().unwrap()])
                .status();
            bytes.push(status.ok().filter(|s| s.success()).and_then(|_| std::fs::read(&path).ok()));
        }
        if bytes[0].is_none() || bytes[0] != bytes[1] {
            mismatches.push(format!("binary {name}"));
        }
    }
    let _ = std::fs::remove_dir_all(&dir);
    Outcome {
        passed: mismatches.is_empty(),
        detail: if mismatches.is_empty() { format!("{runs} paired runs byte-identical") } else { format!("differing: {}", mismatches.join(", ")) },
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("minimal-model Verlinde sums match the closed-form coefficients", c1),
        ("S-matrix orthogonality", c2),
        ("singlet resolution limits match the closed form in both orders", c3),
        ("singlet Euler additivity", c4),
        ("sl2 resolution series and double limit match the closed forms", c5),
        ("sl2 quantum dimensions are multiplicative on fusion products", c6),
        ("projective lift inverts the Grothendieck image", c7),
        ("singlet q_N times q_V equals one", c8),
        ("table and verify output is deterministic", c9),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = f();
        let secs = start.elapsed().as_secs_f64();
        println!("{} criterion {}: {name} [{}; {secs:.2}s]", if out.passed { "PASS" } else { "FAIL" }, i + 1, out.detail);
        if !out.passed {
            failed += 1;
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
