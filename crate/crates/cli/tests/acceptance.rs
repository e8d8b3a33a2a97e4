//! Acceptance suite: each criterion at its stated size and time limit, one
//! line per criterion. Criterion 11 runs the built binary twice.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use altlex_cli::selftest::{run_criterion, Config};

/// (criterion, wall-clock limit in seconds; `None` when none is stated).
const LIMITS: [(u32, Option<u64>); 10] = [
    (1, Some(10)),
    (2, Some(10)),
    (3, Some(30)),
    (4, None),
    (5, Some(60)),
    (6, Some(30)),
    (7, Some(30)),
    (8, None),
    (9, Some(30)),
    (10, None),
];

/// Runs `selftest --seed 7` and returns its standard output and status.
fn selftest_bytes() -> (Vec<u8>, Option<i32>) {
    let out = Command::new(env!("CARGO_BIN_EXE_altlex"))
        .args(["selftest", "--seed", "7"])
        .output()
        .expect("binary runs");
    (out.stdout, out.status.code())
}

fn line(id: u32, name: &str, passed: bool, elapsed: Duration, limit: Option<u64>, note: &str) {
    let limit = limit.map_or("none".to_string(), |l| format!("{l}s"));
    println!(
        "criterion {id:>2} {name:<26} {} {:>7.2}s (limit {limit}){note}",
        if passed { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
}

fn main() -> ExitCode {
    // The libtest harness is not used; ignore its flags.
    let cfg = Config::new(7);
    let mut all = true;
    for (id, limit) in LIMITS {
        let start = Instant::now();
        let r = run_criterion(id, &cfg);
        let elapsed = start.elapsed();
        let in_time = limit.is_none_or(|l| elapsed <= Duration::from_secs(l));
        let passed = r.passed && in_time;
        let note = match (&r.first_failure, in_time) {
            (Some(f), _) => format!(" [{}/{} failed: {f}]", r.failures, r.cases),
            (None, false) => " [over time limit]".to_string(),
            (None, true) => format!(" [{} cases]", r.cases),
        };
        line(id, r.name, passed, elapsed, limit, &note);
        all &= passed;
    }

    let start = Instant::now();
    let (a, code_a) = selftest_bytes();
    let (b, code_b) = selftest_bytes();
    let same = a == b && !a.is_empty();
    let passed = same && code_a == Some(0) && code_b == Some(0);
    let note = format!(" [{} bytes, identical: {same}, exit {code_a:?}/{code_b:?}]", a.len());
    line(11, "determinism", passed, start.elapsed(), None, &note);
    all &= passed;

    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
