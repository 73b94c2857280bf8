//! Acceptance suite: one line per criterion, with pinned tolerances and time budgets.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use spincover::checks::{run_criterion, title, CheckOptions, Groups, CRITERIA};
use spincover::coset::{group_order, EnumLimits};
use spincover::sopath::FlowParams;
use spincover::words::{presentation_for, Variant};

/// Criteria whose failure is expected and recorded: the twisted presentation
/// as given defines a group of order 144 at n = 3, not 48.
const KNOWN_DEVIATIONS: &[usize] = &[10];
const TWISTED_N3_ORDER: usize = 144;

fn budget(k: usize) -> Duration {
    match k {
        1 => Duration::from_secs(4 * 30),
        3 => Duration::from_secs(60),
        8 => Duration::from_secs(5),
        12 => Duration::from_secs(120),
        _ => Duration::from_secs(120),
    }
}

fn main() -> ExitCode {
    let fp = FlowParams::default();
    assert_eq!(fp.tol, 1e-6, "flow tolerance pinned");
    assert_eq!(fp.max_iters, 20_000, "flow budget pinned");
    assert_eq!(fp.step, 0.05, "flow step pinned");
    assert_eq!(fp.stall_window, 500, "stall window pinned");
    assert_eq!(fp.progress, 1e-12, "progress threshold pinned");
    assert_eq!(fp.jitter, 1e-3, "jitter size pinned");
    assert_eq!(fp.retries, 10, "retry count pinned");
    let opts = CheckOptions::default();
    assert_eq!(
        (opts.pairs, opts.random_words),
        (10_000, 100),
        "sample sizes pinned"
    );

    let groups = Groups::new();
    let mut unexpected = Vec::new();
    for k in 1..=CRITERIA {
        let t = Instant::now();
        let report = match run_criterion(k, &groups, &opts) {
            Ok(r) => r,
            Err(e) => {
                println!("criterion {k:>2} {}: ERROR {e}", title(k));
                unexpected.push(k);
                continue;
            }
        };
        let elapsed = t.elapsed();
        let in_time = elapsed <= budget(k);
        let known = KNOWN_DEVIATIONS.contains(&k);
        let status = match (report.pass && in_time, known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known deviation)",
            (false, false) => "FAIL",
        };
        println!(
            "criterion {k:>2} {}: {status} [{:.2}s]",
            title(k),
            elapsed.as_secs_f64()
        );
        if !report.pass {
            for c in report.checks.iter().filter(|c| !c.pass) {
                println!("    {}: {}", c.name, c.detail);
            }
        }
        if !in_time {
            println!("    over budget {:?}", budget(k));
        }
        if report.pass == known || !in_time {
            unexpected.push(k);
        }
    }

    let p = presentation_for(3, Variant::Twisted).expect("twisted presentation");
    let order = group_order(&p, EnumLimits::default()).expect("twisted enumeration");
    println!("twisted n=3 order: {order} (recorded deviation expects {TWISTED_N3_ORDER})");
    if order != TWISTED_N3_ORDER {
        unexpected.push(10);
    }

    if unexpected.is_empty() {
        println!("acceptance: all criteria as expected");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected outcome for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
