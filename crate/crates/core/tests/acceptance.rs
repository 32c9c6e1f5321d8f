//! Runs every acceptance criterion, printing one PASS/FAIL line each, and
//! exits non-zero if any fails.

use hitchin_core::suite::run_suite;

fn main() {
    let report = run_suite();
    for c in &report.criteria {
        println!("{}", c.line());
    }
    let passed = report.criteria.iter().filter(|c| c.passed).count();
    println!("acceptance: {passed}/{} criteria passed", report.criteria.len());
    if !report.all_passed {
        std::process::exit(1);
    }
}
