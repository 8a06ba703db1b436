//! Runs the whole verification suite at a configurable truncation and
//! prints one line per check.
//!
//!     cargo run --example full_verification [-- D5MAX]

use mirror_quintic::verify::run_all;

fn main() {
    let d5max: u32 = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("d5max is a nonnegative integer"))
        .unwrap_or(25);
    let reports = run_all(d5max);
    let mut failures = 0;
    for r in &reports {
        println!("{}: {}", r.check, if r.passed() { "pass" } else { "FAIL" });
        for m in &r.mismatches {
            println!("  at {}: expected {}, got {}", m.location, m.expected, m.actual);
            failures += 1;
        }
    }
    println!();
    println!("{} checks, {} mismatches", reports.len(), failures);
    std::process::exit(if failures == 0 { 0 } else { 1 });
}
