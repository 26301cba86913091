//! Acceptance suite: runs every criterion of the battery at the stated
//! tolerances and prints one pass/fail line per criterion.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use banachlab::verify::{run_battery, BatteryOptions};

#[test]
fn acceptance_criteria() {
    let report = run_battery(&BatteryOptions { seed: 7, scale: 1.0 });
    let mut failed = Vec::new();
    for criterion in &report.results {
        println!(
            "criterion {}: {} - {}",
            criterion.id,
            if criterion.passed { "PASS" } else { "FAIL" },
            criterion.name
        );
        for detail in &criterion.details {
            println!("    {detail}");
        }
        if !criterion.passed {
            failed.push(criterion.id);
        }
    }
    assert!(report.passed, "failed criteria: {failed:?}");
}
