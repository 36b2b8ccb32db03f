//! Runs every acceptance criterion and prints one PASS/FAIL line per
//! criterion. The test fails if any criterion fails.

use lamplighter::verify::{run_criterion, VerifyOptions, CRITERIA};

#[test]
fn acceptance_criteria() {
    let opts = VerifyOptions::default();
    let mut failed = Vec::new();
    for (id, _) in CRITERIA {
        let result = run_criterion(id, &opts);
        println!("{}", result.line());
        if !result.passed {
            failed.push(result.name);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
