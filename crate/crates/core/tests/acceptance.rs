use rademacher_core::acceptance::{run_all, AcceptanceConfig, CriterionResult};
use serde_json::Value;

/// The C5 closed form counts an edge in the larger part. At n = 5 an edge in
/// the smaller part of K_{3,2} creates no 5-cycle, so the true minimum is 0
/// and criterion 8 cannot hold there. Anything else failing is a regression.
fn only_known_gap(r: &CriterionResult) -> bool {
    let Value::Array(rows) = &r.evidence else { return false };
    rows.iter().all(|row| {
        let at_n5 = row["f"] == "C5" && row["n"] == 5;
        if at_n5 {
            row["count"] == 0 && row["per_part"][0] == row["formula"]
        } else {
            row["count"] == row["formula"]
        }
    })
}

// Runs without the libtest harness so the criterion lines are always shown.
fn main() {
    let results = run_all(&AcceptanceConfig::default());
    for r in &results {
        println!("{}", r.line());
    }
    assert_eq!(results.len(), 11);
    for r in &results {
        if r.id == 8 && !r.passed {
            assert!(only_known_gap(r), "criterion 8 fails beyond the n = 5 gap: {}", r.evidence);
        } else {
            assert!(r.passed, "criterion {} failed: {}", r.id, r.summary);
        }
    }
    println!("acceptance: every criterion passed or failed only at the analysed gap");
}
