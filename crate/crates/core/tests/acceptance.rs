//! End-to-end verification gate: every check suite runs at its default
//! scale and must pass exactly.  One line is printed per suite so a full
//! run reads as a scoreboard; run with `--nocapture` to see the lines even
//! when everything is green.

use twistclass::verify::run_all;
use twistclass::Bounds;

#[test]
fn all_criteria_pass() {
    let reports = run_all(&Bounds::default());
    assert_eq!(reports.len(), 11, "expected eleven suites");
    for r in &reports {
        println!("{r}");
    }
    let failed: Vec<&str> =
        reports.iter().filter(|r| !r.passed).map(|r| r.name).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
