//! The full acceptance suite as one integration test: one pass/fail line
//! per criterion, failing the test if any criterion fails.

use steinberg::acceptance::run_all;

#[test]
fn acceptance_suite() {
    let results = run_all();
    let mut all_passed = true;
    for r in &results {
        println!("{}", r.line());
        all_passed &= r.passed;
    }
    assert_eq!(results.len(), 9);
    assert!(all_passed, "at least one acceptance criterion failed");
}
