//! One line per headline criterion; fails if any criterion fails.

use vsa_core::suites::{run, SuiteConfig, NAMES};

#[test]
fn acceptance() {
    let cfg = SuiteConfig::default();
    let mut failed = Vec::new();
    for id in 1..=NAMES.len() as u32 {
        let r = run(id, &cfg);
        println!("criterion {:>2} {} ({:.1}s): {}", r.id, if r.passed { "PASS" } else { "FAIL" }, r.seconds, r.name);
        if !r.passed {
            let detail = serde_json::to_string(&r.detail).unwrap_or_default();
            println!("    detail: {}", &detail[..detail.len().min(2000)]);
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
