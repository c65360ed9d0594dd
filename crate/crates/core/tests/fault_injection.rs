use std::sync::Arc;

use graphsim::fuzz::{fuzz_with_table, FuzzConfig};
use graphsim::selftest::selftest_with;
use graphsim::{cz_table, CzKey, LocalClifford};

fn corrupted() -> Arc<graphsim::CzTable> {
    let mut table = (*cz_table()).clone();
    // ΛZ between two |+⟩ vertices must add the edge; pretend it does nothing.
    let key = CzKey::new(false, LocalClifford::I, LocalClifford::I);
    table.override_entry(key, key);
    Arc::new(table)
}

#[test]
fn fuzz_reports_the_corrupted_entry() {
    let config = FuzzConfig {
        seed: 1,
        iterations: 200,
        ..FuzzConfig::default()
    };
    let report = fuzz_with_table(&config, corrupted());
    let d = report.divergence.expect("corruption must be detected");
    assert_eq!(d.seed, 1);
    assert!(d.instruction.is_some());
    assert!(d.circuit.starts_with("qubits "));
}

#[test]
fn divergence_is_reproducible() {
    let config = FuzzConfig {
        seed: 9,
        iterations: 64,
        ..FuzzConfig::default()
    };
    let first = fuzz_with_table(&config, corrupted());
    let second = fuzz_with_table(&config, corrupted());
    assert!(first.divergence.is_some());
    assert_eq!(first, second);
}

#[test]
fn selftest_flags_exactly_one_entry() {
    let report = selftest_with(&corrupted());
    assert!(!report.passed());
    assert_eq!(report.failures(), 1);
}
