//! Exhaustive checks of the lookup tables against matrix arithmetic and the
//! dense two-qubit oracle.

use std::fmt;
use std::time::{Duration, Instant};

use num_complex::Complex64;

use crate::clifford::{
    mat_eq_up_to_phase, mat_mul, named_matrices, LocalClifford, Mat2, GROUP_ORDER, MAX_WORD_LEN,
};
use crate::cz_table::{CzKey, CzTable, TABLE_LEN};
use crate::dense::{states_equal_up_to_phase, DenseState};
use crate::pauli::Pauli;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl CheckResult {
    fn new(name: &'static str) -> Self {
        CheckResult {
            name,
            checked: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(describe());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct SelftestReport {
    pub checks: Vec<CheckResult>,
    pub elapsed: Duration,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().map(|c| c.failures.len()).sum()
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for SelftestReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed() { "ok" } else { "FAILED" };
            writeln!(
                f,
                "{:<16} {:>5} checked, {:>3} failed  {status}",
                c.name,
                c.checked,
                c.failures.len()
            )?;
            for msg in c.failures.iter().take(5) {
                writeln!(f, "    {msg}")?;
            }
        }
        write!(f, "{:.3}s", self.elapsed.as_secs_f64())
    }
}

/// Runs every check against the built-in tables.
pub fn selftest() -> SelftestReport {
    selftest_with(&crate::cz_table::cz_table())
}

pub fn selftest_with(cz: &CzTable) -> SelftestReport {
    let start = Instant::now();
    let checks = vec![
        named_elements(),
        multiplication(),
        adjoints(),
        conjugation(),
        decomposition(),
        z_set(),
        cz_entries(cz),
    ];
    SelftestReport {
        checks,
        elapsed: start.elapsed(),
    }
}

fn named_elements() -> CheckResult {
    let mut r = CheckResult::new("named");
    for (c, m) in named_matrices() {
        r.record(mat_eq_up_to_phase(&c.matrix(), &m), || {
            format!("element {} does not match its defining matrix", c.index())
        });
    }
    r
}

fn multiplication() -> CheckResult {
    let mut r = CheckResult::new("multiplication");
    for a in LocalClifford::all() {
        for b in LocalClifford::all() {
            let product = mat_mul(&a.matrix(), &b.matrix());
            r.record(mat_eq_up_to_phase(&(a * b).matrix(), &product), || {
                format!("{} * {} -> {}", a.index(), b.index(), (a * b).index())
            });
        }
    }
    r
}

fn adjoints() -> CheckResult {
    let mut r = CheckResult::new("adjoint");
    let identity = LocalClifford::I.matrix();
    for a in LocalClifford::all() {
        let product = mat_mul(&a.matrix(), &a.adjoint().matrix());
        r.record(mat_eq_up_to_phase(&product, &identity), || {
            format!("adjoint of {} is not {}", a.index(), a.adjoint().index())
        });
    }
    r
}

fn conjugation() -> CheckResult {
    let mut r = CheckResult::new("conjugation");
    for c in LocalClifford::all() {
        let m = c.matrix();
        let dagger = crate::clifford::mat_adjoint(&m);
        for p in [Pauli::X, Pauli::Y, Pauli::Z] {
            let image = c.conjugate(p);
            let actual = mat_mul(&dagger, &mat_mul(&p.matrix(), &m));
            let mut expected = image.pauli.matrix();
            if image.negative {
                for row in &mut expected {
                    for x in row.iter_mut() {
                        *x = -*x;
                    }
                }
            }
            r.record(mat_close(&actual, &expected), || {
                format!("{}: {p} -> {image}", c.index())
            });
        }
    }
    r
}

fn decomposition() -> CheckResult {
    let mut r = CheckResult::new("decomposition");
    for c in LocalClifford::all() {
        let word = c.decomposition();
        let product = word.iter().fold(LocalClifford::I.matrix(), |acc, g| {
            mat_mul(&acc, &g.element().matrix())
        });
        r.record(
            word.len() <= MAX_WORD_LEN && mat_eq_up_to_phase(&product, &c.matrix()),
            || format!("{} decomposes as {word}", c.index()),
        );
    }
    r
}

// An operator on one qubit commutes with ΛZ exactly when it is diagonal.
fn z_set() -> CheckResult {
    let mut r = CheckResult::new("z-set");
    let expected = [
        LocalClifford::I,
        LocalClifford::Z,
        LocalClifford::S,
        LocalClifford::S_DAG,
    ];
    for c in LocalClifford::all() {
        let m = c.matrix();
        let diagonal = m[0][1].norm() < 1e-12 && m[1][0].norm() < 1e-12;
        r.record(
            diagonal == c.commutes_with_cz() && diagonal == expected.contains(&c),
            || format!("{} misclassified", c.index()),
        );
    }
    let count = LocalClifford::all()
        .filter(|c| c.commutes_with_cz())
        .count();
    r.record(count == expected.len(), || {
        format!("z-set has {count} elements")
    });
    r
}

fn two_qubit_state(key: &CzKey) -> DenseState {
    let mut s = DenseState::zero(2).expect("two qubits fit");
    s.hadamard(0);
    s.hadamard(1);
    if key.edge {
        s.cz(0, 1);
    }
    s.apply_matrix(0, &key.vop_a.matrix());
    s.apply_matrix(1, &key.vop_b.matrix());
    s
}

fn cz_entries(cz: &CzTable) -> CheckResult {
    let mut r = CheckResult::new("cz-table");
    let mut seen = 0;
    for (key, entry) in cz.iter() {
        seen += 1;
        let mut before = two_qubit_state(&key);
        before.cz(0, 1);
        let after = two_qubit_state(&entry);
        let same = states_equal_up_to_phase(&before, &after).unwrap_or(false);
        let constraint = (!key.vop_a.commutes_with_cz() || entry.vop_a.commutes_with_cz())
            && (!key.vop_b.commutes_with_cz() || entry.vop_b.commutes_with_cz());
        r.record(same && constraint, || {
            format!(
                "({}, {}, {}) -> ({}, {}, {}): state {}, constraint {}",
                u8::from(key.edge),
                key.vop_a.index(),
                key.vop_b.index(),
                u8::from(entry.edge),
                entry.vop_a.index(),
                entry.vop_b.index(),
                if same { "ok" } else { "wrong" },
                if constraint { "ok" } else { "violated" }
            )
        });
    }
    r.record(
        seen == TABLE_LEN && TABLE_LEN == 2 * GROUP_ORDER * GROUP_ORDER,
        || format!("table has {seen} entries"),
    );
    r
}

fn mat_close(a: &Mat2, b: &Mat2) -> bool {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .all(|(x, y): (&Complex64, &Complex64)| (x - y).norm() < 1e-12)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_tables_pass() {
        let report = selftest();
        assert!(report.passed(), "{report}");
        assert_eq!(report.check("multiplication").unwrap().checked, 576);
        assert_eq!(report.check("conjugation").unwrap().checked, 72);
        assert_eq!(report.check("decomposition").unwrap().checked, 24);
        assert_eq!(report.check("cz-table").unwrap().checked, 1153);
    }

    #[test]
    fn corrupted_entry_is_caught() {
        let mut table = (*crate::cz_table::cz_table()).clone();
        let key = CzKey::new(false, LocalClifford::I, LocalClifford::I);
        table.override_entry(key, key);
        let report = selftest_with(&table);
        assert_eq!(report.check("cz-table").unwrap().failures.len(), 1);
    }
}
