//! Scaling benchmarks for the graph engine.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::register::GraphRegister;

pub const CSV_HEADER: &str =
    "workload,N,ops,total_seconds,seconds_per_op,edges,max_degree,mean_degree";

/// Comment lines written above the CSV header.
pub const REPORT_PREAMBLE: &str = "\
# linear_cluster is a bounded-degree stand-in for entanglement-purification
# circuits: N Hadamards, N-1 cz along a chain, then N/10 spread-out Z
# measurements. random_dense applies N Hadamards followed by 4N operations,
# each a Hadamard or a cz on a uniformly random qubit pair.
# Edge and degree columns are taken once all gates have been applied, before
# any measurement. total_seconds is the fastest of the repetitions.";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Workload {
    LinearCluster,
    RandomDense,
}

impl Workload {
    pub fn name(self) -> &'static str {
        match self {
            Workload::LinearCluster => "linear_cluster",
            Workload::RandomDense => "random_dense",
        }
    }
}

impl FromStr for Workload {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "linear_cluster" => Ok(Workload::LinearCluster),
            "random_dense" => Ok(Workload::RandomDense),
            other => Err(format!(
                "unknown workload `{other}` (expected linear_cluster or random_dense)"
            )),
        }
    }
}

impl fmt::Display for Workload {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub workload: Workload,
    pub n: usize,
    pub ops: u64,
    pub total_seconds: f64,
    pub seconds_per_op: f64,
    pub edges: usize,
    pub max_degree: usize,
    pub mean_degree: f64,
}

impl fmt::Display for BenchRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{},{:.6},{:.3e},{},{},{:.4}",
            self.workload,
            self.n,
            self.ops,
            self.total_seconds,
            self.seconds_per_op,
            self.edges,
            self.max_degree,
            self.mean_degree
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    pub fn to_csv(&self) -> String {
        let mut out = format!("{REPORT_PREAMBLE}\n{CSV_HEADER}\n");
        for row in &self.rows {
            out.push_str(&row.to_string());
            out.push('\n');
        }
        out
    }

    pub fn row(&self, workload: Workload, n: usize) -> Option<&BenchRow> {
        self.rows
            .iter()
            .find(|r| r.workload == workload && r.n == n)
    }
}

struct Sample {
    ops: u64,
    seconds: f64,
    edges: usize,
    max_degree: usize,
    mean_degree: f64,
}

fn graph_stats(reg: &GraphRegister) -> (usize, usize, f64) {
    let n = reg.num_qubits();
    let max = (0..n).map(|v| reg.degree(v)).max().unwrap_or(0);
    let edges = reg.edge_count();
    (edges, max, 2.0 * edges as f64 / n as f64)
}

fn linear_cluster(n: usize) -> Result<Sample> {
    let start = Instant::now();
    let mut reg = GraphRegister::new(n, 0)?;
    for v in 0..n {
        reg.hadamard(v)?;
    }
    for v in 1..n {
        reg.cphase(v - 1, v)?;
    }
    let (edges, max_degree, mean_degree) = graph_stats(&reg);
    let measurements = n / 10;
    for k in 0..measurements {
        reg.measure(k * 10 + 5, None)?;
    }
    let seconds = start.elapsed().as_secs_f64();
    Ok(Sample {
        ops: (n + n.saturating_sub(1) + measurements) as u64,
        seconds,
        edges,
        max_degree,
        mean_degree,
    })
}

fn random_dense(n: usize, seed: u64) -> Result<Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let extra = 4 * n;
    let ops: Vec<(usize, Option<usize>)> = (0..extra)
        .map(|_| {
            let a = rng.random_range(0..n);
            if n >= 2 && rng.random_bool(0.5) {
                let mut b = rng.random_range(0..n - 1);
                if b >= a {
                    b += 1;
                }
                (a, Some(b))
            } else {
                (a, None)
            }
        })
        .collect();

    let start = Instant::now();
    let mut reg = GraphRegister::new(n, seed)?;
    for v in 0..n {
        reg.hadamard(v)?;
    }
    for &(a, b) in &ops {
        match b {
            Some(b) => reg.cphase(a, b)?,
            None => reg.hadamard(a)?,
        }
    }
    let seconds = start.elapsed().as_secs_f64();
    let (edges, max_degree, mean_degree) = graph_stats(&reg);
    Ok(Sample {
        ops: (n + extra) as u64,
        seconds,
        edges,
        max_degree,
        mean_degree,
    })
}

/// Runs `workload` for every size in `sizes`, keeping the fastest of `reps`
/// repetitions per size.
pub fn bench(workload: Workload, sizes: &[usize], reps: usize) -> Result<BenchReport> {
    // Build the lookup tables outside the timed region.
    crate::cz_table::cz_table();
    let mut report = BenchReport::default();
    for &n in sizes {
        let mut best: Option<Sample> = None;
        for rep in 0..reps.max(1) {
            let sample = match workload {
                Workload::LinearCluster => linear_cluster(n)?,
                Workload::RandomDense => random_dense(n, rep as u64)?,
            };
            if best.as_ref().is_none_or(|b| sample.seconds < b.seconds) {
                best = Some(sample);
            }
        }
        let s = best.expect("at least one repetition");
        report.rows.push(BenchRow {
            workload,
            n,
            ops: s.ops,
            total_seconds: s.seconds,
            seconds_per_op: s.seconds / s.ops.max(1) as f64,
            edges: s.edges,
            max_degree: s.max_degree,
            mean_degree: s.mean_degree,
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_cluster_is_a_chain() {
        let report = bench(Workload::LinearCluster, &[1000], 1).unwrap();
        let row = &report.rows[0];
        assert_eq!(row.max_degree, 2);
        assert_eq!(row.edges, 999);
        assert_eq!(row.ops, 1000 + 999 + 100);
    }

    #[test]
    fn csv_layout() {
        let report = bench(Workload::RandomDense, &[20, 40], 1).unwrap();
        let csv = report.to_csv();
        let lines: Vec<&str> = csv.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines.len(), 3);
        assert!(lines[1].starts_with("random_dense,20,100,"));
        assert_eq!(lines[2].split(',').count(), 8);
    }

    #[test]
    fn workload_names_round_trip() {
        for w in [Workload::LinearCluster, Workload::RandomDense] {
            assert_eq!(w.name().parse::<Workload>().unwrap(), w);
        }
        assert!("purify".parse::<Workload>().is_err());
    }
}
