//! Differential fuzzing of the graph engine against the tableau and dense
//! engines.
//!
//! Every iteration draws a random circuit from its own ChaCha8 stream, keyed
//! by `(seed, iteration)`, and runs it on a [`GraphRegister`]. The shadow
//! engines replay each instruction with the graph engine's random outcomes
//! forced, so any disagreement is a bug rather than a different coin flip.

use std::fmt;
use std::sync::Arc;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::circuit::{Circuit, Gate, Instruction};
use crate::cz_table::{cz_table, CzTable};
use crate::dense::{dense_from_graphreg, states_equal_up_to_phase, DenseSimulator};
use crate::engine::Simulator;
use crate::register::GraphRegister;
use crate::tableau::{tableau_from_graphreg, TableauSimulator};

/// Relative frequencies of the instruction kinds in generated circuits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GateWeights {
    pub h: u32,
    pub s: u32,
    pub sdg: u32,
    pub x: u32,
    pub y: u32,
    pub z: u32,
    pub cz: u32,
    pub cnot: u32,
    pub measure: u32,
}

impl Default for GateWeights {
    fn default() -> Self {
        GateWeights {
            h: 2,
            s: 2,
            sdg: 0,
            x: 1,
            y: 0,
            z: 1,
            cz: 3,
            cnot: 3,
            measure: 2,
        }
    }
}

impl GateWeights {
    /// Every instruction kind with weight one.
    pub fn uniform() -> Self {
        GateWeights {
            h: 1,
            s: 1,
            sdg: 1,
            x: 1,
            y: 1,
            z: 1,
            cz: 1,
            cnot: 1,
            measure: 1,
        }
    }

    fn single_qubit(&self) -> [(Option<Gate>, u32); 7] {
        [
            (Some(Gate::H), self.h),
            (Some(Gate::S), self.s),
            (Some(Gate::Sdg), self.sdg),
            (Some(Gate::X), self.x),
            (Some(Gate::Y), self.y),
            (Some(Gate::Z), self.z),
            (None, self.measure),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuzzConfig {
    pub seed: u64,
    pub min_qubits: usize,
    pub max_qubits: usize,
    pub min_len: usize,
    pub max_len: usize,
    pub iterations: u64,
    pub weights: GateWeights,
    /// Compare canonical tableaus every this many instructions (and always at
    /// the end of a circuit).
    pub tableau_cadence: usize,
    /// Shadow with the dense engine when the circuit has at most this many
    /// qubits; the state is compared after every instruction.
    pub dense_max_qubits: usize,
}

impl FuzzConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.min_qubits == 0 || self.min_qubits > self.max_qubits {
            return Err(format!(
                "bad qubit range {}..={}",
                self.min_qubits, self.max_qubits
            ));
        }
        if self.min_len > self.max_len {
            return Err(format!(
                "bad length range {}..={}",
                self.min_len, self.max_len
            ));
        }
        Ok(())
    }
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            seed: 0,
            min_qubits: 1,
            max_qubits: 8,
            min_len: 1,
            max_len: 40,
            iterations: 100,
            weights: GateWeights::default(),
            tableau_cadence: 1000,
            dense_max_qubits: 8,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divergence {
    pub seed: u64,
    pub iteration: u64,
    /// Index of the offending instruction, or `None` for the end-of-circuit
    /// comparison and for generation failures.
    pub instruction: Option<usize>,
    pub message: String,
    pub circuit: String,
}

impl fmt::Display for Divergence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "divergence at seed {} iteration {}",
            self.seed, self.iteration
        )?;
        if let Some(i) = self.instruction {
            write!(f, " instruction {i}")?;
        }
        writeln!(f, ": {}", self.message)?;
        write!(f, "{}", self.circuit)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FuzzReport {
    pub iterations: u64,
    pub instructions: u64,
    pub measurements: u64,
    pub random_measurements: u64,
    pub tableau_checks: u64,
    pub dense_checks: u64,
    /// First divergence by iteration number.
    pub divergence: Option<Divergence>,
}

impl FuzzReport {
    pub fn passed(&self) -> bool {
        self.divergence.is_none()
    }

    fn absorb(&mut self, s: &IterationStats) {
        self.iterations += 1;
        self.instructions += s.instructions;
        self.measurements += s.measurements;
        self.random_measurements += s.random_measurements;
        self.tableau_checks += s.tableau_checks;
        self.dense_checks += s.dense_checks;
    }
}

impl fmt::Display for FuzzReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} iterations, {} instructions, {} measurements ({} random), {} tableau checks, {} dense checks",
            self.iterations,
            self.instructions,
            self.measurements,
            self.random_measurements,
            self.tableau_checks,
            self.dense_checks
        )?;
        match &self.divergence {
            None => write!(f, "PASS"),
            Some(d) => write!(f, "FAIL {d}"),
        }
    }
}

#[derive(Default)]
struct IterationStats {
    instructions: u64,
    measurements: u64,
    random_measurements: u64,
    tableau_checks: u64,
    dense_checks: u64,
}

/// Per-iteration generator; independent of how iterations are scheduled.
pub fn iteration_rng(seed: u64, iteration: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(iteration);
    rng
}

/// Draws a random circuit; two-qubit gates are skipped when `n == 1`.
pub fn random_circuit<R: Rng>(rng: &mut R, config: &FuzzConfig) -> Result<Circuit, String> {
    config.validate()?;
    let n = rng.random_range(config.min_qubits..=config.max_qubits);
    let len = rng.random_range(config.min_len..=config.max_len);

    let w = &config.weights;
    let singles = w.single_qubit();
    // Two-qubit kinds are encoded after the single-qubit ones.
    let two = if n >= 2 { [w.cz, w.cnot] } else { [0, 0] };
    let weights = singles.iter().map(|k| k.1).chain(two);
    let dist = WeightedIndex::new(weights).map_err(|e| format!("bad gate weights: {e}"))?;
    let single = singles.len();

    let mut circuit = Circuit::new(n).map_err(|e| e.to_string())?;
    for _ in 0..len {
        let k = dist.sample(rng);
        let ins = if k < single {
            let qubit = rng.random_range(0..n);
            match singles[k].0 {
                Some(gate) => Instruction::Gate { gate, qubit },
                None => Instruction::Measure {
                    qubit,
                    forced: None,
                },
            }
        } else {
            let a = rng.random_range(0..n);
            let mut b = rng.random_range(0..n - 1);
            if b >= a {
                b += 1;
            }
            if k == single {
                Instruction::Cz { a, b }
            } else {
                Instruction::Cnot {
                    control: a,
                    target: b,
                }
            }
        };
        circuit.push(ins).map_err(|e| e.to_string())?;
    }
    Ok(circuit)
}

/// Runs the campaign with the built-in ΛZ table.
pub fn fuzz(config: &FuzzConfig) -> FuzzReport {
    fuzz_with_table(config, cz_table())
}

/// Runs the campaign with the given ΛZ table in the graph engine (the shadow
/// engines do not use it, so a corrupted table shows up as a divergence).
pub fn fuzz_with_table(config: &FuzzConfig, table: Arc<CzTable>) -> FuzzReport {
    let outcomes: Vec<Result<IterationStats, Divergence>> = (0..config.iterations)
        .into_par_iter()
        .map(|it| run_iteration(config, &table, it))
        .collect();
    let mut report = FuzzReport::default();
    for outcome in outcomes {
        match outcome {
            Ok(stats) => report.absorb(&stats),
            Err(d) => {
                report.iterations += 1;
                if report.divergence.is_none() {
                    report.divergence = Some(d);
                }
            }
        }
    }
    report
}

fn run_iteration(
    config: &FuzzConfig,
    table: &Arc<CzTable>,
    iteration: u64,
) -> Result<IterationStats, Divergence> {
    let mut rng = iteration_rng(config.seed, iteration);
    let diverge = |instruction: Option<usize>, message: String, circuit: &str| Divergence {
        seed: config.seed,
        iteration,
        instruction,
        message,
        circuit: circuit.to_owned(),
    };
    let circuit = random_circuit(&mut rng, config).map_err(|m| diverge(None, m, ""))?;
    let text = circuit.to_string();
    let n = circuit.num_qubits();
    let engine_seed: u64 = rng.random();

    let mut graph = GraphRegister::with_cz_table(n, engine_seed, Arc::clone(table))
        .map_err(|e| diverge(None, e.to_string(), &text))?;
    let mut tableau =
        TableauSimulator::new(n, 0).map_err(|e| diverge(None, e.to_string(), &text))?;
    let mut dense = if n <= config.dense_max_qubits {
        Some(DenseSimulator::new(n, 0).map_err(|e| diverge(None, e.to_string(), &text))?)
    } else {
        None
    };

    let mut stats = IterationStats::default();
    let cadence = config.tableau_cadence.max(1);
    let compare_tableaus = |graph: &GraphRegister, tableau: &TableauSimulator| {
        let g = tableau_from_graphreg(graph).canonicalize();
        let t = tableau.stabilizers().canonicalize();
        match (g, t) {
            (Ok(g), Ok(t)) if g == t => Ok(()),
            (Ok(g), Ok(t)) => Err(format!(
                "stabilizer groups differ\ngraph:\n{g}tableau:\n{t}"
            )),
            (Err(e), _) => Err(format!("graph tableau is invalid: {e}")),
            (_, Err(e)) => Err(format!("shadow tableau is invalid: {e}")),
        }
    };

    for (idx, ins) in circuit.instructions().iter().enumerate() {
        let at = Some(idx);
        let record = graph
            .apply(ins)
            .map_err(|e| diverge(at, format!("graph engine: {e}"), &text))?;
        let forced = record.filter(|r| !r.deterministic).map(|r| r.outcome);

        let shadow = tableau
            .apply_forced(ins, forced)
            .map_err(|e| diverge(at, format!("tableau engine: {e}"), &text))?;
        if shadow != record {
            return Err(diverge(
                at,
                format!("graph {record:?} but tableau {shadow:?}"),
                &text,
            ));
        }
        if let Some(dense) = dense.as_mut() {
            let shadow = dense
                .apply_forced(ins, forced)
                .map_err(|e| diverge(at, format!("dense engine: {e}"), &text))?;
            if shadow != record {
                return Err(diverge(
                    at,
                    format!("graph {record:?} but dense {shadow:?}"),
                    &text,
                ));
            }
            let expanded =
                dense_from_graphreg(&graph).map_err(|e| diverge(at, e.to_string(), &text))?;
            let equal = states_equal_up_to_phase(&expanded, dense.state())
                .map_err(|e| diverge(at, e.to_string(), &text))?;
            if !equal {
                return Err(diverge(
                    at,
                    format!(
                        "state differs from dense oracle; graph register:\n{}",
                        graph.to_adjacency_text()
                    ),
                    &text,
                ));
            }
            stats.dense_checks += 1;
        }

        stats.instructions += 1;
        if let Some(r) = record {
            stats.measurements += 1;
            stats.random_measurements += u64::from(!r.deterministic);
        }
        if (idx + 1) % cadence == 0 {
            compare_tableaus(&graph, &tableau).map_err(|m| diverge(at, m, &text))?;
            stats.tableau_checks += 1;
        }
    }
    compare_tableaus(&graph, &tableau).map_err(|m| diverge(None, m, &text))?;
    stats.tableau_checks += 1;
    Ok(stats)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_campaign_passes() {
        let report = fuzz(&FuzzConfig::default());
        assert!(report.passed(), "{report}");
        assert_eq!(report.iterations, 100);
        assert!(report.dense_checks > 0);
    }

    #[test]
    fn all_gate_kinds_pass() {
        let config = FuzzConfig {
            seed: 3,
            iterations: 300,
            weights: GateWeights::uniform(),
            ..FuzzConfig::default()
        };
        let report = fuzz(&config);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn same_config_same_report() {
        let config = FuzzConfig {
            seed: 42,
            iterations: 50,
            ..FuzzConfig::default()
        };
        assert_eq!(fuzz(&config), fuzz(&config));
    }

    #[test]
    fn single_qubit_circuits_have_no_two_qubit_gates() {
        let config = FuzzConfig {
            min_qubits: 1,
            max_qubits: 1,
            ..FuzzConfig::default()
        };
        let mut rng = iteration_rng(0, 0);
        let c = random_circuit(&mut rng, &config).unwrap();
        assert!(c
            .instructions()
            .iter()
            .all(|i| !matches!(i, Instruction::Cz { .. } | Instruction::Cnot { .. })));
    }

    #[test]
    fn bad_ranges_are_reported() {
        let config = FuzzConfig {
            min_qubits: 0,
            iterations: 1,
            ..FuzzConfig::default()
        };
        assert!(!fuzz(&config).passed());
    }
}
