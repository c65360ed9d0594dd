//! Engine-independent execution of circuits and the transcript format.

use std::fmt;
use std::str::FromStr;

use crate::circuit::{Circuit, Gate, Instruction};
use crate::dense::{DenseSimulator, MAX_DENSE_QUBITS};
use crate::error::{Error, Result};
use crate::register::{GraphRegister, MeasurementRecord};
use crate::tableau::{tableau_from_graphreg, Tableau, TableauSimulator};

/// Common gate set of the three engines.
pub trait Simulator {
    fn num_qubits(&self) -> usize;
    fn apply_gate(&mut self, gate: Gate, q: usize) -> Result<()>;
    fn cz(&mut self, a: usize, b: usize) -> Result<()>;
    fn cnot(&mut self, control: usize, target: usize) -> Result<()>;
    fn measure(&mut self, q: usize, forced: Option<u8>) -> Result<MeasurementRecord>;

    fn apply(&mut self, ins: &Instruction) -> Result<Option<MeasurementRecord>> {
        self.apply_forced(ins, None)
    }

    /// Like [`apply`](Self::apply); `forced` replaces the instruction's own
    /// forced bit when it is `Some`.
    fn apply_forced(
        &mut self,
        ins: &Instruction,
        forced: Option<u8>,
    ) -> Result<Option<MeasurementRecord>> {
        match *ins {
            Instruction::Gate { gate, qubit } => self.apply_gate(gate, qubit).map(|_| None),
            Instruction::Cz { a, b } => self.cz(a, b).map(|_| None),
            Instruction::Cnot { control, target } => self.cnot(control, target).map(|_| None),
            Instruction::Measure { qubit, forced: own } => {
                self.measure(qubit, forced.or(own)).map(Some)
            }
        }
    }
}

impl Simulator for GraphRegister {
    fn num_qubits(&self) -> usize {
        GraphRegister::num_qubits(self)
    }

    fn apply_gate(&mut self, gate: Gate, q: usize) -> Result<()> {
        match gate {
            Gate::H => self.hadamard(q),
            Gate::S => self.s_gate(q),
            Gate::Sdg => self.s_dagger(q),
            Gate::X => self.x(q),
            Gate::Y => self.y(q),
            Gate::Z => self.z(q),
        }
    }

    fn cz(&mut self, a: usize, b: usize) -> Result<()> {
        self.cphase(a, b)
    }

    fn cnot(&mut self, control: usize, target: usize) -> Result<()> {
        GraphRegister::cnot(self, control, target)
    }

    fn measure(&mut self, q: usize, forced: Option<u8>) -> Result<MeasurementRecord> {
        GraphRegister::measure(self, q, forced)
    }
}

/// Executes every instruction; `forced[k]` overrides the k-th measurement.
pub fn run_on<S: Simulator>(
    sim: &mut S,
    circuit: &Circuit,
    forced: Option<&[Option<u8>]>,
) -> Result<Vec<MeasurementRecord>> {
    if sim.num_qubits() != circuit.num_qubits() {
        return Err(Error::QubitCountMismatch(
            sim.num_qubits(),
            circuit.num_qubits(),
        ));
    }
    let mut records = Vec::new();
    for ins in circuit.instructions() {
        let override_bit = forced.and_then(|f| f.get(records.len()).copied().flatten());
        if let Some(rec) = sim.apply_forced(ins, override_bit)? {
            records.push(rec);
        }
    }
    Ok(records)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EngineKind {
    Graph,
    Tableau,
    Dense,
}

impl FromStr for EngineKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "graph" => Ok(EngineKind::Graph),
            "tableau" => Ok(EngineKind::Tableau),
            "dense" => Ok(EngineKind::Dense),
            other => Err(format!(
                "unknown engine `{other}` (expected graph, tableau or dense)"
            )),
        }
    }
}

impl fmt::Display for EngineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EngineKind::Graph => "graph",
            EngineKind::Tableau => "tableau",
            EngineKind::Dense => "dense",
        })
    }
}

/// Measurement records of one run, plus the final canonical tableau when
/// requested (graph and tableau engines only).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transcript {
    pub records: Vec<MeasurementRecord>,
    pub tableau: Option<Tableau>,
}

impl fmt::Display for Transcript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.records {
            let kind = if r.deterministic { "det" } else { "rand" };
            writeln!(f, "m {} {} {kind}", r.qubit, r.outcome)?;
        }
        if let Some(t) = &self.tableau {
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

pub fn run(
    circuit: &Circuit,
    seed: u64,
    engine: EngineKind,
    with_tableau: bool,
) -> Result<Transcript> {
    let n = circuit.num_qubits();
    match engine {
        EngineKind::Graph => {
            let mut reg = GraphRegister::new(n, seed)?;
            let records = run_on(&mut reg, circuit, None)?;
            let tableau = with_tableau
                .then(|| tableau_from_graphreg(&reg).canonicalize())
                .transpose()?;
            Ok(Transcript { records, tableau })
        }
        EngineKind::Tableau => {
            let mut sim = TableauSimulator::new(n, seed)?;
            let records = run_on(&mut sim, circuit, None)?;
            let tableau = with_tableau
                .then(|| sim.stabilizers().canonicalize())
                .transpose()?;
            Ok(Transcript { records, tableau })
        }
        EngineKind::Dense => {
            if n > MAX_DENSE_QUBITS {
                return Err(Error::TooManyQubits {
                    n,
                    max: MAX_DENSE_QUBITS,
                });
            }
            if with_tableau {
                return Err(Error::ContractViolation(
                    "the dense engine cannot print a tableau".into(),
                ));
            }
            let mut sim = DenseSimulator::new(n, seed)?;
            let records = run_on(&mut sim, circuit, None)?;
            Ok(Transcript {
                records,
                tableau: None,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::parse_circuit;

    #[test]
    fn empty_circuit_has_empty_transcript() {
        let c = parse_circuit("qubits 3\n").unwrap();
        for e in [EngineKind::Graph, EngineKind::Tableau, EngineKind::Dense] {
            assert_eq!(run(&c, 0, e, false).unwrap().to_string(), "");
        }
    }

    #[test]
    fn bell_pair_with_forced_first_outcome() {
        let c = parse_circuit("qubits 2\nh 0\ncnot 0 1\nmeasure 0 0\nmeasure 1\n").unwrap();
        for e in [EngineKind::Graph, EngineKind::Tableau, EngineKind::Dense] {
            let t = run(&c, 11, e, false).unwrap();
            assert_eq!(t.to_string(), "m 0 0 rand\nm 1 0 det\n", "{e}");
        }
    }

    #[test]
    fn engines_share_outcome_discipline() {
        let c =
            parse_circuit("qubits 3\nh 0\nh 1\nh 2\nmeasure 0\nmeasure 1\nmeasure 2\n").unwrap();
        let g = run(&c, 5, EngineKind::Graph, false).unwrap();
        let t = run(&c, 5, EngineKind::Tableau, false).unwrap();
        let d = run(&c, 5, EngineKind::Dense, false).unwrap();
        assert_eq!(g, t);
        assert_eq!(g, d);
    }

    #[test]
    fn forced_override_list() {
        let c = parse_circuit("qubits 1\nh 0\nmeasure 0\n").unwrap();
        let mut reg = GraphRegister::new(1, 0).unwrap();
        let recs = run_on(&mut reg, &c, Some(&[Some(1)])).unwrap();
        assert_eq!(recs[0].outcome, 1);
    }
}
