//! Stabilizer circuit simulation on graph states.
//!
//! A state is held as `⊗ C_v |G⟩`: a graph `G` stored as adjacency sets and
//! one local Clifford vertex operator `C_v` per qubit. Single-qubit gates are
//! a table lookup, ΛZ and measurements rewrite the graph through local
//! complementations, and the whole engine is cross-checked against a dense
//! state-vector oracle and a CHP-style tableau oracle.
//!
//! ```
//! use graphsim::GraphRegister;
//!
//! let mut reg = GraphRegister::new(2, 7).unwrap();
//! reg.hadamard(0).unwrap();
//! reg.cnot(0, 1).unwrap();
//! let a = reg.measure(0, None).unwrap();
//! let b = reg.measure(1, None).unwrap();
//! assert_eq!(a.outcome, b.outcome);
//! assert!(b.deterministic);
//! ```

pub mod bench;
pub mod circuit;
pub mod clifford;
pub mod cz_table;
pub mod dense;
pub mod engine;
pub mod error;
pub mod fuzz;
pub mod pauli;
pub mod register;
pub mod rng;
pub mod selftest;
pub mod tableau;

pub use circuit::{parse_circuit, Circuit, Gate, Instruction};
pub use clifford::{GeneratorWord, LocalClifford};
pub use cz_table::{cz_table, CzEntry, CzKey, CzTable};
pub use dense::{dense_from_graphreg, dense_run, states_equal_up_to_phase, DenseState};
pub use engine::{run, EngineKind, Simulator, Transcript};
pub use error::{Error, Result};
pub use pauli::{Pauli, SignedPauli};
pub use register::{Axis, GraphRegister, MeasurementRecord};
pub use tableau::{canonicalize, tableau_from_graphreg, tableau_run, PauliString, Tableau};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
