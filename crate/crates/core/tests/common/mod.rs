#![allow(dead_code)]

use graphsim::clifford::{LocalClifford, GROUP_ORDER};
use graphsim::dense::DenseState;
use graphsim::{
    dense_from_graphreg, states_equal_up_to_phase, Axis, GraphRegister, Pauli, PauliString,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const STEANE_ZERO: &str = include_str!("../data/steane_zero.qc");

/// Four vertices, VOPs (H, I, HS, S), edges 0-1, 0-2, 1-2, 2-3.
pub fn four_vertex_register() -> GraphRegister {
    use LocalClifford as C;
    GraphRegister::from_graph(
        vec![C::H, C::I, C::HS, C::S],
        &[(0, 1), (0, 2), (1, 2), (2, 3)],
        0,
    )
    .unwrap()
}

pub const FOUR_VERTEX_STABILIZERS: &str = "+ZZXI\n+XXXI\n-XZYZ\n+IIXY\n";

/// `(I + (-1)^result P_v) |ψ⟩`, normalized, or `None` when it vanishes.
pub fn project(state: &DenseState, v: usize, axis: Axis, result: u8) -> Option<DenseState> {
    let n = state.num_qubits();
    let pauli = match axis {
        Axis::X => Pauli::X,
        Axis::Y => Pauli::Y,
        Axis::Z => Pauli::Z,
    };
    let mut p = PauliString::single(n, v, pauli);
    p.negative = result == 1;
    let image = state.apply_pauli_string(&p);
    let sum: Vec<Complex64> = state
        .amplitudes()
        .iter()
        .zip(image.amplitudes())
        .map(|(a, b)| a + b)
        .collect();
    let norm = sum.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    if norm < 1e-9 {
        return None;
    }
    DenseState::from_amplitudes(sum.into_iter().map(|a| a / norm).collect()).ok()
}

#[derive(Debug, Default)]
pub struct ArbitrationReport {
    pub graphs: usize,
    pub cases: usize,
    pub impossible: usize,
    pub failures: Vec<String>,
}

fn all_edges(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            out.push((a, b));
        }
    }
    out
}

/// Checks `graph_measure` against dense projection for every labelled graph
/// on up to `max_vertices` vertices, every vertex, axis and result, with
/// `vop_samples` random VOP assignments per graph.
pub fn arbitrate(max_vertices: usize, vop_samples: usize, seed: u64) -> ArbitrationReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = ArbitrationReport::default();
    for n in 1..=max_vertices {
        let candidates = all_edges(n);
        for mask in 0u32..(1 << candidates.len()) {
            report.graphs += 1;
            let edges: Vec<(usize, usize)> = candidates
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            for _ in 0..vop_samples {
                let vops: Vec<LocalClifford> = (0..n)
                    .map(|_| LocalClifford::from_index(rng.random_range(0..GROUP_ORDER)).unwrap())
                    .collect();
                check_graph(&edges, &vops, &mut report);
            }
        }
    }
    report
}

fn check_graph(edges: &[(usize, usize)], vops: &[LocalClifford], report: &mut ArbitrationReport) {
    let n = vops.len();
    let bare = GraphRegister::from_graph(vec![LocalClifford::I; n], edges, 0).unwrap();
    let graph_state = dense_from_graphreg(&bare).unwrap();
    for v in 0..n {
        for axis in [Axis::X, Axis::Y, Axis::Z] {
            for result in 0..2u8 {
                report.cases += 1;
                let mut reg = GraphRegister::from_graph(vops.to_vec(), edges, 0).unwrap();
                let expected = project(&graph_state, v, axis, result).map(|mut s| {
                    for (q, c) in vops.iter().enumerate() {
                        s.apply_matrix(q, &c.matrix());
                    }
                    s
                });
                let outcome = reg.graph_measure(v, axis, result);
                let describe = |what: &str| {
                    format!(
                        "edges {edges:?} vops {:?} vertex {v} {axis:?}={result}: {what}",
                        vops.iter().map(|c| c.index()).collect::<Vec<_>>()
                    )
                };
                match (expected, outcome) {
                    (None, Err(_)) => report.impossible += 1,
                    (None, Ok(())) => report
                        .failures
                        .push(describe("accepted an impossible result")),
                    (Some(_), Err(e)) => report.failures.push(describe(&format!("error {e}"))),
                    (Some(want), Ok(())) => {
                        if !reg.check_invariants() {
                            report.failures.push(describe("register invariants broken"));
                            continue;
                        }
                        let got = dense_from_graphreg(&reg).unwrap();
                        if !states_equal_up_to_phase(&got, &want).unwrap() {
                            report.failures.push(describe(&format!(
                                "state differs; register:\n{}",
                                reg.to_adjacency_text()
                            )));
                        }
                    }
                }
            }
        }
    }
}
