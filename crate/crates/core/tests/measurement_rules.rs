//! Graph-state Pauli measurements checked against dense projection.

mod common;

use graphsim::{Axis, GraphRegister};

#[test]
fn all_small_graphs_all_axes() {
    let report = common::arbitrate(4, 100, 2024);
    assert_eq!(report.graphs, 1 + 2 + 8 + 64);
    assert!(
        report.failures.is_empty(),
        "{} failures, first:\n{}",
        report.failures.len(),
        report.failures[0]
    );
    // X with result 1 on an isolated vertex is the only impossible case.
    assert!(report.impossible > 0);
}

#[test]
fn five_vertex_graphs_with_fewer_samples() {
    let report = common::arbitrate(5, 3, 7);
    assert!(report.failures.is_empty(), "{}", report.failures[0]);
}

#[test]
fn x_partner_is_smallest_neighbor() {
    // Star centred on 2 with leaves 3, 0, 1: the partner must be 0.
    let mut reg = GraphRegister::from_graph(
        vec![graphsim::LocalClifford::I; 4],
        &[(2, 3), (2, 0), (2, 1)],
        0,
    )
    .unwrap();
    reg.graph_measure(2, Axis::X, 0).unwrap();
    assert_eq!(reg.vop(0), graphsim::LocalClifford::SQRT_IY);
    assert_eq!(reg.vop(1), graphsim::LocalClifford::Z);
}
