mod common;

use graphsim::{parse_circuit, run, tableau_from_graphreg, EngineKind, GraphRegister, Tableau};

#[test]
fn four_vertex_register_stabilizers() {
    let reg = common::four_vertex_register();
    let expected: Tableau = common::FOUR_VERTEX_STABILIZERS.parse().unwrap();
    assert!(tableau_from_graphreg(&reg).same_group(&expected).unwrap());
}

#[test]
fn four_vertex_register_adjacency_text() {
    let reg = common::four_vertex_register();
    let text = reg.to_adjacency_text();
    assert_eq!(text, "0 1 1 2\n1 0 0 2\n2 5 0 1 3\n3 3 2\n");
    let back = GraphRegister::from_adjacency_text(&text, 0).unwrap();
    assert_eq!(back.edges(), reg.edges());
    assert_eq!(back.vops(), reg.vops());
}

#[test]
fn steane_parity_is_zero() {
    let circuit = parse_circuit(common::STEANE_ZERO).unwrap();
    assert_eq!(circuit.num_qubits(), 8);
    assert_eq!(circuit.len(), 20);
    let t = run(&circuit, 0, EngineKind::Graph, false).unwrap();
    assert_eq!(t.to_string(), "m 7 0 det\n");
}

#[test]
fn steane_final_tableau_agrees_between_engines() {
    let circuit = parse_circuit(common::STEANE_ZERO).unwrap();
    let g = run(&circuit, 3, EngineKind::Graph, true).unwrap();
    let t = run(&circuit, 3, EngineKind::Tableau, true).unwrap();
    assert_eq!(g.tableau, t.tableau);
    assert!(g.tableau.is_some());
}
