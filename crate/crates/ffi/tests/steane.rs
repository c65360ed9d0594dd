//! The Steane-code parity example driven entirely through the C ABI.

use std::ffi::CStr;

use graphsim::{parse_circuit, run, EngineKind, Gate, Instruction};
use graphsim_ffi::*;

#[test]
fn steane_parity_through_the_c_abi() {
    unsafe {
        let gr = graphsim_register_new(8, 0);
        assert!(!gr.is_null());
        for q in [4, 5, 6] {
            assert_eq!(graphsim_hadamard(gr, q), 0);
        }
        for (c, t) in [
            (6, 3),
            (6, 1),
            (6, 0),
            (5, 3),
            (5, 2),
            (5, 0),
            (4, 3),
            (4, 2),
            (4, 1),
        ] {
            assert_eq!(graphsim_cnot(gr, c, t), 0);
        }
        for i in 0..7 {
            assert_eq!(graphsim_cnot(gr, i, 7), 0);
        }
        let mut det = 0;
        assert_eq!(graphsim_measure(gr, 7, -1, &mut det), 0);
        assert_eq!(det, 1);

        let text = graphsim_stabilizer_text(gr);
        let rows = CStr::from_ptr(text).to_str().unwrap().to_owned();
        graphsim_string_free(text);
        assert_eq!(rows.lines().count(), 8);
        assert_eq!(rows.lines().last(), Some("+IIIIIIIZ"));
        graphsim_register_free(gr);
    }
}

// The handle API and the circuit runner consume the same generator, so a
// seeded script gives the CLI's transcript.
#[test]
fn handle_calls_match_the_circuit_runner() {
    let circuit = parse_circuit(
        "qubits 5\nh 0\nh 1\ncz 0 1\nh 2\ncnot 2 3\nmeasure 0\ns 1\nh 1\nmeasure 1\nmeasure 2\ny 3\nmeasure 3\nh 4\nmeasure 4\n",
    )
    .unwrap();
    for seed in 0..100 {
        let expected = run(&circuit, seed, EngineKind::Graph, false).unwrap();
        let mut got = Vec::new();
        unsafe {
            let h = graphsim_register_new(circuit.num_qubits(), seed);
            for ins in circuit.instructions() {
                let rc = match *ins {
                    Instruction::Gate { gate, qubit } => match gate {
                        Gate::H => graphsim_hadamard(h, qubit),
                        Gate::S => graphsim_s(h, qubit),
                        Gate::Sdg => graphsim_sdg(h, qubit),
                        Gate::X => graphsim_x(h, qubit),
                        Gate::Y => graphsim_y(h, qubit),
                        Gate::Z => graphsim_z(h, qubit),
                    },
                    Instruction::Cz { a, b } => graphsim_cphase(h, a, b),
                    Instruction::Cnot { control, target } => graphsim_cnot(h, control, target),
                    Instruction::Measure { qubit, .. } => {
                        let bit = graphsim_measure(h, qubit, -1, std::ptr::null_mut());
                        got.push(bit as u8);
                        0
                    }
                };
                assert_eq!(rc, 0);
            }
            graphsim_register_free(h);
        }
        let want: Vec<u8> = expected.records.iter().map(|r| r.outcome).collect();
        assert_eq!(got, want, "seed {seed}");
    }
}
