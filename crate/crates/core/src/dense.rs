//! Dense state-vector oracle. Qubit `q` is bit `q` of the amplitude index.

use num_complex::Complex64;

use crate::circuit::{Circuit, Gate};
use crate::clifford::Mat2;
use crate::engine::{run_on, Simulator};
use crate::error::{Error, Result};
use crate::register::{GraphRegister, MeasurementRecord};
use crate::rng::OutcomeRng;
use crate::tableau::PauliString;

pub const MAX_DENSE_QUBITS: usize = 14;
const PROB_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct DenseState {
    n: usize,
    amplitudes: Vec<Complex64>,
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_DENSE_QUBITS {
        Err(Error::TooManyQubits {
            n,
            max: MAX_DENSE_QUBITS,
        })
    } else {
        Ok(())
    }
}

impl DenseState {
    /// |0…0⟩ on `n` qubits.
    pub fn zero(n: usize) -> Result<Self> {
        check_size(n)?;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << n];
        amplitudes[0] = Complex64::new(1.0, 0.0);
        Ok(DenseState { n, amplitudes })
    }

    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if !len.is_power_of_two() {
            return Err(Error::ContractViolation(format!(
                "amplitude count {len} is not a power of two"
            )));
        }
        let n = len.trailing_zeros() as usize;
        check_size(n)?;
        Ok(DenseState { n, amplitudes })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn apply_matrix(&mut self, q: usize, m: &Mat2) {
        let bit = 1usize << q;
        for i in 0..self.amplitudes.len() {
            if i & bit == 0 {
                let (a0, a1) = (self.amplitudes[i], self.amplitudes[i | bit]);
                self.amplitudes[i] = m[0][0] * a0 + m[0][1] * a1;
                self.amplitudes[i | bit] = m[1][0] * a0 + m[1][1] * a1;
            }
        }
    }

    pub fn hadamard(&mut self, q: usize) {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let bit = 1usize << q;
        for i in 0..self.amplitudes.len() {
            if i & bit == 0 {
                let (a0, a1) = (self.amplitudes[i], self.amplitudes[i | bit]);
                self.amplitudes[i] = (a0 + a1) * r;
                self.amplitudes[i | bit] = (a0 - a1) * r;
            }
        }
    }

    fn phase_on_one(&mut self, q: usize, phase: Complex64) {
        let bit = 1usize << q;
        for (i, a) in self.amplitudes.iter_mut().enumerate() {
            if i & bit != 0 {
                *a *= phase;
            }
        }
    }

    pub fn s(&mut self, q: usize) {
        self.phase_on_one(q, Complex64::new(0.0, 1.0));
    }

    pub fn s_dagger(&mut self, q: usize) {
        self.phase_on_one(q, Complex64::new(0.0, -1.0));
    }

    pub fn z(&mut self, q: usize) {
        self.phase_on_one(q, Complex64::new(-1.0, 0.0));
    }

    pub fn x(&mut self, q: usize) {
        let bit = 1usize << q;
        for i in 0..self.amplitudes.len() {
            if i & bit == 0 {
                self.amplitudes.swap(i, i | bit);
            }
        }
    }

    pub fn y(&mut self, q: usize) {
        // Y = i X Z
        self.z(q);
        self.x(q);
        self.amplitudes
            .iter_mut()
            .for_each(|a| *a *= Complex64::new(0.0, 1.0));
    }

    pub fn cz(&mut self, a: usize, b: usize) {
        let mask = (1usize << a) | (1usize << b);
        for (i, amp) in self.amplitudes.iter_mut().enumerate() {
            if i & mask == mask {
                *amp = -*amp;
            }
        }
    }

    pub fn cnot(&mut self, control: usize, target: usize) {
        let (c, t) = (1usize << control, 1usize << target);
        for i in 0..self.amplitudes.len() {
            if i & c != 0 && i & t == 0 {
                self.amplitudes.swap(i, i | t);
            }
        }
    }

    pub fn probability_of_one(&self, q: usize) -> f64 {
        let bit = 1usize << q;
        self.amplitudes
            .iter()
            .enumerate()
            .filter(|(i, _)| i & bit != 0)
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }

    /// Projects qubit `q` onto `outcome` and renormalizes.
    pub fn project(&mut self, q: usize, outcome: u8) -> Result<()> {
        let p1 = self.probability_of_one(q);
        let p = if outcome == 1 { p1 } else { 1.0 - p1 };
        if p < PROB_TOL {
            return Err(Error::ImpossibleOutcome { qubit: q, outcome });
        }
        let bit = 1usize << q;
        let scale = 1.0 / p.sqrt();
        for (i, a) in self.amplitudes.iter_mut().enumerate() {
            if (i & bit != 0) == (outcome == 1) {
                *a *= scale;
            } else {
                *a = Complex64::new(0.0, 0.0);
            }
        }
        Ok(())
    }

    pub fn inner(&self, other: &DenseState) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Returns `P|ψ⟩` for a signed Pauli string.
    pub fn apply_pauli_string(&self, p: &PauliString) -> DenseState {
        let mut out = self.clone();
        for q in 0..self.n {
            out.apply_matrix(q, &p.get(q).matrix());
        }
        if p.negative {
            out.amplitudes.iter_mut().for_each(|a| *a = -*a);
        }
        out
    }
}

/// True iff `|⟨s1|s2⟩| > 1 − 1e−10`.
pub fn states_equal_up_to_phase(s1: &DenseState, s2: &DenseState) -> Result<bool> {
    if s1.n != s2.n {
        return Err(Error::QubitCountMismatch(s1.n, s2.n));
    }
    Ok(s1.inner(s2).norm() > 1.0 - 1e-10)
}

/// Expands `⊗ C_v |G⟩`: |+⟩ on every vertex, ΛZ per edge, then the VOPs.
pub fn dense_from_graphreg(reg: &GraphRegister) -> Result<DenseState> {
    let n = reg.num_qubits();
    check_size(n)?;
    let amp = Complex64::new((1.0 / (1u64 << n) as f64).sqrt(), 0.0);
    let mut state = DenseState {
        n,
        amplitudes: vec![amp; 1 << n],
    };
    for (a, b) in reg.edges() {
        state.cz(a, b);
    }
    for (v, c) in reg.vops().iter().enumerate() {
        state.apply_matrix(v, &c.matrix());
    }
    Ok(state)
}

/// Dense engine with the shared measurement-outcome discipline.
#[derive(Clone, Debug)]
pub struct DenseSimulator {
    state: DenseState,
    rng: OutcomeRng,
}

impl DenseSimulator {
    pub fn new(n: usize, seed: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyRegister);
        }
        Ok(DenseSimulator {
            state: DenseState::zero(n)?,
            rng: OutcomeRng::new(seed),
        })
    }

    pub fn state(&self) -> &DenseState {
        &self.state
    }

    pub fn into_state(self) -> DenseState {
        self.state
    }

    fn check(&self, q: usize) -> Result<()> {
        if q < self.state.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: q,
                n: self.state.n,
            })
        }
    }
}

impl Simulator for DenseSimulator {
    fn num_qubits(&self) -> usize {
        self.state.n
    }

    fn apply_gate(&mut self, gate: Gate, q: usize) -> Result<()> {
        self.check(q)?;
        match gate {
            Gate::H => self.state.hadamard(q),
            Gate::S => self.state.s(q),
            Gate::Sdg => self.state.s_dagger(q),
            Gate::X => self.state.x(q),
            Gate::Y => self.state.y(q),
            Gate::Z => self.state.z(q),
        }
        Ok(())
    }

    fn cz(&mut self, a: usize, b: usize) -> Result<()> {
        self.check(a)?;
        self.check(b)?;
        if a == b {
            return Err(Error::IdenticalOperands(a));
        }
        self.state.cz(a, b);
        Ok(())
    }

    fn cnot(&mut self, control: usize, target: usize) -> Result<()> {
        self.check(control)?;
        self.check(target)?;
        if control == target {
            return Err(Error::IdenticalOperands(control));
        }
        self.state.cnot(control, target);
        Ok(())
    }

    fn measure(&mut self, q: usize, forced: Option<u8>) -> Result<MeasurementRecord> {
        self.check(q)?;
        let p1 = self.state.probability_of_one(q);
        let deterministic = if p1 < PROB_TOL {
            Some(0)
        } else if p1 > 1.0 - PROB_TOL {
            Some(1)
        } else {
            None
        };
        let record = match deterministic {
            Some(actual) => {
                if let Some(f) = forced.filter(|&f| f != actual) {
                    return Err(Error::ForcedOutcomeContradiction {
                        qubit: q,
                        forced: f,
                        actual,
                    });
                }
                MeasurementRecord {
                    qubit: q,
                    outcome: actual,
                    deterministic: true,
                }
            }
            None => {
                if (p1 - 0.5).abs() > 1e-8 {
                    return Err(Error::ContractViolation(format!(
                        "qubit {q} has outcome probability {p1}, not a stabilizer state"
                    )));
                }
                let outcome = forced.unwrap_or_else(|| u8::from(self.rng.next_bit()));
                MeasurementRecord {
                    qubit: q,
                    outcome,
                    deterministic: false,
                }
            }
        };
        self.state.project(q, record.outcome)?;
        Ok(record)
    }
}

/// Runs `circuit` on the dense engine. `forced[k]`, when given, overrides
/// the forced bit of the k-th measurement.
pub fn dense_run(
    circuit: &Circuit,
    seed: u64,
    forced: Option<&[Option<u8>]>,
) -> Result<(DenseState, Vec<MeasurementRecord>)> {
    let mut sim = DenseSimulator::new(circuit.num_qubits(), seed)?;
    let records = run_on(&mut sim, circuit, forced)?;
    Ok((sim.into_state(), records))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::parse_circuit;
    use crate::clifford::LocalClifford as C;
    use crate::pauli::Pauli;

    fn approx(a: Complex64, re: f64, im: f64) -> bool {
        (a - Complex64::new(re, im)).norm() < 1e-12
    }

    #[test]
    fn hadamard_on_one_qubit() {
        let c = parse_circuit("qubits 1\nh 0\n").unwrap();
        let (s, _) = dense_run(&c, 0, None).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!(approx(s.amplitudes()[0], r, 0.0) && approx(s.amplitudes()[1], r, 0.0));
    }

    #[test]
    fn bell_state() {
        let c = parse_circuit("qubits 2\nh 0\ncnot 0 1\n").unwrap();
        let (s, _) = dense_run(&c, 0, None).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let a = s.amplitudes();
        assert!(approx(a[0], r, 0.0) && approx(a[3], r, 0.0));
        assert!(approx(a[1], 0.0, 0.0) && approx(a[2], 0.0, 0.0));
    }

    #[test]
    fn bell_pair_in_rotated_basis() {
        let c = parse_circuit("qubits 2\nh 0\nh 1\ncz 0 1\nh 1\nmeasure 0 0\nmeasure 1\n").unwrap();
        let (_, recs) = dense_run(&c, 3, None).unwrap();
        assert_eq!((recs[0].outcome, recs[0].deterministic), (0, false));
        assert_eq!((recs[1].outcome, recs[1].deterministic), (0, true));
    }

    #[test]
    fn forced_impossible_outcome_is_an_error() {
        let c = parse_circuit("qubits 1\nmeasure 0 1\n").unwrap();
        assert!(matches!(
            dense_run(&c, 0, None),
            Err(Error::ForcedOutcomeContradiction { .. })
        ));
        let mut s = DenseState::zero(1).unwrap();
        assert!(matches!(
            s.project(0, 1),
            Err(Error::ImpossibleOutcome { .. })
        ));
    }

    #[test]
    fn size_cap() {
        assert!(matches!(
            DenseState::zero(15),
            Err(Error::TooManyQubits { .. })
        ));
        let reg = GraphRegister::new(15, 0).unwrap();
        assert!(dense_from_graphreg(&reg).is_err());
    }

    #[test]
    fn graph_expansion() {
        let reg = GraphRegister::new(1, 0).unwrap();
        let s = dense_from_graphreg(&reg).unwrap();
        assert!(approx(s.amplitudes()[0], 1.0, 0.0) && approx(s.amplitudes()[1], 0.0, 0.0));

        let reg = GraphRegister::from_graph(vec![C::I, C::I], &[], 0).unwrap();
        let s = dense_from_graphreg(&reg).unwrap();
        assert!(s.amplitudes().iter().all(|&a| approx(a, 0.5, 0.0)));
    }

    #[test]
    fn phase_invariant_equality() {
        let zero = DenseState::zero(1).unwrap();
        let theta = 0.7f64;
        let rotated = DenseState::from_amplitudes(vec![
            Complex64::from_polar(1.0, theta),
            Complex64::new(0.0, 0.0),
        ])
        .unwrap();
        let mut plus = zero.clone();
        plus.hadamard(0);
        assert!(states_equal_up_to_phase(&zero, &zero).unwrap());
        assert!(states_equal_up_to_phase(&zero, &rotated).unwrap());
        assert!(!states_equal_up_to_phase(&zero, &plus).unwrap());
        let two = DenseState::zero(2).unwrap();
        assert!(states_equal_up_to_phase(&zero, &two).is_err());
    }

    #[test]
    fn y_matches_matrix() {
        let mut a = DenseState::zero(2).unwrap();
        a.hadamard(0);
        a.s(0);
        let mut b = a.clone();
        a.y(0);
        b.apply_matrix(0, &Pauli::Y.matrix());
        assert!(a.inner(&b).re > 1.0 - 1e-12);
    }
}
