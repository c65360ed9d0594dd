//! Graph register: the state `⊗ C_v |G⟩` as adjacency sets plus one vertex
//! operator (VOP) per vertex.

use std::fmt::Write as _;
use std::sync::Arc;

use rustc_hash::FxHashSet;

use crate::clifford::LocalClifford;
use crate::cz_table::{cz_table, CzKey, CzTable};
use crate::error::{Error, Result};
use crate::pauli::Pauli;
use crate::rng::OutcomeRng;

/// Pauli axis measured on the underlying graph state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MeasurementRecord {
    pub qubit: usize,
    pub outcome: u8,
    pub deterministic: bool,
}

#[derive(Clone, Debug)]
pub struct GraphRegister {
    adjacency: Vec<FxHashSet<usize>>,
    vops: Vec<LocalClifford>,
    rng: OutcomeRng,
    cz: Arc<CzTable>,
    complementations: u64,
}

impl GraphRegister {
    /// `n` qubits in |0…0⟩: no edges, every VOP is H.
    pub fn new(n: usize, seed: u64) -> Result<Self> {
        Self::with_cz_table(n, seed, cz_table())
    }

    pub fn with_cz_table(n: usize, seed: u64, cz: Arc<CzTable>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyRegister);
        }
        Ok(GraphRegister {
            adjacency: vec![FxHashSet::default(); n],
            vops: vec![LocalClifford::H; n],
            rng: OutcomeRng::new(seed),
            cz,
            complementations: 0,
        })
    }

    /// Builds `|G; C⟩` from an explicit edge list and VOP list.
    pub fn from_graph(
        vops: Vec<LocalClifford>,
        edges: &[(usize, usize)],
        seed: u64,
    ) -> Result<Self> {
        let mut reg = Self::new(vops.len(), seed)?;
        reg.vops = vops;
        for &(a, b) in edges {
            reg.check(a)?;
            reg.check(b)?;
            if a == b {
                return Err(Error::IdenticalOperands(a));
            }
            reg.add_edge(a, b);
        }
        Ok(reg)
    }

    pub fn num_qubits(&self) -> usize {
        self.vops.len()
    }

    pub fn vop(&self, v: usize) -> LocalClifford {
        self.vops[v]
    }

    pub fn vops(&self) -> &[LocalClifford] {
        &self.vops
    }

    pub fn neighbors(&self, v: usize) -> &FxHashSet<usize> {
        &self.adjacency[v]
    }

    pub fn sorted_neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.adjacency[v].iter().copied().collect();
        out.sort_unstable();
        out
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].contains(&b)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    /// Edges as `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .adjacency
            .iter()
            .enumerate()
            .flat_map(|(a, ns)| ns.iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
            .collect();
        out.sort_unstable();
        out
    }

    /// Number of local complementations performed so far.
    pub fn complementation_count(&self) -> u64 {
        self.complementations
    }

    fn check(&self, v: usize) -> Result<()> {
        if v < self.vops.len() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.vops.len(),
            })
        }
    }

    fn add_edge(&mut self, a: usize, b: usize) {
        self.adjacency[a].insert(b);
        self.adjacency[b].insert(a);
    }

    fn remove_edge(&mut self, a: usize, b: usize) {
        self.adjacency[a].remove(&b);
        self.adjacency[b].remove(&a);
    }

    fn toggle_edge(&mut self, a: usize, b: usize) {
        debug_assert_ne!(a, b);
        if self.adjacency[a].remove(&b) {
            self.adjacency[b].remove(&a);
        } else {
            self.add_edge(a, b);
        }
    }

    // ---- single-qubit gates ---------------------------------------------

    /// Applies `c` to qubit `v`: `C_v ← c · C_v`.
    pub fn apply_local(&mut self, v: usize, c: LocalClifford) -> Result<()> {
        self.check(v)?;
        self.vops[v] = c * self.vops[v];
        Ok(())
    }

    pub fn hadamard(&mut self, v: usize) -> Result<()> {
        self.apply_local(v, LocalClifford::H)
    }

    pub fn s_gate(&mut self, v: usize) -> Result<()> {
        self.apply_local(v, LocalClifford::S)
    }

    pub fn s_dagger(&mut self, v: usize) -> Result<()> {
        self.apply_local(v, LocalClifford::S_DAG)
    }

    pub fn x(&mut self, v: usize) -> Result<()> {
        self.apply_local(v, LocalClifford::X)
    }

    pub fn y(&mut self, v: usize) -> Result<()> {
        self.apply_local(v, LocalClifford::Y)
    }

    pub fn z(&mut self, v: usize) -> Result<()> {
        self.apply_local(v, LocalClifford::Z)
    }

    // ---- local complementation and VOP reduction -------------------------

    /// Local complementation about `v`, compensated on the VOPs so the
    /// represented state does not change.
    pub fn local_complementation(&mut self, v: usize) -> Result<()> {
        self.check(v)?;
        let nbrs: Vec<usize> = self.adjacency[v].iter().copied().collect();
        for (i, &b) in nbrs.iter().enumerate() {
            for &c in &nbrs[i + 1..] {
                self.toggle_edge(b, c);
            }
        }
        for &b in &nbrs {
            self.vops[b] = self.vops[b] * LocalClifford::SQRT_MINUS_IZ;
        }
        self.vops[v] = self.vops[v] * LocalClifford::SQRT_IX;
        self.complementations += 1;
        Ok(())
    }

    /// Reduces `C_a` to the identity, preferring a swapping partner other
    /// than `avoid`. The smallest eligible neighbor id is used.
    pub fn reduce_vop(&mut self, a: usize, avoid: usize) -> Result<()> {
        self.check(a)?;
        let partner = self.adjacency[a]
            .iter()
            .copied()
            .filter(|&c| c != avoid)
            .min()
            .or_else(|| self.adjacency[a].contains(&avoid).then_some(avoid))
            .ok_or(Error::IsolatedVertex(a))?;
        let word = self.vops[a].decomposition();
        for factor in word.iter().rev() {
            match factor {
                crate::clifford::Generator::SqrtMinusIX => self.local_complementation(a)?,
                crate::clifford::Generator::SqrtIZ => self.local_complementation(partner)?,
            }
        }
        debug_assert_eq!(self.vops[a], LocalClifford::I);
        Ok(())
    }

    fn has_non_operand_neighbors(&self, v: usize, other: usize) -> bool {
        let ns = &self.adjacency[v];
        ns.len() > usize::from(ns.contains(&other))
    }

    // ---- two-qubit gates ---------------------------------------------------

    /// Controlled-phase gate ΛZ on `a`, `b`.
    pub fn cphase(&mut self, a: usize, b: usize) -> Result<()> {
        self.check(a)?;
        self.check(b)?;
        if a == b {
            return Err(Error::IdenticalOperands(a));
        }
        if self.has_non_operand_neighbors(a, b) {
            self.reduce_vop(a, b)?;
        }
        if self.has_non_operand_neighbors(b, a) {
            self.reduce_vop(b, a)?;
        }
        // Reducing b may have given a non-operand neighbors.
        if self.has_non_operand_neighbors(a, b) {
            self.reduce_vop(a, b)?;
        }
        let key = CzKey::new(self.has_edge(a, b), self.vops[a], self.vops[b]);
        let entry = self.cz.lookup(key);
        if entry.edge {
            self.add_edge(a, b);
        } else {
            self.remove_edge(a, b);
        }
        self.vops[a] = entry.vop_a;
        self.vops[b] = entry.vop_b;
        Ok(())
    }

    pub fn cnot(&mut self, control: usize, target: usize) -> Result<()> {
        self.check(control)?;
        self.check(target)?;
        if control == target {
            return Err(Error::IdenticalOperands(control));
        }
        self.hadamard(target)?;
        self.cphase(control, target)?;
        self.hadamard(target)
    }

    // ---- measurement -----------------------------------------------------

    /// Measures qubit `v` in the computational basis.
    ///
    /// `forced` replaces the random choice when the outcome is random; forcing
    /// a deterministic outcome to its complement is an error.
    pub fn measure(&mut self, v: usize, forced: Option<u8>) -> Result<MeasurementRecord> {
        self.check(v)?;
        let observable = self.vops[v].conjugate(Pauli::Z);
        let flip = u8::from(observable.negative);
        let axis = match observable.pauli {
            Pauli::X => Axis::X,
            Pauli::Y => Axis::Y,
            Pauli::Z => Axis::Z,
            Pauli::I => unreachable!("Clifford conjugation never maps Z to I"),
        };
        if axis == Axis::X && self.adjacency[v].is_empty() {
            let outcome = flip;
            if let Some(f) = forced {
                if f != outcome {
                    return Err(Error::ForcedOutcomeContradiction {
                        qubit: v,
                        forced: f,
                        actual: outcome,
                    });
                }
            }
            return Ok(MeasurementRecord {
                qubit: v,
                outcome,
                deterministic: true,
            });
        }
        let outcome = match forced {
            Some(f) => f & 1,
            None => u8::from(self.rng.next_bit()),
        };
        self.graph_measure(v, axis, outcome ^ flip)?;
        Ok(MeasurementRecord {
            qubit: v,
            outcome,
            deterministic: false,
        })
    }

    /// Projects the underlying graph state onto the `(-1)^result` eigenspace
    /// of `axis` on vertex `v` and rewrites graph and VOPs accordingly.
    pub fn graph_measure(&mut self, v: usize, axis: Axis, result: u8) -> Result<()> {
        self.check(v)?;
        let one = result & 1 == 1;
        match axis {
            Axis::Z => self.measure_z(v, one),
            Axis::Y => self.measure_y(v, one),
            Axis::X => return self.measure_x(v, one),
        }
        Ok(())
    }

    fn measure_z(&mut self, v: usize, one: bool) {
        let nbrs: Vec<usize> = self.adjacency[v].drain().collect();
        for &b in &nbrs {
            self.adjacency[b].remove(&v);
            if one {
                self.vops[b] = self.vops[b] * LocalClifford::Z;
            }
        }
        let tail = if one {
            LocalClifford::X * LocalClifford::H
        } else {
            LocalClifford::H
        };
        self.vops[v] = self.vops[v] * tail;
    }

    // Complements the closed neighborhood ngbh(v) ∪ {v}: local complementation
    // about v followed by removing v's edges.
    fn measure_y(&mut self, v: usize, one: bool) {
        let mut closed: Vec<usize> = self.adjacency[v].iter().copied().collect();
        closed.push(v);
        for (i, &b) in closed.iter().enumerate() {
            for &c in &closed[i + 1..] {
                self.toggle_edge(b, c);
            }
        }
        let factor = if one {
            LocalClifford::SQRT_IZ
        } else {
            LocalClifford::SQRT_MINUS_IZ
        };
        for &b in &closed {
            self.vops[b] = self.vops[b] * factor;
        }
    }

    fn measure_x(&mut self, v: usize, one: bool) -> Result<()> {
        let Some(b) = self.adjacency[v].iter().copied().min() else {
            if one {
                return Err(Error::ContractViolation(format!(
                    "X measurement of isolated vertex {v} can only yield 0"
                )));
            }
            return Ok(());
        };
        let na: FxHashSet<usize> = self.adjacency[v].clone();
        let nb: FxHashSet<usize> = self.adjacency[b].clone();

        self.vops[b] = self.vops[b]
            * if one {
                LocalClifford::SQRT_IY.adjoint()
            } else {
                LocalClifford::SQRT_IY
            };
        if one {
            self.vops[v] = self.vops[v] * LocalClifford::Z;
            for &c in nb.iter().filter(|&&c| c != v && !na.contains(&c)) {
                self.vops[c] = self.vops[c] * LocalClifford::Z;
            }
        } else {
            for &c in na.iter().filter(|&&c| c != b && !nb.contains(&c)) {
                self.vops[c] = self.vops[c] * LocalClifford::Z;
            }
        }

        // Each of the three edge sets is a set of unordered pairs without
        // self-pairs; their symmetric difference is toggled once.
        let pair = |c: usize, d: usize| if c < d { (c, d) } else { (d, c) };
        let mut toggles: FxHashSet<(usize, usize)> = FxHashSet::default();
        let flip = |p: (usize, usize), set: &mut FxHashSet<(usize, usize)>| {
            if !set.remove(&p) {
                set.insert(p);
            }
        };
        let mut cross: FxHashSet<(usize, usize)> = FxHashSet::default();
        for &c in &nb {
            for &d in &na {
                if c != d {
                    cross.insert(pair(c, d));
                }
            }
        }
        for p in cross {
            flip(p, &mut toggles);
        }
        let common: Vec<usize> = na.intersection(&nb).copied().collect();
        for (i, &c) in common.iter().enumerate() {
            for &d in &common[i + 1..] {
                flip(pair(c, d), &mut toggles);
            }
        }
        for &d in na.iter().filter(|&&d| d != b) {
            flip(pair(b, d), &mut toggles);
        }
        for (c, d) in toggles {
            self.toggle_edge(c, d);
        }
        Ok(())
    }

    // ---- text form -------------------------------------------------------

    /// One line per vertex: `id vop n1 n2 ...` with sorted neighbors.
    pub fn to_adjacency_text(&self) -> String {
        let mut out = String::new();
        for v in 0..self.num_qubits() {
            let _ = write!(out, "{v} {}", self.vops[v]);
            for b in self.sorted_neighbors(v) {
                let _ = write!(out, " {b}");
            }
            out.push('\n');
        }
        out
    }

    pub fn from_adjacency_text(text: &str, seed: u64) -> Result<Self> {
        let mut vops = Vec::new();
        let mut edges = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let bad = |message: &str| Error::Parse {
                line: i + 1,
                message: message.to_string(),
            };
            let fields: Vec<usize> = line
                .split_whitespace()
                .map(|f| f.parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| bad("expected non-negative integers"))?;
            if fields.len() < 2 || fields[0] != vops.len() {
                return Err(bad("expected `id vop neighbors...` with consecutive ids"));
            }
            vops.push(LocalClifford::from_index(fields[1]).ok_or_else(|| bad("vop out of range"))?);
            edges.extend(fields[2..].iter().map(|&b| (fields[0], b)));
        }
        let n = vops.len();
        for &(a, b) in &edges {
            if b >= n || a == b || !edges.contains(&(b, a)) {
                return Err(Error::Parse {
                    line: a + 1,
                    message: format!("edge {a}-{b} is not a valid symmetric edge"),
                });
            }
        }
        let edges: Vec<(usize, usize)> = edges.into_iter().filter(|(a, b)| a < b).collect();
        Self::from_graph(vops, &edges, seed)
    }

    /// Symmetric, irreflexive adjacency and in-range VOPs.
    pub fn check_invariants(&self) -> bool {
        self.adjacency.iter().enumerate().all(|(a, ns)| {
            !ns.contains(&a)
                && ns
                    .iter()
                    .all(|&b| b < self.num_qubits() && self.adjacency[b].contains(&a))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use LocalClifford as C;

    #[test]
    fn fresh_register() {
        let reg = GraphRegister::new(3, 1).unwrap();
        assert_eq!(reg.edge_count(), 0);
        assert!(reg.vops().iter().all(|&c| c == C::H));
        assert_eq!(GraphRegister::new(0, 1).unwrap_err(), Error::EmptyRegister);
    }

    #[test]
    fn hadamard_on_fresh_qubit_gives_identity_vop() {
        let mut reg = GraphRegister::new(1, 1).unwrap();
        reg.hadamard(0).unwrap();
        assert_eq!(reg.vop(0), C::I);
        assert!(reg.hadamard(1).is_err());
    }

    #[test]
    fn x_then_measure_is_one() {
        let mut reg = GraphRegister::new(1, 1).unwrap();
        reg.x(0).unwrap();
        let m = reg.measure(0, None).unwrap();
        assert_eq!((m.outcome, m.deterministic), (1, true));
    }

    #[test]
    fn fresh_measure_is_deterministic_zero() {
        let mut reg = GraphRegister::new(2, 1).unwrap();
        let m = reg.measure(0, None).unwrap();
        assert_eq!((m.outcome, m.deterministic), (0, true));
        assert!(matches!(
            reg.measure(0, Some(1)),
            Err(Error::ForcedOutcomeContradiction { .. })
        ));
    }

    #[test]
    fn forced_random_then_repeat() {
        let mut reg = GraphRegister::new(1, 1).unwrap();
        reg.hadamard(0).unwrap();
        let m = reg.measure(0, Some(1)).unwrap();
        assert_eq!((m.outcome, m.deterministic), (1, false));
        let m = reg.measure(0, None).unwrap();
        assert_eq!((m.outcome, m.deterministic), (1, true));
    }

    #[test]
    fn cphase_on_plus_states_toggles_edge() {
        let mut reg = GraphRegister::new(2, 1).unwrap();
        reg.hadamard(0).unwrap();
        reg.hadamard(1).unwrap();
        reg.cphase(0, 1).unwrap();
        assert!(reg.has_edge(0, 1));
        assert_eq!(reg.vops(), &[C::I, C::I]);
        reg.cphase(0, 1).unwrap();
        assert_eq!(reg.edge_count(), 0);
        assert_eq!(reg.cphase(1, 1).unwrap_err(), Error::IdenticalOperands(1));
    }

    #[test]
    fn complementation_on_single_edge_only_touches_vops() {
        let mut reg = GraphRegister::from_graph(vec![C::I, C::I], &[(0, 1)], 0).unwrap();
        reg.local_complementation(0).unwrap();
        assert_eq!(reg.edges(), vec![(0, 1)]);
        assert_eq!(reg.vop(0), C::SQRT_IX);
        assert_eq!(reg.vop(1), C::SQRT_MINUS_IZ);
    }

    #[test]
    fn complementation_toggles_neighborhood() {
        let mut reg = GraphRegister::from_graph(vec![C::I; 3], &[(0, 1), (0, 2)], 0).unwrap();
        reg.local_complementation(0).unwrap();
        assert_eq!(reg.edges(), vec![(0, 1), (0, 2), (1, 2)]);
        reg.local_complementation(0).unwrap();
        assert_eq!(reg.edges(), vec![(0, 1), (0, 2)]);
    }

    #[test]
    fn reduce_vop_of_isolated_vertex_fails() {
        let mut reg = GraphRegister::new(2, 0).unwrap();
        assert_eq!(reg.reduce_vop(0, 1).unwrap_err(), Error::IsolatedVertex(0));
    }

    #[test]
    fn reduce_identity_is_noop() {
        let mut reg = GraphRegister::from_graph(vec![C::I, C::H], &[(0, 1)], 0).unwrap();
        reg.reduce_vop(0, 1).unwrap();
        assert_eq!(reg.complementation_count(), 0);
        assert_eq!(reg.vops(), &[C::I, C::H]);
    }

    #[test]
    fn isolated_x_with_one_is_rejected() {
        let mut reg = GraphRegister::new(1, 0).unwrap();
        assert!(matches!(
            reg.graph_measure(0, Axis::X, 1),
            Err(Error::ContractViolation(_))
        ));
        reg.graph_measure(0, Axis::X, 0).unwrap();
    }

    #[test]
    fn adjacency_text_round_trip() {
        let reg = GraphRegister::from_graph(
            vec![C::H, C::I, C::HS, C::S],
            &[(0, 1), (0, 2), (1, 2), (2, 3)],
            0,
        )
        .unwrap();
        let text = reg.to_adjacency_text();
        assert_eq!(text, "0 1 1 2\n1 0 0 2\n2 5 0 1 3\n3 3 2\n");
        let back = GraphRegister::from_adjacency_text(&text, 0).unwrap();
        assert_eq!(back.edges(), reg.edges());
        assert_eq!(back.vops(), reg.vops());
        assert!(GraphRegister::from_adjacency_text("0 0 1\n1 0\n", 0).is_err());
    }
}
