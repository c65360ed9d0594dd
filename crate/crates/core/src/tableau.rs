//! Stabilizer tableau oracle: CHP-style simulation with destabilizers,
//! graph-to-tableau conversion and canonical forms.

use std::fmt;
use std::str::FromStr;

use crate::circuit::{Circuit, Gate};
use crate::engine::{run_on, Simulator};
use crate::error::{Error, Result};
use crate::pauli::Pauli;
use crate::register::{GraphRegister, MeasurementRecord};
use crate::rng::OutcomeRng;

fn words(n: usize) -> usize {
    n.div_ceil(64)
}

/// Hermitian Pauli string `±P_0 ⊗ … ⊗ P_{n-1}` in packed symplectic form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliString {
    n: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    pub negative: bool,
}

/// Exponent of `i` picked up per qubit when multiplying `(x1,z1)·(x2,z2)`.
fn phase_exponent(x1: bool, z1: bool, x2: bool, z2: bool) -> i32 {
    let (x2, z2) = (x2 as i32, z2 as i32);
    match (x1, z1) {
        (false, false) => 0,
        (true, true) => z2 - x2,
        (true, false) => z2 * (2 * x2 - 1),
        (false, true) => x2 * (1 - 2 * z2),
    }
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        PauliString {
            n,
            x: vec![0; words(n)],
            z: vec![0; words(n)],
            negative: false,
        }
    }

    pub fn single(n: usize, q: usize, p: Pauli) -> Self {
        let mut s = Self::identity(n);
        s.set(q, p);
        s
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn x_bit(&self, q: usize) -> bool {
        self.x[q / 64] >> (q % 64) & 1 == 1
    }

    pub fn z_bit(&self, q: usize) -> bool {
        self.z[q / 64] >> (q % 64) & 1 == 1
    }

    pub fn get(&self, q: usize) -> Pauli {
        Pauli::from_bits(self.x_bit(q), self.z_bit(q))
    }

    pub fn set(&mut self, q: usize, p: Pauli) {
        let (x, z) = p.bits();
        let mask = 1u64 << (q % 64);
        let w = q / 64;
        self.x[w] = (self.x[w] & !mask) | if x { mask } else { 0 };
        self.z[w] = (self.z[w] & !mask) | if z { mask } else { 0 };
    }

    fn flip_x(&mut self, q: usize) {
        self.x[q / 64] ^= 1u64 << (q % 64);
    }

    fn flip_z(&mut self, q: usize) {
        self.z[q / 64] ^= 1u64 << (q % 64);
    }

    pub fn is_identity(&self) -> bool {
        self.x.iter().chain(&self.z).all(|&w| w == 0)
    }

    pub fn commutes_with(&self, other: &PauliString) -> bool {
        let mut parity = 0u32;
        for w in 0..self.x.len() {
            parity ^= ((self.x[w] & other.z[w]) ^ (self.z[w] & other.x[w])).count_ones() & 1;
        }
        parity == 0
    }

    /// Exponent of `i` (mod 4) in `self · other`, signs included.
    fn product_phase(&self, other: &PauliString) -> i32 {
        let mut e = 2 * (self.negative as i32) + 2 * (other.negative as i32);
        for w in 0..self.x.len() {
            let mut active = self.x[w] | self.z[w] | other.x[w] | other.z[w];
            while active != 0 {
                let b = active.trailing_zeros();
                active &= active - 1;
                let bit = |v: u64| v >> b & 1 == 1;
                e += phase_exponent(
                    bit(self.x[w]),
                    bit(self.z[w]),
                    bit(other.x[w]),
                    bit(other.z[w]),
                );
            }
        }
        e.rem_euclid(4)
    }

    fn xor_bits(&mut self, other: &PauliString) {
        for w in 0..self.x.len() {
            self.x[w] ^= other.x[w];
            self.z[w] ^= other.z[w];
        }
    }

    /// `self ← other · self`; fails if the product is not Hermitian.
    pub fn left_multiply(&mut self, other: &PauliString) -> Result<()> {
        let e = other.product_phase(self);
        if e % 2 == 1 {
            return Err(Error::InvalidTableau(
                "product of anticommuting generators has imaginary phase".into(),
            ));
        }
        self.xor_bits(other);
        self.negative = e == 2;
        Ok(())
    }

    /// Like [`left_multiply`](Self::left_multiply) but drops imaginary phases;
    /// used on destabilizer rows whose signs carry no meaning.
    fn left_multiply_unsigned(&mut self, other: &PauliString) {
        let e = other.product_phase(self);
        self.xor_bits(other);
        self.negative = e == 2;
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", if self.negative { '-' } else { '+' })?;
        for q in 0..self.n {
            write!(f, "{}", self.get(q))?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (negative, letters) = match s.chars().next() {
            Some('-') => (true, &s[1..]),
            Some('+') => (false, &s[1..]),
            _ => (false, s),
        };
        let n = letters.chars().count();
        let mut out = PauliString::identity(n);
        out.negative = negative;
        for (q, ch) in letters.chars().enumerate() {
            let p = Pauli::from_letter(ch)
                .ok_or_else(|| Error::InvalidTableau(format!("bad Pauli letter {ch:?}")))?;
            out.set(q, p);
        }
        Ok(out)
    }
}

/// Stabilizer generators, one row per generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tableau {
    n: usize,
    rows: Vec<PauliString>,
}

impl Tableau {
    pub fn new(rows: Vec<PauliString>) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.num_qubits() != n) {
            return Err(Error::QubitCountMismatch(n, bad.num_qubits()));
        }
        Ok(Tableau { n, rows })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[PauliString] {
        &self.rows
    }

    pub fn rows_commute(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, a)| self.rows[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    /// Reduced row echelon form over GF(2) with pivots on X columns first,
    /// then Z columns. Equal stabilizer groups give identical results.
    pub fn canonicalize(&self) -> Result<Tableau> {
        if !self.rows_commute() {
            return Err(Error::InvalidTableau("generators do not commute".into()));
        }
        let mut rows = self.rows.clone();
        let mut next = 0;
        for block in 0..2 {
            for q in 0..self.n {
                let has = |r: &PauliString| if block == 0 { r.x_bit(q) } else { r.z_bit(q) };
                let Some(pivot) = (next..rows.len()).find(|&i| has(&rows[i])) else {
                    continue;
                };
                rows.swap(next, pivot);
                let pivot_row = rows[next].clone();
                for (i, row) in rows.iter_mut().enumerate() {
                    if i != next && has(row) {
                        row.left_multiply(&pivot_row)?;
                    }
                }
                next += 1;
            }
        }
        if next < self.n {
            return Err(Error::InvalidTableau(format!(
                "generators are dependent (rank {next} of {})",
                self.n
            )));
        }
        Ok(Tableau { n: self.n, rows })
    }

    /// True iff both tableaus generate the same stabilizer group.
    pub fn same_group(&self, other: &Tableau) -> Result<bool> {
        Ok(self.canonicalize()? == other.canonicalize()?)
    }
}

pub fn canonicalize(t: &Tableau) -> Result<Tableau> {
    t.canonicalize()
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}

impl FromStr for Tableau {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let rows = s
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<PauliString>>>()?;
        Tableau::new(rows)
    }
}

/// Stabilizers of `⊗ C_v |G⟩`: row `a` is `C (X_a ∏_{b~a} Z_b) C†`.
pub fn tableau_from_graphreg(reg: &GraphRegister) -> Tableau {
    let n = reg.num_qubits();
    let rows = (0..n)
        .map(|a| {
            let mut row = PauliString::identity(n);
            let image = reg.vop(a).adjoint().conjugate(Pauli::X);
            row.set(a, image.pauli);
            row.negative = image.negative;
            for &b in reg.neighbors(a) {
                let image = reg.vop(b).adjoint().conjugate(Pauli::Z);
                row.set(b, image.pauli);
                row.negative ^= image.negative;
            }
            row
        })
        .collect();
    Tableau { n, rows }
}

/// CHP-style simulator: rows `0..n` are destabilizers, `n..2n` stabilizers.
#[derive(Clone, Debug)]
pub struct TableauSimulator {
    n: usize,
    rows: Vec<PauliString>,
    rng: OutcomeRng,
}

impl TableauSimulator {
    pub fn new(n: usize, seed: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyRegister);
        }
        let destab = (0..n).map(|q| PauliString::single(n, q, Pauli::X));
        let stab = (0..n).map(|q| PauliString::single(n, q, Pauli::Z));
        Ok(TableauSimulator {
            n,
            rows: destab.chain(stab).collect(),
            rng: OutcomeRng::new(seed),
        })
    }

    pub fn stabilizers(&self) -> Tableau {
        Tableau {
            n: self.n,
            rows: self.rows[self.n..].to_vec(),
        }
    }

    fn check(&self, q: usize) -> Result<()> {
        if q < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: q,
                n: self.n,
            })
        }
    }

    fn check_pair(&self, a: usize, b: usize) -> Result<()> {
        self.check(a)?;
        self.check(b)?;
        if a == b {
            return Err(Error::IdenticalOperands(a));
        }
        Ok(())
    }

    fn hadamard(&mut self, q: usize) {
        for r in &mut self.rows {
            let (x, z) = (r.x_bit(q), r.z_bit(q));
            r.negative ^= x && z;
            if x != z {
                r.flip_x(q);
                r.flip_z(q);
            }
        }
    }

    fn phase(&mut self, q: usize) {
        for r in &mut self.rows {
            let (x, z) = (r.x_bit(q), r.z_bit(q));
            r.negative ^= x && z;
            if x {
                r.flip_z(q);
            }
        }
    }

    fn phase_dagger(&mut self, q: usize) {
        for r in &mut self.rows {
            let (x, z) = (r.x_bit(q), r.z_bit(q));
            r.negative ^= x && !z;
            if x {
                r.flip_z(q);
            }
        }
    }

    fn pauli(&mut self, q: usize, p: Pauli) {
        for r in &mut self.rows {
            let (x, z) = (r.x_bit(q), r.z_bit(q));
            r.negative ^= match p {
                Pauli::I => false,
                Pauli::X => z,
                Pauli::Z => x,
                Pauli::Y => x ^ z,
            };
        }
    }

    fn controlled_not(&mut self, c: usize, t: usize) {
        for r in &mut self.rows {
            let (xc, zc, xt, zt) = (r.x_bit(c), r.z_bit(c), r.x_bit(t), r.z_bit(t));
            r.negative ^= xc && zt && (xt == zc);
            if xc {
                r.flip_x(t);
            }
            if zt {
                r.flip_z(c);
            }
        }
    }

    fn controlled_z(&mut self, a: usize, b: usize) {
        for r in &mut self.rows {
            let (xa, za, xb, zb) = (r.x_bit(a), r.z_bit(a), r.x_bit(b), r.z_bit(b));
            r.negative ^= xa && xb && (za != zb);
            if xb {
                r.flip_z(a);
            }
            if xa {
                r.flip_z(b);
            }
        }
    }
}

impl Simulator for TableauSimulator {
    fn num_qubits(&self) -> usize {
        self.n
    }

    fn apply_gate(&mut self, gate: Gate, q: usize) -> Result<()> {
        self.check(q)?;
        match gate {
            Gate::H => self.hadamard(q),
            Gate::S => self.phase(q),
            Gate::Sdg => self.phase_dagger(q),
            Gate::X => self.pauli(q, Pauli::X),
            Gate::Y => self.pauli(q, Pauli::Y),
            Gate::Z => self.pauli(q, Pauli::Z),
        }
        Ok(())
    }

    fn cz(&mut self, a: usize, b: usize) -> Result<()> {
        self.check_pair(a, b)?;
        self.controlled_z(a, b);
        Ok(())
    }

    fn cnot(&mut self, control: usize, target: usize) -> Result<()> {
        self.check_pair(control, target)?;
        self.controlled_not(control, target);
        Ok(())
    }

    fn measure(&mut self, q: usize, forced: Option<u8>) -> Result<MeasurementRecord> {
        self.check(q)?;
        let n = self.n;
        if let Some(p) = (n..2 * n).find(|&i| self.rows[i].x_bit(q)) {
            let pivot = self.rows[p].clone();
            for i in 0..2 * n {
                if i != p && self.rows[i].x_bit(q) {
                    if i < n {
                        self.rows[i].left_multiply_unsigned(&pivot);
                    } else {
                        self.rows[i].left_multiply(&pivot)?;
                    }
                }
            }
            let outcome = forced.unwrap_or_else(|| u8::from(self.rng.next_bit()));
            self.rows[p - n] = pivot;
            let mut z = PauliString::single(n, q, Pauli::Z);
            z.negative = outcome == 1;
            self.rows[p] = z;
            return Ok(MeasurementRecord {
                qubit: q,
                outcome,
                deterministic: false,
            });
        }
        let mut acc = PauliString::identity(n);
        for i in 0..n {
            if self.rows[i].x_bit(q) {
                let stab = self.rows[i + n].clone();
                acc.left_multiply(&stab)?;
            }
        }
        let outcome = u8::from(acc.negative);
        if let Some(f) = forced.filter(|&f| f != outcome) {
            return Err(Error::ForcedOutcomeContradiction {
                qubit: q,
                forced: f,
                actual: outcome,
            });
        }
        Ok(MeasurementRecord {
            qubit: q,
            outcome,
            deterministic: true,
        })
    }
}

/// Runs `circuit` on the tableau engine; see [`crate::dense::dense_run`] for `forced`.
pub fn tableau_run(
    circuit: &Circuit,
    seed: u64,
    forced: Option<&[Option<u8>]>,
) -> Result<(Tableau, Vec<MeasurementRecord>)> {
    let mut sim = TableauSimulator::new(circuit.num_qubits(), seed)?;
    let records = run_on(&mut sim, circuit, forced)?;
    Ok((sim.stabilizers(), records))
}
