//! The 24-element local Clifford group.
//!
//! Elements are identified up to global phase and stored as a small index.
//! All group tables are built once, by brute force over explicit 2×2 complex
//! matrices, and shared read-only afterwards.
//!
//! Numbering: breadth-first discovery from the identity, left-multiplying by
//! the generators in the order (H, S). The identity lands on index 0; Y is
//! then moved to index 2 and the remaining elements keep their relative
//! discovery order.

use std::collections::VecDeque;
use std::fmt;
use std::fmt::Write as _;
use std::ops::Mul;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::pauli::{Pauli, SignedPauli};

pub type Mat2 = [[Complex64; 2]; 2];

pub const GROUP_ORDER: usize = 24;
pub const MAX_WORD_LEN: usize = 5;
const TOL: f64 = 1e-12;

/// A single-qubit Clifford operator modulo global phase.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LocalClifford(u8);

impl LocalClifford {
    pub const I: LocalClifford = LocalClifford(0);
    pub const H: LocalClifford = LocalClifford(1);
    pub const Y: LocalClifford = LocalClifford(2);
    pub const S: LocalClifford = LocalClifford(3);
    pub const HS: LocalClifford = LocalClifford(5);
    pub const Z: LocalClifford = LocalClifford(6);
    pub const SQRT_MINUS_IX: LocalClifford = LocalClifford(7);
    pub const SQRT_IY: LocalClifford = LocalClifford(8);
    pub const SQRT_IX: LocalClifford = LocalClifford(9);
    pub const SQRT_MINUS_IY: LocalClifford = LocalClifford(10);
    pub const S_DAG: LocalClifford = LocalClifford(11);
    pub const X: LocalClifford = LocalClifford(13);
    /// √(iZ) = e^{iπ/4} S†.
    pub const SQRT_IZ: LocalClifford = LocalClifford::S_DAG;
    /// √(−iZ) ∝ S.
    pub const SQRT_MINUS_IZ: LocalClifford = LocalClifford::S;

    pub fn from_index(index: usize) -> Option<LocalClifford> {
        (index < GROUP_ORDER).then_some(LocalClifford(index as u8))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn all() -> impl Iterator<Item = LocalClifford> {
        (0..GROUP_ORDER as u8).map(LocalClifford)
    }

    pub fn matrix(self) -> Mat2 {
        tables().matrices[self.index()]
    }

    pub fn adjoint(self) -> LocalClifford {
        tables().adjoint[self.index()]
    }

    /// Returns `self† · p · self`.
    pub fn conjugate(self, p: Pauli) -> SignedPauli {
        tables().conjugation[self.index()][p.index()]
    }

    pub fn decomposition(self) -> &'static GeneratorWord {
        &tables().decomposition[self.index()]
    }

    /// True for the Z-set {I, Z, S, S†}: the operators that commute with ΛZ.
    pub fn commutes_with_cz(self) -> bool {
        tables().cz_commuting[self.index()]
    }

    pub fn name(self) -> Option<&'static str> {
        Some(match self {
            LocalClifford::I => "I",
            LocalClifford::X => "X",
            LocalClifford::Y => "Y",
            LocalClifford::Z => "Z",
            LocalClifford::H => "H",
            LocalClifford::S => "S",
            LocalClifford::S_DAG => "Sdg",
            LocalClifford::HS => "HS",
            LocalClifford::SQRT_IX => "sqrt(iX)",
            LocalClifford::SQRT_MINUS_IX => "sqrt(-iX)",
            LocalClifford::SQRT_IY => "sqrt(iY)",
            LocalClifford::SQRT_MINUS_IY => "sqrt(-iY)",
            _ => return None,
        })
    }
}

impl Mul for LocalClifford {
    type Output = LocalClifford;

    /// Operator product `self · rhs`.
    fn mul(self, rhs: LocalClifford) -> LocalClifford {
        tables().multiplication[self.index()][rhs.index()]
    }
}

impl fmt::Debug for LocalClifford {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.name() {
            Some(name) => write!(f, "C{}({name})", self.0),
            None => write!(f, "C{}", self.0),
        }
    }
}

impl fmt::Display for LocalClifford {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn multiply(a: LocalClifford, b: LocalClifford) -> LocalClifford {
    a * b
}

pub fn adjoint(a: LocalClifford) -> LocalClifford {
    a.adjoint()
}

pub fn conjugate_pauli(c: LocalClifford, p: Pauli) -> SignedPauli {
    c.conjugate(p)
}

pub fn decompose(c: LocalClifford) -> &'static GeneratorWord {
    c.decomposition()
}

/// Generators used to spell out vertex operators for VOP reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    /// √(−iX), consumed by a local complementation about the vertex itself.
    SqrtMinusIX,
    /// √(iZ), consumed by a local complementation about a neighbor.
    SqrtIZ,
}

impl Generator {
    pub fn element(self) -> LocalClifford {
        match self {
            Generator::SqrtMinusIX => LocalClifford::SQRT_MINUS_IX,
            Generator::SqrtIZ => LocalClifford::SQRT_IZ,
        }
    }
}

/// Ordered product of generators; `factors[0]` is the left-most factor.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GeneratorWord {
    pub factors: Vec<Generator>,
}

impl GeneratorWord {
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = Generator> + '_ {
        self.factors.iter().copied()
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<&str> = self
            .iter()
            .map(|g| match g {
                Generator::SqrtMinusIX => "sqrt(-iX)",
                Generator::SqrtIZ => "sqrt(iZ)",
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

pub struct CliffordTables {
    matrices: [Mat2; GROUP_ORDER],
    multiplication: [[LocalClifford; GROUP_ORDER]; GROUP_ORDER],
    adjoint: [LocalClifford; GROUP_ORDER],
    conjugation: [[SignedPauli; 4]; GROUP_ORDER],
    decomposition: Vec<GeneratorWord>,
    cz_commuting: [bool; GROUP_ORDER],
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("clifford table construction failed: {0}")]
pub struct TableError(pub String);

static TABLES: OnceLock<CliffordTables> = OnceLock::new();

/// Process-wide tables, built on first use.
pub fn tables() -> &'static CliffordTables {
    TABLES.get_or_init(|| build_clifford_tables().unwrap_or_else(|e| panic!("{e}")))
}

// ---- 2×2 matrix helpers -------------------------------------------------

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[c(0.0, 0.0); 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn mat_adjoint(a: &Mat2) -> Mat2 {
    [
        [a[0][0].conj(), a[1][0].conj()],
        [a[0][1].conj(), a[1][1].conj()],
    ]
}

fn mat_approx_eq(a: &Mat2, b: &Mat2) -> bool {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .all(|(x, y)| (x - y).norm() < TOL)
}

/// Equality up to a global phase, normalized on the first nonzero entry of `a`.
pub fn mat_eq_up_to_phase(a: &Mat2, b: &Mat2) -> bool {
    let Some(k) = a.iter().flatten().position(|x| x.norm() > 1e-9) else {
        return b.iter().flatten().all(|x| x.norm() < TOL);
    };
    let (ak, bk) = (a[k / 2][k % 2], b[k / 2][k % 2]);
    let phase = bk / ak;
    if (phase.norm() - 1.0).abs() > 1e-9 {
        return false;
    }
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .all(|(x, y)| (x * phase - y).norm() < TOL)
}

fn hadamard_matrix() -> Mat2 {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    [[c(r, 0.0), c(r, 0.0)], [c(r, 0.0), c(-r, 0.0)]]
}

fn phase_matrix() -> Mat2 {
    [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(0.0, 1.0)]]
}

/// Principal square root of `±i·P`, i.e. exp(±iπ/4 · P) = (I ± iP)/√2.
pub fn sqrt_of_i_pauli(p: Pauli, negative: bool) -> Mat2 {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let s = if negative { -1.0 } else { 1.0 };
    let pm = p.matrix();
    let id = Pauli::I.matrix();
    let mut out = [[c(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = (id[i][j] + c(0.0, s) * pm[i][j]) * r;
        }
    }
    out
}

/// Reference matrices for the named constants, independent of the BFS order.
pub fn named_matrices() -> Vec<(LocalClifford, Mat2)> {
    let h = hadamard_matrix();
    let s = phase_matrix();
    vec![
        (LocalClifford::I, Pauli::I.matrix()),
        (LocalClifford::X, Pauli::X.matrix()),
        (LocalClifford::Y, Pauli::Y.matrix()),
        (LocalClifford::Z, Pauli::Z.matrix()),
        (LocalClifford::H, h),
        (LocalClifford::S, s),
        (LocalClifford::S_DAG, mat_adjoint(&s)),
        (LocalClifford::HS, mat_mul(&h, &s)),
        (LocalClifford::SQRT_IX, sqrt_of_i_pauli(Pauli::X, false)),
        (
            LocalClifford::SQRT_MINUS_IX,
            sqrt_of_i_pauli(Pauli::X, true),
        ),
        (LocalClifford::SQRT_IY, sqrt_of_i_pauli(Pauli::Y, false)),
        (
            LocalClifford::SQRT_MINUS_IY,
            sqrt_of_i_pauli(Pauli::Y, true),
        ),
        (LocalClifford::SQRT_IZ, sqrt_of_i_pauli(Pauli::Z, false)),
        (
            LocalClifford::SQRT_MINUS_IZ,
            sqrt_of_i_pauli(Pauli::Z, true),
        ),
    ]
}

fn kron(a: &Mat2, b: &Mat2) -> [[Complex64; 4]; 4] {
    let mut out = [[c(0.0, 0.0); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = a[i >> 1][j >> 1] * b[i & 1][j & 1];
        }
    }
    out
}

type Mat4 = [[Complex64; 4]; 4];

fn mat4_mul(a: &Mat4, b: &Mat4) -> Mat4 {
    let mut out = [[c(0.0, 0.0); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = (0..4).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

fn mat4_eq_up_to_phase(a: &Mat4, b: &Mat4) -> bool {
    let Some(k) = a.iter().flatten().position(|x| x.norm() > 1e-9) else {
        return false;
    };
    let phase = b[k / 4][k % 4] / a[k / 4][k % 4];
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .all(|(x, y)| (x * phase - y).norm() < TOL)
}

fn commutes_with_cz(m: &Mat2) -> bool {
    let one = c(1.0, 0.0);
    let zero = c(0.0, 0.0);
    let mut cz = [[zero; 4]; 4];
    for (i, row) in cz.iter_mut().enumerate() {
        row[i] = if i == 3 { -one } else { one };
    }
    let cm = kron(m, &Pauli::I.matrix());
    let cm_dag = kron(&mat_adjoint(m), &Pauli::I.matrix());
    let conj = mat4_mul(&mat4_mul(&cm, &cz), &cm_dag);
    mat4_eq_up_to_phase(&conj, &cz)
}

fn find(elements: &[Mat2], m: &Mat2) -> Option<usize> {
    elements.iter().position(|e| mat_eq_up_to_phase(e, m))
}

/// Builds every group table from explicit matrices.
pub fn build_clifford_tables() -> Result<CliffordTables, TableError> {
    let err = |msg: String| TableError(msg);
    let generators = [hadamard_matrix(), phase_matrix()];

    let mut elements: Vec<Mat2> = vec![Pauli::I.matrix()];
    let mut queue = VecDeque::from([Pauli::I.matrix()]);
    while let Some(e) = queue.pop_front() {
        for g in &generators {
            let candidate = mat_mul(g, &e);
            if find(&elements, &candidate).is_none() {
                elements.push(candidate);
                queue.push_back(candidate);
            }
        }
    }
    if elements.len() != GROUP_ORDER {
        return Err(err(format!(
            "found {} elements, expected 24",
            elements.len()
        )));
    }
    let y = find(&elements, &Pauli::Y.matrix()).ok_or_else(|| err("Y not generated".into()))?;
    let y_matrix = elements.remove(y);
    elements.insert(2, y_matrix);

    let matrices: [Mat2; GROUP_ORDER] = elements
        .clone()
        .try_into()
        .map_err(|_| err("element count".into()))?;

    for (named, m) in named_matrices() {
        if !mat_eq_up_to_phase(&matrices[named.index()], &m) {
            return Err(err(format!(
                "named constant {named:?} does not match its matrix"
            )));
        }
    }

    let lookup = |m: &Mat2| -> Result<LocalClifford, TableError> {
        find(&elements, m)
            .map(|i| LocalClifford(i as u8))
            .ok_or_else(|| err("product left the group".into()))
    };

    let mut multiplication = [[LocalClifford::I; GROUP_ORDER]; GROUP_ORDER];
    for a in 0..GROUP_ORDER {
        for b in 0..GROUP_ORDER {
            multiplication[a][b] = lookup(&mat_mul(&matrices[a], &matrices[b]))?;
        }
    }

    let mut adjoint = [LocalClifford::I; GROUP_ORDER];
    for a in 0..GROUP_ORDER {
        adjoint[a] = lookup(&mat_adjoint(&matrices[a]))?;
    }

    let mut conjugation = [[SignedPauli::plus(Pauli::I); 4]; GROUP_ORDER];
    for a in 0..GROUP_ORDER {
        let m = &matrices[a];
        let m_dag = mat_adjoint(m);
        for p in Pauli::ALL {
            let image = mat_mul(&mat_mul(&m_dag, &p.matrix()), m);
            let signed = Pauli::ALL
                .into_iter()
                .flat_map(|q| [SignedPauli::plus(q), SignedPauli::minus(q)])
                .find(|sp| {
                    let mut qm = sp.pauli.matrix();
                    if sp.negative {
                        qm.iter_mut().flatten().for_each(|x| *x = -*x);
                    }
                    mat_approx_eq(&image, &qm)
                })
                .ok_or_else(|| err(format!("C{a} does not map {p} to a signed Pauli")))?;
            conjugation[a][p.index()] = signed;
        }
    }

    // Words in length-then-lexicographic order; the first hit per element is
    // the canonical decomposition.
    let mut decomposition: Vec<Option<GeneratorWord>> = vec![None; GROUP_ORDER];
    let gens = [Generator::SqrtMinusIX, Generator::SqrtIZ];
    let gen_matrices = [
        sqrt_of_i_pauli(Pauli::X, true),
        sqrt_of_i_pauli(Pauli::Z, false),
    ];
    for len in 0..=MAX_WORD_LEN {
        for code in 0..(1usize << len) {
            let factors: Vec<Generator> = (0..len)
                .map(|pos| gens[(code >> (len - 1 - pos)) & 1])
                .collect();
            let mut product = Pauli::I.matrix();
            for f in &factors {
                product = mat_mul(&product, &gen_matrices[*f as usize]);
            }
            let idx = lookup(&product)?.index();
            if decomposition[idx].is_none() {
                decomposition[idx] = Some(GeneratorWord { factors });
            }
        }
    }
    let decomposition = decomposition
        .into_iter()
        .enumerate()
        .map(|(i, w)| w.ok_or_else(|| err(format!("C{i} has no word of length <= 5"))))
        .collect::<Result<Vec<_>, _>>()?;

    let mut cz_commuting = [false; GROUP_ORDER];
    for a in 0..GROUP_ORDER {
        cz_commuting[a] = commutes_with_cz(&matrices[a]);
    }

    Ok(CliffordTables {
        matrices,
        multiplication,
        adjoint,
        conjugation,
        decomposition,
        cz_commuting,
    })
}

impl CliffordTables {
    /// Plain-text dump of every table, one entry per line.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for a in LocalClifford::all() {
            for b in LocalClifford::all() {
                let _ = writeln!(
                    out,
                    "mul {a} {b} {}",
                    self.multiplication[a.index()][b.index()]
                );
            }
        }
        for a in LocalClifford::all() {
            let _ = writeln!(out, "adj {a} {}", self.adjoint[a.index()]);
        }
        for a in LocalClifford::all() {
            for p in [Pauli::X, Pauli::Y, Pauli::Z] {
                let _ = writeln!(
                    out,
                    "conj {a} {p} {}",
                    self.conjugation[a.index()][p.index()]
                );
            }
        }
        for a in LocalClifford::all() {
            let _ = writeln!(out, "decomp {a} {}", self.decomposition[a.index()]);
        }
        for a in LocalClifford::all() {
            let _ = writeln!(out, "zset {a} {}", self.cz_commuting[a.index()]);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word_product(w: &GeneratorWord) -> Mat2 {
        w.iter().fold(Pauli::I.matrix(), |acc, g| {
            let m = match g {
                Generator::SqrtMinusIX => sqrt_of_i_pauli(Pauli::X, true),
                Generator::SqrtIZ => sqrt_of_i_pauli(Pauli::Z, false),
            };
            mat_mul(&acc, &m)
        })
    }

    #[test]
    fn builds_24_elements() {
        let t = build_clifford_tables().unwrap();
        for a in 0..GROUP_ORDER {
            for b in 0..a {
                assert!(!mat_eq_up_to_phase(&t.matrices[a], &t.matrices[b]));
            }
        }
    }

    #[test]
    fn small_products() {
        use LocalClifford as C;
        assert_eq!(C::I * C::H, C::H);
        assert_eq!(C::H * C::H, C::I);
        assert_eq!(C::S * C::S, C::Z);
        for c in C::all() {
            assert_eq!(C::I * c, c);
            assert_eq!(c * C::I, c);
        }
    }

    #[test]
    fn adjoints() {
        use LocalClifford as C;
        assert_eq!(C::H.adjoint(), C::H);
        assert_eq!(C::S.adjoint(), C::S_DAG);
        assert_eq!(C::SQRT_IZ.adjoint(), C::SQRT_MINUS_IZ);
        let prod = mat_mul(&C::SQRT_IZ.matrix(), &sqrt_of_i_pauli(Pauli::Z, true));
        assert!(mat_eq_up_to_phase(&prod, &Pauli::I.matrix()));
        for c in C::all() {
            assert_eq!(c * c.adjoint(), C::I);
            assert_eq!(c.adjoint() * c, C::I);
        }
    }

    #[test]
    fn conjugations() {
        use LocalClifford as C;
        assert_eq!(C::H.conjugate(Pauli::Z), SignedPauli::plus(Pauli::X));
        assert_eq!(C::X.conjugate(Pauli::Z), SignedPauli::minus(Pauli::Z));
        // S† X S = [[0, i], [-i, 0]] = -Y
        assert_eq!(C::S.conjugate(Pauli::X), SignedPauli::minus(Pauli::Y));
        for c in C::all() {
            assert_eq!(c.conjugate(Pauli::I), SignedPauli::plus(Pauli::I));
        }
    }

    #[test]
    fn decompositions() {
        use LocalClifford as C;
        assert!(C::I.decomposition().is_empty());
        let h = C::H.decomposition();
        assert_eq!(h.len(), 5);
        assert!(mat_eq_up_to_phase(&word_product(h), &C::H.matrix()));
        let s = C::S.decomposition();
        assert!(s.iter().all(|g| g == Generator::SqrtIZ));
        assert_eq!(s.len(), 3);
        for c in C::all() {
            let w = c.decomposition();
            assert!(w.len() <= MAX_WORD_LEN);
            assert!(mat_eq_up_to_phase(&word_product(w), &c.matrix()));
        }
        // The other length-5 word for H also multiplies out to H.
        let alt = GeneratorWord {
            factors: vec![
                Generator::SqrtMinusIX,
                Generator::SqrtIZ,
                Generator::SqrtIZ,
                Generator::SqrtIZ,
                Generator::SqrtMinusIX,
            ],
        };
        assert!(mat_eq_up_to_phase(&word_product(&alt), &C::H.matrix()));
    }

    #[test]
    fn z_set() {
        use LocalClifford as C;
        let zset: Vec<_> = C::all().filter(|c| c.commutes_with_cz()).collect();
        let mut expected = vec![C::I, C::Z, C::S, C::S_DAG];
        expected.sort();
        assert_eq!(zset, expected);
    }

    #[test]
    fn dump_has_one_line_per_entry() {
        let lines = tables().dump().lines().count();
        assert_eq!(lines, 24 * 24 + 24 + 24 * 3 + 24 + 24);
    }
}
