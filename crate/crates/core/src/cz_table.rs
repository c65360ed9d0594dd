//! Function table of ΛZ restricted to two-vertex states `|G; C_a, C_b⟩`.
//!
//! The table is generated on first use by brute force over 4-amplitude
//! vectors. For each key the candidate outputs are scanned in
//! lexicographic `(edge, vop_a, vop_b)` order and the first one that
//! represents the correct state is stored, with one restriction: an operand
//! whose VOP commutes with ΛZ must keep such a VOP.

use std::fmt::Write as _;
use std::sync::{Arc, OnceLock};

use num_complex::Complex64;

use crate::clifford::{LocalClifford, Mat2, GROUP_ORDER};

pub const TABLE_LEN: usize = 2 * GROUP_ORDER * GROUP_ORDER;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CzKey {
    pub edge: bool,
    pub vop_a: LocalClifford,
    pub vop_b: LocalClifford,
}

pub type CzEntry = CzKey;

impl CzKey {
    pub fn new(edge: bool, vop_a: LocalClifford, vop_b: LocalClifford) -> Self {
        CzKey { edge, vop_a, vop_b }
    }

    fn slot(&self) -> usize {
        (self.edge as usize) * GROUP_ORDER * GROUP_ORDER
            + self.vop_a.index() * GROUP_ORDER
            + self.vop_b.index()
    }

    fn from_slot(slot: usize) -> CzKey {
        let edge = slot >= GROUP_ORDER * GROUP_ORDER;
        let rest = slot % (GROUP_ORDER * GROUP_ORDER);
        CzKey {
            edge,
            vop_a: LocalClifford::from_index(rest / GROUP_ORDER).unwrap(),
            vop_b: LocalClifford::from_index(rest % GROUP_ORDER).unwrap(),
        }
    }

    /// Every key, in lexicographic order.
    pub fn all() -> impl Iterator<Item = CzKey> {
        (0..TABLE_LEN).map(CzKey::from_slot)
    }

    /// True when every operand of `key` whose VOP commutes with ΛZ still has
    /// such a VOP in this output.
    pub fn respects_constraint(&self, key: &CzKey) -> bool {
        (!key.vop_a.commutes_with_cz() || self.vop_a.commutes_with_cz())
            && (!key.vop_b.commutes_with_cz() || self.vop_b.commutes_with_cz())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cz table construction failed for {0:?}")]
pub struct CzTableError(pub CzKey);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CzTable {
    entries: Vec<CzEntry>,
}

impl CzTable {
    pub fn lookup(&self, key: CzKey) -> CzEntry {
        self.entries[key.slot()]
    }

    /// Replaces one entry. Only meant for fault-injection tests.
    pub fn override_entry(&mut self, key: CzKey, entry: CzEntry) {
        self.entries[key.slot()] = entry;
    }

    pub fn iter(&self) -> impl Iterator<Item = (CzKey, CzEntry)> + '_ {
        self.entries
            .iter()
            .enumerate()
            .map(|(slot, e)| (CzKey::from_slot(slot), *e))
    }

    /// One line per key: `edge a b -> edge' a' b'`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (k, e) in self.iter() {
            let _ = writeln!(
                out,
                "{} {} {} -> {} {} {}",
                k.edge as u8, k.vop_a, k.vop_b, e.edge as u8, e.vop_a, e.vop_b
            );
        }
        out
    }
}

static TABLE: OnceLock<Arc<CzTable>> = OnceLock::new();

pub fn cz_table() -> Arc<CzTable> {
    TABLE
        .get_or_init(|| Arc::new(build_cz_table().unwrap_or_else(|e| panic!("{e}"))))
        .clone()
}

type Vec4 = [Complex64; 4];

fn apply_local_pair(a: &Mat2, b: &Mat2, v: &Vec4) -> Vec4 {
    // index = 2 * bit_a + bit_b
    let mut out = [Complex64::new(0.0, 0.0); 4];
    for (i, o) in out.iter_mut().enumerate() {
        let (ia, ib) = (i >> 1, i & 1);
        for (j, amp) in v.iter().enumerate() {
            let (ja, jb) = (j >> 1, j & 1);
            *o += a[ia][ja] * b[ib][jb] * amp;
        }
    }
    out
}

fn with_cz(mut v: Vec4) -> Vec4 {
    v[3] = -v[3];
    v
}

fn representation_state(key: &CzKey) -> Vec4 {
    let plus = [Complex64::new(0.5, 0.0); 4];
    let graph = if key.edge { with_cz(plus) } else { plus };
    apply_local_pair(&key.vop_a.matrix(), &key.vop_b.matrix(), &graph)
}

fn same_ray(u: &Vec4, v: &Vec4) -> bool {
    let overlap: Complex64 = u.iter().zip(v).map(|(x, y)| x.conj() * y).sum();
    overlap.norm() > 1.0 - 1e-10
}

pub fn build_cz_table() -> Result<CzTable, CzTableError> {
    let states: Vec<Vec4> = CzKey::all().map(|k| representation_state(&k)).collect();
    let mut entries = Vec::with_capacity(TABLE_LEN);
    for key in CzKey::all() {
        let target = with_cz(states[key.slot()]);
        let entry = CzKey::all()
            .find(|cand| cand.respects_constraint(&key) && same_ray(&states[cand.slot()], &target))
            .ok_or(CzTableError(key))?;
        entries.push(entry);
    }
    Ok(CzTable { entries })
}
