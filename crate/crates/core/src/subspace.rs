//! Subspaces of F^j for j <= 3 and the composition tables used by the
//! linear-time distance recursion.
//!
//! A vector `(x_0, .., x_{j-1})` is keyed by `x_0 + 2 x_1 + 4 x_2`, and a
//! subspace is stored as an 8-bit membership mask over those keys. The 16
//! subspaces of F^3 are indexed in ascending order of their masks.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{invalid, Result};

pub const MAX_DIM: usize = 3;
/// Number of subspaces of F^3.
pub const S3_COUNT: usize = 16;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    dim: u8,
    mask: u8,
}

fn is_closed(dim: usize, mask: u8) -> bool {
    let size = 1usize << dim;
    if mask & 1 == 0 {
        return false;
    }
    for a in 0..size {
        if mask >> a & 1 == 0 {
            continue;
        }
        for b in 0..size {
            if mask >> b & 1 == 1 && mask >> (a ^ b) & 1 == 0 {
                return false;
            }
        }
    }
    true
}

impl Subspace {
    /// Validates closure; `mask` bit `v` marks membership of vector key `v`.
    pub fn from_mask(dim: usize, mask: u8) -> Result<Self> {
        if dim == 0 || dim > MAX_DIM {
            return Err(invalid(format!("ambient dimension {dim} not in 1..=3")));
        }
        let full = if dim == 3 { 0xff } else { (1u8 << (1 << dim)) - 1 };
        if mask & !full != 0 || !is_closed(dim, mask) {
            return Err(invalid(format!("mask {mask:#04x} is not a subspace of F^{dim}")));
        }
        Ok(Self { dim: dim as u8, mask })
    }

    pub(crate) const fn from_mask_unchecked(dim: usize, mask: u8) -> Self {
        Self { dim: dim as u8, mask }
    }

    /// The span of the given vector keys.
    pub fn span(dim: usize, generators: &[u8]) -> Result<Self> {
        if dim == 0 || dim > MAX_DIM {
            return Err(invalid(format!("ambient dimension {dim} not in 1..=3")));
        }
        let mut mask = 1u8;
        for &g in generators {
            if usize::from(g) >= 1 << dim {
                return Err(invalid(format!("vector key {g} outside F^{dim}")));
            }
            let mut add = 0u8;
            for v in 0..(1u8 << dim) {
                if mask >> v & 1 == 1 {
                    add |= 1 << (v ^ g);
                }
            }
            mask |= add;
        }
        Ok(Self { dim: dim as u8, mask })
    }

    pub fn zero(dim: usize) -> Self {
        Self::span(dim, &[]).expect("valid dimension")
    }

    pub fn full(dim: usize) -> Self {
        let gens: Vec<u8> = (0..dim).map(|i| 1u8 << i).collect();
        Self::span(dim, &gens).expect("valid dimension")
    }

    pub fn dim_ambient(&self) -> usize {
        usize::from(self.dim)
    }

    pub fn mask(&self) -> u8 {
        self.mask
    }

    pub fn contains(&self, key: u8) -> bool {
        usize::from(key) < 1 << self.dim && self.mask >> key & 1 == 1
    }

    pub fn size(&self) -> usize {
        self.mask.count_ones() as usize
    }

    /// Dimension of the subspace itself.
    pub fn rank(&self) -> usize {
        self.size().trailing_zeros() as usize
    }

    pub fn is_subset_of(&self, other: &Subspace) -> bool {
        self.dim == other.dim && self.mask & !other.mask == 0
    }

    pub fn members(&self) -> impl Iterator<Item = u8> + '_ {
        (0..(1u8 << self.dim)).filter(move |&v| self.contains(v))
    }

    /// Reduced echelon basis: for each leading coordinate (x_0 first) the
    /// lexicographically smallest member with that leading coordinate.
    pub fn basis(&self) -> Vec<u8> {
        let dim = self.dim_ambient();
        (0..dim)
            .filter_map(|pos| {
                self.members()
                    .filter(|&v| v != 0 && v.trailing_zeros() as usize == pos)
                    .min_by_key(|&v| reverse_key(v, dim))
            })
            .collect()
    }

    /// `{(p, q) : p in self, q in F^extra}`.
    pub fn lift(&self, extra: usize) -> Result<Subspace> {
        let dim = self.dim_ambient() + extra;
        let mut gens: Vec<u8> = self.basis();
        gens.extend((self.dim_ambient()..dim).map(|i| 1u8 << i));
        Subspace::span(dim, &gens)
    }

    /// `{(0^shift, p) : p in self}`.
    pub fn prepend_zeros(&self, shift: usize) -> Result<Subspace> {
        let gens: Vec<u8> = self.basis().into_iter().map(|g| g << shift).collect();
        Subspace::span(self.dim_ambient() + shift, &gens)
    }

    /// `{p in F^(dim-drop) : (p, 0^drop) in self}`.
    pub fn restrict_prefix(&self, keep: usize) -> Result<Subspace> {
        if keep == 0 || keep > self.dim_ambient() {
            return Err(invalid(format!("cannot keep {keep} of {} coordinates", self.dim)));
        }
        let limit = 1u8 << keep;
        let mask = self.members().filter(|&v| v < limit).fold(0u8, |m, v| m | 1 << v);
        Subspace::from_mask(keep, mask)
    }

    /// Index of a subspace of F^3 in the canonical order.
    pub fn index(&self) -> Option<usize> {
        (self.dim == 3).then(|| usize::from(s3_index_of()[usize::from(self.mask)]))
    }

    /// Parses `<>`, `<010,001>` or `010,001` (vectors written x_0 x_1 ...).
    pub fn parse(dim: usize, text: &str) -> Result<Subspace> {
        let body = text.trim().trim_start_matches('<').trim_end_matches('>').trim();
        let mut gens = Vec::new();
        if !body.is_empty() {
            for part in body.split(',') {
                let part = part.trim();
                if part.len() != dim || !part.bytes().all(|b| b == b'0' || b == b'1') {
                    return Err(invalid(format!("bad vector '{part}' for F^{dim}")));
                }
                gens.push(part.bytes().enumerate().fold(0u8, |k, (i, b)| k | (b - b'0') << i));
            }
        }
        Subspace::span(dim, &gens)
    }
}

fn reverse_key(v: u8, dim: usize) -> u8 {
    (0..dim).fold(0u8, |acc, i| acc << 1 | (v >> i & 1))
}

pub fn format_vector(key: u8, dim: usize) -> String {
    (0..dim).map(|i| if key >> i & 1 == 1 { '1' } else { '0' }).collect()
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.basis().into_iter().map(|v| format_vector(v, self.dim_ambient())).collect();
        write!(f, "<{}>", parts.join(","))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All subspaces of F^dim in ascending mask order.
pub fn enumerate_subspaces(dim: usize) -> Result<Vec<Subspace>> {
    if dim == 0 || dim > MAX_DIM {
        return Err(invalid(format!("ambient dimension {dim} not in 1..=3")));
    }
    let top: u16 = 1 << (1 << dim);
    Ok((0..top)
        .map(|m| m as u8)
        .filter(|&m| is_closed(dim, m))
        .map(|m| Subspace::from_mask_unchecked(dim, m))
        .collect())
}

fn s3_table() -> &'static [Subspace; S3_COUNT] {
    static TABLE: OnceLock<[Subspace; S3_COUNT]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let all = enumerate_subspaces(3).expect("F^3");
        all.try_into().expect("F^3 has 16 subspaces")
    })
}

fn s3_index_of() -> &'static [u8; 256] {
    static INDEX: OnceLock<[u8; 256]> = OnceLock::new();
    INDEX.get_or_init(|| {
        let mut idx = [u8::MAX; 256];
        for (i, s) in s3_table().iter().enumerate() {
            idx[usize::from(s.mask)] = i as u8;
        }
        idx
    })
}

/// The `i`-th subspace of F^3.
pub fn s3(index: usize) -> Subspace {
    s3_table()[index]
}

pub fn s3_index(mask: u8) -> Option<usize> {
    let i = s3_index_of()[usize::from(mask)];
    (i != u8::MAX).then_some(usize::from(i))
}

/// Lifts a subspace of F^1 to F^3 by appending two free coordinates.
pub fn right_edge_lift(s: &Subspace) -> Result<Subspace> {
    if s.dim_ambient() != 1 {
        return Err(invalid("right_edge_lift expects a subspace of F^1"));
    }
    s.lift(2)
}

/// `{(0, p_0, p_1) : (p_0, p_1, 0) in s}`: the space seen one phase to the
/// left of phase 0, where the extra leading input symbol is always erased.
pub fn left_edge_shift(s: &Subspace) -> Result<Subspace> {
    if s.dim_ambient() != 3 {
        return Err(invalid("left_edge_shift expects a subspace of F^3"));
    }
    s.restrict_prefix(2)?.prepend_zeros(1)
}

/// Composition tables: `tau[parity][i][j]` is the index of the space of
/// recoverable combinations at a phase of the given parity (0 even, 1 odd)
/// when the two half-length codes have recoverable spaces `T_i` and `T_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauTables {
    pub tau_even: [[u8; S3_COUNT]; S3_COUNT],
    pub tau_odd: [[u8; S3_COUNT]; S3_COUNT],
}

impl TauTables {
    pub fn get(&self, parity: usize, i: usize, j: usize) -> usize {
        usize::from(if parity == 0 { self.tau_even[i][j] } else { self.tau_odd[i][j] })
    }
}

/// `r = p X + q Z` with `X = (11000; 01110; 00011)` and `Z = (11000; 00110; 00001)`,
/// returned as a 5-bit key.
pub(crate) fn combine(p: u8, q: u8) -> u8 {
    let b = |v: u8, i: u8| v >> i & 1;
    let r0 = b(p, 0) ^ b(q, 0);
    let r1 = b(p, 0) ^ b(p, 1) ^ b(q, 0);
    let r2 = b(p, 1) ^ b(q, 1);
    let r3 = b(p, 1) ^ b(p, 2) ^ b(q, 1);
    let r4 = b(p, 2) ^ b(q, 2);
    r0 | r1 << 1 | r2 << 2 | r3 << 3 | r4 << 4
}

pub fn build_tau_tables() -> TauTables {
    let mut tau_even = [[0u8; S3_COUNT]; S3_COUNT];
    let mut tau_odd = [[0u8; S3_COUNT]; S3_COUNT];
    for i in 0..S3_COUNT {
        for j in 0..S3_COUNT {
            let (mut even, mut odd) = (0u8, 0u8);
            for p in s3(i).members() {
                for q in s3(j).members() {
                    let r = combine(p, q);
                    if r >> 3 == 0 {
                        odd |= 1 << (r & 7);
                    }
                    if r >> 4 == 0 {
                        even |= 1 << (r >> 1 & 7);
                    }
                }
            }
            tau_even[i][j] = s3_index(even).expect("closed by construction") as u8;
            tau_odd[i][j] = s3_index(odd).expect("closed by construction") as u8;
        }
    }
    TauTables { tau_even, tau_odd }
}

pub fn tau_tables() -> &'static TauTables {
    static TABLES: OnceLock<TauTables> = OnceLock::new();
    TABLES.get_or_init(build_tau_tables)
}
