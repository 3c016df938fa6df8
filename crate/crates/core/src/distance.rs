//! Subchannel weights of the convolutional polarizing transformation and
//! the resulting lower bound on code minimum distance.
//!
//! For every phase the recursion keeps a table of 16 entries: entry `l` is
//! the least number of erasures after which exactly the combinations in
//! `T_l` (a subspace of F^3) of the next three input symbols remain
//! recoverable. Tables at length `n` come from tables at length `n/2` via
//! the composition rules in [`crate::subspace`], so all `n` weights cost
//! O(n) time.

use std::fmt;
use std::ops::Add;

use crate::error::{invalid, Result};
use crate::subspace::{left_edge_shift, right_edge_lift, s3, tau_tables, Subspace, S3_COUNT};

/// Natural number or +infinity; addition saturates.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExtNat(u32);

impl ExtNat {
    pub const INF: ExtNat = ExtNat(u32::MAX);
    pub const ZERO: ExtNat = ExtNat(0);

    pub fn new(v: u32) -> Self {
        assert!(v < u32::MAX, "finite value too large");
        ExtNat(v)
    }

    pub fn is_finite(&self) -> bool {
        self.0 != u32::MAX
    }

    pub fn value(&self) -> Option<u32> {
        self.is_finite().then_some(self.0)
    }
}

impl Add for ExtNat {
    type Output = ExtNat;
    #[inline]
    fn add(self, rhs: ExtNat) -> ExtNat {
        if self.is_finite() && rhs.is_finite() {
            ExtNat(self.0.saturating_add(rhs.0).min(u32::MAX - 1))
        } else {
            ExtNat::INF
        }
    }
}

impl From<u32> for ExtNat {
    fn from(v: u32) -> Self {
        ExtNat::new(v)
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(v) => write!(f, "{v}"),
            None => f.write_str("inf"),
        }
    }
}

impl fmt::Debug for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Per-phase table indexed by the canonical subspace index of F^3.
pub type DeltaTable = [ExtNat; S3_COUNT];

const INF_TABLE: DeltaTable = [ExtNat::INF; S3_COUNT];

/// Largest supported log-length.
pub const MAX_LOG_LENGTH: u32 = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubchannelWeights {
    pub n: usize,
    pub d: Vec<u32>,
}

/// The length-1 table: no erasure leaves everything recoverable, erasing the
/// single symbol leaves only combinations of the (known zero) padding.
pub fn base_table() -> DeltaTable {
    let mut t = INF_TABLE;
    let known = right_edge_lift(&Subspace::full(1)).expect("F^1");
    let erased = right_edge_lift(&Subspace::zero(1)).expect("F^1");
    t[known.index().expect("F^3")] = ExtNat::ZERO;
    t[erased.index().expect("F^3")] = ExtNat::new(1);
    t
}

/// Table for phase -1 from the table for phase 0.
pub fn m1cluster(phase0: &DeltaTable) -> DeltaTable {
    let mut out = INF_TABLE;
    for (i, &v) in phase0.iter().enumerate() {
        let target = left_edge_shift(&s3(i)).expect("F^3").index().expect("F^3");
        out[target] = out[target].min(v);
    }
    out
}

fn compose(parent: &DeltaTable, parity: usize, out: &mut DeltaTable) {
    let tau = tau_tables();
    *out = INF_TABLE;
    for (i, &a) in parent.iter().enumerate() {
        if !a.is_finite() {
            continue;
        }
        for (j, &b) in parent.iter().enumerate() {
            if !b.is_finite() {
                continue;
            }
            let l = tau.get(parity, i, j);
            let v = a + b;
            if v < out[l] {
                out[l] = v;
            }
        }
    }
}

/// Tables for phases `-1..n` at length `n = 2^m`; element `k` holds phase `k - 1`.
fn run_recursion(m: u32) -> Vec<DeltaTable> {
    let base = base_table();
    let mut current = vec![m1cluster(&base), base];
    for lambda in 1..=m {
        let len = 1usize << lambda;
        let mut next = vec![INF_TABLE; len + 1];
        for phi in 0..len {
            // psi = ceil(phi / 2) - 1, stored at offset psi + 1.
            let psi_slot = phi.div_ceil(2);
            compose(&current[psi_slot], phi % 2, &mut next[phi + 1]);
        }
        next[0] = m1cluster(&next[1]);
        current = next;
    }
    current
}

/// Tables for every phase `-1..n` at length `n = 2^m`. The returned vector
/// has `n + 1` entries; entry `k` is the table for phase `k - 1`.
pub fn delta_tables(m: u32) -> Result<Vec<DeltaTable>> {
    if m > MAX_LOG_LENGTH {
        return Err(invalid(format!("log-length {m} exceeds {MAX_LOG_LENGTH}")));
    }
    Ok(run_recursion(m))
}

/// Minimum over the subspaces that do not contain `(1, 0, 0)`.
pub fn weight_from_table(t: &DeltaTable) -> ExtNat {
    (0..S3_COUNT)
        .filter(|&l| !s3(l).contains(0b001))
        .map(|l| t[l])
        .min()
        .expect("non-empty")
}

/// `d[i]` for all `i < n = 2^m`.
pub fn compute_weights(m: u32) -> Result<SubchannelWeights> {
    let tables = delta_tables(m)?;
    let d = tables[1..]
        .iter()
        .map(|t| weight_from_table(t).value().expect("every phase has a finite weight"))
        .collect();
    Ok(SubchannelWeights { n: 1 << m, d })
}

/// Lower bound on the minimum distance of the code with the given information set.
pub fn min_distance_bound(weights: &SubchannelWeights, info_set: &[usize]) -> Result<u32> {
    if info_set.is_empty() {
        return Err(invalid("information set is empty"));
    }
    info_set
        .iter()
        .map(|&i| {
            weights
                .d
                .get(i)
                .copied()
                .ok_or_else(|| invalid(format!("index {i} outside [0, {})", weights.n)))
        })
        .try_fold(u32::MAX, |acc, d| d.map(|d| acc.min(d)))
}

/// Weight of row `i` of the Arikan kernel power `F^{(x)m}`.
pub fn arikan_row_weight(i: usize) -> u64 {
    1u64 << i.count_ones()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(text: &str) -> usize {
        Subspace::parse(3, text).unwrap().index().unwrap()
    }

    #[test]
    fn small_weights() {
        assert_eq!(compute_weights(0).unwrap().d, vec![1]);
        assert_eq!(compute_weights(1).unwrap().d, vec![1, 2]);
        assert_eq!(compute_weights(2).unwrap().d, vec![1, 2, 2, 4]);
        assert!(compute_weights(25).is_err());
    }

    #[test]
    fn m1cluster_examples() {
        let d = m1cluster(&base_table());
        for l in 0..S3_COUNT {
            let expected = if l == sp("<010,001>") {
                ExtNat::ZERO
            } else if l == sp("<001>") {
                ExtNat::new(1)
            } else {
                ExtNat::INF
            };
            assert_eq!(d[l], expected, "{}", s3(l));
        }
        assert_eq!(m1cluster(&INF_TABLE), INF_TABLE);

        let mut t = INF_TABLE;
        compose(&d, 0, &mut t);
        for l in 0..S3_COUNT {
            let expected = match s3(l).to_string().as_str() {
                "<100,010,001>" => ExtNat::ZERO,
                "<010,001>" | "<110,001>" => ExtNat::new(1),
                "<001>" => ExtNat::new(2),
                _ => ExtNat::INF,
            };
            assert_eq!(t[l], expected, "{}", s3(l));
        }
    }

    #[test]
    fn bound_examples() {
        let w = compute_weights(2).unwrap();
        assert_eq!(min_distance_bound(&w, &[3]).unwrap(), 4);
        assert_eq!(min_distance_bound(&w, &[0, 3]).unwrap(), 1);
        assert_eq!(min_distance_bound(&w, &[0, 1, 2, 3]).unwrap(), 1);
        assert!(min_distance_bound(&w, &[]).is_err());
        assert!(min_distance_bound(&w, &[4]).is_err());
    }

    #[test]
    fn arikan_weights() {
        assert_eq!(arikan_row_weight(0), 1);
        assert_eq!(arikan_row_weight(3), 4);
        assert_eq!(arikan_row_weight(5), 4);
    }

    #[test]
    fn tables_are_bounded() {
        for m in 0..=8 {
            let n = 1u32 << m;
            let tables = delta_tables(m).unwrap();
            let full = Subspace::full(3).index().unwrap();
            for (k, t) in tables.iter().enumerate() {
                assert!(t.iter().any(|v| v.is_finite()));
                // At phase -1 the leading symbol is always erased, so F^3 is unreachable.
                if k > 0 {
                    assert_eq!(t[full], ExtNat::ZERO);
                } else {
                    assert_eq!(t[full], ExtNat::INF);
                }
                assert!(t.iter().all(|v| v.value().map_or(true, |v| v <= n)));
            }
            let w = compute_weights(m).unwrap();
            assert_eq!(w.d[0], 1);
            assert!(w.d.iter().all(|&d| (1..=n).contains(&d)));
        }
    }

    #[test]
    fn ext_nat_saturates() {
        assert_eq!(ExtNat::INF + ExtNat::new(3), ExtNat::INF);
        assert_eq!(ExtNat::new(2) + ExtNat::new(3), ExtNat::new(5));
        assert!(ExtNat::new(7) < ExtNat::INF);
        assert_eq!(ExtNat::INF.to_string(), "inf");
    }
}
