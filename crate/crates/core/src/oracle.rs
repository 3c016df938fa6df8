//! Exhaustive ground truth at small lengths: recoverable-vector spaces under
//! erasures, their inverse images and minimal cardinalities, generalized
//! coset minimum weights and code minimum distance by enumeration.
//!
//! Everything here is exponential in `n` (or `k`) and exists to check the
//! fast algorithms elsewhere in the crate.

use crate::code::CodeSpec;
use crate::distance::{DeltaTable, ExtNat};
use crate::error::{invalid, Error, Result};
use crate::gf2::BitVector;
use crate::subspace::{s3, Subspace, S3_COUNT};
use crate::transform::{check_power_of_two, encode, packed_rows};

/// Largest length accepted by [`chi`].
pub const MAX_CHI_LENGTH: usize = 64;
/// Largest length accepted by the full enumerations ([`xi`], [`delta_profile`]).
pub const MAX_ENUM_LENGTH: usize = 16;
/// Largest `n - phi` accepted by [`coset_min_weight`].
pub const MAX_COSET_FREE: usize = 32;
/// Largest dimension accepted by [`exhaustive_min_distance`].
pub const MAX_EXHAUSTIVE_DIM: usize = 26;

/// Columns of `Q(n)` packed over rows, `col[c]` bit `r` = `Q[r][c]`.
fn packed_columns(n: usize) -> Result<Vec<u64>> {
    let rows = packed_rows(n)?;
    Ok((0..n)
        .map(|c| {
            rows.iter()
                .enumerate()
                .fold(0u64, |acc, (r, &row)| acc | (((row >> c) & 1) << r))
        })
        .collect())
}

/// Reusable column data for repeated `chi` evaluations at one length.
#[derive(Clone, Debug)]
pub struct ErasureOracle {
    n: usize,
    columns: Vec<u64>,
}

impl ErasureOracle {
    pub fn new(n: usize) -> Result<Self> {
        check_power_of_two(n)?;
        if n > MAX_CHI_LENGTH {
            return Err(invalid(format!("erasure oracle needs n <= {MAX_CHI_LENGTH}, got {n}")));
        }
        Ok(Self {
            n,
            columns: packed_columns(n)?,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `chi` with `E` given as a bit mask over positions (`n <= 64`).
    pub fn chi_mask(&self, phi: isize, j: usize, erased: u64) -> Result<Subspace> {
        if !(1..=3).contains(&j) {
            return Err(invalid(format!("width j = {j} outside [1, 3]")));
        }
        if phi >= self.n as isize || phi <= -(j as isize) {
            return Err(invalid(format!("phase {phi} outside [-{}, {})", j - 1, self.n)));
        }
        if phi < 0 {
            let shift = (-phi) as usize;
            return self.chi_mask(0, j - shift, erased)?.prepend_zeros(shift);
        }
        let phi = phi as usize;
        let k = self.n - phi;
        if j > k {
            return self.chi_mask(phi as isize, k, erased)?.lift(j - k);
        }
        Ok(self.chi_core(phi, j, erased))
    }

    /// Column space of the rows `>= phi` over the unerased columns, then the
    /// `2^j` membership tests of `(p, 0^{k-j})`.
    fn chi_core(&self, phi: usize, j: usize, erased: u64) -> Subspace {
        let mut basis = [0u64; 64];
        let mut has = 0u64;
        for c in 0..self.n {
            if (erased >> c) & 1 == 1 {
                continue;
            }
            let mut v = self.columns[c] >> phi;
            while v != 0 {
                let pivot = 63 - v.leading_zeros() as usize;
                if (has >> pivot) & 1 == 1 {
                    v ^= basis[pivot];
                } else {
                    basis[pivot] = v;
                    has |= 1 << pivot;
                    break;
                }
            }
        }
        let contains = |mut v: u64| {
            while v != 0 {
                let pivot = 63 - v.leading_zeros() as usize;
                if (has >> pivot) & 1 == 0 {
                    return false;
                }
                v ^= basis[pivot];
            }
            true
        };
        let mut mask = 0u8;
        for p in 0..(1u64 << j) {
            if contains(p) {
                mask |= 1 << p;
            }
        }
        let s = Subspace::from_mask_unchecked(j, mask);
        debug_assert!(Subspace::from_mask(j, mask).is_ok(), "recoverable set not closed");
        s
    }
}

fn erased_mask(n: usize, erased: &[usize]) -> Result<u64> {
    let mut mask = 0u64;
    for &e in erased {
        if e >= n {
            return Err(Error::IndexOutOfRange { index: e, len: n });
        }
        mask |= 1 << e;
    }
    Ok(mask)
}

/// Recoverable coefficient vectors of `u_phi^{phi+j-1}` when the positions in
/// `erased` are erased and `u_0^{phi-1}` is known.
pub fn chi(n: usize, phi: isize, j: usize, erased: &[usize]) -> Result<Subspace> {
    let oracle = ErasureOracle::new(n)?;
    oracle.chi_mask(phi, j, erased_mask(n, erased)?)
}

fn check_enum_length(n: usize) -> Result<()> {
    check_power_of_two(n)?;
    if n > MAX_ENUM_LENGTH {
        return Err(invalid(format!("full enumeration needs n <= {MAX_ENUM_LENGTH}, got {n}")));
    }
    Ok(())
}

fn support(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| (mask >> i) & 1 == 1).collect()
}

/// All erasure configurations whose recoverable space is `s`, ordered by
/// cardinality and then lexicographically.
pub fn xi(n: usize, phi: isize, j: usize, s: &Subspace) -> Result<Vec<Vec<usize>>> {
    check_enum_length(n)?;
    if s.dim_ambient() != j {
        return Err(Error::DimensionMismatch {
            expected: j,
            actual: s.dim_ambient(),
        });
    }
    let oracle = ErasureOracle::new(n)?;
    let mut out = Vec::new();
    for e in 0..(1u64 << n) {
        if oracle.chi_mask(phi, j, e)? == *s {
            out.push(support(e));
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// Least number of erasures leaving exactly `s` recoverable.
pub fn delta_min(n: usize, phi: isize, j: usize, s: &Subspace) -> Result<ExtNat> {
    check_power_of_two(n)?;
    if n > 20 {
        return Err(invalid(format!("delta_min needs n <= 20, got {n}")));
    }
    if s.dim_ambient() != j {
        return Err(Error::DimensionMismatch {
            expected: j,
            actual: s.dim_ambient(),
        });
    }
    let oracle = ErasureOracle::new(n)?;
    for r in 0..=n {
        let mut found = false;
        for_each_subset_of_size(n, r, |e| {
            if !found && oracle.chi_mask(phi, j, e).is_ok_and(|c| c == *s) {
                found = true;
            }
        });
        if found {
            return Ok(ExtNat::new(r as u32));
        }
    }
    // Validates the phase before concluding that no configuration exists.
    oracle.chi_mask(phi, j, 0)?;
    Ok(ExtNat::INF)
}

fn for_each_subset_of_size(n: usize, r: usize, mut f: impl FnMut(u64)) {
    if r == 0 {
        f(0);
        return;
    }
    let limit = 1u64 << n;
    let mut v = (1u64 << r) - 1;
    while v < limit {
        f(v);
        let t = v | (v - 1);
        v = (t + 1) | (((!t & (!t).wrapping_neg()) - 1) >> (v.trailing_zeros() + 1));
    }
}

/// `delta_min` for every subspace of `F^j` at once, indexed by subspace mask.
pub fn delta_profile(n: usize, phi: isize, j: usize) -> Result<[ExtNat; 256]> {
    check_enum_length(n)?;
    let oracle = ErasureOracle::new(n)?;
    let mut out = [ExtNat::INF; 256];
    for e in 0..(1u64 << n) {
        let mask = oracle.chi_mask(phi, j, e)?.mask() as usize;
        out[mask] = out[mask].min(ExtNat::new(e.count_ones()));
    }
    Ok(out)
}

/// The width-3 profile as a table over the canonical subspace indices.
pub fn delta_table(n: usize, phi: isize) -> Result<DeltaTable> {
    let profile = delta_profile(n, phi, 3)?;
    let mut t = [ExtNat::INF; S3_COUNT];
    for (l, v) in t.iter_mut().enumerate() {
        *v = profile[s3(l).mask() as usize];
    }
    Ok(t)
}

fn key_of(p: &BitVector) -> u8 {
    p.iter().enumerate().fold(0u8, |acc, (i, b)| acc | ((b as u8) << i))
}

/// Minimum weight of `{u Q(n) : u_0^{phi-1} = 0, p . u_phi^{phi+j-1} = 1}`
/// with `u_l = 0` for `l >= n`; `+inf` if the set is empty.
pub fn coset_min_weight(n: usize, phi: usize, p: &BitVector) -> Result<ExtNat> {
    check_power_of_two(n)?;
    if n > MAX_CHI_LENGTH {
        return Err(invalid(format!("coset enumeration needs n <= {MAX_CHI_LENGTH}, got {n}")));
    }
    if phi >= n {
        return Err(Error::IndexOutOfRange { index: phi, len: n });
    }
    if p.is_empty() {
        return Err(invalid("coefficient vector is empty"));
    }
    if n - phi > MAX_COSET_FREE {
        return Err(invalid(format!("coset enumeration needs n - phi <= {MAX_COSET_FREE}, got {}", n - phi)));
    }
    let rows = packed_rows(n)?;
    let window = |t: usize| t >= phi && t - phi < p.len() && p.get(t - phi);
    let Some(pivot) = (phi..n).rev().find(|&t| window(t)) else {
        return Ok(ExtNat::INF);
    };
    // Free symbols; flipping one inside the constraint also flips the pivot.
    let deltas: Vec<u64> = (phi..n)
        .filter(|&t| t != pivot)
        .map(|t| if window(t) { rows[t] ^ rows[pivot] } else { rows[t] })
        .collect();
    let mut word = rows[pivot];
    let mut best = word.count_ones();
    for i in 1u64..(1u64 << deltas.len()) {
        word ^= deltas[i.trailing_zeros() as usize];
        best = best.min(word.count_ones());
    }
    Ok(ExtNat::new(best))
}

/// The coset minimum weight, paired with the least
/// `delta_min(s)` over the subspaces `s` of `F^j` not containing `p`.
pub fn theorem1_sides(n: usize, phi: usize, p: &BitVector) -> Result<(ExtNat, ExtNat)> {
    check_enum_length(n)?;
    let j = p.len();
    if !(1..=3).contains(&j) {
        return Err(invalid(format!("width j = {j} outside [1, 3]")));
    }
    let lhs = coset_min_weight(n, phi, p)?;
    let profile = delta_profile(n, phi as isize, j)?;
    let key = key_of(p);
    let rhs = crate::subspace::enumerate_subspaces(j)?
        .iter()
        .filter(|s| !s.contains(key))
        .map(|s| profile[s.mask() as usize])
        .min()
        .unwrap_or(ExtNat::INF);
    Ok((lhs, rhs))
}

pub fn verify_theorem1(n: usize, phi: usize, p: &BitVector) -> Result<bool> {
    let (lhs, rhs) = theorem1_sides(n, phi, p)?;
    Ok(lhs == rhs)
}

/// Minimum weight over all nonzero codewords, frozen symbols evaluated from
/// their constraints.
pub fn exhaustive_min_distance(code: &CodeSpec) -> Result<u32> {
    let k = code.k();
    if k == 0 {
        return Err(invalid("code has no information symbols"));
    }
    if k > MAX_EXHAUSTIVE_DIM {
        return Err(invalid(format!("exhaustive enumeration needs k <= {MAX_EXHAUSTIVE_DIM}, got {k}")));
    }
    let n = code.n();
    let info = code.info_set();
    let generators: Vec<Vec<u64>> = (0..k)
        .map(|b| {
            let mut bits = BitVector::zeros(k);
            bits.set(b, true);
            code.encode(&bits).map(|c| c.words().to_vec())
        })
        .collect::<Result<_>>()?;
    debug_assert_eq!(info.len(), k);
    let words = n.div_ceil(64);
    let mut word = vec![0u64; words];
    let mut best = u32::MAX;
    for i in 1u64..(1u64 << k) {
        let g = &generators[i.trailing_zeros() as usize];
        let mut w = 0;
        for (a, b) in word.iter_mut().zip(g) {
            *a ^= b;
            w += a.count_ones();
        }
        best = best.min(w);
    }
    Ok(best)
}

/// Exact first-error probability of genie-aided SC on BEC(`pe`): a phase
/// errs with probability 1/2 whenever its symbol is not recoverable.
pub fn bec_genie_error_profile(n: usize, pe: f64) -> Result<Vec<f64>> {
    check_enum_length(n)?;
    if !(0.0..=1.0).contains(&pe) {
        return Err(invalid(format!("erasure probability {pe} outside [0, 1]")));
    }
    let oracle = ErasureOracle::new(n)?;
    let mut out = vec![0.0; n];
    for e in 0..(1u64 << n) {
        let r = e.count_ones() as i32;
        let prob = pe.powi(r) * (1.0 - pe).powi(n as i32 - r);
        for (phi, slot) in out.iter_mut().enumerate() {
            if !oracle.chi_mask(phi as isize, 1, e)?.contains(1) {
                *slot += 0.5 * prob;
            }
        }
    }
    Ok(out)
}

/// Codeword of `u` for reference checks (`u` as a bit mask, `n <= 64`).
pub fn encode_mask(n: usize, u: u64) -> Result<u64> {
    Ok(encode(&BitVector::from_u64(u, n))?.words()[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::BitMatrix;
    use crate::transform::build_matrix;

    fn sp(dim: usize, text: &str) -> Subspace {
        Subspace::parse(dim, text).unwrap()
    }

    fn bv(bits: &[u8]) -> BitVector {
        BitVector::from_bits(bits)
    }

    #[test]
    fn chi_examples() {
        assert_eq!(chi(2, 0, 2, &[]).unwrap(), Subspace::full(2));
        assert_eq!(chi(2, 0, 2, &[0]).unwrap(), sp(2, "<01>"));
        assert_eq!(chi(2, 0, 2, &[1]).unwrap(), sp(2, "<11>"));
        assert_eq!(chi(2, 0, 2, &[0, 1]).unwrap(), Subspace::zero(2));
        assert_eq!(chi(4, 2, 2, &[1, 2]).unwrap(), sp(2, "<01>"));
        for n in [1usize, 2, 4, 8] {
            let all: Vec<usize> = (0..n).collect();
            for j in 1..=3.min(n) {
                assert_eq!(chi(n, 0, j, &all).unwrap(), Subspace::zero(j));
            }
        }
        assert!(chi(4, 4, 1, &[]).is_err());
        assert!(chi(4, -1, 1, &[]).is_err());
        assert!(chi(4, 0, 4, &[]).is_err());
        assert!(chi(4, 0, 1, &[4]).is_err());
        assert!(chi(128, 0, 1, &[]).is_err());
    }

    #[test]
    fn chi_edge_conventions() {
        // Past the end everything is a known zero; before the start everything is erased.
        assert_eq!(chi(1, 0, 3, &[]).unwrap(), Subspace::full(3));
        assert_eq!(chi(1, 0, 3, &[0]).unwrap(), sp(3, "<010,001>"));
        assert_eq!(chi(1, -1, 3, &[]).unwrap(), sp(3, "<010,001>"));
        assert_eq!(chi(1, -1, 3, &[0]).unwrap(), sp(3, "<001>"));
        assert_eq!(chi(2, 0, 3, &[1]).unwrap(), sp(3, "<110,001>"));
    }

    #[test]
    fn chi_core_matches_generic_column_space() {
        for n in [2usize, 4, 8] {
            let q = build_matrix(n).unwrap();
            let oracle = ErasureOracle::new(n).unwrap();
            for phi in 0..n {
                let rows_out: Vec<usize> = (0..phi).collect();
                let k = n - phi;
                for e in 0..(1u64 << n) {
                    let cols_out = support(e);
                    let g: BitMatrix = q.submatrix(&rows_out, &cols_out).unwrap();
                    for j in 1..=3.min(k) {
                        let s = oracle.chi_mask(phi as isize, j, e).unwrap();
                        for key in 0..(1u8 << j) {
                            let mut v = BitVector::zeros(k);
                            for t in 0..j {
                                v.set(t, (key >> t) & 1 == 1);
                            }
                            let inside = cols_out.len() < n && g.in_column_space(&v).unwrap();
                            assert_eq!(s.contains(key), inside || key == 0, "n={n} phi={phi} e={e:b}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn chi_is_monotone() {
        let oracle = ErasureOracle::new(8).unwrap();
        for phi in -2isize..8 {
            for e in 0u64..256 {
                let s = oracle.chi_mask(phi, 3, e).unwrap();
                for extra in 0..8 {
                    let t = oracle.chi_mask(phi, 3, e | (1 << extra)).unwrap();
                    assert!(t.is_subset_of(&s));
                }
            }
        }
    }

    #[test]
    fn xi_examples() {
        let x = |s: &str| xi(2, 0, 2, &sp(2, s)).unwrap();
        assert_eq!(x("<01>"), vec![vec![0]]);
        assert_eq!(x("<10>"), Vec::<Vec<usize>>::new());
        assert_eq!(x("<11>"), vec![vec![1]]);
        assert_eq!(x("<>"), vec![vec![0, 1]]);
        assert_eq!(xi(2, 0, 2, &Subspace::full(2)).unwrap(), vec![Vec::<usize>::new()]);
        assert_eq!(
            xi(4, 2, 2, &sp(2, "<01>")).unwrap(),
            vec![vec![1, 2], vec![0, 1, 2], vec![1, 2, 3]]
        );
        assert!(xi(32, 0, 1, &Subspace::zero(1)).is_err());
        assert!(xi(4, 0, 2, &Subspace::zero(1)).is_err());
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta_min(1, 0, 1, &Subspace::zero(1)).unwrap(), ExtNat::new(1));
        assert_eq!(delta_min(1, 0, 1, &Subspace::full(1)).unwrap(), ExtNat::ZERO);
        assert_eq!(delta_min(2, 0, 3, &sp(3, "<110,001>")).unwrap(), ExtNat::new(1));
        assert_eq!(delta_min(2, 0, 2, &sp(2, "<10>")).unwrap(), ExtNat::INF);
        let profile = delta_profile(4, 1, 3).unwrap();
        for s in crate::subspace::enumerate_subspaces(3).unwrap() {
            assert_eq!(profile[s.mask() as usize], delta_min(4, 1, 3, &s).unwrap());
        }
    }

    #[test]
    fn coset_examples() {
        assert_eq!(coset_min_weight(4, 3, &bv(&[1])).unwrap(), ExtNat::new(4));
        assert_eq!(coset_min_weight(4, 1, &bv(&[1])).unwrap(), ExtNat::new(2));
        assert_eq!(coset_min_weight(2, 0, &bv(&[1, 0, 0])).unwrap(), ExtNat::new(1));
        // The constraint touches only padding symbols.
        assert_eq!(coset_min_weight(2, 1, &bv(&[0, 1])).unwrap(), ExtNat::INF);
        assert!(coset_min_weight(4, 4, &bv(&[1])).is_err());
        assert!(coset_min_weight(64, 0, &bv(&[1])).is_err());
    }

    #[test]
    fn coset_matches_brute_force() {
        for n in [2usize, 4, 8] {
            for phi in 0..n {
                for key in 1u8..8 {
                    let p = BitVector::from_u64(key as u64, 3);
                    let mut best = ExtNat::INF;
                    for u in 0u64..(1 << n) {
                        if u & ((1 << phi) - 1) != 0 {
                            continue;
                        }
                        let dot = (0..3).filter(|&t| p.get(t) && phi + t < n && (u >> (phi + t)) & 1 == 1).count();
                        if dot % 2 == 1 {
                            best = best.min(ExtNat::new(encode_mask(n, u).unwrap().count_ones()));
                        }
                    }
                    assert_eq!(coset_min_weight(n, phi, &p).unwrap(), best, "n={n} phi={phi} p={key:03b}");
                }
            }
        }
    }

    #[test]
    fn coset_weight_equals_least_configuration() {
        assert!(verify_theorem1(4, 2, &bv(&[1, 0])).unwrap());
        assert_eq!(theorem1_sides(2, 0, &bv(&[1])).unwrap(), (ExtNat::new(1), ExtNat::new(1)));
        assert!(verify_theorem1(8, 5, &bv(&[1, 0, 0])).unwrap());
    }

    #[test]
    fn exhaustive_distance_examples() {
        let d = |info: &[usize]| exhaustive_min_distance(&CodeSpec::from_info_set(4, info).unwrap()).unwrap();
        assert_eq!(d(&[3]), 4);
        assert_eq!(d(&[2, 3]), 2);
        assert_eq!(d(&[0, 3]), 1);
        assert!(exhaustive_min_distance(&CodeSpec::from_info_set(4, &[]).unwrap()).is_err());
    }

    #[test]
    fn bec_profile_small() {
        let p = bec_genie_error_profile(2, 0.5).unwrap();
        assert!((p[0] - 0.375).abs() < 1e-12);
        assert!((p[1] - 0.125).abs() < 1e-12);
        assert_eq!(bec_genie_error_profile(4, 0.0).unwrap(), vec![0.0; 4]);
        assert_eq!(bec_genie_error_profile(4, 1.0).unwrap(), vec![0.5; 4]);
    }
}
