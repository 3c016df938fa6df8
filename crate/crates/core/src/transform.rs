//! The convolutional polarizing transformation `Q(n)`.
//!
//! One layer maps `u` of even length `l` to `x = u X(l)` and `z = u Z(l)`
//! with `x_j = u_2j + u_2j+1 + u_2j+2` and `z_j = u_2j+1 + u_2j+2`, where
//! the out-of-range `u_l` is taken to be zero (open boundary). The full
//! transform recurses: `Q(n) u = (Q(n/2) x, Q(n/2) z)`. There is no output
//! permutation.

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerPair {
    pub x: BitVector,
    pub z: BitVector,
}

fn split_in_place(block: &mut [u8], scratch: &mut Vec<u8>) {
    let l = block.len();
    let half = l / 2;
    scratch.clear();
    scratch.resize(l, 0);
    for j in 0..half {
        let next = if 2 * j + 2 < l { block[2 * j + 2] } else { 0 };
        let z = block[2 * j + 1] ^ next;
        scratch[j] = block[2 * j] ^ z;
        scratch[half + j] = z;
    }
    block.copy_from_slice(scratch);
}

pub fn layer_split(u: &BitVector) -> Result<LayerPair> {
    let l = u.len();
    if l == 0 || l % 2 == 1 {
        return Err(Error::OddLength(l));
    }
    let mut buf = u.to_bits();
    split_in_place(&mut buf, &mut Vec::new());
    let half = l / 2;
    Ok(LayerPair {
        x: BitVector::from_bits(&buf[..half]),
        z: BitVector::from_bits(&buf[half..]),
    })
}

pub fn check_power_of_two(n: usize) -> Result<u32> {
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(n));
    }
    Ok(n.trailing_zeros())
}

/// In-place transform of 0/1 bytes; the slice length must be a power of two.
pub fn encode_bytes(buf: &mut [u8]) {
    debug_assert!(buf.len().is_power_of_two());
    let mut scratch = Vec::with_capacity(buf.len());
    let mut l = buf.len();
    while l >= 2 {
        for block in buf.chunks_mut(l) {
            split_in_place(block, &mut scratch);
        }
        l /= 2;
    }
}

/// `c = u Q(n)`, computed layer by layer in O(n log n).
pub fn encode(u: &BitVector) -> Result<BitVector> {
    check_power_of_two(u.len())?;
    let mut buf = u.to_bits();
    encode_bytes(&mut buf);
    Ok(BitVector::from_bits(&buf))
}

/// The `n x n` matrix `Q(n)`; row `i` is the encoding of the unit vector `e_i`.
pub fn build_matrix(n: usize) -> Result<BitMatrix> {
    check_power_of_two(n)?;
    let rows = (0..n)
        .map(|i| encode(&BitVector::unit(n, i)))
        .collect::<Result<Vec<_>>>()?;
    BitMatrix::from_rows(n, rows)
}

/// The layer matrices `X(l)` and `Z(l)` (each `l x l/2`) written out from
/// their entry-wise definitions. Only used for cross-checks.
pub fn layer_matrices(l: usize) -> Result<(BitMatrix, BitMatrix)> {
    if l == 0 || l % 2 == 1 {
        return Err(Error::OddLength(l));
    }
    let mut x = BitMatrix::zeros(l, l / 2);
    let mut z = BitMatrix::zeros(l, l / 2);
    for i in 0..l {
        for j in 0..l / 2 {
            x.set(i, j, 2 * j <= i && i <= 2 * j + 2);
            z.set(i, j, 2 * j < i && i <= 2 * j + 2);
        }
    }
    Ok((x, z))
}

/// Rows of `Q(n)` packed into `u64` words, for `n <= 64`.
pub(crate) fn packed_rows(n: usize) -> Result<Vec<u64>> {
    if n > 64 {
        return Err(Error::InvalidParameter(format!("packed rows need n <= 64, got {n}")));
    }
    let q = build_matrix(n)?;
    Ok(q.row_vectors().iter().map(|r| r.words()[0]).collect())
}
