use super::SoftInput;
use crate::error::{invalid, Error, Result};
use crate::gf2::BitVector;
use crate::transform::{check_power_of_two, encode_bytes};

/// Per-symbol `(W(0|y), W(1|y))`.
pub fn symbol_probabilities(input: &SoftInput) -> Vec<[f64; 2]> {
    input
        .llr()
        .iter()
        .map(|&l| [1.0 / (1.0 + (-l).exp()), 1.0 / (1.0 + l.exp())])
        .collect()
}

/// `W(u_0^phi | y)` by direct summation over every suffix `u_{phi+1}^{n-1}`.
pub fn subchannel_prob_bruteforce(n: usize, phi: usize, prefix: &BitVector, input: &SoftInput) -> Result<f64> {
    check_power_of_two(n)?;
    if n > 16 {
        return Err(invalid(format!("direct summation needs n <= 16, got {n}")));
    }
    if input.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: input.len(),
        });
    }
    if phi >= n {
        return Err(Error::IndexOutOfRange { index: phi, len: n });
    }
    if prefix.len() != phi + 1 {
        return Err(Error::DimensionMismatch {
            expected: phi + 1,
            actual: prefix.len(),
        });
    }
    let probs = symbol_probabilities(input);
    let free = n - phi - 1;
    let mut u = vec![0u8; n];
    let mut total = 0.0;
    for s in 0u64..(1 << free) {
        for (i, slot) in u.iter_mut().enumerate() {
            *slot = if i <= phi {
                prefix.get(i) as u8
            } else {
                ((s >> (i - phi - 1)) & 1) as u8
            };
        }
        encode_bytes(&mut u);
        total += u.iter().zip(&probs).map(|(&c, p)| p[c as usize]).product::<f64>();
    }
    Ok(total)
}
