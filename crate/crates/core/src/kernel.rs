//! LLR-domain successive-cancellation primitives shared by every decoder.

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Log-likelihood ratio; positive favours bit 0.
pub type Llr = f64;

/// Accumulated decision penalty of a decoding path. Smaller is better.
pub type PathMetric = f64;

/// Min-sum check-node update: `sgn(a) sgn(b) min(|a|, |b|)`, with `sgn(0) = 0`.
#[inline]
pub fn f_op(a: Llr, b: Llr) -> Llr {
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    let mag = a.abs().min(b.abs());
    if (a < 0.0) != (b < 0.0) {
        -mag
    } else {
        mag
    }
}

/// Variable-node update: `(1 - 2 beta_l) a + b`.
#[inline]
pub fn g_op(a: Llr, b: Llr, beta_l: u8) -> Llr {
    if beta_l == 0 {
        a + b
    } else {
        b - a
    }
}

/// Partial-sum combination of a left and right child:
/// `(beta_l xor beta_r, beta_r)`.
pub fn combine(beta_l: &[u8], beta_r: &[u8]) -> Result<Vec<u8>> {
    if beta_l.len() != beta_r.len() {
        return Err(Error::LengthMismatch {
            expected: beta_l.len(),
            actual: beta_r.len(),
        });
    }
    let mut out = Vec::with_capacity(2 * beta_l.len());
    out.extend(beta_l.iter().zip(beta_r).map(|(l, r)| l ^ r));
    out.extend_from_slice(beta_r);
    Ok(out)
}

/// Hard decision on one LLR. A zero LLR decides 0.
#[inline]
pub fn hard_bit(alpha: Llr) -> u8 {
    u8::from(alpha < 0.0)
}

pub fn hard_decision(alpha: &[Llr]) -> Vec<u8> {
    alpha.iter().map(|&a| hard_bit(a)).collect()
}

/// Penalty of deciding `bit` against `alpha`.
#[inline]
pub(crate) fn bit_penalty(alpha: Llr, bit: u8) -> PathMetric {
    if bit == hard_bit(alpha) {
        0.0
    } else {
        alpha.abs()
    }
}

/// Adds `|alpha_i|` for every position where `beta_i` disagrees with the hard
/// decision of `alpha_i`.
pub fn calc_pm(pm: PathMetric, alpha: &[Llr], beta: &[u8]) -> PathMetric {
    debug_assert_eq!(alpha.len(), beta.len());
    alpha
        .iter()
        .zip(beta)
        .fold(pm, |acc, (&a, &b)| acc + bit_penalty(a, b))
}

/// SPC-node variant of [`calc_pm`]: each disagreement costs
/// `|alpha_i| + (1 - 2 gamma) |alpha0|`, where `alpha0` is the least
/// reliable LLR of the node and `gamma` its current parity violation.
pub fn calc_pm2(
    pm: PathMetric,
    alpha: &[Llr],
    beta: &[u8],
    gamma: u8,
    alpha0: Llr,
) -> PathMetric {
    debug_assert_eq!(alpha.len(), beta.len());
    let parity_term = if gamma == 0 {
        alpha0.abs()
    } else {
        -alpha0.abs()
    };
    alpha.iter().zip(beta).fold(pm, |acc, (&a, &b)| {
        if b == hard_bit(a) {
            acc
        } else {
            acc + (a.abs() + parity_term)
        }
    })
}
