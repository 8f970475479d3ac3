//! Code construction and the two encoding stages of a PAC code:
//! rate profiling `d -> v`, convolution `v -> u`, and the polar transform
//! `u -> x`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Frozen/information indicator over the `N` message positions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RateProfile {
    frozen: Vec<bool>,
    info: Vec<usize>,
}

impl RateProfile {
    /// Builds a profile from the information index set. Indices may be given
    /// in any order; they are stored sorted.
    pub fn from_info_set(n: usize, info: &[usize]) -> Result<Self> {
        check_code_length(n)?;
        if info.len() > n {
            return Err(Error::InfoLengthTooLarge { k: info.len(), n });
        }
        let mut frozen = vec![true; n];
        for &i in info {
            if i >= n || !frozen[i] {
                return Err(Error::InvalidInfoSet { index: i });
            }
            frozen[i] = false;
        }
        Ok(Self::from_frozen_mask(frozen))
    }

    fn from_frozen_mask(frozen: Vec<bool>) -> Self {
        let info = frozen
            .iter()
            .enumerate()
            .filter_map(|(i, &f)| (!f).then_some(i))
            .collect();
        Self { frozen, info }
    }

    /// Code length `N`.
    pub fn len(&self) -> usize {
        self.frozen.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frozen.is_empty()
    }

    /// Number of information positions `K`.
    pub fn info_len(&self) -> usize {
        self.info.len()
    }

    /// Sorted information indices.
    pub fn info_indices(&self) -> &[usize] {
        &self.info
    }

    pub fn is_frozen(&self, index: usize) -> bool {
        self.frozen[index]
    }

    /// `true` at frozen positions.
    pub fn frozen_mask(&self) -> &[bool] {
        &self.frozen
    }

    /// Places `d` at the information positions of an all-zero message vector.
    pub fn insert(&self, d: &[u8]) -> Result<Vec<u8>> {
        if d.len() != self.info.len() {
            return Err(Error::LengthMismatch {
                expected: self.info.len(),
                actual: d.len(),
            });
        }
        check_bits(d)?;
        let mut v = vec![0u8; self.len()];
        for (&i, &bit) in self.info.iter().zip(d) {
            v[i] = bit;
        }
        Ok(v)
    }

    /// Reads the information positions back out of a message vector.
    pub fn extract(&self, v: &[u8]) -> Vec<u8> {
        self.info.iter().map(|&i| v[i]).collect()
    }
}

/// Reed-Muller rate profile: the `k` positions whose binary expansion has the
/// largest Hamming weight. Ties at the boundary weight go to larger indices.
pub fn rm_profile(n: usize, k: usize) -> Result<RateProfile> {
    check_code_length(n)?;
    if k > n {
        return Err(Error::InfoLengthTooLarge { k, n });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_unstable_by(|&a, &b| {
        b.count_ones()
            .cmp(&a.count_ones())
            .then_with(|| b.cmp(&a))
    });
    RateProfile::from_info_set(n, &order[..k])
}

/// Convolution impulse response `c = (c_0, ..., c_m)` with `c_0 = c_m = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ImpulseResponse {
    coeffs: Vec<u8>,
    // bit i-1 holds c_i, i = 1..=m
    taps: u64,
}

impl ImpulseResponse {
    pub const MAX_MEMORY: usize = 63;

    pub fn new(coeffs: &[u8]) -> Result<Self> {
        check_bits(coeffs)?;
        let len = coeffs.len();
        if len == 0 || len > Self::MAX_MEMORY + 1 || coeffs[0] != 1 || coeffs[len - 1] != 1 {
            return Err(Error::InvalidImpulseResponse);
        }
        let taps = coeffs[1..]
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &c)| acc | (u64::from(c) << i));
        Ok(Self {
            coeffs: coeffs.to_vec(),
            taps,
        })
    }

    /// The response used throughout the simulations, `(1,0,1,1,0,1,1)`.
    pub fn standard() -> Self {
        Self::new(&[1, 0, 1, 1, 0, 1, 1]).expect("valid impulse response")
    }

    /// Register length `m` (constraint length minus one).
    pub fn memory(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }
}

/// Convolution state: `m` bits with index 0 holding the most recent input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ShiftRegister {
    bits: u64,
    len: u8,
}

impl ShiftRegister {
    /// All-zero register of length `m`.
    pub fn zero(m: usize) -> Self {
        assert!(m <= ImpulseResponse::MAX_MEMORY, "register too long");
        Self { bits: 0, len: m as u8 }
    }

    /// Builds a register from its bits, most recent first.
    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        check_bits(bits)?;
        if bits.len() > ImpulseResponse::MAX_MEMORY {
            return Err(Error::InvalidImpulseResponse);
        }
        let packed = bits
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &b)| acc | (u64::from(b) << i));
        Ok(Self {
            bits: packed,
            len: bits.len() as u8,
        })
    }

    pub fn len(&self) -> usize {
        usize::from(self.len)
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Bit `s_i`; `s_0` is the most recent input.
    pub fn bit(&self, i: usize) -> u8 {
        assert!(i < self.len(), "register index out of range");
        ((self.bits >> i) & 1) as u8
    }

    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.len()).map(|i| self.bit(i)).collect()
    }

    #[inline]
    fn feedback(&self, taps: u64) -> u8 {
        ((self.bits & taps).count_ones() & 1) as u8
    }

    #[inline]
    fn push(self, v: u8) -> Self {
        let mask = if self.len == 0 {
            0
        } else {
            u64::MAX >> (64 - u32::from(self.len))
        };
        Self {
            bits: ((self.bits << 1) | u64::from(v)) & mask,
            len: self.len,
        }
    }
}

/// One step of the convolution: `u = v c_0 xor (xor_i c_i s_{i-1})`, then
/// `s <- [v, s_0, ..., s_{m-2}]`.
#[inline]
pub fn conv_bit_enc(v: u8, s: ShiftRegister, c: &ImpulseResponse) -> (u8, ShiftRegister) {
    debug_assert_eq!(s.len(), c.memory());
    let u = (v & c.coeffs[0]) ^ s.feedback(c.taps);
    (u, s.push(v))
}

/// Inverse step: the unique `v` for which [`conv_bit_enc`] emits `u` from `s`,
/// with the same state update.
#[inline]
pub fn conv_bit_inv_enc(u: u8, s: ShiftRegister, c: &ImpulseResponse) -> (u8, ShiftRegister) {
    debug_assert_eq!(s.len(), c.memory());
    let v = u ^ s.feedback(c.taps);
    (v, s.push(v))
}

/// Convolves a whole message vector from the zero state (`u = vT`).
pub fn conv_encode(v: &[u8], c: &ImpulseResponse) -> Vec<u8> {
    let mut s = ShiftRegister::zero(c.memory());
    v.iter()
        .map(|&bit| {
            let (u, next) = conv_bit_enc(bit, s, c);
            s = next;
            u
        })
        .collect()
}

/// `x = u P^{(x)k}` over GF(2), `P = [1 0; 1 1]`.
pub fn polar_transform(u: &[u8]) -> Result<Vec<u8>> {
    if !u.len().is_power_of_two() {
        return Err(Error::NotPowerOfTwo(u.len()));
    }
    let mut x = u.to_vec();
    polar_transform_in_place(&mut x);
    Ok(x)
}

/// In-place butterfly; the transform is its own inverse.
pub(crate) fn polar_transform_in_place(x: &mut [u8]) {
    debug_assert!(x.len().is_power_of_two());
    let n = x.len();
    let mut half = 1;
    while half < n {
        for block in x.chunks_exact_mut(2 * half) {
            let (lo, hi) = block.split_at_mut(half);
            for (a, b) in lo.iter_mut().zip(hi.iter()) {
                *a ^= *b;
            }
        }
        half *= 2;
    }
}

/// Explicit Kronecker power `P^{(x)n}` as rows of bits.
pub fn kernel_power(n: u32) -> Vec<Vec<u8>> {
    let mut m: Vec<Vec<u8>> = vec![vec![1]];
    for _ in 0..n {
        let size = m.len();
        let mut next = vec![vec![0u8; 2 * size]; 2 * size];
        for (i, row) in m.iter().enumerate() {
            for (j, &e) in row.iter().enumerate() {
                next[i][j] = e;
                next[i + size][j] = e;
                next[i + size][j + size] = e;
            }
        }
        m = next;
    }
    m
}

/// The quadruple `(N, K, A, c)` that defines one PAC code.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CodeConfig {
    profile: RateProfile,
    conv: ImpulseResponse,
}

impl CodeConfig {
    pub fn new(profile: RateProfile, conv: ImpulseResponse) -> Self {
        Self { profile, conv }
    }

    /// Builds a code from an explicit information set and impulse response.
    pub fn from_parts(n: usize, info: &[usize], conv: &[u8]) -> Result<Self> {
        Ok(Self::new(
            RateProfile::from_info_set(n, info)?,
            ImpulseResponse::new(conv)?,
        ))
    }

    /// RM-profiled code with the given impulse response.
    pub fn rm(n: usize, k: usize, conv: &[u8]) -> Result<Self> {
        Ok(Self::new(rm_profile(n, k)?, ImpulseResponse::new(conv)?))
    }

    /// `N`.
    pub fn len(&self) -> usize {
        self.profile.len()
    }

    pub fn is_empty(&self) -> bool {
        self.profile.is_empty()
    }

    /// `K`.
    pub fn info_len(&self) -> usize {
        self.profile.info_len()
    }

    /// `log2 N`.
    pub fn depth(&self) -> u32 {
        self.len().trailing_zeros()
    }

    pub fn rate(&self) -> f64 {
        self.info_len() as f64 / self.len() as f64
    }

    pub fn profile(&self) -> &RateProfile {
        &self.profile
    }

    pub fn conv(&self) -> &ImpulseResponse {
        &self.conv
    }

    /// Register length `m`.
    pub fn memory(&self) -> usize {
        self.conv.memory()
    }
}

/// Full encoder: profile, convolve, polar transform.
pub fn pac_encode(d: &[u8], config: &CodeConfig) -> Result<Vec<u8>> {
    let v = config.profile.insert(d)?;
    let mut x = conv_encode(&v, &config.conv);
    polar_transform_in_place(&mut x);
    Ok(x)
}

fn check_code_length(n: usize) -> Result<()> {
    if n < 2 || !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(n));
    }
    Ok(())
}

pub(crate) fn check_bits(bits: &[u8]) -> Result<()> {
    match bits.iter().position(|&b| b > 1) {
        Some(index) => Err(Error::NotABit { index }),
        None => Ok(()),
    }
}
