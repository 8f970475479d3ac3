#![allow(dead_code)]

use pac_core::kernel::{f_op, g_op, hard_bit};
use pac_core::{conv_bit_enc, pac_encode, CodeConfig, ShiftRegister};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_bits(rng: &mut impl Rng, len: usize) -> Vec<u8> {
    (0..len).map(|_| rng.gen_range(0..2u8)).collect()
}

/// Encodes random data, sends it over BPSK/AWGN at `ebn0_db`, returns (d, llr).
pub fn noisy_frame(rng: &mut impl Rng, code: &CodeConfig, ebn0_db: f64) -> (Vec<u8>, Vec<f64>) {
    let d = random_bits(rng, code.info_len());
    let x = pac_encode(&d, code).unwrap();
    let rate = code.rate().max(1.0 / code.len() as f64);
    let sigma2 = 1.0 / (2.0 * rate * 10f64.powf(ebn0_db / 10.0));
    let sigma = sigma2.sqrt();
    let llr = x
        .iter()
        .map(|&b| {
            let s = if b == 0 { 1.0 } else { -1.0 };
            let n: f64 = rng.sample(StandardNormal);
            2.0 * (s + sigma * n) / sigma2
        })
        .collect();
    (d, llr)
}

pub fn saturated(x: &[u8]) -> Vec<f64> {
    x.iter().map(|&b| if b == 0 { 20.0 } else { -20.0 }).collect()
}

/// Plain successive-cancellation decoder of a PAC code, written directly on
/// slices with no list machinery. Returns (v, accumulated penalty).
pub fn direct_sc(llr: &[f64], code: &CodeConfig) -> (Vec<u8>, f64) {
    struct St<'a> {
        code: &'a CodeConfig,
        reg: ShiftRegister,
        v: Vec<u8>,
        pm: f64,
    }
    fn node(a: &[f64], st: &mut St) -> Vec<u8> {
        if a.len() == 1 {
            let i = st.v.len();
            let v = if st.code.profile().is_frozen(i) {
                0
            } else {
                // pick the branch whose u agrees with the LLR
                let (u0, _) = conv_bit_enc(0, st.reg, st.code.conv());
                if u0 == hard_bit(a[0]) { 0 } else { 1 }
            };
            let (u, next) = conv_bit_enc(v, st.reg, st.code.conv());
            if u != hard_bit(a[0]) {
                st.pm += a[0].abs();
            }
            st.reg = next;
            st.v.push(v);
            return vec![u];
        }
        let h = a.len() / 2;
        let l: Vec<f64> = (0..h).map(|i| f_op(a[i], a[i + h])).collect();
        let bl = node(&l, st);
        let r: Vec<f64> = (0..h).map(|i| g_op(a[i], a[i + h], bl[i])).collect();
        let br = node(&r, st);
        let mut out: Vec<u8> = bl.iter().zip(&br).map(|(x, y)| x ^ y).collect();
        out.extend(br);
        out
    }
    let mut st = St {
        code,
        reg: ShiftRegister::zero(code.memory()),
        v: Vec::new(),
        pm: 0.0,
    };
    node(llr, &mut st);
    (st.v, st.pm)
}

/// Convolution as a product with the upper-triangular Toeplitz matrix.
pub fn toeplitz_encode(v: &[u8], c: &[u8]) -> Vec<u8> {
    let n = v.len();
    (0..n)
        .map(|j| {
            (0..=j)
                .filter(|&i| j - i < c.len())
                .fold(0u8, |acc, i| acc ^ (v[i] & c[j - i]))
        })
        .collect()
}

pub fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
}
