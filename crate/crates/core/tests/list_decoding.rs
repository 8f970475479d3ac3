mod common;

use common::{close, direct_sc, noisy_frame, random_bits, rng, saturated};
use pac_core::{
    conv_encode, decode_list, forced_path_metric, pac_encode, polar_transform, prune, CodeConfig,
    PacDecoder, Variant,
};
use proptest::prelude::*;

fn small_code() -> CodeConfig {
    CodeConfig::from_parts(8, &[3, 5, 6, 7], &[1, 1, 1]).unwrap()
}

/// Exhaustive search over every message of a short code.
fn ml_by_enumeration(llr: &[f64], code: &CodeConfig) -> (Vec<u8>, f64) {
    let k = code.info_len();
    let mut best: Option<(Vec<u8>, f64)> = None;
    for m in 0..(1u32 << k) {
        let d: Vec<u8> = (0..k).map(|i| ((m >> (k - 1 - i)) & 1) as u8).collect();
        let v = code.profile().insert(&d).unwrap();
        let pm = forced_path_metric(llr, &v, code).unwrap();
        if best.as_ref().is_none_or(|(_, b)| pm < *b) {
            best = Some((d, pm));
        }
    }
    best.unwrap()
}

#[test]
fn full_list_finds_enumeration_argmin() {
    let code = small_code();
    let mut r = rng(21);
    for _ in 0..1000 {
        let (_, llr) = noisy_frame(&mut r, &code, 0.0);
        let out = decode_list(&llr, &code, 16).unwrap();
        let (_, best) = ml_by_enumeration(&llr, &code);
        assert!(close(out.pm, best));
        let v = code.profile().insert(&out.bits).unwrap();
        assert!(close(forced_path_metric(&llr, &v, &code).unwrap(), best));
    }
}

#[test]
fn winner_metric_matches_forced_metric() {
    let code = CodeConfig::rm(32, 16, &[1, 0, 1, 1, 0, 1, 1]).unwrap();
    let mut r = rng(22);
    for l in [1, 2, 4, 8] {
        for _ in 0..200 {
            let (_, llr) = noisy_frame(&mut r, &code, 1.0);
            let out = decode_list(&llr, &code, l).unwrap();
            for s in &out.survivors {
                assert!(close(forced_path_metric(&llr, &s.v, &code).unwrap(), s.pm));
            }
        }
    }
}

#[test]
fn list_of_one_is_plain_sc() {
    let mut r = rng(23);
    for (n, k) in [(8, 4), (64, 32), (128, 64), (128, 96)] {
        let code = CodeConfig::rm(n, k, &[1, 0, 1, 1, 0, 1, 1]).unwrap();
        for _ in 0..300 {
            let (_, llr) = noisy_frame(&mut r, &code, 1.0);
            let out = decode_list(&llr, &code, 1).unwrap();
            let (v, pm) = direct_sc(&llr, &code);
            assert_eq!(out.survivors[0].v, v);
            assert!(close(out.pm, pm));
        }
    }
}

#[test]
fn survivors_are_self_consistent() {
    let code = CodeConfig::rm(64, 32, &[1, 0, 1, 1, 0, 1, 1]).unwrap();
    let mut r = rng(24);
    for variant in Variant::ALL {
        let mut dec = PacDecoder::new(code.clone(), 8, variant).unwrap();
        for _ in 0..100 {
            let (_, llr) = noisy_frame(&mut r, &code, 1.5);
            let out = dec.decode(&llr).unwrap();
            assert_eq!(out.survivors.len(), 8);
            for s in &out.survivors {
                assert_eq!(s.u, conv_encode(&s.v, code.conv()));
                assert_eq!(s.x, polar_transform(&s.u).unwrap());
                let mut reg = pac_core::ShiftRegister::zero(code.memory());
                for &bit in &s.v {
                    reg = pac_core::conv_bit_enc(bit, reg, code.conv()).1;
                }
                assert_eq!(s.register, reg);
                assert!((0..64).all(|i| !code.profile().is_frozen(i) || s.v[i] == 0));
            }
            let best = out.survivors.iter().map(|s| s.pm).fold(f64::INFINITY, f64::min);
            assert_eq!(out.pm, best);
            assert_eq!(out.bits.len(), 32);
        }
    }
}

#[test]
fn larger_lists_never_lose_on_metric() {
    let code = CodeConfig::rm(64, 32, &[1, 0, 1, 1, 0, 1, 1]).unwrap();
    let mut r = rng(25);
    for _ in 0..300 {
        let (_, llr) = noisy_frame(&mut r, &code, 1.0);
        let mut prev = f64::INFINITY;
        for l in [1, 2, 4, 8, 16, 32] {
            let pm = decode_list(&llr, &code, l).unwrap().pm;
            assert!(pm <= prev + 1e-9 * prev.max(1.0), "L = {l}: {pm} > {prev}");
            prev = pm;
        }
    }
}

#[test]
fn noiseless_loopback_all_variants() {
    let mut r = rng(26);
    for (n, k) in [(8, 4), (64, 32), (128, 64), (256, 128)] {
        let code = CodeConfig::rm(n, k, &[1, 0, 1, 1, 0, 1, 1]).unwrap();
        for variant in Variant::ALL {
            for l in [1, 4] {
                let mut dec = PacDecoder::new(code.clone(), l, variant).unwrap();
                for _ in 0..20 {
                    let d = random_bits(&mut r, k);
                    let x = pac_encode(&d, &code).unwrap();
                    let out = dec.decode(&saturated(&x)).unwrap();
                    assert_eq!(out.bits, d, "{variant} L={l} ({n},{k})");
                    assert_eq!(out.pm, 0.0);
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn pruning_keeps_a_minimal_set(pms in proptest::collection::vec(0.0f64..10.0, 1..32), l in 1usize..16) {
        let indexed: Vec<(usize, f64)> = pms.iter().copied().enumerate().collect();
        let kept = prune(indexed.clone(), l, |x| x.1);
        prop_assert_eq!(kept.len(), l.min(pms.len()));
        let worst_kept = kept.iter().map(|x| x.1).fold(f64::NEG_INFINITY, f64::max);
        for item in &indexed {
            if !kept.contains(item) {
                prop_assert!(item.1 >= worst_kept);
            }
        }
        // ascending, and equal metrics keep input order
        for w in kept.windows(2) {
            prop_assert!(w[0].1 < w[1].1 || (w[0].1 == w[1].1 && w[0].0 < w[1].0));
        }
    }
}
