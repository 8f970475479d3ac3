use pac_core::{rm_profile, total_time_steps, RateProfile, Variant};
use proptest::prelude::*;

/// (N, K, L, list, fast3, fast4)
const PUBLISHED: [(usize, usize, usize, usize, usize, usize); 11] = [
    (128, 32, 4, 286, 75, 72),
    (128, 32, 64, 286, 81, 78),
    (128, 64, 4, 318, 143, 108),
    (128, 64, 16, 318, 152, 132),
    (128, 64, 64, 318, 152, 132),
    (128, 64, 256, 318, 152, 132),
    (128, 96, 4, 350, 145, 86),
    (128, 96, 64, 350, 179, 150),
    (256, 128, 4, 638, 233, 163),
    (256, 128, 16, 638, 267, 215),
    (256, 128, 64, 638, 268, 231),
];

#[test]
fn reproduces_published_totals() {
    for (n, k, l, list, fast3, fast4) in PUBLISHED {
        let p = rm_profile(n, k).unwrap();
        let got: Vec<usize> = Variant::ALL
            .iter()
            .map(|&v| total_time_steps(&p, l, v).unwrap().total)
            .collect();
        assert_eq!(got, [list, fast3, fast4], "PAC({n},{k}) L={l}");
    }
}

fn profile() -> impl Strategy<Value = RateProfile> {
    (1u32..=9).prop_flat_map(|n| {
        let len = 1usize << n;
        proptest::collection::vec(any::<bool>(), len).prop_map(move |info| {
            let set: Vec<usize> = (0..len).filter(|&i| info[i]).collect();
            RateProfile::from_info_set(len, &set).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn fast_variants_never_slower(p in profile(), l in 1usize..300) {
        let t = |v| total_time_steps(&p, l, v).unwrap().total;
        prop_assert!(t(Variant::Fast4) <= t(Variant::Fast3));
        prop_assert!(t(Variant::Fast3) <= t(Variant::List));
        prop_assert_eq!(t(Variant::List), 2 * p.len() - 2 + p.info_len());
    }

    #[test]
    fn totals_grow_with_list_size_then_settle(p in profile()) {
        for v in [Variant::Fast3, Variant::Fast4] {
            let mut prev = 0;
            for l in 1..=p.len() + 1 {
                let t = total_time_steps(&p, l, v).unwrap().total;
                prop_assert!(t >= prev);
                prev = t;
            }
            let settled = total_time_steps(&p, p.len() + 1, v).unwrap().total;
            prop_assert_eq!(total_time_steps(&p, 4 * p.len(), v).unwrap().total, settled);
        }
    }
}
