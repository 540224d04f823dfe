//! The cellular automaton engine against brute-force evaluation.

use std::collections::HashSet;

use proptest::prelude::*;
use revca_core::ca::{
    invert, is_injective, is_surjective, periodic_words, Alphabet, LocalRule1D, PeriodicConfig,
    Sidedness, WindowConfig, CA,
};

fn arb_ca() -> impl Strategy<Value = CA> {
    (2usize..=3, -1i32..=1, 0i32..=2).prop_flat_map(|(q, lo, extra)| {
        let hi = (lo + extra).min(1);
        let size = q.pow((hi - lo + 1) as u32);
        prop::collection::vec(0..q as u8, size).prop_map(move |t| {
            CA::two_sided(LocalRule1D::new(Alphabet::numeric(q), lo, hi, t).unwrap())
        })
    })
}

fn arb_pair() -> impl Strategy<Value = (CA, CA, Vec<u8>)> {
    (2usize..=3).prop_flat_map(|q| {
        let rule = (-1i32..=1, 0i32..=1).prop_flat_map(move |(lo, w)| {
            let hi = lo + w;
            prop::collection::vec(0..q as u8, q.pow((w + 1) as u32)).prop_map(move |t| {
                CA::two_sided(LocalRule1D::new(Alphabet::numeric(q), lo, hi, t).unwrap())
            })
        });
        (rule.clone(), rule, prop::collection::vec(0..q as u8, 1..9))
    })
}

fn words(q: usize, len: usize) -> Vec<Vec<u8>> {
    periodic_words(q, len).filter(|w| w.len() == len).collect()
}

fn has_periodic_collision(f: &CA, max_period: usize) -> bool {
    (1..=max_period).any(|p| {
        let mut seen = HashSet::new();
        words(f.alphabet().len(), p)
            .into_iter()
            .any(|w| !seen.insert(f.apply_periodic(&PeriodicConfig::new(w).unwrap()).unwrap()))
    })
}

/// Whether `target` has a preimage among all words of the right length.
fn has_preimage(f: &CA, target: &[u8]) -> bool {
    let w = f.rule().width();
    words(f.alphabet().len(), target.len() + w - 1)
        .into_iter()
        .any(|x| f.apply_window(&WindowConfig::new(x, 0)).unwrap().word == target)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_matches_sequential_application((f, g, word) in arb_pair()) {
        let c = PeriodicConfig::new(word).unwrap();
        let fg = f.compose(&g).unwrap();
        prop_assert_eq!(fg.apply_periodic(&c).unwrap(), f.apply_periodic(&g.apply_periodic(&c).unwrap()).unwrap());
        prop_assert_eq!(fg.canonicalize().apply_periodic(&c).unwrap(), fg.apply_periodic(&c).unwrap());
    }

    #[test]
    fn injectivity_verdicts_are_certified(f in arb_ca()) {
        let report = is_injective(&f).unwrap();
        if report.injective {
            prop_assert!(!has_periodic_collision(&f, 6));
        } else {
            let w = report.witness.unwrap();
            prop_assert!(w.verify(&f));
            let (a, b) = w.periodic_pair().unwrap();
            prop_assert_ne!(&a, &b);
            prop_assert_eq!(f.apply_periodic(&a).unwrap(), f.apply_periodic(&b).unwrap());
        }
    }

    #[test]
    fn surjectivity_verdicts_are_certified(f in arb_ca()) {
        let report = is_surjective(&f).unwrap();
        match report.orphan {
            Some(o) => {
                prop_assert!(!report.surjective);
                prop_assert!(!has_preimage(&f, &o));
            }
            None => {
                prop_assert!(report.surjective);
                for len in 1..=4 {
                    for w in words(f.alphabet().len(), len) {
                        prop_assert!(has_preimage(&f, &w));
                    }
                }
            }
        }
    }

    #[test]
    fn injective_implies_surjective(f in arb_ca()) {
        if is_injective(&f).unwrap().injective {
            prop_assert!(is_surjective(&f).unwrap().surjective);
        }
    }

    #[test]
    fn inverses_undo_on_periodic_points(f in arb_ca()) {
        if let Some(g) = invert(&f, 2).unwrap() {
            prop_assert!(is_injective(&f).unwrap().injective);
            for w in periodic_words(f.alphabet().len(), 5) {
                let c = PeriodicConfig::new(w).unwrap();
                prop_assert_eq!(g.apply_periodic(&f.apply_periodic(&c).unwrap()).unwrap(), c);
            }
        }
        if !is_injective(&f).unwrap().injective {
            prop_assert_eq!(invert(&f, 2).unwrap(), None);
        }
    }

    #[test]
    fn windows_agree_with_periodic_points(f in arb_ca(), word in prop::collection::vec(0u8..2, 1..7)) {
        let c = PeriodicConfig::new(word.clone()).unwrap();
        let image = f.apply_periodic(&c).unwrap();
        let p = word.len() as i64;
        let unrolled: Vec<u8> = (-4..p + 4).map(|i| word[i.rem_euclid(p) as usize]).collect();
        let win = f.apply_window(&WindowConfig::new(unrolled, -4)).unwrap();
        for i in win.base..=win.end() {
            prop_assert_eq!(win.at(i).unwrap(), image.word[i.rem_euclid(p) as usize]);
        }
    }
}

#[test]
fn one_sided_shift_is_not_invertible_one_sided() {
    let shift = CA::shift(Alphabet::numeric(2), Sidedness::One);
    assert_eq!(invert(&shift, 3).unwrap(), None);
    let two = CA::shift(Alphabet::numeric(2), Sidedness::Two);
    let inv = invert(&two, 3).unwrap().unwrap();
    assert_eq!((inv.rule().lo(), inv.rule().hi()), (-1, -1));
}
