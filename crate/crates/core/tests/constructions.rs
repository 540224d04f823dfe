//! The concrete automata against direct evaluation.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use revca_core::ca::{periodic_words, render_spacetime, Start, WindowConfig};
use revca_core::constructions::{
    abstract_conveyor_act, build_drive, check_one_sided, check_two_sided, decode, driver_column,
    encode, hash_config, onesided_alphabet, OneSidedSetup, CONTROLS, STATES,
};
use revca_core::perm::{CommutatorTable, GroupTable, Perm};
use revca_core::wreath::{parse_broom, parse_xbroom, pi_build, CylinderSpec, Word, XToken};

/// Columns of the driver read off by iterating windows over every prefix.
fn brute_language(len: usize) -> BTreeSet<Vec<u8>> {
    let drive = build_drive();
    let need = 1 + 2 * (len - 1);
    let q = onesided_alphabet().len();
    periodic_words(q, need)
        .filter(|w| w.len() == need && w[0] >= STATES)
        .map(|prefix| {
            let mut win = WindowConfig::new(prefix, 0);
            let mut col = Vec::new();
            for _ in 0..len {
                col.push(win.at(0).unwrap() - STATES);
                win = drive.apply_window(&win).unwrap();
            }
            col
        })
        .collect()
}

#[test]
fn trace_languages_match_brute_force() {
    let setup = OneSidedSetup::global().unwrap();
    for len in 1..=4 {
        assert_eq!(
            setup.language(len).unwrap().words,
            brute_language(len),
            "length {len}"
        );
    }
}

#[test]
fn trace_witnesses_reproduce_their_words() {
    let setup = OneSidedSetup::global().unwrap();
    let lang = setup.language(5).unwrap();
    for (w, prefix) in &lang.witnesses {
        let col: Vec<u8> = driver_column(prefix, 0, 4)
            .unwrap()
            .iter()
            .map(|s| s - STATES)
            .collect();
        assert_eq!(&col, w);
    }
    assert_eq!(lang.witnesses.len(), lang.words.len());
}

#[test]
fn diagram_column_is_the_driver_column() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let q = onesided_alphabet().len() as u8;
    let prefix: Vec<u8> = (0..50).map(|_| rng.gen_range(0..q)).collect();
    let d = render_spacetime(
        &build_drive(),
        &Start::Window(WindowConfig::new(prefix.clone(), 0)),
        20,
    )
    .unwrap();
    assert_eq!((d.width(), d.height()), (12, 20));
    assert_eq!(d.column(0).unwrap(), driver_column(&prefix, 0, 19).unwrap());
}

#[test]
fn conveyor_matches_abstract_action_on_long_blocks() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let words = [
        "rot rot p:(1 2 3) rot'",
        "p:(1 2 3 4 5) rot' rot' rot' p:(1 3)(2 4)",
        "rot rot rot rot rot",
    ];
    for text in words {
        let w = parse_broom(text).unwrap();
        for _ in 0..50 {
            let blocks: Vec<Vec<(u8, u8)>> = (0..3)
                .map(|_| {
                    (0..rng.gen_range(0..6))
                        .map(|_| (rng.gen_range(1..=5), rng.gen_range(1..=5)))
                        .collect()
                })
                .collect();
            assert!(
                check_two_sided(&w, &hash_config(&blocks)).unwrap(),
                "{text}"
            );
        }
    }
    let pairs = [(1, 2), (3, 4), (5, 1)];
    assert_eq!(decode(&encode(&pairs)).unwrap(), pairs);
    let once = abstract_conveyor_act(&parse_broom("rot").unwrap(), &pairs).unwrap();
    assert_eq!(
        abstract_conveyor_act(&parse_broom("rot'").unwrap(), &once).unwrap(),
        pairs
    );
}

#[test]
fn commuting_reads_are_identities() {
    let w = parse_xbroom(
        "p@0:(1 2 3) p@1:(1 2 3 4 5) p@0:(1 3 2) p@1:(1 5 4 3 2)",
        CONTROLS,
    )
    .unwrap();
    let v = OneSidedSetup::global().unwrap().check(&w).unwrap();
    assert!(v.ca_identity && v.abstract_identity);
    let w = parse_xbroom(
        "p@0:(1 2 3) rot p@0:(1 2 3 4 5) rot' p@0:(1 3 2) rot p@0:(1 5 4 3 2) rot'",
        CONTROLS,
    )
    .unwrap();
    let v = OneSidedSetup::global().unwrap().check(&w).unwrap();
    assert!(!v.ca_identity && !v.abstract_identity);
}

#[test]
fn cylinders_outside_the_subshift_act_trivially() {
    let setup = OneSidedSetup::global().unwrap();
    let lang = setup.language(2).unwrap();
    let missing: Vec<Vec<u8>> = (0..CONTROLS)
        .flat_map(|a| (0..CONTROLS).map(move |b| vec![a, b]))
        .filter(|u| !lang.words.contains(u))
        .collect();
    assert!(!missing.is_empty());
    let table = CommutatorTable::new(&GroupTable::a5());
    let g = Perm::parse_cycles("(1 2 3)", 5).unwrap();
    for u in missing {
        let w = pi_build(
            &CylinderSpec {
                g,
                i: 0,
                w: u.clone(),
            },
            &table,
        )
        .unwrap();
        let v = setup.check(&w).unwrap();
        assert!(v.ca_identity && v.abstract_identity, "{u:?}");
    }
    let present = lang.words.iter().next().unwrap().clone();
    let w = pi_build(
        &CylinderSpec {
            g,
            i: 0,
            w: present,
        },
        &table,
    )
    .unwrap();
    assert!(!setup.check(&w).unwrap().abstract_identity);
}

#[test]
fn law_words_are_one_sided_identities() {
    let g = Word::new(vec![
        XToken::Rot,
        XToken::PermAt(Perm::parse_cycles("(1 2 3)", 5).unwrap(), 0),
    ]);
    let h = parse_xbroom("p@1:(1 2 3 4 5)", CONTROLS).unwrap();
    let law = Word::commutator(&g, &h).pow(30);
    assert!(check_one_sided(&law).unwrap());
    assert!(
        OneSidedSetup::global()
            .unwrap()
            .check(&law)
            .unwrap()
            .ca_identity
    );
}
