//! The two-sided conveyor-belt automata over `{#} ∪ A²`, `A = {1..5}`.

use std::sync::{Arc, OnceLock};

use super::ConstructionError;
use crate::ca::{invert, Alphabet, LocalRule1D, PeriodicConfig, CA};
use crate::perm::Perm;
use crate::wreath::{act_tuple, BroomToken, BroomWord};

pub const HASH: u8 = 0;

/// `"#"` followed by the 25 pairs `"(a,b)"`, `a` major.
pub fn conveyor_alphabet() -> Arc<Alphabet> {
    static ALPHABET: OnceLock<Arc<Alphabet>> = OnceLock::new();
    ALPHABET
        .get_or_init(|| {
            let mut names = vec!["#".to_string()];
            for a in 1..=5 {
                for b in 1..=5 {
                    names.push(format!("({a},{b})"));
                }
            }
            Alphabet::new(names).expect("conveyor alphabet")
        })
        .clone()
}

/// Symbol index of the pair `(a, b)`, `a, b ∈ 1..=5`.
pub fn pair_symbol(a: u8, b: u8) -> u8 {
    debug_assert!((1..=5).contains(&a) && (1..=5).contains(&b));
    1 + (a - 1) * 5 + (b - 1)
}

/// The pair at a non-`#` symbol.
pub fn symbol_pair(s: u8) -> Option<(u8, u8)> {
    if s == HASH || s > 25 {
        return None;
    }
    Some(((s - 1) / 5 + 1, (s - 1) % 5 + 1))
}

/// `ψ`: tops left to right, then bottoms right to left.
pub fn encode(pairs: &[(u8, u8)]) -> Vec<u8> {
    pairs
        .iter()
        .map(|p| p.0)
        .chain(pairs.iter().rev().map(|p| p.1))
        .collect()
}

/// `ψ⁻¹`.
pub fn decode(word: &[u8]) -> Result<Vec<(u8, u8)>, ConstructionError> {
    if !word.len().is_multiple_of(2) {
        return Err(ConstructionError::OddLength(word.len()));
    }
    let n = word.len() / 2;
    Ok((0..n).map(|i| (word[i], word[2 * n - 1 - i])).collect())
}

/// The action of a broom word on a block of pairs, conjugated through `ψ`.
pub fn abstract_conveyor_act(
    word: &BroomWord,
    pairs: &[(u8, u8)],
) -> Result<Vec<(u8, u8)>, ConstructionError> {
    if pairs.is_empty() {
        return Ok(Vec::new());
    }
    let tuple: Vec<u8> = encode(pairs).iter().map(|&m| m - 1).collect();
    let out: Vec<u8> = act_tuple(word, &tuple)?.iter().map(|&m| m + 1).collect();
    decode(&out)
}

fn act(a: &Perm, m: u8) -> u8 {
    a.apply((m - 1) as usize) as u8 + 1
}

/// `f_a`: a `#` followed by a pair acts with `a` on the pair's top entry.
pub fn build_fa(a: &Perm) -> Result<CA, ConstructionError> {
    if a.degree() != 5 || !a.is_even() {
        return Err(ConstructionError::NotInA5(*a));
    }
    let a = *a;
    let rule = LocalRule1D::from_fn(conveyor_alphabet(), -1, 0, move |w| {
        match (w[0], symbol_pair(w[1])) {
            (HASH, Some((b, c))) => pair_symbol(act(&a, b), c),
            _ => w[1],
        }
    })?;
    Ok(CA::two_sided(rule))
}

/// `f_↻`: the conveyor-belt rotation.
pub fn build_frot() -> CA {
    static FROT: OnceLock<CA> = OnceLock::new();
    FROT.get_or_init(|| {
        let rule = LocalRule1D::from_fn(conveyor_alphabet(), -1, 1, |w| {
            let Some((c, d)) = symbol_pair(w[1]) else {
                return HASH;
            };
            match (symbol_pair(w[0]), symbol_pair(w[2])) {
                (None, None) => pair_symbol(d, c),
                (None, Some((e, _))) => pair_symbol(e, c),
                (Some((_, b)), None) => pair_symbol(d, b),
                (Some((_, b)), Some((e, _))) => pair_symbol(e, b),
            }
        })
        .expect("rotation rule");
        CA::two_sided(rule)
    })
    .clone()
}

/// The inverse of `f_↻`, found by search and cached.
pub fn frot_inverse() -> Result<CA, ConstructionError> {
    static INV: OnceLock<Option<CA>> = OnceLock::new();
    INV.get_or_init(|| invert(&build_frot(), 2).ok().flatten())
        .clone()
        .ok_or(ConstructionError::NoInverse)
}

/// The automaton of a single broom generator.
pub fn generator_ca(tok: &BroomToken) -> Result<CA, ConstructionError> {
    match tok {
        BroomToken::Perm(a) => build_fa(a),
        BroomToken::Rot => Ok(build_frot()),
        BroomToken::RotInv => frot_inverse(),
    }
}

/// Evaluates the automata of `word` on `c` and compares every `#`-delimited
/// block with the abstract action.
pub fn check_two_sided(word: &BroomWord, c: &PeriodicConfig) -> Result<bool, ConstructionError> {
    let hashes: Vec<usize> = c
        .word
        .iter()
        .enumerate()
        .filter(|(_, &s)| s == HASH)
        .map(|(i, _)| i)
        .collect();
    if hashes.is_empty() {
        return Err(ConstructionError::NoHash);
    }
    if c.word
        .iter()
        .any(|&s| s as usize >= conveyor_alphabet().len())
    {
        return Err(ConstructionError::Ca(crate::ca::CaError::SymbolOutOfRange(
            *c.word.iter().max().expect("nonempty"),
        )));
    }
    let mut out = c.clone();
    for tok in word.letters().iter().rev() {
        out = generator_ca(tok)?.apply_periodic(&out)?;
    }
    let p = c.word.len();
    for (k, &h) in hashes.iter().enumerate() {
        if out.word[h] != HASH {
            return Ok(false);
        }
        let next = if k + 1 < hashes.len() {
            hashes[k + 1]
        } else {
            hashes[0] + p
        };
        let block: Vec<(u8, u8)> = (h + 1..next)
            .map(|i| symbol_pair(c.word[i % p]).expect("pair"))
            .collect();
        let expected = abstract_conveyor_act(word, &block)?;
        for (offset, &pair) in expected.iter().enumerate() {
            let i = (h + 1 + offset) % p;
            if symbol_pair(out.word[i]) != Some(pair) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A periodic configuration `# b₁ # b₂ …` from blocks of pairs.
pub fn hash_config(blocks: &[Vec<(u8, u8)>]) -> PeriodicConfig {
    let mut word = Vec::new();
    for b in blocks {
        word.push(HASH);
        word.extend(b.iter().map(|&(x, y)| pair_symbol(x, y)));
    }
    PeriodicConfig { word }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ca::{is_injective, Sidedness};
    use crate::perm::a5_generators;
    use crate::wreath::parse_broom;

    fn perm(s: &str) -> Perm {
        Perm::parse_cycles(s, 5).unwrap()
    }

    #[test]
    fn alphabet_layout() {
        let a = conveyor_alphabet();
        assert_eq!(a.len(), 26);
        assert_eq!(a.name(HASH), "#");
        assert_eq!(a.name(pair_symbol(2, 4)), "(2,4)");
        for s in 1..26 {
            let (x, y) = symbol_pair(s).unwrap();
            assert_eq!(pair_symbol(x, y), s);
        }
    }

    #[test]
    fn codec() {
        assert_eq!(encode(&[(1, 2), (3, 4)]), vec![1, 3, 4, 2]);
        assert_eq!(encode(&[(3, 5)]), vec![3, 5]);
        assert!(decode(&[1, 2, 3]).is_err());
        let mut words = vec![vec![]];
        for _ in 0..3 {
            words = words
                .iter()
                .flat_map(|w: &Vec<(u8, u8)>| {
                    (1..=5).flat_map(move |a| {
                        (1..=5).map({
                            let w = w.clone();
                            move |b| {
                                let mut v = w.clone();
                                v.push((a, b));
                                v
                            }
                        })
                    })
                })
                .collect();
            for w in &words {
                assert_eq!(&decode(&encode(w)).unwrap(), w);
            }
        }
    }

    #[test]
    fn abstract_action_examples() {
        let rot = parse_broom("rot").unwrap();
        assert_eq!(
            abstract_conveyor_act(&rot, &[(1, 2), (3, 4)]).unwrap(),
            vec![(3, 1), (4, 2)]
        );
        assert_eq!(
            abstract_conveyor_act(&rot, &[(3, 4)]).unwrap(),
            vec![(4, 3)]
        );
        let a = perm("(1 2 3)");
        let w = BroomWord::letter(BroomToken::Perm(a));
        assert_eq!(
            abstract_conveyor_act(&w, &[(2, 5), (1, 1)]).unwrap(),
            vec![(3, 5), (1, 1)]
        );
    }

    #[test]
    fn conveyor_rotation_pattern() {
        // general n: tops shift left, the first bottom climbs, bottoms shift right
        let rot = parse_broom("rot").unwrap();
        for n in 1..=4u8 {
            let block: Vec<(u8, u8)> = (0..n).map(|i| (1 + i % 5, 5 - i % 5)).collect();
            let got = abstract_conveyor_act(&rot, &block).unwrap();
            let mut want = Vec::new();
            for i in 0..n as usize {
                let top = if i + 1 < n as usize {
                    block[i + 1].0
                } else {
                    block[i].1
                };
                let bottom = if i == 0 { block[0].0 } else { block[i - 1].1 };
                want.push((top, bottom));
            }
            assert_eq!(got, want, "n = {n}");
        }
    }

    #[test]
    fn local_rule_examples() {
        let a = perm("(1 2 3 4 5)");
        let fa = build_fa(&a).unwrap();
        let r = fa.rule();
        assert_eq!((r.lo(), r.hi()), (-1, 0));
        assert_eq!(r.eval(&[HASH, pair_symbol(2, 4)]), pair_symbol(3, 4));
        assert_eq!(
            r.eval(&[pair_symbol(1, 1), pair_symbol(2, 4)]),
            pair_symbol(2, 4)
        );
        assert_eq!(r.eval(&[HASH, HASH]), HASH);
        assert!(build_fa(&perm("(1 2)")).is_err());
        let f = build_frot();
        let r = f.rule();
        assert_eq!((r.lo(), r.hi()), (-1, 1));
        assert_eq!(
            r.eval(&[pair_symbol(1, 2), pair_symbol(3, 4), pair_symbol(5, 1)]),
            pair_symbol(5, 2)
        );
        assert_eq!(r.eval(&[HASH, pair_symbol(3, 4), HASH]), pair_symbol(4, 3));
        assert_eq!(
            r.eval(&[HASH, pair_symbol(3, 4), pair_symbol(5, 1)]),
            pair_symbol(5, 3)
        );
        assert_eq!(
            r.eval(&[pair_symbol(1, 2), pair_symbol(3, 4), HASH]),
            pair_symbol(4, 2)
        );
        assert_eq!(r.eval(&[pair_symbol(1, 2), HASH, pair_symbol(3, 4)]), HASH);
    }

    #[test]
    fn hash_positions_preserved() {
        let [s, t] = a5_generators();
        let gens = [build_fa(&s).unwrap(), build_fa(&t).unwrap(), build_frot()];
        for g in &gens {
            for (i, &o) in g.rule().table().iter().enumerate() {
                let w = g.rule().width();
                let mut win = vec![0u8; w];
                let mut idx = i;
                for d in win.iter_mut().rev() {
                    *d = (idx % 26) as u8;
                    idx /= 26;
                }
                let centre = (-g.rule().lo()) as usize;
                assert_eq!(win[centre] == HASH, o == HASH);
            }
        }
    }

    #[test]
    fn rotation_inverse() {
        let inv = frot_inverse().unwrap();
        assert!(inv.rule().lo() >= -2 && inv.rule().hi() <= 2);
        assert!(inv.compose(&build_frot()).unwrap().is_identity());
        assert_eq!(inv.sided(), Sidedness::Two);
        assert!(
            is_injective(&build_fa(&perm("(1 2 3)")).unwrap())
                .unwrap()
                .injective
        );
    }

    #[test]
    fn two_sided_examples() {
        let c = hash_config(&[vec![(1, 2), (3, 4)]]);
        assert!(check_two_sided(&BroomWord::empty(), &c).unwrap());
        assert!(check_two_sided(&parse_broom("p:(1 2 3) p:(1 3 2)").unwrap(), &c).unwrap());
        assert!(check_two_sided(&parse_broom("rot").unwrap(), &c).unwrap());
        let out = build_frot().apply_periodic(&c).unwrap();
        assert_eq!(out.word, vec![HASH, pair_symbol(3, 1), pair_symbol(4, 2)]);
        let c = hash_config(&[vec![(1, 2), (3, 4), (5, 5)], vec![], vec![(2, 1)]]);
        assert!(check_two_sided(
            &parse_broom("rot' p:(1 2 3 4 5) rot rot [rot, p:(1 2 3)]").unwrap(),
            &c
        )
        .unwrap());
        assert!(
            check_two_sided(&BroomWord::empty(), &PeriodicConfig { word: vec![1, 2] }).is_err()
        );
    }
}
