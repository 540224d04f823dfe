//! The action of located words on pairs `(y, x)` of a state and a two-sided
//! point, exact cocycle representations, and cylinder permutations.

use std::collections::{BTreeSet, HashMap};

use super::quotient::WreathError;
use super::word::{rot_power, Word, XBroomWord, XToken};
use crate::par::*;
use crate::perm::{CommutatorTable, Perm};

/// A pair `(y, x)` where only `x[base .. base+len)` is known. `pos` is the net
/// shift applied so far: the current point reads `x'ᵢ = x[pos + i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointedSample {
    pub y: u8,
    window: Vec<u8>,
    base: i64,
    pos: i64,
}

impl PointedSample {
    pub fn new(y: u8, window: Vec<u8>, base: i64) -> PointedSample {
        PointedSample {
            y,
            window,
            base,
            pos: 0,
        }
    }

    pub fn window(&self) -> &[u8] {
        &self.window
    }

    pub fn base(&self) -> i64 {
        self.base
    }

    /// Net shift applied since construction.
    pub fn shift(&self) -> i64 {
        self.pos
    }

    /// How far the origin may still move left and right before a read at
    /// offset 0 falls outside the window.
    pub fn budget(&self) -> (i64, i64) {
        (
            self.pos - self.base,
            self.base + self.window.len() as i64 - 1 - self.pos,
        )
    }

    /// The symbol of the original point at absolute coordinate `i`.
    pub fn original(&self, i: i64) -> Option<u8> {
        let k = i - self.base;
        if k < 0 {
            return None;
        }
        self.window.get(k as usize).copied()
    }

    /// The current point's symbol at `offset`.
    pub fn current(&self, offset: i64) -> Option<u8> {
        self.original(self.pos + offset)
    }

    /// True if the original point carries `w` at coordinates `i .. i+|w|`.
    pub fn in_cylinder(&self, i: i64, w: &[u8]) -> Option<bool> {
        let mut all = true;
        for (k, &s) in w.iter().enumerate() {
            all &= self.original(i + k as i64)? == s;
        }
        Some(all)
    }
}

/// Applies `word`, rightmost letter first.
pub fn act_pointed(
    word: &XBroomWord,
    sample: &PointedSample,
) -> Result<PointedSample, WreathError> {
    let mut s = sample.clone();
    for tok in word.letters().iter().rev() {
        match tok {
            XToken::PermAt(p, j) => {
                let sym = s
                    .current(0)
                    .ok_or(WreathError::BudgetExhausted { offset: s.pos })?;
                if sym == *j {
                    s.y = p.apply(s.y as usize) as u8;
                }
            }
            XToken::Rot => s.pos += 1,
            XToken::RotInv => s.pos -= 1,
        }
    }
    Ok(s)
}

/// An element of the subshift-indexed group as `(y, x) ↦ (table(x)·y, σ^shift x)`
/// where `table(x)` depends only on `x` at the `support` coordinates.
///
/// The table is indexed in mixed radix over the support symbols, the first
/// support coordinate most significant. Inessential coordinates are removed,
/// so two forms over the full shift are equal iff they are identical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleForm {
    shift: i64,
    symbols: u8,
    support: Vec<i64>,
    table: Vec<Perm>,
}

impl CocycleForm {
    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn support(&self) -> &[i64] {
        &self.support
    }

    pub fn table(&self) -> &[Perm] {
        &self.table
    }

    /// Smallest `r` with the support inside `[-r, r]`.
    pub fn radius(&self) -> u64 {
        self.support
            .iter()
            .map(|i| i.unsigned_abs())
            .max()
            .unwrap_or(0)
    }

    /// Length of the smallest window holding the support (0 if empty).
    pub fn span(&self) -> usize {
        match (self.support.first(), self.support.last()) {
            (Some(a), Some(b)) => (b - a + 1) as usize,
            _ => 0,
        }
    }

    /// The permutation applied to `y` for the point `x`.
    pub fn lookup(&self, mut x: impl FnMut(i64) -> u8) -> Perm {
        let q = self.symbols as usize;
        let idx = self
            .support
            .iter()
            .fold(0usize, |acc, &i| acc * q + x(i) as usize);
        self.table[idx]
    }

    pub fn act(&self, sample: &PointedSample) -> Option<PointedSample> {
        let mut ok = true;
        let p = self.lookup(|i| match sample.current(i) {
            Some(s) => s,
            None => {
                ok = false;
                0
            }
        });
        if !ok {
            return None;
        }
        let mut out = sample.clone();
        out.y = p.apply(out.y as usize) as u8;
        out.pos += self.shift;
        Some(out)
    }

    /// True if every table entry is the identity (over the full shift).
    pub fn is_trivial_table(&self) -> bool {
        self.table.iter().all(Perm::is_identity)
    }

    /// True if `table(x)` is the identity for every point whose window at the
    /// support is drawn from `language`. Words of the language must be at least
    /// `span()` long; each is placed starting at the first support coordinate.
    pub fn is_trivial_on(&self, language: &BTreeSet<Vec<u8>>) -> bool {
        if self.support.is_empty() {
            return self.table[0].is_identity();
        }
        let start = self.support[0];
        language.iter().all(|u| {
            debug_assert!(u.len() >= self.span());
            self.lookup(|i| u[(i - start) as usize]).is_identity()
        })
    }
}

/// Net shifts at which `word` reads the point, in evaluation order.
fn read_positions(word: &XBroomWord) -> Vec<i64> {
    let mut pos = 0;
    let mut out = Vec::new();
    for tok in word.letters().iter().rev() {
        match tok {
            XToken::PermAt(..) => out.push(pos),
            XToken::Rot => pos += 1,
            XToken::RotInv => pos -= 1,
        }
    }
    out
}

/// Exact cocycle representation of `word` over a control alphabet of
/// `symbols` letters, by evaluation over every assignment of the read
/// coordinates. Cost is `symbols^k · |word|` for `k` distinct read coordinates.
pub fn cocycle_form(word: &XBroomWord, symbols: u8) -> Result<CocycleForm, WreathError> {
    for tok in word.letters() {
        if let XToken::PermAt(_, j) = tok {
            if *j >= symbols {
                return Err(WreathError::BadSymbol(*j));
            }
        }
    }
    let degree = word
        .letters()
        .iter()
        .find_map(|t| match t {
            XToken::PermAt(p, _) => Some(p.degree()),
            _ => None,
        })
        .unwrap_or(5);
    let reads: BTreeSet<i64> = read_positions(word).into_iter().collect();
    let support: Vec<i64> = reads.into_iter().collect();
    let slot: HashMap<i64, usize> = support.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let q = symbols as usize;
    let k = support.len();
    let size = q.pow(k as u32);

    // Compile to (slot, symbol, perm) steps; rotations only move the read head.
    let mut steps = Vec::new();
    let mut pos = 0i64;
    for tok in word.letters().iter().rev() {
        match tok {
            XToken::PermAt(p, j) => steps.push((slot[&pos], *j, *p)),
            XToken::Rot => pos += 1,
            XToken::RotInv => pos -= 1,
        }
    }

    let table: Vec<Perm> = (0..size)
        .into_par_iter()
        .map(|idx| {
            let mut digits = vec![0u8; k];
            let mut rest = idx;
            for d in digits.iter_mut().rev() {
                *d = (rest % q) as u8;
                rest /= q;
            }
            let mut acc = Perm::identity(degree);
            for &(s, j, p) in &steps {
                if digits[s] == j {
                    acc = p * acc;
                }
            }
            acc
        })
        .collect();

    let mut form = CocycleForm {
        shift: word.phi(),
        symbols,
        support,
        table,
    };
    trim(&mut form);
    Ok(form)
}

/// Removes every support coordinate the table does not depend on.
fn trim(form: &mut CocycleForm) {
    let q = form.symbols as usize;
    let mut k = 0;
    while k < form.support.len() {
        let n = form.support.len();
        let stride = q.pow((n - 1 - k) as u32);
        let block = stride * q;
        let inessential = form
            .table
            .chunks(block)
            .all(|chunk| (0..stride).all(|r| (1..q).all(|d| chunk[d * stride + r] == chunk[r])));
        if inessential {
            let table = form
                .table
                .chunks(block)
                .flat_map(|chunk| chunk[..stride].iter().copied())
                .collect();
            form.table = table;
            form.support.remove(k);
        } else {
            k += 1;
        }
    }
}

/// Data of a cylinder permutation `π_{g,i,w}`: apply `g` to the state iff the
/// point carries `w` at coordinates `i .. i+|w|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CylinderSpec {
    pub g: Perm,
    pub i: i64,
    pub w: Vec<u8>,
}

/// A located word acting as the cylinder permutation described by `spec`.
///
/// Single symbols conjugate `PermAt(g, w₀)` by `rot^i`. Longer words split as
/// `w = uv` with `|u| = ⌈|w|/2⌉`, decompose `g = [b, c]`, and return the
/// commutator of the words for `(b, i, u)` and `(c, i+|u|, v)`.
pub fn pi_build(
    spec: &CylinderSpec,
    commutators: &CommutatorTable,
) -> Result<XBroomWord, WreathError> {
    if spec.w.is_empty() {
        return Err(WreathError::EmptyCylinder);
    }
    if spec.w.len() == 1 {
        let conj = rot_power(spec.i, XToken::Rot);
        return Ok(conj.inverse() * Word::letter(XToken::PermAt(spec.g, spec.w[0])) * conj);
    }
    let cut = spec.w.len().div_ceil(2);
    let (b, c) = commutators.decompose(&spec.g)?;
    let left = pi_build(
        &CylinderSpec {
            g: b,
            i: spec.i,
            w: spec.w[..cut].to_vec(),
        },
        commutators,
    )?;
    let right = pi_build(
        &CylinderSpec {
            g: c,
            i: spec.i + cut as i64,
            w: spec.w[cut..].to_vec(),
        },
        commutators,
    )?;
    Ok(Word::commutator(&left, &right))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::GroupTable;
    use crate::wreath::parse::parse_xbroom;

    fn perm(s: &str) -> Perm {
        Perm::parse_cycles(s, 5).unwrap()
    }

    #[test]
    fn pointed_generators() {
        let s = PointedSample::new(0, vec![0, 1, 2], 0);
        let r = act_pointed(&parse_xbroom("rot", 3).unwrap(), &s).unwrap();
        assert_eq!((r.y, r.shift()), (0, 1));
        assert_eq!(r.current(0), Some(1));
        let miss = act_pointed(&parse_xbroom("p@1:(1 2 3)", 3).unwrap(), &s).unwrap();
        assert_eq!(miss, s);
        let hit = act_pointed(&parse_xbroom("p@0:(1 2 3)", 3).unwrap(), &s).unwrap();
        assert_eq!((hit.y, hit.shift()), (1, 0));
        let far = parse_xbroom("rot' rot' rot' p@0:(1 2 3) rot rot rot", 3).unwrap();
        assert_eq!(
            act_pointed(&far, &s),
            Err(WreathError::BudgetExhausted { offset: 3 })
        );
        assert_eq!(s.budget(), (0, 2));
    }

    #[test]
    fn generator_cocycles() {
        let p = perm("(1 2 3)");
        let cf = cocycle_form(&parse_xbroom("p@1:(1 2 3)", 3).unwrap(), 3).unwrap();
        assert_eq!(cf.shift(), 0);
        assert_eq!(cf.radius(), 0);
        assert_eq!(cf.support(), &[0]);
        assert_eq!(cf.table(), &[Perm::identity(5), p, Perm::identity(5)]);
        let cf = cocycle_form(&parse_xbroom("rot", 3).unwrap(), 3).unwrap();
        assert_eq!(cf.shift(), 1);
        assert!(cf.is_trivial_table());
        assert!(cf.support().is_empty());
        assert!(cocycle_form(&parse_xbroom("p@2:(1 2 3)", 3).unwrap(), 2).is_err());
    }

    #[test]
    fn cocycle_trims_cancelling_reads() {
        let w = parse_xbroom(
            "rot' p@0:(1 2 3) rot rot' p@0:(1 3 2) rot p@1:(1 2 3 4 5)",
            3,
        )
        .unwrap();
        let cf = cocycle_form(&w, 3).unwrap();
        assert_eq!(cf.support(), &[0]);
        assert_eq!(cf.radius(), 0);
        // a conjugate by a located generator keeps both reads
        let w = parse_xbroom(
            "rot' p@0:(1 2 3) rot p@1:(1 2 3 4 5) rot' p@0:(1 3 2) rot",
            3,
        )
        .unwrap();
        assert_eq!(cocycle_form(&w, 3).unwrap().support(), &[0, 1]);
    }

    #[test]
    fn cocycle_agrees_with_pointed_action() {
        let w = parse_xbroom(
            "rot p@0:(1 2 3) rot rot p@2:(1 2 3 4 5) rot' p@1:(1 4)(2 3)",
            3,
        )
        .unwrap();
        let cf = cocycle_form(&w, 3).unwrap();
        for code in 0..3usize.pow(7) {
            let mut window = vec![0u8; 7];
            let mut r = code;
            for v in window.iter_mut() {
                *v = (r % 3) as u8;
                r /= 3;
            }
            for y in 0..5 {
                let s = PointedSample::new(y, window.clone(), -3);
                assert_eq!(cf.act(&s).unwrap(), act_pointed(&w, &s).unwrap());
            }
        }
    }

    #[test]
    fn law_on_located_words() {
        let g = parse_xbroom("rot p@0:(1 2 3)", 3).unwrap();
        let h = parse_xbroom("p@1:(1 2 3 4 5) rot' p@2:(1 3 5)", 3).unwrap();
        let law = Word::commutator(&g, &h).pow(30);
        let cf = cocycle_form(&law, 3).unwrap();
        assert_eq!(cf.shift(), 0);
        assert!(cf.is_trivial_table());
        assert!(cf.support().is_empty());
    }

    #[test]
    fn pi_base_case() {
        let table = CommutatorTable::new(&GroupTable::a5());
        let g = perm("(1 2 3)");
        let w = pi_build(
            &CylinderSpec {
                g,
                i: 0,
                w: vec![2],
            },
            &table,
        )
        .unwrap();
        assert_eq!(w.letters(), &[XToken::PermAt(g, 2)]);
        let w = pi_build(
            &CylinderSpec {
                g,
                i: 2,
                w: vec![1],
            },
            &table,
        )
        .unwrap();
        for code in 0..3usize.pow(5) {
            let window: Vec<u8> = (0..5).map(|k| ((code / 3usize.pow(k)) % 3) as u8).collect();
            let s = PointedSample::new(0, window.clone(), 0);
            let out = act_pointed(&w, &s).unwrap();
            let expect = if window[2] == 1 { 1 } else { 0 };
            assert_eq!((out.y, out.shift()), (expect, 0));
        }
        assert_eq!(
            pi_build(&CylinderSpec { g, i: 0, w: vec![] }, &table),
            Err(WreathError::EmptyCylinder)
        );
    }

    #[test]
    fn pi_recursive_equals_commutator_of_parts() {
        let table = CommutatorTable::new(&GroupTable::a5());
        let b = perm("(1 2 3)");
        let c = perm("(1 2 3 4 5)");
        let whole = pi_build(
            &CylinderSpec {
                g: Perm::commutator(&b, &c),
                i: 0,
                w: vec![0, 1],
            },
            &table,
        )
        .unwrap();
        let u = pi_build(
            &CylinderSpec {
                g: b,
                i: 0,
                w: vec![0],
            },
            &table,
        )
        .unwrap();
        let v = pi_build(
            &CylinderSpec {
                g: c,
                i: 1,
                w: vec![1],
            },
            &table,
        )
        .unwrap();
        let direct = Word::commutator(&u, &v);
        assert_eq!(
            cocycle_form(&whole, 3).unwrap(),
            cocycle_form(&direct, 3).unwrap()
        );
    }
}
