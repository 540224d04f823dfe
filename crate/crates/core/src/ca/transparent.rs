//! Rules that treat a symbol class `Z` as opaque tokens: cells outside `Z`
//! see only which neighbours are in `Z`, and a cell in `Z` is moved by a
//! permutation of `Z` chosen by its non-`Z` context.
//!
//! Such rules compose over the reduced alphabet `(Σ \ Z) ∪ {★}`, which keeps
//! long compositions of small rules within table budgets.

use std::collections::HashMap;
use std::sync::Arc;

use super::rule::{decode, fill_table, increment, table_size, trim_offsets, CA};
use super::CaError;
use crate::perm::Perm;

/// All permutations of `Z` with a multiplication table.
#[derive(Debug, PartialEq, Eq)]
pub struct ClassGroup {
    perms: Vec<Perm>,
    index: HashMap<Perm, u8>,
    mul: Vec<u8>,
}

impl ClassGroup {
    fn new(n: usize) -> ClassGroup {
        let mut perms = Vec::new();
        let mut images: Vec<usize> = (0..n).collect();
        loop {
            perms.push(Perm::from_images(&images).expect("permutation"));
            if !next_permutation(&mut images) {
                break;
            }
        }
        let index: HashMap<Perm, u8> = perms
            .iter()
            .enumerate()
            .map(|(i, p)| (*p, i as u8))
            .collect();
        let mul = perms
            .iter()
            .flat_map(|a| perms.iter().map(|b| index[&(*a * *b)]).collect::<Vec<_>>())
            .collect();
        ClassGroup { perms, index, mul }
    }

    fn len(&self) -> usize {
        self.perms.len()
    }

    /// Index of `a ∘ b` (`b` first).
    fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.len() + b as usize]
    }

    fn identity(&self) -> u8 {
        0
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len())
        .rev()
        .find(|&j| v[j] > v[i - 1])
        .expect("successor");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// A rule over the reduced alphabet. Output codes below `k` are non-`Z`
/// symbols; a code `k + g` applies the `g`-th permutation of `Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassRule {
    /// reduced code of each Σ symbol (`k` for ★)
    code: Vec<u8>,
    /// Σ symbol of each reduced code below `k`
    symbols: Vec<u8>,
    /// Σ symbols of `Z`, in order
    z: Vec<u8>,
    group: Arc<ClassGroup>,
    lo: i32,
    hi: i32,
    table: Vec<u8>,
}

impl ClassRule {
    /// Reduces `f` with respect to `z`, verifying that the rule treats `z` as
    /// described above. The range is padded to contain offset 0.
    pub fn from_ca(f: &CA, z: &[u8]) -> Result<ClassRule, CaError> {
        let group = Arc::new(ClassGroup::new(z.len()));
        ClassRule::with_group(f, z, group)
    }

    /// As [`from_ca`](Self::from_ca), sharing the permutation table of `like`.
    pub fn from_ca_like(f: &CA, like: &ClassRule) -> Result<ClassRule, CaError> {
        ClassRule::with_group(f, &like.z, like.group.clone())
    }

    fn with_group(f: &CA, z: &[u8], group: Arc<ClassGroup>) -> Result<ClassRule, CaError> {
        let q = f.rule().q();
        let mut in_z = vec![false; q];
        for &s in z {
            if s as usize >= q || in_z[s as usize] {
                return Err(CaError::NotTransparent(
                    "class must be distinct symbols of the alphabet".into(),
                ));
            }
            in_z[s as usize] = true;
        }
        let symbols: Vec<u8> = (0..q as u8).filter(|&s| !in_z[s as usize]).collect();
        let k = symbols.len();
        if k + group.len() > 255 {
            return Err(CaError::NotTransparent("too many codes".into()));
        }
        let mut code = vec![k as u8; q];
        for (c, &s) in symbols.iter().enumerate() {
            code[s as usize] = c as u8;
        }
        let z_pos: HashMap<u8, usize> = z.iter().enumerate().map(|(i, &s)| (s, i)).collect();

        let canon = f.rule().canonicalize();
        let rule = canon.widen(canon.lo().min(0), canon.hi().max(0))?;
        let w = rule.width();
        let centre = (-rule.lo()) as usize;
        let r = k + 1;
        let size = table_size(r, w)?;
        const UNSET: u8 = u8::MAX;
        let mut table = vec![UNSET; size];
        // for ★ centres: image of each Z point
        let mut maps: HashMap<usize, Vec<u8>> = HashMap::new();
        let mut window = vec![0u8; w];
        loop {
            let ridx = window
                .iter()
                .fold(0usize, |acc, &s| acc * r + code[s as usize] as usize);
            let c = window[centre];
            let out = rule.eval(&window);
            if in_z[c as usize] {
                if !in_z[out as usize] {
                    return Err(CaError::NotTransparent(format!(
                        "class symbol {c} leaves the class"
                    )));
                }
                let m = maps.entry(ridx).or_insert_with(|| vec![UNSET; z.len()]);
                let slot = &mut m[z_pos[&c]];
                let img = z_pos[&out] as u8;
                if *slot != UNSET && *slot != img {
                    return Err(CaError::NotTransparent(
                        "class permutation depends on class symbols".into(),
                    ));
                }
                *slot = img;
            } else {
                if in_z[out as usize] {
                    return Err(CaError::NotTransparent(format!(
                        "symbol {c} enters the class"
                    )));
                }
                let o = code[out as usize];
                if table[ridx] != UNSET && table[ridx] != o {
                    return Err(CaError::NotTransparent(
                        "output depends on class symbols".into(),
                    ));
                }
                table[ridx] = o;
            }
            if !increment(&mut window, q) {
                break;
            }
        }
        for (ridx, m) in maps {
            let images: Vec<usize> = m.iter().map(|&i| i as usize).collect();
            let p = Perm::from_images(&images)
                .map_err(|_| CaError::NotTransparent("class map is not a permutation".into()))?;
            table[ridx] = k as u8 + group.index[&p];
        }
        debug_assert!(!table.contains(&UNSET));
        Ok(ClassRule {
            code,
            symbols,
            z: z.to_vec(),
            group,
            lo: rule.lo(),
            hi: rule.hi(),
            table,
        }
        .canonicalize())
    }

    fn k(&self) -> usize {
        self.symbols.len()
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn hi(&self) -> i32 {
        self.hi
    }

    pub fn table_len(&self) -> usize {
        self.table.len()
    }

    /// Drops edge offsets other than 0 that never affect the output.
    pub fn canonicalize(&self) -> ClassRule {
        let (lo, hi, table) =
            trim_offsets(self.table.clone(), self.k() + 1, self.lo, self.hi, Some(0));
        ClassRule {
            lo,
            hi,
            table,
            ..self.clone()
        }
    }

    pub fn is_identity(&self) -> bool {
        let k = self.k();
        self.lo == 0
            && self.hi == 0
            && (0..k).all(|c| self.table[c] == c as u8)
            && self.table[k] == k as u8 + self.group.identity()
    }

    /// `self ∘ inner` (`inner` first), canonical.
    pub fn compose(&self, inner: &ClassRule) -> Result<ClassRule, CaError> {
        if self.z != inner.z || self.symbols != inner.symbols {
            return Err(CaError::AlphabetMismatch);
        }
        let k = self.k();
        let r = k + 1;
        let wo = (self.hi - self.lo + 1) as usize;
        let wi = (inner.hi - inner.lo + 1) as usize;
        let width = wo + wi - 1;
        let size = table_size(r, width)?;
        let outer_centre = (-self.lo) as usize;
        let mut table = vec![0u8; size];
        fill_table(&mut table, r, width, |w| {
            let mut oidx = 0usize;
            let mut centre_perm = 0u8;
            for p in 0..wo {
                let ii = w[p..p + wi]
                    .iter()
                    .fold(0usize, |acc, &s| acc * r + s as usize);
                let out = inner.table[ii];
                let reduced = if (out as usize) < k { out } else { k as u8 };
                if p == outer_centre {
                    centre_perm = out;
                }
                oidx = oidx * r + reduced as usize;
            }
            let o = self.table[oidx];
            if (o as usize) < k {
                o
            } else {
                k as u8 + self.group.mul(o - k as u8, centre_perm - k as u8)
            }
        });
        Ok(ClassRule {
            lo: self.lo + inner.lo,
            hi: self.hi + inner.hi,
            table,
            ..self.clone()
        }
        .canonicalize())
    }

    /// Evaluates on the periodic point `word^∞` over the full alphabet.
    pub fn apply_periodic(&self, word: &[u8]) -> Vec<u8> {
        let k = self.k();
        let r = k + 1;
        let p = word.len() as i64;
        (0..p)
            .map(|i| {
                let idx = (self.lo..=self.hi).fold(0usize, |acc, d| {
                    acc * r
                        + self.code[word[(i + d as i64).rem_euclid(p) as usize] as usize] as usize
                });
                let o = self.table[idx];
                if (o as usize) < k {
                    self.symbols[o as usize]
                } else {
                    let g = &self.group.perms[(o as usize) - k];
                    let zi = self
                        .z
                        .iter()
                        .position(|&s| s == word[i as usize])
                        .expect("class symbol");
                    self.z[g.apply(zi)]
                }
            })
            .collect()
    }

    /// The reduced window table decoded, for inspection: `(window, code)`.
    pub fn entries(&self) -> impl Iterator<Item = (Vec<u8>, u8)> + '_ {
        let r = self.k() + 1;
        let w = (self.hi - self.lo + 1) as usize;
        self.table.iter().enumerate().map(move |(i, &o)| {
            let mut win = vec![0u8; w];
            decode(i, r, &mut win);
            (win, o)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ca::order::periodic_words;
    use crate::ca::rule::{Alphabet, LocalRule1D};

    /// Σ = {0,1,2,3,4}, Z = {2,3,4}. Cells in Z rotate when their right
    /// neighbour is 1; cell 0/1 flips when its right neighbour is in Z.
    fn sample() -> CA {
        let rot = [0u8, 1, 3, 4, 2];
        CA::one_sided(
            LocalRule1D::from_fn(Alphabet::numeric(5), 0, 1, move |w| match (w[0], w[1]) {
                (c, 1) if c >= 2 => rot[c as usize],
                (c, d) if c < 2 && d >= 2 => 1 - c,
                (c, _) => c,
            })
            .unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn permutations_enumerated() {
        let g = ClassGroup::new(3);
        assert_eq!(g.len(), 6);
        assert_eq!(g.perms[0], Perm::identity(3));
        for a in 0..6u8 {
            assert_eq!(g.mul(a, g.identity()), a);
        }
    }

    #[test]
    fn reduction_agrees_with_rule() {
        let f = sample();
        let c = ClassRule::from_ca(&f, &[2, 3, 4]).unwrap();
        for w in periodic_words(5, 5) {
            assert_eq!(c.apply_periodic(&w), f.apply_periodic_unchecked(&w));
        }
    }

    #[test]
    fn composition_agrees_with_rules() {
        let f = sample();
        let c = ClassRule::from_ca(&f, &[2, 3, 4]).unwrap();
        let ff = f.compose(&f).unwrap().compose(&f).unwrap();
        let cc = c.compose(&c).unwrap().compose(&c).unwrap();
        for w in periodic_words(5, 5) {
            assert_eq!(cc.apply_periodic(&w), ff.apply_periodic_unchecked(&w));
        }
        assert_eq!(cc.is_identity(), ff.is_identity());
    }

    #[test]
    fn identity_detection() {
        let id = CA::identity(Alphabet::numeric(5), crate::ca::Sidedness::One);
        assert!(ClassRule::from_ca(&id, &[2, 3, 4]).unwrap().is_identity());
        let f = sample();
        let c = ClassRule::from_ca(&f, &[2, 3, 4]).unwrap();
        assert!(!c.is_identity());
        let mut acc = c.clone();
        for n in 1..=6 {
            assert_eq!(
                acc.is_identity(),
                crate::ca::power(&f, n).unwrap().is_identity()
            );
            acc = acc.compose(&c).unwrap();
        }
    }

    #[test]
    fn rejects_visible_class() {
        let f = CA::one_sided(
            LocalRule1D::from_fn(Alphabet::numeric(3), 0, 1, |w| {
                if w[0] < 2 && w[1] == 2 {
                    1 - w[0]
                } else {
                    w[0]
                }
            })
            .unwrap(),
        )
        .unwrap();
        // 1 and 2 are distinguished by the cell to their left
        assert!(ClassRule::from_ca(&f, &[1, 2]).is_err());
        assert!(ClassRule::from_ca(&f, &[2]).is_ok());
    }
}
