use std::fmt;
use std::ops::Mul;

use crate::perm::Perm;

/// A generator symbol that can be inverted and carries a rotation weight.
pub trait Letter: Clone + PartialEq + fmt::Debug {
    fn inverse(&self) -> Self;
    /// Contribution to the rotation homomorphism φ.
    fn shift(&self) -> i64;
}

/// A word over generators. The rightmost letter acts first.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word<T> {
    letters: Vec<T>,
}

impl<T: Letter> Word<T> {
    pub fn new(letters: Vec<T>) -> Self {
        Word { letters }
    }

    pub fn empty() -> Self {
        Word {
            letters: Vec::new(),
        }
    }

    pub fn letter(t: T) -> Self {
        Word { letters: vec![t] }
    }

    pub fn letters(&self) -> &[T] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<T> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word {
            letters: self.letters.iter().rev().map(Letter::inverse).collect(),
        }
    }

    pub fn pow(&self, exp: i64) -> Self {
        let base = if exp < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let mut letters = Vec::with_capacity(base.len() * exp.unsigned_abs() as usize);
        for _ in 0..exp.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        Word { letters }
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    pub fn commutator(a: &Self, b: &Self) -> Self {
        a.inverse() * b.inverse() * a.clone() * b.clone()
    }

    /// The rotation homomorphism: net count of rotations.
    pub fn phi(&self) -> i64 {
        self.letters.iter().map(Letter::shift).sum()
    }
}

impl<T: Letter> Mul for Word<T> {
    type Output = Word<T>;

    fn mul(mut self, rhs: Word<T>) -> Word<T> {
        self.letters.extend(rhs.letters);
        self
    }
}

impl<T: Letter> FromIterator<T> for Word<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        Word::new(iter.into_iter().collect())
    }
}

impl<T: fmt::Display> fmt::Display for Word<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "ε");
        }
        for (i, t) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl<T: fmt::Debug> fmt::Debug for Word<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.letters).finish()
    }
}

/// Generators of the broom group: elements of A₅ acting on the first
/// coordinate, and the rotation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BroomToken {
    Perm(Perm),
    Rot,
    RotInv,
}

impl Letter for BroomToken {
    fn inverse(&self) -> Self {
        match self {
            BroomToken::Perm(p) => BroomToken::Perm(p.inverse()),
            BroomToken::Rot => BroomToken::RotInv,
            BroomToken::RotInv => BroomToken::Rot,
        }
    }

    fn shift(&self) -> i64 {
        match self {
            BroomToken::Perm(_) => 0,
            BroomToken::Rot => 1,
            BroomToken::RotInv => -1,
        }
    }
}

impl fmt::Display for BroomToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BroomToken::Perm(p) => write!(f, "p:{p}"),
            BroomToken::Rot => write!(f, "rot"),
            BroomToken::RotInv => write!(f, "rot'"),
        }
    }
}

/// Generators of the subshift-indexed group: `PermAt(p, j)` applies `p` to the
/// state when the symbol at offset 0 is `j`; `Rot` shifts the point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum XToken {
    PermAt(Perm, u8),
    Rot,
    RotInv,
}

impl Letter for XToken {
    fn inverse(&self) -> Self {
        match self {
            XToken::PermAt(p, j) => XToken::PermAt(p.inverse(), *j),
            XToken::Rot => XToken::RotInv,
            XToken::RotInv => XToken::Rot,
        }
    }

    fn shift(&self) -> i64 {
        match self {
            XToken::PermAt(..) => 0,
            XToken::Rot => 1,
            XToken::RotInv => -1,
        }
    }
}

impl fmt::Display for XToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            XToken::PermAt(p, j) => write!(f, "p@{j}:{p}"),
            XToken::Rot => write!(f, "rot"),
            XToken::RotInv => write!(f, "rot'"),
        }
    }
}

pub type BroomWord = Word<BroomToken>;
pub type XBroomWord = Word<XToken>;

/// The image under `a ↦ a`, `rot ↦ rot²`.
pub fn embed_double(word: &BroomWord) -> BroomWord {
    let mut out = Vec::with_capacity(word.len() * 2);
    for t in word.letters() {
        match t {
            BroomToken::Perm(_) => out.push(*t),
            BroomToken::Rot | BroomToken::RotInv => {
                out.push(*t);
                out.push(*t);
            }
        }
    }
    Word::new(out)
}

/// `rot^k`, using `rot'` for negative `k`.
pub fn rot_power<T: Letter>(k: i64, rot: T) -> Word<T> {
    Word::letter(rot).pow(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str) -> Perm {
        Perm::parse_cycles(s, 5).unwrap()
    }

    #[test]
    fn phi_values() {
        let p = BroomToken::Perm(perm("(1 2 3)"));
        assert_eq!(BroomWord::letter(BroomToken::Rot).phi(), 1);
        assert_eq!(BroomWord::letter(p).phi(), 0);
        let w = BroomWord::new(vec![BroomToken::Rot, BroomToken::RotInv, p]);
        assert_eq!(w.phi(), 0);
    }

    #[test]
    fn inverse_and_commutator_shapes() {
        let a = BroomWord::new(vec![BroomToken::Rot, BroomToken::Perm(perm("(1 2 3)"))]);
        let inv = a.inverse();
        assert_eq!(
            inv.letters(),
            &[BroomToken::Perm(perm("(1 3 2)")), BroomToken::RotInv]
        );
        let b = BroomWord::letter(BroomToken::Rot);
        let c = BroomWord::commutator(&a, &b);
        assert_eq!(c.len(), 6);
        assert_eq!(c.phi(), 0);
        assert_eq!(a.pow(3).len(), 6);
        assert_eq!(a.pow(-2), inv.pow(2));
        assert!(a.pow(0).is_empty());
    }

    #[test]
    fn doubling_embedding() {
        let r = BroomWord::letter(BroomToken::Rot);
        assert_eq!(
            embed_double(&r).letters(),
            &[BroomToken::Rot, BroomToken::Rot]
        );
        let p = BroomWord::letter(BroomToken::Perm(perm("(1 2 3)")));
        assert_eq!(embed_double(&p), p);
    }
}
