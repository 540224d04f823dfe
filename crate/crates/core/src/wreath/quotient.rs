//! The action of broom words on tuples and the finite quotients `A₅ ≀ ℤ/nℤ`.

use std::fmt;

use thiserror::Error;

use super::word::{BroomToken, BroomWord};
use crate::perm::{Perm, MAX_DEGREE};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WreathError {
    #[error("tuple size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("tuple size must be at least 1")]
    EmptyTuple,
    #[error("point {point} outside 0..{degree}")]
    PointOutOfRange { point: u8, degree: usize },
    #[error("window too small: offset {offset} read outside the sample")]
    BudgetExhausted { offset: i64 },
    #[error("control symbol {0} outside the control alphabet")]
    BadSymbol(u8),
    #[error("empty cylinder word")]
    EmptyCylinder,
    #[error(transparent)]
    Perm(#[from] crate::perm::PermError),
}

/// Applies `word` to a tuple of 0-based points, rightmost letter first.
///
/// `Perm(p)` acts on the first coordinate; `Rot` maps `(m₁, .., mₙ)` to
/// `(m₂, .., mₙ, m₁)`.
pub fn act_tuple(word: &BroomWord, tuple: &[u8]) -> Result<Vec<u8>, WreathError> {
    if tuple.is_empty() {
        return Err(WreathError::EmptyTuple);
    }
    let mut t = tuple.to_vec();
    for tok in word.letters().iter().rev() {
        match tok {
            BroomToken::Perm(p) => {
                let v = t[0];
                if v as usize >= p.degree() {
                    return Err(WreathError::PointOutOfRange {
                        point: v,
                        degree: p.degree(),
                    });
                }
                t[0] = p.apply(v as usize) as u8;
            }
            BroomToken::Rot => t.rotate_left(1),
            BroomToken::RotInv => t.rotate_right(1),
        }
    }
    Ok(t)
}

/// An element of `G ≀ ℤ/nℤ` acting on `{0..d}ⁿ` by
/// `t ↦ (vec[0]·s₀, .., vec[n-1]·sₙ₋₁)` where `s = t` rotated left `rot` times.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WreathNF {
    rot: usize,
    vec: Vec<Perm>,
}

impl WreathNF {
    pub fn identity(n: usize, degree: usize) -> WreathNF {
        assert!(n >= 1, "tuple size must be at least 1");
        WreathNF {
            rot: 0,
            vec: vec![Perm::identity(degree); n],
        }
    }

    pub fn new(rot: usize, vec: Vec<Perm>) -> Result<WreathNF, WreathError> {
        if vec.is_empty() {
            return Err(WreathError::EmptyTuple);
        }
        let d = vec[0].degree();
        if let Some(p) = vec.iter().find(|p| p.degree() != d) {
            return Err(crate::perm::PermError::DegreeMismatch(d, p.degree()).into());
        }
        Ok(WreathNF {
            rot: rot % vec.len(),
            vec,
        })
    }

    pub fn of_token(tok: &BroomToken, n: usize, degree: usize) -> WreathNF {
        let mut nf = WreathNF::identity(n, degree);
        match tok {
            BroomToken::Perm(p) => nf.vec[0] = *p,
            BroomToken::Rot => nf.rot = 1 % n,
            BroomToken::RotInv => nf.rot = (n - 1) % n,
        }
        nf
    }

    pub fn n(&self) -> usize {
        self.vec.len()
    }

    pub fn rot(&self) -> usize {
        self.rot
    }

    pub fn vec(&self) -> &[Perm] {
        &self.vec
    }

    pub fn degree(&self) -> usize {
        self.vec[0].degree()
    }

    pub fn is_identity(&self) -> bool {
        self.rot == 0 && self.vec.iter().all(Perm::is_identity)
    }

    pub fn act(&self, tuple: &[u8]) -> Result<Vec<u8>, WreathError> {
        let n = self.n();
        if tuple.len() != n {
            return Err(WreathError::SizeMismatch(n, tuple.len()));
        }
        Ok((0..n)
            .map(|i| self.vec[i].apply(tuple[(i + self.rot) % n] as usize) as u8)
            .collect())
    }

    /// The element acting as `self ∘ other`.
    ///
    /// `rot = r_u + r_v`, `vec[i] = u.vec[i] ∘ v.vec[i + r_u]` (indices mod n).
    pub fn mul(&self, other: &WreathNF) -> Result<WreathNF, WreathError> {
        let n = self.n();
        if other.n() != n {
            return Err(WreathError::SizeMismatch(n, other.n()));
        }
        if other.degree() != self.degree() {
            return Err(
                crate::perm::PermError::DegreeMismatch(self.degree(), other.degree()).into(),
            );
        }
        let vec = (0..n)
            .map(|i| self.vec[i] * other.vec[(i + self.rot) % n])
            .collect();
        Ok(WreathNF {
            rot: (self.rot + other.rot) % n,
            vec,
        })
    }

    pub fn inverse(&self) -> WreathNF {
        let n = self.n();
        let rot = (n - self.rot) % n;
        let vec = (0..n).map(|i| self.vec[(i + rot) % n].inverse()).collect();
        WreathNF { rot, vec }
    }

    /// The induced permutation of the `n·d` points `(coordinate, value)`,
    /// numbered `coordinate·d + value`.
    pub fn to_perm(&self) -> Result<Perm, WreathError> {
        let n = self.n();
        let d = self.degree();
        if n * d > MAX_DEGREE {
            return Err(crate::perm::PermError::BadDegree(n * d).into());
        }
        let mut images = vec![0usize; n * d];
        for j in 0..n {
            let i = (j + n - self.rot) % n;
            for m in 0..d {
                images[j * d + m] = i * d + self.vec[i].apply(m);
            }
        }
        Ok(Perm::from_images(&images)?)
    }
}

impl fmt::Display for WreathNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(rot {}; [", self.rot)?;
        for (i, p) in self.vec.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "])")
    }
}

impl fmt::Debug for WreathNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Image of `word` in `A₅ ≀ ℤ/nℤ`.
pub fn normal_form(word: &BroomWord, n: usize) -> WreathNF {
    normal_form_with_degree(word, n, 5)
}

pub fn normal_form_with_degree(word: &BroomWord, n: usize, degree: usize) -> WreathNF {
    word.letters()
        .iter()
        .fold(WreathNF::identity(n, degree), |acc, tok| {
            acc.mul(&WreathNF::of_token(tok, n, degree))
                .expect("token images share size and degree")
        })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum SizeRule {
    Positive,
    Even,
    Listed,
}

/// A set `N` of tuple sizes, represented by a membership rule plus the finite
/// list of sizes actually tested. Identities decided against a `SizeSet` are
/// exact for the truncation to the test list only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SizeSet {
    rule: SizeRule,
    tests: Vec<usize>,
}

impl SizeSet {
    /// All positive integers, tested on `1..=max`.
    pub fn naturals(max: usize) -> SizeSet {
        SizeSet {
            rule: SizeRule::Positive,
            tests: (1..=max.max(1)).collect(),
        }
    }

    /// Positive even integers, tested on the evens in `2..=max`.
    pub fn evens(max: usize) -> SizeSet {
        SizeSet {
            rule: SizeRule::Even,
            tests: (1..=(max / 2).max(1)).map(|k| 2 * k).collect(),
        }
    }

    /// An explicit finite set.
    pub fn listed(mut sizes: Vec<usize>) -> Option<SizeSet> {
        sizes.sort_unstable();
        sizes.dedup();
        if sizes.is_empty() || sizes[0] == 0 {
            return None;
        }
        Some(SizeSet {
            rule: SizeRule::Listed,
            tests: sizes,
        })
    }

    pub fn contains(&self, n: usize) -> bool {
        match self.rule {
            SizeRule::Positive => n >= 1,
            SizeRule::Even => n >= 2 && n.is_multiple_of(2),
            SizeRule::Listed => self.tests.binary_search(&n).is_ok(),
        }
    }

    pub fn tests(&self) -> &[usize] {
        &self.tests
    }
}

impl Default for SizeSet {
    fn default() -> Self {
        SizeSet::naturals(16)
    }
}

/// True iff `word` acts trivially on `{1..5}ⁿ` for every tested `n`.
pub fn is_identity(word: &BroomWord, sizes: &SizeSet) -> bool {
    sizes
        .tests()
        .iter()
        .all(|&n| normal_form(word, n).is_identity())
}
