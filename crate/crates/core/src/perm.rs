//! Finite permutations and explicitly enumerated permutation groups.
//!
//! Points are 0-based internally; the textual cycle notation is 1-based, so
//! `"(1 2 3)"` maps point 0 to 1, 1 to 2 and 2 to 0.
//!
//! Products follow function composition: `p * q` applies `q` first.
//! Commutators are `[b, c] = b⁻¹ c⁻¹ b c` everywhere in this crate.

use std::collections::HashMap;
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use thiserror::Error;

/// Largest supported degree.
pub const MAX_DEGREE: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("degree {0} outside 1..={MAX_DEGREE}")]
    BadDegree(usize),
    #[error("images do not form a bijection")]
    NotBijection,
    #[error("group exceeds the cap of {0} elements")]
    CapExceeded(usize),
    #[error("generator list is empty")]
    NoGenerators,
    #[error("{0} is not a commutator in this group")]
    NotACommutator(Perm),
    #[error("{0} is not an element of the group")]
    NotInGroup(Perm),
    #[error("cannot parse permutation {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// A bijection of `{0, .., degree-1}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    degree: u8,
    images: [u8; MAX_DEGREE],
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        assert!(
            (1..=MAX_DEGREE).contains(&degree),
            "degree {degree} out of range"
        );
        let mut images = [0u8; MAX_DEGREE];
        for (i, v) in images.iter_mut().enumerate() {
            *v = i as u8;
        }
        Perm {
            degree: degree as u8,
            images,
        }
    }

    /// Builds a permutation from its 0-based image list.
    pub fn from_images(images: &[usize]) -> Result<Perm, PermError> {
        let degree = images.len();
        if !(1..=MAX_DEGREE).contains(&degree) {
            return Err(PermError::BadDegree(degree));
        }
        let mut p = Perm::identity(degree);
        let mut seen = [false; MAX_DEGREE];
        for (i, &img) in images.iter().enumerate() {
            if img >= degree || seen[img] {
                return Err(PermError::NotBijection);
            }
            seen[img] = true;
            p.images[i] = img as u8;
        }
        Ok(p)
    }

    /// Builds a permutation from 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Perm, PermError> {
        if !(1..=MAX_DEGREE).contains(&degree) {
            return Err(PermError::BadDegree(degree));
        }
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a >= degree || touched[a] {
                    return Err(PermError::NotBijection);
                }
                touched[a] = true;
                images[a] = cycle[(k + 1) % cycle.len()];
            }
        }
        Perm::from_images(&images)
    }

    /// Parses 1-based cycle notation such as `"(1 2 3)(4 5)"` or `"()"`.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Perm, PermError> {
        let cycles = parse_cycle_lists(text)?;
        let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
        Perm::from_cycles(degree, &refs).map_err(|e| PermError::Parse {
            input: text.to_string(),
            reason: e.to_string(),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.images[..self.degree()]
    }

    pub fn is_identity(&self) -> bool {
        self.images()
            .iter()
            .enumerate()
            .all(|(i, &v)| i == v as usize)
    }

    /// `self ∘ q`: `q` acts first.
    pub fn compose(&self, q: &Perm) -> Result<Perm, PermError> {
        if self.degree != q.degree {
            return Err(PermError::DegreeMismatch(self.degree(), q.degree()));
        }
        Ok(self.mul_unchecked(q))
    }

    #[inline]
    fn mul_unchecked(&self, q: &Perm) -> Perm {
        let mut out = *self;
        for i in 0..self.degree() {
            out.images[i] = self.images[q.images[i] as usize];
        }
        out
    }

    pub fn inverse(&self) -> Perm {
        let mut out = *self;
        for i in 0..self.degree() {
            out.images[self.images[i] as usize] = i as u8;
        }
        out
    }

    pub fn pow(&self, exp: i64) -> Perm {
        let mut base = if exp < 0 { self.inverse() } else { *self };
        let mut e = exp.unsigned_abs();
        let mut acc = Perm::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Least `k ≥ 1` with `selfᵏ = id`.
    pub fn order(&self) -> u64 {
        self.cycles().iter().map(|c| c.len() as u64).fold(1, lcm)
    }

    /// Nontrivial cycles, each starting from its least point, in order of that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = [false; MAX_DEGREE];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut cur = self.apply(start);
            while cur != start {
                seen[cur] = true;
                cycle.push(cur);
                cur = self.apply(cur);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    /// `[b, c] = b⁻¹ c⁻¹ b c`.
    pub fn commutator(b: &Perm, c: &Perm) -> Perm {
        b.inverse() * c.inverse() * *b * *c
    }
}

impl Mul for Perm {
    type Output = Perm;

    /// Panics on degree mismatch; use [`Perm::compose`] for a checked product.
    fn mul(self, rhs: Perm) -> Perm {
        assert_eq!(self.degree, rhs.degree, "degree mismatch in product");
        self.mul_unchecked(&rhs)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{}[{}]", self, self.degree)
    }
}

impl FromStr for Perm {
    type Err = PermError;

    /// Degree 5 unless a larger point is mentioned.
    fn from_str(s: &str) -> Result<Perm, PermError> {
        let cycles = parse_cycle_lists(s)?;
        let max = cycles.iter().flatten().map(|&p| p + 1).max().unwrap_or(0);
        Perm::parse_cycles(s, max.max(5))
    }
}

/// Splits `"(1 2)(3 4 5)"` into 0-based cycles.
fn parse_cycle_lists(text: &str) -> Result<Vec<Vec<usize>>, PermError> {
    let err = |reason: &str| PermError::Parse {
        input: text.to_string(),
        reason: reason.to_string(),
    };
    let mut out = Vec::new();
    let mut rest = text.trim();
    if rest.is_empty() {
        return Err(err("empty input"));
    }
    while !rest.is_empty() {
        rest = rest.trim_start();
        if rest.is_empty() {
            break;
        }
        if !rest.starts_with('(') {
            return Err(err("expected '('"));
        }
        let close = rest
            .find(')')
            .ok_or_else(|| err("unbalanced parenthesis"))?;
        let body = &rest[1..close];
        let mut cycle = Vec::new();
        for tok in body.split(|c: char| c.is_whitespace() || c == ',') {
            if tok.is_empty() {
                continue;
            }
            let v: usize = tok.parse().map_err(|_| err("point is not a number"))?;
            if v == 0 {
                return Err(err("points are 1-based"));
            }
            cycle.push(v - 1);
        }
        if !cycle.is_empty() {
            out.push(cycle);
        }
        rest = &rest[close + 1..];
    }
    Ok(out)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// The standard generators of A₅ used throughout: `s = (1 2 3 4 5)`, `t = (1 2 3)`.
pub fn a5_generators() -> [Perm; 2] {
    [
        Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap(),
        Perm::from_cycles(5, &[&[0, 1, 2]]).unwrap(),
    ]
}

/// An explicitly enumerated permutation group.
#[derive(Clone, Debug)]
pub struct GroupTable {
    degree: usize,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    generators: Vec<Perm>,
}

impl GroupTable {
    /// Breadth-first closure of `gens`. Elements are listed in shortlex order of
    /// the first generator word reaching them (words extended on the right).
    pub fn generate(gens: &[Perm], cap: usize) -> Result<GroupTable, PermError> {
        let first = gens.first().ok_or(PermError::NoGenerators)?;
        GroupTable::generate_with_degree(first.degree(), gens, cap)
    }

    fn generate_with_degree(
        degree: usize,
        gens: &[Perm],
        cap: usize,
    ) -> Result<GroupTable, PermError> {
        for g in gens {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch(degree, g.degree()));
            }
        }
        let id = Perm::identity(degree);
        let mut elements = vec![id];
        let mut index = HashMap::new();
        index.insert(id, 0);
        let mut head = 0;
        while head < elements.len() {
            let e = elements[head];
            head += 1;
            for g in gens {
                let n = e * *g;
                if let std::collections::hash_map::Entry::Vacant(e) = index.entry(n) {
                    if elements.len() >= cap {
                        return Err(PermError::CapExceeded(cap));
                    }
                    e.insert(elements.len());
                    elements.push(n);
                }
            }
        }
        Ok(GroupTable {
            degree,
            elements,
            index,
            generators: gens.to_vec(),
        })
    }

    pub fn trivial(degree: usize) -> GroupTable {
        GroupTable::generate_with_degree(degree, &[], 1).expect("trivial group")
    }

    /// The alternating group A₅ on five points.
    pub fn a5() -> GroupTable {
        GroupTable::generate(&a5_generators(), 60).expect("A5 has 60 elements")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.index.contains_key(p)
    }

    pub fn position(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u64 {
        self.elements.iter().map(Perm::order).fold(1, lcm)
    }

    /// Normal closure of `seeds` inside this group.
    pub fn normal_closure(&self, seeds: &[Perm]) -> GroupTable {
        let mut gens: Vec<Perm> = Vec::new();
        for s in seeds {
            if !s.is_identity() && !gens.contains(s) {
                gens.push(*s);
            }
        }
        let cap = self.order();
        let mut sub = GroupTable::generate_with_degree(self.degree, &gens, cap)
            .expect("a subgroup cannot exceed its parent");
        loop {
            let mut added = false;
            'scan: for k in 0..gens.len() {
                for g in &self.generators {
                    let conj = g.inverse() * gens[k] * *g;
                    if !sub.contains(&conj) {
                        gens.push(conj);
                        added = true;
                        break 'scan;
                    }
                }
            }
            if !added {
                return sub;
            }
            sub = GroupTable::generate_with_degree(self.degree, &gens, cap)
                .expect("a subgroup cannot exceed its parent");
        }
    }

    /// The commutator subgroup, computed as the normal closure of the
    /// commutators of pairs of generators.
    pub fn derived_subgroup(&self) -> GroupTable {
        let mut seeds = Vec::new();
        for (i, a) in self.generators.iter().enumerate() {
            for b in &self.generators[i + 1..] {
                seeds.push(Perm::commutator(a, b));
            }
        }
        self.normal_closure(&seeds)
    }

    /// `[G, G', G'', ..]`, stopping at the first term equal to its successor.
    pub fn derived_series(&self) -> Vec<GroupTable> {
        let mut series = vec![self.clone()];
        loop {
            let last = series.last().unwrap();
            let next = last.derived_subgroup();
            if next.order() == last.order() {
                return series;
            }
            series.push(next);
        }
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().unwrap().is_trivial()
    }

    pub fn is_perfect(&self) -> bool {
        self.derived_subgroup().order() == self.order()
    }

    /// Lexicographically least `(b, c)` in enumeration order with `[b, c] = target`.
    pub fn commutator_decompose(&self, target: &Perm) -> Result<(Perm, Perm), PermError> {
        if !self.contains(target) {
            return Err(PermError::NotInGroup(*target));
        }
        for b in &self.elements {
            let b_inv = b.inverse();
            for c in &self.elements {
                if b_inv * c.inverse() * *b * *c == *target {
                    return Ok((*b, *c));
                }
            }
        }
        Err(PermError::NotACommutator(*target))
    }
}

/// Precomputed commutator decompositions for every element of a group that is
/// a single commutator.
#[derive(Clone, Debug)]
pub struct CommutatorTable {
    group: GroupTable,
    table: HashMap<Perm, (Perm, Perm)>,
}

impl CommutatorTable {
    pub fn new(group: &GroupTable) -> CommutatorTable {
        let mut table = HashMap::new();
        let n = group.order();
        'outer: for b in group.elements() {
            let b_inv = b.inverse();
            for c in group.elements() {
                let comm = b_inv * c.inverse() * *b * *c;
                table.entry(comm).or_insert((*b, *c));
                if table.len() == n {
                    break 'outer;
                }
            }
        }
        CommutatorTable {
            group: group.clone(),
            table,
        }
    }

    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    pub fn decompose(&self, target: &Perm) -> Result<(Perm, Perm), PermError> {
        if !self.group.contains(target) {
            return Err(PermError::NotInGroup(*target));
        }
        self.table
            .get(target)
            .copied()
            .ok_or(PermError::NotACommutator(*target))
    }

    /// True if every element is a single commutator.
    pub fn covers_group(&self) -> bool {
        self.table.len() == self.group.order()
    }
}
