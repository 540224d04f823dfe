use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::LincaError;

/// Checks that `p` is a prime below `2¹⁶`.
pub fn check_prime(p: u32) -> Result<u32, LincaError> {
    let prime = (2..(1 << 16)).contains(&p)
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d));
    if prime {
        Ok(p)
    } else {
        Err(LincaError::NotPrime(p))
    }
}

/// An element of `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FpElem {
    value: u32,
    p: u32,
}

impl FpElem {
    pub fn new(value: i64, p: u32) -> FpElem {
        FpElem {
            value: value.rem_euclid(p as i64) as u32,
            p,
        }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inverse(self) -> Option<FpElem> {
        if self.value == 0 {
            return None;
        }
        Some(FpElem::new(
            mod_pow(self.value as u64, self.p as u64 - 2, self.p as u64) as i64,
            self.p,
        ))
    }
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

impl Add for FpElem {
    type Output = FpElem;
    fn add(self, o: FpElem) -> FpElem {
        debug_assert_eq!(self.p, o.p);
        FpElem::new(self.value as i64 + o.value as i64, self.p)
    }
}

impl Sub for FpElem {
    type Output = FpElem;
    fn sub(self, o: FpElem) -> FpElem {
        debug_assert_eq!(self.p, o.p);
        FpElem::new(self.value as i64 - o.value as i64, self.p)
    }
}

impl Mul for FpElem {
    type Output = FpElem;
    fn mul(self, o: FpElem) -> FpElem {
        debug_assert_eq!(self.p, o.p);
        FpElem::new(self.value as i64 * o.value as i64, self.p)
    }
}

impl Neg for FpElem {
    type Output = FpElem;
    fn neg(self) -> FpElem {
        FpElem::new(-(self.value as i64), self.p)
    }
}

/// A Laurent polynomial over `F_p`; only nonzero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    p: u32,
    terms: BTreeMap<i64, u32>,
}

impl LaurentPoly {
    pub fn zero(p: u32) -> LaurentPoly {
        LaurentPoly {
            p,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(p: u32) -> LaurentPoly {
        LaurentPoly::monomial(p, 1, 0)
    }

    /// `c·xᵏ`.
    pub fn monomial(p: u32, c: i64, k: i64) -> LaurentPoly {
        let mut out = LaurentPoly::zero(p);
        out.add_term(k, c);
        out
    }

    /// Builds from `(degree, coefficient)` pairs, summing repeated degrees.
    pub fn from_terms(p: u32, terms: impl IntoIterator<Item = (i64, i64)>) -> LaurentPoly {
        let mut out = LaurentPoly::zero(p);
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    fn add_term(&mut self, k: i64, c: i64) {
        let cur = self.terms.get(&k).copied().unwrap_or(0) as i64;
        let v = (cur + c).rem_euclid(self.p as i64) as u32;
        if v == 0 {
            self.terms.remove(&k);
        } else {
            self.terms.insert(k, v);
        }
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0) == Some(&1)
    }

    /// Units of `F_p[x, x⁻¹]` are the nonzero monomials.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn coeff(&self, k: i64) -> u32 {
        self.terms.get(&k).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, u32)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    fn same_field(&self, o: &LaurentPoly) -> Result<(), LincaError> {
        if self.p == o.p {
            Ok(())
        } else {
            Err(LincaError::FieldMismatch(self.p, o.p))
        }
    }

    pub fn try_add(&self, o: &LaurentPoly) -> Result<LaurentPoly, LincaError> {
        self.same_field(o)?;
        let mut out = self.clone();
        for (&k, &c) in &o.terms {
            out.add_term(k, c as i64);
        }
        Ok(out)
    }

    pub fn try_sub(&self, o: &LaurentPoly) -> Result<LaurentPoly, LincaError> {
        self.try_add(&-o)
    }

    pub fn try_mul(&self, o: &LaurentPoly) -> Result<LaurentPoly, LincaError> {
        self.same_field(o)?;
        let mut out = LaurentPoly::zero(self.p);
        for (&a, &c) in &self.terms {
            for (&b, &d) in &o.terms {
                out.add_term(a + b, (c as u64 * d as u64 % self.p as u64) as i64);
            }
        }
        Ok(out)
    }

    /// The inverse of a unit.
    pub fn unit_inverse(&self) -> Option<LaurentPoly> {
        if !self.is_unit() {
            return None;
        }
        let (&k, &c) = self.terms.iter().next().expect("one term");
        let inv = FpElem::new(c as i64, self.p).inverse()?;
        Some(LaurentPoly::monomial(self.p, inv.value() as i64, -k))
    }

    /// Parses `"3x^-2 + 1 + 4x"`, with an optional `"@F5"` tag. Without a tag,
    /// `default_p` supplies the field.
    pub fn parse(text: &str, default_p: Option<u32>) -> Result<LaurentPoly, LincaError> {
        let (body, p) = match text.rsplit_once('@') {
            Some((body, tag)) => {
                let digits = tag
                    .trim()
                    .strip_prefix('F')
                    .ok_or_else(|| parse_err(text, "field tag must be @F<p>"))?;
                let p: u32 = digits
                    .parse()
                    .map_err(|_| parse_err(text, "field tag must be @F<p>"))?;
                if let Some(d) = default_p {
                    if d != p {
                        return Err(LincaError::FieldMismatch(d, p));
                    }
                }
                (body, p)
            }
            None => (
                text,
                default_p.ok_or_else(|| parse_err(text, "missing field tag @F<p>"))?,
            ),
        };
        let p = check_prime(p)?;
        let compact: String = body.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(parse_err(text, "empty polynomial"));
        }
        let mut out = LaurentPoly::zero(p);
        let mut rest = compact.as_str();
        let mut first = true;
        while !rest.is_empty() {
            let mut sign = 1i64;
            if let Some(r) = rest.strip_prefix('+') {
                rest = r;
            } else if let Some(r) = rest.strip_prefix('-') {
                sign = -1;
                rest = r;
            } else if !first {
                return Err(parse_err(text, "expected + or - between terms"));
            }
            first = false;
            let end = rest
                .char_indices()
                .skip(1)
                .find(|&(i, c)| (c == '+' || c == '-') && !rest[..i].ends_with('^'))
                .map_or(rest.len(), |(i, _)| i);
            let (c, k) =
                parse_term(&rest[..end]).ok_or_else(|| parse_err(text, "malformed term"))?;
            out.add_term(k, sign * c);
            rest = &rest[end..];
        }
        Ok(out)
    }
}

fn parse_err(input: &str, reason: &str) -> LincaError {
    LincaError::Parse {
        input: input.to_string(),
        reason: reason.to_string(),
    }
}

/// `c`, `cx`, `x`, `x^k`, `cx^k`, optionally `c*x^k`.
fn parse_term(t: &str) -> Option<(i64, i64)> {
    if t.is_empty() {
        return None;
    }
    match t.find('x') {
        None => Some((t.parse().ok()?, 0)),
        Some(i) => {
            let coeff = t[..i].trim_end_matches('*');
            let c = if coeff.is_empty() {
                1
            } else {
                coeff.parse().ok()?
            };
            let tail = &t[i + 1..];
            let k = if tail.is_empty() {
                1
            } else {
                tail.strip_prefix('^')?.parse().ok()?
            };
            Some((c, k))
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            p: self.p,
            terms: self.terms.iter().map(|(&k, &c)| (k, self.p - c)).collect(),
        }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        self.try_add(o).expect("field mismatch")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        self.try_sub(o).expect("field mismatch")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        self.try_mul(o).expect("field mismatch")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&k, &c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match (c, k) {
                (c, 0) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, k) => write!(f, "x^{k}")?,
                (c, 1) => write!(f, "{c}x")?,
                (c, k) => write!(f, "{c}x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}@F{}", self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(s: &str) -> LaurentPoly {
        LaurentPoly::parse(s, None).unwrap()
    }

    #[test]
    fn primes() {
        assert!(check_prime(2).is_ok());
        assert!(check_prime(65521).is_ok());
        assert!(check_prime(1).is_err());
        assert!(check_prime(9).is_err());
        assert!(check_prime(65537).is_err());
    }

    #[test]
    fn field_elements() {
        let a = FpElem::new(3, 5);
        assert_eq!((a * a.inverse().unwrap()).value(), 1);
        assert_eq!((-a).value(), 2);
        assert!(FpElem::new(5, 5).inverse().is_none());
    }

    #[test]
    fn arithmetic_examples() {
        let a = poly("1 + x@F2");
        assert_eq!(&a * &a, poly("1 + x^2@F2"));
        assert_eq!(&a + &LaurentPoly::zero(2), a);
        assert!((&poly("x@F7") * &poly("x^-1@F7")).is_one());
        assert!(poly("1@F5").try_add(&poly("1@F7")).is_err());
        assert_eq!(&poly("2x@F3") + &poly("x@F3"), LaurentPoly::zero(3));
    }

    #[test]
    fn units() {
        assert!(poly("3x^-2@F5").is_unit());
        assert!(!poly("1 + x@F2").is_unit());
        assert!(!LaurentPoly::zero(5).is_unit());
        let u = poly("3x^-2@F5");
        assert!((&u * &u.unit_inverse().unwrap()).is_one());
    }

    #[test]
    fn text_round_trip() {
        let a = poly("3x^-2 + 1 + 4x@F5");
        assert_eq!(a.to_string(), "3x^-2 + 1 + 4x");
        assert_eq!(LaurentPoly::parse(&a.to_string(), Some(5)).unwrap(), a);
        assert_eq!(poly("x - 1@F5"), poly("4 + x@F5"));
        assert_eq!(poly("-x^-1@F3"), poly("2x^-1@F3"));
        assert_eq!(poly("0@F2"), LaurentPoly::zero(2));
        assert!(LaurentPoly::parse("1 + x", None).is_err());
        assert!(LaurentPoly::parse("1 + y@F2", None).is_err());
        assert!(LaurentPoly::parse("x@F4", None).is_err());
        assert!(LaurentPoly::parse("x@F5", Some(7)).is_err());
    }

    fn arb_poly(p: u32) -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-4i64..5, 0i64..p as i64), 0..5)
            .prop_map(move |t| LaurentPoly::from_terms(p, t))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(5), b in arb_poly(5), c in arb_poly(5)) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
        }

        #[test]
        fn display_parses_back(a in arb_poly(7)) {
            prop_assert_eq!(LaurentPoly::parse(&a.to_string(), Some(7)).unwrap(), a);
        }
    }
}
