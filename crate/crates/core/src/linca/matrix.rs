use std::fmt;

use super::poly::{check_prime, LaurentPoly};
use super::LincaError;

/// Largest size handled by cofactor expansion.
pub const MAX_DET_DIM: usize = 6;

/// A square matrix over `F_p[x, x⁻¹]`, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentMatrix {
    p: u32,
    n: usize,
    entries: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Result<LaurentMatrix, LincaError> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(LincaError::NotSquare);
        }
        let p = rows[0][0].modulus();
        let entries: Vec<LaurentPoly> = rows.into_iter().flatten().collect();
        if let Some(e) = entries.iter().find(|e| e.modulus() != p) {
            return Err(LincaError::FieldMismatch(p, e.modulus()));
        }
        Ok(LaurentMatrix { p, n, entries })
    }

    pub fn from_fn(p: u32, n: usize, f: impl Fn(usize, usize) -> LaurentPoly) -> LaurentMatrix {
        assert!(n >= 1);
        let entries = (0..n * n).map(|i| f(i / n, i % n)).collect();
        LaurentMatrix { p, n, entries }
    }

    pub fn identity(p: u32, n: usize) -> LaurentMatrix {
        LaurentMatrix::from_fn(p, n, |i, j| {
            if i == j {
                LaurentPoly::one(p)
            } else {
                LaurentPoly::zero(p)
            }
        })
    }

    /// `I + c·xᵏ·E_ij` for `i ≠ j`; determinant 1.
    pub fn elementary(p: u32, n: usize, i: usize, j: usize, c: i64, k: i64) -> LaurentMatrix {
        assert!(i != j && i < n && j < n);
        let mut m = LaurentMatrix::identity(p, n);
        m.entries[i * n + j] = LaurentPoly::monomial(p, c, k);
        m
    }

    /// The identity with entry `(i, i)` replaced by the unit `c·xᵏ`.
    pub fn diagonal_unit(p: u32, n: usize, i: usize, c: i64, k: i64) -> LaurentMatrix {
        let mut m = LaurentMatrix::identity(p, n);
        m.entries[i * n + i] = LaurentPoly::monomial(p, c, k);
        m
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.n + j]
    }

    pub fn is_identity(&self) -> bool {
        *self == LaurentMatrix::identity(self.p, self.n)
    }

    fn check(&self, o: &LaurentMatrix) -> Result<(), LincaError> {
        if self.p != o.p {
            return Err(LincaError::FieldMismatch(self.p, o.p));
        }
        if self.n != o.n {
            return Err(LincaError::SizeMismatch(self.n, o.n));
        }
        Ok(())
    }

    pub fn mul(&self, o: &LaurentMatrix) -> Result<LaurentMatrix, LincaError> {
        self.check(o)?;
        let n = self.n;
        Ok(LaurentMatrix::from_fn(self.p, n, |i, j| {
            (0..n).fold(LaurentPoly::zero(self.p), |acc, k| {
                &acc + &(self.get(i, k) * o.get(k, j))
            })
        }))
    }

    pub fn add(&self, o: &LaurentMatrix) -> Result<LaurentMatrix, LincaError> {
        self.check(o)?;
        Ok(LaurentMatrix::from_fn(self.p, self.n, |i, j| {
            self.get(i, j) + o.get(i, j)
        }))
    }

    pub fn scale(&self, c: &LaurentPoly) -> Result<LaurentMatrix, LincaError> {
        if c.modulus() != self.p {
            return Err(LincaError::FieldMismatch(self.p, c.modulus()));
        }
        Ok(LaurentMatrix::from_fn(self.p, self.n, |i, j| {
            c * self.get(i, j)
        }))
    }

    /// Cofactor expansion along the first row.
    pub fn det(&self) -> Result<LaurentPoly, LincaError> {
        if self.n > MAX_DET_DIM {
            return Err(LincaError::DimensionTooLarge(self.n));
        }
        let rows: Vec<usize> = (0..self.n).collect();
        let cols = rows.clone();
        Ok(self.minor_det(&rows, &cols))
    }

    fn minor_det(&self, rows: &[usize], cols: &[usize]) -> LaurentPoly {
        match rows.len() {
            0 => LaurentPoly::one(self.p),
            1 => self.get(rows[0], cols[0]).clone(),
            _ => {
                let mut acc = LaurentPoly::zero(self.p);
                for (k, &c) in cols.iter().enumerate() {
                    let a = self.get(rows[0], c);
                    if a.is_zero() {
                        continue;
                    }
                    let sub: Vec<usize> = cols.iter().copied().filter(|&d| d != c).collect();
                    let term = a * &self.minor_det(&rows[1..], &sub);
                    acc = if k % 2 == 0 {
                        &acc + &term
                    } else {
                        &acc - &term
                    };
                }
                acc
            }
        }
    }

    /// `adj(A)ᵢⱼ = (−1)^{i+j} det(A with row j and column i removed)`.
    pub fn adjugate(&self) -> Result<LaurentMatrix, LincaError> {
        if self.n > MAX_DET_DIM {
            return Err(LincaError::DimensionTooLarge(self.n));
        }
        let n = self.n;
        Ok(LaurentMatrix::from_fn(self.p, n, |i, j| {
            let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
            let m = self.minor_det(&rows, &cols);
            if (i + j) % 2 == 0 {
                m
            } else {
                -&m
            }
        }))
    }

    /// Parses a JSON array of rows of polynomial strings. Entries may carry an
    /// `@F<p>` tag; all tags must agree, and `field` covers untagged input.
    pub fn from_json(text: &str, field: Option<u32>) -> Result<LaurentMatrix, LincaError> {
        let rows: Vec<Vec<String>> = serde_json::from_str(text).map_err(|e| LincaError::Parse {
            input: "matrix".into(),
            reason: e.to_string(),
        })?;
        let mut p = field;
        for s in rows.iter().flatten() {
            if let Some((_, tag)) = s.rsplit_once('@') {
                let tagged = LaurentPoly::parse(&format!("0@{tag}"), p)?.modulus();
                p = Some(tagged);
            }
        }
        let p = check_prime(p.ok_or_else(|| LincaError::Parse {
            input: "matrix".into(),
            reason: "no field given; tag an entry with @F<p>".into(),
        })?)?;
        let parsed = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| LaurentPoly::parse(s, Some(p)))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        LaurentMatrix::from_rows(parsed)
    }

    /// Rows of tagged polynomial strings.
    pub fn to_json(&self) -> String {
        let rows: Vec<Vec<String>> = (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| format!("{}@F{}", self.get(i, j), self.p))
                    .collect()
            })
            .collect();
        serde_json::to_string(&rows).expect("strings serialize")
    }
}

/// `adj(A)·det(A)⁻¹` when `det(A)` is a unit.
pub fn mat_invert(a: &LaurentMatrix) -> Result<Option<LaurentMatrix>, LincaError> {
    let Some(inv) = a.det()?.unit_inverse() else {
        return Ok(None);
    };
    Ok(Some(a.adjugate()?.scale(&inv)?))
}

impl fmt::Display for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{} {}", self.p, self.to_json())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mat(text: &str) -> LaurentMatrix {
        LaurentMatrix::from_json(text, None).unwrap()
    }

    #[test]
    fn determinant_examples() {
        assert!(mat(r#"[["x@F5", "0"], ["0", "x^-1"]]"#)
            .det()
            .unwrap()
            .is_one());
        assert!(mat(r#"[["1@F2", "x"], ["0", "1"]]"#)
            .det()
            .unwrap()
            .is_one());
        assert!(LaurentMatrix::identity(7, 4).det().unwrap().is_one());
        let a = mat(r#"[["1 + x@F2", "1"], ["1", "1"]]"#);
        assert_eq!(a.det().unwrap(), LaurentPoly::parse("x@F2", None).unwrap());
        assert_eq!(
            LaurentMatrix::identity(2, 7).det(),
            Err(LincaError::DimensionTooLarge(7))
        );
    }

    #[test]
    fn inverse_examples() {
        let a = mat(r#"[["1@F2", "x"], ["0", "1"]]"#);
        let inv = mat_invert(&a).unwrap().unwrap();
        assert_eq!(inv, a);
        assert!(a.mul(&inv).unwrap().is_identity());
        let b = mat(r#"[["1 + x@F2", "0"], ["0", "1"]]"#);
        assert_eq!(mat_invert(&b).unwrap(), None);
        let c = mat(r#"[["2x@F5", "1", "0"], ["0", "1", "x^-1"], ["0", "0", "3"]]"#);
        let ci = mat_invert(&c).unwrap().unwrap();
        assert!(c.mul(&ci).unwrap().is_identity());
        assert!(ci.mul(&c).unwrap().is_identity());
    }

    #[test]
    fn json_round_trip_and_errors() {
        let a = mat(r#"[["3x^-2 + 1 + 4x@F5", "0"], ["x", "1"]]"#);
        assert_eq!(mat(&a.to_json()), a);
        assert!(LaurentMatrix::from_json(r#"[["1", "x"], ["0", "1"]]"#, None).is_err());
        assert!(LaurentMatrix::from_json(r#"[["1", "x"], ["0", "1"]]"#, Some(3)).is_ok());
        assert!(LaurentMatrix::from_json(r#"[["1@F2", "x@F3"], ["0", "1"]]"#, None).is_err());
        assert_eq!(
            LaurentMatrix::from_json(r#"[["1@F2", "x"]]"#, None),
            Err(LincaError::NotSquare)
        );
        assert!(LaurentMatrix::from_json(r#"[]"#, Some(2)).is_err());
        let b = LaurentMatrix::identity(3, 2);
        assert_eq!(a.mul(&b), Err(LincaError::FieldMismatch(5, 3)));
    }

    fn arb_matrix(p: u32, n: usize) -> impl Strategy<Value = LaurentMatrix> {
        let entry = prop::collection::vec((-2i64..3, 0i64..p as i64), 0..3)
            .prop_map(move |t| LaurentPoly::from_terms(p, t));
        prop::collection::vec(entry, n * n).prop_map(move |e| {
            LaurentMatrix::from_rows(e.chunks(n).map(|r| r.to_vec()).collect()).unwrap()
        })
    }

    fn arb_pair() -> impl Strategy<Value = (LaurentMatrix, LaurentMatrix)> {
        (prop::sample::select(vec![2u32, 5]), 2usize..4)
            .prop_flat_map(|(p, n)| (arb_matrix(p, n), arb_matrix(p, n)))
    }

    proptest! {
        #[test]
        fn det_is_multiplicative((a, b) in arb_pair()) {
            let ab = a.mul(&b).unwrap();
            prop_assert_eq!(ab.det().unwrap(), &a.det().unwrap() * &b.det().unwrap());
        }

        #[test]
        fn adjugate_identity((a, _b) in arb_pair()) {
            let d = a.det().unwrap();
            let scaled = LaurentMatrix::identity(a.modulus(), a.dim()).scale(&d).unwrap();
            prop_assert_eq!(a.mul(&a.adjugate().unwrap()).unwrap(), scaled.clone());
            prop_assert_eq!(a.adjugate().unwrap().mul(&a).unwrap(), scaled);
        }

        #[test]
        fn invertible_iff_unit_det((a, _b) in arb_pair()) {
            match mat_invert(&a).unwrap() {
                Some(inv) => {
                    prop_assert!(a.det().unwrap().is_unit());
                    prop_assert!(a.mul(&inv).unwrap().is_identity());
                }
                None => prop_assert!(!a.det().unwrap().is_unit()),
            }
        }
    }
}
