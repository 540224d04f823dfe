use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::matrix::LaurentMatrix;
use super::poly::{check_prime, LaurentPoly};
use super::LincaError;
use crate::ca::{Alphabet, LocalRule1D, CA};

/// `f(x)ᵢ = Σₖ Mₖ xᵢ₊ₖ` on cells in `F_pⁿ`.
///
/// Stored trimmed: `coeffs[0]` and the last entry are nonzero, and the zero map
/// has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearCA {
    p: u32,
    n: usize,
    lo: i32,
    /// Row-major `n×n` matrices for offsets `lo, lo+1, …`.
    coeffs: Vec<Vec<u32>>,
}

impl LinearCA {
    pub fn new(p: u32, n: usize, lo: i32, coeffs: Vec<Vec<u32>>) -> Result<LinearCA, LincaError> {
        check_prime(p)?;
        if n == 0 {
            return Err(LincaError::NotSquare);
        }
        if let Some(m) = coeffs.iter().find(|m| m.len() != n * n) {
            return Err(LincaError::SizeMismatch(
                n,
                (m.len() as f64).sqrt() as usize,
            ));
        }
        let coeffs = coeffs
            .into_iter()
            .map(|m| m.into_iter().map(|v| v % p).collect())
            .collect();
        Ok(LinearCA { p, n, lo, coeffs }.trimmed())
    }

    fn trimmed(mut self) -> LinearCA {
        let zero = |m: &Vec<u32>| m.iter().all(|&v| v == 0);
        while self.coeffs.last().is_some_and(zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|m| zero(m)).count();
        self.coeffs.drain(..lead);
        self.lo = if self.coeffs.is_empty() {
            0
        } else {
            self.lo + lead as i32
        };
        self
    }

    pub fn zero(p: u32, n: usize) -> LinearCA {
        LinearCA {
            p,
            n,
            lo: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn identity(p: u32, n: usize) -> LinearCA {
        LinearCA::scalar_at(p, n, 0)
    }

    /// `σ(x)ᵢ = xᵢ₊₁`.
    pub fn shift(p: u32, n: usize) -> LinearCA {
        LinearCA::scalar_at(p, n, 1)
    }

    fn scalar_at(p: u32, n: usize, k: i32) -> LinearCA {
        let m = (0..n * n).map(|i| u32::from(i / n == i % n)).collect();
        LinearCA {
            p,
            n,
            lo: k,
            coeffs: vec![m],
        }
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Offset range `[lo, hi]`; `[0, 0]` for the zero map.
    pub fn range(&self) -> (i32, i32) {
        (self.lo, self.lo + self.coeffs.len().max(1) as i32 - 1)
    }

    /// `M_k`, zero outside the stored range.
    pub fn coeff(&self, k: i32) -> Vec<u32> {
        usize::try_from(k - self.lo)
            .ok()
            .and_then(|i| self.coeffs.get(i))
            .cloned()
            .unwrap_or_else(|| vec![0; self.n * self.n])
    }

    pub fn is_identity(&self) -> bool {
        *self == LinearCA::identity(self.p, self.n)
    }

    /// `(self ∘ inner)(x)ᵢ = Σₘ (Σ_{k+l=m} Mₖ Nₗ) xᵢ₊ₘ`.
    pub fn compose(&self, inner: &LinearCA) -> Result<LinearCA, LincaError> {
        if self.p != inner.p {
            return Err(LincaError::FieldMismatch(self.p, inner.p));
        }
        if self.n != inner.n {
            return Err(LincaError::SizeMismatch(self.n, inner.n));
        }
        if self.is_zero() || inner.is_zero() {
            return Ok(LinearCA::zero(self.p, self.n));
        }
        let n = self.n;
        let p = self.p as u64;
        let mut out = vec![vec![0u32; n * n]; self.coeffs.len() + inner.coeffs.len() - 1];
        for (a, m) in self.coeffs.iter().enumerate() {
            for (b, nn) in inner.coeffs.iter().enumerate() {
                let dst = &mut out[a + b];
                for r in 0..n {
                    for c in 0..n {
                        let s: u64 = (0..n)
                            .map(|t| m[r * n + t] as u64 * nn[t * n + c] as u64)
                            .sum();
                        dst[r * n + c] = ((dst[r * n + c] as u64 + s) % p) as u32;
                    }
                }
            }
        }
        LinearCA::new(self.p, n, self.lo + inner.lo, out)
    }

    /// Applies to a periodic configuration of cells in `F_pⁿ`.
    pub fn apply_periodic(&self, cells: &[Vec<u32>]) -> Vec<Vec<u32>> {
        let len = cells.len() as i64;
        let n = self.n;
        let p = self.p as u64;
        (0..len)
            .map(|i| {
                let mut v = vec![0u64; n];
                for (j, m) in self.coeffs.iter().enumerate() {
                    let x = &cells[(i + self.lo as i64 + j as i64).rem_euclid(len) as usize];
                    for (r, acc) in v.iter_mut().enumerate() {
                        *acc += (0..n)
                            .map(|t| m[r * n + t] as u64 * (x[t] as u64 % p))
                            .sum::<u64>();
                    }
                }
                v.into_iter().map(|a| (a % p) as u32).collect()
            })
            .collect()
    }

    /// The alphabet `F_pⁿ`; component 0 is most significant in the symbol index.
    pub fn alphabet(&self) -> Result<Arc<Alphabet>, LincaError> {
        let q = (self.p as usize)
            .checked_pow(self.n as u32)
            .filter(|&q| q <= 255)
            .ok_or(LincaError::AlphabetTooLarge {
                p: self.p,
                n: self.n,
            })?;
        let names = (0..q).map(|s| {
            let v = self.decode_symbol(s as u8);
            let parts: Vec<String> = v.iter().map(u32::to_string).collect();
            if self.n == 1 {
                parts[0].clone()
            } else {
                format!("({})", parts.join(","))
            }
        });
        Ok(Alphabet::new(names)?)
    }

    pub fn encode_symbol(&self, v: &[u32]) -> u8 {
        v.iter().fold(0usize, |acc, &x| {
            acc * self.p as usize + (x % self.p) as usize
        }) as u8
    }

    pub fn decode_symbol(&self, s: u8) -> Vec<u32> {
        let mut v = vec![0u32; self.n];
        let mut s = s as u32;
        for slot in v.iter_mut().rev() {
            *slot = s % self.p;
            s /= self.p;
        }
        v
    }

    /// The induced two-sided CA on the alphabet `F_pⁿ`.
    pub fn to_ca(&self) -> Result<CA, LincaError> {
        let alphabet = self.alphabet()?;
        let (lo, hi) = self.range();
        let rule = LocalRule1D::from_fn(alphabet, lo, hi, |w| {
            let cells: Vec<Vec<u32>> = w.iter().map(|&s| self.decode_symbol(s)).collect();
            let n = self.n;
            let p = self.p as u64;
            let out: Vec<u32> = (0..n)
                .map(|r| {
                    let s: u64 = self
                        .coeffs
                        .iter()
                        .zip(&cells)
                        .map(|(m, x)| {
                            (0..n)
                                .map(|t| m[r * n + t] as u64 * x[t] as u64)
                                .sum::<u64>()
                        })
                        .sum();
                    (s % p) as u32
                })
                .collect();
            self.encode_symbol(&out)
        })?;
        Ok(CA::two_sided(rule))
    }
}

/// `{"p": 2, "n": 1, "lo": -1, "coeffs": [[[1]], [[1]]]}`: one row-major
/// matrix per offset starting at `lo`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LinearFile {
    p: u32,
    n: usize,
    lo: i32,
    coeffs: Vec<Vec<Vec<u32>>>,
}

impl LinearCA {
    pub fn from_json(text: &str) -> Result<LinearCA, LincaError> {
        let file: LinearFile = serde_json::from_str(text).map_err(|e| LincaError::Parse {
            input: "linear automaton".into(),
            reason: e.to_string(),
        })?;
        let mut coeffs = Vec::with_capacity(file.coeffs.len());
        for m in file.coeffs {
            if m.len() != file.n || m.iter().any(|r| r.len() != file.n) {
                return Err(LincaError::NotSquare);
            }
            coeffs.push(m.concat());
        }
        LinearCA::new(file.p, file.n, file.lo, coeffs)
    }

    pub fn to_json(&self) -> String {
        let file = LinearFile {
            p: self.p,
            n: self.n,
            lo: self.lo,
            coeffs: self
                .coeffs
                .iter()
                .map(|m| m.chunks(self.n).map(<[u32]>::to_vec).collect())
                .collect(),
        };
        serde_json::to_string(&file).expect("plain data serializes")
    }
}

/// `Σₖ Mₖ 𝐱⁻ᵏ`.
pub fn ca_to_matrix(f: &LinearCA) -> LaurentMatrix {
    let n = f.n;
    LaurentMatrix::from_fn(f.p, n, |r, c| {
        LaurentPoly::from_terms(
            f.p,
            f.coeffs
                .iter()
                .enumerate()
                .map(|(j, m)| (-(f.lo as i64 + j as i64), m[r * n + c] as i64)),
        )
    })
}

/// Reads `Mₖ` off the coefficients of `𝐱⁻ᵏ`.
pub fn matrix_to_ca(m: &LaurentMatrix) -> Result<LinearCA, LincaError> {
    let (p, n) = (m.modulus(), m.dim());
    let degrees: Vec<i64> = (0..n * n)
        .flat_map(|i| {
            m.get(i / n, i % n)
                .terms()
                .map(|(k, _)| k)
                .collect::<Vec<_>>()
        })
        .collect();
    let (Some(&dmin), Some(&dmax)) = (degrees.iter().min(), degrees.iter().max()) else {
        return Ok(LinearCA::zero(p, n));
    };
    let lo = i32::try_from(-dmax).map_err(|_| LincaError::Parse {
        input: "matrix".into(),
        reason: "degree out of range".into(),
    })?;
    let coeffs = (-dmax..=-dmin)
        .map(|k| (0..n * n).map(|i| m.get(i / n, i % n).coeff(-k)).collect())
        .collect();
    LinearCA::new(p, n, lo, coeffs)
}
