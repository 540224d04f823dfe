//! Linear cellular automata over `F_p` and their matrices over `F_p[x, x⁻¹]`.
//!
//! Configurations are read as formal series `Σ xᵢ 𝐱ⁱ`, so the left shift
//! `σ(x)ᵢ = xᵢ₊₁` is multiplication by `𝐱⁻¹` and `f(x)ᵢ = Σₖ Mₖ xᵢ₊ₖ` has
//! matrix `Σₖ Mₖ 𝐱⁻ᵏ`.

mod linear;
mod matrix;
mod poly;

pub use linear::{ca_to_matrix, matrix_to_ca, LinearCA};
pub use matrix::{mat_invert, LaurentMatrix, MAX_DET_DIM};
pub use poly::{check_prime, FpElem, LaurentPoly};

use thiserror::Error;

use crate::ca::CaError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LincaError {
    #[error("{0} is not a prime below 65536")]
    NotPrime(u32),
    #[error("field mismatch: F{0} vs F{1}")]
    FieldMismatch(u32, u32),
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("size mismatch: {0}x{0} vs {1}x{1}")]
    SizeMismatch(usize, usize),
    #[error("matrix must be square with n >= 1")]
    NotSquare,
    #[error("determinant needs n <= {MAX_DET_DIM}, got {0}")]
    DimensionTooLarge(usize),
    #[error("alphabet F{p}^{n} has more than 255 symbols")]
    AlphabetTooLarge { p: u32, n: usize },
    #[error(transparent)]
    Ca(#[from] CaError),
}
