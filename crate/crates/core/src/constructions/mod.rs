//! The concrete automata realizing broom groups: the two-sided conveyor belt
//! and the one-sided trace construction.

mod conveyor;
mod onesided;

use std::sync::Arc;

use thiserror::Error;

use crate::ca::{Alphabet, CaError};
use crate::perm::Perm;
use crate::wreath::WreathError;

pub use conveyor::{
    abstract_conveyor_act, build_fa, build_frot, check_two_sided, conveyor_alphabet, decode,
    encode, frot_inverse, generator_ca, hash_config, pair_symbol, symbol_pair, HASH,
};
pub use onesided::{
    build_drive, build_fab, build_fpj, check_one_sided, control, controls, drive_inverse,
    driver_column, is_control, onesided_alphabet, state, states, OneSidedSetup, OneSidedVerdict,
    CONTROLS, STATES,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error(transparent)]
    Ca(#[from] CaError),
    #[error(transparent)]
    Wreath(#[from] WreathError),
    #[error("decoding needs an even-length word, got length {0}")]
    OddLength(usize),
    #[error("configuration contains no #")]
    NoHash,
    #[error("{0} is not an even permutation of 5 points")]
    NotInA5(Perm),
    #[error("invalid control symbols {0}, {1}")]
    BadControls(u8, u8),
    #[error("no inverse found within the search bound")]
    NoInverse,
}

/// Built-in alphabets addressable by name.
pub fn named_alphabet(name: &str) -> Option<Arc<Alphabet>> {
    match name {
        "conveyor" => Some(conveyor_alphabet()),
        "onesided8" => Some(onesided_alphabet()),
        _ => None,
    }
}
