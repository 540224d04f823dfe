//! Broom groups: generator words with exact actions on tuples and on
//! `(state, point)` pairs, their finite quotients and cylinder permutations.

mod borders;
mod parse;
mod pointed;
mod quotient;
mod word;

pub use borders::{border_array, find_unbordered, is_unbordered};
pub use parse::{parse_broom, parse_xbroom, ParseError};
pub use pointed::{act_pointed, cocycle_form, pi_build, CocycleForm, CylinderSpec, PointedSample};
pub use quotient::{
    act_tuple, is_identity, normal_form, normal_form_with_degree, SizeSet, WreathError, WreathNF,
};
pub use word::{embed_double, rot_power, BroomToken, BroomWord, Letter, Word, XBroomWord, XToken};
