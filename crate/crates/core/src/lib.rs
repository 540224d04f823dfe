//! Exact algorithms for reversible one-dimensional cellular automata, the
//! permutation groups they realize, and linear automata as Laurent matrices.

pub mod ca;
pub mod constructions;
pub mod linca;
pub mod par;
pub mod perm;
pub mod suite;
pub mod wreath;
