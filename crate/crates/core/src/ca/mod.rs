//! One-dimensional cellular automata with dense rule tables.

mod decide;
mod diagram;
mod invert;
mod json;
mod order;
mod rule;
mod trace;
mod transparent;

use thiserror::Error;

pub use decide::{
    is_injective, is_surjective, CollisionWitness, InjectivityReport, SurjectivityReport,
    PAIR_GRAPH_BUDGET, SUBSET_BUDGET,
};
pub use diagram::{render_spacetime, Diagram, DiagramFormat, Start};
pub use invert::{invert, DEFAULT_MAX_RANGE};
pub use json::{alphabet_from_json, rule_from_json, rule_to_json};
pub use order::{order_upto, periodic_words, power};
pub use rule::{Alphabet, LocalRule1D, PeriodicConfig, Sidedness, WindowConfig, CA, TABLE_BUDGET};
pub use trace::{column, trace_words, transparent_symbols, TraceLanguage, PREFIX_BUDGET};
pub use transparent::{ClassGroup, ClassRule};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CaError {
    #[error("bad alphabet: {0}")]
    BadAlphabet(String),
    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),
    #[error("symbol index {0} outside the alphabet")]
    SymbolOutOfRange(u8),
    #[error("invalid offset range [{0}, {1}]")]
    BadRange(i32, i32),
    #[error("bad rule table: {0}")]
    BadTable(String),
    #[error("rule table over {q} symbols with window {width} exceeds the table budget")]
    TableTooLarge { q: usize, width: usize },
    #[error("alphabets differ")]
    AlphabetMismatch,
    #[error("one-sided rules need lo >= 0, got {0}")]
    NotOneSided(i32),
    #[error("periodic configurations must be nonempty")]
    EmptyConfig,
    #[error("operation is defined for two-sided automata only")]
    NeedsTwoSided,
    #[error("{0} exceeds its size budget")]
    SearchTooLarge(&'static str),
    #[error("invalid bound: {0}")]
    BadBound(&'static str),
    #[error("rule is not transparent for the class: {0}")]
    NotTransparent(String),
    #[error("prefix too short: need {need} symbols, got {got}")]
    PrefixTooShort { need: usize, got: usize },
    #[error("window exhausted at step {step}")]
    WindowExhausted { step: usize },
}
